//! Greedy two-hand partition driven by digram association.
//!
//! The four most frequent symbols seed the hands (ranks 1 and 4 right, 2 and
//! 3 left). Every later symbol, in rank order, is scored against the symbols
//! already on each hand; it goes RIGHT only when its association with the
//! left hand is strictly higher on both support and confidence, otherwise
//! LEFT. Placing a symbol opposite the letters it tends to follow is what
//! drives hand alternation.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::layout::geometry::Hand;
use crate::ngram::{DigramMetrics, NgramTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AssociationMode {
    /// Digrams starting at the candidate symbol only.
    #[default]
    Directed,
    /// Adds the reverse digrams as well. Not part of the original method.
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecisionPolicy {
    /// RIGHT iff left support > right support AND left confidence > right confidence.
    #[default]
    PaperLiteral,
    /// RIGHT iff more criteria favour left association than right. Experimental.
    Majority,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Association {
    pub support: f64,
    pub confidence: f64,
}

impl Association {
    /// Row-wise sum of digram statistics.
    pub fn sum(rows: &[DigramMetrics]) -> Self {
        rows.iter().fold(Self::default(), |acc, m| Self {
            support: acc.support + m.support,
            confidence: acc.confidence + m.confidence,
        })
    }
}

impl DecisionPolicy {
    pub fn choose(self, left: Association, right: Association) -> Hand {
        match self {
            DecisionPolicy::PaperLiteral => {
                if left.support > right.support && left.confidence > right.confidence {
                    Hand::Right
                } else {
                    Hand::Left
                }
            }
            DecisionPolicy::Majority => {
                let favour = |a: f64, b: f64| (a > b) as i32 - (a < b) as i32;
                let score =
                    favour(left.support, right.support) + favour(left.confidence, right.confidence);
                if score > 0 {
                    Hand::Right
                } else {
                    Hand::Left
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PartitionOptions {
    pub association: AssociationMode,
    pub policy: DecisionPolicy,
}

/// Audit record of one placement after the seeds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decision {
    /// 1-based frequency rank.
    pub rank: usize,
    pub symbol: char,
    pub left: Association,
    pub right: Association,
    pub hand: Hand,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct HandPartition {
    pub left: Vec<char>,
    pub right: Vec<char>,
    pub trace: Vec<Decision>,
}

impl HandPartition {
    pub fn hand_of(&self, symbol: char) -> Option<Hand> {
        if self.left.contains(&symbol) {
            Some(Hand::Left)
        } else if self.right.contains(&symbol) {
            Some(Hand::Right)
        } else {
            None
        }
    }

    pub fn side(&self, hand: Hand) -> &[char] {
        match hand {
            Hand::Left => &self.left,
            Hand::Right => &self.right,
        }
    }

    fn push(&mut self, hand: Hand, symbol: char) {
        match hand {
            Hand::Left => self.left.push(symbol),
            Hand::Right => self.right.push(symbol),
        }
    }

    pub fn trace_tsv(&self) -> String {
        let mut out = String::from(
            "rank\tsymbol\tleft_support\tleft_confidence\tright_support\tright_confidence\thand\n",
        );
        for d in &self.trace {
            writeln!(
                out,
                "{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{}",
                d.rank,
                d.symbol,
                d.left.support,
                d.left.confidence,
                d.right.support,
                d.right.confidence,
                d.hand
            )
            .unwrap();
        }
        out
    }
}

/// Right = [rank 1, rank 4], left = [rank 2, rank 3].
pub fn seed_partition(ranked: &[char]) -> Result<HandPartition> {
    if ranked.len() < 4 {
        return Err(Error::InsufficientAlphabet(ranked.len()));
    }
    Ok(HandPartition {
        left: vec![ranked[1], ranked[2]],
        right: vec![ranked[0], ranked[3]],
        trace: Vec::new(),
    })
}

/// Sums support and confidence of `symbol` with every member of `side`.
/// Missing digrams contribute zero.
pub fn cumulative_association(
    symbol: char,
    side: &[char],
    digrams: &NgramTable,
    monograms: &NgramTable,
    mode: AssociationMode,
) -> Association {
    let total = digrams.total();
    if total == 0 {
        return Association::default();
    }
    let ratio = |num: u64, den: u64| {
        if num == 0 || den == 0 {
            0.0
        } else {
            num as f64 / den as f64 * 100.0
        }
    };
    let mut acc = Association::default();
    let from_count = monograms.count(&[symbol]);
    for &other in side {
        let forward = digrams.count(&[symbol, other]);
        acc.support += ratio(forward, total);
        acc.confidence += ratio(forward, from_count);
        if mode == AssociationMode::Symmetric {
            let backward = digrams.count(&[other, symbol]);
            acc.support += ratio(backward, total);
            acc.confidence += ratio(backward, monograms.count(&[other]));
        }
    }
    acc
}

pub fn partition_letters(
    ranked: &[char],
    digrams: &NgramTable,
    monograms: &NgramTable,
    options: PartitionOptions,
) -> Result<HandPartition> {
    let mut partition = seed_partition(ranked)?;
    for (i, &symbol) in ranked.iter().enumerate().skip(4) {
        let score = |side: &[char]| {
            cumulative_association(symbol, side, digrams, monograms, options.association)
        };
        let left = score(&partition.left);
        let right = score(&partition.right);
        let hand = options.policy.choose(left, right);
        partition.push(hand, symbol);
        partition.trace.push(Decision {
            rank: i + 1,
            symbol,
            left,
            right,
            hand,
        });
    }
    Ok(partition)
}
