//! Monogram, digram and trigram counting with support/confidence statistics.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{Alphabet, SymbolStream};
use crate::error::{Error, Result};

pub type Gram = Vec<char>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Monogram = 1,
    Digram = 2,
    Trigram = 3,
}

impl Order {
    pub fn size(self) -> usize {
        self as usize
    }
}

impl TryFrom<usize> for Order {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        match n {
            1 => Ok(Order::Monogram),
            2 => Ok(Order::Digram),
            3 => Ok(Order::Trigram),
            other => Err(Error::BadOrder(other)),
        }
    }
}

/// Occurrence counts of every n-gram seen at least once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgramTable {
    order: Order,
    counts: BTreeMap<Gram, u64>,
    total: u64,
}

impl NgramTable {
    pub fn new(order: Order) -> Self {
        Self {
            order,
            counts: BTreeMap::new(),
            total: 0,
        }
    }

    /// Builds a table from explicit counts. Zero counts are dropped; grams of
    /// the wrong length are rejected.
    pub fn from_counts(
        order: Order,
        counts: impl IntoIterator<Item = (Gram, u64)>,
    ) -> Result<Self> {
        let mut table = Self::new(order);
        for (gram, count) in counts {
            if gram.len() != order.size() {
                return Err(Error::BadOrder(gram.len()));
            }
            table.add(gram, count);
        }
        Ok(table)
    }

    fn add(&mut self, gram: Gram, count: u64) {
        if count == 0 {
            return;
        }
        *self.counts.entry(gram).or_insert(0) += count;
        self.total += count;
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn count(&self, gram: &[char]) -> u64 {
        self.counts.get(gram).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Gram, u64)> {
        self.counts.iter().map(|(g, &c)| (g, c))
    }

    /// Adds another table's counts into this one.
    pub fn merge(&mut self, other: &NgramTable) {
        assert_eq!(self.order, other.order, "merging tables of different order");
        for (gram, count) in other.iter() {
            self.add(gram.clone(), count);
        }
    }

    pub fn percent(&self, count: u64) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            count as f64 / self.total as f64 * 100.0
        }
    }

    /// Entries sorted by count descending, then alphabet order.
    pub fn ranked(&self, alphabet: &Alphabet) -> Vec<(&Gram, u64)> {
        let mut rows: Vec<_> = self.iter().collect();
        rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| alphabet.cmp_grams(a.0, b.0)));
        rows
    }

    /// `gram<TAB>count<TAB>percent` rows in ranked order.
    pub fn to_tsv(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("gram\tcount\tpercent\n");
        for (gram, count) in self.ranked(alphabet) {
            let gram: String = gram.iter().collect();
            writeln!(out, "{gram}\t{count}\t{:.6}", self.percent(count)).unwrap();
        }
        out
    }
}

fn count_segment(segment: &[char], order: Order) -> NgramTable {
    let mut table = NgramTable::new(order);
    for window in segment.windows(order.size()) {
        table.add(window.to_vec(), 1);
    }
    table
}

/// Counts every overlapping window of `order` consecutive symbols that does
/// not cross a boundary.
pub fn count_ngrams(stream: &SymbolStream, order: Order) -> NgramTable {
    let segments: Vec<Vec<char>> = stream.segments().collect();
    segments
        .par_iter()
        .map(|seg| count_segment(seg, order))
        .reduce(
            || NgramTable::new(order),
            |mut a, b| {
                a.merge(&b);
                a
            },
        )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DigramMetrics {
    pub digram: (char, char),
    pub count: u64,
    /// Percent of all digram occurrences.
    pub support: f64,
    /// Percent of occurrences of the first symbol that are followed by the second.
    pub confidence: f64,
}

pub fn digram_metrics(
    digrams: &NgramTable,
    monograms: &NgramTable,
    pair: (char, char),
) -> Result<DigramMetrics> {
    if digrams.total() == 0 {
        return Err(Error::EmptyCorpus);
    }
    let (x, y) = pair;
    let count = digrams.count(&[x, y]);
    if count == 0 {
        return Err(Error::AbsentGram([x, y].iter().collect()));
    }
    let x_count = monograms.count(&[x]);
    if x_count == 0 {
        return Err(Error::AbsentGram(x.to_string()));
    }
    Ok(DigramMetrics {
        digram: pair,
        count,
        support: count as f64 / digrams.total() as f64 * 100.0,
        confidence: count as f64 / x_count as f64 * 100.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankedSymbol {
    pub symbol: char,
    pub count: u64,
    pub percent: f64,
}

/// The `k` most frequent monograms, ties broken by alphabet position.
pub fn top_k(monograms: &NgramTable, k: usize, alphabet: &Alphabet) -> Vec<RankedSymbol> {
    monograms
        .ranked(alphabet)
        .into_iter()
        .take(k)
        .map(|(gram, count)| RankedSymbol {
            symbol: gram[0],
            count,
            percent: monograms.percent(count),
        })
        .collect()
}

/// Every monogram symbol in descending frequency order.
pub fn ranked_symbols(monograms: &NgramTable, alphabet: &Alphabet) -> Vec<char> {
    top_k(monograms, monograms.len(), alphabet)
        .into_iter()
        .map(|r| r.symbol)
        .collect()
}

/// Table-1 style report: letter, frequency, percentage.
pub fn top_k_tsv(ranked: &[RankedSymbol]) -> String {
    let mut out = String::from("letter\tfrequency\tpercentage\n");
    for r in ranked {
        writeln!(out, "{}\t{}\t{:.6}", r.symbol, r.count, r.percent).unwrap();
    }
    out
}
