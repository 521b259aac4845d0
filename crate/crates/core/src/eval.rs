//! Hand-alternation and load metrics for a layout over a corpus.

use std::fmt::Write as _;

use serde::Serialize;

use crate::corpus::{Event, SymbolStream};
use crate::layout::{Hand, Layout};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvaluationReport {
    pub layout: String,
    pub hand_switching: u64,
    pub left_load: u64,
    pub right_load: u64,
    pub undetermined: u64,
    pub total_symbols: u64,
    /// Maximal runs of mapped symbols; corpus boundaries and unmapped
    /// symbols both end a run.
    pub segments: u64,
}

impl EvaluationReport {
    pub fn imbalance(&self) -> u64 {
        self.left_load.abs_diff(self.right_load)
    }

    /// Switches per adjacent mapped pair, if there is any such pair.
    pub fn switching_rate(&self) -> Option<f64> {
        let pairs = (self.left_load + self.right_load).checked_sub(self.segments)?;
        (pairs > 0).then(|| self.hand_switching as f64 / pairs as f64)
    }
}

pub fn evaluate(layout: &Layout, stream: &SymbolStream) -> EvaluationReport {
    let mut report = EvaluationReport {
        layout: layout.name().to_string(),
        hand_switching: 0,
        left_load: 0,
        right_load: 0,
        undetermined: 0,
        total_symbols: stream.total_symbols() as u64,
        segments: 0,
    };
    let mut previous: Option<Hand> = None;
    for event in stream.events() {
        let hand = match event {
            Event::Boundary => None,
            Event::Symbol(c) => {
                let hand = layout.hand_of(*c);
                match hand {
                    Some(Hand::Left) => report.left_load += 1,
                    Some(Hand::Right) => report.right_load += 1,
                    None => report.undetermined += 1,
                }
                hand
            }
        };
        match (previous, hand) {
            (Some(p), Some(h)) if p != h => report.hand_switching += 1,
            (None, Some(_)) => report.segments += 1,
            _ => {}
        }
        previous = hand;
    }
    report
}

/// Side-by-side rendering of several reports, in the order given.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub rows: Vec<EvaluationReport>,
}

const HEADER: [&str; 7] = [
    "layout",
    "hand_switching",
    "left_load",
    "right_load",
    "undetermined",
    "imbalance",
    "switching_rate",
];

pub fn compare(reports: &[EvaluationReport]) -> Comparison {
    Comparison {
        rows: reports.to_vec(),
    }
}

impl Comparison {
    fn cells(&self) -> Vec<[String; 7]> {
        self.rows
            .iter()
            .map(|r| {
                [
                    r.layout.clone(),
                    r.hand_switching.to_string(),
                    r.left_load.to_string(),
                    r.right_load.to_string(),
                    r.undetermined.to_string(),
                    r.imbalance().to_string(),
                    r.switching_rate()
                        .map(|x| format!("{x:.6}"))
                        .unwrap_or_else(|| "-".to_string()),
                ]
            })
            .collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = HEADER.join("\t");
        out.push('\n');
        for row in self.cells() {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }

    /// Aligned plain-text table; the layout column is left-aligned, numbers right.
    pub fn to_table(&self) -> String {
        let cells = self.cells();
        let width = |i: usize| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain(std::iter::once(HEADER[i].len()))
                .max()
                .unwrap()
        };
        let widths: Vec<usize> = (0..HEADER.len()).map(width).collect();
        let mut out = String::new();
        let mut line = |row: &[String]| {
            let mut parts = Vec::with_capacity(row.len());
            for (i, cell) in row.iter().enumerate() {
                let pad = widths[i] - cell.chars().count();
                parts.push(if i == 0 {
                    format!("{cell}{}", " ".repeat(pad))
                } else {
                    format!("{}{cell}", " ".repeat(pad))
                });
            }
            writeln!(out, "{}", parts.join("  ").trim_end()).unwrap();
        };
        line(&HEADER.map(String::from));
        for row in &cells {
            line(row);
        }
        out
    }
}
