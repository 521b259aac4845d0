//! Corpus-driven two-hand keyboard layout construction.
//!
//! The pipeline: [`corpus`] turns text into alphabet-filtered symbol events,
//! [`ngram`] counts monograms/digrams/trigrams and their support and
//! confidence, [`layout`] partitions the ranked alphabet across hands by
//! digram association and places symbols on keys, and [`eval`] scores any
//! layout by hand alternation and per-hand load. [`apriori`] is a general
//! frequent-itemset miner used for transaction-style association analysis.

pub mod apriori;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod layout;
pub mod ngram;

pub use error::{Error, Result};
