//! Level-wise Apriori mining of frequent itemsets and strong rules.
//!
//! Items are dense integer ids. An [`ItemDictionary`] maps them to the labels
//! found in a transaction file or to alphabet symbols.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::corpus::{Alphabet, SymbolStream};
use crate::error::{Error, Result};

pub type Item = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    pub tid: String,
    items: Vec<Item>,
}

impl Transaction {
    pub fn new(tid: impl Into<String>, items: impl IntoIterator<Item = Item>) -> Self {
        let mut items: Vec<Item> = items.into_iter().collect();
        items.sort_unstable();
        items.dedup();
        Self {
            tid: tid.into(),
            items,
        }
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    /// Subset test over two ascending lists.
    pub fn contains_all(&self, sorted: &[Item]) -> bool {
        let mut it = self.items.iter();
        sorted.iter().all(|needle| it.any(|item| item == needle))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ItemSet {
    pub items: Vec<Item>,
    pub support_count: u64,
}

impl ItemSet {
    pub fn new(items: Vec<Item>, support_count: u64) -> Self {
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        Self {
            items,
            support_count,
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssociationRule {
    pub antecedent: Vec<Item>,
    pub consequent: Vec<Item>,
    pub support: f64,
    pub confidence: f64,
}

/// Frequent 1-itemsets, ascending by item id.
pub fn generate_l1(db: &[Transaction], min_support_count: u64) -> Vec<ItemSet> {
    count_items(db)
        .into_iter()
        .filter(|&(_, count)| count >= min_support_count)
        .map(|(item, count)| ItemSet::new(vec![item], count))
        .collect()
}

fn count_items(db: &[Transaction]) -> BTreeMap<Item, u64> {
    let mut counts = BTreeMap::new();
    for t in db {
        for &item in t.items() {
            *counts.entry(item).or_insert(0) += 1;
        }
    }
    counts
}

/// Joins `prev` (all of size k-1) with itself: two itemsets combine when they
/// agree on their first k-2 items and the last item of the first is smaller.
/// Candidate counts are zero.
pub fn apriori_join(prev: &[ItemSet]) -> Result<Vec<ItemSet>> {
    let Some(first) = prev.first() else {
        return Ok(Vec::new());
    };
    let size = first.len();
    if prev.iter().any(|s| s.len() != size) {
        return Err(Error::MixedItemsetSizes);
    }
    let mut out = Vec::new();
    for (i, a) in prev.iter().enumerate() {
        for b in &prev[i + 1..] {
            let (a_last, b_last) = (a.items[size - 1], b.items[size - 1]);
            if a.items[..size - 1] == b.items[..size - 1] && a_last < b_last {
                let mut items = a.items.clone();
                items.push(b_last);
                out.push(ItemSet::new(items, 0));
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Keeps only candidates whose every (k-1)-subset is in `prev`.
pub fn apriori_prune(candidates: &[ItemSet], prev: &[ItemSet]) -> Vec<ItemSet> {
    let frequent: std::collections::HashSet<&[Item]> =
        prev.iter().map(|s| s.items.as_slice()).collect();
    candidates
        .iter()
        .filter(|c| {
            (0..c.len()).all(|skip| {
                let subset: Vec<Item> = c
                    .items
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &item)| item)
                    .collect();
                frequent.contains(subset.as_slice())
            })
        })
        .cloned()
        .collect()
}

/// One full database scan filling in each candidate's occurrence count.
pub fn count_candidates(db: &[Transaction], candidates: &[ItemSet]) -> Vec<ItemSet> {
    let mut counted = candidates.to_vec();
    for t in db {
        for c in counted.iter_mut() {
            if t.contains_all(&c.items) {
                c.support_count += 1;
            }
        }
    }
    counted
}

/// Record of one level of the search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pass {
    pub k: usize,
    /// Output of the join step (for k = 1, every distinct item).
    pub joined: Vec<Vec<Item>>,
    /// Candidates surviving the prune step, with their scanned counts.
    pub counted: Vec<ItemSet>,
    /// Candidates meeting the minimum support count.
    pub frequent: Vec<ItemSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mining {
    pub min_support_count: u64,
    pub passes: Vec<Pass>,
}

impl Mining {
    /// Nonempty frequent levels L1..Lmax.
    pub fn levels(&self) -> Vec<Vec<ItemSet>> {
        self.passes
            .iter()
            .map(|p| p.frequent.clone())
            .take_while(|l| !l.is_empty())
            .collect()
    }
}

pub fn mine_frequent_traced(db: &[Transaction], min_support_count: u64) -> Mining {
    let min_support_count = min_support_count.max(1);
    let item_counts = count_items(db);
    let c1: Vec<ItemSet> = item_counts
        .iter()
        .map(|(&item, &count)| ItemSet::new(vec![item], count))
        .collect();
    let l1 = generate_l1(db, min_support_count);
    let mut passes = vec![Pass {
        k: 1,
        joined: c1.iter().map(|s| s.items.clone()).collect(),
        counted: c1,
        frequent: l1,
    }];
    loop {
        let prev = &passes.last().unwrap().frequent;
        if prev.is_empty() {
            break;
        }
        let k = passes.len() + 1;
        let joined = apriori_join(prev).expect("levels have uniform size");
        let pruned = apriori_prune(&joined, prev);
        let counted = count_candidates(db, &pruned);
        let frequent = counted
            .iter()
            .filter(|s| s.support_count >= min_support_count)
            .cloned()
            .collect();
        passes.push(Pass {
            k,
            joined: joined.into_iter().map(|s| s.items).collect(),
            counted,
            frequent,
        });
    }
    Mining {
        min_support_count,
        passes,
    }
}

pub fn mine_frequent(db: &[Transaction], min_support_count: u64) -> Vec<Vec<ItemSet>> {
    mine_frequent_traced(db, min_support_count).levels()
}

/// Emits `A => F\A` for every frequent F with |F| >= 2 and nonempty proper
/// subset A whose confidence reaches `min_confidence_percent`. Ordered by F
/// (level, then items), then A.
pub fn generate_rules(
    levels: &[Vec<ItemSet>],
    db_size: usize,
    min_confidence_percent: f64,
) -> Result<Vec<AssociationRule>> {
    let counts: HashMap<&[Item], u64> = levels
        .iter()
        .flatten()
        .map(|s| (s.items.as_slice(), s.support_count))
        .collect();
    let mut rules = Vec::new();
    for itemset in levels.iter().skip(1).flatten() {
        let n = itemset.len();
        let mut subsets: Vec<(Vec<Item>, Vec<Item>)> = (1..(1u32 << n) - 1)
            .map(|mask| {
                let (a, b): (Vec<_>, Vec<_>) = itemset
                    .items
                    .iter()
                    .enumerate()
                    .partition(|&(i, _)| mask & (1 << i) != 0);
                (
                    a.into_iter().map(|(_, &x)| x).collect(),
                    b.into_iter().map(|(_, &x)| x).collect(),
                )
            })
            .collect();
        subsets.sort();
        for (antecedent, consequent) in subsets {
            let a_count = *counts
                .get(antecedent.as_slice())
                .ok_or_else(|| Error::InconsistentLevels(antecedent.clone()))?;
            let confidence = itemset.support_count as f64 / a_count as f64 * 100.0;
            if confidence >= min_confidence_percent {
                rules.push(AssociationRule {
                    antecedent,
                    consequent,
                    support: itemset.support_count as f64 / db_size as f64 * 100.0,
                    confidence,
                });
            }
        }
    }
    Ok(rules)
}

/// `ceil(pct / 100 * db_size)`, at least 1.
pub fn min_count_from_percent(percent: f64, db_size: usize) -> u64 {
    let raw = percent / 100.0 * db_size as f64;
    // 22% of 9 is 1.98 -> 2; strip float noise such as 2.0000000000000004 first.
    let rounded = (raw * 1e9).round() / 1e9;
    (rounded.ceil() as u64).max(1)
}

/// Bidirectional mapping between item labels and dense ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ItemDictionary {
    labels: Vec<String>,
    ids: HashMap<String, Item>,
}

impl ItemDictionary {
    /// Ids follow the given label order.
    pub fn from_ordered(labels: impl IntoIterator<Item = String>) -> Self {
        let mut dict = Self::default();
        for label in labels {
            if !dict.ids.contains_key(&label) {
                dict.ids.insert(label.clone(), dict.labels.len() as Item);
                dict.labels.push(label);
            }
        }
        dict
    }

    pub fn id(&self, label: &str) -> Option<Item> {
        self.ids.get(label).copied()
    }

    pub fn label(&self, item: Item) -> &str {
        &self.labels[item as usize]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn render(&self, items: &[Item]) -> String {
        items
            .iter()
            .map(|&i| self.label(i))
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransactionDb {
    pub dictionary: ItemDictionary,
    pub transactions: Vec<Transaction>,
}

impl TransactionDb {
    /// Parses the transaction file format: one transaction per line, items
    /// separated by whitespace, `#` starts a comment, blank lines skipped.
    /// Labels that are all integers order numerically, otherwise as strings.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if !tokens.is_empty() {
                rows.push((i + 1, tokens));
            }
        }
        let mut labels: Vec<&str> = rows.iter().flat_map(|(_, t)| t.iter().copied()).collect();
        labels.sort_unstable();
        labels.dedup();
        let numeric: Option<Vec<i64>> = labels.iter().map(|l| l.parse().ok()).collect();
        if numeric.is_some() {
            labels.sort_by_key(|l| l.parse::<i64>().unwrap());
        }
        let dictionary = ItemDictionary::from_ordered(labels.iter().map(|l| l.to_string()));
        let mut transactions = Vec::with_capacity(rows.len());
        for (line, tokens) in rows {
            let mut seen = std::collections::HashSet::new();
            for t in &tokens {
                if !seen.insert(*t) {
                    return Err(Error::BadTransaction {
                        line,
                        message: format!("item {t:?} repeated"),
                    });
                }
            }
            transactions.push(Transaction::new(
                format!("T{line}"),
                tokens.iter().map(|t| dictionary.id(t).unwrap()),
            ));
        }
        Ok(Self {
            dictionary,
            transactions,
        })
    }

    /// One transaction per boundary-delimited run: the set of symbols in it.
    /// Item ids follow alphabet order.
    pub fn from_stream(stream: &SymbolStream, alphabet: &Alphabet) -> Self {
        let dictionary =
            ItemDictionary::from_ordered(alphabet.symbols().iter().map(|c| c.to_string()));
        let transactions = stream
            .segments()
            .enumerate()
            .map(|(i, seg)| {
                Transaction::new(
                    format!("T{}", i + 1),
                    seg.iter()
                        .filter_map(|&c| alphabet.position(c).map(|p| p as Item)),
                )
            })
            .collect();
        Self {
            dictionary,
            transactions,
        }
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }
}

/// `level<TAB>itemset<TAB>count` for every frequent itemset.
pub fn levels_tsv(levels: &[Vec<ItemSet>], dict: &ItemDictionary) -> String {
    let mut out = String::from("level\titemset\tcount\n");
    for (i, level) in levels.iter().enumerate() {
        for s in level {
            writeln!(
                out,
                "{}\t{}\t{}",
                i + 1,
                dict.render(&s.items),
                s.support_count
            )
            .unwrap();
        }
    }
    out
}

/// Every scanned candidate per pass with its count and whether it survived.
pub fn candidates_tsv(mining: &Mining, dict: &ItemDictionary) -> String {
    let mut out = String::from("level\tcandidate\tcount\tfrequent\n");
    for pass in &mining.passes {
        for s in &pass.counted {
            let frequent = s.support_count >= mining.min_support_count;
            writeln!(
                out,
                "{}\t{}\t{}\t{}",
                pass.k,
                dict.render(&s.items),
                s.support_count,
                frequent
            )
            .unwrap();
        }
    }
    out
}

pub fn rules_tsv(rules: &[AssociationRule], dict: &ItemDictionary) -> String {
    let mut out = String::from("antecedent\tconsequent\tsupport\tconfidence\n");
    for r in rules {
        writeln!(
            out,
            "{}\t{}\t{:.6}\t{:.6}",
            dict.render(&r.antecedent),
            dict.render(&r.consequent),
            r.support,
            r.confidence
        )
        .unwrap();
    }
    out
}

/// The nine-transaction worked example database.
pub const FIGURE1_TRANSACTIONS: &str = "\
# Nine-transaction example database (T100..T900).
1 2 5
2 4
2 3
1 2 4
1 3
2 3
1 3
1 2 3 5
1 2 3
";
