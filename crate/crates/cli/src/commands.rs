//! The four pipeline commands plus fixture seeding. Each returns the paths it
//! wrote; on error nothing it wrote is left behind.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use keymine_core::apriori::{
    candidates_tsv, generate_rules, levels_tsv, mine_frequent_traced, rules_tsv, TransactionDb,
    FIGURE1_TRANSACTIONS,
};
use keymine_core::eval::{compare, evaluate, Comparison};
use keymine_core::layout::{assign_positions, partition_letters, KeyboardGeometry, Layout};
use keymine_core::ngram::{count_ngrams, ranked_symbols, top_k, top_k_tsv, Order};

use crate::config::{GeometrySource, RunConfig};
use crate::output::OutputSet;

pub const TOP_K: usize = 10;

pub fn cmd_analyze(config: &RunConfig) -> Result<Vec<PathBuf>> {
    config.validate()?;
    let alphabet = config.alphabet.load()?;
    let stream = config.load_stream(&alphabet)?;
    let mut out = OutputSet::new(&config.out_dir)?;
    let mono = count_ngrams(&stream, Order::Monogram);
    for (order, name) in [
        (Order::Monogram, "monograms.tsv"),
        (Order::Digram, "digrams.tsv"),
        (Order::Trigram, "trigrams.tsv"),
    ] {
        let table = count_ngrams(&stream, order);
        out.write(name, &table.to_tsv(&alphabet))?;
    }
    out.write("top10.tsv", &top_k_tsv(&top_k(&mono, TOP_K, &alphabet)))?;
    Ok(out.commit())
}

/// Mines either a transaction file or, when none is given, the corpus with
/// one transaction per boundary-delimited run.
pub fn cmd_mine(config: &RunConfig, transactions: Option<&Path>) -> Result<Vec<PathBuf>> {
    config.validate()?;
    let db = match transactions {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading transactions {}", path.display()))?;
            TransactionDb::parse(&text)
                .with_context(|| format!("parsing transactions {}", path.display()))?
        }
        None => {
            let alphabet = config.alphabet.load()?;
            let stream = config.load_stream(&alphabet)?;
            TransactionDb::from_stream(&stream, &alphabet)
        }
    };
    if db.is_empty() {
        log::warn!("transaction database is empty");
    }
    let min_count = config.min_support.to_count(db.len());
    let mining = mine_frequent_traced(&db.transactions, min_count);
    let levels = mining.levels();
    let rules = if db.is_empty() {
        Vec::new()
    } else {
        generate_rules(&levels, db.len(), config.min_confidence)?
    };
    let mut out = OutputSet::new(&config.out_dir)?;
    out.write("levels.tsv", &levels_tsv(&levels, &db.dictionary))?;
    out.write("candidates.tsv", &candidates_tsv(&mining, &db.dictionary))?;
    out.write("rules.tsv", &rules_tsv(&rules, &db.dictionary))?;
    Ok(out.commit())
}

pub fn cmd_optimize(config: &RunConfig, name: &str) -> Result<Vec<PathBuf>> {
    config.validate()?;
    let alphabet = config.alphabet.load()?;
    let geometry = config.geometry.load()?;
    let stream = config.load_stream(&alphabet)?;
    let mono = count_ngrams(&stream, Order::Monogram);
    let di = count_ngrams(&stream, Order::Digram);
    let ranked = ranked_symbols(&mono, &alphabet);
    let partition = partition_letters(&ranked, &di, &mono, config.partition_options())?;
    let assignment = assign_positions(name, &partition, &geometry, &mono, &alphabet)?;
    if !assignment.unassigned.is_empty() {
        let list: String = assignment.unassigned.iter().collect();
        log::warn!(
            "{} symbols did not fit on the keyboard: {list}",
            list.chars().count()
        );
    }
    let mut out = OutputSet::new(&config.out_dir)?;
    out.write("layout.json", &assignment.layout.to_json())?;
    out.write("trace.tsv", &partition.trace_tsv())?;
    Ok(out.commit())
}

pub fn load_layout(path: &Path, geometry: &GeometrySource) -> Result<Layout> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading layout {}", path.display()))?;
    let explicit = match geometry {
        GeometrySource::File(_) => Some(geometry.load()?),
        GeometrySource::Builtin(_) => None,
    };
    Layout::from_json(&text, |name| match explicit {
        Some(g) if g.name() == name => Ok(g),
        _ => KeyboardGeometry::builtin(name),
    })
    .with_context(|| format!("parsing layout {}", path.display()))
}

pub fn evaluate_layouts(config: &RunConfig, layouts: &[PathBuf]) -> Result<Comparison> {
    config.validate()?;
    let parsed = layouts
        .iter()
        .map(|p| load_layout(p, &config.geometry))
        .collect::<Result<Vec<_>>>()?;
    let alphabet = config.alphabet.load()?;
    let stream = config.load_stream(&alphabet)?;
    let reports: Vec<_> = parsed.iter().map(|l| evaluate(l, &stream)).collect();
    Ok(compare(&reports))
}

pub fn cmd_evaluate(config: &RunConfig, layouts: &[PathBuf]) -> Result<Vec<PathBuf>> {
    anyhow::ensure!(!layouts.is_empty(), "no layout files given");
    let comparison = evaluate_layouts(config, layouts)?;
    write_comparison(&comparison, &config.out_dir)
}

pub fn write_comparison(comparison: &Comparison, dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = OutputSet::new(dir)?;
    out.write("report.tsv", &comparison.to_tsv())?;
    out.write("report.txt", &comparison.to_table())?;
    Ok(out.commit())
}

/// Writes the nine-transaction example database and the built-in test geometry.
pub fn seed_fixtures(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = OutputSet::new(dir)?;
    out.write("figure1.txt", FIGURE1_TRANSACTIONS)?;
    out.write(
        "test-2key.json",
        &KeyboardGeometry::builtin("test-2key")?.to_json(),
    )?;
    Ok(out.commit())
}
