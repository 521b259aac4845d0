//! Corpus loading: UTF-8 text in, alphabet-filtered symbol events out.
//!
//! Symbols are Unicode scalar values. Anything outside the alphabet (spaces,
//! punctuation, digits, other scripts) collapses into a single
//! [`Event::Boundary`], and n-grams never span one. Boundaries only ever sit
//! between two symbols: leading and trailing runs are dropped.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

const BANGLA_ALPHABET: &str = include_str!("../data/bangla_alphabet.txt");

/// Ordered set of symbols eligible for placement. Position in the list is the
/// tie-break order used by every ranking downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    name: String,
    symbols: Vec<char>,
    index: HashMap<char, usize>,
}

impl Alphabet {
    pub fn new(name: impl Into<String>, symbols: Vec<char>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, &c) in symbols.iter().enumerate() {
            if index.insert(c, i).is_some() {
                return Err(Error::DuplicateSymbol(c));
            }
        }
        Ok(Self {
            name: name.into(),
            symbols,
            index,
        })
    }

    /// Parses the alphabet file format: one symbol per line, `#` lines are
    /// comments, blank lines are skipped.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut symbols = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let mut chars = line.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => symbols.push(c),
                _ => {
                    return Err(Error::BadAlphabetLine {
                        line: i + 1,
                        found: line.to_string(),
                    })
                }
            }
        }
        Self::new(name, symbols)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = read_utf8(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "alphabet".to_string());
        Self::parse(name, &text)
    }

    /// Built-in alphabet covering Bangla vowels, consonants and vowel signs.
    pub fn bangla() -> Self {
        Self::parse("bangla", BANGLA_ALPHABET).expect("built-in alphabet is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.index.contains_key(&c)
    }

    pub fn position(&self, c: char) -> Option<usize> {
        self.index.get(&c).copied()
    }

    /// Sort key placing alphabet members in alphabet order and anything else
    /// after them by code point.
    pub fn order_key(&self, c: char) -> (usize, u32) {
        match self.position(c) {
            Some(p) => (p, 0),
            None => (self.symbols.len(), c as u32),
        }
    }

    /// Orders two symbol sequences lexicographically under alphabet order.
    pub fn cmp_grams(&self, a: &[char], b: &[char]) -> std::cmp::Ordering {
        a.iter()
            .map(|&c| self.order_key(c))
            .cmp(b.iter().map(|&c| self.order_key(c)))
    }
}

pub fn default_bangla_alphabet() -> Alphabet {
    Alphabet::bangla()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Event {
    Symbol(char),
    Boundary,
}

impl Event {
    pub fn is_boundary(&self) -> bool {
        matches!(self, Event::Boundary)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    #[default]
    Nfc,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolStream {
    events: Vec<Event>,
    source: String,
    total_symbols: usize,
}

impl SymbolStream {
    /// Builds a stream from raw events, collapsing boundary runs and trimming
    /// boundaries at either end.
    pub fn from_events(source: impl Into<String>, events: impl IntoIterator<Item = Event>) -> Self {
        let mut out = Vec::new();
        let mut pending_boundary = false;
        let mut total_symbols = 0;
        for event in events {
            match event {
                Event::Boundary => pending_boundary = !out.is_empty(),
                Event::Symbol(c) => {
                    if pending_boundary {
                        out.push(Event::Boundary);
                        pending_boundary = false;
                    }
                    out.push(Event::Symbol(c));
                    total_symbols += 1;
                }
            }
        }
        Self {
            events: out,
            source: source.into(),
            total_symbols,
        }
    }

    /// Convenience for tests and fixtures: every character is a symbol except
    /// `sep`, which marks a boundary.
    pub fn from_symbols_str(text: &str, sep: char) -> Self {
        Self::from_events(
            "inline",
            text.chars().map(|c| {
                if c == sep {
                    Event::Boundary
                } else {
                    Event::Symbol(c)
                }
            }),
        )
    }

    pub fn from_text(
        source: impl Into<String>,
        text: &str,
        alphabet: &Alphabet,
        normalization: Normalization,
    ) -> Self {
        let filter = |c: char| {
            if alphabet.contains(c) {
                Event::Symbol(c)
            } else {
                Event::Boundary
            }
        };
        match normalization {
            Normalization::Nfc => Self::from_events(source, text.nfc().map(filter)),
            Normalization::None => Self::from_events(source, text.chars().map(filter)),
        }
    }

    /// Concatenates streams with a boundary between consecutive parts.
    pub fn concat(
        source: impl Into<String>,
        parts: impl IntoIterator<Item = SymbolStream>,
    ) -> Self {
        let events = parts
            .into_iter()
            .flat_map(|part| std::iter::once(Event::Boundary).chain(part.events));
        Self::from_events(source, events)
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn total_symbols(&self) -> usize {
        self.total_symbols
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Maximal boundary-free runs of symbols.
    pub fn segments(&self) -> impl Iterator<Item = Vec<char>> + '_ {
        self.events
            .split(|e| e.is_boundary())
            .filter(|run| !run.is_empty())
            .map(|run| {
                run.iter()
                    .map(|e| match e {
                        Event::Symbol(c) => *c,
                        Event::Boundary => unreachable!(),
                    })
                    .collect()
            })
    }

    /// Text rendering with a single `sep` at every boundary.
    pub fn render(&self, sep: char) -> String {
        self.events
            .iter()
            .map(|e| match e {
                Event::Symbol(c) => *c,
                Event::Boundary => sep,
            })
            .collect()
    }
}

impl fmt::Display for SymbolStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(' '))
    }
}

/// Loads every file under `paths` (directories recursively, entries sorted by
/// name) and concatenates their filtered streams in path order.
pub fn load_corpus(
    paths: &[PathBuf],
    alphabet: &Alphabet,
    normalization: Normalization,
) -> Result<SymbolStream> {
    let files = expand_paths(paths)?;
    let parts = files
        .par_iter()
        .map(|path| {
            let text = read_utf8(path)?;
            Ok(SymbolStream::from_text(
                path.display().to_string(),
                &text,
                alphabet,
                normalization,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let source = paths
        .iter()
        .map(|p| p.display().to_string())
        .collect::<Vec<_>>()
        .join(",");
    Ok(SymbolStream::concat(source, parts))
}

/// Resolves files and directories into the ordered list of files to read.
pub fn expand_paths(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for path in paths {
        if !path.exists() {
            return Err(Error::MissingPath(path.clone()));
        }
        collect_files(path, &mut files)?;
    }
    Ok(files)
}

fn collect_files(path: &Path, out: &mut Vec<PathBuf>) -> Result<()> {
    if !path.is_dir() {
        out.push(path.to_path_buf());
        return Ok(());
    }
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut entries = fs::read_dir(path)
        .map_err(io_err)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<Vec<_>>>()
        .map_err(io_err)?;
    entries.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    for entry in entries {
        collect_files(&entry, out)?;
    }
    Ok(())
}

pub(crate) fn read_utf8(path: &Path) -> Result<String> {
    if !path.exists() {
        return Err(Error::MissingPath(path.to_path_buf()));
    }
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    String::from_utf8(bytes).map_err(|e| Error::Undecodable {
        path: path.to_path_buf(),
        offset: e.utf8_error().valid_up_to(),
    })
}
