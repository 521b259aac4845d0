use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("path does not exist: {}", .0.display())]
    MissingPath(PathBuf),

    #[error("failed to read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{} is not valid UTF-8 (first bad byte at offset {offset})", path.display())]
    Undecodable { path: PathBuf, offset: usize },

    #[error("alphabet is empty")]
    EmptyAlphabet,

    #[error("alphabet contains {0:?} more than once")]
    DuplicateSymbol(char),

    #[error("alphabet line {line}: expected exactly one character, found {found:?}")]
    BadAlphabetLine { line: usize, found: String },

    #[error("n-gram {0:?} is absent from the table")]
    AbsentGram(String),

    #[error("digram table is empty")]
    EmptyCorpus,

    #[error("n-gram order must be 1, 2 or 3, got {0}")]
    BadOrder(usize),

    #[error("itemsets of mixed sizes passed to the join step")]
    MixedItemsetSizes,

    #[error("itemset {0:?} is missing from the mined levels")]
    InconsistentLevels(Vec<u32>),

    #[error("transaction file line {line}: {message}")]
    BadTransaction { line: usize, message: String },

    #[error("need at least 4 ranked symbols to seed the hand partition, got {0}")]
    InsufficientAlphabet(usize),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("malformed layout: {0}")]
    MalformedLayout(String),

    #[error("key {key_id:?} is assigned to both {first:?} and {second:?}")]
    DuplicateKey {
        key_id: String,
        first: char,
        second: char,
    },

    #[error("symbol {0:?} is mapped more than once")]
    DuplicateMapping(char),

    #[error("key {key_id:?} does not exist in geometry {geometry:?}")]
    UnknownKey { key_id: String, geometry: String },

    #[error("unknown built-in geometry {0:?}")]
    UnknownGeometry(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
