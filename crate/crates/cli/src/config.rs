use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use keymine_core::apriori::min_count_from_percent;
use keymine_core::corpus::{load_corpus, Alphabet, Normalization, SymbolStream};
use keymine_core::layout::{AssociationMode, DecisionPolicy, KeyboardGeometry, PartitionOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphabetSource {
    Builtin,
    File(PathBuf),
}

impl AlphabetSource {
    pub fn load(&self) -> Result<Alphabet> {
        match self {
            AlphabetSource::Builtin => Ok(Alphabet::bangla()),
            AlphabetSource::File(p) => {
                Alphabet::from_file(p).with_context(|| format!("loading alphabet {}", p.display()))
            }
        }
    }
}

impl FromStr for AlphabetSource {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(if s == "bangla" || s == "builtin" {
            AlphabetSource::Builtin
        } else {
            AlphabetSource::File(PathBuf::from(s))
        })
    }
}

/// A built-in geometry name or a path to a geometry JSON file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometrySource {
    Builtin(String),
    File(PathBuf),
}

impl Default for GeometrySource {
    fn default() -> Self {
        GeometrySource::Builtin("default-3row".to_string())
    }
}

impl FromStr for GeometrySource {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(if keymine_core::layout::BUILTIN_GEOMETRIES.contains(&s) {
            GeometrySource::Builtin(s.to_string())
        } else {
            GeometrySource::File(PathBuf::from(s))
        })
    }
}

impl GeometrySource {
    pub fn load(&self) -> Result<KeyboardGeometry> {
        match self {
            GeometrySource::Builtin(name) => Ok(KeyboardGeometry::builtin(name)?),
            GeometrySource::File(p) => KeyboardGeometry::from_file(p)
                .with_context(|| format!("loading geometry {}", p.display())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MinSupport {
    Count(u64),
    Percent(f64),
}

impl MinSupport {
    pub fn to_count(self, db_size: usize) -> u64 {
        match self {
            MinSupport::Count(n) => n.max(1),
            MinSupport::Percent(p) => min_count_from_percent(p, db_size),
        }
    }
}

impl FromStr for MinSupport {
    type Err = String;

    /// `2` is an absolute count, `22%` a percentage of the transaction count.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if let Some(p) = s.strip_suffix('%') {
            p.trim()
                .parse()
                .map(MinSupport::Percent)
                .map_err(|e| format!("bad percentage {s:?}: {e}"))
        } else {
            s.parse()
                .map(MinSupport::Count)
                .map_err(|e| format!("bad count {s:?}: {e}"))
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub corpus: Vec<PathBuf>,
    pub alphabet: AlphabetSource,
    pub geometry: GeometrySource,
    pub normalization: Normalization,
    pub association: AssociationMode,
    pub policy: DecisionPolicy,
    pub min_support: MinSupport,
    pub min_confidence: f64,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            corpus: Vec::new(),
            alphabet: AlphabetSource::Builtin,
            geometry: GeometrySource::default(),
            normalization: Normalization::Nfc,
            association: AssociationMode::Directed,
            policy: DecisionPolicy::PaperLiteral,
            min_support: MinSupport::Count(2),
            min_confidence: 0.0,
            out_dir: PathBuf::from("."),
        }
    }
}

fn require_exists(path: &Path, what: &str) -> Result<()> {
    if !path.exists() {
        bail!("{what} path does not exist: {}", path.display());
    }
    Ok(())
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        for p in &self.corpus {
            require_exists(p, "corpus")?;
        }
        if let AlphabetSource::File(p) = &self.alphabet {
            require_exists(p, "alphabet")?;
        }
        if let GeometrySource::File(p) = &self.geometry {
            require_exists(p, "geometry")?;
        }
        if let MinSupport::Percent(p) = self.min_support {
            if !(0.0..=100.0).contains(&p) {
                bail!("min support {p}% is outside [0, 100]");
            }
        }
        if !(0.0..=100.0).contains(&self.min_confidence) {
            bail!("min confidence {} is outside [0, 100]", self.min_confidence);
        }
        Ok(())
    }

    pub fn partition_options(&self) -> PartitionOptions {
        PartitionOptions {
            association: self.association,
            policy: self.policy,
        }
    }

    pub fn load_stream(&self, alphabet: &Alphabet) -> Result<SymbolStream> {
        let stream = load_corpus(&self.corpus, alphabet, self.normalization)?;
        if stream.total_symbols() == 0 {
            log::warn!(
                "corpus contains no symbols from alphabet {:?}",
                alphabet.name()
            );
        }
        Ok(stream)
    }
}
