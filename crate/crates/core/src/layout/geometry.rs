use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const DEFAULT_3ROW: &str = include_str!("../../data/default-3row.json");
const TEST_2KEY: &str = include_str!("../../data/test-2key.json");

pub const BUILTIN_GEOMETRIES: [&str; 2] = ["default-3row", "test-2key"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hand {
    Left,
    Right,
}

impl fmt::Display for Hand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hand::Left => "left",
            Hand::Right => "right",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    Base,
    Shift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Finger {
    Thumb,
    Index,
    Middle,
    Ring,
    Pinky,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Key {
    pub key_id: String,
    pub hand: Hand,
    pub row: u8,
    pub column: u8,
    pub finger: Finger,
    pub effort: f64,
    pub layer: Layer,
}

/// Physical keys split across two hands, each with an effort score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGeometry")]
pub struct KeyboardGeometry {
    name: String,
    keys: Vec<Key>,
}

#[derive(Deserialize)]
struct RawGeometry {
    name: String,
    keys: Vec<Key>,
}

impl TryFrom<RawGeometry> for KeyboardGeometry {
    type Error = Error;

    fn try_from(raw: RawGeometry) -> Result<Self> {
        KeyboardGeometry::new(raw.name, raw.keys)
    }
}

impl KeyboardGeometry {
    /// Requires unique key ids, positive finite efforts and at least one
    /// base-layer key per hand.
    pub fn new(name: impl Into<String>, keys: Vec<Key>) -> Result<Self> {
        let name = name.into();
        let mut seen = HashSet::new();
        for key in &keys {
            if !seen.insert(key.key_id.as_str()) {
                return Err(Error::Geometry(format!(
                    "duplicate key id {:?}",
                    key.key_id
                )));
            }
            if !(key.effort.is_finite() && key.effort > 0.0) {
                return Err(Error::Geometry(format!(
                    "key {:?} has non-positive effort {}",
                    key.key_id, key.effort
                )));
            }
        }
        for hand in [Hand::Left, Hand::Right] {
            if !keys
                .iter()
                .any(|k| k.hand == hand && k.layer == Layer::Base)
            {
                return Err(Error::Geometry(format!(
                    "geometry {name:?} has no base-layer key for the {hand} hand"
                )));
            }
        }
        Ok(Self { name, keys })
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let text = match name {
            "default-3row" => DEFAULT_3ROW,
            "test-2key" => TEST_2KEY,
            other => return Err(Error::UnknownGeometry(other.to_string())),
        };
        Self::from_json(text)
    }

    pub fn default_3row() -> Self {
        Self::builtin("default-3row").expect("built-in geometry is valid")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&crate::corpus::read_utf8(path)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("geometry serializes");
        s.push('\n');
        s
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    pub fn key(&self, key_id: &str) -> Option<&Key> {
        self.keys.iter().find(|k| k.key_id == key_id)
    }

    /// Keys of one hand in fill order: base layer first, then by effort,
    /// then by key id.
    pub fn keys_by_effort(&self, hand: Hand) -> Vec<&Key> {
        let mut keys: Vec<&Key> = self.keys.iter().filter(|k| k.hand == hand).collect();
        keys.sort_by(|a, b| {
            a.layer
                .cmp(&b.layer)
                .then(a.effort.total_cmp(&b.effort))
                .then_with(|| a.key_id.cmp(&b.key_id))
        });
        keys
    }
}
