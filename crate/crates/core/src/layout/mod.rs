pub mod assign;
pub mod geometry;
pub mod partition;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use assign::{assign_positions, Assignment};
pub use geometry::{Finger, Hand, Key, KeyboardGeometry, Layer, BUILTIN_GEOMETRIES};
pub use partition::{
    cumulative_association, partition_letters, seed_partition, Association, AssociationMode,
    Decision, DecisionPolicy, HandPartition, PartitionOptions,
};

/// Symbol to key assignment over a geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    name: String,
    geometry: KeyboardGeometry,
    mapping: BTreeMap<char, String>,
}

#[derive(Serialize, Deserialize)]
struct LayoutFile {
    name: String,
    geometry: String,
    mapping: Vec<MappingEntry>,
}

#[derive(Serialize, Deserialize)]
struct MappingEntry {
    symbol: String,
    key_id: String,
}

impl Layout {
    pub fn new(
        name: impl Into<String>,
        geometry: KeyboardGeometry,
        pairs: impl IntoIterator<Item = (char, String)>,
    ) -> Result<Self> {
        let mut mapping = BTreeMap::new();
        let mut owners: HashMap<String, char> = HashMap::new();
        for (symbol, key_id) in pairs {
            if geometry.key(&key_id).is_none() {
                return Err(Error::UnknownKey {
                    key_id,
                    geometry: geometry.name().to_string(),
                });
            }
            if let Some(&first) = owners.get(&key_id) {
                return Err(Error::DuplicateKey {
                    key_id,
                    first,
                    second: symbol,
                });
            }
            if mapping.contains_key(&symbol) {
                return Err(Error::DuplicateMapping(symbol));
            }
            owners.insert(key_id.clone(), symbol);
            mapping.insert(symbol, key_id);
        }
        Ok(Self {
            name: name.into(),
            geometry,
            mapping,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn geometry(&self) -> &KeyboardGeometry {
        &self.geometry
    }

    pub fn mapping(&self) -> &BTreeMap<char, String> {
        &self.mapping
    }

    pub fn key_of(&self, symbol: char) -> Option<&Key> {
        self.mapping
            .get(&symbol)
            .and_then(|id| self.geometry.key(id))
    }

    pub fn hand_of(&self, symbol: char) -> Option<Hand> {
        self.key_of(symbol).map(|k| k.hand)
    }

    /// JSON layout file; entries follow the geometry's key order.
    pub fn to_json(&self) -> String {
        let by_key: HashMap<&str, char> =
            self.mapping.iter().map(|(&c, k)| (k.as_str(), c)).collect();
        let mapping = self
            .geometry
            .keys()
            .iter()
            .filter_map(|k| {
                by_key.get(k.key_id.as_str()).map(|&c| MappingEntry {
                    symbol: c.to_string(),
                    key_id: k.key_id.clone(),
                })
            })
            .collect();
        let file = LayoutFile {
            name: self.name.clone(),
            geometry: self.geometry.name().to_string(),
            mapping,
        };
        let mut s = serde_json::to_string_pretty(&file).expect("layout serializes");
        s.push('\n');
        s
    }

    /// Parses a layout file, resolving its geometry name through `resolve`.
    pub fn from_json(
        text: &str,
        resolve: impl FnOnce(&str) -> Result<KeyboardGeometry>,
    ) -> Result<Self> {
        let file: LayoutFile =
            serde_json::from_str(text).map_err(|e| Error::MalformedLayout(e.to_string()))?;
        let geometry = resolve(&file.geometry)?;
        let mut pairs = Vec::with_capacity(file.mapping.len());
        for entry in file.mapping {
            let mut chars = entry.symbol.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => pairs.push((c, entry.key_id)),
                _ => {
                    return Err(Error::MalformedLayout(format!(
                        "symbol {:?} is not a single character",
                        entry.symbol
                    )))
                }
            }
        }
        Self::new(file.name, geometry, pairs)
    }

    /// Resolves built-in geometries only.
    pub fn from_json_builtin(text: &str) -> Result<Self> {
        Self::from_json(text, KeyboardGeometry::builtin)
    }
}
