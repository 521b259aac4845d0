use crate::corpus::Alphabet;
use crate::error::{Error, Result};
use crate::layout::geometry::{Hand, KeyboardGeometry};
use crate::layout::partition::HandPartition;
use crate::layout::Layout;
use crate::ngram::NgramTable;

#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub layout: Layout,
    /// Symbols left over once a hand ran out of keys, most frequent first.
    pub unassigned: Vec<char>,
}

/// Within each hand, the most frequent symbols take the cheapest keys: base
/// layer by ascending effort, then the shift layer.
pub fn assign_positions(
    name: &str,
    partition: &HandPartition,
    geometry: &KeyboardGeometry,
    monograms: &NgramTable,
    alphabet: &Alphabet,
) -> Result<Assignment> {
    let mut pairs = Vec::new();
    let mut unassigned = Vec::new();
    for hand in [Hand::Left, Hand::Right] {
        let mut symbols = partition.side(hand).to_vec();
        if symbols.is_empty() {
            continue;
        }
        let keys = geometry.keys_by_effort(hand);
        if keys.is_empty() {
            return Err(Error::Geometry(format!(
                "geometry {:?} has no keys for the {hand} hand",
                geometry.name()
            )));
        }
        symbols.sort_by(|&a, &b| {
            monograms
                .count(&[b])
                .cmp(&monograms.count(&[a]))
                .then_with(|| alphabet.order_key(a).cmp(&alphabet.order_key(b)))
        });
        let overflow = symbols.len().saturating_sub(keys.len());
        for (symbol, key) in symbols.iter().zip(&keys) {
            pairs.push((*symbol, key.key_id.clone()));
        }
        unassigned.extend_from_slice(&symbols[symbols.len() - overflow..]);
    }
    Ok(Assignment {
        layout: Layout::new(name, geometry.clone(), pairs)?,
        unassigned,
    })
}
