//! Externally supplied simple characters.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::charring::{CharacterJson, FormalCharacter};
use crate::error::{Error, Result};
use crate::rootsys::RootDatum;
use crate::scalar::Coefficient;
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry<C: Coefficient> {
    pub character: FormalCharacter<C>,
    pub provenance: String,
}

/// Simple characters keyed by `(λ, p)`.
#[derive(Debug, Clone)]
pub struct SimpleCharTable<C: Coefficient = i64> {
    datum: Arc<RootDatum>,
    entries: BTreeMap<(Weight, u64), TableEntry<C>>,
}

/// One record of the table file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRecord {
    #[serde(rename = "type")]
    pub series: String,
    pub rank: usize,
    pub p: u64,
    pub weight: Weight,
    pub character: CharacterJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// Checks the shape every simple character has: W-invariant, `e(λ)` with
/// multiplicity one, every dominant term below `λ`.
pub fn validate_simple_shape<C: Coefficient>(lambda: &Weight, ch: &FormalCharacter<C>) -> Result<()> {
    let d = ch.datum();
    ch.check_w_invariant()?;
    if !ch.coefficient(lambda).is_one() {
        return Err(Error::HypothesisViolated(format!("character does not have leading term e{lambda}")));
    }
    if let Some((w, _)) = ch.dominant_terms().find(|(w, _)| !d.dominance_le(w, lambda)) {
        return Err(Error::HypothesisViolated(format!("term e{w} is not below {lambda}")));
    }
    Ok(())
}

impl<C: Coefficient> SimpleCharTable<C> {
    pub fn new(datum: &Arc<RootDatum>) -> Self {
        SimpleCharTable {
            datum: datum.clone(),
            entries: BTreeMap::new(),
        }
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn insert(&mut self, lambda: Weight, p: u64, character: FormalCharacter<C>, provenance: impl Into<String>) -> Result<()> {
        if character.datum().spec() != self.datum.spec() {
            return Err(Error::DatumMismatch(
                character.datum().spec().to_string(),
                self.datum.spec().to_string(),
            ));
        }
        validate_simple_shape(&lambda, &character)?;
        self.entries.insert(
            (lambda, p),
            TableEntry {
                character,
                provenance: provenance.into(),
            },
        );
        Ok(())
    }

    pub fn get(&self, lambda: &Weight, p: u64) -> Option<&TableEntry<C>> {
        self.entries.get(&(lambda.clone(), p))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Weight, u64), &TableEntry<C>)> {
        self.entries.iter()
    }

    /// Parses a JSON list of records. Records for other root systems are
    /// rejected.
    pub fn from_json(datum: &Arc<RootDatum>, text: &str) -> Result<Self> {
        let records: Vec<TableRecord> = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let mut table = SimpleCharTable::new(datum);
        for rec in records {
            let ch = rec.character.into_character::<C>(datum)?;
            let provenance = rec.provenance.unwrap_or_else(|| "table file".to_string());
            table.insert(rec.weight, rec.p, ch, provenance)?;
        }
        Ok(table)
    }

    pub fn to_json(&self) -> Result<String> {
        let spec = self.datum.spec();
        let records = self
            .entries
            .iter()
            .map(|((w, p), e)| {
                Ok(TableRecord {
                    series: spec.series.to_string(),
                    rank: spec.rank,
                    p: *p,
                    weight: w.clone(),
                    character: e.character.to_json()?,
                    provenance: Some(e.provenance.clone()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(serde_json::to_string(&records).expect("serializable"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::{orbit_sum, weyl_character};
    use crate::rootsys::{build_root_datum, RootSystemSpec, Series};

    #[test]
    fn json_round_trip_and_validation() {
        let d = build_root_datum(RootSystemSpec::new(Series::A, 1)).unwrap();
        let mut t = SimpleCharTable::<i64>::new(&d);
        t.insert(Weight::from([2]), 2, orbit_sum(&d, &Weight::from([2])).unwrap(), "hand").unwrap();
        let text = t.to_json().unwrap();
        let back = SimpleCharTable::<i64>::from_json(&d, &text).unwrap();
        assert_eq!(back.get(&Weight::from([2]), 2), t.get(&Weight::from([2]), 2));
        assert_eq!(back.to_json().unwrap(), text);

        let not_simple = orbit_sum(&d, &Weight::from([4])).unwrap();
        assert!(t.insert(Weight::from([2]), 2, not_simple, "bad").is_err());
        let chi: FormalCharacter = weyl_character(&d, &Weight::from([3])).unwrap();
        let lopsided = &chi + &FormalCharacter::monomial(&d, Weight::from([1]), 1);
        assert!(matches!(t.insert(Weight::from([3]), 2, lopsided, "bad"), Err(Error::NotWInvariant(_))));
    }

    #[test]
    fn rejects_foreign_records() {
        let d = build_root_datum(RootSystemSpec::new(Series::A, 1)).unwrap();
        let text = r#"[{"type":"A","rank":2,"p":2,"weight":[0,0],"character":{"type":"A","rank":2,"terms":[{"w":[0,0],"m":1}]}}]"#;
        assert!(SimpleCharTable::<i64>::from_json(&d, text).is_err());
    }
}
