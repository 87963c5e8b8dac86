//! `{"type":"A","rank":2,"terms":[{"w":[1,0],"m":1},...]}`

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::FormalCharacter;
use crate::error::{Error, Result};
use crate::rootsys::{build_root_datum, RootDatum, RootSystemSpec};
use crate::scalar::Coefficient;
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub w: Weight,
    pub m: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    #[serde(rename = "type")]
    pub series: String,
    pub rank: usize,
    pub terms: Vec<TermJson>,
}

impl CharacterJson {
    pub fn spec(&self) -> Result<RootSystemSpec> {
        let spec = RootSystemSpec::new(self.series.parse()?, self.rank);
        spec.validate()?;
        Ok(spec)
    }

    /// Builds the character over `datum`, which must match the recorded
    /// type. Terms must already be canonical: strictly increasing weights,
    /// nonzero multiplicities.
    pub fn into_character<C: Coefficient>(self, datum: &Arc<RootDatum>) -> Result<FormalCharacter<C>> {
        if self.spec()? != datum.spec() {
            return Err(Error::DatumMismatch(format!("{}{}", self.series, self.rank), datum.spec().to_string()));
        }
        let mut terms = BTreeMap::new();
        let mut prev: Option<&Weight> = None;
        for t in &self.terms {
            datum.check_weight(&t.w)?;
            if t.m == 0 {
                return Err(Error::Format(format!("zero multiplicity at {}", t.w)));
            }
            if prev.is_some_and(|p| p >= &t.w) {
                return Err(Error::Format(format!("terms out of canonical order at {}", t.w)));
            }
            prev = Some(&t.w);
            terms.insert(t.w.clone(), C::from_int(t.m));
        }
        Ok(FormalCharacter::from_canonical(datum, terms))
    }

    pub fn parse<C: Coefficient>(text: &str) -> Result<FormalCharacter<C>> {
        let json: CharacterJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let datum = build_root_datum(json.spec()?)?;
        json.into_character(&datum)
    }
}

impl<C: Coefficient> FormalCharacter<C> {
    pub fn to_json(&self) -> Result<CharacterJson> {
        let spec = self.datum().spec();
        let terms = self
            .terms()
            .iter()
            .map(|(w, c)| {
                c.to_i64()
                    .map(|m| TermJson { w: w.clone(), m })
                    .ok_or_else(|| Error::Format(format!("multiplicity {c} does not fit in JSON integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterJson {
            series: spec.series.to_string(),
            rank: spec.rank,
            terms,
        })
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_json()?).expect("serializable"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::weyl_character;
    use crate::rootsys::Series;
    use proptest::prelude::*;

    #[test]
    fn exact_format() {
        let d = build_root_datum(RootSystemSpec::new(Series::A, 2)).unwrap();
        let chi: FormalCharacter = weyl_character(&d, &Weight::from([1, 0])).unwrap();
        let text = chi.to_json_string().unwrap();
        assert_eq!(
            text,
            r#"{"type":"A","rank":2,"terms":[{"w":[-1,1],"m":1},{"w":[0,-1],"m":1},{"w":[1,0],"m":1}]}"#
        );
        assert_eq!(CharacterJson::parse::<i64>(&text).unwrap(), chi);
    }

    #[test]
    fn rejects_non_canonical_input() {
        for bad in [
            r#"{"type":"A","rank":1,"terms":[{"w":[1],"m":1},{"w":[-1],"m":1}]}"#,
            r#"{"type":"A","rank":1,"terms":[{"w":[1],"m":0}]}"#,
            r#"{"type":"A","rank":1,"terms":[{"w":[1,0],"m":1}]}"#,
            r#"{"type":"D","rank":3,"terms":[]}"#,
            r#"{"type":"A","rank":1}"#,
        ] {
            assert!(CharacterJson::parse::<i64>(bad).is_err(), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn round_trip_is_byte_exact(t in prop::collection::vec((prop::collection::vec(-9i64..=9, 3), -50i64..=50), 0..12)) {
            let d = build_root_datum(RootSystemSpec::new(Series::B, 3)).unwrap();
            let phi = FormalCharacter::<i64>::from_terms(&d, t.into_iter().map(|(w, c)| (Weight::from(w), c)));
            let text = phi.to_json_string().unwrap();
            let back = CharacterJson::parse::<i64>(&text).unwrap();
            prop_assert_eq!(back.to_json_string().unwrap(), text);
            prop_assert_eq!(back, phi);
        }
    }
}
