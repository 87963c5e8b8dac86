//! Integral weights in the fundamental-weight basis.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

/// An element of X(T), stored as its coordinates `⟨λ, α_i^v⟩` against the
/// simple coroots. Ordering is lexicographic on the coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(SmallVec<[i64; 8]>);

impl Weight {
    pub fn new(coords: impl IntoIterator<Item = i64>) -> Self {
        Weight(coords.into_iter().collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(SmallVec::from_elem(0, rank))
    }

    /// The weight with every coordinate equal to `c`; `c = 1` is ρ.
    pub fn constant(rank: usize, c: i64) -> Self {
        Weight(SmallVec::from_elem(c, rank))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|&c| c * k).collect())
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &Weight, k: i64) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    pub fn coord_sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Index<usize> for Weight {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.add_scaled(rhs, 1)
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.add_scaled(rhs, -1)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v.into_iter().collect())
    }
}

impl From<&[i64]> for Weight {
    fn from(v: &[i64]) -> Self {
        Weight(v.iter().copied().collect())
    }
}

impl<const N: usize> From<[i64; N]> for Weight {
    fn from(v: [i64; N]) -> Self {
        Weight(v.into_iter().collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses comma-separated coordinates such as `1,0,-2`.
impl FromStr for Weight {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| format!("bad coordinate {t:?}: {e}"))
            })
            .collect::<Result<SmallVec<_>, _>>()
            .map(Weight)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Vec::<i64>::deserialize(d).map(Weight::from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w: Weight = "1, -2,0".parse().unwrap();
        assert_eq!(w, Weight::from([1, -2, 0]));
        assert_eq!(w.to_string(), "(1,-2,0)");
        assert!("1,x".parse::<Weight>().is_err());
    }

    #[test]
    fn json_is_a_plain_array() {
        let w = Weight::from([1, 0]);
        assert_eq!(serde_json::to_string(&w).unwrap(), "[1,0]");
        let back: Weight = serde_json::from_str("[1,0]").unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn lexicographic_order() {
        assert!(Weight::from([0, 5]) < Weight::from([1, -3]));
        assert!(Weight::from([1, -3]) < Weight::from([1, 0]));
    }
}
