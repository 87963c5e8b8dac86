//! The group ring ℤX(T): sparse formal characters and their arithmetic.

mod divide;
mod expand;
mod json;
mod weyl;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rootsys::RootDatum;
use crate::scalar::Coefficient;
use crate::weight::Weight;

pub use divide::divide_exact;
pub use expand::{
    assemble_orbit_sums, assemble_sr, assemble_weyl_chars, expand_in_orbit_sums, expand_in_sr,
    expand_in_weyl_chars, Expansion,
};
pub use json::{CharacterJson, TermJson};
pub use weyl::{
    dominant_multiplicities, dominant_weights_below, orbit_sum, s_r_character, weyl_character, weyl_character_straightened,
    weyl_dimension,
};

/// Products with fewer term pairs than this stay on the calling thread.
const PARALLEL_PRODUCT_THRESHOLD: usize = 1 << 16;

/// An element `Σ m_μ e(μ)` of ℤX(T). Terms are kept in lexicographic weight
/// order with no zero multiplicities.
#[derive(Clone)]
pub struct FormalCharacter<C: Coefficient = i64> {
    datum: Arc<RootDatum>,
    terms: BTreeMap<Weight, C>,
}

impl<C: Coefficient> FormalCharacter<C> {
    pub fn zero(datum: &Arc<RootDatum>) -> Self {
        FormalCharacter {
            datum: datum.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `e(0)`.
    pub fn one(datum: &Arc<RootDatum>) -> Self {
        Self::monomial(datum, datum.zero_weight(), C::one())
    }

    /// `c · e(μ)`.
    pub fn monomial(datum: &Arc<RootDatum>, mu: Weight, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mu, c);
        }
        FormalCharacter {
            datum: datum.clone(),
            terms,
        }
    }

    /// Builds a character from (weight, multiplicity) pairs, merging
    /// repeated weights and dropping zeros.
    pub fn from_terms(datum: &Arc<RootDatum>, terms: impl IntoIterator<Item = (Weight, C)>) -> Self {
        let mut out = Self::zero(datum);
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub(crate) fn from_canonical(datum: &Arc<RootDatum>, terms: BTreeMap<Weight, C>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        FormalCharacter {
            datum: datum.clone(),
            terms,
        }
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn terms(&self) -> &BTreeMap<Weight, C> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Weight, C> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mu: &Weight) -> C {
        self.terms.get(mu).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, mu: Weight, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mu) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.datum.spec() == other.datum.spec() {
            Ok(())
        } else {
            Err(Error::DatumMismatch(
                self.datum.spec().to_string(),
                other.datum.spec().to_string(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Convolution product `e(λ)e(μ) = e(λ+μ)`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let pairs = small.len().saturating_mul(large.len());
        let accumulate = |chunk: &[(&Weight, &C)]| {
            let mut acc: HashMap<Weight, C> = HashMap::with_capacity(chunk.len() * small.len());
            for (lw, lc) in chunk {
                for (sw, sc) in &small.terms {
                    let c = (*lc).clone() * sc.clone();
                    let w = *lw + sw;
                    match acc.get_mut(&w) {
                        Some(v) => *v = v.clone() + c,
                        None => {
                            acc.insert(w, c);
                        }
                    }
                }
            }
            acc
        };
        let large_terms: Vec<(&Weight, &C)> = large.terms.iter().collect();
        let mut terms = BTreeMap::new();
        if pairs < PARALLEL_PRODUCT_THRESHOLD {
            terms.extend(accumulate(&large_terms).into_iter().filter(|(_, c)| !c.is_zero()));
        } else {
            let chunk = (large_terms.len() / rayon::current_num_threads().max(1)).max(64);
            let partials: Vec<HashMap<Weight, C>> = large_terms.par_chunks(chunk).map(accumulate).collect();
            let mut merged: HashMap<Weight, C> = HashMap::new();
            for part in partials {
                for (w, c) in part {
                    match merged.get_mut(&w) {
                        Some(v) => *v = v.clone() + c,
                        None => {
                            merged.insert(w, c);
                        }
                    }
                }
            }
            terms.extend(merged.into_iter().filter(|(_, c)| !c.is_zero()));
        }
        let cap = self.datum.caps().terms;
        if terms.len() > cap {
            return Err(Error::ResourceCap(format!("product has {} terms (cap {cap})", terms.len())));
        }
        Ok(FormalCharacter {
            datum: self.datum.clone(),
            terms,
        })
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(&self.datum);
        }
        FormalCharacter {
            datum: self.datum.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.clone() * k.clone())).collect(),
        }
    }

    /// Translation by `e(μ)`.
    pub fn shift(&self, mu: &Weight) -> Self {
        FormalCharacter {
            datum: self.datum.clone(),
            terms: self.terms.iter().map(|(w, c)| (w + mu, c.clone())).collect(),
        }
    }

    /// `φ^[j]`: every `e(μ)` becomes `e(p^j μ)`.
    pub fn frobenius_twist(&self, p: u64, j: u32) -> Self {
        let factor = (p as i64).pow(j);
        FormalCharacter {
            datum: self.datum.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.scale(factor), c.clone())).collect(),
        }
    }

    /// The image of `φ` under `e(μ) ↦ e(−μ)` (the character of the dual).
    pub fn dual(&self) -> Self {
        FormalCharacter {
            datum: self.datum.clone(),
            terms: self.terms.iter().map(|(w, c)| (-w, c.clone())).collect(),
        }
    }

    /// Evaluation at `e(μ) ↦ 1`.
    pub fn dimension(&self) -> C {
        self.terms.values().fold(C::zero(), |a, c| a + c.clone())
    }

    pub fn dominant_terms(&self) -> impl Iterator<Item = (&Weight, &C)> {
        self.terms.iter().filter(|(w, _)| w.is_dominant())
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|c| c.is_nonnegative())
    }

    /// The first term that breaks invariance under some simple reflection.
    pub fn w_invariance_violation(&self) -> Option<&Weight> {
        let d = &self.datum;
        for (w, c) in &self.terms {
            for i in 0..d.rank() {
                if w[i] != 0 && self.terms.get(&d.reflect(w, i)) != Some(c) {
                    return Some(w);
                }
            }
        }
        None
    }

    pub fn is_w_invariant(&self) -> bool {
        self.w_invariance_violation().is_none()
    }

    pub fn check_w_invariant(&self) -> Result<()> {
        match self.w_invariance_violation() {
            None => Ok(()),
            Some(w) => Err(Error::NotWInvariant(w.clone())),
        }
    }

    /// Converts between coefficient types.
    pub fn convert<D: Coefficient>(&self) -> Option<FormalCharacter<D>> {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| D::from_i128(c.to_i128()?).map(|d| (w.clone(), d)))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(FormalCharacter {
            datum: self.datum.clone(),
            terms,
        })
    }
}

pub fn char_add<C: Coefficient>(a: &FormalCharacter<C>, b: &FormalCharacter<C>) -> Result<FormalCharacter<C>> {
    a.checked_add(b)
}

pub fn char_mul<C: Coefficient>(a: &FormalCharacter<C>, b: &FormalCharacter<C>) -> Result<FormalCharacter<C>> {
    a.checked_mul(b)
}

pub fn frobenius_twist<C: Coefficient>(phi: &FormalCharacter<C>, p: u64, j: u32) -> FormalCharacter<C> {
    phi.frobenius_twist(p, j)
}

pub fn dimension<C: Coefficient>(phi: &FormalCharacter<C>) -> C {
    phi.dimension()
}

impl<C: Coefficient> PartialEq for FormalCharacter<C> {
    fn eq(&self, other: &Self) -> bool {
        self.datum.spec() == other.datum.spec() && self.terms == other.terms
    }
}

impl<C: Coefficient> Eq for FormalCharacter<C> {}

// The operator forms panic on mismatched root data; use the `checked_*`
// methods where the inputs are not known to agree.
impl<C: Coefficient> Add for &FormalCharacter<C> {
    type Output = FormalCharacter<C>;
    fn add(self, rhs: Self) -> FormalCharacter<C> {
        self.checked_add(rhs).expect("root data differ")
    }
}

impl<C: Coefficient> Sub for &FormalCharacter<C> {
    type Output = FormalCharacter<C>;
    fn sub(self, rhs: Self) -> FormalCharacter<C> {
        self.checked_sub(rhs).expect("root data differ")
    }
}

impl<C: Coefficient> Mul for &FormalCharacter<C> {
    type Output = FormalCharacter<C>;
    fn mul(self, rhs: Self) -> FormalCharacter<C> {
        self.checked_mul(rhs).expect("product failed")
    }
}

impl<C: Coefficient> Neg for &FormalCharacter<C> {
    type Output = FormalCharacter<C>;
    fn neg(self) -> FormalCharacter<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coefficient> fmt::Debug for FormalCharacter<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coefficient> fmt::Display for FormalCharacter<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest weights first reads more naturally.
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "e{w}")?;
            } else {
                write!(f, "{c}e{w}")?;
            }
        }
        Ok(())
    }
}
