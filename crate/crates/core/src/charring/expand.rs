//! Triangular basis changes on W-invariant characters.
//!
//! A W-invariant character is determined by its dominant terms, and each of
//! the bases used here (orbit sums, Weyl characters, `s_r`) is unitriangular
//! for the dominance order. Expansions therefore work on dominant parts:
//! repeatedly take the maximal remaining dominant weight (largest
//! `⟨ν, 2ρ^v⟩`, ties broken lexicographically), read off its coefficient and
//! subtract that multiple of the basis element.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::weyl::{dominant_multiplicities, orbit_sum, s_r_character, weyl_character};
use super::FormalCharacter;
use crate::error::{Error, Result};
use crate::minuscule::is_restricted;
use crate::rootsys::RootDatum;
use crate::scalar::Coefficient;
use crate::weight::Weight;

/// Coefficients of a basis expansion, keyed by the basis element's highest
/// weight.
pub type Expansion<C> = BTreeMap<Weight, C>;

type Residual<C> = BTreeMap<(Reverse<i64>, Reverse<Weight>), C>;

fn dominant_residual<C: Coefficient>(phi: &FormalCharacter<C>) -> Residual<C> {
    let d = phi.datum();
    phi.dominant_terms()
        .map(|(w, c)| ((Reverse(d.height_key(w)), Reverse(w.clone())), c.clone()))
        .collect()
}

fn triangular<C, F>(phi: &FormalCharacter<C>, mut basis_dominant: F) -> Result<Expansion<C>>
where
    C: Coefficient,
    F: FnMut(&Weight) -> Result<Vec<(Weight, C)>>,
{
    phi.check_w_invariant()?;
    let d = phi.datum().clone();
    let mut residual = dominant_residual(phi);
    let mut out = Expansion::new();
    while let Some(((_, Reverse(top)), coeff)) = residual.pop_first() {
        let basis = basis_dominant(&top)?;
        for (w, m) in basis {
            if w == top {
                if !m.is_one() {
                    return Err(Error::InternalMismatch(format!("basis element at {top} is not monic")));
                }
                continue;
            }
            let key = (Reverse(d.height_key(&w)), Reverse(w));
            let delta = m * coeff.clone();
            match residual.get_mut(&key) {
                Some(v) => {
                    *v = v.clone() - delta;
                    if v.is_zero() {
                        residual.remove(&key);
                    }
                }
                None => {
                    residual.insert(key, -delta);
                }
            }
        }
        out.insert(top, coeff);
    }
    Ok(out)
}

/// `{a_ν}` with `φ = Σ a_ν s(ν)`.
pub fn expand_in_orbit_sums<C: Coefficient>(phi: &FormalCharacter<C>) -> Result<Expansion<C>> {
    triangular(phi, |nu| Ok(vec![(nu.clone(), C::one())]))
}

/// Above this many (term, Weyl element) pairs the alternating form of the
/// Weyl-basis expansion falls back to the triangular one.
const ALTERNATION_BUDGET: u128 = 50_000_000;

/// `{c_ν}` with `φ = Σ c_ν χ(ν)`.
pub fn expand_in_weyl_chars<C: Coefficient>(phi: &FormalCharacter<C>) -> Result<Expansion<C>> {
    let d = phi.datum().clone();
    if (phi.len() as u128).saturating_mul(d.weyl_group_order()) <= ALTERNATION_BUDGET {
        return weyl_coefficients_by_alternation(phi);
    }
    weyl_coefficients_triangular(phi)
}

pub(crate) fn weyl_coefficients_triangular<C: Coefficient>(phi: &FormalCharacter<C>) -> Result<Expansion<C>> {
    let d = phi.datum().clone();
    triangular(phi, |nu| dominant_multiplicities(&d, nu))
}

/// Multiplying `φ = Σ c_ν χ(ν)` by `Σ_w det(w) e(wρ)` gives
/// `Σ c_ν Σ_w det(w) e(w(ν+ρ))`, whose only strictly dominant terms are the
/// `c_ν e(ν+ρ)`. So `c_ν = Σ_w det(w) m_φ(ν + ρ − wρ)`.
pub(crate) fn weyl_coefficients_by_alternation<C: Coefficient>(phi: &FormalCharacter<C>) -> Result<Expansion<C>> {
    phi.check_w_invariant()?;
    let d = phi.datum();
    let rho = d.rho();
    let shifts: Vec<(Weight, bool)> = d
        .weyl_orbit(rho)?
        .into_iter()
        .map(|y| {
            let flips = (0..d.positive_roots().len()).filter(|&i| d.pairing(&y, i) < 0).count();
            (rho - &y, flips % 2 == 0)
        })
        .collect();
    let terms = phi.terms();
    let mut out = Expansion::new();
    for mu in terms.keys() {
        for (shift, _) in &shifts {
            let nu = mu - shift;
            if !nu.is_dominant() || out.contains_key(&nu) {
                continue;
            }
            let mut c = C::zero();
            for (sh, even) in &shifts {
                if let Some(m) = terms.get(&(&nu + sh)) {
                    c = if *even { c + m.clone() } else { c - m.clone() };
                }
            }
            out.insert(nu, c);
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// `{b_ν}` with `φ = Σ b_ν s_r(ν)`, all `ν ∈ X_r(T)`.
pub fn expand_in_sr<C: Coefficient>(phi: &FormalCharacter<C>, p: u64, r: u32) -> Result<Expansion<C>> {
    let d = phi.datum().clone();
    triangular(phi, |nu| {
        if !is_restricted(&d, nu, p, r)? {
            return Err(Error::TermNotRestricted { weight: nu.clone(), p, r });
        }
        let s = s_r_character::<C>(&d, p, r, nu)?;
        Ok(s.dominant_terms().map(|(w, c)| (w.clone(), c.clone())).collect())
    })
}

fn assemble<C, F>(d: &Arc<RootDatum>, coeffs: &Expansion<C>, mut basis: F) -> Result<FormalCharacter<C>>
where
    C: Coefficient,
    F: FnMut(&Weight) -> Result<FormalCharacter<C>>,
{
    let mut acc: HashMap<Weight, C> = HashMap::new();
    for (nu, c) in coeffs {
        for (w, m) in basis(nu)?.into_terms() {
            let v = acc.entry(w).or_insert_with(C::zero);
            *v = v.clone() + m * c.clone();
        }
    }
    Ok(FormalCharacter::from_canonical(
        d,
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    ))
}

pub fn assemble_orbit_sums<C: Coefficient>(d: &Arc<RootDatum>, coeffs: &Expansion<C>) -> Result<FormalCharacter<C>> {
    assemble(d, coeffs, |nu| orbit_sum(d, nu))
}

pub fn assemble_weyl_chars<C: Coefficient>(d: &Arc<RootDatum>, coeffs: &Expansion<C>) -> Result<FormalCharacter<C>> {
    assemble(d, coeffs, |nu| weyl_character(d, nu))
}

pub fn assemble_sr<C: Coefficient>(
    d: &Arc<RootDatum>,
    p: u64,
    r: u32,
    coeffs: &Expansion<C>,
) -> Result<FormalCharacter<C>> {
    assemble(d, coeffs, |nu| s_r_character(d, p, r, nu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_datum, RootSystemSpec, Series};
    use proptest::prelude::*;

    fn datum(s: Series, n: usize) -> Arc<RootDatum> {
        build_root_datum(RootSystemSpec::new(s, n)).unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from(c)
    }

    fn exp(t: &[(&[i64], i64)]) -> Expansion<i64> {
        t.iter().map(|(k, v)| (w(k), *v)).collect()
    }

    #[test]
    fn orbit_sum_expansion_examples() {
        let a1 = datum(Series::A, 1);
        let s2: FormalCharacter = orbit_sum(&a1, &w(&[2])).unwrap();
        assert_eq!(expand_in_orbit_sums(&s2).unwrap(), exp(&[(&[2], 1)]));
        let chi2: FormalCharacter = weyl_character(&a1, &w(&[2])).unwrap();
        assert_eq!(expand_in_orbit_sums(&chi2).unwrap(), exp(&[(&[2], 1), (&[0], 1)]));
        assert!(expand_in_orbit_sums(&FormalCharacter::<i64>::zero(&a1)).unwrap().is_empty());
    }

    #[test]
    fn weyl_expansion_examples() {
        let a1 = datum(Series::A, 1);
        let chi: FormalCharacter = weyl_character(&a1, &w(&[5])).unwrap();
        assert_eq!(expand_in_weyl_chars(&chi).unwrap(), exp(&[(&[5], 1)]));
        let s2: FormalCharacter = orbit_sum(&a1, &w(&[2])).unwrap();
        assert_eq!(expand_in_weyl_chars(&s2).unwrap(), exp(&[(&[2], 1), (&[0], -1)]));
        let chi1: FormalCharacter = weyl_character(&a1, &w(&[1])).unwrap();
        let s1: FormalCharacter = orbit_sum(&a1, &w(&[1])).unwrap();
        assert_eq!(expand_in_weyl_chars(&(&chi1 * &s1)).unwrap(), exp(&[(&[2], 1), (&[0], 1)]));
    }

    #[test]
    fn sr_expansion_examples() {
        let a1 = datum(Series::A, 1);
        let phi = FormalCharacter::from_terms(&a1, [3, 1, -1, -3].map(|k| (w(&[k]), 1i64)));
        assert_eq!(expand_in_sr(&phi, 2, 2).unwrap(), exp(&[(&[3], 1)]));
        assert!(expand_in_sr(&FormalCharacter::<i64>::zero(&a1), 2, 2).unwrap().is_empty());
        let chi4: FormalCharacter = weyl_character(&a1, &w(&[4])).unwrap();
        assert!(matches!(expand_in_sr(&chi4, 2, 2), Err(Error::TermNotRestricted { .. })));
    }

    #[test]
    fn non_invariant_input_is_rejected() {
        let a1 = datum(Series::A, 1);
        let phi = FormalCharacter::from_terms(&a1, [(w(&[1]), 1i64), (w(&[0]), 1)]);
        assert_eq!(expand_in_orbit_sums(&phi), Err(Error::NotWInvariant(w(&[1]))));
        assert!(expand_in_weyl_chars(&phi).is_err());
    }

    fn arb_invariant(d: Arc<RootDatum>) -> impl Strategy<Value = FormalCharacter> {
        let rank = d.rank();
        prop::collection::vec((prop::collection::vec(0i64..=3, rank), -3i64..=3), 0..5).prop_map(move |t| {
            let mut acc = FormalCharacter::zero(&d);
            for (lam, c) in t {
                let s: FormalCharacter = orbit_sum(&d, &Weight::from(lam)).unwrap();
                acc = &acc + &s.scale(&c);
            }
            acc
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn expansions_reassemble(phi in arb_invariant(datum(Series::B, 2))) {
            let d = phi.datum().clone();
            let a = expand_in_orbit_sums(&phi).unwrap();
            prop_assert_eq!(assemble_orbit_sums(&d, &a).unwrap(), phi.clone());
            let c = expand_in_weyl_chars(&phi).unwrap();
            prop_assert_eq!(&weyl_coefficients_triangular(&phi).unwrap(), &c);
            prop_assert_eq!(assemble_weyl_chars(&d, &c).unwrap(), phi);
        }

        #[test]
        fn sr_expansion_recovers_coefficients(
            coeffs in prop::collection::btree_map(prop::collection::vec(0i64..4, 2), -3i64..=3, 0..5)
        ) {
            let d = datum(Series::B, 2);
            let coeffs: Expansion<i64> = coeffs
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(w, c)| (Weight::from(w), c))
                .collect();
            let phi = assemble_sr(&d, 2, 2, &coeffs).unwrap();
            prop_assert_eq!(expand_in_sr(&phi, 2, 2).unwrap(), coeffs);
        }
    }
}
