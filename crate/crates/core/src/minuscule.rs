//! Restricted, minuscule and p-minuscule weights, and base-`p` digits.
//!
//! `X_r(T)` is read as `{λ ∈ X⁺(T) : ⟨λ, α^v⟩ < p^r for all simple α}`.
//! p-minuscule (`⟨λ, β₀^v⟩ ≤ p`) does not include restrictedness; callers
//! that need both ask for both.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::charring::dominant_multiplicities;
use crate::error::{Error, Result};
use crate::rootsys::RootDatum;
use crate::weight::Weight;

pub fn check_prime(p: u64) -> Result<()> {
    let prime = p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0);
    if prime {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn require_dominant(d: &RootDatum, lambda: &Weight) -> Result<()> {
    d.check_weight(lambda)?;
    if lambda.is_dominant() {
        Ok(())
    } else {
        Err(Error::NotDominant(lambda.clone()))
    }
}

/// `p^r`, or an error if it overflows.
pub fn prime_power(p: u64, r: u32) -> Result<i64> {
    (p as i64)
        .checked_pow(r)
        .ok_or_else(|| Error::ResourceCap(format!("{p}^{r} overflows")))
}

pub fn is_restricted(d: &RootDatum, lambda: &Weight, p: u64, r: u32) -> Result<bool> {
    require_dominant(d, lambda)?;
    let bound = prime_power(p, r)?;
    Ok(lambda.coords().iter().all(|&c| c < bound))
}

/// The digits `λ^0, …, λ^{r−1} ∈ X₁(T)` with `λ = Σ p^j λ^j`.
pub fn p_digits(d: &RootDatum, lambda: &Weight, p: u64, r: u32) -> Result<Vec<Weight>> {
    if !is_restricted(d, lambda, p, r)? {
        return Err(Error::NotRestricted {
            weight: lambda.clone(),
            p,
            r,
        });
    }
    let p = p as i64;
    let mut rest = lambda.clone();
    let mut digits = Vec::with_capacity(r as usize);
    for _ in 0..r {
        digits.push(Weight::new(rest.coords().iter().map(|c| c % p)));
        rest = Weight::new(rest.coords().iter().map(|c| c / p));
    }
    debug_assert!(rest.is_zero());
    Ok(digits)
}

/// `⟨λ, α^v⟩ ≤ 1` for every positive root; the largest such pairing is the
/// one with `β₀^v`, but every root is checked.
pub fn is_minuscule(d: &RootDatum, lambda: &Weight) -> Result<bool> {
    require_dominant(d, lambda)?;
    Ok((0..d.positive_roots().len()).all(|i| d.pairing(lambda, i) <= 1))
}

/// Orbit criterion: the weights of `Δ(λ)` form the single orbit `Wλ`.
pub fn is_minuscule_by_orbit(d: &RootDatum, lambda: &Weight) -> Result<bool> {
    require_dominant(d, lambda)?;
    let dom = dominant_multiplicities::<i64>(d, lambda)?;
    Ok(dom.len() == 1)
}

pub fn is_p_minuscule(d: &RootDatum, lambda: &Weight, p: u64) -> Result<bool> {
    require_dominant(d, lambda)?;
    Ok(d.pairing(lambda, d.highest_short_root()) <= p as i64)
}

fn digits_satisfy(
    d: &RootDatum,
    lambda: &Weight,
    p: u64,
    r: u32,
    pred: impl Fn(&Weight) -> Result<bool>,
) -> Result<bool> {
    if !is_restricted(d, lambda, p, r)? {
        return Ok(false);
    }
    for digit in p_digits(d, lambda, p, r)? {
        if !pred(&digit)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Restricted, with every base-`p` digit p-minuscule.
pub fn is_pr_minuscule(d: &RootDatum, lambda: &Weight, p: u64, r: u32) -> Result<bool> {
    digits_satisfy(d, lambda, p, r, |w| is_p_minuscule(d, w, p))
}

/// Restricted, with every base-`p` digit minuscule.
pub fn is_r_minuscule(d: &RootDatum, lambda: &Weight, p: u64, r: u32) -> Result<bool> {
    digits_satisfy(d, lambda, p, r, |w| is_minuscule(d, w))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinusculeFlags {
    pub restricted: bool,
    pub minuscule: bool,
    pub p_minuscule: bool,
    pub r_minuscule: bool,
    pub pr_minuscule: bool,
}

/// Classification report for one weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinusculeProfile {
    pub weight: Weight,
    pub p: u64,
    pub r: u32,
    /// Present exactly when the weight is restricted.
    pub digits: Option<Vec<Weight>>,
    pub flags: MinusculeFlags,
}

pub fn classify(d: &RootDatum, lambda: &Weight, p: u64, r: u32) -> Result<MinusculeProfile> {
    check_prime(p)?;
    let restricted = is_restricted(d, lambda, p, r)?;
    let flags = MinusculeFlags {
        restricted,
        minuscule: is_minuscule(d, lambda)?,
        p_minuscule: is_p_minuscule(d, lambda, p)?,
        r_minuscule: is_r_minuscule(d, lambda, p, r)?,
        pr_minuscule: is_pr_minuscule(d, lambda, p, r)?,
    };
    Ok(MinusculeProfile {
        weight: lambda.clone(),
        p,
        r,
        digits: restricted.then(|| p_digits(d, lambda, p, r)).transpose()?,
        flags,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightClass {
    Minuscule,
    /// Every dominant `λ` with `⟨λ, β₀^v⟩ ≤ p`, restricted or not.
    PMinuscule,
    /// p-minuscule weights in `X₁(T)`.
    PMinusculeRestricted,
    PrMinuscule,
    RMinuscule,
}

/// All dominant weights in the class, lexicographically ordered.
pub fn enumerate_class(d: &RootDatum, p: u64, r: u32, class: WeightClass) -> Result<Vec<Weight>> {
    let n = d.rank();
    let box_weights = |bound: i64| -> Vec<Weight> {
        let mut out = vec![Weight::zero(n)];
        for i in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..bound).map(move |c| {
                        let mut v = w.clone();
                        v.coords_mut()[i] = c;
                        v
                    })
                })
                .collect();
        }
        out
    };
    let digit_class = |inner: WeightClass| -> Result<Vec<Weight>> {
        let mut out = Vec::new();
        for w in box_weights(2.max(p as i64 + 1)) {
            let keep = match inner {
                WeightClass::Minuscule => is_minuscule(d, &w)?,
                WeightClass::PMinuscule => is_p_minuscule(d, &w, p)?,
                _ => w.coords().iter().all(|&c| c < p as i64) && is_p_minuscule(d, &w, p)?,
            };
            if keep {
                out.push(w);
            }
        }
        Ok(out)
    };
    let combine = |digits: Vec<Weight>| -> Vec<Weight> {
        let mut acc: BTreeSet<Weight> = BTreeSet::from([Weight::zero(n)]);
        let mut scale = 1i64;
        for _ in 0..r {
            acc = acc
                .iter()
                .flat_map(|w| digits.iter().map(move |dg| w.add_scaled(dg, scale)))
                .collect();
            scale *= p as i64;
        }
        acc.into_iter().collect()
    };
    let mut out = match class {
        WeightClass::Minuscule => digit_class(WeightClass::Minuscule)?,
        WeightClass::PMinuscule => digit_class(WeightClass::PMinuscule)?,
        WeightClass::PMinusculeRestricted => digit_class(WeightClass::PMinusculeRestricted)?,
        WeightClass::PrMinuscule => {
            check_prime(p)?;
            combine(digit_class(WeightClass::PMinusculeRestricted)?)
        }
        WeightClass::RMinuscule => {
            check_prime(p)?;
            // Minuscule digits must also be restricted (p = 2 excludes none
            // since minuscule coordinates are at most 1).
            let digits = digit_class(WeightClass::Minuscule)?
                .into_iter()
                .filter(|w| w.coords().iter().all(|&c| c < p as i64))
                .collect();
            combine(digits)
        }
    };
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma2Outcome {
    pub holds: bool,
    /// A weight `μ` of `V(λ)` with `pρ + μ` not dominant.
    pub witness: Option<Weight>,
    pub weights_checked: usize,
}

/// Checks that `pρ + μ` is dominant for every weight `μ` of `χ(λ)`.
pub fn lemma2_check(d: &Arc<RootDatum>, lambda: &Weight, p: u64) -> Result<Lemma2Outcome> {
    if !is_p_minuscule(d, lambda, p)? {
        return Err(Error::NotPMinuscule {
            weight: lambda.clone(),
            p,
        });
    }
    let chi = crate::charring::weyl_character::<i64>(d, lambda)?;
    let shift = d.rho().scale(p as i64);
    let witness = chi.terms().keys().find(|mu| !(&shift + mu).is_dominant()).cloned();
    Ok(Lemma2Outcome {
        holds: witness.is_none(),
        witness,
        weights_checked: chi.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_datum, RootSystemSpec, Series};

    fn datum(s: Series, n: usize) -> Arc<RootDatum> {
        build_root_datum(RootSystemSpec::new(s, n)).unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from(c)
    }

    #[test]
    fn primes() {
        for p in [2, 3, 5, 7, 11, 101] {
            assert!(check_prime(p).is_ok());
        }
        for p in [0, 1, 4, 9, 15] {
            assert_eq!(check_prime(p), Err(Error::NotPrime(p)));
        }
    }

    #[test]
    fn restricted_examples() {
        let a1 = datum(Series::A, 1);
        assert!(is_restricted(&a1, &w(&[0]), 5, 3).unwrap());
        assert!(is_restricted(&a1, &w(&[8]), 3, 2).unwrap());
        assert!(!is_restricted(&a1, &w(&[9]), 3, 2).unwrap());
        let a2 = datum(Series::A, 2);
        assert!(is_restricted(&a2, &w(&[1, 1]), 2, 1).unwrap());
        assert_eq!(is_restricted(&a2, &w(&[-1, 1]), 2, 1), Err(Error::NotDominant(w(&[-1, 1]))));
    }

    #[test]
    fn digit_examples() {
        let a1 = datum(Series::A, 1);
        assert_eq!(p_digits(&a1, &w(&[0]), 2, 3).unwrap(), vec![w(&[0]); 3]);
        assert_eq!(p_digits(&a1, &w(&[3]), 2, 2).unwrap(), vec![w(&[1]), w(&[1])]);
        let a2 = datum(Series::A, 2);
        assert_eq!(p_digits(&a2, &w(&[4, 2]), 3, 2).unwrap(), vec![w(&[1, 2]), w(&[1, 0])]);
        assert!(matches!(p_digits(&a1, &w(&[4]), 2, 2), Err(Error::NotRestricted { .. })));
    }

    #[test]
    fn minuscule_examples() {
        for n in 1..=5 {
            let d = datum(Series::A, n);
            assert!(is_minuscule(&d, &d.zero_weight()).unwrap());
            for i in 0..n {
                assert!(is_minuscule(&d, &d.fundamental_weight(i)).unwrap());
            }
        }
        let g2 = datum(Series::G, 2);
        for i in 0..2 {
            assert!(!is_minuscule(&g2, &g2.fundamental_weight(i)).unwrap());
        }
        let a2 = datum(Series::A, 2);
        assert!(!is_minuscule(&a2, &w(&[1, 1])).unwrap());
    }

    #[test]
    fn p_minuscule_examples() {
        let a1 = datum(Series::A, 1);
        assert!(is_p_minuscule(&a1, &w(&[2]), 2).unwrap());
        assert!(!is_p_minuscule(&a1, &w(&[3]), 2).unwrap());
        let a2 = datum(Series::A, 2);
        assert!(is_p_minuscule(&a2, &w(&[1, 1]), 2).unwrap());
        assert!(is_pr_minuscule(&a2, &w(&[1, 1]), 2, 1).unwrap());
        assert!(!is_r_minuscule(&a2, &w(&[1, 1]), 2, 1).unwrap());
        assert!(is_r_minuscule(&a1, &w(&[3]), 2, 2).unwrap());
        assert!(is_r_minuscule(&a1, &w(&[2]), 2, 2).unwrap());
        assert!(is_r_minuscule(&a1, &w(&[0]), 2, 2).unwrap());
        assert!(is_pr_minuscule(&a1, &w(&[0]), 2, 2).unwrap());
    }

    #[test]
    fn classes() {
        let a2 = datum(Series::A, 2);
        assert_eq!(
            enumerate_class(&a2, 2, 1, WeightClass::Minuscule).unwrap(),
            vec![w(&[0, 0]), w(&[0, 1]), w(&[1, 0])]
        );
        let g2 = datum(Series::G, 2);
        assert_eq!(enumerate_class(&g2, 2, 1, WeightClass::Minuscule).unwrap(), vec![w(&[0, 0])]);
        let a1 = datum(Series::A, 1);
        assert_eq!(
            enumerate_class(&a1, 3, 1, WeightClass::PMinusculeRestricted).unwrap(),
            vec![w(&[0]), w(&[1]), w(&[2])]
        );
        assert_eq!(
            enumerate_class(&a1, 2, 1, WeightClass::PMinuscule).unwrap(),
            vec![w(&[0]), w(&[1]), w(&[2])]
        );
        let pr = enumerate_class(&a1, 2, 2, WeightClass::PrMinuscule).unwrap();
        assert_eq!(pr, vec![w(&[0]), w(&[1]), w(&[2]), w(&[3])]);
        for lam in &pr {
            assert!(is_pr_minuscule(&a1, lam, 2, 2).unwrap());
        }
    }

    #[test]
    fn classify_report() {
        let a2 = datum(Series::A, 2);
        let prof = classify(&a2, &w(&[1, 1]), 2, 1).unwrap();
        assert_eq!(prof.digits, Some(vec![w(&[1, 1])]));
        assert!(prof.flags.pr_minuscule && !prof.flags.r_minuscule && !prof.flags.minuscule);
        let json = serde_json::to_string(&prof).unwrap();
        assert!(json.contains(r#""weight":[1,1]"#));
        let prof = classify(&a2, &w(&[2, 0]), 2, 1).unwrap();
        assert_eq!(prof.digits, None);
    }

    #[test]
    fn lemma2_examples() {
        let a1 = datum(Series::A, 1);
        assert!(lemma2_check(&a1, &w(&[0]), 2).unwrap().holds);
        let out = lemma2_check(&a1, &w(&[2]), 2).unwrap();
        assert!(out.holds);
        assert_eq!(out.weights_checked, 3);
        let a2 = datum(Series::A, 2);
        let out = lemma2_check(&a2, &w(&[1, 1]), 2).unwrap();
        assert!(out.holds);
        assert_eq!(out.weights_checked, 7);
        assert!(matches!(lemma2_check(&a1, &w(&[3]), 2), Err(Error::NotPMinuscule { .. })));
    }

    #[test]
    fn orbit_criterion_agrees() {
        for (s, n) in [(Series::A, 3), (Series::B, 3), (Series::C, 3), (Series::G, 2), (Series::B, 2)] {
            let d = datum(s, n);
            for lam in enumerate_class(&d, 2, 2, WeightClass::PrMinuscule).unwrap() {
                if lam.coord_sum() <= 3 {
                    assert_eq!(is_minuscule(&d, &lam).unwrap(), is_minuscule_by_orbit(&d, &lam).unwrap(), "{s}{n} {lam}");
                }
            }
        }
    }
}
