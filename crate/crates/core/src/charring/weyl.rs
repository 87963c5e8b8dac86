//! Orbit sums, Weyl characters and the products `s_r`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_rational::Ratio;
use num_bigint::BigInt;

use super::FormalCharacter;
use crate::error::{Error, Result};
use crate::minuscule::p_digits;
use crate::rootsys::{Action, RootDatum};
use crate::scalar::Coefficient;
use crate::weight::Weight;

fn require_dominant(d: &RootDatum, lambda: &Weight) -> Result<()> {
    d.check_weight(lambda)?;
    if lambda.is_dominant() {
        Ok(())
    } else {
        Err(Error::NotDominant(lambda.clone()))
    }
}

/// `s(λ) = Σ_{μ ∈ Wλ} e(μ)`.
pub fn orbit_sum<C: Coefficient>(d: &Arc<RootDatum>, lambda: &Weight) -> Result<FormalCharacter<C>> {
    require_dominant(d, lambda)?;
    let orbit = d.weyl_orbit(lambda)?;
    Ok(FormalCharacter::from_canonical(
        d,
        orbit.into_iter().map(|w| (w, C::one())).collect(),
    ))
}

/// Dominant weights `μ ≤ λ`, highest first. Every such weight is reached
/// from `λ` by subtracting positive roots without leaving the dominant
/// chamber, so a breadth-first walk finds them all.
pub fn dominant_weights_below(d: &RootDatum, lambda: &Weight) -> Result<Vec<Weight>> {
    require_dominant(d, lambda)?;
    let cap = d.caps().terms;
    let mut seen: HashSet<Weight> = HashSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(mu) = queue.pop_front() {
        for root in d.positive_roots() {
            let nu = &mu - &root.weight;
            if nu.is_dominant() && !seen.contains(&nu) {
                if seen.len() >= cap {
                    return Err(Error::ResourceCap(format!(
                        "more than {cap} dominant weights below {lambda}"
                    )));
                }
                seen.insert(nu.clone());
                queue.push_back(nu);
            }
        }
    }
    let mut out: Vec<(i64, Weight)> = seen.into_iter().map(|w| (d.height_key(&w), w)).collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out.into_iter().map(|(_, w)| w).collect())
}

/// Dominant weight multiplicities of `χ(λ)` by Freudenthal's recursion,
/// highest weight first.
///
/// With `θ = λ − μ` the recursion reads
/// `(θ, λ+μ+2ρ) m(μ) = 2 Σ_{α>0} Σ_{k≥1} (μ+kα, α) m(μ+kα)`,
/// and every pairing is integral for the normalised form.
pub fn dominant_multiplicities<C: Coefficient>(d: &RootDatum, lambda: &Weight) -> Result<Vec<(Weight, C)>> {
    require_dominant(d, lambda)?;
    let order = dominant_weights_below(d, lambda)?;
    let two_rho = d.rho().scale(2);
    let mut mult: HashMap<Weight, C> = HashMap::with_capacity(order.len());
    let mut out = Vec::with_capacity(order.len());
    for mu in order {
        let m = if &mu == lambda {
            C::one()
        } else {
            let theta = d
                .root_coords(&(lambda - &mu))
                .expect("dominant weights below λ lie in its root-lattice coset");
            let denom = d.root_form(&theta, &(&(lambda + &mu) + &two_rho));
            let mut sum = C::zero();
            for root in d.positive_roots() {
                let mut nu = &mu + &root.weight;
                loop {
                    let (dom, _) = d.to_dominant(&nu, Action::Linear);
                    // Weight strings are unbroken, so the first miss ends it.
                    let Some(m_nu) = mult.get(&dom) else { break };
                    sum = sum + m_nu.clone() * C::from_int(d.root_form(&root.root, &nu));
                    nu = &nu + &root.weight;
                }
            }
            let num = sum * C::from_int(2);
            let den = C::from_int(denom);
            if !(num.clone() % den.clone()).is_zero() {
                return Err(Error::InternalMismatch(format!(
                    "Freudenthal recursion not integral at {mu} in χ({lambda})"
                )));
            }
            num / den
        };
        mult.insert(mu.clone(), m.clone());
        out.push((mu, m));
    }
    Ok(out)
}

/// `χ(λ)`, the character of the Weyl module of highest weight `λ`.
pub fn weyl_character<C: Coefficient>(d: &Arc<RootDatum>, lambda: &Weight) -> Result<FormalCharacter<C>> {
    let dom = dominant_multiplicities::<C>(d, lambda)?;
    let cap = d.caps().terms;
    let mut terms = std::collections::BTreeMap::new();
    for (mu, m) in dom {
        for w in d.weyl_orbit(&mu)? {
            terms.insert(w, m.clone());
        }
        if terms.len() > cap {
            return Err(Error::ResourceCap(format!("χ({lambda}) has more than {cap} terms")));
        }
    }
    Ok(FormalCharacter::from_canonical(d, terms))
}

/// `χ(μ)` for arbitrary `μ`, straightened through the dot action:
/// `det(w)·χ(w·μ)` with `w·μ` dominant, or 0 when `μ+ρ` is singular.
pub fn weyl_character_straightened<C: Coefficient>(
    d: &Arc<RootDatum>,
    mu: &Weight,
) -> Result<FormalCharacter<C>> {
    d.check_weight(mu)?;
    match d.to_dominant(mu, Action::Dot) {
        (_, 0) => Ok(FormalCharacter::zero(d)),
        (lambda, 1) => weyl_character(d, &lambda),
        (lambda, _) => Ok(-&weyl_character::<C>(d, &lambda)?),
    }
}

/// `s_r(λ) = Π_j s(p^j λ^j)` over the base-`p` digits of a restricted `λ`.
pub fn s_r_character<C: Coefficient>(
    d: &Arc<RootDatum>,
    p: u64,
    r: u32,
    lambda: &Weight,
) -> Result<FormalCharacter<C>> {
    let digits = p_digits(d, lambda, p, r)?;
    let mut acc = FormalCharacter::one(d);
    for (j, digit) in digits.iter().enumerate() {
        if digit.is_zero() {
            continue;
        }
        let factor = orbit_sum::<C>(d, digit)?.frobenius_twist(p, j as u32);
        acc = acc.checked_mul(&factor)?;
    }
    Ok(acc)
}

/// Weyl's dimension formula `Π_{α>0} ⟨λ+ρ, α^v⟩ / ⟨ρ, α^v⟩`, evaluated in
/// exact rational arithmetic.
pub fn weyl_dimension(d: &RootDatum, lambda: &Weight) -> BigInt {
    let shifted = lambda + d.rho();
    let mut acc = Ratio::from_integer(BigInt::from(1));
    for idx in 0..d.positive_roots().len() {
        acc *= Ratio::new(BigInt::from(d.pairing(&shifted, idx)), BigInt::from(d.pairing(d.rho(), idx)));
    }
    assert!(acc.is_integer());
    acc.to_integer()
}
