use std::collections::BTreeMap;

use super::FormalCharacter;
use crate::error::{Error, Result};
use crate::scalar::Coefficient;
use crate::weight::Weight;

/// Per-coordinate extremes of the support.
fn coordinate_box<C>(phi: &FormalCharacter<C>) -> (Vec<i64>, Vec<i64>)
where
    C: Coefficient,
{
    let n = phi.datum().rank();
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for w in phi.terms().keys() {
        for i in 0..n {
            lo[i] = lo[i].min(w[i]);
            hi[i] = hi[i].max(w[i]);
        }
    }
    (lo, hi)
}

/// Exact quotient `ψ` with `φ = δ·ψ`, by long division against the
/// lexicographically largest term of `δ`.
///
/// Coordinate-wise extremes add under multiplication, so any quotient lies
/// in the box `[min φ − min δ, max φ − max δ]`; a candidate term outside it
/// proves there is no exact quotient and also bounds the division.
pub fn divide_exact<C: Coefficient>(phi: &FormalCharacter<C>, delta: &FormalCharacter<C>) -> Result<FormalCharacter<C>> {
    phi.check_same(delta)?;
    if delta.is_zero() {
        return Err(Error::NotDivisible);
    }
    if phi.is_zero() {
        return Ok(FormalCharacter::zero(phi.datum()));
    }
    let (plo, phi_hi) = coordinate_box(phi);
    let (dlo, dhi) = coordinate_box(delta);
    let lo: Vec<i64> = plo.iter().zip(&dlo).map(|(a, b)| a - b).collect();
    let hi: Vec<i64> = phi_hi.iter().zip(&dhi).map(|(a, b)| a - b).collect();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return Err(Error::NotDivisible);
    }
    let (lead_w, lead_c) = delta.terms().iter().next_back().map(|(w, c)| (w.clone(), c.clone())).unwrap();

    let mut rem: BTreeMap<Weight, C> = phi.terms().clone();
    let mut quotient: BTreeMap<Weight, C> = BTreeMap::new();
    while let Some((top, c)) = rem.iter().next_back().map(|(w, c)| (w.clone(), c.clone())) {
        let q = &top - &lead_w;
        let inside = q.coords().iter().enumerate().all(|(i, &x)| lo[i] <= x && x <= hi[i]);
        if !inside || !(c.clone() % lead_c.clone()).is_zero() {
            return Err(Error::NotDivisible);
        }
        let qc = c / lead_c.clone();
        for (u, cu) in delta.terms() {
            let key = &q + u;
            let sub = qc.clone() * cu.clone();
            let v = rem.entry(key.clone()).or_insert_with(C::zero);
            *v = v.clone() - sub;
            if v.is_zero() {
                rem.remove(&key);
            }
        }
        quotient.insert(q, qc);
    }
    Ok(FormalCharacter::from_canonical(phi.datum(), quotient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::weyl_character;
    use crate::rootsys::{build_root_datum, RootSystemSpec, Series};

    #[test]
    fn examples() {
        let d = build_root_datum(RootSystemSpec::new(Series::A, 1)).unwrap();
        let f = |t: &[(i64, i64)]| FormalCharacter::from_terms(&d, t.iter().map(|&(w, c)| (Weight::from([w]), c)));
        let delta = f(&[(1, 1), (-1, 1)]);
        assert_eq!(divide_exact(&delta, &delta).unwrap(), FormalCharacter::one(&d));
        assert_eq!(divide_exact(&f(&[(2, 1), (0, 2), (-2, 1)]), &delta).unwrap(), delta);
        assert_eq!(divide_exact(&f(&[(1, 1), (0, 1)]), &delta), Err(Error::NotDivisible));
        assert_eq!(divide_exact(&f(&[(3, 2), (1, 2)]), &f(&[(1, 2)])).unwrap(), f(&[(2, 1), (0, 1)]));
        assert_eq!(divide_exact(&f(&[(3, 3)]), &f(&[(1, 2)])), Err(Error::NotDivisible));
        assert_eq!(divide_exact(&delta, &FormalCharacter::zero(&d)), Err(Error::NotDivisible));
    }

    #[test]
    fn recovers_factors_in_rank_two() {
        let d = build_root_datum(RootSystemSpec::new(Series::G, 2)).unwrap();
        let a: FormalCharacter = weyl_character(&d, &Weight::from([1, 1])).unwrap();
        let b: FormalCharacter = weyl_character(&d, &Weight::from([2, 0])).unwrap();
        let prod = &a * &b;
        assert_eq!(divide_exact(&prod, &a).unwrap(), b);
        let off = &prod + &FormalCharacter::one(&d);
        assert_eq!(divide_exact(&off, &a), Err(Error::NotDivisible));
    }
}
