//! Simple characters from the Jantzen sum formula.
//!
//! For dominant `λ` the sum `Σ_{i>0} ch Δ(λ)^i` equals
//! `Σ_{α>0} Σ_{0<mp<⟨λ+ρ,α^v⟩} ν_p(mp) χ(λ − (⟨λ+ρ,α^v⟩ − mp)α)` with each
//! `χ` straightened through the dot action. Every composition factor
//! `L(κ)`, `κ < λ`, of `Δ(λ)` lies in `Δ(λ)^1`, so its coefficient `c_κ` in
//! the sum (expanded in simple characters) satisfies `1 ≤ [Δ(λ):L(κ)] ≤ c_κ`
//! whenever `c_κ > 0`. When every `c_κ ≤ 1` the decomposition is forced;
//! otherwise the admissible multiplicity vectors are filtered by requiring
//! `ch L(λ)` to have non-negative weight multiplicities, and a unique
//! survivor is accepted.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;


use crate::charring::{
    assemble_weyl_chars, dominant_multiplicities, dominant_weights_below, Expansion, FormalCharacter,
};
use crate::error::{Error, Result};
use crate::rootsys::{Action, RootDatum};
use crate::scalar::Coefficient;
use crate::weight::Weight;

/// Upper bound on candidate multiplicity vectors examined for one weight.
const MAX_CANDIDATES: usize = 4096;

fn p_adic_valuation(mut n: i64, p: i64) -> i64 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// The Jantzen sum of `λ` written in the Weyl-character basis.
pub fn jantzen_sum_expansion<C: Coefficient>(d: &RootDatum, lambda: &Weight, p: u64) -> Result<Expansion<C>> {
    d.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    let p = p as i64;
    let shifted = lambda + d.rho();
    let mut out: Expansion<C> = BTreeMap::new();
    for (idx, root) in d.positive_roots().iter().enumerate() {
        let n = d.pairing(&shifted, idx);
        let mut mp = p;
        while mp < n {
            let mu = lambda.add_scaled(&root.weight, -(n - mp));
            let (dom, sign) = d.to_dominant(&mu, Action::Dot);
            if sign != 0 {
                let v = C::from_int(sign as i64 * p_adic_valuation(mp, p));
                let e = out.entry(dom).or_insert_with(C::zero);
                *e = e.clone() + v;
            }
            mp += p;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// `Σ_{i>0} ch Δ(λ)^i`.
pub fn jantzen_sum<C: Coefficient>(d: &Arc<RootDatum>, lambda: &Weight, p: u64) -> Result<FormalCharacter<C>> {
    let exp = jantzen_sum_expansion::<C>(d, lambda, p)?;
    assemble_weyl_chars(d, &exp)
}

/// What the solver learned about one highest weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JsfStatus<C: Coefficient> {
    Solved {
        /// `χ(λ) = Σ_κ d_κ ch L(κ)`, including `d_λ = 1`.
        decomposition: Expansion<C>,
        /// `ch L(λ) = Σ_ν c_ν χ(ν)`.
        in_weyl_basis: Expansion<C>,
    },
    Undetermined(String),
}

/// Incremental solver for one prime. Weights are processed in increasing
/// `⟨λ, 2ρ^v⟩`, so everything below a weight is settled before it.
pub struct JsfSolver<C: Coefficient> {
    datum: Arc<RootDatum>,
    p: u64,
    status: HashMap<Weight, JsfStatus<C>>,
    dominant_cache: HashMap<Weight, Arc<Vec<(Weight, C)>>>,
}

impl<C: Coefficient> JsfSolver<C> {
    pub fn new(datum: &Arc<RootDatum>, p: u64) -> Self {
        JsfSolver {
            datum: datum.clone(),
            p,
            status: HashMap::new(),
            dominant_cache: HashMap::new(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn status(&self, lambda: &Weight) -> Option<&JsfStatus<C>> {
        self.status.get(lambda)
    }

    pub fn statuses(&self) -> impl Iterator<Item = (&Weight, &JsfStatus<C>)> {
        self.status.iter()
    }

    /// Settles every dominant weight `≤ bound`.
    pub fn solve_up_to(&mut self, bound: &Weight) -> Result<()> {
        let mut todo: Vec<(i64, Weight)> = dominant_weights_below(&self.datum, bound)?
            .into_iter()
            .filter(|w| !self.status.contains_key(w))
            .map(|w| (self.datum.height_key(&w), w))
            .collect();
        todo.sort_unstable();
        for (_, lambda) in todo {
            let st = self.solve_one(&lambda)?;
            self.status.insert(lambda, st);
        }
        Ok(())
    }

    /// `ch L(λ)` if the solver determined it.
    pub fn character(&mut self, lambda: &Weight) -> Result<Option<FormalCharacter<C>>> {
        self.solve_up_to(lambda)?;
        match &self.status[lambda] {
            JsfStatus::Solved { in_weyl_basis, .. } => Ok(Some(assemble_weyl_chars(&self.datum, in_weyl_basis)?)),
            JsfStatus::Undetermined(_) => Ok(None),
        }
    }

    fn dominant_of_chi(&mut self, nu: &Weight) -> Result<Arc<Vec<(Weight, C)>>> {
        if let Some(v) = self.dominant_cache.get(nu) {
            return Ok(v.clone());
        }
        let v = Arc::new(dominant_multiplicities::<C>(&self.datum, nu)?);
        self.dominant_cache.insert(nu.clone(), v.clone());
        Ok(v)
    }

    fn solve_one(&mut self, lambda: &Weight) -> Result<JsfStatus<C>> {
        let jsf = jantzen_sum_expansion::<C>(&self.datum, lambda, self.p)?;

        // Rewrite the sum in simple characters.
        let mut in_simples: Expansion<C> = BTreeMap::new();
        for (nu, c) in &jsf {
            let Some(JsfStatus::Solved { decomposition, .. }) = self.status.get(nu) else {
                return Ok(JsfStatus::Undetermined(format!("depends on undetermined L{nu}")));
            };
            for (kappa, dk) in decomposition {
                let e = in_simples.entry(kappa.clone()).or_insert_with(C::zero);
                *e = e.clone() + dk.clone() * c.clone();
            }
        }
        in_simples.retain(|_, c| !c.is_zero());
        if let Some((kappa, c)) = in_simples.iter().find(|(_, c)| c.is_negative()) {
            return Err(Error::InternalMismatch(format!(
                "Jantzen sum of {lambda} at p={} has coefficient {c} on L{kappa}",
                self.p
            )));
        }

        let free: Vec<(Weight, i64)> = in_simples
            .iter()
            .filter(|(_, c)| !c.is_one())
            .map(|(k, c)| (k.clone(), c.to_i64().unwrap_or(i64::MAX)))
            .collect();
        let combos = free
            .iter()
            .try_fold(1usize, |acc, (_, c)| acc.checked_mul(*c as usize))
            .filter(|&n| n <= MAX_CANDIDATES);
        let Some(combos) = combos else {
            return Ok(JsfStatus::Undetermined("too many multiplicity candidates".into()));
        };

        let mut survivors = Vec::new();
        for index in 0..combos {
            let mut mult = in_simples.clone();
            let mut rest = index;
            for (kappa, c) in &free {
                let c = *c as usize;
                mult.insert(kappa.clone(), C::from_int((rest % c) as i64 + 1));
                rest /= c;
            }
            let candidate = self.simple_in_weyl_basis(lambda, &mult);
            if free.is_empty() || self.nonnegative(&candidate)? {
                survivors.push((mult, candidate));
            }
        }
        if survivors.len() != 1 {
            return Ok(JsfStatus::Undetermined(format!(
                "{} admissible decompositions of Δ{lambda}",
                survivors.len()
            )));
        }
        let (mut decomposition, in_weyl_basis) = survivors.pop().unwrap();
        decomposition.insert(lambda.clone(), C::one());
        Ok(JsfStatus::Solved {
            decomposition,
            in_weyl_basis,
        })
    }

    /// `χ(λ) − Σ m_κ ch L(κ)` in the Weyl basis.
    fn simple_in_weyl_basis(&self, lambda: &Weight, mult: &Expansion<C>) -> Expansion<C> {
        let mut out: Expansion<C> = BTreeMap::from([(lambda.clone(), C::one())]);
        for (kappa, m) in mult {
            let Some(JsfStatus::Solved { in_weyl_basis, .. }) = self.status.get(kappa) else {
                unreachable!("factors of a solved sum are solved")
            };
            for (nu, c) in in_weyl_basis {
                let e = out.entry(nu.clone()).or_insert_with(C::zero);
                *e = e.clone() - c.clone() * m.clone();
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn nonnegative(&mut self, in_weyl: &Expansion<C>) -> Result<bool> {
        let mut dominant: BTreeMap<Weight, C> = BTreeMap::new();
        for (nu, c) in in_weyl {
            for (w, m) in self.dominant_of_chi(nu)?.iter() {
                let e = dominant.entry(w.clone()).or_insert_with(C::zero);
                *e = e.clone() + m.clone() * c.clone();
            }
        }
        Ok(dominant.values().all(|c| c.is_nonnegative()))
    }
}

/// Outcome of solving every dominant weight below a bound.
#[derive(Debug, Clone)]
pub struct JsfSolution<C: Coefficient> {
    pub solved: BTreeMap<Weight, FormalCharacter<C>>,
    pub undetermined: BTreeSet<Weight>,
}

pub fn jsf_solve<C: Coefficient>(d: &Arc<RootDatum>, p: u64, bound: &Weight) -> Result<JsfSolution<C>> {
    crate::minuscule::check_prime(p)?;
    let mut solver = JsfSolver::<C>::new(d, p);
    solver.solve_up_to(bound)?;
    let mut solved = BTreeMap::new();
    let mut undetermined = BTreeSet::new();
    for (w, st) in solver.statuses() {
        match st {
            JsfStatus::Solved { in_weyl_basis, .. } => {
                solved.insert(w.clone(), assemble_weyl_chars(d, in_weyl_basis)?);
            }
            JsfStatus::Undetermined(_) => {
                undetermined.insert(w.clone());
            }
        }
    }
    Ok(JsfSolution { solved, undetermined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::weyl_character;
    use crate::rootsys::{build_root_datum, RootSystemSpec, Series};

    fn datum(s: Series, n: usize) -> Arc<RootDatum> {
        build_root_datum(RootSystemSpec::new(s, n)).unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from(c)
    }

    fn chi(d: &Arc<RootDatum>, c: &[i64]) -> FormalCharacter {
        weyl_character(d, &w(c)).unwrap()
    }

    #[test]
    fn valuation() {
        assert_eq!(p_adic_valuation(8, 2), 3);
        assert_eq!(p_adic_valuation(9, 3), 2);
        assert_eq!(p_adic_valuation(10, 3), 0);
    }

    #[test]
    fn jantzen_sum_examples() {
        let a1 = datum(Series::A, 1);
        assert!(jantzen_sum::<i64>(&a1, &w(&[1]), 2).unwrap().is_zero());
        assert!(jantzen_sum::<i64>(&a1, &w(&[3]), 5).unwrap().is_zero());
        assert_eq!(jantzen_sum::<i64>(&a1, &w(&[2]), 2).unwrap(), chi(&a1, &[0]));
        assert_eq!(jantzen_sum::<i64>(&a1, &w(&[3]), 3).unwrap(), chi(&a1, &[1]));
        let a2 = datum(Series::A, 2);
        // Δ(ρ) at p = 3 has the trivial module as its only other factor.
        assert_eq!(jantzen_sum::<i64>(&a2, &w(&[1, 1]), 3).unwrap(), chi(&a2, &[0, 0]));
        // The Steinberg module is simple.
        assert!(jantzen_sum::<i64>(&a2, &w(&[1, 1]), 2).unwrap().is_zero());
    }

    #[test]
    fn solver_examples() {
        let a1 = datum(Series::A, 1);
        let sol = jsf_solve::<i64>(&a1, 2, &w(&[4])).unwrap();
        assert!(sol.undetermined.is_empty());
        let l2 = FormalCharacter::from_terms(&a1, [(w(&[2]), 1), (w(&[-2]), 1)]);
        assert_eq!(sol.solved[&w(&[2])], l2);
        assert_eq!(sol.solved[&w(&[0])], FormalCharacter::one(&a1));
        for p in [3u64, 5, 7] {
            let sol = jsf_solve::<i64>(&a1, p, &w(&[p as i64 - 1])).unwrap();
            for (lam, ch) in sol.solved {
                assert_eq!(ch, weyl_character(&a1, &lam).unwrap());
            }
        }
    }

    #[test]
    fn adjoint_of_sl3_in_characteristic_three() {
        let a2 = datum(Series::A, 2);
        let sol = jsf_solve::<i64>(&a2, 3, &w(&[1, 1])).unwrap();
        let l = &sol.solved[&w(&[1, 1])];
        assert_eq!(l.dimension(), 7);
        assert_eq!(l, &(&chi(&a2, &[1, 1]) - &chi(&a2, &[0, 0])));
        let sol = jsf_solve::<i64>(&a2, 2, &w(&[1, 1])).unwrap();
        assert_eq!(sol.solved[&w(&[1, 1])].dimension(), 8);
    }
}
