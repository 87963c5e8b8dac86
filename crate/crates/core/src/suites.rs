//! Verification sweeps over a root system, prime and depth.
//!
//! Each suite enumerates its cases, runs them on the rayon pool, and
//! reports them in enumeration order, so reports do not depend on the
//! number of threads. Cases whose inputs cannot be resolved are reported
//! as coverage gaps, not failures.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charring::{divide_exact, weyl_character, weyl_dimension, FormalCharacter};
use crate::error::{Error, Result};
use crate::minuscule::{check_prime, enumerate_class, is_r_minuscule, lemma2_check, WeightClass};
use crate::rootsys::RootDatum;
use crate::simplechar::{SimpleCharProvider, SimpleCharResolver};
use crate::tilting::{
    decompose_st_tensor, decompose_str_tensor, good_filtration_consistent, steinberg_character, tilting_char_p,
    tilting_char_pr, verify_lemma1a, verify_lemma1b_character, verify_prop2_corollary, verify_remark, CheckMode,
    TiltingCharProvider,
};
use crate::weight::Weight;

/// Largest Weyl group the alternating-sum oracle is run on.
const ORACLE_MAX_W: u128 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Remark,
    Lemma1a,
    Lemma1b,
    Lemma2,
    Prop1,
    Prop2,
    Thm1,
    Thm2,
    Oracles,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Remark,
        Suite::Lemma1a,
        Suite::Lemma1b,
        Suite::Lemma2,
        Suite::Prop1,
        Suite::Prop2,
        Suite::Thm1,
        Suite::Thm2,
        Suite::Oracles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Remark => "remark",
            Suite::Lemma1a => "lemma1a",
            Suite::Lemma1b => "lemma1b",
            Suite::Lemma2 => "lemma2",
            Suite::Prop1 => "prop1",
            Suite::Prop2 => "prop2",
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Oracles => "oracles",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Format(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub case: String,
    pub status: CaseStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    #[serde(rename = "type")]
    pub series: String,
    pub rank: usize,
    pub p: u64,
    pub r: u32,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<CaseOutcome>,
    /// Cases skipped because an input character could not be resolved.
    pub undetermined: Vec<CaseOutcome>,
    /// Checks whose right-hand side was produced by the identity itself.
    pub definitional: usize,
    /// Human-readable results, e.g. `St⊗∇(2) ≅ T(3)⊕T(1)`.
    pub golden: Vec<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// One case's verdict plus optional golden lines.
struct Verdict {
    status: CaseStatus,
    detail: Option<String>,
    golden: Vec<String>,
    definitional: usize,
}

impl Verdict {
    fn pass() -> Self {
        Verdict {
            status: CaseStatus::Pass,
            detail: None,
            golden: Vec::new(),
            definitional: 0,
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Verdict {
            status: CaseStatus::Fail,
            detail: Some(detail.into()),
            ..Verdict::pass()
        }
    }

    fn undetermined(detail: impl Into<String>) -> Self {
        Verdict {
            status: CaseStatus::Undetermined,
            detail: Some(detail.into()),
            ..Verdict::pass()
        }
    }

    fn check(ok: bool, what: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::pass()
        } else {
            Verdict::fail(what())
        }
    }
}

/// Errors that mean "input not available" rather than "identity refuted".
fn is_gap(e: &Error) -> bool {
    matches!(
        e,
        Error::Undetermined { .. } | Error::ProviderUndetermined(_) | Error::ResourceCap(_) | Error::OrbitTooLarge { .. }
    )
}

fn from_error(e: Error) -> Verdict {
    if is_gap(&e) {
        Verdict::undetermined(e.to_string())
    } else {
        Verdict::fail(e.to_string())
    }
}

/// `St`, `St₂`, `St₃`, … as printed in golden lines.
pub fn steinberg_label(r: u32) -> String {
    if r == 1 {
        return "St".into();
    }
    let digits: String = r
        .to_string()
        .chars()
        .map(|c| char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap())
        .collect();
    format!("St{digits}")
}

type Case = (String, Box<dyn Fn() -> Result<Verdict> + Send + Sync>);

fn run_cases(cases: Vec<Case>) -> Vec<(String, Verdict)> {
    cases
        .into_par_iter()
        .map(|(name, f)| {
            let v = f().unwrap_or_else(from_error);
            (name, v)
        })
        .collect()
}

/// Dominant weights with coordinate sum at most `bound`, lexicographically.
pub fn dominant_weights_with_sum(rank: usize, bound: i64) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                let used: i64 = v.iter().sum();
                (0..=bound - used).map(move |c| {
                    let mut v = v.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    let mut ws: Vec<Weight> = out.into_iter().map(Weight::new).collect();
    ws.sort();
    ws
}

/// `Σ_w det(w) e(w(λ+ρ)) / Σ_w det(w) e(wρ)`, with the orbit of a regular
/// weight enumerated by reflections and `det(w)` read off from the number
/// of positive roots made negative.
pub fn alternating_sum_character(d: &Arc<RootDatum>, lambda: &Weight) -> Result<FormalCharacter<i64>> {
    let alt = |x: &Weight| -> Result<FormalCharacter<i64>> {
        let orbit = d.weyl_orbit(x)?;
        let terms = orbit.into_iter().map(|y| {
            let neg = (0..d.positive_roots().len()).filter(|&i| d.pairing(&y, i) < 0).count();
            (y, if neg % 2 == 0 { 1 } else { -1 })
        });
        Ok(FormalCharacter::from_terms(d, terms))
    };
    let num = alt(&(lambda + d.rho()))?;
    let den = alt(d.rho())?;
    divide_exact(&num, &den)
}

fn oracle_bound(rank: usize) -> i64 {
    match rank {
        1 => 10,
        2 => 5,
        3 => 3,
        _ => 2,
    }
}

/// Runs one suite on `(d, p, r)`; `r` is the largest depth swept.
pub fn run_suite(d: &Arc<RootDatum>, suite: Suite, p: u64, r: u32) -> Result<SuiteReport> {
    check_prime(p)?;
    if r == 0 {
        return Err(Error::HypothesisViolated("r must be at least 1".into()));
    }
    let n = d.rank();
    let mut cases: Vec<Case> = Vec::new();
    let depths = 1..=r;

    match suite {
        Suite::Remark => {
            for lam in enumerate_class(d, p, 1, WeightClass::Minuscule)? {
                if lam.is_zero() {
                    continue;
                }
                let d = d.clone();
                cases.push((
                    format!("λ={lam}"),
                    Box::new(move || {
                        if !verify_remark::<i64>(&d, p, &lam)? {
                            return Ok(Verdict::fail("St·ch L(λ) ≠ ch T((p−1)ρ+λ)"));
                        }
                        let t = tilting_char_p::<i64>(&d, p, &lam)?;
                        if !good_filtration_consistent(&t)?.consistent {
                            return Ok(Verdict::fail("negative Weyl-character coefficient"));
                        }
                        let dec = decompose_st_tensor(&d, p, &lam, &crate::charring::orbit_sum::<i64>(&d, &lam)?)?;
                        Ok(Verdict::check(dec.summands == vec![(lam.clone(), 1)], || {
                            format!("St⊗L{lam} ≅ {dec}")
                        }))
                    }),
                ));
            }
        }
        Suite::Lemma1b => {
            for lam in enumerate_class(d, p, 1, WeightClass::Minuscule)? {
                let d = d.clone();
                cases.push((
                    format!("λ={lam}"),
                    Box::new(move || {
                        let rep = verify_lemma1b_character::<i64>(&d, p, &lam)?;
                        Ok(Verdict::check(rep.holds(), || format!("quotient {}", rep.psi)))
                    }),
                ));
            }
        }
        Suite::Lemma2 => {
            for lam in enumerate_class(d, p, 1, WeightClass::PMinuscule)? {
                let d = d.clone();
                cases.push((
                    format!("λ={lam}"),
                    Box::new(move || {
                        let out = lemma2_check(&d, &lam, p)?;
                        Ok(Verdict::check(out.holds, || {
                            format!("pρ+{} is not dominant", out.witness.clone().unwrap())
                        }))
                    }),
                ));
            }
        }
        Suite::Thm1 => {
            let resolver = Arc::new(SimpleCharResolver::<i64>::new(d));
            for lam in enumerate_class(d, p, 1, WeightClass::PMinuscule)? {
                let d = d.clone();
                let resolver = resolver.clone();
                cases.push((format!("λ={lam}"), Box::new(move || thm1_case(&d, p, &lam, &*resolver))));
            }
        }
        Suite::Prop1 => {
            for rr in depths {
                for lam in enumerate_class(d, p, rr, WeightClass::PrMinuscule)? {
                    let d = d.clone();
                    cases.push((
                        format!("r={rr} λ={lam}"),
                        Box::new(move || {
                            let t = tilting_char_pr::<i64>(&d, p, rr, &lam)?;
                            let top = crate::tilting::steinberg_weight(&d, p, rr)?.add_scaled(&lam, 1);
                            if t.coefficient(&top) != 1 || !t.is_w_invariant() {
                                return Ok(Verdict::fail("malformed tilting character"));
                            }
                            Ok(Verdict::check(good_filtration_consistent(&t)?.consistent, || {
                                "negative Weyl-character coefficient".into()
                            }))
                        }),
                    ));
                }
            }
        }
        Suite::Thm2 => {
            let resolver = Arc::new(SimpleCharResolver::<i64>::new(d));
            for rr in depths {
                for lam in enumerate_class(d, p, rr, WeightClass::PrMinuscule)? {
                    let d = d.clone();
                    let resolver = resolver.clone();
                    cases.push((
                        format!("r={rr} λ={lam}"),
                        Box::new(move || thm2_case(&d, p, rr, &lam, &*resolver)),
                    ));
                }
            }
        }
        Suite::Lemma1a => {
            let provider = Arc::new(TiltingCharProvider::<i64>::new(d, p)?);
            for rr in depths {
                for mu in dominant_weights_with_sum(n, 2) {
                    let d = d.clone();
                    let provider = provider.clone();
                    cases.push((
                        format!("r={rr} μ={mu}"),
                        Box::new(move || {
                            let c = verify_lemma1a(&d, p, rr, &mu, &provider)?;
                            let mut v = Verdict::check(c.holds, || "St_r·ch T(μ)^[r] ≠ ch T((p^r−1)ρ+p^rμ)".into());
                            v.definitional = usize::from(c.mode == CheckMode::Definitional);
                            Ok(v)
                        }),
                    ));
                }
            }
        }
        Suite::Prop2 => {
            let provider = Arc::new(TiltingCharProvider::<i64>::new(d, p)?);
            let resolver = Arc::new(SimpleCharResolver::<i64>::new(d));
            for rr in depths {
                for lam in enumerate_class(d, p, rr, WeightClass::RMinuscule)? {
                    for mu in dominant_weights_with_sum(n, 1) {
                        let d = d.clone();
                        let provider = provider.clone();
                        let resolver = resolver.clone();
                        let lam = lam.clone();
                        cases.push((
                            format!("r={rr} λ={lam} μ={mu}"),
                            Box::new(move || {
                                let rep = verify_prop2_corollary(&d, p, rr, &lam, &mu, &provider, &*resolver)?;
                                let failed: Vec<&str> =
                                    rep.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
                                let mut v = Verdict::check(failed.is_empty(), || format!("failed: {}", failed.join(", ")));
                                v.definitional = rep.checks.iter().filter(|c| c.mode == CheckMode::Definitional).count();
                                Ok(v)
                            }),
                        ));
                    }
                }
            }
        }
        Suite::Oracles => {
            let w_order = d.weyl_group_order();
            for lam in dominant_weights_with_sum(n, oracle_bound(n)) {
                let d = d.clone();
                cases.push((
                    format!("λ={lam}"),
                    Box::new(move || {
                        let chi = weyl_character::<i64>(&d, &lam)?;
                        if num_bigint::BigInt::from(chi.dimension()) != weyl_dimension(&d, &lam) {
                            return Ok(Verdict::fail("dimension differs from the product formula"));
                        }
                        if w_order > ORACLE_MAX_W {
                            return Ok(Verdict::undetermined(format!("alternating sum skipped: |W| = {w_order}")));
                        }
                        Ok(Verdict::check(alternating_sum_character(&d, &lam)? == chi, || {
                            "Freudenthal differs from the alternating sum".into()
                        }))
                    }),
                ));
            }
            for rr in depths {
                let d = d.clone();
                cases.push((
                    format!("steinberg r={rr}"),
                    Box::new(move || {
                        let st = steinberg_character::<i64>(&d, p, rr)?;
                        let expected = num_bigint::BigInt::from(p).pow(rr * d.positive_roots().len() as u32);
                        Ok(Verdict::check(num_bigint::BigInt::from(st.dimension()) == expected, || {
                            format!("dimension {} ≠ {expected}", st.dimension())
                        }))
                    }),
                ));
            }
        }
    }

    let results = run_cases(cases);
    let spec = d.spec();
    let mut report = SuiteReport {
        suite,
        series: spec.series.to_string(),
        rank: spec.rank,
        p,
        r,
        cases: results.len(),
        passed: 0,
        failures: Vec::new(),
        undetermined: Vec::new(),
        definitional: 0,
        golden: Vec::new(),
    };
    for (case, v) in results {
        report.golden.extend(v.golden);
        report.definitional += v.definitional;
        let outcome = CaseOutcome {
            case,
            status: v.status,
            detail: v.detail,
        };
        match v.status {
            CaseStatus::Pass => report.passed += 1,
            CaseStatus::Fail => report.failures.push(outcome),
            CaseStatus::Undetermined => report.undetermined.push(outcome),
        }
    }
    Ok(report)
}

fn thm1_case(d: &Arc<RootDatum>, p: u64, lam: &Weight, resolver: &SimpleCharResolver<i64>) -> Result<Verdict> {
    let nabla = weyl_character::<i64>(d, lam)?;
    // Δ(λ) = ∇(−w₀λ)*.
    let delta = weyl_character::<i64>(d, &d.minus_w0(lam))?.dual();
    let dn = decompose_st_tensor(d, p, lam, &nabla)?;
    let dd = decompose_st_tensor(d, p, lam, &delta)?;
    if dn != dd {
        return Ok(Verdict::fail(format!("St⊗∇ gives {dn}, St⊗Δ gives {dd}")));
    }
    let st = steinberg_character::<i64>(d, p, 1)?;
    if !good_filtration_consistent(&st.checked_mul(&nabla)?)?.consistent {
        return Ok(Verdict::fail("St⊗∇(λ) has a negative Weyl-character coefficient"));
    }
    let mut v = Verdict::pass();
    v.golden.push(format!("St⊗∇{lam} ≅ {dn}"));
    match resolver.simple_character(lam, p) {
        Ok(l) => {
            let dl = decompose_st_tensor(d, p, lam, &l)?;
            v.golden.push(format!("St⊗L{lam} ≅ {dl}"));
        }
        Err(e) if is_gap(&e) => {}
        Err(e) => return Err(e),
    }
    Ok(v)
}

fn thm2_case(d: &Arc<RootDatum>, p: u64, r: u32, lam: &Weight, resolver: &SimpleCharResolver<i64>) -> Result<Verdict> {
    let dec = match decompose_str_tensor(d, p, r, lam, resolver) {
        Ok(dec) => dec,
        Err(e @ Error::Undetermined { .. }) if !is_r_minuscule(d, lam, p, r)? => return Ok(Verdict::undetermined(e.to_string())),
        Err(e @ Error::Undetermined { .. }) => {
            return Ok(Verdict::fail(format!("r-minuscule weight not resolved: {e}")))
        }
        Err(e) => return Err(e),
    };
    let l = resolver.simple_character(lam, p)?;
    let st = steinberg_character::<i64>(d, p, r)?;
    if !good_filtration_consistent(&st.checked_mul(&l)?)?.consistent {
        return Ok(Verdict::fail("St_r⊗L(λ) has a negative Weyl-character coefficient"));
    }
    let mut v = Verdict::pass();
    v.golden.push(format!("{}⊗L{lam} ≅ {dec}", steinberg_label(r)));
    Ok(v)
}

/// Runs several suites and returns their reports in the given order.
pub fn run_suites(d: &Arc<RootDatum>, suites: &[Suite], p: u64, r: u32) -> Result<Vec<SuiteReport>> {
    suites.iter().map(|&s| run_suite(d, s, p, r)).collect()
}

/// Totals across reports, keyed by suite name.
pub fn summarize(reports: &[SuiteReport]) -> BTreeMap<String, (usize, usize, usize)> {
    let mut out = BTreeMap::new();
    for rep in reports {
        let e = out.entry(rep.suite.name().to_string()).or_insert((0, 0, 0));
        e.0 += rep.passed;
        e.1 += rep.failures.len();
        e.2 += rep.undetermined.len();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_datum, RootSystemSpec, Series};

    fn datum(s: Series, n: usize) -> Arc<RootDatum> {
        build_root_datum(RootSystemSpec::new(s, n)).unwrap()
    }

    #[test]
    fn weights_with_sum() {
        assert_eq!(dominant_weights_with_sum(2, 1).len(), 3);
        assert_eq!(dominant_weights_with_sum(3, 2).len(), 10);
        assert_eq!(dominant_weights_with_sum(1, 10).len(), 11);
    }

    #[test]
    fn alternating_sum_matches_small_cases() {
        let b2 = datum(Series::B, 2);
        for lam in dominant_weights_with_sum(2, 3) {
            assert_eq!(alternating_sum_character(&b2, &lam).unwrap(), weyl_character(&b2, &lam).unwrap());
        }
    }

    #[test]
    fn every_suite_passes_on_a1() {
        let a1 = datum(Series::A, 1);
        for p in [2, 3] {
            for rep in run_suites(&a1, &Suite::ALL, p, 2).unwrap() {
                assert!(rep.ok(), "{rep:?}");
                assert!(rep.cases > 0, "{}", rep.suite);
            }
        }
    }

    #[test]
    fn golden_lines() {
        let a1 = datum(Series::A, 1);
        let rep = run_suite(&a1, Suite::Thm1, 2, 1).unwrap();
        assert!(rep.golden.contains(&"St⊗∇(2) ≅ T(3)⊕T(1)".to_string()), "{:?}", rep.golden);
        let rep = run_suite(&a1, Suite::Thm2, 2, 2).unwrap();
        assert!(rep.golden.contains(&"St₂⊗L(3) ≅ T(6)".to_string()), "{:?}", rep.golden);
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("all".parse::<Suite>().is_err());
    }
}
