//! Root data for the simple types A–G.
//!
//! Conventions: `cartan[i][j] = ⟨α_i, α_j^v⟩`, so row `i` of the Cartan
//! matrix is the simple root `α_i` written in the fundamental-weight basis.
//! Simple roots are numbered as in Bourbaki. The invariant form is scaled so
//! that short roots have squared length 2; `symmetrizer[i] = (α_i, α_i)/2`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Series::A,
            "B" => Series::B,
            "C" => Series::C,
            "D" => Series::D,
            "E" => Series::E,
            "F" => Series::F,
            "G" => Series::G,
            other => return Err(Error::InvalidSpec(format!("unknown series {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemSpec {
    pub series: Series,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(series: Series, rank: usize) -> Self {
        RootSystemSpec { series, rank }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self.series {
            Series::A => self.rank >= 1,
            Series::B | Series::C => self.rank >= 2,
            Series::D => self.rank >= 4,
            Series::E => (6..=8).contains(&self.rank),
            Series::F => self.rank == 4,
            Series::G => self.rank == 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!("{self} is not a valid simple type")))
        }
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

/// Bounds on intermediate sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Caps {
    /// Maximum size of an enumerated Weyl orbit.
    pub orbit: usize,
    /// Maximum number of dominant weights below a highest weight, and the
    /// maximum number of terms in a single character.
    pub terms: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            orbit: 10_000_000,
            terms: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    /// Coefficients in the simple-root basis.
    pub root: Vec<i64>,
    /// Coefficients of the coroot in the simple-coroot basis.
    pub coroot: Vec<i64>,
    /// The root as a weight (fundamental-weight coordinates).
    pub weight: Weight,
    pub height: i64,
    /// `(α, α)/2`; 1 for short roots.
    pub half_norm: i64,
}

/// Whether to act linearly or by the dot action `w·μ = w(μ+ρ)−ρ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Linear,
    Dot,
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    spec: RootSystemSpec,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    positive_roots: Vec<PositiveRoot>,
    rho: Weight,
    highest_root: usize,
    highest_short_root: usize,
    coxeter_number: i64,
    w0_perm: Vec<usize>,
    // det(C) * (C^T)^{-1}, used to convert weights to root coordinates.
    inv_transpose_scaled: Vec<Vec<i64>>,
    det: i64,
    caps: Caps,
}

pub fn build_root_datum(spec: RootSystemSpec) -> Result<Arc<RootDatum>> {
    RootDatum::new(spec).map(Arc::new)
}

fn cartan_matrix(spec: RootSystemSpec) -> Vec<Vec<i64>> {
    let n = spec.rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    match spec.series {
        Series::A => {
            for i in 1..n {
                link(i - 1, i, -1, -1);
            }
        }
        Series::B => {
            for i in 1..n - 1 {
                link(i - 1, i, -1, -1);
            }
            link(n - 2, n - 1, -2, -1);
        }
        Series::C => {
            for i in 1..n - 1 {
                link(i - 1, i, -1, -1);
            }
            link(n - 2, n - 1, -1, -2);
        }
        Series::D => {
            for i in 1..n - 1 {
                link(i - 1, i, -1, -1);
            }
            link(n - 3, n - 1, -1, -1);
        }
        Series::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for i in 3..n {
                link(i - 1, i, -1, -1);
            }
        }
        Series::F => {
            link(0, 1, -1, -1);
            link(1, 2, -2, -1);
            link(2, 3, -1, -1);
        }
        Series::G => {
            link(0, 1, -1, -3);
        }
    }
    c
}

/// Solves `C[i][j] d_j = C[j][i] d_i` along the (connected) Dynkin diagram,
/// normalised so the smallest entry is 1.
fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<i64> {
    let n = cartan.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    d[0] = Some(Ratio::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let di = d[i].unwrap();
        for j in 0..n {
            if i != j && cartan[i][j] != 0 && d[j].is_none() {
                d[j] = Some(di * Ratio::new(cartan[j][i], cartan[i][j]));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Ratio<i64>> = d.into_iter().map(|x| x.expect("diagram connected")).collect();
    let min = *d.iter().min().unwrap();
    d.iter()
        .map(|x| {
            let r = x / min;
            assert!(r.is_integer());
            r.to_integer()
        })
        .collect()
}

/// `(det M, det M · M^{-1})` by Gauss–Jordan over the rationals.
fn scaled_inverse(m: &[Vec<i64>]) -> (i64, Vec<Vec<i64>>) {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
            r
        })
        .collect();
    let mut det = Ratio::<i64>::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("Cartan matrix is invertible");
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let pv = a[col][col];
        det *= pv;
        for x in a[col].iter_mut() {
            *x /= pv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for k in 0..2 * n {
                    let sub = f * a[col][k];
                    a[r][k] -= sub;
                }
            }
        }
    }
    assert!(det.is_integer());
    let det = det.to_integer();
    let inv = a
        .iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| {
                    let s = *x * Ratio::from_integer(det);
                    assert!(s.is_integer());
                    s.to_integer()
                })
                .collect()
        })
        .collect();
    (det, inv)
}

impl RootDatum {
    pub fn new(spec: RootSystemSpec) -> Result<RootDatum> {
        spec.validate()?;
        let n = spec.rank;
        let cartan = cartan_matrix(spec);
        let symmetrizer = symmetrizer(&cartan);

        // Height-graded closure under root strings.
        let pair = |c: &[i64], i: usize| -> i64 { (0..n).map(|j| c[j] * cartan[j][i]).sum() };
        let mut known: HashSet<Vec<i64>> = HashSet::new();
        let mut layers: Vec<Vec<Vec<i64>>> = Vec::new();
        let simple: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        known.extend(simple.iter().cloned());
        layers.push(simple);
        loop {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in layers.last().unwrap() {
                for i in 0..n {
                    // q = how far down the α_i-string through β goes.
                    let mut q = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            q += 1;
                        } else {
                            break;
                        }
                    }
                    let up_len = q - pair(beta, i);
                    if up_len > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            known.extend(next.iter().cloned());
            layers.push(next);
        }

        let mut positive_roots: Vec<PositiveRoot> = layers
            .into_iter()
            .flatten()
            .map(|c| {
                let norm2: i64 = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| c[i] * c[j] * cartan[i][j] * symmetrizer[j])
                    .sum();
                let half_norm = norm2 / 2;
                let coroot = (0..n)
                    .map(|i| {
                        let v = c[i] * symmetrizer[i];
                        debug_assert_eq!(v % half_norm, 0);
                        v / half_norm
                    })
                    .collect();
                let weight = Weight::new((0..n).map(|j| pair(&c, j)));
                PositiveRoot {
                    height: c.iter().sum(),
                    root: c,
                    coroot,
                    weight,
                    half_norm,
                }
            })
            .collect();
        positive_roots.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| a.root.cmp(&b.root)));

        let highest_root = positive_roots
            .iter()
            .enumerate()
            .max_by_key(|(_, r)| r.height)
            .map(|(i, _)| i)
            .unwrap();
        let highest_short_root = positive_roots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.half_norm == 1)
            .max_by_key(|(_, r)| r.height)
            .map(|(i, _)| i)
            .unwrap();
        let coxeter_number = positive_roots[highest_root].height + 1;
        let (det, inv_transpose_scaled) = {
            let transpose: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| cartan[j][i]).collect()).collect();
            scaled_inverse(&transpose)
        };

        let mut datum = RootDatum {
            spec,
            cartan,
            symmetrizer,
            positive_roots,
            rho: Weight::constant(n, 1),
            highest_root,
            highest_short_root,
            coxeter_number,
            w0_perm: Vec::new(),
            inv_transpose_scaled,
            det,
            caps: Caps::default(),
        };
        datum.w0_perm = (0..n)
            .map(|i| {
                let mut fw = Weight::zero(n);
                fw.coords_mut()[i] = -1;
                let (dom, _) = datum.dominant_linear(&fw);
                dom.coords().iter().position(|&c| c == 1).expect("fundamental weight")
            })
            .collect();
        Ok(datum)
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn spec(&self) -> RootSystemSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn highest_root(&self) -> usize {
        self.highest_root
    }

    /// Index of β₀, the highest short root.
    pub fn highest_short_root(&self) -> usize {
        self.highest_short_root
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    /// σ with `−w₀(ϖ_i) = ϖ_σ(i)`.
    pub fn w0_perm(&self) -> &[usize] {
        &self.w0_perm
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.rank())
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::from(self.cartan[i].as_slice())
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = self.zero_weight();
        w.coords_mut()[i] = 1;
        w
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                rank: self.rank(),
                got: w.rank(),
            })
        }
    }

    /// `⟨λ, α^v⟩` for the positive root with the given index.
    pub fn pairing(&self, lambda: &Weight, root: usize) -> i64 {
        coroot_pairing(lambda, &self.positive_roots[root].coroot)
    }

    /// `|W|` from the classical order formulas.
    pub fn weyl_group_order(&self) -> u128 {
        let n = self.rank() as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.spec.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1u128 << n) * fact(n),
            Series::D => (1u128 << (n - 1)) * fact(n),
            Series::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Series::F => 1_152,
            Series::G => 12,
        }
    }

    /// Simple reflection `s_i(μ) = μ − ⟨μ, α_i^v⟩ α_i`.
    pub fn reflect(&self, mu: &Weight, i: usize) -> Weight {
        let k = mu[i];
        let mut out = mu.clone();
        if k != 0 {
            for (o, a) in out.coords_mut().iter_mut().zip(&self.cartan[i]) {
                *o -= k * a;
            }
        }
        out
    }

    fn reflect_in_place(&self, mu: &mut Weight, i: usize) {
        let k = mu[i];
        for (o, a) in mu.coords_mut().iter_mut().zip(&self.cartan[i]) {
            *o -= k * a;
        }
    }

    /// Dominant conjugate under the linear action, with `det(w)`.
    fn dominant_linear(&self, mu: &Weight) -> (Weight, i8) {
        let mut cur = mu.clone();
        let mut sign = 1i8;
        while let Some(i) = cur.coords().iter().position(|&c| c < 0) {
            self.reflect_in_place(&mut cur, i);
            sign = -sign;
        }
        (cur, sign)
    }

    /// Returns the dominant representative and `det(w)`. In dot mode the
    /// sign is 0 when `μ + ρ` is singular (then `χ(μ) = 0`).
    pub fn to_dominant(&self, mu: &Weight, action: Action) -> (Weight, i8) {
        match action {
            Action::Linear => self.dominant_linear(mu),
            Action::Dot => {
                let shifted = mu + &self.rho;
                let (dom, sign) = self.dominant_linear(&shifted);
                if dom.coords().iter().any(|&c| c == 0) {
                    (dom.add_scaled(&self.rho, -1), 0)
                } else {
                    (dom.add_scaled(&self.rho, -1), sign)
                }
            }
        }
    }

    /// The orbit `Wλ` in lexicographic order.
    pub fn weyl_orbit(&self, lambda: &Weight) -> Result<Vec<Weight>> {
        let (dom, _) = self.dominant_linear(lambda);
        let mut seen: HashSet<Weight> = HashSet::from([dom.clone()]);
        let mut queue = VecDeque::from([dom]);
        // From a dominant start, reflecting only where the coordinate is
        // positive walks down the orbit and still reaches every element.
        while let Some(mu) = queue.pop_front() {
            for i in 0..self.rank() {
                if mu[i] > 0 {
                    let nu = self.reflect(&mu, i);
                    if !seen.contains(&nu) {
                        if seen.len() >= self.caps.orbit {
                            return Err(Error::OrbitTooLarge { cap: self.caps.orbit });
                        }
                        seen.insert(nu.clone());
                        queue.push_back(nu);
                    }
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn orbit_size(&self, lambda: &Weight) -> Result<usize> {
        self.weyl_orbit(lambda).map(|o| o.len())
    }

    /// `−w₀λ`.
    pub fn minus_w0(&self, lambda: &Weight) -> Weight {
        let mut out = self.zero_weight();
        for (i, &s) in self.w0_perm.iter().enumerate() {
            out.coords_mut()[s] = lambda[i];
        }
        out
    }

    /// Coordinates of `μ` in the simple-root basis when `μ` lies in the root
    /// lattice.
    pub fn root_coords(&self, mu: &Weight) -> Option<Vec<i64>> {
        self.inv_transpose_scaled
            .iter()
            .map(|row| {
                let s: i64 = row.iter().zip(mu.coords()).map(|(a, b)| a * b).sum();
                (s % self.det == 0).then_some(s / self.det)
            })
            .collect()
    }

    /// Dominance order: `μ ≤ λ` iff `λ − μ` is a non-negative integer
    /// combination of simple roots.
    pub fn dominance_le(&self, mu: &Weight, lambda: &Weight) -> bool {
        match self.root_coords(&(lambda - mu)) {
            Some(c) => c.iter().all(|&x| x >= 0),
            None => false,
        }
    }

    /// `⟨μ, 2ρ^v⟩ = Σ_{α>0} ⟨μ, α^v⟩`; strictly monotone for the dominance
    /// order.
    pub fn height_key(&self, mu: &Weight) -> i64 {
        self.positive_roots
            .iter()
            .map(|r| coroot_pairing(mu, &r.coroot))
            .sum()
    }

    /// `(θ, ν)` for `θ` given in simple-root coordinates.
    pub fn root_form(&self, theta: &[i64], nu: &Weight) -> i64 {
        theta
            .iter()
            .zip(&self.symmetrizer)
            .zip(nu.coords())
            .map(|((c, d), v)| c * d * v)
            .sum()
    }

    /// Whether `⟨μ+ρ, α^v⟩ ≤ p` for every positive root.
    pub fn in_lowest_alcove_closure(&self, mu: &Weight, p: u64) -> bool {
        let shifted = mu + &self.rho;
        self.positive_roots
            .iter()
            .all(|r| coroot_pairing(&shifted, &r.coroot) <= p as i64)
    }

    /// Map from dominant representative to orbit size, shared by callers
    /// that symmetrize many dominant multiplicities.
    pub fn orbit_cache(&self) -> OrbitCache<'_> {
        OrbitCache {
            datum: self,
            orbits: HashMap::new(),
        }
    }
}

pub struct OrbitCache<'a> {
    datum: &'a RootDatum,
    orbits: HashMap<Weight, Arc<Vec<Weight>>>,
}

impl OrbitCache<'_> {
    pub fn orbit(&mut self, dominant: &Weight) -> Result<Arc<Vec<Weight>>> {
        if let Some(o) = self.orbits.get(dominant) {
            return Ok(o.clone());
        }
        let o = Arc::new(self.datum.weyl_orbit(dominant)?);
        self.orbits.insert(dominant.clone(), o.clone());
        Ok(o)
    }
}

pub(crate) fn coroot_pairing(lambda: &Weight, coroot: &[i64]) -> i64 {
    lambda.coords().iter().zip(coroot).map(|(a, b)| a * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: Series, n: usize) -> RootDatum {
        RootDatum::new(RootSystemSpec::new(s, n)).unwrap()
    }

    fn all_specs() -> Vec<RootSystemSpec> {
        let mut v = Vec::new();
        for n in 1..=6 {
            v.push(RootSystemSpec::new(Series::A, n));
        }
        for n in 2..=6 {
            v.push(RootSystemSpec::new(Series::B, n));
            v.push(RootSystemSpec::new(Series::C, n));
        }
        for n in 4..=6 {
            v.push(RootSystemSpec::new(Series::D, n));
        }
        for n in 6..=8 {
            v.push(RootSystemSpec::new(Series::E, n));
        }
        v.push(RootSystemSpec::new(Series::F, 4));
        v.push(RootSystemSpec::new(Series::G, 2));
        v
    }

    fn classical_count(spec: RootSystemSpec) -> usize {
        let n = spec.rank;
        match spec.series {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::D => n * (n - 1),
            Series::E => [36, 63, 120][n - 6],
            Series::F => 24,
            Series::G => 6,
        }
    }

    #[test]
    fn rejects_invalid_ranks() {
        for (s, n) in [(Series::A, 0), (Series::B, 1), (Series::C, 1), (Series::D, 2), (Series::D, 3), (Series::E, 5), (Series::E, 9), (Series::F, 3), (Series::G, 3)] {
            assert!(matches!(RootDatum::new(RootSystemSpec::new(s, n)), Err(Error::InvalidSpec(_))), "{s}{n}");
        }
    }

    #[test]
    fn positive_root_counts_and_invariants() {
        for spec in all_specs() {
            let d = RootDatum::new(spec).unwrap();
            assert_eq!(d.positive_roots().len(), classical_count(spec), "{spec}");
            for (idx, r) in d.positive_roots().iter().enumerate() {
                let rp = d.pairing(d.rho(), idx);
                assert!(rp >= 1);
                assert_eq!(rp == 1, r.height == 1, "{spec} {:?}", r.root);
                assert!(r.root.iter().all(|&c| c >= 0));
                assert_eq!(d.root_coords(&r.weight).unwrap(), r.root);
                assert_eq!(coroot_pairing(&r.weight, &r.coroot), 2);
            }
            let beta0 = d.highest_short_root();
            assert_eq!(d.pairing(d.rho(), beta0) + 1, d.coxeter_number(), "{spec}");
            // β₀ is the unique dominant short root.
            let dominant_short: Vec<usize> = d
                .positive_roots()
                .iter()
                .enumerate()
                .filter(|(_, r)| r.half_norm == 1 && r.weight.is_dominant())
                .map(|(i, _)| i)
                .collect();
            assert_eq!(dominant_short, vec![beta0], "{spec}");
            let simply_laced = matches!(spec.series, Series::A | Series::D | Series::E);
            assert_eq!(beta0 == d.highest_root(), simply_laced);
            if simply_laced {
                assert_eq!(d.pairing(d.rho(), d.highest_root()) + 1, d.coxeter_number());
            }
            // C·diag(d) is symmetric.
            let c = d.cartan();
            let s = d.symmetrizer();
            for i in 0..spec.rank {
                for j in 0..spec.rank {
                    assert_eq!(c[i][j] * s[j], c[j][i] * s[i]);
                }
            }
        }
    }

    #[test]
    fn small_examples() {
        let a1 = datum(Series::A, 1);
        assert_eq!(a1.positive_roots().len(), 1);
        assert_eq!(a1.coxeter_number(), 2);
        assert_eq!(a1.rho(), &Weight::from([1]));

        let a2 = datum(Series::A, 2);
        let roots: Vec<_> = a2.positive_roots().iter().map(|r| r.root.clone()).collect();
        assert_eq!(roots, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(a2.coxeter_number(), 3);
        assert_eq!(a2.pairing(&Weight::from([1, 0]), a2.highest_short_root()), 1);

        let g2 = datum(Series::G, 2);
        assert_eq!(g2.positive_roots().len(), 6);
        assert_eq!(g2.coxeter_number(), 6);
        assert_ne!(g2.highest_root(), g2.highest_short_root());
    }

    #[test]
    fn coxeter_numbers() {
        let expect = [
            ((Series::B, 2), 4),
            ((Series::B, 3), 6),
            ((Series::C, 3), 6),
            ((Series::D, 4), 6),
            ((Series::E, 6), 12),
            ((Series::E, 7), 18),
            ((Series::E, 8), 30),
            ((Series::F, 4), 12),
        ];
        for ((s, n), h) in expect {
            assert_eq!(datum(s, n).coxeter_number(), h, "{s}{n}");
        }
    }

    #[test]
    fn w0_permutations() {
        for spec in all_specs() {
            let d = RootDatum::new(spec).unwrap();
            let perm = d.w0_perm();
            for i in 0..spec.rank {
                assert_eq!(perm[perm[i]], i);
            }
            let identity = perm.iter().enumerate().all(|(i, &s)| i == s);
            let expect_identity = match spec.series {
                Series::A => spec.rank == 1,
                Series::D => spec.rank % 2 == 0,
                Series::E => spec.rank != 6,
                _ => true,
            };
            assert_eq!(identity, expect_identity, "{spec}");
        }
        let a2 = datum(Series::A, 2);
        assert_eq!(a2.minus_w0(&Weight::from([1, 0])), Weight::from([0, 1]));
        assert_eq!(datum(Series::A, 1).minus_w0(&Weight::from([5])), Weight::from([5]));
    }

    #[test]
    fn orbits_and_straightening() {
        let a1 = datum(Series::A, 1);
        assert_eq!(a1.weyl_orbit(&Weight::from([0])).unwrap(), vec![Weight::from([0])]);
        assert_eq!(a1.weyl_orbit(&Weight::from([3])).unwrap(), vec![Weight::from([-3]), Weight::from([3])]);
        assert_eq!(datum(Series::A, 2).weyl_orbit(&Weight::from([1, 0])).unwrap().len(), 3);

        assert_eq!(a1.to_dominant(&Weight::from([2]), Action::Dot), (Weight::from([2]), 1));
        assert_eq!(a1.to_dominant(&Weight::from([-1]), Action::Dot).1, 0);
        assert_eq!(a1.to_dominant(&Weight::from([-3]), Action::Dot), (Weight::from([1]), -1));
        assert_eq!(a1.to_dominant(&Weight::from([-3]), Action::Linear), (Weight::from([3]), -1));
    }

    #[test]
    fn orbit_cap_is_enforced() {
        let d = datum(Series::A, 3).with_caps(Caps { orbit: 5, terms: 100 });
        assert_eq!(d.weyl_orbit(&Weight::from([1, 1, 1])), Err(Error::OrbitTooLarge { cap: 5 }));
        assert_eq!(d.weyl_orbit(&Weight::from([1, 0, 0])).unwrap().len(), 4);
    }

    #[test]
    fn dominance() {
        let a2 = datum(Series::A, 2);
        assert!(a2.dominance_le(&Weight::from([0, 0]), &Weight::from([1, 1])));
        assert!(!a2.dominance_le(&Weight::from([1, 0]), &Weight::from([1, 1])));
        assert!(a2.dominance_le(&Weight::from([0, 1]), &Weight::from([2, 0])));
        assert!(a2.height_key(&Weight::from([1, 1])) > a2.height_key(&Weight::from([0, 0])));
    }
}
