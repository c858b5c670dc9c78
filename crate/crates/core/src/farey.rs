//! Farey complex fixture for the contraction engine.
//!
//! Vertices are slopes `p/q` (with `1/0 = ∞`), two slopes span an edge when
//! `|p s - q r| = 1`, and triangles are the pairwise-adjacent triples.
//! Remoteness is the denominator, measured from the base vertex `∞`. This is
//! an analogue used to exercise the engine, not a model of any disk complex.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::contract::{Adjacency, BlockingFunction, BlockingValue, Remoteness};
use crate::simplicial::Complex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FareyError {
    #[error("0/0 is not a slope")]
    ZeroSlope,
    #[error("cannot parse slope {0:?}")]
    Parse(String),
    #[error("∞ has no parents")]
    NoParents,
    #[error("blocking is only defined at vertices of positive remoteness")]
    BaseVertex,
    #[error("no blocking witness found for X = {x:?}, v = {v}")]
    WitnessNotFound { x: Vec<String>, v: String },
}

/// Reduced fraction `p/q` with `q ≥ 0`; `∞` is stored as `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(g, x, y)` with `a x + b y = g`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl Slope {
    pub const INF: Slope = Slope { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Self, FareyError> {
        if p == 0 && q == 0 {
            return Err(FareyError::ZeroSlope);
        }
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn integer(n: i64) -> Self {
        Slope { p: n, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    /// Orders by value with `∞` last.
    pub fn value_cmp(&self, other: &Slope) -> std::cmp::Ordering {
        match (self.q, other.q) {
            (0, 0) => std::cmp::Ordering::Equal,
            (0, _) => std::cmp::Ordering::Greater,
            (_, 0) => std::cmp::Ordering::Less,
            _ => (self.p * other.q).cmp(&(other.p * self.q)),
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 0 {
            f.write_str("inf")
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl FromStr for Slope {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(Slope::INF);
        }
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| FareyError::Parse(s.to_string()));
        match s.split_once('/') {
            Some((p, q)) => Slope::new(parse(p)?, parse(q)?),
            None => Slope::new(parse(s)?, 1),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn det_intersection(u: &Slope, v: &Slope) -> u64 {
    (u.p * v.q - u.q * v.p).unsigned_abs()
}

/// Adjacent in the Farey complex, equality included.
pub fn farey_adjacent(u: &Slope, v: &Slope) -> bool {
    u == v || det_intersection(u, v) == 1
}

pub fn remoteness(v: &Slope) -> u64 {
    v.q as u64
}

pub fn mediant(a: &Slope, b: &Slope) -> Result<Slope, FareyError> {
    Slope::new(a.p + b.p, a.q + b.q)
}

/// Some `(r, s)` with `p s - q r = 1`.
fn unimodular_partner(v: &Slope) -> (i64, i64) {
    // x p + y q = 1, so (r, s) = (-y, x)
    let (g, x, y) = ext_gcd(v.p, v.q);
    debug_assert_eq!(g.abs(), 1);
    (-y * g, x * g)
}

/// Farey neighbours of `v`: the chain `u₀ + k v` for `|k| ≤ bound`, where
/// `u₀` is any neighbour. Consecutive chain members are adjacent.
pub fn neighbor_chain(v: &Slope, bound: i64) -> Vec<Slope> {
    let (r, s) = unimodular_partner(v);
    (-bound..=bound).map(|k| Slope::new(r + k * v.p, s + k * v.q).expect("determinant one")).collect()
}

/// The two neighbours of smaller denominator, ascending by value, whose
/// mediant is `v`. For an integer `n` this is `(∞, n - 1)`.
pub fn parents(v: &Slope) -> Result<(Slope, Slope), FareyError> {
    if v.is_infinite() {
        return Err(FareyError::NoParents);
    }
    if v.q == 1 {
        return Ok((Slope::INF, Slope::integer(v.p - 1)));
    }
    let (r, s) = unimodular_partner(v);
    let k = -s.div_euclid(v.q);
    let a = Slope::new(r + k * v.p, s + k * v.q)?;
    let b = Slope::new(v.p - a.p, v.q - a.q)?;
    Ok(if a.value_cmp(&b).is_le() { (a, b) } else { (b, a) })
}

/// Window of slope values `[lo, hi]` kept by [`build`], plus `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FareyConfig {
    pub lo: i64,
    pub hi: i64,
}

impl Default for FareyConfig {
    fn default() -> Self {
        FareyConfig { lo: 0, hi: 1 }
    }
}

#[derive(Debug, Clone)]
pub struct FareyComplex {
    pub slopes: Vec<Slope>,
    pub complex: Complex,
}

impl FareyComplex {
    pub fn neighbors_of(&self, v: &Slope) -> Vec<Slope> {
        self.slopes.iter().filter(|u| *u != v && farey_adjacent(u, v)).copied().collect()
    }
}

/// All slopes of denominator at most `n` in the window, plus `∞`.
pub fn build(n: i64, config: FareyConfig) -> FareyComplex {
    let mut slopes = vec![Slope::INF];
    for q in 1..=n.max(1) {
        for p in config.lo * q..=config.hi * q {
            if gcd(p, q) == 1 {
                slopes.push(Slope { p, q });
            }
        }
    }
    slopes.sort_by(|a, b| a.value_cmp(b));
    let mut complex = Complex::new();
    let labels: Vec<String> = slopes.iter().map(|s| s.to_string()).collect();
    for l in &labels {
        complex.add_vertex(l);
    }
    let m = slopes.len();
    let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            if det_intersection(&slopes[i], &slopes[j]) == 1 {
                nbrs[i].insert(j);
                nbrs[j].insert(i);
            }
        }
    }
    for i in 0..m {
        for &j in nbrs[i].range(i + 1..) {
            complex.insert(&[labels[i].clone(), labels[j].clone()]).expect("edge");
            for &k in nbrs[j].range(j + 1..) {
                if nbrs[i].contains(&k) {
                    complex.insert(&[labels[i].clone(), labels[j].clone(), labels[k].clone()]).expect("triangle");
                }
            }
        }
    }
    FareyComplex { slopes, complex }
}

fn by_remoteness(a: &Slope, b: &Slope) -> std::cmp::Ordering {
    (a.q, a.p).cmp(&(b.q, b.p))
}

/// Blocking function modelled on disk surgery.
///
/// `b(X, v) = 0` when some neighbour `w` of `v` with smaller denominator is
/// adjacent to every element of `X`; otherwise `b(X, v) = Σ_{x ∈ X} r(x)`,
/// witnessed by a most remote `v' ∈ X` and a less remote neighbour `w'` of
/// `v'` that is adjacent to `v` and to every element of `X` adjacent to `v'`.
/// Witnesses are searched along neighbour chains out to `|k| ≤ search_bound`.
pub fn blocking(x: &[Slope], v: &Slope, search_bound: i64) -> Result<BlockingValue<Slope>, FareyError> {
    if remoteness(v) == 0 {
        return Err(FareyError::BaseVertex);
    }
    let mut candidates: Vec<Slope> =
        neighbor_chain(v, search_bound).into_iter().filter(|w| remoteness(w) < remoteness(v)).collect();
    candidates.sort_by(by_remoteness);
    candidates.dedup();
    if let Some(w) = candidates.into_iter().find(|w| x.iter().all(|u| farey_adjacent(u, w))) {
        return Ok(BlockingValue::Zero { w });
    }

    let value: u64 = x.iter().map(remoteness).sum();
    let mut order: Vec<Slope> = x.to_vec();
    order.sort_by(|a, b| Reverse(remoteness(a)).cmp(&Reverse(remoteness(b))).then(by_remoteness(a, b)));
    order.dedup();
    for v_prime in order {
        let mut side: Vec<Slope> = neighbor_chain(&v_prime, search_bound)
            .into_iter()
            .filter(|w| remoteness(w) < remoteness(&v_prime) && farey_adjacent(w, v))
            .collect();
        side.sort_by(by_remoteness);
        let found =
            side.into_iter().find(|w| x.iter().filter(|u| farey_adjacent(u, &v_prime)).all(|u| farey_adjacent(u, w)));
        if let Some(w_prime) = found {
            return Ok(BlockingValue::Positive { value, v_prime, w_prime });
        }
    }
    Err(FareyError::WitnessNotFound { x: x.iter().map(|s| s.to_string()).collect(), v: v.to_string() })
}

/// Adjacency, remoteness and blocking oracles on the full Farey complex.
#[derive(Debug, Clone, Copy)]
pub struct FareyOracles {
    pub search_bound: i64,
}

impl FareyOracles {
    pub fn new(max_denominator: i64) -> Self {
        FareyOracles { search_bound: 2 * max_denominator.max(1) }
    }
}

impl Adjacency<Slope> for FareyOracles {
    fn adjacent(&self, a: &Slope, b: &Slope) -> bool {
        farey_adjacent(a, b)
    }
}

impl Remoteness<Slope> for FareyOracles {
    fn base(&self) -> Slope {
        Slope::INF
    }

    fn remoteness(&self, v: &Slope) -> u64 {
        remoteness(v)
    }
}

impl BlockingFunction<Slope> for FareyOracles {
    fn blocking(&self, x: &[Slope], v: &Slope) -> Result<BlockingValue<Slope>, String> {
        blocking(x, v, self.search_bound).map_err(|e| e.to_string())
    }
}

/// Checks one blocking answer against the blocking axioms, including
/// adjacency of `w'` to `v`. Returns a description of the first failure.
pub fn check_blocking_axioms(x: &[Slope], v: &Slope, search_bound: i64) -> Result<BlockingValue<Slope>, String> {
    let fmt_pair = || {
        let xs: Vec<String> = x.iter().map(|s| s.to_string()).collect();
        format!("X = {{{}}}, v = {v}", xs.join(", "))
    };
    let answer = blocking(x, v, search_bound).map_err(|e| format!("{}: {e}", fmt_pair()))?;
    match &answer {
        BlockingValue::Zero { w } => {
            if !farey_adjacent(w, v) {
                return Err(format!("{}: w = {w} not adjacent to v", fmt_pair()));
            }
            if remoteness(w) >= remoteness(v) {
                return Err(format!("{}: r(w) = {} not below r(v)", fmt_pair(), remoteness(w)));
            }
            if let Some(u) = x.iter().find(|u| !farey_adjacent(u, w)) {
                return Err(format!("{}: (X, w) not an adjacency pair, {u} not adjacent to w = {w}", fmt_pair()));
            }
        }
        BlockingValue::Positive { value, v_prime, w_prime } => {
            let Some(idx) = x.iter().position(|u| u == v_prime) else {
                return Err(format!("{}: v' = {v_prime} not in X", fmt_pair()));
            };
            if !farey_adjacent(w_prime, v_prime) {
                return Err(format!("{}: w' = {w_prime} not adjacent to v' = {v_prime}", fmt_pair()));
            }
            if remoteness(w_prime) >= remoteness(v_prime) {
                return Err(format!("{}: r(w') not below r(v')", fmt_pair()));
            }
            if let Some(u) = x.iter().find(|u| farey_adjacent(u, v_prime) && !farey_adjacent(u, w_prime)) {
                return Err(format!("{}: {u} adjacent to v' but not to w' = {w_prime}", fmt_pair()));
            }
            if !farey_adjacent(w_prime, v) {
                return Err(format!("{}: w' = {w_prime} not adjacent to v", fmt_pair()));
            }
            let mut y = x.to_vec();
            y[idx] = *w_prime;
            let next = blocking(&y, v, search_bound).map_err(|e| format!("{}: b(Y, v) failed: {e}", fmt_pair()))?;
            if next.value() >= *value {
                return Err(format!("{}: b(Y, v) = {} not below b(X, v) = {value}", fmt_pair(), next.value()));
            }
        }
    }
    Ok(answer)
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub max_denominator: i64,
    pub samples: usize,
    pub zero_cases: usize,
    pub positive_cases: usize,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples random adjacency pairs `(X, v)` in `build(n)` with `r(v) > 0`,
/// `|X| ≤ 4` and multiplicities at most two, and checks every answer.
pub fn verify_axioms<R: Rng + ?Sized>(n: i64, samples: usize, config: FareyConfig, rng: &mut R) -> AxiomReport {
    let fc = build(n, config);
    let bound = 2 * n.max(1);
    let remote: Vec<Slope> = fc.slopes.iter().filter(|s| remoteness(s) > 0).copied().collect();
    let mut report =
        AxiomReport { max_denominator: n, samples, zero_cases: 0, positive_cases: 0, violations: Vec::new() };
    for _ in 0..samples {
        let v = *remote.choose(rng).expect("window contains finite slopes");
        let mut pool = fc.neighbors_of(&v);
        pool.push(v);
        let size = rng.gen_range(0..=4usize);
        let mut x: Vec<Slope> = Vec::with_capacity(size);
        while x.len() < size {
            let u = *pool.choose(rng).expect("pool contains v");
            let copies = x.iter().filter(|w| **w == u).count();
            if copies < 2 {
                x.push(u);
            }
        }
        match check_blocking_axioms(&x, &v, bound) {
            Ok(BlockingValue::Zero { .. }) => report.zero_cases += 1,
            Ok(BlockingValue::Positive { .. }) => report.positive_cases += 1,
            Err(e) => report.violations.push(e),
        }
    }
    report
}

/// A random closed edge path based at `∞` inside the window with
/// denominators at most `max_denominator`: a random walk followed by the
/// descent through parents back to `∞`.
pub fn random_loop<R: Rng + ?Sized>(
    rng: &mut R,
    max_denominator: i64,
    steps: usize,
    config: FareyConfig,
) -> Vec<Slope> {
    let in_window =
        |s: &Slope| s.is_infinite() || (s.q <= max_denominator && config.lo * s.q <= s.p && s.p <= config.hi * s.q);
    let mut images = vec![Slope::INF];
    let mut current = Slope::INF;
    for _ in 0..steps {
        if rng.gen_bool(0.1) {
            images.push(current);
            continue;
        }
        let options: Vec<Slope> = neighbor_chain(&current, 3).into_iter().filter(in_window).collect();
        if let Some(next) = options.choose(rng) {
            current = *next;
            images.push(current);
        }
    }
    while !current.is_infinite() {
        let (a, b) = parents(&current).expect("finite slope");
        current = if a.is_infinite() || b.is_infinite() {
            Slope::INF
        } else if rng.gen_bool(0.5) {
            a
        } else {
            b
        };
        if !current.is_infinite() {
            images.push(current);
        }
    }
    images
}
