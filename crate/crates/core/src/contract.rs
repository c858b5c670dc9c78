//! Null-homotopies of based simplicial loops driven by a remoteness function
//! and a blocking function.
//!
//! The engine repeatedly takes the first loop position whose image has
//! maximal remoteness `n > 0` and asks the blocking oracle about the
//! adjacency pair `(X, v)` formed by the two neighbouring images `X` and the
//! image `v`. A zero answer relabels the position to a less remote vertex;
//! a positive answer subdivides the edge towards the neighbour `v'` and maps
//! the new vertex to `w'`, which strictly lowers the blocking value at the
//! position. Every step is recorded in a [`HomotopyCertificate`] that
//! [`validate`] can replay with nothing but the adjacency relation.

use std::fmt::Debug;

use serde::Serialize;
use thiserror::Error;

use crate::simplicial::Complex;

pub const DEFAULT_FUEL: usize = 1_000_000;

/// Adjacency in the target complex. Must be reflexive.
pub trait Adjacency<V> {
    fn adjacent(&self, a: &V, b: &V) -> bool;
}

pub trait Remoteness<V> {
    fn base(&self) -> V;
    fn remoteness(&self, v: &V) -> u64;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockingValue<V> {
    Zero { w: V },
    Positive { value: u64, v_prime: V, w_prime: V },
}

impl<V> BlockingValue<V> {
    pub fn value(&self) -> u64 {
        match self {
            BlockingValue::Zero { .. } => 0,
            BlockingValue::Positive { value, .. } => *value,
        }
    }
}

pub trait BlockingFunction<V> {
    /// `b(X, v)` together with its witness. Called only on adjacency pairs with `r(v) > 0`.
    fn blocking(&self, x: &[V], v: &V) -> Result<BlockingValue<V>, String>;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractError {
    #[error("loop must start at the base vertex {0}")]
    NotBased(String),
    #[error("base vertex {0} has positive remoteness")]
    RemoteBase(String),
    #[error("consecutive images {0} and {1} are not adjacent")]
    NotALoop(String, String),
    #[error("oracle contract violated at adjacency pair (X = {x}, v = {v}): {reason}")]
    OracleContractViolation { x: String, v: String, reason: String },
    #[error("progress measure did not decrease: {previous:?} -> {current:?}")]
    ProgressViolation { previous: (u64, usize, u64), current: (u64, usize, u64) },
    #[error("fuel exhausted after {0} moves")]
    FuelExhausted(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Move<V> {
    /// Replace the image at `pos`.
    Relabel { pos: usize, old: V, new: V },
    /// Insert a new vertex at index `pos`, between the images at `pos - 1` and `pos`.
    Subdivide { pos: usize, insert: V },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomotopyCertificate<V> {
    pub moves: Vec<Move<V>>,
    #[serde(rename = "final")]
    pub final_loop: Vec<V>,
}

impl<V: Serialize> HomotopyCertificate<V> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

/// Images `u₀, …, u_{m-1}` of a triangulated circle; the edge `u_{m-1} u₀` closes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialLoop<V> {
    images: Vec<V>,
}

impl<V: Clone + PartialEq + Debug> SimplicialLoop<V> {
    pub fn new<A: Adjacency<V>>(images: Vec<V>, adjacency: &A, base: &V) -> Result<Self, ContractError> {
        if images.first() != Some(base) {
            return Err(ContractError::NotBased(format!("{base:?}")));
        }
        let m = images.len();
        for i in 0..m {
            let (a, b) = (&images[i], &images[(i + 1) % m]);
            if !adjacency.adjacent(a, b) {
                return Err(ContractError::NotALoop(format!("{a:?}"), format!("{b:?}")));
            }
        }
        Ok(SimplicialLoop { images })
    }

    pub fn images(&self) -> &[V] {
        &self.images
    }
}

pub fn max_remoteness<V, R: Remoteness<V>>(r: &R, images: &[V]) -> u64 {
    images.iter().map(|v| r.remoteness(v)).max().unwrap_or(0)
}

/// Result of a successful contraction, with the progress measure
/// `(n, #positions at n, b at active position)` recorded at every step.
#[derive(Debug, Clone)]
pub struct Contraction<V> {
    pub certificate: HomotopyCertificate<V>,
    pub progress: Vec<(u64, usize, u64)>,
}

pub fn contract_loop<V, A, R, B>(
    adjacency: &A,
    r: &R,
    b: &B,
    lp: &SimplicialLoop<V>,
    fuel: usize,
) -> Result<Contraction<V>, ContractError>
where
    V: Clone + PartialEq + Debug,
    A: Adjacency<V>,
    R: Remoteness<V>,
    B: BlockingFunction<V>,
{
    let base = r.base();
    if r.remoteness(&base) != 0 {
        return Err(ContractError::RemoteBase(format!("{base:?}")));
    }
    let mut images = lp.images.clone();
    let mut moves = Vec::new();
    let mut progress: Vec<(u64, usize, u64)> = Vec::new();

    loop {
        let rs: Vec<u64> = images.iter().map(|v| r.remoteness(v)).collect();
        let n = rs.iter().copied().max().unwrap_or(0);
        if n == 0 {
            break;
        }
        let i = rs.iter().position(|&x| x == n).expect("maximum is attained");
        let count = rs.iter().filter(|&&x| x == n).count();
        let m = images.len();
        let v = images[i].clone();
        let x = vec![images[(i + m - 1) % m].clone(), images[(i + 1) % m].clone()];
        let violation = |reason: &str| ContractError::OracleContractViolation {
            x: format!("{x:?}"),
            v: format!("{v:?}"),
            reason: reason.to_string(),
        };
        if !x.iter().all(|u| adjacency.adjacent(u, &v)) {
            return Err(violation("neighbouring images are not adjacent to v"));
        }
        let answer = b.blocking(&x, &v).map_err(|e| violation(&e))?;

        let measure = (n, count, answer.value());
        if let Some(&previous) = progress.last() {
            if measure >= previous {
                return Err(ContractError::ProgressViolation { previous, current: measure });
            }
        }
        progress.push(measure);
        if moves.len() >= fuel {
            return Err(ContractError::FuelExhausted(moves.len()));
        }

        match answer {
            BlockingValue::Zero { w } => {
                if !adjacency.adjacent(&w, &v) {
                    return Err(violation("zero witness is not adjacent to v"));
                }
                if r.remoteness(&w) >= n {
                    return Err(violation("zero witness does not lower remoteness"));
                }
                if !x.iter().all(|u| adjacency.adjacent(u, &w)) {
                    return Err(violation("(X, w) is not an adjacency pair"));
                }
                moves.push(Move::Relabel { pos: i, old: v, new: w.clone() });
                images[i] = w;
            }
            BlockingValue::Positive { v_prime, w_prime, .. } => {
                let side = x.iter().position(|u| *u == v_prime);
                let Some(side) = side else {
                    return Err(violation("v' is not a member of X"));
                };
                if r.remoteness(&w_prime) >= r.remoteness(&v_prime) {
                    return Err(violation("r(w') is not below r(v')"));
                }
                if !adjacency.adjacent(&w_prime, &v_prime) || !adjacency.adjacent(&w_prime, &v) {
                    return Err(violation("w' is not adjacent to both v' and v"));
                }
                if x.iter().any(|u| adjacency.adjacent(u, &v_prime) && !adjacency.adjacent(u, &w_prime)) {
                    return Err(violation("an element of X adjacent to v' is not adjacent to w'"));
                }
                let pos = if side == 0 { i } else { i + 1 };
                moves.push(Move::Subdivide { pos, insert: w_prime.clone() });
                images.insert(pos, w_prime);
            }
        }
    }

    Ok(Contraction { certificate: HomotopyCertificate { moves, final_loop: images }, progress })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Valid,
    /// `move_index` is `None` when the moves replay but the final loop is wrong.
    Invalid {
        move_index: Option<usize>,
        reason: String,
    },
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid)
    }
}

/// Replays a certificate against the original loop using adjacency alone.
pub fn validate<V, A>(adjacency: &A, cert: &HomotopyCertificate<V>, lp: &SimplicialLoop<V>) -> Validation
where
    V: Clone + PartialEq + Debug,
    A: Adjacency<V>,
{
    let mut images = lp.images.clone();
    let Some(base) = images.first().cloned() else {
        return Validation::Invalid { move_index: None, reason: "empty loop".into() };
    };
    let fail = |i: usize, reason: &str| Validation::Invalid { move_index: Some(i), reason: reason.to_string() };
    for (idx, mv) in cert.moves.iter().enumerate() {
        let m = images.len();
        match mv {
            Move::Relabel { pos, old, new } => {
                if *pos == 0 || *pos >= m {
                    return fail(idx, "relabel position out of range or at the base point");
                }
                if images[*pos] != *old {
                    return fail(idx, "old image does not match the loop");
                }
                let (left, right) = (&images[pos - 1], &images[(pos + 1) % m]);
                if !adjacency.adjacent(new, old) || !adjacency.adjacent(new, left) || !adjacency.adjacent(new, right) {
                    return fail(idx, "new image is not adjacent to the old image and both neighbours");
                }
                images[*pos] = new.clone();
            }
            Move::Subdivide { pos, insert } => {
                if *pos == 0 || *pos > m {
                    return fail(idx, "subdivision position out of range");
                }
                let (left, right) = (&images[pos - 1], &images[pos % m]);
                if !adjacency.adjacent(insert, left) || !adjacency.adjacent(insert, right) {
                    return fail(idx, "inserted image is not adjacent to both flanking images");
                }
                images.insert(*pos, insert.clone());
            }
        }
    }
    if images != cert.final_loop {
        return Validation::Invalid { move_index: None, reason: "final loop does not match replay".into() };
    }
    if !images.iter().all(|u| adjacency.adjacent(u, &base)) {
        return Validation::Invalid { move_index: None, reason: "final loop leaves the star of the base".into() };
    }
    Validation::Valid
}

impl Adjacency<String> for Complex {
    fn adjacent(&self, a: &String, b: &String) -> bool {
        a == b || self.contains(&[a.clone(), b.clone()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    /// Cone over a hexagon with apex `o`, plus a remote vertex `z` glued on
    /// the triangle `1 2 z`. Remoteness 0 on the star of `o`.
    struct Toy {
        k: Complex,
        r: HashMap<String, u64>,
    }

    fn toy() -> Toy {
        let k = Complex::from_maximal(&[
            vec!["o", "1", "2"],
            vec!["o", "2", "3"],
            vec!["o", "3", "4"],
            vec!["o", "4", "5"],
            vec!["o", "5", "6"],
            vec!["o", "6", "1"],
            vec!["1", "2", "z"],
        ])
        .unwrap();
        let mut r: HashMap<String, u64> = k.vertices().into_iter().map(|v| (v, 0)).collect();
        r.insert("z".into(), 1);
        Toy { k, r }
    }

    impl Remoteness<String> for Toy {
        fn base(&self) -> String {
            "o".into()
        }
        fn remoteness(&self, v: &String) -> u64 {
            self.r[v]
        }
    }

    /// Brute force: any less remote vertex adjacent to v and all of X.
    impl BlockingFunction<String> for Toy {
        fn blocking(&self, x: &[String], v: &String) -> Result<BlockingValue<String>, String> {
            self.k
                .vertices()
                .into_iter()
                .find(|w| {
                    self.r[w] < self.r[v]
                        && Adjacency::adjacent(&self.k, w, v)
                        && x.iter().all(|u| Adjacency::adjacent(&self.k, u, w))
                })
                .map(|w| BlockingValue::Zero { w })
                .ok_or_else(|| "no witness".to_string())
        }
    }

    fn lp(t: &Toy, s: &[&str]) -> SimplicialLoop<String> {
        SimplicialLoop::new(s.iter().map(|x| x.to_string()).collect(), &t.k, &"o".to_string()).unwrap()
    }

    #[test]
    fn constant_loop_needs_no_moves() {
        let t = toy();
        let l = lp(&t, &["o", "o", "o"]);
        let c = contract_loop(&t.k, &t, &t, &l, DEFAULT_FUEL).unwrap();
        assert!(c.certificate.moves.is_empty());
        assert!(validate(&t.k, &c.certificate, &l).is_valid());
    }

    #[test]
    fn loop_in_base_star_needs_no_moves() {
        let t = toy();
        let l = lp(&t, &["o", "1", "2", "3", "4", "5", "6"]);
        let c = contract_loop(&t.k, &t, &t, &l, DEFAULT_FUEL).unwrap();
        assert!(c.certificate.moves.is_empty());
        assert_eq!(max_remoteness(&t, l.images()), 0);
    }

    #[test]
    fn remote_vertex_is_relabelled() {
        let t = toy();
        let l = lp(&t, &["o", "1", "z", "2"]);
        assert_eq!(max_remoteness(&t, l.images()), 1);
        let c = contract_loop(&t.k, &t, &t, &l, DEFAULT_FUEL).unwrap();
        assert_eq!(c.certificate.moves.len(), 1);
        assert!(matches!(&c.certificate.moves[0], Move::Relabel { pos: 2, .. }));
        assert!(validate(&t.k, &c.certificate, &l).is_valid());
    }

    #[test]
    fn planted_bad_relabel_is_rejected() {
        let t = toy();
        let l = lp(&t, &["o", "1", "z", "2"]);
        let cert = HomotopyCertificate {
            moves: vec![Move::Relabel { pos: 2, old: "z".to_string(), new: "4".to_string() }],
            final_loop: ["o", "1", "4", "2"].iter().map(|s| s.to_string()).collect(),
        };
        assert_eq!(
            validate(&t.k, &cert, &l),
            Validation::Invalid {
                move_index: Some(0),
                reason: "new image is not adjacent to the old image and both neighbours".into()
            }
        );
    }

    #[test]
    fn rejects_unbased_or_broken_loops() {
        let t = toy();
        let o = "o".to_string();
        let bad = SimplicialLoop::new(vec!["1".to_string()], &t.k, &o);
        assert!(matches!(bad, Err(ContractError::NotBased(_))));
        let broken = SimplicialLoop::new(vec!["o".into(), "z".into()], &t.k, &o);
        assert!(matches!(broken, Err(ContractError::NotALoop(_, _))));
    }

    #[test]
    fn fuel_exhaustion_is_reported() {
        let t = toy();
        let l = lp(&t, &["o", "1", "z", "2"]);
        assert_eq!(contract_loop(&t.k, &t, &t, &l, 0).unwrap_err(), ContractError::FuelExhausted(0));
    }

    struct Liar(Toy);

    impl BlockingFunction<String> for Liar {
        fn blocking(&self, _x: &[String], _v: &String) -> Result<BlockingValue<String>, String> {
            Ok(BlockingValue::Zero { w: "4".into() })
        }
    }

    #[test]
    fn oracle_violations_are_reported() {
        let t = toy();
        let l = lp(&t, &["o", "1", "z", "2"]);
        let liar = Liar(toy());
        let err = contract_loop(&t.k, &liar.0, &liar, &l, DEFAULT_FUEL).unwrap_err();
        assert!(matches!(err, ContractError::OracleContractViolation { .. }), "{err}");
    }

    #[test]
    fn certificate_json_shape() {
        let cert = HomotopyCertificate {
            moves: vec![
                Move::Relabel { pos: 2, old: "z".to_string(), new: "1".to_string() },
                Move::Subdivide { pos: 1, insert: "o".to_string() },
            ],
            final_loop: vec!["o".to_string()],
        };
        assert_eq!(
            cert.to_json(),
            r#"{"moves":[{"type":"relabel","pos":2,"old":"z","new":"1"},{"type":"subdivide","pos":1,"insert":"o"}],"final":["o"]}"#
        );
    }
}
