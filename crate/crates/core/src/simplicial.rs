//! Finite abstract simplicial complexes of dimension at most two.
//!
//! Vertices carry opaque string labels. A complex is stored as its full
//! downward-closed set of simplices, each a sorted list of labels.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_SIMPLEX_SIZE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("simplex {0:?} has more than three vertices")]
    OversizedSimplex(Vec<String>),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("acyclicity is only defined for graphs, complex has dimension {0}")]
    NotAGraph(usize),
    #[error("malformed complex JSON: {0}")]
    Json(String),
}

pub type Simplex = Vec<String>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Complex {
    simplices: BTreeSet<Simplex>,
}

/// On-disk form: `{"max_simplices": [["a","b","c"], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    pub max_simplices: Vec<Vec<String>>,
}

fn nonempty_faces(s: &[String]) -> Vec<Simplex> {
    let n = s.len();
    (1u32..(1 << n)).map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i].clone()).collect()).collect()
}

fn canonical(s: &[String]) -> Simplex {
    let set: BTreeSet<&String> = s.iter().collect();
    set.into_iter().cloned().collect()
}

impl Complex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Downward closure of the given simplices.
    pub fn from_maximal<S: AsRef<str>>(simplices: &[Vec<S>]) -> Result<Self, SimplicialError> {
        let mut k = Complex::new();
        for s in simplices {
            let s: Vec<String> = s.iter().map(|x| x.as_ref().to_string()).collect();
            k.insert(&s)?;
        }
        Ok(k)
    }

    /// Adds a simplex and all of its faces.
    pub fn insert(&mut self, s: &[String]) -> Result<(), SimplicialError> {
        let s = canonical(s);
        if s.len() > MAX_SIMPLEX_SIZE {
            return Err(SimplicialError::OversizedSimplex(s));
        }
        if s.is_empty() || self.simplices.contains(&s) {
            return Ok(());
        }
        for f in nonempty_faces(&s) {
            self.simplices.insert(f);
        }
        Ok(())
    }

    pub fn add_vertex(&mut self, v: &str) {
        self.simplices.insert(vec![v.to_string()]);
    }

    pub fn from_json(text: &str) -> Result<Self, SimplicialError> {
        let file: ComplexFile = serde_json::from_str(text).map_err(|e| SimplicialError::Json(e.to_string()))?;
        Self::from_maximal(&file.max_simplices)
    }

    pub fn to_json(&self) -> String {
        let file = ComplexFile { max_simplices: self.maximal_simplices() };
        serde_json::to_string(&file).expect("plain strings serialize")
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn contains(&self, s: &[String]) -> bool {
        self.simplices.contains(&canonical(s))
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.simplices.contains(&vec![v.to_string()])
    }

    pub fn vertices(&self) -> BTreeSet<String> {
        self.simplices.iter().filter(|s| s.len() == 1).map(|s| s[0].clone()).collect()
    }

    pub fn count(&self, size: usize) -> usize {
        self.simplices.iter().filter(|s| s.len() == size).count()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.simplices.iter().map(|s| s.len() as isize - 1).max().unwrap_or(-1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().map(|s| if s.len() % 2 == 1 { 1 } else { -1 }).sum()
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        for s in &self.simplices {
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    covered.insert(self.simplices.get(&f).expect("downward closed"));
                }
            }
        }
        self.simplices.iter().filter(|s| !covered.contains(s)).cloned().collect()
    }

    pub fn is_downward_closed(&self) -> bool {
        self.simplices.iter().all(|s| nonempty_faces(s).iter().all(|f| self.simplices.contains(f)))
    }

    /// Neighbours through 1-simplices (the vertex itself excluded).
    pub fn neighbors(&self) -> BTreeMap<String, BTreeSet<String>> {
        let mut adj: BTreeMap<String, BTreeSet<String>> =
            self.vertices().into_iter().map(|v| (v, BTreeSet::new())).collect();
        for s in self.simplices.iter().filter(|s| s.len() == 2) {
            adj.get_mut(&s[0]).unwrap().insert(s[1].clone());
            adj.get_mut(&s[1]).unwrap().insert(s[0].clone());
        }
        adj
    }

    fn require(&self, v: &str) -> Result<(), SimplicialError> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(SimplicialError::UnknownVertex(v.to_string()))
        }
    }

    /// `w` is adjacent to `v` when equal to it or joined to it by an edge.
    pub fn adjacent(&self, w: &str, v: &str) -> Result<bool, SimplicialError> {
        self.require(w)?;
        self.require(v)?;
        Ok(w == v || self.contains(&[w.to_string(), v.to_string()]))
    }

    /// Every pairwise-adjacent triple of vertices spans a 2-simplex.
    pub fn is_flag(&self) -> bool {
        let adj = self.neighbors();
        for (a, na) in &adj {
            for b in na.range::<String, _>((std::ops::Bound::Excluded(a), std::ops::Bound::Unbounded)) {
                for c in adj[b].range::<String, _>((std::ops::Bound::Excluded(b), std::ops::Bound::Unbounded)) {
                    if na.contains(c) && !self.simplices.contains(&vec![a.clone(), b.clone(), c.clone()]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn full_subcomplex(&self, vertices: &BTreeSet<String>) -> Complex {
        Complex {
            simplices: self.simplices.iter().filter(|s| s.iter().all(|v| vertices.contains(v))).cloned().collect(),
        }
    }

    /// Maximal subcomplex spanned by the vertices adjacent to `v`.
    pub fn star(&self, v: &str) -> Result<Complex, SimplicialError> {
        self.require(v)?;
        let mut span = self.neighbors().remove(v).unwrap_or_default();
        span.insert(v.to_string());
        Ok(self.full_subcomplex(&span))
    }

    /// Simplices `σ` with `v ∉ σ` and `σ ∪ {v}` a simplex.
    pub fn link(&self, v: &str) -> Result<Complex, SimplicialError> {
        self.require(v)?;
        let simplices = self
            .simplices
            .iter()
            .filter(|s| !s.iter().any(|x| x == v))
            .filter(|s| {
                let mut t = (*s).clone();
                t.push(v.to_string());
                self.simplices.contains(&canonical(&t))
            })
            .cloned()
            .collect();
        Ok(Complex { simplices })
    }

    /// First barycentric subdivision. The barycenter of a vertex keeps its
    /// label; higher simplices become `"(a,b)"` or `"(a,b,c)"`.
    pub fn barycentric(&self) -> Complex {
        let mut out = Complex::new();
        for top in &self.simplices {
            for chain in chains_ending_at(top) {
                let labels: Vec<String> = chain.iter().map(|s| barycenter_label(s)).collect();
                out.insert(&labels).expect("chains have at most three members");
            }
        }
        out
    }

    /// Full subcomplex on the vertices not in `original_vertices`; applied to a
    /// barycentric subdivision this deletes the open stars of the old vertices.
    pub fn remove_open_stars(&self, original_vertices: &BTreeSet<String>) -> Complex {
        let keep: BTreeSet<String> = self.vertices().difference(original_vertices).cloned().collect();
        self.full_subcomplex(&keep)
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.neighbors();
        let Some(start) = adj.keys().next() else {
            return true;
        };
        let mut seen: BTreeSet<&String> = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in &adj[v] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == adj.len()
    }

    /// Forest test for a complex of dimension at most one.
    pub fn is_acyclic_graph(&self) -> Result<bool, SimplicialError> {
        if self.dimension() > 1 {
            return Err(SimplicialError::NotAGraph(self.dimension() as usize));
        }
        // a graph is a forest iff E = V - (number of components)
        let adj = self.neighbors();
        let mut seen: BTreeSet<&String> = BTreeSet::new();
        let mut components = 0;
        for start in adj.keys() {
            if !seen.insert(start) {
                continue;
            }
            components += 1;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in &adj[v] {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
        }
        Ok(self.count(2) + components == adj.len())
    }

    /// DOT export of the 1-skeleton.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph complex {\n");
        for v in self.vertices() {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for e in self.simplices.iter().filter(|s| s.len() == 2) {
            out.push_str(&format!("  \"{}\" -- \"{}\";\n", e[0], e[1]));
        }
        out.push_str("}\n");
        out
    }
}

pub fn barycenter_label(s: &[String]) -> String {
    if s.len() == 1 {
        s[0].clone()
    } else {
        format!("({})", s.join(","))
    }
}

/// Strict chains `σ₀ ⊊ ⋯ ⊊ top` in the face poset.
fn chains_ending_at(top: &Simplex) -> Vec<Vec<Simplex>> {
    let mut out = vec![vec![top.clone()]];
    for face in nonempty_faces(top) {
        if face.len() == top.len() {
            continue;
        }
        for mut chain in chains_ending_at(&face) {
            chain.push(top.clone());
            out.push(chain);
        }
    }
    out
}
