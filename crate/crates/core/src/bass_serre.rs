//! Finite pieces of the Bass–Serre tree of `H_P *_{H_e} H_Q`.
//!
//! Vertices are cosets `gH_P` (pair vertices) and `gH_Q` (triple vertices);
//! edges are cosets `gH_e` joining `gH_P` to `gH_Q`. A coset is stored by
//! its canonical representative: the normal form of `g` with the `H_e`
//! tail stripped and any trailing syllable from the vertex's own factor
//! dropped.
//!
//! Pair vertices have infinite valence (`β` has infinite order), so balls
//! are truncated to edges `gβ^k H_e` with `|k| ≤ max_power`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::amalgam::{normal_form, AmalgamNormalForm, GenWord, Syllable};
use crate::stabilizers::HeElement;

pub const DEFAULT_VERTEX_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("max_power must be at least 1")]
    InvalidMaxPower,
    #[error("ball exceeds the vertex cap of {0}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VertexKind {
    /// coset `gH_P`
    Pair,
    /// coset `gH_Q`
    Triple,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetVertex {
    pub kind: VertexKind,
    rep: Vec<Syllable>,
}

fn strip_tail(g: &AmalgamNormalForm) -> Vec<Syllable> {
    g.syllables().to_vec()
}

fn rep_form(rep: &[Syllable]) -> AmalgamNormalForm {
    AmalgamNormalForm::from_parts(rep.to_vec(), HeElement::IDENTITY).expect("canonical representatives are well formed")
}

fn format_rep(rep: &[Syllable]) -> String {
    if rep.is_empty() {
        return "1".to_string();
    }
    rep.iter()
        .map(|s| match s {
            Syllable::P(k) => format!("b^{k}"),
            Syllable::Q(a) => format!("d^{a}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl CosetVertex {
    pub fn base(kind: VertexKind) -> Self {
        CosetVertex { kind, rep: Vec::new() }
    }

    /// The coset `g H_kind`.
    pub fn of(kind: VertexKind, g: &AmalgamNormalForm) -> Self {
        let mut rep = strip_tail(g);
        let own = |s: &Syllable| match kind {
            VertexKind::Pair => s.is_p(),
            VertexKind::Triple => !s.is_p(),
        };
        if rep.last().is_some_and(own) {
            rep.pop();
        }
        CosetVertex { kind, rep }
    }

    pub fn rep(&self) -> &[Syllable] {
        &self.rep
    }

    /// The canonical representative as an element of the group.
    pub fn rep_element(&self) -> AmalgamNormalForm {
        rep_form(&self.rep)
    }

    /// A word `g` with `g · base = self`.
    pub fn witness(&self) -> GenWord {
        self.rep_element().to_word()
    }

    pub fn label(&self) -> String {
        let suffix = match self.kind {
            VertexKind::Pair => "H_P",
            VertexKind::Triple => "H_Q",
        };
        format!("{} {suffix}", format_rep(&self.rep))
    }
}

impl fmt::Display for CosetVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Coset `gH_e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeEdge {
    rep: Vec<Syllable>,
}

impl TreeEdge {
    pub fn base() -> Self {
        TreeEdge { rep: Vec::new() }
    }

    pub fn of(g: &AmalgamNormalForm) -> Self {
        TreeEdge { rep: strip_tail(g) }
    }

    pub fn rep(&self) -> &[Syllable] {
        &self.rep
    }

    pub fn endpoints(&self) -> (CosetVertex, CosetVertex) {
        let g = rep_form(&self.rep);
        (CosetVertex::of(VertexKind::Pair, &g), CosetVertex::of(VertexKind::Triple, &g))
    }

    pub fn label(&self) -> String {
        format!("{} H_e", format_rep(&self.rep))
    }
}

/// Left action of `g` on a vertex.
pub fn act(g: &GenWord, v: &CosetVertex) -> CosetVertex {
    act_nf(&normal_form(g), v)
}

pub fn act_nf(g: &AmalgamNormalForm, v: &CosetVertex) -> CosetVertex {
    CosetVertex::of(v.kind, &g.mul(&v.rep_element()))
}

pub fn act_edge(g: &GenWord, e: &TreeEdge) -> TreeEdge {
    TreeEdge::of(&normal_form(g).mul(&rep_form(&e.rep)))
}

/// Whether two vertices of the (untruncated) tree span an edge.
pub fn adjacent(u: &CosetVertex, v: &CosetVertex) -> bool {
    let (p, q) = match (u.kind, v.kind) {
        (VertexKind::Pair, VertexKind::Triple) => (u, v),
        (VertexKind::Triple, VertexKind::Pair) => (v, u),
        _ => return false,
    };
    // the edge is pH_e or qH_e, whichever representative is longer
    let extends =
        |long: &[Syllable], short: &[Syllable]| long.len() == short.len() + 1 && long[..short.len()] == *short;
    p.rep == q.rep || extends(&q.rep, &p.rep) || extends(&p.rep, &q.rep)
}

pub fn stabilizer_of(v: &CosetVertex, candidates: &[GenWord]) -> Vec<GenWord> {
    candidates.iter().filter(|g| act(g, v) == *v).cloned().collect()
}

pub fn edge_stabilizer_of(e: &TreeEdge, candidates: &[GenWord]) -> Vec<GenWord> {
    candidates.iter().filter(|g| act_edge(g, e) == *e).cloned().collect()
}

#[derive(Debug, Clone)]
pub struct TreeBall {
    vertices: Vec<CosetVertex>,
    index: HashMap<CosetVertex, usize>,
    edges: Vec<(usize, usize, TreeEdge)>,
    pub radius: usize,
    pub max_power: i64,
}

impl TreeBall {
    pub fn vertices(&self) -> &[CosetVertex] {
        &self.vertices
    }

    /// Edges as `(pair index, triple index, coset)`.
    pub fn edges(&self) -> &[(usize, usize, TreeEdge)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: &CosetVertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn index_of(&self, v: &CosetVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn degree(&self, v: &CosetVertex) -> usize {
        match self.index_of(v) {
            Some(i) => self.edges.iter().filter(|(a, b, _)| *a == i || *b == i).count(),
            None => 0,
        }
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (a, b, _) in &self.edges {
            adj[*a].push(*b);
            adj[*b].push(*a);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertices.len()
    }

    /// No repeated edges and every edge joins a pair vertex to a triple vertex.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|(a, b, _)| {
            self.vertices[*a].kind == VertexKind::Pair
                && self.vertices[*b].kind == VertexKind::Triple
                && seen.insert((*a, *b))
        })
    }

    pub fn is_tree(&self) -> bool {
        self.is_simple() && self.is_connected() && self.edges.len() + 1 == self.vertices.len()
    }

    /// DOT rendering, vertices in discovery order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph bass_serre {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = match v.kind {
                VertexKind::Pair => "circle",
                VertexKind::Triple => "square",
            };
            out.push_str(&format!("  v{i} [shape={shape}, label=\"{}\"];\n", v.label()));
        }
        for (a, b, _) in &self.edges {
            out.push_str(&format!("  v{a} -- v{b};\n"));
        }
        out.push_str("}\n");
        out
    }

    fn insert_vertex(&mut self, v: CosetVertex) -> (usize, bool) {
        if let Some(&i) = self.index.get(&v) {
            return (i, false);
        }
        let i = self.vertices.len();
        self.index.insert(v.clone(), i);
        self.vertices.push(v);
        (i, true)
    }

    fn insert_edge(&mut self, e: TreeEdge) -> (usize, usize) {
        let (p, q) = e.endpoints();
        let (pi, _) = self.insert_vertex(p);
        let (qi, _) = self.insert_vertex(q);
        self.edges.push((pi, qi, e));
        (pi, qi)
    }
}

/// The base edge `H_e` with its endpoints `H_P`, `H_Q`.
pub fn base_edge() -> TreeBall {
    let mut ball = TreeBall { vertices: Vec::new(), index: HashMap::new(), edges: Vec::new(), radius: 0, max_power: 1 };
    ball.insert_edge(TreeEdge::base());
    ball
}

pub fn ball(radius: usize, max_power: i64) -> Result<TreeBall, TreeError> {
    ball_with_cap(radius, max_power, DEFAULT_VERTEX_CAP)
}

/// Breadth-first coset enumeration out to distance `radius` from the base edge.
pub fn ball_with_cap(radius: usize, max_power: i64, cap: usize) -> Result<TreeBall, TreeError> {
    if max_power < 1 {
        return Err(TreeError::InvalidMaxPower);
    }
    let mut tree = base_edge();
    tree.radius = radius;
    tree.max_power = max_power;
    let mut queue: VecDeque<(usize, usize)> = VecDeque::from([(0, 0), (1, 0)]);
    while let Some((vi, depth)) = queue.pop_front() {
        if depth >= radius {
            continue;
        }
        let v = tree.vertices[vi].clone();
        let g = v.rep_element();
        let steps: Vec<AmalgamNormalForm> = match v.kind {
            VertexKind::Pair => (-max_power..=max_power)
                .filter(|&k| k != 0)
                .map(|k| g.mul(&AmalgamNormalForm::from_parts(vec![Syllable::P(k)], HeElement::IDENTITY).unwrap()))
                .chain(std::iter::once(g.clone()))
                .collect(),
            VertexKind::Triple => [0u8, 1, 2]
                .iter()
                .map(|&a| {
                    let s = if a == 0 { vec![] } else { vec![Syllable::Q(a)] };
                    g.mul(&AmalgamNormalForm::from_parts(s, HeElement::IDENTITY).unwrap())
                })
                .collect(),
        };
        for h in steps {
            let e = TreeEdge::of(&h);
            let (p, q) = e.endpoints();
            let other = if v.kind == VertexKind::Pair { q } else { p };
            if tree.contains(&other) {
                continue;
            }
            tree.insert_edge(e);
            if tree.vertices.len() > cap {
                return Err(TreeError::TooLarge(cap));
            }
            let oi = tree.index_of(&other).expect("just inserted");
            queue.push_back((oi, depth + 1));
        }
    }
    Ok(tree)
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitWitness {
    pub vertex: String,
    pub kind: VertexKind,
    pub word: String,
    pub verified: bool,
}

/// The quotient of a ball by the group action.
#[derive(Debug, Clone, Serialize)]
pub struct QuotientGraph {
    pub vertices: Vec<VertexKind>,
    pub edges: Vec<(VertexKind, VertexKind)>,
    pub pair_vertices_in_ball: usize,
    pub triple_vertices_in_ball: usize,
    pub edges_in_ball: usize,
    pub witnesses: Vec<OrbitWitness>,
}

impl QuotientGraph {
    pub fn is_single_edge(&self) -> bool {
        self.vertices.len() == 2 && self.edges.len() == 1 && self.witnesses.iter().all(|w| w.verified)
    }
}

/// Identifies vertices by kind, backed by explicit witnesses `g` with
/// `g · base = v` for up to `samples` vertices spread over the ball.
pub fn quotient(ball: &TreeBall, samples: usize) -> QuotientGraph {
    let mut vertices: Vec<VertexKind> = ball.vertices.iter().map(|v| v.kind).collect();
    vertices.sort();
    vertices.dedup();
    let mut edges: Vec<(VertexKind, VertexKind)> =
        ball.edges.iter().map(|(a, b, _)| (ball.vertices[*a].kind, ball.vertices[*b].kind)).collect();
    edges.sort();
    edges.dedup();

    let n = ball.vertices.len();
    let take = samples.min(n);
    let witnesses = (0..take)
        .map(|i| {
            let v = &ball.vertices[i * n / take.max(1)];
            let word = v.witness();
            let verified = act(&word, &CosetVertex::base(v.kind)) == *v;
            OrbitWitness { vertex: v.label(), kind: v.kind, word: word.to_string(), verified }
        })
        .collect();
    let count = |k| ball.vertices.iter().filter(|v| v.kind == k).count();
    QuotientGraph {
        vertices,
        edges,
        pair_vertices_in_ball: count(VertexKind::Pair),
        triple_vertices_in_ball: count(VertexKind::Triple),
        edges_in_ball: ball.edges.len(),
        witnesses,
    }
}
