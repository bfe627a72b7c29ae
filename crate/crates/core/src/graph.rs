//! Simplicial graphs, join/clique predicates and the maximal wide and strip
//! subgraph enumerators.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Largest vertex count representable by [`VertexSet`].
pub const MAX_VERTICES: usize = 128;

/// Vertex-count cap for [`brute_force_special_subgraphs`].
pub const BRUTE_FORCE_CAP: usize = 20;

/// A set of vertex indices stored as a two-word bitset.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u128 << v)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 128 {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        v < 128 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u128 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u128 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u128 << v)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct VertexIter(u128);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// Input formats accepted by [`parse_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Json,
}

impl GraphFormat {
    /// Guess the format from the first non-blank character.
    pub fn sniff(text: &str) -> Self {
        match text.trim_start().chars().next() {
            Some('{') => GraphFormat::Json,
            _ => GraphFormat::EdgeList,
        }
    }
}

/// A finite simplicial graph: symmetric, irreflexive adjacency over named
/// vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialGraph {
    names: Vec<String>,
    adjacency: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

impl SimplicialGraph {
    /// `n` isolated vertices named by `names`.
    pub fn with_vertices<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
    ) -> Result<Self, GraphError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VERTICES {
            return Err(GraphError::TooManyVertices {
                count: names.len(),
                max: MAX_VERTICES,
            });
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(GraphError::DuplicateVertex(n.clone()));
            }
        }
        let adjacency = vec![VertexSet::EMPTY; names.len()];
        Ok(SimplicialGraph { names, adjacency })
    }

    /// Build from labels and index pairs. Duplicate edges are idempotent.
    pub fn from_edges<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let mut g = Self::with_vertices(names)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Build from label pairs; vertices are ordered by first appearance.
    pub fn from_labeled_edges(edges: &[(&str, &str)]) -> Result<Self, GraphError> {
        let mut names: Vec<String> = Vec::new();
        let mut index = HashMap::new();
        let mut pairs = Vec::new();
        for &(a, b) in edges {
            let mut id = |s: &str| {
                *index.entry(s.to_string()).or_insert_with(|| {
                    names.push(s.to_string());
                    names.len() - 1
                })
            };
            pairs.push((id(a), id(b)));
        }
        Self::from_edges(names, &pairs)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.names.len();
        if u >= n || v >= n {
            return Err(GraphError::UnknownIndex(u.max(v)));
        }
        if u == v {
            return Err(GraphError::SelfLoop {
                vertex: self.names[u].clone(),
                line: None,
            });
        }
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adjacency[v]
    }

    /// Vertices adjacent to every member of `set` (all of `V` for the empty set).
    pub fn common_neighbors(&self, set: VertexSet) -> VertexSet {
        set.iter()
            .fold(self.vertices(), |acc, v| acc.intersection(self.adjacency[v]))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            for v in self.adjacency[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter()
            .all(|v| set.difference(self.adjacency[v].with(v)).is_empty())
    }

    /// Some non-adjacent pair of distinct vertices inside `set`.
    pub fn non_adjacent_pair(&self, set: VertexSet) -> Option<(usize, usize)> {
        for v in set.iter() {
            let far = set.difference(self.adjacency[v].with(v));
            if let Some(u) = far.first() {
                return Some((v.min(u), v.max(u)));
            }
        }
        None
    }

    /// Neighbors of `v` in the complement of the subgraph induced by `set`.
    pub fn complement_neighbors_within(&self, v: usize, set: VertexSet) -> VertexSet {
        set.difference(self.adjacency[v]).difference(VertexSet::singleton(v))
    }

    /// Connected components of the complement of the subgraph induced by `set`.
    pub fn complement_components(&self, set: VertexSet) -> Vec<VertexSet> {
        let mut remaining = set;
        let mut comps = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while let Some(v) = frontier.first() {
                frontier.remove(v);
                let fresh = self.complement_neighbors_within(v, set).difference(comp);
                comp = comp.union(fresh);
                frontier = frontier.union(fresh);
            }
            remaining = remaining.difference(comp);
            comps.push(comp);
        }
        comps
    }

    /// Connected components of the subgraph induced by `set`.
    pub fn components(&self, set: VertexSet) -> Vec<VertexSet> {
        let mut remaining = set;
        let mut comps = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while let Some(v) = frontier.first() {
                frontier.remove(v);
                let fresh = self.adjacency[v].intersection(set).difference(comp);
                comp = comp.union(fresh);
                frontier = frontier.union(fresh);
            }
            remaining = remaining.difference(comp);
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components(self.vertices()).len() <= 1
    }

    /// The subgraph induced by `set`, with vertices in ascending index order.
    pub fn induced(&self, set: VertexSet) -> SimplicialGraph {
        let members: Vec<usize> = set.iter().collect();
        let names = members.iter().map(|&v| self.names[v].clone()).collect();
        let adjacency = members
            .iter()
            .map(|&u| {
                members
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.adjacent(u, v))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        SimplicialGraph { names, adjacency }
    }

    /// Relabel: vertex `v` of `self` becomes vertex `perm[v]` of the result.
    pub fn permuted(&self, perm: &[usize]) -> SimplicialGraph {
        let n = self.len();
        let mut names = vec![String::new(); n];
        let mut adjacency = vec![VertexSet::EMPTY; n];
        for v in 0..n {
            names[perm[v]] = self.names[v].clone();
            adjacency[perm[v]] = self.adjacency[v].iter().map(|u| perm[u]).collect();
        }
        SimplicialGraph { names, adjacency }
    }

    /// Image of a vertex set under [`SimplicialGraph::permuted`]'s relabeling.
    pub fn permute_set(set: VertexSet, perm: &[usize]) -> VertexSet {
        set.iter().map(|v| perm[v]).collect()
    }

    pub fn labels(&self, set: VertexSet) -> Vec<String> {
        set.iter().map(|v| self.names[v].clone()).collect()
    }

    pub fn format_set(&self, set: VertexSet) -> String {
        format!("{{{}}}", self.labels(set).join(","))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = GraphJson {
            vertices: self.names.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(u, v)| [self.names[u].clone(), self.names[v].clone()])
                .collect(),
        };
        serde_json::to_value(doc).expect("graph serializes")
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self, GraphError> {
        let doc: GraphJson =
            serde_json::from_value(value).map_err(|e| GraphError::Syntax {
                line: e.line(),
                message: e.to_string(),
            })?;
        from_doc(doc)
    }
}

impl fmt::Debug for SimplicialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(u, v)| format!("{}-{}", self.names[u], self.names[v]))
            .collect();
        write!(f, "Graph[{}; {}]", self.names.join(","), edges.join(" "))
    }
}

fn from_doc(doc: GraphJson) -> Result<SimplicialGraph, GraphError> {
    let mut g = SimplicialGraph::with_vertices(doc.vertices)?;
    for [a, b] in doc.edges {
        let u = g.index_of(&a).ok_or_else(|| GraphError::UnknownVertex(a.clone()))?;
        let v = g.index_of(&b).ok_or_else(|| GraphError::UnknownVertex(b.clone()))?;
        if u == v {
            return Err(GraphError::SelfLoop {
                vertex: a,
                line: None,
            });
        }
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Parse a graph. Edge lists are one edge per line (a lone label declares an
/// isolated vertex); `#` starts a comment. Vertex order is first appearance.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<SimplicialGraph, GraphError> {
    match format {
        GraphFormat::Json => {
            let doc: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Syntax {
                line: e.line(),
                message: e.to_string(),
            })?;
            from_doc(doc)
        }
        GraphFormat::EdgeList => {
            let mut names: Vec<String> = Vec::new();
            let mut index: HashMap<String, usize> = HashMap::new();
            let mut edges = Vec::new();
            for (lineno, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap_or("");
                let tokens: Vec<&str> = line.split_whitespace().collect();
                if tokens.is_empty() {
                    continue;
                }
                if tokens.len() > 2 {
                    return Err(GraphError::Syntax {
                        line: lineno + 1,
                        message: format!("expected at most two labels, found {}", tokens.len()),
                    });
                }
                let ids: Vec<usize> = tokens
                    .iter()
                    .map(|t| {
                        *index.entry(t.to_string()).or_insert_with(|| {
                            names.push(t.to_string());
                            names.len() - 1
                        })
                    })
                    .collect();
                if let [u, v] = ids[..] {
                    if u == v {
                        return Err(GraphError::SelfLoop {
                            vertex: tokens[0].to_string(),
                            line: Some(lineno + 1),
                        });
                    }
                    edges.push((u, v));
                }
            }
            SimplicialGraph::from_edges(names, &edges)
        }
    }
}

/// The complement graph on the same vertex list.
pub fn complement(g: &SimplicialGraph) -> SimplicialGraph {
    let all = g.vertices();
    let adjacency = (0..g.len())
        .map(|v| all.difference(g.neighbors(v)).difference(VertexSet::singleton(v)))
        .collect();
    SimplicialGraph {
        names: g.names.clone(),
        adjacency,
    }
}

/// A join decomposition of an induced subgraph: both sides nonempty, every
/// vertex of one side adjacent to every vertex of the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JoinWitness {
    pub left: VertexSet,
    pub right: VertexSet,
}

/// Join witness for `induced(g, set)`, if the complement of that subgraph is
/// disconnected. The left side is the smallest complement component.
pub fn is_join(g: &SimplicialGraph, set: VertexSet) -> Result<Option<JoinWitness>, GraphError> {
    if set.len() < 2 {
        return Err(GraphError::JoinTooSmall(set.len()));
    }
    let comps = g.complement_components(set);
    if comps.len() < 2 {
        return Ok(None);
    }
    let left = *comps
        .iter()
        .min_by_key(|c| (c.len(), c.first()))
        .expect("at least two components");
    Ok(Some(JoinWitness {
        left,
        right: set.difference(left),
    }))
}

/// `induced(g, set)` splits as a join with a non-adjacent pair on each side.
pub fn is_wide_set(g: &SimplicialGraph, set: VertexSet) -> bool {
    let comps = g.complement_components(set);
    comps.len() >= 2 && comps.iter().filter(|c| c.len() >= 2).count() >= 2
}

/// Whether a strip may consist of a bare non-adjacent pair (empty clique side).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StripPolicy {
    /// Strips have at least three vertices.
    #[default]
    ExcludeBarePairs,
    AllowBarePairs,
}

impl StripPolicy {
    fn min_size(self) -> usize {
        match self {
            StripPolicy::ExcludeBarePairs => 3,
            StripPolicy::AllowBarePairs => 2,
        }
    }
}

/// `induced(g, set)` is a non-adjacent pair joined to a nonempty clique.
pub fn is_strip_set(g: &SimplicialGraph, set: VertexSet) -> bool {
    is_strip_set_with(g, set, StripPolicy::ExcludeBarePairs)
}

pub fn is_strip_set_with(g: &SimplicialGraph, set: VertexSet, policy: StripPolicy) -> bool {
    if set.len() < policy.min_size() {
        return false;
    }
    let mut missing = 0;
    for v in set.iter() {
        missing += g.complement_neighbors_within(v, set).len();
        if missing > 2 {
            return false;
        }
    }
    missing == 2
}

/// The sets Ω (maximal wide) and Ψ (maximal strip) of vertex sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecialSubgraphs {
    pub wide: Vec<VertexSet>,
    pub strip: Vec<VertexSet>,
}

impl SpecialSubgraphs {
    pub fn compute(g: &SimplicialGraph) -> Self {
        Self::compute_with(g, StripPolicy::default())
    }

    pub fn compute_with(g: &SimplicialGraph, policy: StripPolicy) -> Self {
        SpecialSubgraphs {
            wide: maximal_wide_subgraphs(g),
            strip: maximal_strip_subgraphs_with(g, policy),
        }
    }
}

/// Keep the inclusion-maximal members, deduplicated and sorted by bitset.
pub fn inclusion_maximal(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// Ω: the inclusion-maximal wide vertex sets.
///
/// A wide set `A ∪ B` with `A × B ⊆ E` lies inside `N(X) ∪ X` for the closed
/// set `X = N(N(B))`, and that union is itself wide. So it suffices to walk
/// the intersection-closed family of common neighborhoods `X = N(S)` that are
/// not cliques. Seeds are the common neighborhoods of non-adjacent pairs, i.e.
/// the induced squares; further sets come from intersecting with single
/// neighborhoods until a fixpoint.
pub fn maximal_wide_subgraphs(g: &SimplicialGraph) -> Vec<VertexSet> {
    let n = g.len();
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut stack = Vec::new();
    for a in 0..n {
        for c in (a + 1)..n {
            if g.adjacent(a, c) {
                continue;
            }
            let x = g.neighbors(a).intersection(g.neighbors(c));
            if !g.is_clique(x) && seen.insert(x) {
                stack.push(x);
            }
        }
    }
    let mut candidates = Vec::new();
    while let Some(x) = stack.pop() {
        let a = g.common_neighbors(x);
        if !g.is_clique(a) {
            candidates.push(a.union(x));
        }
        for v in 0..n {
            let y = x.intersection(g.neighbors(v));
            if y != x && !g.is_clique(y) && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    inclusion_maximal(candidates)
}

/// Ψ: the inclusion-maximal strip vertex sets.
pub fn maximal_strip_subgraphs(g: &SimplicialGraph) -> Vec<VertexSet> {
    maximal_strip_subgraphs_with(g, StripPolicy::default())
}

pub fn maximal_strip_subgraphs_with(g: &SimplicialGraph, policy: StripPolicy) -> Vec<VertexSet> {
    let n = g.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if g.adjacent(a, b) {
                continue;
            }
            let pair = VertexSet::singleton(a).with(b);
            let common = g.neighbors(a).intersection(g.neighbors(b));
            if common.is_empty() {
                if policy == StripPolicy::AllowBarePairs {
                    out.push(pair);
                }
                continue;
            }
            for k in maximal_cliques(g, common) {
                out.push(pair.union(k));
            }
        }
    }
    inclusion_maximal(out)
}

/// Maximal cliques of `induced(g, within)` by pivoted Bron–Kerbosch.
pub fn maximal_cliques(g: &SimplicialGraph, within: VertexSet) -> Vec<VertexSet> {
    fn expand(
        g: &SimplicialGraph,
        r: VertexSet,
        mut p: VertexSet,
        mut x: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r);
            }
            return;
        }
        let pivot = p
            .union(x)
            .iter()
            .max_by_key(|&u| g.neighbors(u).intersection(p).len())
            .expect("p nonempty");
        for v in p.difference(g.neighbors(pivot)).iter() {
            let nv = g.neighbors(v);
            expand(g, r.with(v), p.intersection(nv), x.intersection(nv), out);
            p.remove(v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    if within.is_empty() {
        return out;
    }
    expand(g, VertexSet::EMPTY, within, VertexSet::EMPTY, &mut out);
    out.sort_unstable();
    out
}

/// Ω and Ψ by exhaustive subset enumeration. Test oracle for the enumerators.
pub fn brute_force_special_subgraphs(g: &SimplicialGraph) -> Result<SpecialSubgraphs, GraphError> {
    brute_force_special_subgraphs_with(g, StripPolicy::default())
}

pub fn brute_force_special_subgraphs_with(
    g: &SimplicialGraph,
    policy: StripPolicy,
) -> Result<SpecialSubgraphs, GraphError> {
    let n = g.len();
    if n > BRUTE_FORCE_CAP {
        return Err(GraphError::TooManyVertices {
            count: n,
            max: BRUTE_FORCE_CAP,
        });
    }
    let mut wide = Vec::new();
    let mut strip = Vec::new();
    for bits in 0u128..(1u128 << n) {
        let t = VertexSet::from_bits(bits);
        if is_wide_set(g, t) {
            wide.push(t);
        }
        if is_strip_set_with(g, t, policy) {
            strip.push(t);
        }
    }
    Ok(SpecialSubgraphs {
        wide: inclusion_maximal(wide),
        strip: inclusion_maximal(strip),
    })
}

/// The named test graphs.
pub mod named {
    use super::SimplicialGraph;

    fn build(edges: &[(&str, &str)]) -> SimplicialGraph {
        SimplicialGraph::from_labeled_edges(edges).expect("fixture is simplicial")
    }

    /// Path a-b-c.
    pub fn p3() -> SimplicialGraph {
        build(&[("a", "b"), ("b", "c")])
    }

    /// 4-cycle a-b-c-d.
    pub fn c4() -> SimplicialGraph {
        build(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    }

    /// 5-cycle on vertices 1..5.
    pub fn c5() -> SimplicialGraph {
        build(&[("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "1")])
    }

    pub fn k3() -> SimplicialGraph {
        build(&[("a", "b"), ("b", "c"), ("a", "c")])
    }

    /// Complete bipartite graph with parts {x,y} and {u,v,w}.
    pub fn k23() -> SimplicialGraph {
        build(&[
            ("x", "u"),
            ("x", "v"),
            ("x", "w"),
            ("y", "u"),
            ("y", "v"),
            ("y", "w"),
        ])
    }

    /// Three squares chained along non-adjacent pairs.
    pub fn t6() -> SimplicialGraph {
        build(&[
            ("a", "b"),
            ("a", "d"),
            ("b", "c"),
            ("b", "e"),
            ("c", "d"),
            ("c", "f"),
            ("d", "e"),
            ("e", "f"),
        ])
    }

    /// Two 4-cycles a-b-c-d and d-e-f-g sharing the vertex d.
    pub fn two_squares() -> SimplicialGraph {
        build(&[
            ("a", "b"),
            ("b", "c"),
            ("c", "d"),
            ("d", "a"),
            ("d", "e"),
            ("e", "f"),
            ("f", "g"),
            ("g", "d"),
        ])
    }

    /// Two vertices, no edge.
    pub fn two_points() -> SimplicialGraph {
        SimplicialGraph::with_vertices(["a", "b"]).expect("distinct labels")
    }

    /// Every named fixture with its file stem.
    pub fn all() -> Vec<(&'static str, SimplicialGraph)> {
        vec![
            ("p3", p3()),
            ("c4", c4()),
            ("c5", c5()),
            ("k3", k3()),
            ("k23", k23()),
            ("t6", t6()),
            ("two_squares", two_squares()),
        ]
    }
}
