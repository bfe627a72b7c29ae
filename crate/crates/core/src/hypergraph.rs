//! The hypergraphs `Λ_i` of a defining graph, the hypergraph index, and the
//! classification of divergence, strong thickness and relative hyperbolicity
//! that it determines.

use std::fmt;

use serde::ser::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::graph::{
    is_strip_set_with, SimplicialGraph, SpecialSubgraphs, StripPolicy, VertexSet,
};

/// One stage `Λ_i`: a set of distinct nonempty hyperedges over `V(Γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub stage: usize,
    hyperedges: Vec<VertexSet>,
}

impl Hypergraph {
    pub fn new(stage: usize, mut hyperedges: Vec<VertexSet>) -> Self {
        hyperedges.retain(|e| !e.is_empty());
        hyperedges.sort_unstable();
        hyperedges.dedup();
        Hypergraph { stage, hyperedges }
    }

    pub fn hyperedges(&self) -> &[VertexSet] {
        &self.hyperedges
    }

    pub fn len(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperedges.is_empty()
    }

    pub fn contains(&self, edge: VertexSet) -> bool {
        self.hyperedges.binary_search(&edge).is_ok()
    }

    /// Union of all hyperedges.
    pub fn span(&self) -> VertexSet {
        self.hyperedges
            .iter()
            .fold(VertexSet::EMPTY, |acc, e| acc.union(*e))
    }

    pub fn to_json(&self, g: &SimplicialGraph, detailed: bool) -> Value {
        if detailed {
            json!({
                "stage": self.stage,
                "hyperedges": self.hyperedges.iter().map(|e| g.labels(*e)).collect::<Vec<_>>(),
            })
        } else {
            json!({ "stage": self.stage, "hyperedge_count": self.len() })
        }
    }
}

/// `Λ_0`: the vertex sets of Ω ∪ Ψ.
pub fn lambda0(special: &SpecialSubgraphs) -> Hypergraph {
    let edges = special.wide.iter().chain(&special.strip).copied().collect();
    Hypergraph::new(0, edges)
}

/// `Λ_{i+1}` from `Λ_i`: unions over the classes of the chain relation in
/// which consecutive hyperedges share a non-adjacent pair of `Γ`.
pub fn merge_step(g: &SimplicialGraph, current: &Hypergraph) -> Hypergraph {
    let edges = current.hyperedges();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            if g.non_adjacent_pair(edges[i].intersection(edges[j])).is_some() {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut unions = vec![VertexSet::EMPTY; edges.len()];
    for (i, e) in edges.iter().enumerate() {
        let r = find(&mut parent, i);
        unions[r] = unions[r].union(*e);
    }
    Hypergraph::new(current.stage + 1, unions)
}

/// A hypergraph index: a non-negative integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HypergraphIndex {
    Finite(u32),
    Infinite,
}

impl HypergraphIndex {
    pub fn finite(self) -> Option<u32> {
        match self {
            HypergraphIndex::Finite(k) => Some(k),
            HypergraphIndex::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == HypergraphIndex::Infinite
    }

    pub fn to_json(self) -> Value {
        match self {
            HypergraphIndex::Finite(k) => json!(k),
            HypergraphIndex::Infinite => json!("inf"),
        }
    }
}

impl fmt::Display for HypergraphIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HypergraphIndex::Finite(k) => write!(f, "{k}"),
            HypergraphIndex::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for HypergraphIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            HypergraphIndex::Finite(k) => s.serialize_u32(*k),
            HypergraphIndex::Infinite => s.serialize_str("inf"),
        }
    }
}

/// The index together with every stage computed on the way.
#[derive(Clone, Debug)]
pub struct IndexComputation {
    pub index: HypergraphIndex,
    pub special: SpecialSubgraphs,
    pub trace: Vec<Hypergraph>,
}

pub fn hypergraph_index(g: &SimplicialGraph) -> IndexComputation {
    hypergraph_index_with(g, StripPolicy::default())
}

/// Iterate [`merge_step`] from `Λ_0` until a hyperedge equals `V(Γ)` or the
/// hyperedge set stops changing.
pub fn hypergraph_index_with(g: &SimplicialGraph, policy: StripPolicy) -> IndexComputation {
    let special = SpecialSubgraphs::compute_with(g, policy);
    index_from_special(g, special)
}

/// Same as [`hypergraph_index`], starting from precomputed Ω and Ψ.
pub fn index_from_special(g: &SimplicialGraph, special: SpecialSubgraphs) -> IndexComputation {
    let full = g.vertices();
    let mut trace = vec![lambda0(&special)];
    if special.wide.is_empty() {
        return IndexComputation {
            index: HypergraphIndex::Infinite,
            special,
            trace,
        };
    }
    loop {
        let current = trace.last().expect("trace starts with Λ_0");
        if current.contains(full) {
            let index = HypergraphIndex::Finite(current.stage as u32);
            return IndexComputation { index, special, trace };
        }
        let next = merge_step(g, current);
        if next.hyperedges() == current.hyperedges() {
            return IndexComputation {
                index: HypergraphIndex::Infinite,
                special,
                trace,
            };
        }
        trace.push(next);
    }
}

/// Number of ends of `W_Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ends {
    /// Finite group.
    Finite,
    Two,
    InfinitelyMany,
    One,
}

impl Ends {
    pub fn as_str(self) -> &'static str {
        match self {
            Ends::Finite => "finite",
            Ends::Two => "two",
            Ends::InfinitelyMany => "infinitely_many",
            Ends::One => "one",
        }
    }
}

impl fmt::Display for Ends {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Source of the ends verdict, carried in reports.
pub const ENDS_BASIS: &str = "derived: standard theory";

/// Ends of `W_Γ` from the standard criteria: a clique gives a finite group, a
/// non-adjacent pair joined to a (possibly empty) clique gives two ends, and
/// a disconnected graph or one with a separating clique gives infinitely many.
pub fn ends_classification(g: &SimplicialGraph) -> Ends {
    let all = g.vertices();
    if g.is_clique(all) {
        Ends::Finite
    } else if is_strip_set_with(g, all, StripPolicy::AllowBarePairs) {
        Ends::Two
    } else if !g.is_connected() || has_separating_clique(g) {
        Ends::InfinitelyMany
    } else {
        Ends::One
    }
}

/// An inclusion-minimal clique `C` (possibly empty) such that `Γ − C` is
/// disconnected.
pub fn separating_clique(g: &SimplicialGraph) -> Option<VertexSet> {
    fn search(
        g: &SimplicialGraph,
        clique: VertexSet,
        candidates: VertexSet,
    ) -> Option<VertexSet> {
        if g.components(g.vertices().difference(clique)).len() >= 2 {
            return Some(clique);
        }
        for v in candidates.iter() {
            let higher = candidates
                .intersection(g.neighbors(v))
                .iter()
                .filter(|&u| u > v)
                .collect();
            if let Some(c) = search(g, clique.with(v), higher) {
                return Some(c);
            }
        }
        None
    }
    let mut clique = search(g, VertexSet::EMPTY, g.vertices())?;
    for v in clique.iter() {
        let smaller = clique.difference(VertexSet::singleton(v));
        if g.components(g.vertices().difference(smaller)).len() >= 2 {
            clique = smaller;
        }
    }
    Some(clique)
}

pub fn has_separating_clique(g: &SimplicialGraph) -> bool {
    separating_clique(g).is_some()
}

/// Divergence of `W_Γ` up to the usual equivalence of functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Divergence {
    /// `r^degree`.
    Polynomial(u32),
    Exponential,
    Infinite,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divergence::Polynomial(d) => write!(f, "r^{d}"),
            Divergence::Exponential => f.write_str("exponential"),
            Divergence::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub index: HypergraphIndex,
    pub divergence: Divergence,
    /// Order of strong thickness; `None` when not strongly thick.
    pub thickness_order: Option<u32>,
    pub relatively_hyperbolic: bool,
    pub ends: Ends,
    pub lambda_trace: Vec<Hypergraph>,
}

impl ClassificationReport {
    /// Fixed-schema JSON. With `trace` the stages list every hyperedge,
    /// otherwise only hyperedge counts.
    pub fn to_json(&self, g: &SimplicialGraph, trace: bool) -> Value {
        json!({
            "index": self.index.to_json(),
            "divergence": self.divergence.to_string(),
            "thick_order": match self.thickness_order {
                Some(k) => json!(k),
                None => json!("none"),
            },
            "rel_hyp": self.relatively_hyperbolic,
            "ends": self.ends.as_str(),
            "ends_basis": ENDS_BASIS,
            "stages": self.lambda_trace.iter().map(|h| h.to_json(g, trace)).collect::<Vec<_>>(),
        })
    }

    /// Checks the coupling between index and the derived verdicts.
    pub fn is_coherent(&self) -> bool {
        match self.index {
            HypergraphIndex::Finite(k) => {
                self.divergence == Divergence::Polynomial(k + 1)
                    && self.thickness_order == Some(k)
                    && !self.relatively_hyperbolic
            }
            HypergraphIndex::Infinite => {
                self.relatively_hyperbolic
                    && self.thickness_order.is_none()
                    && matches!(self.divergence, Divergence::Exponential | Divergence::Infinite)
            }
        }
    }
}

pub fn classify(g: &SimplicialGraph) -> ClassificationReport {
    let computation = hypergraph_index(g);
    let ends = ends_classification(g);
    let (divergence, thickness_order) = match computation.index {
        HypergraphIndex::Finite(k) => (Divergence::Polynomial(k + 1), Some(k)),
        HypergraphIndex::Infinite if ends == Ends::One => (Divergence::Exponential, None),
        HypergraphIndex::Infinite => (Divergence::Infinite, None),
    };
    ClassificationReport {
        index: computation.index,
        divergence,
        thickness_order,
        relatively_hyperbolic: computation.index.is_infinite(),
        ends,
        lambda_trace: computation.trace,
    }
}
