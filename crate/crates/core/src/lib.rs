//! Computational tools for right-angled Coxeter groups `W_Γ`.
//!
//! * [`graph`]: defining graphs, joins, maximal wide and strip subgraphs.
//! * [`hypergraph`]: the hypergraph index and the divergence / thickness /
//!   relative hyperbolicity classification derived from it.
//! * [`words`]: the word problem, normal forms and complete words.
//! * [`cayley`]: Cayley graph balls and empirical geodesic divergence.
//! * [`diagram`]: rewrite disk diagrams, dual curves, spokes and fences.
//! * [`batch`]: seeded Erdős–Rényi classification sweeps.

pub mod batch;
pub mod cayley;
pub mod diagram;
pub mod error;
pub mod exec;
pub mod graph;
pub mod hypergraph;
pub mod words;

pub use error::{BatchError, CayleyError, DiagramError, GraphError, WordError};
pub use exec::Execution;
pub use graph::{parse_graph, GraphFormat, SimplicialGraph, SpecialSubgraphs, VertexSet};
pub use hypergraph::{classify, hypergraph_index, ClassificationReport, HypergraphIndex};
pub use words::{NormalForm, Word};
