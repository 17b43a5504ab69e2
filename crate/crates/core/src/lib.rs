//! Exact neighbourhood graphs, Ollivier–Ricci curvature and structural /
//! regular equivalence on graphs and hypergraphs.

pub mod cycles;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod neighborhood;
pub mod partitions;
pub mod random;
pub mod report;
pub mod similarity;
pub mod transport;

pub use equivalence::{EquivalenceWitness, HierarchyLevel, Violation};
pub use error::{Error, ErrorKind, Result};
pub use graph::{Bipartition, Distance, Graph, Hypergraph, Partition, Vertex, VertexSet};
pub use neighborhood::{NeighborhoodGraph, PathLimits, WalkMode};
pub use partitions::{ConstructionReport, Precondition, RemovalSet};
pub use similarity::{CosineSimilarity, SimilarityReport, WalkKind};
pub use transport::{Coupling, CurvatureResult, Measure, Rational};
