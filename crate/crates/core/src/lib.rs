//! Depth-first search for j-tight paths in random k-uniform hypergraphs,
//! with exact calculators, brute-force oracles and an experiment harness.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod experiments;
pub mod hashing;
pub mod hypergraph;
pub mod monitor;
pub mod oracle;
pub mod path;
pub mod pathfinder;
pub mod trace;
pub mod vset;

pub use combinatorics::{structural_params, theorem_bounds, threshold_p0, z_ell, StructuralParams};
pub use error::{Error, Result};
pub use hypergraph::{EdgeQuery, ExplicitHypergraph, LazyHypergraph};
pub use monitor::{StopReason, StoppingConfig};
pub use path::JTightPath;
pub use pathfinder::{PathFinder, RunConfig, Step};
pub use trace::{RunSummary, RunTrace, TraceEvent, TraceLevel};
pub use vset::{JSet, KSet, VertexId, VertexSet};
