//! Online myopic network covering.
//!
//! A crawler starts from one node of an unknown connected graph and recruits
//! nodes one at a time. Recruiting a node reveals its neighbors (one-hop
//! lookahead); the cover is the set of recruited nodes plus everything they
//! revealed. This crate provides
//!
//! * [`graph`]: immutable graphs, edge-list loading, generators and rewiring,
//! * [`cover`]: the recruited / observed / uncovered partition,
//! * [`policy`]: the recruitment policies (BFS, DFS, random walks, SI, MOD,
//!   MEED, the two-hop oracle and uniform sampling),
//! * [`predict`]: analytic expected-cover curves and excess-degree formulas,
//! * [`harness`]: seeded, parallel Monte Carlo experiments and CSV export.

pub mod cover;
pub mod error;
pub mod graph;
pub mod harness;
pub mod policy;
pub mod predict;

pub use cover::{CoverState, StepRecord, Trace};
pub use error::{Error, Result};
pub use graph::{DegreeDistribution, Graph, GraphStats, NodeId};
pub use harness::{ErrorReport, TraceStats};
pub use policy::{Policy, PolicyKind};
pub use predict::PredictorCurve;

use rand::SeedableRng;

/// The generator used for every seeded stream in the crate.
pub type SimRng = rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}
