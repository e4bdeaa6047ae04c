//! Balanced clustering with a spanning structure over the clusters.
//!
//! A solution to the problems in this crate is two things at once: a set of
//! clusters balanced by element-type structure against a target vector, and
//! a spanning tree over those clusters. Solution quality is the bicriteria
//! vector `(q_cb, q_s)`: the worst per-cluster deviation from the target
//! structure, and the proximity of the cluster tree to a required shape.
//!
//! Four greedy solving strategies are provided, plus single-node local
//! improvement, a Pareto sweep across all of them, and brute-force oracles
//! for verifying results on small instances:
//!
//! - [`strategies::strategy_balance_then_span`]: cluster first, then span.
//! - [`strategies::strategy_spanning_then_balance`]: build a minimum
//!   spanning tree over the items, then partition it with one of the four
//!   condensing schemes in [`schemes`].
//! - [`strategies::strategy_direct`]: agglomeration under the balance
//!   constraint directly on the instance graph.
//! - [`strategies::strategy_layered`]: per-layer balancing plus layer
//!   connection through cluster heads.
//!
//! Start with the runnable programs in `examples/`; `examples/paper_19.json`
//! is the bundled 19-item reference instance whose known-good trace the
//! crate reproduces step by step (see [`oracle::replay_paper_trace`]).

pub mod error;
pub mod fixture;
pub mod io;
pub mod model;
pub mod oracle;
pub mod quality;
pub mod schemes;
pub mod spanning;
pub mod strategies;

pub use error::{Error, Result};
pub use model::{
    Cluster, ClusteringSolution, Item, ItemId, ItemType, ProblemDesc, ProblemInstance, RootedTree,
    TargetTreeSpec, WeightedEdge,
};
pub use quality::{QualityVector, StructureEstimate};
pub use schemes::CondensingKind;
