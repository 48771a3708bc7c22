//! Hamilton (a,b)-cycles in k-uniform hypergraphs.
//!
//! An (a,b)-cycle is a cyclic sequence of disjoint blocks
//! `A_0, B_0, A_1, B_1, ..., A_{t-1}, B_{t-1}` with `|A_i| = a`, `|B_i| = b`,
//! where every `A_i ∪ B_i` and every `B_i ∪ A_{i+1}` (indices mod `t`) is an
//! edge. It is Hamilton when the blocks cover all vertices.
//!
//! * [`hypergraph`]: storage, degrees, links and the degree thresholds.
//! * [`sampling`]: uniform partitions and matchings under seeded streams.
//! * [`bihamilton`]: Moon–Moser check and Hamilton cycles in bipartite graphs.
//! * [`abfinder`]: the randomized finder, certificates and their verifier.
//! * [`oracle`]: exhaustive search and instance generators.
//! * [`fklab`]: Monte Carlo concentration experiments.
//! * [`format`]: text formats for instances, certificates and adjacency.

pub mod abfinder;
pub mod bihamilton;
pub mod error;
pub mod fklab;
pub mod format;
pub mod hypergraph;
pub mod oracle;
pub mod sampling;

pub use abfinder::{
    build_auxiliary, decompose_to_matchings, find_ab_cycle, find_in_product,
    ore_success_probability, verify_ab_cycle, ABCycleCert, FindConfig, FindError, RunReport,
    Violation,
};
pub use bihamilton::{
    exact_hamilton, find_hamilton, ore_check, BipartiteGraph, CycleCert, ExactOutcome, OreOutcome,
};
pub use error::{Error, Result};
pub use hypergraph::{
    binom, check_main1_hypothesis, infer_delta_a_lower, threshold_main1, Hypergraph,
    ProductHypergraph, ThresholdReport, Thresholds, VertexSet,
};
pub use sampling::{derive_seed, ABPartition, Matching, SeedSpec};
