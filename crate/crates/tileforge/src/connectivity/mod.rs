//! Connectivity analysis: digit graphs, level sets, neighbor bounds,
//! shell certificates, the hull-overlap sufficient condition, and the
//! Jordan-form pipeline for building connected digit systems.

mod graph;
mod levels;
mod neighbors;
mod pipeline;
mod shell;
mod sufficiency;

pub use graph::{is_b_connected, ConnectivityCheck, UnionFind};
pub use levels::{
    check_level_connectivity, check_level_connectivity_with, level_set, level_set_with,
    LevelConnectivity,
};
pub use neighbors::{
    edge_neighbors, neighbor_set_bounded, neighbor_set_bounded_with, EdgeNeighbors, NeighborSet,
};
pub use pipeline::{pipeline_connected_digits, BlockReport, PipelineOutcome};
pub use shell::{shell_certificate, ShellCertificate};
pub use sufficiency::{
    sufficient_condition, sufficient_condition_with, ComponentWitness, ConnectivityVerdict,
    Criterion, EdgeCheck, SufficiencyReport, VerdictStatus,
};
