//! Proof objects, their verifiers and size statistics.

pub mod branching;
pub mod enumerative;
pub mod stats;

pub use branching::{
    certify, edge_row, leaf_relaxation, verify_branching_proof, verify_certified_proof, BranchNode, BranchingProof, FailingLeaf, Path, Report, Side,
};
pub use enumerative::{verify_enumerative_proof, EnumNode, EnumerativeProof};
pub use stats::{proof_stats, HasStats, ProofStats};
