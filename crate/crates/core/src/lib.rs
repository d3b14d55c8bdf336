//! Exact-arithmetic proofs of integer infeasibility for rational polytopes.

pub mod error;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod proof;
pub mod format;
pub mod diophantine;
pub mod recompile;
pub mod enum_cp;
pub mod generators;

pub use error::{Error, Result};
pub use linalg::{BitSize, IntVector, Integer, NormKind, RatVector, Rational, Vector};
pub use lp::{FarkasCertificate, InequalitySystem, LpOutcome, Sense};
