//! Instance and proof constructors.

pub mod instances;
pub mod tseitin;

pub use instances::{pn_polytope, qn_polytope, qn_split_refutation, qn_split_refutation_with, thin_segment, SideCheck, SplitRefutation};
pub use tseitin::{complete, cycle, format_graph, grid, parse_graph, tseitin_polytope, tseitin_sp_refutation, TseitinInstance};
