//! Exact pattern complexity of the squiral tiling.
//!
//! The squiral tiling is the fixed point of a 3x3 block substitution on
//! `{0, 1}`. This crate counts the distinct `m x n` patterns occurring in it
//! three independent ways: by enumerating windows of supertiles until the set
//! stops growing, by a recursion system over `(A_n, B_n, C_n)`, and by a
//! closed formula for `A_n`.

pub mod complexity;
pub mod config;
pub mod error;
pub mod grid;
pub mod pattern;
pub mod sequences;
pub mod substitution;
pub mod verify;

pub use complexity::{ExtensionReport, Oracle, PartitionReport, SaturationResult};
pub use config::Limits;
pub use error::{Error, Result};
pub use grid::{BinaryGrid, Cell};
pub use pattern::{
    enumerate_phase_windows, enumerate_windows, set_equals, window, PatternKey, PatternSet,
};
pub use sequences::{
    closed_form_a, closed_form_params, ilog3, recursion_triple, sequence_table,
    simplified_recursion_a, ClosedFormParams, ComplexityTriple, Count,
};
pub use substitution::{
    complement, inflate, squiral_rule, supertile, supertile_within, SubstitutionRule, Supertiles,
};
