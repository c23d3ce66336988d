pub mod arith;
pub mod base_complex;
pub mod error;
pub mod fibration;
pub mod intlattice;
pub mod lattice_core;
pub mod lp;
pub mod moment_numeric;
pub mod monodromy_mirror;
pub mod report;
pub mod triangulation;

pub use error::{Error, Result};
