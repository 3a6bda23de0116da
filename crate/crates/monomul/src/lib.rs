//! Generator and verifier for multipliers built from monolithic blocks.
//!
//! [`design::build_design`] runs the whole pipeline for one configuration:
//! block truth tables, minimization, operand splitting, summand packing and
//! lowering to a netlist. The [`emit`] module renders covers as Berkeley
//! PLA, netlists as Verilog and statistics as JSON or CSV; [`verify`] checks
//! a netlist against integer multiplication and [`reproduce`] recomputes the
//! published count tables.

pub mod design;
pub mod emit;
mod error;
pub mod published;
pub mod reproduce;
pub mod verify;

pub use design::{build_design, Design, DesignConfig, Minimizer};
pub use error::Error;
pub use monomul_core as core;
