//! Building blocks for monolithic-block hardware multipliers.
//!
//! A wide unsigned multiplier is assembled from small "monolithic" blocks,
//! each realized as a minimized two-level cover of its exact truth table.
//! The operands are split into groups, every group pair becomes a block
//! product, and the shifted block products are packed into as few
//! concatenated summands as possible before the final adder tree.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, the
//! verification harness and the command-line driver live in the `monomul`
//! crate.
//!
//! Bit numbering is 0-based and least-significant-first everywhere: input
//! bit `i < w_a` of a block is `a[i]`, input bit `w_a + j` is `b[j]`, and
//! output bit `t` is `r[t]`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod bits;
pub mod compose;
mod error;
pub mod minimize;
pub mod netlist;
mod primes;
pub mod reduce;
pub mod tables;

pub use compose::{
    block_requirements, default_group_width, plan_partial_products, split_operand, MulPlan,
    PartialTerm, SplitPlan,
};
pub use error::Error;
pub use minimize::{
    check_equivalence, full_dnf, minimize_exact, minimize_heuristic, Cover, Cube, Provenance,
    EXACT_MAX_INPUTS,
};
pub use netlist::{lower, BlockDef, Driver, Evaluator, Net, NetId, Netlist};
pub use reduce::{
    common_case_adders, common_case_depth, pack_summands, pack_summands_with, tree_depth,
    AdderTreePlan, PackOptions, PreAdd, Segment, SegmentSource, Summand,
};
pub use tables::{
    dnf_disjunction_count, gen_block_table, gen_truth_table, ArithMode, BlockShape, TruthFunction,
};

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// `ceil(log2(count))`, with 0 for zero or one item.
pub fn ceil_log2(count: usize) -> u32 {
    if count <= 1 {
        0
    } else {
        usize::BITS - (count - 1).leading_zeros()
    }
}
