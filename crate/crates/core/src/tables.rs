//! Exact truth tables of small unsigned multipliers.

use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Largest operand width a single block may have.
pub const MAX_BLOCK_WIDTH: u32 = 8;

/// Largest input count of a dense truth table (2^16 rows).
pub const MAX_TABLE_INPUTS: u32 = 16;

/// Result width convention of a multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArithMode {
    /// `w_a x w_b -> w_a + w_b` bits.
    FullWidth,
    /// `n x n -> n` bits: the product modulo `2^n`. Nothing saturates.
    LowHalf,
}

impl ArithMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ArithMode::FullWidth => "full",
            ArithMode::LowHalf => "lowhalf",
        }
    }
}

impl fmt::Display for ArithMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Geometry of one monolithic block: `a_width x b_width -> out_width`.
///
/// `out_width` may be smaller than `a_width + b_width`, in which case the
/// block computes the product modulo `2^out_width`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockShape {
    pub a_width: u32,
    pub b_width: u32,
    pub out_width: u32,
}

impl BlockShape {
    pub fn new(a_width: u32, b_width: u32, out_width: u32) -> Self {
        BlockShape {
            a_width,
            b_width,
            out_width,
        }
    }

    pub fn n_in(&self) -> u32 {
        self.a_width + self.b_width
    }

    pub fn is_truncated(&self) -> bool {
        self.out_width < self.a_width + self.b_width
    }
}

impl fmt::Display for BlockShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}->{}", self.a_width, self.b_width, self.out_width)
    }
}

/// A completely specified multi-output Boolean function stored densely.
///
/// Row `x` holds the set of output bits that are 1 for input assignment `x`;
/// the ON-set of output `t` is every row whose mask has bit `t` set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthFunction {
    n_in: u32,
    n_out: u32,
    rows: Vec<u32>,
}

impl TruthFunction {
    /// Builds a function from `f(row) -> output mask`. Bits of the mask at
    /// or above `n_out` are dropped.
    pub fn from_fn(n_in: u32, n_out: u32, mut f: impl FnMut(u32) -> u32) -> Result<Self> {
        check_range("input count", n_in, 1, MAX_TABLE_INPUTS)?;
        check_range("output count", n_out, 1, MAX_TABLE_INPUTS)?;
        let keep = low_mask(n_out);
        let rows = (0..1u32 << n_in).map(|x| f(x) & keep).collect();
        Ok(TruthFunction { n_in, n_out, rows })
    }

    pub fn n_in(&self) -> u32 {
        self.n_in
    }

    pub fn n_out(&self) -> u32 {
        self.n_out
    }

    /// Output mask of a single input assignment.
    pub fn row(&self, assignment: u32) -> u32 {
        self.rows[assignment as usize]
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn is_on(&self, assignment: u32, output: u32) -> bool {
        self.row(assignment) >> output & 1 == 1
    }

    /// Minterms of output `t`, ascending.
    pub fn onset(&self, output: u32) -> impl Iterator<Item = u32> + '_ {
        self.rows
            .iter()
            .enumerate()
            .filter(move |(_, r)| *r >> output & 1 == 1)
            .map(|(x, _)| x as u32)
    }
}

/// Truth table of a `w_a x w_b` multiplier in the given mode.
pub fn gen_truth_table(w_a: u32, w_b: u32, mode: ArithMode) -> Result<TruthFunction> {
    check_range("operand width", w_a, 1, MAX_BLOCK_WIDTH)?;
    check_range("operand width", w_b, 1, MAX_BLOCK_WIDTH)?;
    let out_width = match mode {
        ArithMode::FullWidth => w_a + w_b,
        ArithMode::LowHalf if w_a == w_b => w_a,
        ArithMode::LowHalf => return Err(Error::UnequalWidths { a: w_a, b: w_b }),
    };
    gen_block_table(BlockShape::new(w_a, w_b, out_width))
}

/// Truth table of an arbitrary block shape: `(a * b) mod 2^out_width`.
pub fn gen_block_table(shape: BlockShape) -> Result<TruthFunction> {
    check_range("operand width", shape.a_width, 1, MAX_BLOCK_WIDTH)?;
    check_range("operand width", shape.b_width, 1, MAX_BLOCK_WIDTH)?;
    check_range("block output width", shape.out_width, 1, shape.n_in())?;
    let a_mask = low_mask(shape.a_width);
    TruthFunction::from_fn(shape.n_in(), shape.out_width, |x| {
        (x & a_mask) * (x >> shape.a_width)
    })
}

/// Number of disjunctions in the full DNF: one minterm per ON point per
/// output bit.
pub fn dnf_disjunction_count(f: &TruthFunction) -> u64 {
    f.rows.iter().map(|r| u64::from(r.count_ones())).sum()
}

pub(crate) fn low_mask(bits: u32) -> u32 {
    if bits >= 32 {
        u32::MAX
    } else {
        (1u32 << bits) - 1
    }
}

pub(crate) fn check_range(what: &'static str, width: u32, min: u32, max: u32) -> Result<()> {
    if (min..=max).contains(&width) {
        Ok(())
    } else {
        Err(Error::WidthOutOfRange {
            what,
            width,
            min,
            max,
        })
    }
}
