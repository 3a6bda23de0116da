use core::fmt;

use crate::tables::BlockShape;

/// Errors raised by the planning and minimization routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A bit width fell outside the supported range.
    WidthOutOfRange {
        what: &'static str,
        width: u32,
        min: u32,
        max: u32,
    },
    /// Low-half arithmetic is only defined for square multipliers.
    UnequalWidths { a: u32, b: u32 },
    /// Group width larger than the operand it splits.
    GroupWiderThanOperand { m: u32, n: u32 },
    /// Exact minimization was asked for a function with too many inputs.
    ExactTooLarge { n_in: u32, cutoff: u32 },
    /// Input/output arities of two objects disagree.
    ArityMismatch {
        expected: (u32, u32),
        found: (u32, u32),
    },
    /// A cube has an empty output part or literals outside the cover's arity.
    InvalidCube { index: usize },
    /// `lower` was not given a cover for a block shape the plan needs.
    MissingCover(BlockShape),
    /// A netlist failed a structural check.
    Structure { net: usize, problem: &'static str },
    /// Operand does not fit the port it is applied to.
    OperandOutOfRange { value: u64, width: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::WidthOutOfRange {
                what,
                width,
                min,
                max,
            } => write!(f, "{what} {width} is outside the supported range {min}..={max}"),
            Error::UnequalWidths { a, b } => {
                write!(f, "low-half arithmetic needs equal operand widths, got {a} and {b}")
            }
            Error::GroupWiderThanOperand { m, n } => {
                write!(f, "group width {m} exceeds operand width {n}")
            }
            Error::ExactTooLarge { n_in, cutoff } => write!(
                f,
                "exact minimization supports at most {cutoff} inputs, function has {n_in}; use the heuristic minimizer"
            ),
            Error::ArityMismatch { expected, found } => write!(
                f,
                "arity mismatch: expected {} inputs / {} outputs, found {} / {}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::InvalidCube { index } => write!(f, "cube {index} is malformed"),
            Error::MissingCover(shape) => write!(f, "no cover supplied for block {shape}"),
            Error::Structure { net, problem } => write!(f, "net {net}: {problem}"),
            Error::OperandOutOfRange { value, width } => {
                write!(f, "operand {value} does not fit in {width} bits")
            }
        }
    }
}

impl core::error::Error for Error {}
