use monomul_core::BlockShape;
use thiserror::Error;

use crate::emit::pla::PlaError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] monomul_core::Error),
    #[error(transparent)]
    Pla(#[from] PlaError),
    #[error("minimized cover of block {0} does not match its truth table")]
    CoverMismatch(BlockShape),
    #[error("exhaustive verification of {n}x{n} needs 2^{bits} cases, above the 2^24 cap", bits = 2 * .n)]
    ExhaustiveTooLarge { n: u32 },
    #[error("verification config is for {cfg}-bit operands but the netlist has {netlist}")]
    WidthMismatch { cfg: u32, netlist: u32 },
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}
