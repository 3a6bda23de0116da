//! Text renderings: Berkeley PLA for covers, Verilog for netlists, JSON and
//! CSV for statistics. All output is ASCII with LF line endings and is
//! byte-for-byte reproducible.

pub mod pla;
pub mod stats;
pub mod verilog;

pub use pla::{read_pla, write_pla};
pub use stats::{write_stats, write_stats_csv, StatsReport};
pub use verilog::write_verilog;
