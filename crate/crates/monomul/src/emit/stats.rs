//! Statistics records, one per multiplier configuration.

use serde::{Deserialize, Serialize};

use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimizedCount {
    /// Distinct product terms.
    pub cubes: u64,
    /// Product terms counted once per output they feed.
    pub disjunctions: u64,
}

/// Counts for one `n x n` configuration. Block-level fields (`dnf_count`,
/// `minimized_count`) are summed over the distinct block shapes; for a
/// single-block design they are the counts of that block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsReport {
    pub n: u32,
    pub m: u32,
    pub mode: String,
    pub dnf_count: u64,
    /// `None` when minimization was not run.
    pub minimized_count: Option<MinimizedCount>,
    pub common_adders: usize,
    pub reduced_adders: usize,
    pub pre_adds: usize,
    pub tree_depth: u32,
    pub block_shapes: Vec<String>,
}

/// Pretty-printed JSON array without a trailing newline.
pub fn write_stats(reports: &[StatsReport]) -> Result<String, Error> {
    Ok(serde_json::to_string_pretty(reports)?)
}

#[derive(Serialize)]
struct CsvRow<'a> {
    n: u32,
    m: u32,
    mode: &'a str,
    dnf_count: u64,
    minimized_cubes: Option<u64>,
    minimized_disjunctions: Option<u64>,
    common_adders: usize,
    reduced_adders: usize,
    pre_adds: usize,
    tree_depth: u32,
    block_shapes: String,
}

/// Flat CSV rendering; block shapes are joined with `;`.
pub fn write_stats_csv(reports: &[StatsReport]) -> Result<String, Error> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    if reports.is_empty() {
        w.write_record([
            "n",
            "m",
            "mode",
            "dnf_count",
            "minimized_cubes",
            "minimized_disjunctions",
            "common_adders",
            "reduced_adders",
            "pre_adds",
            "tree_depth",
            "block_shapes",
        ])?;
    }
    for r in reports {
        w.serialize(CsvRow {
            n: r.n,
            m: r.m,
            mode: &r.mode,
            dnf_count: r.dnf_count,
            minimized_cubes: r.minimized_count.map(|c| c.cubes),
            minimized_disjunctions: r.minimized_count.map(|c| c.disjunctions),
            common_adders: r.common_adders,
            reduced_adders: r.reduced_adders,
            pre_adds: r.pre_adds,
            tree_depth: r.tree_depth,
            block_shapes: r.block_shapes.join(";"),
        })?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}
