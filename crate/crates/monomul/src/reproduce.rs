//! Recomputes the published block and adder tables and diffs them.

use std::collections::BTreeMap;
use std::fmt::{self, Write};

use monomul_core::{
    block_requirements, common_case_adders, default_group_width, dnf_disjunction_count,
    gen_block_table, gen_truth_table, pack_summands, plan_partial_products, ArithMode,
};
use serde::Serialize;

use crate::emit::stats::StatsReport;
use crate::published::{
    known_discrepancy, AdderRow, BlockRow, Column, TABLE_1A, TABLE_1B, TABLE_2A, TABLE_2B,
};
use crate::{build_design, DesignConfig, Error};

/// Minimized counts within this factor of the published value are accepted.
pub const MINIMIZED_RATIO: (u64, u64) = (3, 2);

/// Block widths whose minimized counts are gated; larger blocks are
/// reported only.
pub const GATED_BLOCK_WIDTHS: std::ops::RangeInclusive<u32> = 2..=5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "TOLERANCE")]
    Tolerance,
    #[serde(rename = "KNOWN-DISCREPANCY")]
    KnownDiscrepancy,
    #[serde(rename = "REPORT-ONLY")]
    ReportOnly,
    #[serde(rename = "MISMATCH")]
    Mismatch,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "MATCH",
            Status::Tolerance => "TOLERANCE",
            Status::KnownDiscrepancy => "KNOWN-DISCREPANCY",
            Status::ReportOnly => "REPORT-ONLY",
            Status::Mismatch => "MISMATCH",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffRow {
    pub source: &'static str,
    pub mode: String,
    pub n: u32,
    pub m: u32,
    pub column: &'static str,
    pub computed: u64,
    pub published: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

#[derive(Debug, Clone, Default)]
pub struct TablesOptions {
    /// Restrict to these operand widths; `None` means every published row.
    pub rows: Option<Vec<u32>>,
    /// Also minimize blocks and diff the minimized column.
    pub minimize: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TablesReport {
    pub stats: Vec<StatsReport>,
    pub diff: Vec<DiffRow>,
}

impl TablesReport {
    pub fn count(&self, status: Status) -> usize {
        self.diff.iter().filter(|d| d.status == status).count()
    }

    /// One line per diff row followed by a status summary.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for d in &self.diff {
            writeln!(
                out,
                "{:<9} {:<8} {:>2}x{:<2} m={} {:<10} computed {:>7}  published {:>7}  {}{}",
                d.source,
                d.mode,
                d.n,
                d.n,
                d.m,
                d.column,
                d.computed,
                d.published,
                d.status,
                d.note.map(|n| format!("  ({n})")).unwrap_or_default()
            )
            .unwrap();
        }
        let mut summary: BTreeMap<Status, usize> = BTreeMap::new();
        for d in &self.diff {
            *summary.entry(d.status).or_default() += 1;
        }
        let parts: Vec<String> = summary.iter().map(|(s, c)| format!("{s} {c}")).collect();
        writeln!(out, "summary: {}", parts.join(", ")).unwrap();
        out
    }
}

pub fn reproduce_tables(opts: &TablesOptions) -> Result<TablesReport, Error> {
    let wanted = |n: u32| opts.rows.as_ref().is_none_or(|r| r.contains(&n));
    let mut report = TablesReport {
        stats: Vec::new(),
        diff: Vec::new(),
    };
    for (mode, (source, rows)) in [
        (ArithMode::FullWidth, TABLE_1A),
        (ArithMode::LowHalf, TABLE_1B),
    ] {
        for row in rows.iter().filter(|r| wanted(r.width)) {
            block_row(&mut report, source, mode, row, opts.minimize)?;
        }
    }
    for (mode, (source, rows)) in [
        (ArithMode::FullWidth, TABLE_2A),
        (ArithMode::LowHalf, TABLE_2B),
    ] {
        for row in rows.iter().filter(|r| wanted(r.n)) {
            adder_row(&mut report, source, mode, row, opts.minimize)?;
        }
    }
    Ok(report)
}

fn block_row(
    report: &mut TablesReport,
    source: &'static str,
    mode: ArithMode,
    row: &BlockRow,
    minimize: bool,
) -> Result<(), Error> {
    let w = row.width;
    let stats = stats_for(w, w, mode, minimize)?;
    let dnf = dnf_disjunction_count(&gen_truth_table(w, w, mode)?);
    let diff = |column: Column, computed: u64, published: u64, status| DiffRow {
        source,
        mode: mode.as_str().into(),
        n: w,
        m: w,
        column: column.as_str(),
        computed,
        published,
        status,
        note: None,
    };
    let status = if dnf == row.dnf {
        Status::Match
    } else {
        Status::Mismatch
    };
    report.diff.push(diff(Column::Dnf, dnf, row.dnf, status));
    if let Some(min) = stats.minimized_count {
        let got = min.disjunctions;
        let (num, den) = MINIMIZED_RATIO;
        let status = if got == row.minimized {
            Status::Match
        } else if got * den <= row.minimized * num {
            Status::Tolerance
        } else if GATED_BLOCK_WIDTHS.contains(&w) {
            Status::Mismatch
        } else {
            Status::ReportOnly
        };
        report
            .diff
            .push(diff(Column::Minimized, got, row.minimized, status));
    }
    report.stats.push(stats);
    Ok(())
}

fn adder_row(
    report: &mut TablesReport,
    source: &'static str,
    mode: ArithMode,
    row: &AdderRow,
    minimize: bool,
) -> Result<(), Error> {
    let m = default_group_width(row.n);
    let stats = stats_for(row.n, m, mode, minimize)?;
    let mut push = |column: Column, computed: usize, published: usize, exact_only: bool| {
        let known = known_discrepancy(mode, row.n, column);
        let status = if computed == published {
            Status::Match
        } else if known.is_some() {
            Status::KnownDiscrepancy
        } else if !exact_only && computed < published {
            Status::Tolerance
        } else {
            Status::Mismatch
        };
        report.diff.push(DiffRow {
            source,
            mode: mode.as_str().into(),
            n: row.n,
            m,
            column: column.as_str(),
            computed: computed as u64,
            published: published as u64,
            status,
            note: if status == Status::KnownDiscrepancy {
                known
            } else {
                None
            },
        });
    };
    push(Column::Common, stats.common_adders, row.common, true);
    push(Column::Reduced, stats.reduced_adders, row.reduced, false);
    report.stats.push(stats);
    Ok(())
}

/// Stats for one configuration; without minimization only the planning
/// counts and full-DNF sizes are computed.
fn stats_for(n: u32, m: u32, mode: ArithMode, minimize: bool) -> Result<StatsReport, Error> {
    if minimize {
        return Ok(build_design(DesignConfig::new(n, m, mode))?.stats());
    }
    let plan = plan_partial_products(n, m, mode)?;
    let tree = pack_summands(&plan);
    let shapes = block_requirements(&plan);
    let dnf_count = shapes
        .iter()
        .map(|s| gen_block_table(*s).map(|f| dnf_disjunction_count(&f)))
        .sum::<Result<u64, _>>()?;
    Ok(StatsReport {
        n,
        m,
        mode: mode.as_str().into(),
        dnf_count,
        minimized_count: None,
        common_adders: common_case_adders(&plan),
        reduced_adders: tree.adder_count,
        pre_adds: tree.pre_adds.len(),
        tree_depth: tree.depth_levels,
        block_shapes: shapes.iter().map(ToString::to_string).collect(),
    })
}
