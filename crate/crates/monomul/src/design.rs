//! End-to-end generation of one multiplier configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use monomul_core::{
    block_requirements, check_equivalence, common_case_adders, dnf_disjunction_count, full_dnf,
    gen_block_table, lower, minimize_exact, minimize_heuristic, pack_summands_with,
    plan_partial_products, AdderTreePlan, ArithMode, BlockShape, Cover, MulPlan, Netlist,
    PackOptions, TruthFunction, EXACT_MAX_INPUTS,
};
use rayon::prelude::*;

use crate::emit::stats::{MinimizedCount, StatsReport};
use crate::Error;

/// Which minimizer builds the block covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Minimizer {
    /// Exact up to [`EXACT_MAX_INPUTS`] block inputs, heuristic above.
    #[default]
    Auto,
    Exact,
    Heuristic,
    /// Full DNF, no minimization.
    None,
}

impl Minimizer {
    pub fn run(self, f: &TruthFunction) -> Result<Cover, Error> {
        Ok(match self {
            Minimizer::Auto if f.n_in() <= EXACT_MAX_INPUTS => minimize_exact(f)?,
            Minimizer::Auto | Minimizer::Heuristic => minimize_heuristic(f),
            Minimizer::Exact => minimize_exact(f)?,
            Minimizer::None => full_dnf(f),
        })
    }
}

impl FromStr for Minimizer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Minimizer::Auto),
            "exact" => Ok(Minimizer::Exact),
            "heuristic" => Ok(Minimizer::Heuristic),
            "none" => Ok(Minimizer::None),
            _ => Err(format!("unknown minimizer `{s}`")),
        }
    }
}

impl fmt::Display for Minimizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Minimizer::Auto => "auto",
            Minimizer::Exact => "exact",
            Minimizer::Heuristic => "heuristic",
            Minimizer::None => "none",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignConfig {
    pub n: u32,
    pub m: u32,
    pub mode: ArithMode,
    pub minimizer: Minimizer,
    pub pre_adds: bool,
}

impl DesignConfig {
    pub fn new(n: u32, m: u32, mode: ArithMode) -> Self {
        DesignConfig {
            n,
            m,
            mode,
            minimizer: Minimizer::Auto,
            pre_adds: false,
        }
    }
}

/// Everything generated for one configuration.
#[derive(Debug, Clone)]
pub struct Design {
    pub config: DesignConfig,
    pub plan: MulPlan,
    pub tree: AdderTreePlan,
    pub tables: BTreeMap<BlockShape, TruthFunction>,
    pub covers: BTreeMap<BlockShape, Cover>,
    pub netlist: Netlist,
}

/// Runs tables, minimization, planning, packing and lowering. Every block
/// cover is checked against its truth table before lowering.
pub fn build_design(config: DesignConfig) -> Result<Design, Error> {
    let plan = plan_partial_products(config.n, config.m, config.mode)?;
    let tree = pack_summands_with(
        &plan,
        PackOptions {
            pre_adds: config.pre_adds,
        },
    );
    let shapes: Vec<BlockShape> = block_requirements(&plan).into_iter().collect();
    let blocks = shapes
        .par_iter()
        .map(|&shape| {
            let f = gen_block_table(shape)?;
            let cover = config.minimizer.run(&f)?;
            if !check_equivalence(&cover, &f)? {
                return Err(Error::CoverMismatch(shape));
            }
            Ok((shape, f, cover))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut tables = BTreeMap::new();
    let mut covers = BTreeMap::new();
    for (shape, f, cover) in blocks {
        tables.insert(shape, f);
        covers.insert(shape, cover);
    }
    let netlist = lower(&plan, &tree, &covers)?;
    Ok(Design {
        config,
        plan,
        tree,
        tables,
        covers,
        netlist,
    })
}

impl Design {
    /// Counts for this configuration. Block-level counts are summed over the
    /// distinct block shapes.
    pub fn stats(&self) -> StatsReport {
        StatsReport {
            n: self.config.n,
            m: self.config.m,
            mode: self.config.mode.as_str().to_string(),
            dnf_count: self.tables.values().map(dnf_disjunction_count).sum(),
            minimized_count: Some(MinimizedCount {
                cubes: self.covers.values().map(|c| c.cube_count() as u64).sum(),
                disjunctions: self.covers.values().map(Cover::disjunction_count).sum(),
            }),
            common_adders: common_case_adders(&self.plan),
            reduced_adders: self.tree.adder_count,
            pre_adds: self.tree.pre_adds.len(),
            tree_depth: self.tree.depth_levels,
            block_shapes: self.covers.keys().map(ToString::to_string).collect(),
        }
    }
}
