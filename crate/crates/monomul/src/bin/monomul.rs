//! `monomul` command-line driver.
//!
//! Exit codes: 0 on success or a passing verification, 1 on a pipeline error
//! or a failed verification, 2 on invalid flags.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use monomul::core::{default_group_width, ArithMode};
use monomul::emit::{write_pla, write_stats, write_stats_csv, write_verilog};
use monomul::reproduce::{reproduce_tables, TablesOptions};
use monomul::verify::{run_verify, Strategy, VerifyConfig, DEFAULT_TRIALS, EXHAUSTIVE_MAX_BITS};
use monomul::{build_design, Design, DesignConfig, Minimizer};

#[derive(Parser)]
#[command(
    name = "monomul",
    version,
    about = "Multipliers built from monolithic blocks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a multiplier and write it with a stats sidecar.
    Gen(GenArgs),
    /// Generate a multiplier and check it against integer multiplication.
    Verify(VerifyArgs),
    /// Recompute the published count tables and diff against them.
    Tables(TablesArgs),
}

#[derive(Args)]
struct DesignArgs {
    /// Operand width in bits.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=32))]
    n: u32,
    /// Block group width; defaults to 5 when 5 divides n, else 4.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=8))]
    m: Option<u32>,
    #[arg(long, value_enum, default_value_t = Mode::Full)]
    mode: Mode,
    #[arg(long, default_value_t = Minimizer::Auto)]
    minimizer: Minimizer,
    /// Merge lone equal-shift terms with a pre-adder before packing.
    #[arg(long)]
    pre_adds: bool,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    design: DesignArgs,
    #[arg(long, value_enum, default_value_t = GenFormat::Verilog)]
    format: GenFormat,
    /// Output directory.
    #[arg(long, env = "MONOMUL_OUT_DIR", default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    design: DesignArgs,
    /// Check every operand pair (only for 2n <= 24).
    #[arg(long, conflicts_with = "trials")]
    exhaustive: bool,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Skip the boundary operand values.
    #[arg(long)]
    no_boundary: bool,
}

#[derive(Args)]
struct TablesArgs {
    /// Comma-separated rows such as `14x14,8x8`; default is every row.
    #[arg(long, value_delimiter = ',', value_parser = parse_row)]
    rows: Option<Vec<u32>>,
    /// Also minimize blocks and diff the minimized column.
    #[arg(long)]
    minimize: bool,
    #[arg(long, value_enum, default_value_t = TablesFormat::Text)]
    format: TablesFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Full,
    Lowhalf,
}

impl From<Mode> for ArithMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Full => ArithMode::FullWidth,
            Mode::Lowhalf => ArithMode::LowHalf,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFormat {
    Verilog,
    Pla,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TablesFormat {
    Text,
    Json,
    Csv,
}

fn parse_row(s: &str) -> Result<u32, String> {
    let (a, b) = s.split_once('x').unwrap_or((s, s));
    let a: u32 = a.trim().parse().map_err(|_| format!("bad row `{s}`"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad row `{s}`"))?;
    if a != b {
        return Err(format!("row `{s}` must be square"));
    }
    Ok(a)
}

fn usage_error(kind: ErrorKind, msg: String) -> ! {
    Cli::command().error(kind, msg).exit()
}

impl DesignArgs {
    /// Resolves defaults and rejects combinations clap cannot express.
    fn config(&self) -> DesignConfig {
        let m = self.m.unwrap_or_else(|| default_group_width(self.n));
        if m > self.n {
            usage_error(
                ErrorKind::ValueValidation,
                format!("--m {m} is wider than --n {}", self.n),
            );
        }
        let mut cfg = DesignConfig::new(self.n, m, self.mode.into());
        cfg.minimizer = self.minimizer;
        cfg.pre_adds = self.pre_adds;
        cfg
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Tables(args) => cmd_tables(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

type CmdResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn cmd_gen(args: GenArgs) -> CmdResult {
    let cfg = args.design.config();
    let design = build_design(cfg)?;
    fs::create_dir_all(&args.out)?;
    let top = design.netlist.name().to_string();
    let stats = [design.stats()];
    let mut written = Vec::new();
    match args.format {
        GenFormat::Verilog => {
            written.push(write_file(
                &args.out,
                &format!("{top}.v"),
                &write_verilog(&design.netlist),
            )?);
        }
        GenFormat::Pla => written.extend(write_plas(&args.out, &design)?),
        GenFormat::Json => {}
        GenFormat::Csv => {
            written.push(write_file(
                &args.out,
                &format!("{top}.stats.csv"),
                &write_stats_csv(&stats)?,
            )?);
        }
    }
    written.push(write_file(
        &args.out,
        &format!("{top}.stats.json"),
        &(write_stats(&stats)? + "\n"),
    )?);
    let s = &stats[0];
    println!(
        "{top}: {} blocks, {} summands, {} adders (common case {}), depth {}",
        design.netlist.blocks().count(),
        design.tree.summands.len(),
        s.reduced_adders,
        s.common_adders,
        s.tree_depth
    );
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn write_plas(dir: &Path, design: &Design) -> Result<Vec<PathBuf>, std::io::Error> {
    design
        .netlist
        .defs()
        .iter()
        .map(|def| {
            write_file(
                dir,
                &format!("{}.pla", def.module_name()),
                &write_pla(def.cover()),
            )
        })
        .collect()
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<PathBuf, std::io::Error> {
    let path = dir.join(name);
    fs::write(&path, text)?;
    Ok(path)
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let cfg = args.design.config();
    let strategy = if args.exhaustive {
        if 2 * cfg.n > EXHAUSTIVE_MAX_BITS {
            usage_error(
                ErrorKind::ArgumentConflict,
                format!(
                    "--exhaustive needs 2n <= {EXHAUSTIVE_MAX_BITS}; use --trials for n = {}",
                    cfg.n
                ),
            );
        }
        Strategy::Exhaustive
    } else {
        Strategy::Random {
            trials: args.trials.unwrap_or(DEFAULT_TRIALS),
            seed: args.seed,
        }
    };
    let design = build_design(cfg)?;
    let mut vcfg = VerifyConfig::new(cfg.n, cfg.mode, strategy);
    vcfg.boundary = !args.no_boundary;
    let result = run_verify(&design.netlist, &vcfg)?;
    let name = design.netlist.name();
    if result.pass {
        println!("{name}: PASS ({} cases)", result.cases);
        Ok(ExitCode::SUCCESS)
    } else {
        println!(
            "{name}: FAIL ({} cases, {} mismatches shown)",
            result.cases,
            result.mismatches.len()
        );
        for mm in &result.mismatches {
            println!(
                "  {} * {} = {} but netlist gives {}",
                mm.a, mm.b, mm.expected, mm.got
            );
        }
        Ok(ExitCode::from(1))
    }
}

fn cmd_tables(args: TablesArgs) -> CmdResult {
    let report = reproduce_tables(&TablesOptions {
        rows: args.rows,
        minimize: args.minimize,
    })?;
    match args.format {
        TablesFormat::Text => print!("{}", report.render()),
        TablesFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        TablesFormat::Csv => print!("{}", write_stats_csv(&report.stats)?),
    }
    Ok(ExitCode::SUCCESS)
}
