//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Built without the libtest harness so the criteria run in
//! order and their lines are never captured.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use monomul::core::{
    check_equivalence, common_case_adders, common_case_depth, dnf_disjunction_count,
    gen_truth_table, pack_summands, plan_partial_products, ArithMode, Cover, Cube, Provenance,
};
use monomul::emit::{read_pla, write_pla, write_stats, write_verilog};
use monomul::published::{AdderRow, TABLE_1A, TABLE_1B, TABLE_2A, TABLE_2B};
use monomul::verify::{inject_fault, run_verify, sample_faults, Strategy, VerifyConfig};
use monomul::{build_design, DesignConfig, Minimizer};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [ArithMode; 2] = [ArithMode::FullWidth, ArithMode::LowHalf];

/// Failures collected while checking one criterion, plus informational notes.
#[derive(Default)]
struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }
}

fn run(id: &str, title: &str, body: impl FnOnce(&mut Check)) -> bool {
    let start = Instant::now();
    let mut check = Check::default();
    body(&mut check);
    let pass = check.failures.is_empty();
    println!(
        "criterion {id}: {} {title} [{:.1}s]",
        if pass { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    for n in &check.notes {
        println!("    {n}");
    }
    for f in &check.failures {
        println!("    failed: {f}");
    }
    pass
}

fn table1_dnf(c: &mut Check) {
    let start = Instant::now();
    for (mode, (source, rows)) in [
        (ArithMode::FullWidth, TABLE_1A),
        (ArithMode::LowHalf, TABLE_1B),
    ] {
        for row in rows {
            let got = dnf_disjunction_count(&gen_truth_table(row.width, row.width, mode).unwrap());
            c.expect(got == row.dnf, || {
                format!("{source} {0}x{0}: {got} != {1}", row.width, row.dnf)
            });
        }
    }
    let elapsed = start.elapsed();
    c.expect(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    });
}

fn minimization(c: &mut Check) {
    for (mode, (_, rows)) in [
        (ArithMode::FullWidth, TABLE_1A),
        (ArithMode::LowHalf, TABLE_1B),
    ] {
        let mut line = format!("{:<8}", mode.as_str());
        for row in rows {
            let w = row.width;
            let f = gen_truth_table(w, w, mode).unwrap();
            let cover = Minimizer::Auto.run(&f).unwrap();
            let ok = check_equivalence(&cover, &f).unwrap();
            c.expect(ok, || {
                format!("{w}x{w} {} cover not equivalent", mode.as_str())
            });
            let got = cover.disjunction_count();
            line.push_str(&format!(" {w}x{w}:{got}/{}", row.minimized));
            if w <= 5 {
                c.expect(2 * got <= 3 * row.minimized, || {
                    format!("{w}x{w} {}: {got} > 1.5 * {}", mode.as_str(), row.minimized)
                });
            }
        }
        c.note(format!(
            "{line}  (computed/published disjunctions; 6-8 report only)"
        ));
    }
}

fn verify_design(n: u32, m: u32, mode: ArithMode, strategy: Strategy) -> (bool, u64) {
    let design = build_design(DesignConfig::new(n, m, mode)).unwrap();
    let r = run_verify(&design.netlist, &VerifyConfig::new(n, mode, strategy)).unwrap();
    (r.pass, r.cases)
}

fn composition(c: &mut Check) {
    for n in [8, 10, 12] {
        for m in [4, 5] {
            for mode in MODES {
                let start = Instant::now();
                let (pass, cases) = verify_design(n, m, mode, Strategy::Exhaustive);
                let elapsed = start.elapsed();
                c.expect(pass, || {
                    format!("{n}x{n} m={m} {} exhaustive mismatch", mode.as_str())
                });
                c.expect(cases >= 1 << (2 * n), || {
                    format!("{n}x{n} ran only {cases} cases")
                });
                c.expect(elapsed < Duration::from_secs(60), || {
                    format!("{n}x{n} m={m} took {elapsed:?}")
                });
            }
        }
    }
    let mut random_runs = 0;
    for n in (14..=32).step_by(2) {
        for m in [4, 5] {
            for mode in MODES {
                let strategy = Strategy::Random {
                    trials: 1_000_000,
                    seed: u64::from(n * 16 + m),
                };
                let (pass, _) = verify_design(n, m, mode, strategy);
                c.expect(pass, || {
                    format!("{n}x{n} m={m} {} random mismatch", mode.as_str())
                });
                random_runs += 1;
            }
        }
    }
    c.note(format!(
        "12 exhaustive designs, {random_runs} random designs x 10^6 trials + boundary"
    ));
}

fn adder_plan(n: u32, mode: ArithMode) -> monomul::core::MulPlan {
    plan_partial_products(n, monomul::core::default_group_width(n), mode).unwrap()
}

fn row(table: &[AdderRow], n: u32) -> AdderRow {
    *table.iter().find(|r| r.n == n).unwrap()
}

fn common_counts(c: &mut Check) {
    for n in [8, 14, 20, 22, 24, 26, 28, 30, 32] {
        let got = common_case_adders(&adder_plan(n, ArithMode::FullWidth));
        let want = row(&TABLE_2A.1, n).common;
        c.expect(got == want, || format!("full {n}x{n}: {got} != {want}"));
    }
    for n in [8, 14, 32] {
        let got = common_case_adders(&adder_plan(n, ArithMode::LowHalf));
        let want = row(&TABLE_2B.1, n).common;
        c.expect(got == want, || format!("lowhalf {n}x{n}: {got} != {want}"));
    }
    for n in [12, 16, 18] {
        let got = common_case_adders(&adder_plan(n, ArithMode::FullWidth));
        c.note(format!(
            "full {n}x{n}: computed {got}, published {} (KNOWN-DISCREPANCY)",
            row(&TABLE_2A.1, n).common
        ));
    }
}

fn reduced_counts(c: &mut Check) {
    let exact = [
        (ArithMode::FullWidth, 8, 2),
        (ArithMode::FullWidth, 14, 6),
        (ArithMode::FullWidth, 16, 6),
        (ArithMode::FullWidth, 32, 14),
        (ArithMode::LowHalf, 14, 6),
    ];
    for (mode, n, want) in exact {
        let got = pack_summands(&adder_plan(n, mode)).adder_count;
        c.expect(got == want, || {
            format!("{} {n}x{n}: {got} != {want}", mode.as_str())
        });
    }
    for (mode, (_, rows)) in [
        (ArithMode::FullWidth, TABLE_2A),
        (ArithMode::LowHalf, TABLE_2B),
    ] {
        for r in rows {
            if exact.iter().any(|&(m, n, _)| m == mode && n == r.n) {
                continue;
            }
            let plan = adder_plan(r.n, mode);
            let got = pack_summands(&plan).adder_count;
            let common = common_case_adders(&plan);
            c.expect(got <= r.reduced, || {
                format!(
                    "{} {}x{}: reduced {got} > published {}",
                    mode.as_str(),
                    r.n,
                    r.n,
                    r.reduced
                )
            });
            c.expect(got <= common, || {
                format!(
                    "{} {}x{}: reduced {got} > common {common}",
                    mode.as_str(),
                    r.n,
                    r.n
                )
            });
        }
    }
    let plan = adder_plan(14, ArithMode::FullWidth);
    let depth = pack_summands(&plan).depth_levels;
    c.expect(depth == 3, || format!("14x14 full tree depth {depth} != 3"));
    c.expect(common_case_depth(&plan) == 4, || {
        "14x14 full common depth != 4".into()
    });
}

fn saturation(c: &mut Check) {
    let plan = plan_partial_products(14, 4, ArithMode::LowHalf).unwrap();
    let dropped: BTreeSet<(u32, u32)> = plan.dropped().into_iter().collect();
    let want: BTreeSet<(u32, u32)> = [(2, 4), (3, 3), (3, 4), (4, 2), (4, 3), (4, 4)].into();
    c.expect(dropped == want, || format!("dropped {dropped:?}"));
    let retained: BTreeSet<(u32, u32, u32)> = plan
        .terms()
        .iter()
        .map(|t| (t.i, t.j, t.eff_width))
        .collect();
    let want: BTreeSet<(u32, u32, u32)> = [
        (1, 1, 8),
        (1, 2, 8),
        (2, 1, 8),
        (1, 3, 6),
        (2, 2, 6),
        (3, 1, 6),
        (1, 4, 2),
        (2, 3, 2),
        (3, 2, 2),
        (4, 1, 2),
    ]
    .into();
    c.expect(retained == want, || format!("retained {retained:?}"));
}

fn random_cover(rng: &mut ChaCha8Rng) -> Cover {
    let n_in = rng.gen_range(1..=16);
    let n_out = rng.gen_range(1..=16);
    let cubes = (0..rng.gen_range(0..=24))
        .map(|_| {
            let care = rng.gen::<u32>() & ((1 << n_in) - 1);
            let outputs = rng.gen_range(1..1u32 << n_out);
            Cube::new(rng.gen(), care, outputs)
        })
        .collect();
    Cover::new(n_in, n_out, cubes, Provenance::External).unwrap()
}

fn properties(c: &mut Check) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..1000 {
        let cover = random_cover(&mut rng);
        let text = write_pla(&cover);
        match read_pla(&text) {
            Ok(back) => c.expect(back == cover && write_pla(&back) == text, || {
                format!("PLA round trip {k} differs")
            }),
            Err(e) => c.expect(false, || format!("PLA round trip {k}: {e}")),
        }
    }

    let designs = [
        (8, 4, ArithMode::FullWidth, Strategy::Exhaustive),
        (10, 5, ArithMode::LowHalf, Strategy::Exhaustive),
        (
            12,
            4,
            ArithMode::LowHalf,
            Strategy::Random {
                trials: 200_000,
                seed: 2,
            },
        ),
        (
            14,
            4,
            ArithMode::FullWidth,
            Strategy::Random {
                trials: 200_000,
                seed: 3,
            },
        ),
    ];
    let mut detected = 0;
    for (n, m, mode, strategy) in designs {
        let design = build_design(DesignConfig::new(n, m, mode)).unwrap();
        let faults = sample_faults(&design.netlist, 20, u64::from(n));
        c.expect(faults.len() == 20, || {
            format!("{n}x{n}: only {} faults", faults.len())
        });
        let cfg = VerifyConfig::new(n, mode, strategy);
        for (shape, cube) in faults {
            let faulty = inject_fault(&design.netlist, shape, cube).unwrap();
            let r = run_verify(&faulty, &cfg).unwrap();
            c.expect(!r.pass, || {
                format!("{n}x{n}: deleting cube {cube} of {shape} undetected")
            });
            detected += usize::from(!r.pass);
        }
    }
    c.note(format!("{detected}/80 single-cube deletions detected"));

    for (n, m, mode) in [
        (14, 4, ArithMode::FullWidth),
        (20, 5, ArithMode::LowHalf),
        (32, 4, ArithMode::LowHalf),
    ] {
        let render = || {
            let d = build_design(DesignConfig::new(n, m, mode)).unwrap();
            (
                write_verilog(&d.netlist),
                write_stats(&[d.stats()]).unwrap(),
            )
        };
        c.expect(render() == render(), || {
            format!("{n}x{n} output not byte-identical")
        });
    }
}

fn main() -> ExitCode {
    let results = [
        run("1", "full-DNF counts match Table 1a/1b, < 10 s", table1_dnf),
        run(
            "2",
            "minimized covers equivalent, 2-5 within 1.5x published",
            minimization,
        ),
        run(
            "3",
            "composition identity, exhaustive 8-12, random 14-32",
            composition,
        ),
        run("4", "common-case adder counts", common_counts),
        run("5", "reduced adder counts and 14x14 depth", reduced_counts),
        run("6", "14x14 LowHalf dropped and narrowed terms", saturation),
        run(
            "7",
            "PLA round trip, fault injection, byte determinism",
            properties,
        ),
    ];
    println!("criterion 8: NOT REPRODUCIBLE frequency and area comparisons need a commercial synthesis flow");
    let failed = results.iter().filter(|&&p| !p).count();
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
