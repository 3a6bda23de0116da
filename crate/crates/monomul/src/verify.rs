//! Checking generated netlists against integer multiplication.

use monomul_core::{ArithMode, BlockShape, Netlist};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::Error;

/// Largest `2n` for which exhaustive checking is allowed.
pub const EXHAUSTIVE_MAX_BITS: u32 = 24;

pub const DEFAULT_TRIALS: u64 = 1_000_000;

pub const DEFAULT_MISMATCH_LIMIT: usize = 16;

/// Random trials are drawn in chunks of this size, chunk `c` from ChaCha
/// stream `c`, so results do not depend on the thread count.
const CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive,
    Random { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n: u32,
    pub mode: ArithMode,
    pub strategy: Strategy,
    /// Also check every pair from `{0, 1, 2^n-1, 2^i, 2^i-1}`.
    pub boundary: bool,
    pub mismatch_limit: usize,
}

impl VerifyConfig {
    pub fn new(n: u32, mode: ArithMode, strategy: Strategy) -> Self {
        VerifyConfig {
            n,
            mode,
            strategy,
            boundary: true,
            mismatch_limit: DEFAULT_MISMATCH_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Mismatch {
    pub a: u64,
    pub b: u64,
    pub got: u128,
    pub expected: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyResult {
    pub cases: u64,
    /// Smallest `(a, b)` first, at most `mismatch_limit` entries.
    pub mismatches: Vec<Mismatch>,
    pub pass: bool,
}

/// The reference: `a * b`, reduced modulo `2^n` in low-half mode.
pub fn oracle(a: u64, b: u64, n: u32, mode: ArithMode) -> u128 {
    let p = u128::from(a) * u128::from(b);
    match mode {
        ArithMode::FullWidth => p,
        ArithMode::LowHalf => p & ((1u128 << n) - 1),
    }
}

pub fn boundary_values(n: u32) -> Vec<u64> {
    let mut v = vec![0, 1, (1u64 << n) - 1];
    for i in 0..n {
        v.push(1 << i);
        v.push((1 << i) - 1);
    }
    v.sort_unstable();
    v.dedup();
    v
}

pub fn run_verify(nl: &Netlist, cfg: &VerifyConfig) -> Result<VerifyResult, Error> {
    if cfg.n != nl.n() {
        return Err(Error::WidthMismatch {
            cfg: cfg.n,
            netlist: nl.n(),
        });
    }
    let n = cfg.n;
    let limit = cfg.mismatch_limit;
    let check = |ev: &mut monomul_core::Evaluator<'_>, a: u64, b: u64, out: &mut Vec<Mismatch>| {
        let got = ev.eval(a, b);
        let expected = oracle(a, b, n, cfg.mode);
        if got != expected {
            out.push(Mismatch {
                a,
                b,
                got,
                expected,
            });
        }
    };

    let (mut cases, mut found): (u64, Vec<Mismatch>) = match cfg.strategy {
        Strategy::Exhaustive => {
            if 2 * n > EXHAUSTIVE_MAX_BITS {
                return Err(Error::ExhaustiveTooLarge { n });
            }
            let found = (0..1u64 << n)
                .into_par_iter()
                .map(|a| {
                    let mut ev = nl.evaluator();
                    let mut out = Vec::new();
                    for b in 0..1u64 << n {
                        check(&mut ev, a, b, &mut out);
                    }
                    out.truncate(limit);
                    out
                })
                .reduce(Vec::new, |x, y| merge(x, y, limit));
            (1 << (2 * n), found)
        }
        Strategy::Random { trials, seed } => {
            let top = (1u64 << n) - 1;
            let found = (0..trials.div_ceil(CHUNK))
                .into_par_iter()
                .map(|c| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(c);
                    let mut ev = nl.evaluator();
                    let mut out = Vec::new();
                    for _ in c * CHUNK..trials.min((c + 1) * CHUNK) {
                        let (a, b) = (rng.gen_range(0..=top), rng.gen_range(0..=top));
                        check(&mut ev, a, b, &mut out);
                    }
                    out.sort_unstable();
                    out.dedup();
                    out.truncate(limit);
                    out
                })
                .reduce(Vec::new, |x, y| merge(x, y, limit));
            (trials, found)
        }
    };

    if cfg.boundary {
        let edges = boundary_values(n);
        let mut ev = nl.evaluator();
        let mut out = Vec::new();
        for &a in &edges {
            for &b in &edges {
                check(&mut ev, a, b, &mut out);
            }
        }
        cases += (edges.len() * edges.len()) as u64;
        found = merge(found, out, limit);
    }

    Ok(VerifyResult {
        cases,
        pass: found.is_empty(),
        mismatches: found,
    })
}

fn merge(mut x: Vec<Mismatch>, y: Vec<Mismatch>, limit: usize) -> Vec<Mismatch> {
    x.extend(y);
    x.sort_unstable();
    x.dedup();
    x.truncate(limit);
    x
}

/// Deterministically samples up to `count` distinct `(block shape, cube
/// index)` deletions from a netlist's covers.
pub fn sample_faults(nl: &Netlist, count: usize, seed: u64) -> Vec<(BlockShape, usize)> {
    let all: Vec<(BlockShape, usize)> = nl
        .defs()
        .iter()
        .flat_map(|d| (0..d.cover().cube_count()).map(move |i| (d.shape(), i)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rand::seq::index::sample(&mut rng, all.len(), count.min(all.len()))
        .into_iter()
        .map(|i| all[i])
        .collect()
}

/// The netlist with one cube deleted from the cover of `shape`.
pub fn inject_fault(nl: &Netlist, shape: BlockShape, cube: usize) -> Result<Netlist, Error> {
    let def = nl
        .defs()
        .iter()
        .find(|d| d.shape() == shape)
        .ok_or(monomul_core::Error::MissingCover(shape))?;
    Ok(nl.with_cover(shape, def.cover().without_cube(cube))?)
}
