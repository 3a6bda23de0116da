//! Two-level sum-of-products covers and the minimizers that produce them.
//!
//! Two size measures are reported for every cover: the number of distinct
//! cubes (product terms, possibly shared between outputs) and the number of
//! per-output disjunctions, i.e. the sum over cubes of the outputs each one
//! feeds. The latter is the measure used for full-DNF counts.

use alloc::collections::{BTreeSet, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use crate::bits::BitSet;
use crate::primes::CubeTable;
use crate::tables::{check_range, low_mask, TruthFunction, MAX_TABLE_INPUTS};
use crate::{Error, Result};

/// Largest input count accepted by [`minimize_exact`].
pub const EXACT_MAX_INPUTS: u32 = 8;

/// Widest input or output part a [`Cover`] can hold.
pub const MAX_COVER_WIDTH: u32 = 32;

/// One product term: fixed literals on the `care` positions (taking the
/// values in `value`), don't-care elsewhere, feeding the `outputs` mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cube {
    value: u32,
    care: u32,
    outputs: u32,
}

impl Cube {
    pub fn new(value: u32, care: u32, outputs: u32) -> Self {
        Cube {
            value: value & care,
            care,
            outputs,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn care(&self) -> u32 {
        self.care
    }

    pub fn outputs(&self) -> u32 {
        self.outputs
    }

    pub fn with_outputs(self, outputs: u32) -> Self {
        Cube { outputs, ..self }
    }

    /// `Some(bit)` for a fixed literal, `None` for don't-care.
    pub fn literal(&self, input: u32) -> Option<bool> {
        (self.care >> input & 1 == 1).then(|| self.value >> input & 1 == 1)
    }

    pub fn contains(&self, assignment: u32) -> bool {
        assignment & self.care == self.value
    }

    /// The cube with literal `input` turned into a don't-care.
    pub fn raise(self, input: u32) -> Self {
        Cube::new(self.value, self.care & !(1 << input), self.outputs)
    }

    pub fn literal_count(&self) -> u32 {
        self.care.count_ones()
    }

    pub fn minterms(&self, n_in: u32) -> impl Iterator<Item = u32> {
        let free = low_mask(n_in) & !self.care;
        let value = self.value;
        let mut next = Some(0u32);
        core::iter::from_fn(move || {
            let s = next?;
            let s2 = s.wrapping_sub(free) & free;
            next = (s2 != 0).then_some(s2);
            Some(value | s)
        })
    }

    /// Lexicographic rank of the input part read as a PLA string over the
    /// ordered alphabet `-` < `0` < `1`, input 0 first.
    fn rank(&self) -> u64 {
        (0..MAX_COVER_WIDTH).fold(0u64, |acc, i| {
            let digit = match self.literal(i) {
                None => 0,
                Some(false) => 1,
                Some(true) => 2,
            };
            acc * 3 + digit
        })
    }
}

impl Ord for Cube {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then(self.outputs.cmp(&other.outputs))
    }
}

impl PartialOrd for Cube {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// How a cover was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    FullDnf,
    Exact,
    Heuristic,
    /// Read from a file or built by hand.
    External,
}

/// A multi-output sum-of-products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    n_in: u32,
    n_out: u32,
    cubes: Vec<Cube>,
    provenance: Provenance,
}

impl Cover {
    pub fn new(n_in: u32, n_out: u32, cubes: Vec<Cube>, provenance: Provenance) -> Result<Self> {
        check_range("input count", n_in, 1, MAX_COVER_WIDTH)?;
        check_range("output count", n_out, 1, MAX_COVER_WIDTH)?;
        let (in_mask, out_mask) = (low_mask(n_in), low_mask(n_out));
        if let Some(index) = cubes
            .iter()
            .position(|c| c.care & !in_mask != 0 || c.outputs == 0 || c.outputs & !out_mask != 0)
        {
            return Err(Error::InvalidCube { index });
        }
        Ok(Cover {
            n_in,
            n_out,
            cubes,
            provenance,
        })
    }

    pub fn n_in(&self) -> u32 {
        self.n_in
    }

    pub fn n_out(&self) -> u32 {
        self.n_out
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn cube_count(&self) -> usize {
        self.cubes.len()
    }

    /// Sum over cubes of the number of outputs each one feeds.
    pub fn disjunction_count(&self) -> u64 {
        self.cubes
            .iter()
            .map(|c| u64::from(c.outputs.count_ones()))
            .sum()
    }

    /// Output mask for one input assignment.
    pub fn eval(&self, assignment: u32) -> u32 {
        self.cubes
            .iter()
            .filter(|c| c.contains(assignment))
            .fold(0, |acc, c| acc | c.outputs)
    }

    /// The dense output table of the cover, one mask per input assignment.
    pub fn truth_rows(&self) -> Result<Vec<u32>> {
        check_range("input count", self.n_in, 1, MAX_TABLE_INPUTS)?;
        let mut rows = vec![0u32; 1 << self.n_in];
        for c in &self.cubes {
            for x in c.minterms(self.n_in) {
                rows[x as usize] |= c.outputs;
            }
        }
        Ok(rows)
    }

    /// Copy of the cover with cube `index` removed.
    pub fn without_cube(&self, index: usize) -> Cover {
        let mut cubes = self.cubes.clone();
        cubes.remove(index);
        Cover {
            cubes,
            ..self.clone()
        }
    }
}

/// True iff `cover` computes `f` on every input assignment.
pub fn check_equivalence(cover: &Cover, f: &TruthFunction) -> Result<bool> {
    if (cover.n_in, cover.n_out) != (f.n_in(), f.n_out()) {
        return Err(Error::ArityMismatch {
            expected: (f.n_in(), f.n_out()),
            found: (cover.n_in, cover.n_out),
        });
    }
    Ok(cover.truth_rows()? == f.rows())
}

/// Sum of minterms: one fully specified cube per ON row, feeding every
/// output that is 1 on that row.
pub fn full_dnf(f: &TruthFunction) -> Cover {
    let care = low_mask(f.n_in());
    let cubes = f
        .rows()
        .iter()
        .enumerate()
        .filter(|(_, r)| **r != 0)
        .map(|(x, r)| Cube::new(x as u32, care, *r))
        .collect();
    Cover {
        n_in: f.n_in(),
        n_out: f.n_out(),
        cubes,
        provenance: Provenance::FullDnf,
    }
}

/// Minimum cover under the per-output disjunction measure.
///
/// Each output is covered independently by a minimum set of its own prime
/// implicants (branch and bound over the covering table); cubes that come
/// out identical for several outputs are merged into one multi-output cube.
/// Among equally small covers of an output, primes already chosen for
/// lower outputs are preferred so that sharing is maximized.
pub fn minimize_exact(f: &TruthFunction) -> Result<Cover> {
    if f.n_in() > EXACT_MAX_INPUTS {
        return Err(Error::ExactTooLarge {
            n_in: f.n_in(),
            cutoff: EXACT_MAX_INPUTS,
        });
    }
    let table = CubeTable::build(f);
    let mut chosen: Vec<(u32, u32, u32)> = Vec::new();
    let mut shared: BTreeSet<(u32, u32)> = BTreeSet::new();
    for t in 0..f.n_out() {
        let primes = table.single_output_primes(t);
        let onset: Vec<u32> = f.onset(t).collect();
        for (value, care) in ExactCover::new(f.n_in(), &onset, &primes, &shared).solve() {
            shared.insert((value, care));
            chosen.push((value, care, t));
        }
    }
    let mut cubes: Vec<Cube> = Vec::new();
    chosen.sort_unstable_by_key(|&(v, c, _)| (v, c));
    for (value, care, t) in chosen {
        match cubes.last_mut() {
            Some(last) if last.value == value && last.care == care => last.outputs |= 1 << t,
            _ => cubes.push(Cube::new(value, care, 1 << t)),
        }
    }
    cubes.sort();
    Ok(Cover {
        n_in: f.n_in(),
        n_out: f.n_out(),
        cubes,
        provenance: Provenance::Exact,
    })
}

/// Single-output set covering: ON minterms (rows) against primes (columns).
struct ExactCover<'a> {
    primes: &'a [(u32, u32)],
    /// Elements covered by each prime.
    cov: Vec<BitSet>,
    /// Primes covering each element.
    by_elem: Vec<BitSet>,
    elem_primes: Vec<Vec<usize>>,
    preferred: Vec<bool>,
}

impl<'a> ExactCover<'a> {
    fn new(
        n_in: u32,
        onset: &[u32],
        primes: &'a [(u32, u32)],
        shared: &BTreeSet<(u32, u32)>,
    ) -> Self {
        let mut cov = vec![BitSet::new(onset.len()); primes.len()];
        let mut by_elem = vec![BitSet::new(primes.len()); onset.len()];
        let mut elem_primes = vec![Vec::new(); onset.len()];
        for (p, &(value, care)) in primes.iter().enumerate() {
            for x in Cube::new(value, care, 1).minterms(n_in) {
                let e = onset.binary_search(&x).expect("prime inside ON-set");
                cov[p].insert(e);
                by_elem[e].insert(p);
                elem_primes[e].push(p);
            }
        }
        let preferred = primes.iter().map(|p| shared.contains(p)).collect();
        ExactCover {
            primes,
            cov,
            by_elem,
            elem_primes,
            preferred,
        }
    }

    fn solve(&self) -> Vec<(u32, u32)> {
        let mut all = BitSet::new(self.by_elem.len());
        for e in 0..self.by_elem.len() {
            all.insert(e);
        }
        let mut best = self.greedy(&all);
        let mut chosen = Vec::new();
        self.search(&all, &mut chosen, &mut best);
        best.sort_unstable();
        best.into_iter().map(|p| self.primes[p]).collect()
    }

    fn greedy(&self, all: &BitSet) -> Vec<usize> {
        let mut left = all.clone();
        let mut picked = Vec::new();
        while !left.is_empty() {
            let p = (0..self.primes.len())
                .max_by_key(|&p| (self.cov[p].count_and(&left), self.preferred[p], Reverse(p)))
                .expect("every element has a prime");
            left = left.difference(&self.cov[p]);
            picked.push(p);
        }
        picked
    }

    fn search(&self, left: &BitSet, chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
        if left.is_empty() {
            if chosen.len() < best.len() {
                best.clone_from(chosen);
            }
            return;
        }
        if chosen.len() + self.lower_bound(left) >= best.len() {
            return;
        }
        let elem = left
            .iter()
            .min_by_key(|&e| (self.elem_primes[e].len(), e))
            .expect("nonempty");
        for p in self.candidates(elem, left) {
            chosen.push(p);
            self.search(&left.difference(&self.cov[p]), chosen, best);
            chosen.pop();
        }
    }

    /// Size of a set of uncovered elements no two of which share a prime.
    fn lower_bound(&self, left: &BitSet) -> usize {
        let mut elems: Vec<usize> = left.iter().collect();
        elems.sort_unstable_by_key(|&e| (self.elem_primes[e].len(), e));
        let mut used = BitSet::new(self.primes.len());
        let mut count = 0;
        for e in elems {
            if !self.by_elem[e].intersects(&used) {
                used.union_with(&self.by_elem[e]);
                count += 1;
            }
        }
        count
    }

    /// Primes covering `elem`, minus those whose remaining coverage is
    /// contained in another candidate's, best first.
    fn candidates(&self, elem: usize, left: &BitSet) -> Vec<usize> {
        let options = &self.elem_primes[elem];
        let mut keep: Vec<usize> = options
            .iter()
            .enumerate()
            .filter(|&(i, &p)| {
                !options.iter().enumerate().any(|(j, &q)| {
                    j != i
                        && self.cov[p].subset_within(&self.cov[q], left)
                        && (!self.cov[q].subset_within(&self.cov[p], left) || j < i)
                })
            })
            .map(|(_, &p)| p)
            .collect();
        keep.sort_by_key(|&p| (Reverse(self.cov[p].count_and(left)), !self.preferred[p], p));
        keep
    }
}

/// Greedy multi-output minimization.
///
/// All multi-output primes are generated from the implicant table, then
/// picked largest-coverage-first (coverage counted in uncovered
/// minterm/output pairs, ties to the lexicographically smallest cube) until
/// every ON point of every output is covered. A pass that drops redundant
/// output connections and cubes follows, then each cube is expanded against
/// its remaining outputs and the redundancy pass is repeated.
pub fn minimize_heuristic(f: &TruthFunction) -> Cover {
    let n_in = f.n_in();
    let n_out = f.n_out() as usize;
    let table = CubeTable::build(f);
    let primes: Vec<Cube> = table
        .multi_output_primes()
        .into_iter()
        .map(|(v, c, tag)| Cube::new(v, c, u32::from(tag)))
        .collect();

    let mut heap: BinaryHeap<(u64, Reverse<u64>, usize)> = primes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let size = 1u64 << (n_in - c.literal_count());
            (
                size * u64::from(c.outputs.count_ones()),
                Reverse(c.rank()),
                i,
            )
        })
        .collect();

    let mut uncovered: Vec<u32> = f.rows().to_vec();
    let mut remaining: u64 = crate::tables::dnf_disjunction_count(f);
    let mut cubes: Vec<Cube> = Vec::new();
    while remaining > 0 {
        let (stored, rank, i) = heap.pop().expect("primes cover the function");
        let cube = primes[i];
        let gain: u64 = cube
            .minterms(n_in)
            .map(|x| u64::from((uncovered[x as usize] & cube.outputs).count_ones()))
            .sum();
        if gain == 0 {
            continue;
        }
        if gain < stored {
            heap.push((gain, rank, i));
            continue;
        }
        for x in cube.minterms(n_in) {
            uncovered[x as usize] &= !cube.outputs;
        }
        remaining -= gain;
        cubes.push(cube);
    }
    drop(heap);

    let mut counts = vec![0u32; (1usize << n_in) * n_out];
    for c in &cubes {
        add_coverage(&mut counts, c, n_in, n_out);
    }
    irredundant(&mut cubes, &mut counts, n_in, n_out);
    for c in cubes.iter_mut() {
        for i in 0..n_in {
            if c.care >> i & 1 == 0 {
                continue;
            }
            let raised = c.raise(i);
            if u32::from(table.tag(raised.value, raised.care)) & c.outputs == c.outputs {
                let gained = Cube::new(c.value ^ (1 << i), c.care, c.outputs);
                add_coverage(&mut counts, &gained, n_in, n_out);
                *c = raised;
            }
        }
    }
    irredundant(&mut cubes, &mut counts, n_in, n_out);
    cubes.sort();
    Cover {
        n_in,
        n_out: f.n_out(),
        cubes,
        provenance: Provenance::Heuristic,
    }
}

fn add_coverage(counts: &mut [u32], c: &Cube, n_in: u32, n_out: usize) {
    for x in c.minterms(n_in) {
        for_each_bit(c.outputs, |t| counts[x as usize * n_out + t] += 1);
    }
}

/// Removes output connections (latest cubes first) whose every minterm is
/// also covered by another cube, then drops cubes left with no outputs.
fn irredundant(cubes: &mut Vec<Cube>, counts: &mut [u32], n_in: u32, n_out: usize) {
    for c in cubes.iter_mut().rev() {
        let mut outputs = c.outputs;
        for_each_bit(c.outputs, |t| {
            if c.minterms(n_in)
                .all(|x| counts[x as usize * n_out + t] >= 2)
            {
                outputs &= !(1 << t);
                for x in c.minterms(n_in) {
                    counts[x as usize * n_out + t] -= 1;
                }
            }
        });
        c.outputs = outputs;
    }
    cubes.retain(|c| c.outputs != 0);
}

fn for_each_bit(mask: u32, mut f: impl FnMut(usize)) {
    let mut rest = mask;
    while rest != 0 {
        f(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
}
