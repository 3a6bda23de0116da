//! Implicant tables over the ternary cube lattice.
//!
//! Every input cube is numbered by its ternary digits (0, 1, or 2 for a
//! free variable, variable 0 least significant). The table stores, for each
//! cube, the set of outputs whose ON-set contains the whole cube. A cube
//! with a free variable is the merge of its two halves, so the table is
//! filled in one pass in index order, exactly the pairwise merging of
//! tabular Quine-McCluskey carried out over all cubes at once.

use alloc::vec;
use alloc::vec::Vec;

use crate::tables::TruthFunction;

pub(crate) struct CubeTable {
    n_in: u32,
    pow3: Vec<usize>,
    tags: Vec<u16>,
}

impl CubeTable {
    pub fn build(f: &TruthFunction) -> Self {
        assert!(f.n_out() <= 16, "cube table stores 16-bit output tags");
        let n_in = f.n_in();
        let pow3: Vec<usize> = (0..=n_in).map(|i| 3usize.pow(i)).collect();
        let mut tags = vec![0u16; pow3[n_in as usize]];
        for_each_cube(n_in, |idx, value, free| {
            tags[idx] = if free == 0 {
                f.row(value) as u16
            } else {
                let p = pow3[free.trailing_zeros() as usize];
                tags[idx - 2 * p] & tags[idx - p]
            };
        });
        CubeTable { n_in, pow3, tags }
    }

    pub fn index(&self, value: u32, care: u32) -> usize {
        (0..self.n_in as usize)
            .map(|i| {
                let digit = if care >> i & 1 == 0 {
                    2
                } else {
                    (value >> i & 1) as usize
                };
                digit * self.pow3[i]
            })
            .sum()
    }

    /// Outputs implied by every minterm of the cube.
    pub fn tag(&self, value: u32, care: u32) -> u16 {
        self.tags[self.index(value, care)]
    }

    /// Multi-output primes `(value, care, outputs)`: cubes whose output set
    /// shrinks whenever any literal is dropped.
    pub fn multi_output_primes(&self) -> Vec<(u32, u32, u16)> {
        let mut out = Vec::new();
        let full = crate::tables::low_mask(self.n_in);
        for_each_cube(self.n_in, |idx, value, free| {
            let tag = self.tags[idx];
            if tag != 0 && self.is_prime_for(idx, value, free, |t| t == tag) {
                out.push((value, full & !free, tag));
            }
        });
        out
    }

    /// Primes of a single output `t`.
    pub fn single_output_primes(&self, t: u32) -> Vec<(u32, u32)> {
        let bit = 1u16 << t;
        let mut out = Vec::new();
        let full = crate::tables::low_mask(self.n_in);
        for_each_cube(self.n_in, |idx, value, free| {
            if self.tags[idx] & bit != 0 && self.is_prime_for(idx, value, free, |t| t & bit != 0) {
                out.push((value, full & !free));
            }
        });
        out
    }

    fn is_prime_for(&self, idx: usize, value: u32, free: u32, keeps: impl Fn(u16) -> bool) -> bool {
        (0..self.n_in as usize).all(|i| {
            if free >> i & 1 == 1 {
                return true;
            }
            let digit = (value >> i & 1) as usize;
            !keeps(self.tags[idx + (2 - digit) * self.pow3[i]])
        })
    }
}

/// Walks all `3^n` cubes in index order, passing `(index, value, free)`.
/// `value` has zeros on free positions.
fn for_each_cube(n: u32, mut f: impl FnMut(usize, u32, u32)) {
    let total = 3usize.pow(n);
    let (mut value, mut free) = (0u32, 0u32);
    for idx in 0..total {
        f(idx, value, free);
        for i in 0..n {
            let bit = 1 << i;
            if free & bit != 0 {
                free &= !bit;
                continue;
            }
            if value & bit != 0 {
                value &= !bit;
                free |= bit;
            } else {
                value |= bit;
            }
            break;
        }
    }
}
