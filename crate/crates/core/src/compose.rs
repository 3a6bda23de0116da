//! Operand splitting and partial-product planning.
//!
//! Both operands of an `n x n` multiplier are cut into `k = ceil(n / m)`
//! groups, least significant first; every group is `m` bits wide except the
//! most significant one, which takes whatever is left. The product is then
//! the sum over all group pairs `(i, j)` of `A_i * B_j << m*(i + j - 2)`,
//! where group indices are 1-based.
//!
//! In low-half mode only the `n` low bits of the result matter, so pairs
//! whose shift reaches `n` vanish and the rest are narrowed to the bits that
//! still land below `n`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::tables::{check_range, low_mask, ArithMode, BlockShape, MAX_BLOCK_WIDTH};
use crate::{Error, Result};

pub const MIN_OPERAND_WIDTH: u32 = 2;
pub const MAX_OPERAND_WIDTH: u32 = 32;
pub const MIN_GROUP_WIDTH: u32 = 2;

/// How an `n`-bit operand is cut into groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitPlan {
    n: u32,
    m: u32,
    group_widths: Vec<u32>,
}

impl SplitPlan {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of groups.
    pub fn k(&self) -> u32 {
        self.group_widths.len() as u32
    }

    /// Group widths, least significant group first.
    pub fn group_widths(&self) -> &[u32] {
        &self.group_widths
    }

    /// Bit offset of 0-based group `g`.
    pub fn offset(&self, g: usize) -> u32 {
        self.m * g as u32
    }

    /// Cuts `x` into its group values.
    pub fn split(&self, x: u64) -> Vec<u64> {
        (0..self.group_widths.len())
            .map(|g| (x >> self.offset(g)) & u64::from(low_mask(self.group_widths[g])))
            .collect()
    }

    /// Inverse of [`SplitPlan::split`].
    pub fn join(&self, groups: &[u64]) -> u64 {
        groups
            .iter()
            .enumerate()
            .fold(0, |acc, (g, v)| acc | v << self.offset(g))
    }
}

/// Splits an `n`-bit operand into `m`-bit groups; the top group is narrower
/// when `m` does not divide `n`.
pub fn split_operand(n: u32, m: u32) -> Result<SplitPlan> {
    check_range("group width", m, MIN_GROUP_WIDTH, MAX_BLOCK_WIDTH)?;
    check_range("operand width", n, MIN_OPERAND_WIDTH, MAX_OPERAND_WIDTH)?;
    if m > n {
        return Err(Error::GroupWiderThanOperand { m, n });
    }
    let k = n.div_ceil(m);
    let group_widths = (0..k).map(|g| m.min(n - g * m)).collect();
    Ok(SplitPlan { n, m, group_widths })
}

/// Group width used when none is given: 5 when it divides `n`, 4 otherwise,
/// never wider than the operand itself.
pub fn default_group_width(n: u32) -> u32 {
    let m = if n.is_multiple_of(5) { 5 } else { 4 };
    m.min(n)
}

/// One block product `A_i * B_j`, shifted into place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartialTerm {
    /// 1-based group index into operand `a`.
    pub i: u32,
    /// 1-based group index into operand `b`.
    pub j: u32,
    pub w_i: u32,
    pub w_j: u32,
    pub shift: u32,
    /// Number of low product bits the term contributes.
    pub eff_width: u32,
}

impl PartialTerm {
    pub fn shape(&self) -> BlockShape {
        BlockShape::new(self.w_i, self.w_j, self.eff_width)
    }

    /// `[shift, shift + eff_width)`
    pub fn interval(&self) -> (u32, u32) {
        (self.shift, self.shift + self.eff_width)
    }

    /// The block product, truncated to `eff_width` bits and not yet shifted.
    pub fn block_value(&self, split: &SplitPlan, a: u64, b: u64) -> u64 {
        let ai = (a >> split.offset(self.i as usize - 1)) & u64::from(low_mask(self.w_i));
        let bj = (b >> split.offset(self.j as usize - 1)) & u64::from(low_mask(self.w_j));
        (ai * bj) & u64::from(low_mask(self.eff_width))
    }
}

/// Full composition of an `n x n` multiplier from block products.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MulPlan {
    mode: ArithMode,
    split: SplitPlan,
    terms: Vec<PartialTerm>,
    output_width: u32,
}

impl MulPlan {
    pub fn mode(&self) -> ArithMode {
        self.mode
    }

    pub fn split(&self) -> &SplitPlan {
        &self.split
    }

    pub fn n(&self) -> u32 {
        self.split.n
    }

    pub fn m(&self) -> u32 {
        self.split.m
    }

    /// Terms in `(i, j)` lexicographic order.
    pub fn terms(&self) -> &[PartialTerm] {
        &self.terms
    }

    pub fn output_width(&self) -> u32 {
        self.output_width
    }

    /// `m * k`, the operand width rounded up to whole groups.
    pub fn covered_width(&self) -> u32 {
        self.split.m * self.split.k()
    }

    /// Group pairs absent from the plan (low-half mode only), 1-based.
    pub fn dropped(&self) -> Vec<(u32, u32)> {
        let k = self.split.k();
        (1..=k)
            .flat_map(|i| (1..=k).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.terms.iter().any(|t| (t.i, t.j) == (i, j)))
            .collect()
    }

    /// Sum of all shifted terms, before any reduction modulo the output.
    pub fn sum_terms(&self, a: u64, b: u64) -> u128 {
        self.terms
            .iter()
            .map(|t| u128::from(t.block_value(&self.split, a, b)) << t.shift)
            .sum()
    }
}

/// Enumerates the block products of an `n x n` multiplier with group
/// width `m`.
pub fn plan_partial_products(n: u32, m: u32, mode: ArithMode) -> Result<MulPlan> {
    let split = split_operand(n, m)?;
    let widths = split.group_widths.clone();
    let mut terms = Vec::new();
    for (gi, &w_i) in widths.iter().enumerate() {
        for (gj, &w_j) in widths.iter().enumerate() {
            let shift = m * (gi + gj) as u32;
            let eff_width = match mode {
                ArithMode::FullWidth => w_i + w_j,
                ArithMode::LowHalf if shift >= n => continue,
                ArithMode::LowHalf => (w_i + w_j).min(n - shift),
            };
            terms.push(PartialTerm {
                i: gi as u32 + 1,
                j: gj as u32 + 1,
                w_i,
                w_j,
                shift,
                eff_width,
            });
        }
    }
    let output_width = match mode {
        ArithMode::FullWidth => 2 * n,
        ArithMode::LowHalf => n,
    };
    Ok(MulPlan {
        mode,
        split,
        terms,
        output_width,
    })
}

/// Distinct block shapes a plan instantiates.
pub fn block_requirements(plan: &MulPlan) -> BTreeSet<BlockShape> {
    plan.terms.iter().map(PartialTerm::shape).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_examples() {
        assert_eq!(split_operand(14, 4).unwrap().group_widths(), &[4, 4, 4, 2]);
        assert_eq!(split_operand(8, 4).unwrap().group_widths(), &[4, 4]);
        let s = split_operand(30, 5).unwrap();
        assert_eq!(s.group_widths(), &[5; 6]);
        assert_eq!(s.k(), 6);
    }

    #[test]
    fn split_errors() {
        assert_eq!(
            split_operand(3, 4),
            Err(Error::GroupWiderThanOperand { m: 4, n: 3 })
        );
        assert!(split_operand(33, 4).is_err());
        assert!(split_operand(16, 1).is_err());
        assert!(split_operand(16, 9).is_err());
    }

    #[test]
    fn default_widths() {
        assert_eq!(default_group_width(30), 5);
        assert_eq!(default_group_width(14), 4);
        assert_eq!(default_group_width(10), 5);
        assert_eq!(default_group_width(3), 3);
    }

    #[test]
    fn fourteen_full_width() {
        let plan = plan_partial_products(14, 4, ArithMode::FullWidth).unwrap();
        assert_eq!(plan.terms().len(), 16);
        let shifts: BTreeSet<u32> = plan.terms().iter().map(|t| t.shift).collect();
        assert_eq!(
            shifts.into_iter().collect::<Vec<_>>(),
            [0, 4, 8, 12, 16, 20, 24]
        );
        assert_eq!(plan.output_width(), 28);
        assert_eq!(plan.covered_width(), 16);
        assert!(plan.dropped().is_empty());
    }

    #[test]
    fn fourteen_low_half() {
        let plan = plan_partial_products(14, 4, ArithMode::LowHalf).unwrap();
        assert_eq!(plan.terms().len(), 10);
        assert_eq!(
            plan.dropped(),
            [(2, 4), (3, 3), (3, 4), (4, 2), (4, 3), (4, 4)]
        );
        let t14 = plan.terms().iter().find(|t| (t.i, t.j) == (1, 4)).unwrap();
        assert_eq!((t14.shift, t14.eff_width), (12, 2));
    }

    #[test]
    fn block_shapes() {
        let full = plan_partial_products(14, 4, ArithMode::FullWidth).unwrap();
        let expect: BTreeSet<BlockShape> = [(4, 4, 8), (4, 2, 6), (2, 4, 6), (2, 2, 4)]
            .into_iter()
            .map(|(a, b, o)| BlockShape::new(a, b, o))
            .collect();
        assert_eq!(block_requirements(&full), expect);

        let eight = plan_partial_products(8, 4, ArithMode::FullWidth).unwrap();
        assert_eq!(
            block_requirements(&eight).into_iter().collect::<Vec<_>>(),
            [BlockShape::new(4, 4, 8)]
        );

        let low = plan_partial_products(14, 4, ArithMode::LowHalf).unwrap();
        assert!(block_requirements(&low).contains(&BlockShape::new(4, 2, 2)));
    }

    #[test]
    fn split_join_roundtrip() {
        let s = split_operand(14, 4).unwrap();
        let x = 0b10_1101_0110_1001;
        assert_eq!(s.split(x), [0b1001, 0b0110, 0b1101, 0b10]);
        assert_eq!(s.join(&s.split(x)), x);
    }
}
