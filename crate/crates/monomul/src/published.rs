//! Published reference counts, kept as data so table diffs can cite them.

use monomul_core::ArithMode;

/// One row of the monolithic-block table: `w x w`, full-DNF disjunctions and
/// minimized term count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockRow {
    pub width: u32,
    pub dnf: u64,
    pub minimized: u64,
}

/// One row of the adder table: `n x n`, adders without and with packing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdderRow {
    pub n: u32,
    pub common: usize,
    pub reduced: usize,
}

const fn b(width: u32, dnf: u64, minimized: u64) -> BlockRow {
    BlockRow {
        width,
        dnf,
        minimized,
    }
}

const fn a(n: u32, common: usize, reduced: usize) -> AdderRow {
    AdderRow { n, common, reduced }
}

pub const TABLE_1A: (&str, [BlockRow; 7]) = (
    "Table 1a",
    [
        b(2, 14, 8),
        b(3, 111, 40),
        b(4, 678, 160),
        b(5, 3733, 629),
        b(6, 18953, 2435),
        b(7, 92334, 9194),
        b(8, 434660, 38957),
    ],
);

pub const TABLE_1B: (&str, [BlockRow; 7]) = (
    "Table 1b",
    [
        b(2, 10, 5),
        b(3, 68, 14),
        b(4, 392, 44),
        b(5, 2064, 143),
        b(6, 10272, 511),
        b(7, 49216, 1881),
        b(8, 229504, 6916),
    ],
);

pub const TABLE_2A: (&str, [AdderRow; 13]) = (
    "Table 2a",
    [
        a(8, 3, 2),
        a(10, 3, 2),
        a(12, 19, 10),
        a(14, 15, 6),
        a(16, 25, 6),
        a(18, 25, 8),
        a(20, 15, 6),
        a(22, 35, 10),
        a(24, 35, 10),
        a(26, 48, 12),
        a(28, 48, 12),
        a(30, 35, 10),
        a(32, 63, 14),
    ],
);

pub const TABLE_2B: (&str, [AdderRow; 13]) = (
    "Table 2b",
    [
        a(8, 2, 2),
        a(10, 2, 2),
        a(12, 5, 4),
        a(14, 9, 6),
        a(16, 10, 6),
        a(18, 14, 6),
        a(20, 9, 6),
        a(22, 21, 10),
        a(24, 21, 10),
        a(26, 27, 12),
        a(28, 28, 12),
        a(30, 21, 10),
        a(32, 35, 21),
    ],
);

/// Published cells that cannot be reproduced by the splitting and packing
/// rules they are attributed to, with the reason.
pub const KNOWN_DISCREPANCIES: &[(ArithMode, u32, Column, &str)] = &[
    (ArithMode::FullWidth, 12, Column::Common, "k=3 gives k^2-1 = 8 adders for every m in {3,4,5} that splits 12 bits into 3 groups"),
    (ArithMode::FullWidth, 16, Column::Common, "k=4 gives k^2-1 = 15 adders"),
    (ArithMode::FullWidth, 18, Column::Common, "k=5 gives k^2-1 = 24 adders"),
    (ArithMode::LowHalf, 16, Column::Common, "published value equals the term count (10), not terms-1"),
    (ArithMode::LowHalf, 22, Column::Common, "published value equals the term count (21), not terms-1"),
    (ArithMode::LowHalf, 24, Column::Common, "published value equals the term count (21), not terms-1"),
    (ArithMode::LowHalf, 28, Column::Common, "published value equals the term count (28), not terms-1"),
    (ArithMode::LowHalf, 30, Column::Common, "published value equals the term count (21), not terms-1"),
    (ArithMode::LowHalf, 18, Column::Reduced, "9 retained terms all overlap bits [16,18), so no concatenation layout has fewer than 9 summands (8 adders)"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Column {
    Dnf,
    Minimized,
    Common,
    Reduced,
}

impl Column {
    pub fn as_str(self) -> &'static str {
        match self {
            Column::Dnf => "dnf",
            Column::Minimized => "minimized",
            Column::Common => "common",
            Column::Reduced => "reduced",
        }
    }
}

pub fn known_discrepancy(mode: ArithMode, n: u32, column: Column) -> Option<&'static str> {
    KNOWN_DISCREPANCIES
        .iter()
        .find(|(m, k, c, _)| *m == mode && *k == n && *c == column)
        .map(|d| d.3)
}
