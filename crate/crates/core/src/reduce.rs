//! Packing block products into concatenated summands.
//!
//! Two block products whose bit ranges do not overlap need no adder: they
//! can be wired side by side into one vector, with zeros in the gaps. The
//! packer assigns every term of a [`MulPlan`] to a summand so that the final
//! adder tree only has to add the summands.
//!
//! Terms are taken by ascending shift, wider terms first among equal
//! shifts, then by `(i, j)`, and placed first-fit. Because all
//! terms are intervals and they arrive ordered by left endpoint, first-fit
//! uses exactly as many summands as the largest set of mutually
//! overlapping terms, which is the minimum any concatenation layout can
//! reach.

use alloc::vec::Vec;

use crate::ceil_log2;
use crate::compose::MulPlan;

/// What occupies a segment of a summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentSource {
    /// Index into [`MulPlan::terms`].
    Term(usize),
    /// Index into [`AdderTreePlan::pre_adds`].
    PreAdd(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub source: SegmentSource,
    pub offset: u32,
    pub width: u32,
}

impl Segment {
    fn end(&self) -> u32 {
        self.offset + self.width
    }

    fn overlaps(&self, offset: u32, width: u32) -> bool {
        self.offset < offset + width && offset < self.end()
    }
}

/// One addend of the final tree: disjoint segments, zero elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Summand {
    /// Ascending by offset.
    pub segments: Vec<Segment>,
    /// Width of the multiplier output.
    pub width: u32,
}

impl Summand {
    /// One past the highest bit any segment occupies.
    pub fn extent(&self) -> u32 {
        self.segments.iter().map(Segment::end).max().unwrap_or(0)
    }

    fn fits(&self, offset: u32, width: u32) -> bool {
        !self.segments.iter().any(|s| s.overlaps(offset, width))
    }

    fn place(&mut self, seg: Segment) {
        let at = self.segments.partition_point(|s| s.offset < seg.offset);
        self.segments.insert(at, seg);
    }

    /// Integer value given the (already truncated) value of every term and
    /// pre-add.
    pub fn value(&self, terms: &[u64], pre_adds: &[u64]) -> u128 {
        self.segments
            .iter()
            .map(|s| {
                let v = match s.source {
                    SegmentSource::Term(i) => terms[i],
                    SegmentSource::PreAdd(i) => pre_adds[i],
                };
                u128::from(v) << s.offset
            })
            .sum()
    }
}

/// Sum of two equal-shift terms computed ahead of the tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PreAdd {
    pub left: usize,
    pub right: usize,
    pub shift: u32,
    /// One bit wider than the wider input, unless the output cuts it.
    pub eff_width: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdderTreePlan {
    pub summands: Vec<Summand>,
    pub pre_adds: Vec<PreAdd>,
    /// Tree adders plus pre-adders.
    pub adder_count: usize,
    /// Levels of the balanced tree over the summands.
    pub depth_levels: u32,
    /// Extra level in front of the tree when pre-adders exist.
    pub pre_add_levels: u32,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct PackOptions {
    /// Pair up lone equal-shift terms through a pre-adder.
    pub pre_adds: bool,
}

/// Packs with default options (no pre-adders).
pub fn pack_summands(plan: &MulPlan) -> AdderTreePlan {
    pack_summands_with(plan, PackOptions::default())
}

pub fn pack_summands_with(plan: &MulPlan, options: PackOptions) -> AdderTreePlan {
    let width = plan.output_width();
    let mut order: Vec<usize> = (0..plan.terms().len()).collect();
    order.sort_by_key(|&t| {
        let term = &plan.terms()[t];
        (term.shift, core::cmp::Reverse(term.eff_width))
    });

    let mut summands: Vec<Summand> = Vec::new();
    for t in order {
        let term = &plan.terms()[t];
        let seg = Segment {
            source: SegmentSource::Term(t),
            offset: term.shift,
            width: term.eff_width,
        };
        match summands.iter_mut().find(|s| s.fits(seg.offset, seg.width)) {
            Some(s) => s.place(seg),
            None => summands.push(Summand {
                segments: alloc::vec![seg],
                width,
            }),
        }
    }

    let mut pre_adds = Vec::new();
    if options.pre_adds {
        while merge_lone_pair(&mut summands, &mut pre_adds, width) {}
    }

    let adder_count = summands.len().saturating_sub(1) + pre_adds.len();
    AdderTreePlan {
        depth_levels: ceil_log2(summands.len()),
        pre_add_levels: u32::from(!pre_adds.is_empty()),
        summands,
        pre_adds,
        adder_count,
    }
}

/// Finds two summands that each hold one term at the same shift, replaces
/// them with a pre-adder, and places the sum first-fit (or alone).
fn merge_lone_pair(summands: &mut Vec<Summand>, pre_adds: &mut Vec<PreAdd>, width: u32) -> bool {
    let lone = |s: &Summand| match s.segments.as_slice() {
        [seg @ Segment {
            source: SegmentSource::Term(_),
            ..
        }] => Some(*seg),
        _ => None,
    };
    let pair = (0..summands.len()).find_map(|x| {
        let a = lone(&summands[x])?;
        (x + 1..summands.len()).find_map(|y| {
            lone(&summands[y])
                .filter(|b| b.offset == a.offset)
                .map(|b| (x, y, a, b))
        })
    });
    let Some((x, y, a, b)) = pair else {
        return false;
    };
    let (SegmentSource::Term(left), SegmentSource::Term(right)) = (a.source, b.source) else {
        unreachable!("lone segments are terms")
    };
    let eff_width = (a.width.max(b.width) + 1).min(width - a.offset);
    let seg = Segment {
        source: SegmentSource::PreAdd(pre_adds.len()),
        offset: a.offset,
        width: eff_width,
    };
    pre_adds.push(PreAdd {
        left,
        right,
        shift: a.offset,
        eff_width,
    });
    summands.remove(y);
    summands.remove(x);
    match summands.iter_mut().find(|s| s.fits(seg.offset, seg.width)) {
        Some(s) => s.place(seg),
        None => summands.push(Summand {
            segments: alloc::vec![seg],
            width,
        }),
    }
    true
}

/// Adders of the unreduced tree: one per term beyond the first.
pub fn common_case_adders(plan: &MulPlan) -> usize {
    plan.terms().len().saturating_sub(1)
}

/// Depth of the unreduced tree.
pub fn common_case_depth(plan: &MulPlan) -> u32 {
    ceil_log2(plan.terms().len())
}

pub fn tree_depth(tree: &AdderTreePlan) -> u32 {
    tree.depth_levels
}
