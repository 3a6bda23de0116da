//! Structural realization of a planned multiplier.
//!
//! A [`Netlist`] holds one definition per distinct block shape (its SOP
//! cover) and a list of nets in topological order: block instances, the
//! optional pre-adders, the concatenated summands and the balanced adder
//! tree. Every net has exactly one driver, and drivers only read nets that
//! come earlier in the list.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::compose::{block_requirements, MulPlan};
use crate::minimize::Cover;
use crate::reduce::{AdderTreePlan, SegmentSource};
use crate::tables::{low_mask, ArithMode, BlockShape};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NetId(pub usize);

/// A block shape together with the cover that realizes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDef {
    shape: BlockShape,
    cover: Cover,
    /// Cover output for every input row, index `a | b << a_width`.
    rows: Vec<u32>,
}

impl BlockDef {
    fn new(shape: BlockShape, cover: Cover) -> Result<Self> {
        if (cover.n_in(), cover.n_out()) != (shape.n_in(), shape.out_width) {
            return Err(Error::ArityMismatch {
                expected: (shape.n_in(), shape.out_width),
                found: (cover.n_in(), cover.n_out()),
            });
        }
        let rows = cover.truth_rows()?;
        Ok(BlockDef { shape, cover, rows })
    }

    pub fn shape(&self) -> BlockShape {
        self.shape
    }

    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    /// Module name used for this block in emitted sources.
    pub fn module_name(&self) -> String {
        format!(
            "mono_mul_{}x{}_{}",
            self.shape.a_width, self.shape.b_width, self.shape.out_width
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Driver {
    /// Instance of `defs[def]` fed by operand bits starting at the offsets.
    Block {
        def: usize,
        a_offset: u32,
        b_offset: u32,
    },
    PreAdd {
        left: NetId,
        right: NetId,
    },
    /// `(net, bit offset)` pairs, ascending and disjoint; gaps are zero.
    Concat {
        parts: Vec<(NetId, u32)>,
    },
    Add {
        left: NetId,
        right: NetId,
        level: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Net {
    pub name: String,
    pub width: u32,
    pub driver: Driver,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Netlist {
    name: String,
    n: u32,
    m: u32,
    mode: ArithMode,
    r_width: u32,
    defs: Vec<BlockDef>,
    nets: Vec<Net>,
    output: NetId,
    depth: u32,
}

/// Builds the netlist for `plan` laid out as `tree`, taking block covers
/// from `covers`.
///
/// Covers are only checked for arity here; the caller is expected to have
/// verified them against their truth tables.
pub fn lower(
    plan: &MulPlan,
    tree: &AdderTreePlan,
    covers: &BTreeMap<BlockShape, Cover>,
) -> Result<Netlist> {
    let shapes: Vec<BlockShape> = block_requirements(plan).into_iter().collect();
    let defs = shapes
        .iter()
        .map(|shape| {
            let cover = covers.get(shape).ok_or(Error::MissingCover(*shape))?;
            BlockDef::new(*shape, cover.clone())
        })
        .collect::<Result<Vec<_>>>()?;

    let mut nets: Vec<Net> = Vec::new();
    let split = plan.split();
    let term_nets: Vec<NetId> = plan
        .terms()
        .iter()
        .map(|t| {
            let def = shapes
                .binary_search(&t.shape())
                .expect("shape collected above");
            push(
                &mut nets,
                format!("p{}_{}", t.i, t.j),
                t.eff_width,
                Driver::Block {
                    def,
                    a_offset: split.offset(t.i as usize - 1),
                    b_offset: split.offset(t.j as usize - 1),
                },
            )
        })
        .collect();

    let pre_nets: Vec<NetId> = tree
        .pre_adds
        .iter()
        .enumerate()
        .map(|(k, p)| {
            push(
                &mut nets,
                format!("q{k}"),
                p.eff_width,
                Driver::PreAdd {
                    left: term_nets[p.left],
                    right: term_nets[p.right],
                },
            )
        })
        .collect();

    let mut level_nets: Vec<NetId> = Vec::with_capacity(tree.summands.len());
    for (k, s) in tree.summands.iter().enumerate() {
        let parts: Vec<(NetId, u32)> = s
            .segments
            .iter()
            .map(|seg| {
                let net = match seg.source {
                    SegmentSource::Term(t) => term_nets[t],
                    SegmentSource::PreAdd(p) => pre_nets[p],
                };
                (net, seg.offset)
            })
            .collect();
        let id = match parts.as_slice() {
            [(net, 0)] => *net,
            _ => push(
                &mut nets,
                format!("s{k}"),
                s.extent(),
                Driver::Concat { parts },
            ),
        };
        level_nets.push(id);
    }

    let r_width = plan.output_width();
    let mut level = 0;
    while level_nets.len() > 1 {
        level += 1;
        let mut next = Vec::with_capacity(level_nets.len().div_ceil(2));
        for (k, pair) in level_nets.chunks(2).enumerate() {
            match *pair {
                [left, right] => {
                    let width = (nets[left.0].width.max(nets[right.0].width) + 1).min(r_width);
                    next.push(push(
                        &mut nets,
                        format!("t{level}_{k}"),
                        width,
                        Driver::Add { left, right, level },
                    ));
                }
                [single] => next.push(single),
                _ => unreachable!(),
            }
        }
        level_nets = next;
    }

    Ok(Netlist {
        name: format!("mul_{0}x{0}_{1}_m{2}", plan.n(), plan.mode(), plan.m()),
        n: plan.n(),
        m: plan.m(),
        mode: plan.mode(),
        r_width,
        defs,
        nets,
        output: level_nets[0],
        depth: level,
    })
}

fn push(nets: &mut Vec<Net>, name: String, width: u32, driver: Driver) -> NetId {
    nets.push(Net {
        name,
        width,
        driver,
    });
    NetId(nets.len() - 1)
}

impl Netlist {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Operand width (both `a` and `b`).
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn mode(&self) -> ArithMode {
        self.mode
    }

    pub fn r_width(&self) -> u32 {
        self.r_width
    }

    pub fn defs(&self) -> &[BlockDef] {
        &self.defs
    }

    pub fn nets(&self) -> &[Net] {
        &self.nets
    }

    pub fn net(&self, id: NetId) -> &Net {
        &self.nets[id.0]
    }

    /// The net wired to output port `r`.
    pub fn output(&self) -> NetId {
        self.output
    }

    /// Levels of the adder tree.
    pub fn tree_depth(&self) -> u32 {
        self.depth
    }

    pub fn blocks(&self) -> impl Iterator<Item = (NetId, &Net)> {
        self.filter(|d| matches!(d, Driver::Block { .. }))
    }

    pub fn concats(&self) -> impl Iterator<Item = (NetId, &Net)> {
        self.filter(|d| matches!(d, Driver::Concat { .. }))
    }

    pub fn adders(&self) -> impl Iterator<Item = (NetId, &Net)> {
        self.filter(|d| matches!(d, Driver::Add { .. } | Driver::PreAdd { .. }))
    }

    fn filter(&self, keep: impl Fn(&Driver) -> bool) -> impl Iterator<Item = (NetId, &Net)> {
        self.nets
            .iter()
            .enumerate()
            .filter(move |(_, n)| keep(&n.driver))
            .map(|(i, n)| (NetId(i), n))
    }

    /// Replaces the cover of one block shape, e.g. to inject a fault.
    pub fn with_cover(&self, shape: BlockShape, cover: Cover) -> Result<Netlist> {
        let idx = self
            .defs
            .iter()
            .position(|d| d.shape == shape)
            .ok_or(Error::MissingCover(shape))?;
        let mut out = self.clone();
        out.defs[idx] = BlockDef::new(shape, cover)?;
        Ok(out)
    }

    /// Value of port `r` for operands `a` and `b`.
    pub fn evaluate(&self, a: u64, b: u64) -> Result<u128> {
        for v in [a, b] {
            if self.n < 64 && v >> self.n != 0 {
                return Err(Error::OperandOutOfRange {
                    value: v,
                    width: self.n,
                });
            }
        }
        Ok(self.evaluator().eval(a, b))
    }

    /// Reusable evaluation state for many evaluations in a row.
    pub fn evaluator(&self) -> Evaluator<'_> {
        Evaluator {
            netlist: self,
            values: vec![0; self.nets.len()],
        }
    }

    /// Checks driver order, name uniqueness, segment layout, widths and tree
    /// depth.
    pub fn check_structure(&self) -> Result<()> {
        let fail = |net: usize, problem| Err(Error::Structure { net, problem });
        let mut names = BTreeSet::new();
        let mut depth = 0;
        for (i, net) in self.nets.iter().enumerate() {
            if !names.insert(net.name.as_str()) {
                return fail(i, "name driven twice");
            }
            if net.width == 0 || net.width > self.r_width {
                return fail(i, "width outside output range");
            }
            let reads: Vec<NetId> = match &net.driver {
                Driver::Block {
                    def,
                    a_offset,
                    b_offset,
                } => {
                    let Some(d) = self.defs.get(*def) else {
                        return fail(i, "unknown block definition");
                    };
                    if a_offset + d.shape.a_width > self.n || b_offset + d.shape.b_width > self.n {
                        return fail(i, "block reads past operand");
                    }
                    if d.shape.out_width != net.width {
                        return fail(i, "block width mismatch");
                    }
                    Vec::new()
                }
                Driver::PreAdd { left, right } => vec![*left, *right],
                Driver::Add { left, right, level } => {
                    depth = depth.max(*level);
                    vec![*left, *right]
                }
                Driver::Concat { parts } => {
                    let mut end = 0;
                    for (src, off) in parts {
                        if *off < end {
                            return fail(i, "overlapping concatenation segments");
                        }
                        if src.0 < self.nets.len() {
                            end = off + self.nets[src.0].width;
                        }
                    }
                    if end > net.width {
                        return fail(i, "concatenation wider than net");
                    }
                    parts.iter().map(|p| p.0).collect()
                }
            };
            if reads.iter().any(|r| r.0 >= i) {
                return fail(i, "reads a net that is not yet driven");
            }
        }
        if self.output.0 >= self.nets.len() {
            return fail(self.output.0, "output net missing");
        }
        if depth != self.depth {
            return fail(self.output.0, "adder levels disagree with tree depth");
        }
        Ok(())
    }
}

pub struct Evaluator<'a> {
    netlist: &'a Netlist,
    values: Vec<u128>,
}

impl Evaluator<'_> {
    /// Evaluates without range checks; operand bits above `n` are ignored.
    pub fn eval(&mut self, a: u64, b: u64) -> u128 {
        let nl = self.netlist;
        for (i, net) in nl.nets.iter().enumerate() {
            let mask = wide_mask(net.width);
            let v = match &net.driver {
                Driver::Block {
                    def,
                    a_offset,
                    b_offset,
                } => {
                    let d = &nl.defs[*def];
                    let av = (a >> a_offset) as u32 & low_mask(d.shape.a_width);
                    let bv = (b >> b_offset) as u32 & low_mask(d.shape.b_width);
                    u128::from(d.rows[(av | bv << d.shape.a_width) as usize])
                }
                Driver::PreAdd { left, right } | Driver::Add { left, right, .. } => {
                    self.values[left.0] + self.values[right.0]
                }
                Driver::Concat { parts } => parts
                    .iter()
                    .map(|(src, off)| self.values[src.0] << off)
                    .fold(0, |acc, v| acc | v),
            };
            self.values[i] = v & mask;
        }
        self.values[nl.output.0] & wide_mask(nl.r_width)
    }
}

fn wide_mask(bits: u32) -> u128 {
    if bits >= 128 {
        u128::MAX
    } else {
        (1u128 << bits) - 1
    }
}
