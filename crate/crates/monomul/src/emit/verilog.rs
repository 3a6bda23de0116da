//! Verilog-2001 rendering of a netlist.
//!
//! One combinational module per block shape, written as a sum of products
//! over the block's input bits, followed by the top module. The top module
//! instantiates every block, forms each summand as a bit concatenation
//! (zero-filled between segments) and adds the summands in a balanced tree.

use std::fmt::Write;

use monomul_core::netlist::BlockDef;
use monomul_core::{Driver, NetId, Netlist};

pub fn write_verilog(nl: &Netlist) -> String {
    let mut out = String::new();
    writeln!(out, "// {}: generated by monomul, do not edit", nl.name()).unwrap();
    for def in nl.defs() {
        out.push('\n');
        write_block(&mut out, def);
    }
    out.push('\n');
    write_top(&mut out, nl);
    out
}

fn range(width: u32) -> String {
    format!("[{}:0]", width - 1)
}

fn write_block(out: &mut String, def: &BlockDef) {
    let shape = def.shape();
    writeln!(out, "module {} (", def.module_name()).unwrap();
    writeln!(out, "    input  wire {} a,", range(shape.a_width)).unwrap();
    writeln!(out, "    input  wire {} b,", range(shape.b_width)).unwrap();
    writeln!(out, "    output wire {} r", range(shape.out_width)).unwrap();
    writeln!(out, ");").unwrap();
    let cubes = def.cover().cubes();
    for t in 0..shape.out_width {
        let terms: Vec<String> = cubes
            .iter()
            .filter(|c| c.outputs() >> t & 1 == 1)
            .map(|c| {
                let lits: Vec<String> = (0..shape.n_in())
                    .filter_map(|i| {
                        let bit = c.literal(i)?;
                        let name = if i < shape.a_width {
                            format!("a[{i}]")
                        } else {
                            format!("b[{}]", i - shape.a_width)
                        };
                        Some(if bit { name } else { format!("~{name}") })
                    })
                    .collect();
                if lits.is_empty() {
                    "1'b1".to_string()
                } else {
                    format!("({})", lits.join(" & "))
                }
            })
            .collect();
        let rhs = if terms.is_empty() {
            "1'b0".to_string()
        } else {
            terms.join("\n        | ")
        };
        writeln!(out, "    assign r[{t}] = {rhs};").unwrap();
    }
    writeln!(out, "endmodule").unwrap();
}

fn write_top(out: &mut String, nl: &Netlist) {
    let name = |id: NetId| nl.net(id).name.as_str();
    writeln!(out, "module {} (", nl.name()).unwrap();
    writeln!(out, "    input  wire {} a,", range(nl.n())).unwrap();
    writeln!(out, "    input  wire {} b,", range(nl.n())).unwrap();
    writeln!(out, "    output wire {} r", range(nl.r_width())).unwrap();
    writeln!(out, ");").unwrap();
    for net in nl.nets() {
        let decl = format!("    wire {} {}", range(net.width), net.name);
        match &net.driver {
            Driver::Block {
                def,
                a_offset,
                b_offset,
            } => {
                let d = &nl.defs()[*def];
                let s = d.shape();
                writeln!(out, "{decl};").unwrap();
                writeln!(
                    out,
                    "    {} u_{} (.a(a[{}:{a_offset}]), .b(b[{}:{b_offset}]), .r({}));",
                    d.module_name(),
                    net.name,
                    a_offset + s.a_width - 1,
                    b_offset + s.b_width - 1,
                    net.name
                )
                .unwrap();
            }
            Driver::PreAdd { left, right } | Driver::Add { left, right, .. } => {
                writeln!(out, "{decl} = {} + {};", name(*left), name(*right)).unwrap();
            }
            Driver::Concat { parts } => {
                // most significant part first
                let mut pieces = Vec::new();
                let mut pos = net.width;
                for &(src, off) in parts.iter().rev() {
                    let end = off + nl.net(src).width;
                    if end < pos {
                        pieces.push(format!("{}'b0", pos - end));
                    }
                    pieces.push(name(src).to_string());
                    pos = off;
                }
                if pos > 0 {
                    pieces.push(format!("{pos}'b0"));
                }
                writeln!(out, "{decl} = {{{}}};", pieces.join(", ")).unwrap();
            }
        }
    }
    let result = nl.net(nl.output());
    if result.width < nl.r_width() {
        writeln!(
            out,
            "    assign r = {{{}'b0, {}}};",
            nl.r_width() - result.width,
            result.name
        )
        .unwrap();
    } else {
        writeln!(out, "    assign r = {};", result.name).unwrap();
    }
    writeln!(out, "endmodule").unwrap();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build_design, DesignConfig};
    use monomul_core::ArithMode;

    fn text(n: u32, m: u32, mode: ArithMode) -> String {
        write_verilog(&build_design(DesignConfig::new(n, m, mode)).unwrap().netlist)
    }

    #[test]
    fn fourteen_first_summand_concatenates_four_blocks() {
        let v = text(14, 4, ArithMode::FullWidth);
        assert!(
            v.contains("wire [27:0] s0 = {p4_4, p3_3, p1_3, p1_1};"),
            "{v}"
        );
        assert_eq!(v.matches("\nmodule mono_mul_").count(), 4);
        assert!(v.contains("module mul_14x14_full_m4 ("));
        assert!(v.contains("    output wire [27:0] r\n"));
    }

    #[test]
    fn eight_by_eight_has_one_block_module() {
        let v = text(8, 4, ArithMode::FullWidth);
        assert_eq!(v.matches("\nmodule mono_mul_").count(), 1);
        assert!(v.contains("module mono_mul_4x4_8 ("));
        assert_eq!(v.matches(" mono_mul_4x4_8 u_").count(), 4);
        assert_eq!(v.matches(" + ").count(), 2);
        assert!(v.contains("{p2_1, 4'b0}"), "{v}");
    }

    #[test]
    fn single_block_top() {
        let v = text(4, 4, ArithMode::FullWidth);
        assert!(v.contains("mono_mul_4x4_8 u_p1_1 (.a(a[3:0]), .b(b[3:0]), .r(p1_1));"));
        assert!(v.contains("    assign r = p1_1;"));
        assert!(!v.contains(" + "));
    }

    #[test]
    fn and_gate_block() {
        let v = text(2, 2, ArithMode::LowHalf);
        assert!(v.contains("    assign r[0] = (a[0] & b[0]);"), "{v}");
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            text(14, 4, ArithMode::LowHalf),
            text(14, 4, ArithMode::LowHalf)
        );
    }
}
