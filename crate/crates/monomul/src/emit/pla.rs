//! Berkeley PLA (type `f`) reader and writer.
//!
//! Input column `i` of a cube line is input bit `i` of the cover and output
//! column `t` is output bit `t`; for a multiplier block the first `w_a`
//! columns are `a[0..w_a]` and the rest are `b`.

use std::fmt::Write;

use monomul_core::minimize::MAX_COVER_WIDTH;
use monomul_core::{Cover, Cube, Provenance};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct PlaError {
    pub line: usize,
    pub kind: PlaErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaErrorKind {
    #[error("unsupported directive `{0}`")]
    UnsupportedDirective(String),
    #[error("bad value for `{0}`")]
    BadHeader(&'static str),
    #[error("cube before `.i` and `.o`")]
    MissingHeader,
    #[error("invalid symbol `{0}`")]
    InvalidSymbol(char),
    #[error("expected {expected} {part} columns, found {found}")]
    WrongLength {
        part: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("cube line needs an input and an output part")]
    MalformedCube,
    #[error("cube drives no output")]
    NoOutputs,
    #[error("missing `.i`/`.o` header")]
    Empty,
}

pub fn write_pla(cover: &Cover) -> String {
    let mut out = String::new();
    writeln!(out, ".i {}", cover.n_in()).unwrap();
    writeln!(out, ".o {}", cover.n_out()).unwrap();
    writeln!(out, ".p {}", cover.cube_count()).unwrap();
    for cube in cover.cubes() {
        for i in 0..cover.n_in() {
            out.push(match cube.literal(i) {
                None => '-',
                Some(false) => '0',
                Some(true) => '1',
            });
        }
        out.push(' ');
        for t in 0..cover.n_out() {
            out.push(if cube.outputs() >> t & 1 == 1 {
                '1'
            } else {
                '0'
            });
        }
        out.push('\n');
    }
    out.push_str(".e\n");
    out
}

/// Parses an `f`-type PLA. The `.p` count is advisory; cubes are taken from
/// the body. Blank lines and `#` comments are skipped.
pub fn read_pla(text: &str) -> Result<Cover, PlaError> {
    let mut n_in: Option<u32> = None;
    let mut n_out: Option<u32> = None;
    let mut cubes = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |kind| PlaError { line, kind };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let head = fields.next().expect("nonempty line");
        if let Some(directive) = head.strip_prefix('.') {
            let arg = fields.next();
            let width = |name| {
                arg.and_then(|a| a.parse::<u32>().ok())
                    .filter(|w| (1..=MAX_COVER_WIDTH).contains(w))
                    .ok_or(err(PlaErrorKind::BadHeader(name)))
            };
            match directive {
                "i" => n_in = Some(width(".i")?),
                "o" => n_out = Some(width(".o")?),
                "p" => {
                    arg.and_then(|a| a.parse::<usize>().ok())
                        .ok_or(err(PlaErrorKind::BadHeader(".p")))?;
                }
                "type" if arg == Some("f") => {}
                "e" | "end" => break,
                _ => return Err(err(PlaErrorKind::UnsupportedDirective(head.to_string()))),
            }
            continue;
        }
        let (Some(ni), Some(no)) = (n_in, n_out) else {
            return Err(err(PlaErrorKind::MissingHeader));
        };
        let outs = fields.next().ok_or(err(PlaErrorKind::MalformedCube))?;
        if fields.next().is_some() {
            return Err(err(PlaErrorKind::MalformedCube));
        }
        let (mut value, mut care, mut outputs) = (0u32, 0u32, 0u32);
        check_len("input", ni, head).map_err(err)?;
        for (i, ch) in head.chars().enumerate() {
            match ch {
                '0' => care |= 1 << i,
                '1' => {
                    care |= 1 << i;
                    value |= 1 << i;
                }
                '-' => {}
                other => return Err(err(PlaErrorKind::InvalidSymbol(other))),
            }
        }
        check_len("output", no, outs).map_err(err)?;
        for (t, ch) in outs.chars().enumerate() {
            match ch {
                '1' => outputs |= 1 << t,
                '0' => {}
                other => return Err(err(PlaErrorKind::InvalidSymbol(other))),
            }
        }
        if outputs == 0 {
            return Err(err(PlaErrorKind::NoOutputs));
        }
        cubes.push(Cube::new(value, care, outputs));
    }
    let (Some(ni), Some(no)) = (n_in, n_out) else {
        return Err(PlaError {
            line: text.lines().count(),
            kind: PlaErrorKind::Empty,
        });
    };
    Ok(Cover::new(ni, no, cubes, Provenance::External).expect("cubes validated while parsing"))
}

fn check_len(part: &'static str, expected: u32, field: &str) -> Result<(), PlaErrorKind> {
    let found = field.chars().count();
    if found == expected as usize {
        Ok(())
    } else {
        Err(PlaErrorKind::WrongLength {
            part,
            expected: expected as usize,
            found,
        })
    }
}
