//! Line-oriented ASCII formats: code files, complex files, enumerator
//! listings, and the sidecar metadata/registry files. `#` starts a comment;
//! blank lines are skipped. All writers emit byte-identical output for
//! identical inputs.
//!
//! Code file: first data line `n d`, then `d` rows of `n` characters from
//! `{0,1}`. Complex file: one triangle per line as `v1 v2 v3`, with an
//! optional fourth field `w=0` or `w=1` carrying a matching weight.
//! Enumerator: one `exponent coefficient` pair per line, ascending.

use crate::code::BinaryCode;
use crate::complex::{Triangle, TriangularConfiguration};
use crate::enumerator::WeightEnumerator;
use crate::gf2::BitVec;
use crate::matchreduce::MatchingInstance;
use crate::represent::Representation;
use num_bigint::BigUint;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn parse_error(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Data lines with their 1-based line numbers; comments and blanks removed.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Parses a code file: `n d` then `d` basis rows.
pub fn parse_code(text: &str) -> Result<BinaryCode, FormatError> {
    let mut lines = data_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_error(0, "missing `n d` header"))?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_error(header_line, "expected code length n"))?;
    let d: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_error(header_line, "expected code dimension d"))?;
    if parts.next().is_some() {
        return Err(parse_error(header_line, "trailing fields after `n d`"));
    }
    if n == 0 {
        return Err(parse_error(header_line, "code length must be positive"));
    }

    let mut basis = Vec::with_capacity(d);
    for _ in 0..d {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| parse_error(0, format!("expected {d} basis rows")))?;
        if line.len() != n {
            return Err(parse_error(
                line_no,
                format!("row has {} characters, expected {n}", line.len()),
            ));
        }
        let row = BitVec::from_str01(line)
            .ok_or_else(|| parse_error(line_no, "rows must consist of 0 and 1"))?;
        basis.push(row);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(parse_error(line_no, "unexpected data after basis rows"));
    }
    BinaryCode::new(n, basis).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn write_code(code: &BinaryCode) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", code.length(), code.dimension());
    for row in code.basis() {
        let _ = writeln!(out, "{}", row.to_str01());
    }
    out
}

/// Parses a complex file. The weight vector is returned when any line
/// carries a `w=` field; triangles without one default to weight 0.
pub fn parse_complex(
    text: &str,
) -> Result<(TriangularConfiguration, Option<Vec<u8>>), FormatError> {
    let mut triples = Vec::new();
    let mut weights = Vec::new();
    let mut any_weight = false;
    for (line_no, line) in data_lines(text) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 && fields.len() != 4 {
            return Err(parse_error(
                line_no,
                "expected `v1 v2 v3` or `v1 v2 v3 w=0|1`",
            ));
        }
        let mut triple = [0u32; 3];
        for (slot, field) in triple.iter_mut().zip(&fields[..3]) {
            *slot = field
                .parse()
                .map_err(|_| parse_error(line_no, format!("bad vertex id `{field}`")))?;
        }
        let weight = match fields.get(3) {
            None => 0,
            Some(&"w=0") => {
                any_weight = true;
                0
            }
            Some(&"w=1") => {
                any_weight = true;
                1
            }
            Some(other) => {
                return Err(parse_error(line_no, format!("bad weight field `{other}`")));
            }
        };
        triples.push(triple);
        weights.push(weight);
    }
    let config = TriangularConfiguration::from_triangles(&triples)
        .map_err(|e| FormatError::Invalid(e.to_string()))?;
    Ok((config, any_weight.then_some(weights)))
}

pub fn write_complex(cfg: &TriangularConfiguration, weights: Option<&[u8]>) -> String {
    let mut out = String::new();
    for (i, t) in cfg.triangles().iter().enumerate() {
        let [a, b, c] = t.vertices();
        match weights {
            Some(w) => {
                let _ = writeln!(out, "{a} {b} {c} w={}", w[i]);
            }
            None => {
                let _ = writeln!(out, "{a} {b} {c}");
            }
        }
    }
    out
}

/// Parses an enumerator listing: `exponent coefficient` per line.
pub fn parse_enumerator(text: &str) -> Result<WeightEnumerator, FormatError> {
    let mut out = WeightEnumerator::new();
    let mut last: Option<usize> = None;
    for (line_no, line) in data_lines(text) {
        let mut parts = line.split_whitespace();
        let exponent: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_error(line_no, "expected an exponent"))?;
        let coefficient: BigUint = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_error(line_no, "expected a coefficient"))?;
        if parts.next().is_some() {
            return Err(parse_error(line_no, "trailing fields"));
        }
        if last.is_some_and(|prev| prev >= exponent) {
            return Err(parse_error(line_no, "exponents must be strictly ascending"));
        }
        last = Some(exponent);
        out.add_terms(exponent, &coefficient);
    }
    Ok(out)
}

pub fn write_enumerator(w: &WeightEnumerator) -> String {
    let mut out = String::new();
    for (exponent, coefficient) in w.terms() {
        let _ = writeln!(out, "{exponent} {coefficient}");
    }
    out
}

/// Sidecar metadata for a representation: scalar fields, slot triangle
/// positions and block triangle positions, all indices into the complex
/// file's triangle order.
pub fn write_meta(rep: &Representation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n {}", rep.code().length());
    let _ = writeln!(out, "d {}", rep.code().dimension());
    let _ = writeln!(out, "m {}", rep.sphere_size());
    if let Some(e) = rep.exponent() {
        let _ = writeln!(out, "e {e}");
    }
    for (j, t) in rep.slots() {
        let idx = rep.config().triangle_position(t).expect("slot in config");
        let _ = writeln!(out, "slot {j} {idx}");
    }
    for i in 0..rep.code().dimension() {
        let mut indices: Vec<usize> = rep
            .block_triangles(i)
            .iter()
            .map(|t| rep.config().triangle_position(t).expect("block in config"))
            .collect();
        indices.sort_unstable();
        let list = indices
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "block {i} {list}");
    }
    out
}

/// Registry for a reduction: one line per source triangle with its gadget's
/// triangle index range, weight-triangle index and port triples, and one
/// line per source edge with its chain's index range and port triples.
/// Gadget triangles are contiguous in the complex file by construction;
/// ranges are inclusive. Ports are faceless, so they appear as vertex
/// triples rather than triangle indices.
pub fn write_registry(instance: &MatchingInstance) -> String {
    let cfg = instance.config();
    let position = |t: &Triangle| cfg.triangle_position(t).expect("gadget triangle in config");
    let mut out = String::new();
    for (i, gadget) in instance.triangle_gadgets().iter().enumerate() {
        let [a, b, c] = gadget.source.vertices();
        let indices: Vec<usize> = gadget.triangles().iter().map(&position).collect();
        let lo = indices.iter().min().expect("nonempty gadget");
        let hi = indices.iter().max().expect("nonempty gadget");
        debug_assert_eq!(hi - lo + 1, indices.len(), "gadget range is contiguous");
        let weight_triangle = gadget.weight_triangle();
        let weight = position(&weight_triangle);
        let mut ports = String::new();
        for p in &gadget.ports {
            let [x, y, z] = p.vertices();
            let _ = write!(ports, " {x},{y},{z}");
        }
        let _ = writeln!(
            out,
            "triangle {i} src {a} {b} {c} range {lo} {hi} weight {weight} ports{ports}"
        );
    }
    for (i, gadget) in instance.edge_gadgets().iter().enumerate() {
        let [a, b] = gadget.source.vertices();
        let indices: Vec<usize> = gadget.triangles().map(&position).collect();
        let lo = indices.iter().min().expect("nonempty chain");
        let hi = indices.iter().max().expect("nonempty chain");
        debug_assert_eq!(hi - lo + 1, indices.len(), "chain range is contiguous");
        let mut ports = String::new();
        for p in &gadget.ports {
            let [x, y, z] = p.vertices();
            let _ = write!(ports, " {x},{y},{z}");
        }
        let _ = writeln!(out, "edge {i} src {a} {b} range {lo} {hi} ports{ports}");
    }
    out
}
