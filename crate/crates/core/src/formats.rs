//! Plain-text formats: `.bm` matroids, `.edges` graphs, `.hom` maps and
//! hom sequences. Every writer starts with a `# matrecol v1 <kind>` header,
//! which readers treat as an ordinary comment.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::graphs::SimpleGraph;
use crate::hom::MatroidHom;
use crate::matroid::BinaryMatroid;
use crate::recolor::RecolPath;

pub const HEADER_PREFIX: &str = "# matrecol v1";

fn header(kind: &str) -> String {
    format!("{HEADER_PREFIX} {kind}\n")
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses a `.bm` matroid: one column per line as a bitstring, leftmost
/// character row 0.
pub fn parse_bm(text: &str, allow_loops: bool) -> Result<BinaryMatroid> {
    let mut columns = Vec::new();
    let mut seen: HashMap<BitVec, usize> = HashMap::new();
    let mut dim = None;
    for (line, l) in content_lines(text) {
        let v = BitVec::parse(l).map_err(|e| parse_err(line, e.to_string()))?;
        match dim {
            None => dim = Some(v.len()),
            Some(d) if d != v.len() => {
                return Err(parse_err(line, format!("column has length {}, expected {d}", v.len())));
            }
            _ => {}
        }
        if v.is_zero() && !allow_loops {
            return Err(parse_err(line, "all-zero column (loop) without the allow-loops option"));
        }
        if let Some(first) = seen.insert(v.clone(), line) {
            return Err(parse_err(line, format!("duplicate of the column on line {first}")));
        }
        columns.push(v);
    }
    let dim = dim.ok_or_else(|| parse_err(0, "no columns"))?;
    BinaryMatroid::new(dim, columns, allow_loops)
}

pub fn write_bm(m: &BinaryMatroid) -> String {
    let mut out = header("matroid");
    let _ = writeln!(out, "# points {} rank {} dim {}", m.len(), m.rank(), m.ambient_dim());
    for p in m.points() {
        let _ = writeln!(out, "{p}");
    }
    out
}

/// Parses an `.edges` graph. The vertex count is the largest id plus one,
/// unless a `# vertices N` line raises it (for isolated vertices).
pub fn parse_edges(text: &str) -> Result<SimpleGraph> {
    let mut declared = 0usize;
    for (i, l) in text.lines().enumerate() {
        if let Some(rest) = l.trim().strip_prefix("# vertices") {
            declared = rest.trim().parse().map_err(|_| parse_err(i + 1, "bad vertex count"))?;
        }
    }
    let mut edges = Vec::new();
    for (line, l) in content_lines(text) {
        let ids: Vec<&str> = l.split_whitespace().collect();
        if ids.len() != 2 {
            return Err(parse_err(line, "expected two vertex ids"));
        }
        let parse = |s: &str| s.parse::<usize>().map_err(|_| parse_err(line, format!("bad vertex id {s:?}")));
        edges.push((line, parse(ids[0])?, parse(ids[1])?));
    }
    let n = edges.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0).max(declared);
    let mut seen = HashMap::new();
    for &(line, u, v) in &edges {
        if u == v {
            return Err(parse_err(line, format!("self-loop at vertex {u}")));
        }
        if let Some(first) = seen.insert((u.min(v), u.max(v)), line) {
            return Err(parse_err(line, format!("duplicate of the edge on line {first}")));
        }
    }
    let g = SimpleGraph::new(n, edges.iter().map(|&(_, u, v)| (u, v)))?;
    Ok(g)
}

pub fn write_edges(g: &SimpleGraph) -> String {
    let mut out = header("graph");
    let _ = writeln!(out, "# vertices {}", g.vertex_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn parse_indices(line: usize, l: &str) -> Result<Vec<usize>> {
    l.split_whitespace()
        .map(|s| s.parse::<usize>().map_err(|_| parse_err(line, format!("bad point index {s:?}"))))
        .collect()
}

/// Parses a `.hom` image array: exactly one content line.
pub fn parse_hom(text: &str) -> Result<Vec<usize>> {
    let mut lines = content_lines(text);
    let (line, l) = lines.next().ok_or_else(|| parse_err(0, "no image line"))?;
    let image = parse_indices(line, l)?;
    if let Some((extra, _)) = lines.next() {
        return Err(parse_err(extra, "a .hom file holds a single image line"));
    }
    Ok(image)
}

/// Parses a `.hom` file and checks it against the given frame.
pub fn parse_hom_for(text: &str, dom: &Arc<BinaryMatroid>, cod: &Arc<BinaryMatroid>) -> Result<MatroidHom> {
    MatroidHom::new(dom.clone(), cod.clone(), parse_hom(text)?)
}

pub fn write_hom(h: &MatroidHom) -> String {
    format!("{}{}\n", header("hom"), h.to_line())
}

/// Parses a hom sequence: one image array per content line.
pub fn parse_hom_sequence(text: &str) -> Result<Vec<Vec<usize>>> {
    content_lines(text).map(|(line, l)| parse_indices(line, l)).collect()
}

/// Writes a path as a hom sequence, with each step's witness as a comment.
pub fn write_path(path: &RecolPath) -> String {
    let mut out = header("hom-sequence");
    let _ = writeln!(out, "# steps {}", path.len());
    for (k, h) in path.homs.iter().enumerate() {
        if k > 0 {
            let _ = writeln!(out, "# step {k}: {}", path.steps[k - 1]);
        }
        let _ = writeln!(out, "{}", h.to_line());
    }
    out
}

/// Rebuilds and validates a path from a hom sequence.
pub fn parse_path(text: &str, dom: &Arc<BinaryMatroid>, cod: &Arc<BinaryMatroid>) -> Result<RecolPath> {
    let images = parse_hom_sequence(text)?;
    let mut homs = Vec::with_capacity(images.len());
    for image in images {
        homs.push(MatroidHom::new(dom.clone(), cod.clone(), image)?);
    }
    let first = homs.first().cloned().ok_or_else(|| parse_err(0, "empty hom sequence"))?;
    let mut path = RecolPath::trivial(first);
    for w in homs.windows(2) {
        let witness = crate::recolor::adjacent(&w[0], &w[1])?
            .ok_or_else(|| Error::Mismatch("consecutive homs in the sequence are not adjacent".into()))?;
        path.homs.push(w[1].clone());
        path.steps.push(witness);
    }
    path.validate()?;
    Ok(path)
}

pub fn read_bm(path: impl AsRef<Path>, allow_loops: bool) -> Result<BinaryMatroid> {
    parse_bm(&std::fs::read_to_string(path)?, allow_loops)
}

pub fn read_edges(path: impl AsRef<Path>) -> Result<SimpleGraph> {
    parse_edges(&std::fs::read_to_string(path)?)
}
