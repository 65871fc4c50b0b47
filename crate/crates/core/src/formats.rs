//! Text formats: graph6 records and plain edge lists.
//!
//! graph6 stores `n` in one byte (`n + 63`, so `n <= 62`), then the upper
//! triangle of the adjacency matrix column by column
//! (`x(0,1), x(0,2), x(1,2), x(0,3), ...`) packed six bits per byte, most
//! significant bit first, each byte offset by 63. Unused trailing bits must be
//! zero. The multi-byte size forms for `n >= 63` are not supported.

use std::fmt::Write as _;
use std::path::Path;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const GRAPH6_MAX_N: usize = 62;

const BIAS: u8 = 63;

pub fn decode_graph6(line: &str) -> Result<Graph> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    let Some((&size, body)) = bytes.split_first() else {
        return Err(Error::Graph6("empty record".into()));
    };
    for (pos, &b) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return Err(Error::Graph6(format!("byte {b} at offset {pos} outside [63,126]")));
        }
    }
    if size == 126 {
        return Err(Error::Graph6(format!(
            "multi-byte size form is not supported (n > {GRAPH6_MAX_N})"
        )));
    }
    let n = (size - BIAS) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() < need {
        return Err(Error::Graph6(format!(
            "truncated record: {} adjacency bytes, expected {need}",
            body.len()
        )));
    }
    if body.len() > need {
        return Err(Error::Graph6(format!(
            "trailing data: {} adjacency bytes, expected {need}",
            body.len()
        )));
    }

    let bit = |k: usize| -> bool { (body[k / 6] - BIAS) >> (5 - k % 6) & 1 == 1 };
    for k in nbits..need * 6 {
        if bit(k) {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }

    let mut rows = vec![BitSet::new(n); n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                rows[i].insert(j);
                rows[j].insert(i);
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(Error::Graph6(format!("n = {n} exceeds {GRAPH6_MAX_N}")));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(1 + nbits.div_ceil(6));
    out.push(BIAS + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(BIAS + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(BIAS + (acc << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parse every non-empty line as a graph6 record.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            decode_graph6(l.trim()).map_err(|e| Error::Graph6(format!("line {}: {e}", i + 1)))
        })
        .collect()
}

/// Parse the edge-list format: a header line `n m`, then `m` lines `u v`
/// (0-indexed). Blank lines and lines starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::EdgeList("missing header line".into()))?;
    let (n, m) = parse_pair(header).map_err(|e| Error::EdgeList(format!("header: {e}")))?;
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let pair = parse_pair(line).map_err(|e| Error::EdgeList(format!("line {}: {e}", lineno + 1)))?;
        edges.push(pair);
    }
    if edges.len() != m {
        return Err(Error::EdgeList(format!(
            "header declares {m} edges, found {}",
            edges.len()
        )));
    }
    let g = Graph::from_edges(n, edges)?;
    if g.m() != m {
        return Err(Error::EdgeList(format!("duplicate edges: {m} listed, {} distinct", g.m())));
    }
    Ok(g)
}

fn parse_pair(line: &str) -> std::result::Result<(usize, usize), String> {
    let mut it = line.split_whitespace();
    let mut next = || -> std::result::Result<usize, String> {
        let tok = it.next().ok_or_else(|| format!("expected two integers in {line:?}"))?;
        tok.parse().map_err(|_| format!("not a non-negative integer: {tok:?}"))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(format!("expected two integers in {line:?}"));
    }
    Ok((a, b))
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Read graphs from text, detecting the format: a first significant line of
/// two integers means an edge list (one graph), anything else is graph6.
pub fn parse_graphs(text: &str) -> Result<Vec<Graph>> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if parse_pair(l).is_ok() => Ok(vec![parse_edge_list(text)?]),
        _ => parse_graph6_lines(text),
    }
}

pub fn read_graphs(path: &Path) -> Result<Vec<Graph>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    parse_graphs(&text)
}
