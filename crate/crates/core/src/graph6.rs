//! graph6 encoding, short form only (`n <= 62`).

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// Decodes one graph6 line. Trailing whitespace and an optional `>>graph6<<` header are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let (skip, body) = match text.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, text),
    };
    let bytes = body.trim_end().as_bytes();
    let first = *bytes.first().ok_or_else(|| parse_err(skip, "empty graph6 string"))?;
    if first == b'~' {
        return Err(parse_err(skip, "long-form graph6 (n > 62) is not supported"));
    }
    if !(63..=125).contains(&first) {
        return Err(parse_err(skip, format!("invalid order byte 0x{first:02x}")));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(parse_err(skip, "graph6 string encodes the empty graph"));
    }
    let nbits = n * (n - 1) / 2;
    let need = nbits.div_ceil(6);
    let data = &bytes[1..];
    if data.len() < need {
        return Err(parse_err(
            skip + bytes.len(),
            format!("truncated adjacency: need {need} bytes, found {}", data.len()),
        ));
    }
    if data.len() > need {
        return Err(parse_err(skip + 1 + need, "trailing bytes after adjacency"));
    }
    for (i, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(skip + 1 + i, format!("invalid data byte 0x{b:02x}")));
        }
    }
    let bit = |k: usize| ((data[k / 6] - 63) >> (5 - k % 6)) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    // padding bits must be zero
    if (k..need * 6).any(bit) {
        return Err(parse_err(skip + bytes.len() - 1, "non-zero padding bits"));
    }
    Graph::from_edge_list(n, &edges)
}

/// Encodes a graph of order at most 62.
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > 62 {
        return Err(Error::capacity("graph6 short form supports at most 62 vertices"));
    }
    let mut out = vec![n as u8 + 63];
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parses a stream of graph6 lines, skipping blank lines.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_graph6(l.trim()).map(|g| g.with_tag(l.trim())))
        .collect()
}
