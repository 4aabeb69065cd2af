//! graph6 encoding and decoding, plus DOT output for figures.
//!
//! The format contract, bit-exact: for order `n <= 62` the first byte is
//! `n + 63`; for `63 <= n` the first byte is 126 followed by three bytes
//! carrying an 18-bit big-endian `n`, six bits per byte, each `+ 63`. Then
//! the upper triangle of the adjacency matrix in column-major order
//! (columns `j = 1..n-1`, rows `i = 0..j-1`), packed six bits per byte
//! most-significant first, zero-padded, each byte `+ 63`. A stream may open
//! with the optional header `>>graph6<<`.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use std::io::BufRead;

pub const HEADER: &str = ">>graph6<<";

/// Encodes a graph as a single graph6 line (no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes = Vec::with_capacity(4 + n * (n - 1) / 12 + 1);
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else {
        bytes.push(126);
        bytes.push(((n >> 12) & 63) as u8 + 63);
        bytes.push(((n >> 6) & 63) as u8 + 63);
        bytes.push((n & 63) as u8 + 63);
    }
    let mut group = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            group <<= 1;
            if g.has_edge(i, j) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                bytes.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((group << (6 - filled)) + 63);
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line. `line_no` is used for error reporting only.
pub fn from_graph6_line(line: &str, line_no: usize) -> Result<Graph> {
    let err = |reason: &str| Error::Graph6 {
        line: line_no,
        reason: reason.to_string(),
    };
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(err("empty line"));
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() < 4 {
            return Err(err("truncated extended order field"));
        }
        if bytes[1] == 126 {
            return Err(err("graphs beyond 2^18 vertices are not supported"));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            if !(63..=126).contains(&b) {
                return Err(err("order byte out of printable range"));
            }
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 4usize)
    } else {
        if !(63..=126).contains(&bytes[0]) {
            return Err(err("order byte out of printable range"));
        }
        ((bytes[0] - 63) as usize, 1usize)
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(err(&format!("order {n} unsupported (this build handles 1..=64)")));
    }
    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != pos + nbytes {
        return Err(err(&format!(
            "expected {} adjacency bytes for order {n}, found {}",
            nbytes,
            bytes.len() - pos
        )));
    }
    let mut rows = vec![0u64; n];
    let mut group = 0u8;
    let mut left = 0u8;
    for j in 1..n {
        for i in 0..j {
            if left == 0 {
                let b = bytes[pos];
                pos += 1;
                if !(63..=126).contains(&b) {
                    return Err(err("adjacency byte out of printable range"));
                }
                group = b - 63;
                left = 6;
            }
            if group & (1 << (left - 1)) != 0 {
                rows[i] |= 1u64 << j;
                rows[j] |= 1u64 << i;
            }
            left -= 1;
        }
    }
    if left > 0 && group & ((1 << left) - 1) != 0 {
        return Err(err("nonzero padding bits"));
    }
    Ok(Graph::from_rows_unchecked(n, rows))
}

/// Reads a line-delimited graph6 stream, skipping the optional header and
/// blank lines. Yields `(line_number, graph)`.
pub struct Graph6Reader<R: BufRead> {
    reader: R,
    line_no: usize,
}

impl<R: BufRead> Graph6Reader<R> {
    pub fn new(reader: R) -> Self {
        Graph6Reader { reader, line_no: 0 }
    }

    /// 1-based number of the last line read.
    pub fn line_no(&self) -> usize {
        self.line_no
    }
}

impl<R: BufRead> Iterator for Graph6Reader<R> {
    type Item = Result<(usize, Graph)>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let mut line = String::new();
            match self.reader.read_line(&mut line) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(e.into())),
            }
            self.line_no += 1;
            let trimmed = line.trim_end_matches(['\n', '\r']);
            if trimmed.is_empty() || (self.line_no == 1 && trimmed == HEADER) {
                continue;
            }
            return Some(
                from_graph6_line(trimmed, self.line_no).map(|g| (self.line_no, g)),
            );
        }
    }
}

/// Renders the graph in DOT format for graphviz.
pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in g.vertices() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}
