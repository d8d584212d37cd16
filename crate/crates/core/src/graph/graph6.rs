//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix, column by column, packed six bits per printable byte.

use super::{Graph, ParseError};

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;

fn err(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Graph6 {
        offset,
        message: message.into(),
    }
}

fn encode_size(n: usize, out: &mut String) {
    let push6 = |out: &mut String, v: usize| out.push((BIAS + (v & 0x3f) as u8) as char);
    if n <= 62 {
        push6(out, n);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            push6(out, n >> shift);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            push6(out, n >> shift);
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + BIAS) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + BIAS) as char);
    }
    out
}

/// Parses one graph6 line. An optional `>>graph6<<` header and trailing
/// line terminator are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let line = text.trim_end_matches(['\n', '\r']);
    let start = if line.starts_with(HEADER) {
        HEADER.len()
    } else {
        0
    };
    let bytes = line.as_bytes();

    let value = |pos: usize| -> Result<usize, ParseError> {
        match bytes.get(pos) {
            None => Err(err(pos, "unexpected end of input")),
            Some(&b) if (BIAS..=BIAS + 63).contains(&b) => Ok((b - BIAS) as usize),
            Some(&b) => Err(err(pos, format!("byte 0x{b:02x} outside graph6 range"))),
        }
    };

    let (n, mut pos) = if bytes.get(start) == Some(&b'~') {
        if bytes.get(start + 1) == Some(&b'~') {
            let mut n = 0;
            for i in 0..6 {
                n = (n << 6) | value(start + 2 + i)?;
            }
            (n, start + 8)
        } else {
            let mut n = 0;
            for i in 0..3 {
                n = (n << 6) | value(start + 1 + i)?;
            }
            (n, start + 4)
        }
    } else {
        if start >= bytes.len() {
            return Err(err(start, "missing size header"));
        }
        (value(start)?, start + 1)
    };

    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if bytes.len() < pos + needed {
        return Err(err(bytes.len(), format!("truncated bit vector for n={n}")));
    }
    let mut edges = Vec::new();
    let (mut u, mut v) = (0usize, 1usize);
    let mut seen = 0;
    for _ in 0..needed {
        let chunk = value(pos)?;
        for bit in (0..6).rev() {
            let set = chunk >> bit & 1 == 1;
            if seen < bits {
                if set {
                    edges.push((u, v));
                }
                u += 1;
                if u == v {
                    u = 0;
                    v += 1;
                }
                seen += 1;
            } else if set {
                return Err(err(pos, "nonzero padding bits"));
            }
        }
        pos += 1;
    }
    if pos != bytes.len() {
        return Err(err(pos, "trailing garbage"));
    }
    Graph::from_edges(n, edges).map_err(|e| err(pos, e.to_string()))
}
