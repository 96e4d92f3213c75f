//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix packed column by column, six bits per printable byte.

use crate::error::{Error, Result};
use crate::graph::Graph;

const BIAS: u8 = 63;
const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n < 63 {
        out.push(n as u8 + BIAS);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

/// Encodes `g` as a graph6 string (no header, no trailing newline).
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(chunk + BIAS);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((chunk << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn sextet(b: u8) -> Result<u64> {
    if (BIAS..=126).contains(&b) {
        Ok(u64::from(b - BIAS))
    } else {
        Err(Error::Graph6(format!(
            "byte {b:#04x} outside the printable range 63..=126"
        )))
    }
}

fn read_size(bytes: &[u8]) -> Result<(usize, usize)> {
    let take = |range: std::ops::Range<usize>| -> Result<u64> {
        let slice = bytes
            .get(range)
            .ok_or_else(|| Error::Graph6("truncated size header".into()))?;
        slice
            .iter()
            .try_fold(0u64, |acc, &b| Ok((acc << 6) | sextet(b)?))
    };
    match bytes.first() {
        None => Err(Error::Graph6("empty input".into())),
        Some(126) if bytes.get(1) == Some(&126) => Ok((take(2..8)? as usize, 8)),
        Some(126) => Ok((take(1..4)? as usize, 4)),
        Some(&b) => Ok((sextet(b)? as usize, 1)),
    }
}

/// Decodes one graph6 line. An optional `>>graph6<<` header and trailing
/// line terminator are accepted; padding bits must be zero.
pub fn decode(text: &str) -> Result<Graph> {
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let text = text.trim_end_matches(['\n', '\r']);
    let bytes = text.as_bytes();
    let (n, offset) = read_size(bytes)?;
    if n == 0 {
        return Err(Error::Graph6("graph has no vertices".into()));
    }
    let body = &bytes[offset..];
    let bits = (n as u128) * (n as u128 - 1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() as u128 != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    let mut i = 0usize;
    let mut j = 1usize;
    for &b in body {
        let value = sextet(b)?;
        for shift in (0..6).rev() {
            let set = (value >> shift) & 1 == 1;
            if (bit as u128) < bits {
                if set {
                    edges.push((i, j));
                }
                i += 1;
                if i == j {
                    i = 0;
                    j += 1;
                }
            } else if set {
                return Err(Error::Graph6("nonzero padding bits".into()));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, edges)
}
