//! graph6 text encoding: the order `n` as one printable byte (or `~` plus
//! three bytes when `n >= 63`), then the upper adjacency triangle in
//! column-major order packed six bits per byte, each byte offset by 63.

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

const OFFSET: u8 = 63;
const LONG_MARK: u8 = 126;
const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("graph6 order {0} is unsupported (expected 1..=64)")]
    UnsupportedOrder(usize),
    #[error("graph6 string is truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data after graph6 string at offset {offset}")]
    TrailingData { offset: usize },
    #[error("graph6 padding bits are not zero")]
    NonZeroPadding,
    #[error("order {0} written in the long form")]
    NonCanonicalOrder(usize),
}

fn check_byte(offset: usize, byte: u8) -> Result<u8, Graph6Error> {
    if (OFFSET..=LONG_MARK).contains(&byte) {
        Ok(byte - OFFSET)
    } else {
        Err(Graph6Error::InvalidByte { offset, byte })
    }
}

fn triangle_bytes(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Decode one graph6 record. An optional `>>graph6<<` header and a single
/// trailing line terminator are accepted.
pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    decode_bytes(text.as_bytes())
}

pub fn decode_bytes(mut bytes: &[u8]) -> Result<Graph, Graph6Error> {
    if let Some(rest) = bytes.strip_prefix(HEADER.as_bytes()) {
        bytes = rest;
    }
    if let Some(rest) = bytes.strip_suffix(b"\n") {
        bytes = rest.strip_suffix(b"\r").unwrap_or(rest);
    }
    let first = *bytes.first().ok_or(Graph6Error::Empty)?;
    let (n, header_len) = if first == LONG_MARK {
        if bytes.len() < 4 {
            for (i, &b) in bytes.iter().enumerate().skip(1) {
                check_byte(i, b)?;
            }
            return Err(Graph6Error::Truncated {
                expected: 4,
                found: bytes.len(),
            });
        }
        if bytes[1] == LONG_MARK {
            // 8-byte form, only used for n >= 258048
            return Err(Graph6Error::UnsupportedOrder(usize::MAX));
        }
        let mut n = 0usize;
        for (i, &b) in bytes[1..4].iter().enumerate() {
            n = (n << 6) | check_byte(i + 1, b)? as usize;
        }
        if n < 63 {
            return Err(Graph6Error::NonCanonicalOrder(n));
        }
        (n, 4)
    } else {
        (check_byte(0, first)? as usize, 1)
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(Graph6Error::UnsupportedOrder(n));
    }

    let expected = header_len + triangle_bytes(n);
    let body_end = bytes.len().min(expected);
    let mut body = Vec::with_capacity(expected - header_len);
    for (i, &b) in bytes[header_len..body_end].iter().enumerate() {
        body.push(check_byte(header_len + i, b)?);
    }
    if bytes.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: bytes.len(),
        });
    }
    if bytes.len() > expected {
        return Err(Graph6Error::TrailingData { offset: expected });
    }

    let mut rows = [0u64; MAX_VERTICES];
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            if (body[k / 6] >> (5 - k % 6)) & 1 == 1 {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
            k += 1;
        }
    }
    let total_bits = body.len() * 6;
    while k < total_bits {
        if (body[k / 6] >> (5 - k % 6)) & 1 == 1 {
            return Err(Graph6Error::NonZeroPadding);
        }
        k += 1;
    }
    Ok(Graph::from_rows_unchecked(n, &rows))
}

/// Canonical graph6 text of `g`, without a line terminator.
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + triangle_bytes(n.max(1)));
    if n < 63 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(LONG_MARK);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}
