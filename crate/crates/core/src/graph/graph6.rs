//! The graph6 ASCII format: a size prefix followed by the upper triangle of
//! the adjacency matrix, packed six bits per byte with an offset of 63.

use super::{SimpleGraph, Vertex};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
}

pub fn to_graph6(g: &SimpleGraph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(1 + n * n / 12 + 8);
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

fn sextet(b: u8) -> Result<usize> {
    if !(63..=126).contains(&b) {
        return Err(Error::Graph6(format!("byte {b} outside 63..=126")));
    }
    Ok((b - 63) as usize)
}

pub fn from_graph6(text: &str) -> Result<SimpleGraph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    let (n, body) = if bytes[0] != 126 {
        (sextet(bytes[0])?, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Error::Graph6("truncated size field".into()));
        }
        let mut n = 0;
        for &b in &bytes[2..8] {
            n = (n << 6) | sextet(b)?;
        }
        (n, &bytes[8..])
    } else {
        if bytes.len() < 4 {
            return Err(Error::Graph6("truncated size field".into()));
        }
        let mut n = 0;
        for &b in &bytes[1..4] {
            n = (n << 6) | sextet(b)?;
        }
        (n, &bytes[4..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = sextet(body[k / 6])?;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = sextet(body[body.len() - 1])?;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    SimpleGraph::from_edges(n, edges)
}

/// Parses one graph per non-empty line.
pub fn read_graph6_lines(text: &str) -> Result<Vec<SimpleGraph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(from_graph6)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_encodings() {
        assert_eq!(to_graph6(&SimpleGraph::empty(0)), "?");
        assert_eq!(to_graph6(&SimpleGraph::empty(1)), "@");
        assert_eq!(to_graph6(&SimpleGraph::complete(2)), "A_");
        assert_eq!(to_graph6(&SimpleGraph::complete(4)), "C~");
        assert_eq!(to_graph6(&SimpleGraph::cycle(5).unwrap()), "Dhc");
        let g = SimpleGraph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
    }

    #[test]
    fn header_and_newline_are_accepted() {
        let g = from_graph6(">>graph6<<DQc\n").unwrap();
        assert_eq!(g.m(), 4);
        assert!(g.has_edge(3, 4));
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("D").is_err());
        assert!(from_graph6("Dhcc").is_err());
        assert!(from_graph6("A`").is_err()); // padding bit set
        assert!(from_graph6("D\u{7f}c").is_err());
    }

    #[test]
    fn large_size_prefix() {
        let g = SimpleGraph::path(70);
        let s = to_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..20, bits in proptest::collection::vec(any::<bool>(), 190)) {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] { edges.push((i, j)); }
                    k += 1;
                }
            }
            let g = SimpleGraph::from_edges(n, edges).unwrap();
            let s = to_graph6(&g);
            prop_assert_eq!(from_graph6(&s).unwrap(), g.clone());
            prop_assert_eq!(to_graph6(&from_graph6(&s).unwrap()), s);
        }
    }
}
