//! Connected graphs up to isomorphism by vertex extension: every connected
//! graph on `n` vertices has a non-cut vertex, so joining a new vertex to a
//! nonempty subset of each connected graph on `n - 1` vertices reaches every
//! class. Children are deduplicated by canonical form.
//!
//! The HZ filter (core of maximum degree at most two) is not hereditary, so
//! every level below `max_n` is kept in full; the last level is filtered
//! before canonization, which is where most of the work would go.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::canon::{labeling_from_adj, CanonicalForm, MAX_CANON_N};
use crate::graph::{is_hz_candidate, read_graph6_lines, SimpleGraph};

pub const MAX_ENUMERATION_N: usize = 10;
/// Largest `max_n` that runs without `allow_slow`.
pub const FAST_ENUMERATION_N: usize = 9;

type Adj = [u32; MAX_CANON_N];

fn decode(form: &CanonicalForm) -> Adj {
    let n = form.n as usize;
    let total = n * n.saturating_sub(1) / 2;
    let mut adj = [0u32; MAX_CANON_N];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (form.bits >> (total - 1 - k)) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    adj
}

fn extend(adj: &Adj, n: usize, subset: u32) -> Adj {
    let mut child = *adj;
    child[n] = subset;
    let mut rest = subset;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        child[v] |= 1 << n;
    }
    child
}

/// Bitmask form of `is_hz_candidate` for connected graphs.
fn core_ok(adj: &Adj, n: usize) -> bool {
    let delta = adj[..n].iter().map(|a| a.count_ones()).max().unwrap_or(0);
    let core: u32 = (0..n).filter(|&v| adj[v].count_ones() == delta).fold(0, |m, v| m | (1 << v));
    (0..n).all(|v| core & (1 << v) == 0 || (adj[v] & core).count_ones() <= 2)
}

fn next_level(level: &[CanonicalForm], n: usize, last: bool) -> Vec<CanonicalForm> {
    let mut out: Vec<CanonicalForm> = level
        .par_iter()
        .flat_map_iter(|form| {
            let adj = decode(form);
            (1u32..(1 << n)).filter_map(move |s| {
                let child = extend(&adj, n, s);
                (!last || core_ok(&child, n + 1)).then(|| labeling_from_adj(n + 1, child).0)
            })
        })
        .collect();
    out.par_sort_unstable();
    out.dedup();
    out
}

/// Connected graphs on `2..=max_n` vertices whose core has maximum degree
/// at most two, up to isomorphism, ordered by `(n, canonical form)`.
pub fn enumerate_hz_candidates(max_n: usize, allow_slow: bool) -> Result<Vec<SimpleGraph>> {
    if max_n > MAX_ENUMERATION_N || (max_n > FAST_ENUMERATION_N && !allow_slow) {
        return Err(Error::EnumerationTooLarge(max_n));
    }
    let mut result = Vec::new();
    let mut level = vec![labeling_from_adj(1, [0; MAX_CANON_N]).0];
    for n in 1..max_n {
        let last = n + 1 == max_n;
        level = next_level(&level, n, last);
        let hz = level.iter().filter(|f| last || core_ok(&decode(f), n + 1));
        result.extend(hz.map(|f| f.to_graph()));
    }
    Ok(result)
}

/// Count of connected graphs on exactly `n` vertices, for sanity checks.
pub fn count_connected(n: usize) -> usize {
    let mut level = vec![labeling_from_adj(1, [0; MAX_CANON_N]).0];
    for k in 1..n {
        level = next_level(&level, k, false);
    }
    level.len()
}

/// HZ candidates among pre-generated graph6 lines, in file order.
pub fn hz_candidates_from_graph6(text: &str) -> Result<Vec<SimpleGraph>> {
    Ok(read_graph6_lines(text)?
        .into_iter()
        .filter(|g| g.n() >= 2 && is_hz_candidate(g))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{are_isomorphic, to_graph6};

    #[test]
    fn connected_counts_match_known_sequence() {
        // OEIS A001349
        let known = [1, 1, 2, 6, 21, 112, 853];
        for (i, &k) in known.iter().enumerate() {
            assert_eq!(count_connected(i + 1), k, "n = {}", i + 1);
        }
    }

    #[test]
    fn golden_up_to_three() {
        let got = enumerate_hz_candidates(3, false).unwrap();
        let want = [SimpleGraph::path(2), SimpleGraph::path(3), SimpleGraph::cycle(3).unwrap()];
        assert_eq!(got.len(), want.len());
        for w in &want {
            assert!(got.iter().any(|g| are_isomorphic(g, w).unwrap()), "{}", to_graph6(w));
        }
    }

    #[test]
    fn c5_present_k4_absent() {
        let got = enumerate_hz_candidates(5, false).unwrap();
        let c5 = SimpleGraph::cycle(5).unwrap();
        let k4 = SimpleGraph::complete(4);
        assert!(got.iter().any(|g| are_isomorphic(g, &c5).unwrap()));
        assert!(!got.iter().any(|g| are_isomorphic(g, &k4).unwrap()));
        assert!(got.iter().all(is_hz_candidate));
    }

    #[test]
    fn bounds() {
        assert!(matches!(enumerate_hz_candidates(10, false), Err(Error::EnumerationTooLarge(10))));
        assert!(matches!(enumerate_hz_candidates(11, true), Err(Error::EnumerationTooLarge(11))));
    }

    #[test]
    fn bitmask_filter_agrees_with_graph_predicate() {
        for form in next_level(&next_level(&next_level(&[labeling_from_adj(1, [0; 16]).0], 1, false), 2, false), 3, false) {
            let g = form.to_graph();
            assert_eq!(core_ok(&decode(&form), 4), is_hz_candidate(&g));
        }
    }

    #[test]
    fn graph6_source_filters() {
        let text = format!("{}\n{}\n", to_graph6(&SimpleGraph::complete(4)), to_graph6(&SimpleGraph::cycle(5).unwrap()));
        let got = hz_candidates_from_graph6(&text).unwrap();
        assert_eq!(got.len(), 1);
        assert!(got[0].is_cycle());
    }
}
