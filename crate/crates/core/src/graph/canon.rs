//! Canonical labeling for small graphs by individualization and refinement.
//!
//! Twin vertices (same neighborhood apart from each other) are interchangeable
//! by an automorphism, so only one member of each twin class in a target cell
//! is individualized. That keeps empty, complete and multipartite-like graphs
//! from exploding the search tree.

use super::{SimpleGraph, Vertex};
use crate::error::{Error, Result};

pub const MAX_CANON_N: usize = 16;

/// Isomorphism-invariant encoding: the upper-triangle adjacency bits of the
/// canonically relabeled graph, packed like graph6.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: u8,
    pub bits: u128,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> SimpleGraph {
        let n = self.n as usize;
        let total = n * n.saturating_sub(1) / 2;
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if (self.bits >> (total - 1 - k)) & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        SimpleGraph::from_edges(n, edges).expect("canonical form is simple")
    }
}

struct Ctx {
    n: usize,
    adj: [u32; MAX_CANON_N],
}

impl Ctx {
    fn twins(&self, v: usize, w: usize) -> bool {
        (self.adj[v] & !(1 << w)) == (self.adj[w] & !(1 << v))
    }

    fn refine(&self, cells: &mut Vec<u32>) {
        loop {
            let mut next = Vec::with_capacity(self.n);
            let mut changed = false;
            for &cell in cells.iter() {
                if cell.count_ones() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut groups: Vec<(Vec<u32>, u32)> = Vec::new();
                let mut rest = cell;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let sig: Vec<u32> = cells
                        .iter()
                        .map(|&c| (self.adj[v] & c).count_ones())
                        .collect();
                    match groups.iter_mut().find(|(s, _)| *s == sig) {
                        Some((_, mask)) => *mask |= 1 << v,
                        None => groups.push((sig, 1 << v)),
                    }
                }
                if groups.len() > 1 {
                    changed = true;
                    groups.sort_by(|a, b| a.0.cmp(&b.0));
                }
                next.extend(groups.into_iter().map(|(_, m)| m));
            }
            *cells = next;
            if !changed {
                return;
            }
        }
    }

    fn certificate(&self, cells: &[u32]) -> (u128, Vec<Vertex>) {
        let lab: Vec<Vertex> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut bits = 0u128;
        for j in 1..self.n {
            for i in 0..j {
                bits = (bits << 1) | ((self.adj[lab[i]] >> lab[j]) & 1) as u128;
            }
        }
        (bits, lab)
    }

    fn search(&self, mut cells: Vec<u32>, best: &mut Option<(u128, Vec<Vertex>)>) {
        self.refine(&mut cells);
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            let (bits, lab) = self.certificate(&cells);
            if best.as_ref().is_none_or(|(b, _)| bits > *b) {
                *best = Some((bits, lab));
            }
            return;
        };
        let cell = cells[target];
        let mut tried: Vec<usize> = Vec::new();
        let mut rest = cell;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if tried.iter().any(|&w| self.twins(v, w)) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1 << v);
            child.push(cell & !(1 << v));
            child.extend_from_slice(&cells[target + 1..]);
            self.search(child, best);
        }
    }
}

/// Returns the canonical form and the labeling `lab`, where canonical vertex
/// `i` is original vertex `lab[i]`.
pub fn canonical_labeling(g: &SimpleGraph) -> Result<(CanonicalForm, Vec<Vertex>)> {
    let n = g.n();
    if n > MAX_CANON_N {
        return Err(Error::InvalidGraph(format!(
            "canonical labeling supports at most {MAX_CANON_N} vertices, got {n}"
        )));
    }
    let mut adj = [0u32; MAX_CANON_N];
    for (v, row) in adj.iter_mut().enumerate().take(n) {
        for &w in g.neighbors(v) {
            *row |= 1 << w;
        }
    }
    Ok(labeling_from_adj(n, adj))
}

/// Bitmask entry point for the enumerator; `n <= MAX_CANON_N` is the caller's job.
pub(crate) fn labeling_from_adj(n: usize, adj: [u32; MAX_CANON_N]) -> (CanonicalForm, Vec<Vertex>) {
    let ctx = Ctx { n, adj };
    if n == 0 {
        return (CanonicalForm { n: 0, bits: 0 }, Vec::new());
    }
    let mut best = None;
    ctx.search(vec![((1u64 << n) - 1) as u32], &mut best);
    let (bits, lab) = best.expect("search reaches a leaf");
    (CanonicalForm { n: n as u8, bits }, lab)
}

pub fn canonical_form(g: &SimpleGraph) -> Result<CanonicalForm> {
    canonical_labeling(g).map(|(f, _)| f)
}

pub fn are_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> Result<bool> {
    if a.n() != b.n() || a.m() != b.m() {
        return Ok(false);
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}
