use std::sync::Arc;

use serde::Serialize;

use super::color_with_k;
use super::vizing::{fan_repair, greedy_extend};
use crate::coloring::{Color, PartialColoring, MAX_COLORS};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, Vertex};

/// How each edge of a Δ-coloring got its color.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DeltaStats {
    pub greedy: usize,
    pub kempe_repairs: usize,
    pub fan_repairs: usize,
    /// Edges still uncolored after repair, handed to the backtracking search.
    pub stuck: usize,
    pub fallback_nodes: u64,
}

#[derive(Clone, Debug)]
pub struct DeltaColoring {
    pub coloring: PartialColoring,
    pub stats: DeltaStats,
}

/// One Kempe change at `v` frees a color already missing at `u`.
fn kempe_repair(c: &mut PartialColoring, u: Vertex, v: Vertex) -> bool {
    for a in c.missing(u).iter() {
        for b in c.missing(v).iter() {
            if c.linked(u, v, a, b).unwrap_or(true) {
                continue;
            }
            let mut w = c.clone();
            if w.swap_at(v, a, b).is_ok() && w.set_color_between(u, v, Some(a)).is_ok() {
                *c = w;
                return true;
            }
        }
    }
    false
}

/// Greedy Δ-coloring with Kempe and fan repairs, falling back to exact
/// search for whatever the repairs leave. This is an engineering procedure;
/// completeness comes only from the fallback.
pub fn delta_edge_color(g: &SimpleGraph, budget: u64) -> Result<DeltaColoring> {
    let delta = g.max_degree();
    if delta > MAX_COLORS as usize {
        return Err(Error::Precondition(format!("Δ = {delta} colors unsupported")));
    }
    let arc = Arc::new(g.clone());
    let mut c = PartialColoring::uncolored(arc.clone(), delta as Color)?;
    let mut stats = DeltaStats::default();
    let mut stuck = Vec::new();
    for &(u, v) in g.edges() {
        if greedy_extend(&mut c, u, v) {
            stats.greedy += 1;
        } else if kempe_repair(&mut c, u, v) {
            stats.kempe_repairs += 1;
        } else if fan_repair(&mut c, u, v) {
            stats.fan_repairs += 1;
        } else {
            stuck.push((u, v));
        }
    }
    // later swaps may have opened room for earlier failures
    stuck.retain(|&(u, v)| {
        if kempe_repair(&mut c, u, v) {
            stats.kempe_repairs += 1;
            false
        } else if fan_repair(&mut c, u, v) {
            stats.fan_repairs += 1;
            false
        } else {
            true
        }
    });
    stats.stuck = stuck.len();
    if !stuck.is_empty() {
        let (found, nodes) = color_with_k(g, delta, budget)?;
        stats.fallback_nodes = nodes;
        let cs = found.ok_or_else(|| {
            Error::Precondition(format!("no {delta}-edge-coloring exists; graph is Class 2"))
        })?;
        let opts: Vec<_> = cs.into_iter().map(Some).collect();
        c = PartialColoring::from_colors(arc, delta as Color, &opts)?;
    }
    debug_assert!(c.validate_proper() && c.is_complete());
    Ok(DeltaColoring { coloring: c, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_BUDGET;

    #[test]
    fn even_cycle_two_colors() {
        let r = delta_edge_color(&SimpleGraph::cycle(6).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.coloring.k(), 2);
        assert!(r.coloring.validate_proper() && r.coloring.is_complete());
    }

    #[test]
    fn bipartite_three_colors() {
        let r = delta_edge_color(&SimpleGraph::complete_bipartite(3, 3), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.coloring.k(), 3);
        assert!(r.coloring.validate_proper() && r.coloring.is_complete());
    }

    #[test]
    fn class_two_input_is_an_error() {
        assert!(delta_edge_color(&SimpleGraph::cycle(5).unwrap(), DEFAULT_BUDGET).is_err());
    }
}
