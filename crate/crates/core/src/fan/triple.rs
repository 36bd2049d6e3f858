use std::sync::Arc;

use serde::Serialize;

use crate::coloring::{ColoringDoc, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::{to_graph6, EdgeId, SimpleGraph, Vertex};

/// `(G, rs_1, φ)`: `d(r) = Δ`, `d(s_1) = Δ − 1`, and `φ` a proper
/// Δ-coloring of `G − rs_1`.
#[derive(Clone, Debug)]
pub struct ColoringTriple {
    coloring: PartialColoring,
    r: Vertex,
    s1: Vertex,
    delta: usize,
}

impl ColoringTriple {
    pub fn new(coloring: PartialColoring, r: Vertex, s1: Vertex) -> Result<Self> {
        let g = coloring.graph();
        let delta = g.max_degree();
        if r >= g.n() || s1 >= g.n() {
            return Err(Error::VertexOutOfRange(r.max(s1)));
        }
        let e = g.edge_id(r, s1).ok_or(Error::NoSuchEdge(r, s1))?;
        if g.degree(r) != delta || g.degree(s1) + 1 != delta {
            return Err(Error::Precondition(format!(
                "triple needs d(r) = Δ = {delta} and d(s1) = Δ − 1, got {} and {}",
                g.degree(r),
                g.degree(s1)
            )));
        }
        if coloring.k() as usize != delta {
            return Err(Error::Precondition(format!("triple coloring must use Δ = {delta} colors")));
        }
        if coloring.uncolored_edges() != [e] {
            return Err(Error::Precondition(format!("exactly {r}-{s1} must be uncolored")));
        }
        if !coloring.validate_proper() {
            return Err(Error::Improper("triple coloring".into()));
        }
        Ok(ColoringTriple { coloring, r, s1, delta })
    }

    /// Uncolors `rs_1` in a complete coloring of `G − rs_1` given as a full
    /// per-edge color list of `g` minus that edge.
    pub fn from_coloring_of_deleted(g: Arc<SimpleGraph>, r: Vertex, s1: Vertex, colors_without: &[u8]) -> Result<Self> {
        let e = g.edge_id(r, s1).ok_or(Error::NoSuchEdge(r, s1))?;
        let mut opts = Vec::with_capacity(g.m());
        let mut it = colors_without.iter();
        for f in 0..g.m() {
            if f == e {
                opts.push(None);
            } else {
                opts.push(Some(*it.next().ok_or_else(|| {
                    Error::Precondition("too few colors for G − rs1".into())
                })?));
            }
        }
        let k = g.max_degree() as u8;
        ColoringTriple::new(PartialColoring::from_colors(g, k, &opts)?, r, s1)
    }

    pub fn coloring(&self) -> &PartialColoring {
        &self.coloring
    }

    pub fn into_coloring(self) -> PartialColoring {
        self.coloring
    }

    pub fn graph(&self) -> &SimpleGraph {
        self.coloring.graph()
    }

    pub fn r(&self) -> Vertex {
        self.r
    }

    pub fn s1(&self) -> Vertex {
        self.s1
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn uncolored_edge(&self) -> EdgeId {
        self.graph().edge_id(self.r, self.s1).expect("validated")
    }

    /// `N_{Δ−1}(r)` in ascending order.
    pub fn small_neighbors(&self) -> Vec<Vertex> {
        let g = self.graph();
        g.neighbors(self.r)
            .iter()
            .copied()
            .filter(|&v| g.degree(v) + 1 == self.delta)
            .collect()
    }

    pub fn witness(&self) -> TripleWitness {
        TripleWitness {
            graph6: to_graph6(self.graph()),
            r: self.r,
            s1: self.s1,
            coloring: ColoringDoc::from_coloring(&self.coloring).expect("one uncolored edge"),
        }
    }
}

/// Self-contained replay data for a triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct TripleWitness {
    pub graph6: String,
    pub r: Vertex,
    pub s1: Vertex,
    pub coloring: ColoringDoc,
}

impl TripleWitness {
    pub fn replay(&self) -> Result<ColoringTriple> {
        let g = Arc::new(crate::graph::from_graph6(&self.graph6)?);
        ColoringTriple::new(self.coloring.to_coloring(g)?, self.r, self.s1)
    }
}
