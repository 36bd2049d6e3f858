use serde::Serialize;

use crate::coloring::{ColorSet, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::Vertex;

/// `K = (v_0, v_0v_1, v_1, …, v_p)` with `v_0v_1` uncolored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KiersteadPath {
    pub vertices: Vec<Vertex>,
}

/// Validates `vertices` as a Kierstead path under `c`. The error names the
/// first edge index breaking the rule.
pub fn build_kierstead_path(c: &PartialColoring, vertices: &[Vertex]) -> Result<KiersteadPath> {
    let g = c.graph();
    if vertices.len() < 2 {
        return Err(Error::Precondition("a Kierstead path has at least two vertices".into()));
    }
    for (i, v) in vertices.iter().enumerate() {
        if vertices[..i].contains(v) {
            return Err(Error::Precondition(format!("vertex {v} repeated")));
        }
    }
    let (v0, v1) = (vertices[0], vertices[1]);
    let e = g.edge_id(v0, v1).ok_or(Error::NoSuchEdge(v0, v1))?;
    if c.color(e).is_some() {
        return Err(Error::Precondition(format!("edge {v0}-{v1} must be uncolored")));
    }
    let mut missing = c.missing(v0);
    for i in 1..vertices.len() - 1 {
        let (a, b) = (vertices[i], vertices[i + 1]);
        let col = c.color_between(a, b).ok_or_else(|| {
            if g.has_edge(a, b) {
                Error::Precondition(format!("edge {i}: {a}-{b} is uncolored"))
            } else {
                Error::NoSuchEdge(a, b)
            }
        })?;
        if !missing.contains(col) {
            return Err(Error::Precondition(format!(
                "edge {i}: color {col} of {a}-{b} is missed by no earlier vertex"
            )));
        }
        missing = missing.union(c.missing(a));
    }
    Ok(KiersteadPath { vertices: vertices.to_vec() })
}

/// All 4-vertex Kierstead paths starting with the uncolored edge `v0 v1`.
pub fn kierstead_paths_from(c: &PartialColoring, v0: Vertex, v1: Vertex) -> Vec<KiersteadPath> {
    let g = c.graph();
    let mut out = Vec::new();
    let m0 = c.missing(v0);
    let m01: ColorSet = m0.union(c.missing(v1));
    for &v2 in g.neighbors(v1) {
        if v2 == v0 || !c.color_between(v1, v2).is_some_and(|x| m0.contains(x)) {
            continue;
        }
        for &v3 in g.neighbors(v2) {
            if v3 == v0 || v3 == v1 {
                continue;
            }
            if c.color_between(v2, v3).is_some_and(|x| m01.contains(x)) {
                out.push(KiersteadPath { vertices: vec![v0, v1, v2, v3] });
            }
        }
    }
    out
}
