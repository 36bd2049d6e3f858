use serde::Serialize;

use super::{Color, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChainKind {
    Path,
    EvenCycle,
}

/// Snapshot of one two-colored component, stamped with the version of the
/// coloring it was read from.
///
/// For a path, `edges[i]` joins `vertices[i]` and `vertices[i + 1]`. For a
/// cycle the last edge closes back to `vertices[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub(crate) colors: (Color, Color),
    pub(crate) vertices: Vec<Vertex>,
    pub(crate) edges: Vec<EdgeId>,
    pub(crate) kind: ChainKind,
    #[serde(skip)]
    version: u64,
}

impl Chain {
    pub(crate) fn new(
        colors: (Color, Color),
        vertices: Vec<Vertex>,
        edges: Vec<EdgeId>,
        kind: ChainKind,
        version: u64,
    ) -> Self {
        Chain { colors, vertices, edges, kind, version }
    }

    pub fn colors(&self) -> (Color, Color) {
        self.colors
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    /// Endpoints of a path chain (equal for a single vertex).
    pub fn endpoints(&self) -> Option<(Vertex, Vertex)> {
        match self.kind {
            ChainKind::Path => Some((self.vertices[0], *self.vertices.last().unwrap())),
            ChainKind::EvenCycle => None,
        }
    }

    /// `u` precedes `v` walking from the first vertex.
    pub fn meets_before(&self, u: Vertex, v: Vertex) -> Result<bool> {
        let i = self.position(u).ok_or(Error::NotOnChain(u))?;
        let j = self.position(v).ok_or(Error::NotOnChain(v))?;
        Ok(i < j)
    }

    /// Graphviz rendering of the colored graph with the chain highlighted.
    pub fn to_dot(&self, c: &PartialColoring) -> String {
        let g = c.graph();
        let mut out = format!(
            "graph chain {{\n  label=\"({},{})-{}\";\n",
            self.colors.0,
            self.colors.1,
            match self.kind {
                ChainKind::Path => "path",
                ChainKind::EvenCycle => "cycle",
            }
        );
        for v in 0..g.n() {
            if self.contains(v) {
                out.push_str(&format!("  {v} [style=filled, fillcolor=lightblue];\n"));
            } else {
                out.push_str(&format!("  {v};\n"));
            }
        }
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let label = c.color(e).map_or_else(|| "-".to_string(), |x| x.to_string());
            let style = if self.edges.contains(&e) { "penwidth=3" } else { "color=gray" };
            out.push_str(&format!("  {u} -- {v} [label=\"{label}\", {style}];\n"));
        }
        out.push_str("}\n");
        out
    }
}
