use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Color, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, Vertex};

/// Wire form of a coloring with at most one uncolored edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDoc {
    pub k: Color,
    pub uncolored: Option<[Vertex; 2]>,
    pub edges: Vec<[usize; 3]>,
}

impl ColoringDoc {
    pub fn from_coloring(c: &PartialColoring) -> Result<Self> {
        let g = c.graph();
        let missing = c.uncolored_edges();
        if missing.len() > 1 {
            return Err(Error::Json(format!(
                "{} uncolored edges; the schema allows at most one",
                missing.len()
            )));
        }
        let uncolored = missing.first().map(|&e| {
            let (u, v) = g.edge(e);
            [u, v]
        });
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .filter_map(|(e, &(u, v))| c.color(e).map(|col| [u, v, col as usize]))
            .collect();
        Ok(ColoringDoc { k: c.k(), uncolored, edges })
    }

    /// Rebuilds the coloring on `g`, checking coverage and properness.
    pub fn to_coloring(&self, g: Arc<SimpleGraph>) -> Result<PartialColoring> {
        let mut colors: Vec<Option<Color>> = vec![None; g.m()];
        let mut seen = vec![false; g.m()];
        for &[u, v, col] in &self.edges {
            let e = g.edge_id(u, v).ok_or(Error::NoSuchEdge(u, v))?;
            if seen[e] {
                return Err(Error::Json(format!("edge {u}-{v} listed twice")));
            }
            let col = Color::try_from(col)
                .map_err(|_| Error::InvalidColor { color: Color::MAX, k: self.k })?;
            seen[e] = true;
            colors[e] = Some(col);
        }
        if let Some([u, v]) = self.uncolored {
            let e = g.edge_id(u, v).ok_or(Error::NoSuchEdge(u, v))?;
            if seen[e] {
                return Err(Error::Json(format!("edge {u}-{v} is both colored and uncolored")));
            }
            seen[e] = true;
        }
        if let Some(e) = seen.iter().position(|&s| !s) {
            let (u, v) = g.edge(e);
            return Err(Error::Json(format!("edge {u}-{v} missing from the document")));
        }
        PartialColoring::from_colors(g, self.k, &colors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_uncolored_edge() {
        let g = Arc::new(SimpleGraph::cycle(3).unwrap());
        let c = PartialColoring::from_colors(g.clone(), 3, &[Some(1), None, Some(2)]).unwrap();
        let doc = ColoringDoc::from_coloring(&c).unwrap();
        assert_eq!(doc.uncolored, Some([0, 2]));
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(text, r#"{"k":3,"uncolored":[0,2],"edges":[[0,1,1],[1,2,2]]}"#);
        let back: ColoringDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_coloring(g).unwrap(), c);
    }

    #[test]
    fn improper_document_is_rejected() {
        let g = Arc::new(SimpleGraph::path(3));
        let doc = ColoringDoc { k: 2, uncolored: None, edges: vec![[0, 1, 1], [1, 2, 1]] };
        assert!(matches!(doc.to_coloring(g), Err(Error::Improper(_))));
    }

    #[test]
    fn incomplete_document_is_rejected() {
        let g = Arc::new(SimpleGraph::path(3));
        let doc = ColoringDoc { k: 2, uncolored: None, edges: vec![[0, 1, 1]] };
        assert!(matches!(doc.to_coloring(g), Err(Error::Json(_))));
    }
}
