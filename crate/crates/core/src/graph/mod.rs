//! Immutable simple graphs and the degree-class views built on top of them.

pub(crate) mod canon;
mod classes;
mod graph6;
mod odelta;
mod structure;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use classes::{
    classify, core, degree_class, neighbors_of_degree, petersen, is_hz_candidate, is_overfull, petersen_star, ClassLabel, ClassReason,
    DegreeClassView, GraphClass,
};
pub use graph6::{from_graph6, read_graph6_lines, to_graph6};
pub use odelta::{
    build_o_delta, canonical_h2, feasible_o_delta_params, o_delta_shapes, recognize_o_delta,
    regular_graphs, two_regular_graphs, ODeltaSpec,
};
pub use structure::{check_hz_structure, ClauseOutcome, HzStructureReport};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

/// An undirected simple graph on vertices `0..n`.
///
/// Edges are numbered in lexicographic order of their `(min, max)` endpoint
/// pair; every coloring in this crate indexes colors by that id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<Vertex>>,
    adj_edges: Vec<Vec<EdgeId>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            adj: vec![Vec::new(); n],
            adj_edges: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph, rejecting loops, parallel edges and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list: Vec<(Vertex, Vertex)> = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidGraph(format!(
                    "parallel edge {}-{}",
                    w[0].0, w[0].1
                )));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut adj_edges = vec![Vec::new(); n];
        for (u, nbrs) in adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            adj_edges[u] = nbrs
                .iter()
                .map(|&v| {
                    let key = (u.min(v), u.max(v));
                    list.binary_search(&key).expect("edge present")
                })
                .collect();
        }
        Ok(SimpleGraph {
            n,
            adj,
            adj_edges,
            edges: list,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// `(neighbor, edge id)` pairs at `v`, in neighbor order.
    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = (Vertex, EdgeId)> + '_ {
        self.adj[v]
            .iter()
            .copied()
            .zip(self.adj_edges[v].iter().copied())
    }

    pub fn incident_edges(&self, v: Vertex) -> &[EdgeId] {
        &self.adj_edges[v]
    }

    pub fn edge(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.adj[u]
            .binary_search(&v)
            .ok()
            .map(|i| self.adj_edges[u][i])
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// The endpoint of `e` other than `v`.
    pub fn other_end(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// Connected and 2-regular.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.adj.iter().all(|a| a.len() == 2) && self.is_connected()
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.adj.iter().all(|a| a.len() == d)
    }

    /// The subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> SimpleGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self.edges.iter().filter_map(|&(u, v)| {
            (index[u] != usize::MAX && index[v] != usize::MAX).then(|| (index[u], index[v]))
        });
        SimpleGraph::from_edges(vertices.len(), edges).expect("induced subgraph is simple")
    }

    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Result<SimpleGraph> {
        let e = self.edge_id(u, v).ok_or(Error::NoSuchEdge(u, v))?;
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &p)| p);
        SimpleGraph::from_edges(self.n, edges)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<SimpleGraph> {
        if perm.len() != self.n {
            return Err(Error::InvalidGraph("permutation length mismatch".into()));
        }
        SimpleGraph::from_edges(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Disjoint union join: every vertex of `self` adjacent to every vertex of `other`.
    pub fn join(&self, other: &SimpleGraph) -> SimpleGraph {
        let off = self.n;
        let mut edges: Vec<(Vertex, Vertex)> = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        for u in 0..self.n {
            for v in 0..other.n {
                edges.push((u, v + off));
            }
        }
        SimpleGraph::from_edges(self.n + other.n, edges).expect("join is simple")
    }

    pub fn cycle(n: usize) -> Result<SimpleGraph> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("cycle needs 3 vertices, got {n}")));
        }
        SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn complete(n: usize) -> SimpleGraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        SimpleGraph::from_edges(n, edges).expect("complete graph is simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> SimpleGraph {
        SimpleGraph::empty(a).join(&SimpleGraph::empty(b))
    }

    /// Vertex-disjoint union.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let off = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        SimpleGraph::from_edges(self.n + other.n, edges).expect("union is simple")
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<[Vertex; 2]>,
}

impl Serialize for SimpleGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphDoc {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimpleGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(d)?;
        SimpleGraph::from_edges(doc.n, doc.edges.iter().map(|e| (e[0], e[1])))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert!(SimpleGraph::from_edges(3, [(1, 1)]).is_err());
        assert!(SimpleGraph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(SimpleGraph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn edge_count_is_half_degree_sum() {
        let g = SimpleGraph::complete(6);
        let sum: usize = (0..6).map(|v| g.degree(v)).sum();
        assert_eq!(sum, 2 * g.m());
        assert_eq!(g.m(), 15);
    }

    #[test]
    fn edge_ids_follow_lexicographic_order() {
        let g = SimpleGraph::from_edges(4, [(2, 3), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.edge_id(2, 1), Some(1));
        assert_eq!(g.edge_id(0, 3), None);
        for v in 0..4 {
            for (w, e) in g.incident(v) {
                assert_eq!(g.other_end(e, v), w);
            }
        }
    }

    #[test]
    fn connectivity_and_cycles() {
        assert!(SimpleGraph::cycle(5).unwrap().is_cycle());
        let two_triangles = SimpleGraph::cycle(3)
            .unwrap()
            .disjoint_union(&SimpleGraph::cycle(3).unwrap());
        assert!(!two_triangles.is_connected());
        assert!(!two_triangles.is_cycle());
    }

    #[test]
    fn json_round_trip_validates() {
        let g = SimpleGraph::cycle(4).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
        let back: SimpleGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<SimpleGraph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }
}
