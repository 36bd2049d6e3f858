use serde::{Serialize, Serializer};
use std::sync::OnceLock;

use super::{are_isomorphic, SimpleGraph, Vertex};
use crate::error::{Error, Result};

/// Degree classes of a graph: `V_Δ`, `V_{Δ-1}` and the core `G[V_Δ]`.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeClassView {
    pub delta: usize,
    pub v_delta: Vec<Vertex>,
    pub v_delta_minus_1: Vec<Vertex>,
    /// Core as an induced subgraph; vertex `i` is `v_delta[i]`.
    #[serde(serialize_with = "serialize_core_edges", rename = "core_edges")]
    pub core_subgraph: SimpleGraph,
    pub core_max_degree: usize,
}

fn serialize_core_edges<S: Serializer>(
    g: &SimpleGraph,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let edges: Vec<[usize; 2]> = g.edges().iter().map(|&(u, v)| [u, v]).collect();
    edges.serialize(s)
}

impl DegreeClassView {
    /// Core edges in the labels of the original graph.
    pub fn core_edges_original(&self) -> Vec<(Vertex, Vertex)> {
        self.core_subgraph
            .edges()
            .iter()
            .map(|&(a, b)| (self.v_delta[a], self.v_delta[b]))
            .collect()
    }
}

/// `V_i`: the vertices of degree `i`.
pub fn degree_class(g: &SimpleGraph, i: usize) -> Vec<Vertex> {
    (0..g.n()).filter(|&v| g.degree(v) == i).collect()
}

/// `N_i(v)`: neighbors of `v` with degree `i`.
pub fn neighbors_of_degree(g: &SimpleGraph, v: Vertex, i: usize) -> Vec<Vertex> {
    g.neighbors(v)
        .iter()
        .copied()
        .filter(|&w| g.degree(w) == i)
        .collect()
}

pub fn core(g: &SimpleGraph) -> DegreeClassView {
    let delta = g.max_degree();
    let v_delta = degree_class(g, delta);
    let v_delta_minus_1 = if delta == 0 {
        Vec::new()
    } else {
        degree_class(g, delta - 1)
    };
    let core_subgraph = g.induced_subgraph(&v_delta);
    let core_max_degree = core_subgraph.max_degree();
    DegreeClassView {
        delta,
        v_delta,
        v_delta_minus_1,
        core_subgraph,
        core_max_degree,
    }
}

/// `|E| > Δ·⌊n/2⌋`.
pub fn is_overfull(g: &SimpleGraph) -> bool {
    g.m() > g.max_degree() * (g.n() / 2)
}

pub fn is_hz_candidate(g: &SimpleGraph) -> bool {
    g.n() >= 1 && g.is_connected() && core(g).core_max_degree <= 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphClass {
    Class1,
    Class2,
}

impl Serialize for GraphClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(match self {
            GraphClass::Class1 => 1,
            GraphClass::Class2 => 2,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassReason {
    Overfull,
    OddCycle,
    PetersenStar,
    NotOverfull,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClassLabel {
    #[serde(rename = "class")]
    pub value: GraphClass,
    pub reason: ClassReason,
}

impl ClassLabel {
    pub fn is_class2(&self) -> bool {
        self.value == GraphClass::Class2
    }
}

/// Class of a connected graph whose core has maximum degree at most two.
///
/// For `Δ ≥ 4` overfullness alone decides; `Δ = 3` also needs the
/// Petersen-minus-a-vertex check, and `Δ ≤ 2` reduces to cycle parity.
pub fn classify(g: &SimpleGraph) -> Result<ClassLabel> {
    if !is_hz_candidate(g) {
        return Err(Error::NotHzCandidate(
            "classify needs a connected graph whose core has maximum degree <= 2".into(),
        ));
    }
    let class2 = |reason| ClassLabel {
        value: GraphClass::Class2,
        reason,
    };
    let delta = g.max_degree();
    if is_overfull(g) {
        return Ok(class2(ClassReason::Overfull));
    }
    if delta == 2 && g.is_cycle() && g.n() % 2 == 1 {
        return Ok(class2(ClassReason::OddCycle));
    }
    if delta == 3 && are_isomorphic(g, petersen_star_ref())? {
        return Ok(class2(ClassReason::PetersenStar));
    }
    Ok(ClassLabel {
        value: GraphClass::Class1,
        reason: ClassReason::NotOverfull,
    })
}

fn petersen_star_ref() -> &'static SimpleGraph {
    static P: OnceLock<SimpleGraph> = OnceLock::new();
    P.get_or_init(petersen_star)
}

/// The Petersen graph with outer 5-cycle `0..5`, spokes `i–i+5` and inner
/// pentagram `5+i – 5+(i+2)%5`.
pub fn petersen() -> SimpleGraph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    SimpleGraph::from_edges(10, edges).expect("Petersen graph is simple")
}

/// Petersen graph with vertex 0 deleted, remaining vertices shifted down by one.
pub fn petersen_star() -> SimpleGraph {
    let p = petersen();
    let edges = p
        .edges()
        .iter()
        .filter(|&&(u, v)| u != 0 && v != 0)
        .map(|&(u, v)| (u - 1, v - 1));
    SimpleGraph::from_edges(9, edges).expect("P* is simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5_minus_edge() -> SimpleGraph {
        SimpleGraph::complete(5).without_edge(3, 4).unwrap()
    }

    #[test]
    fn core_of_k5_minus_edge_is_triangle() {
        let view = core(&k5_minus_edge());
        assert_eq!(view.delta, 4);
        assert_eq!(view.v_delta, vec![0, 1, 2]);
        assert_eq!(view.v_delta_minus_1, vec![3, 4]);
        assert!(view.core_subgraph.is_cycle());
        assert_eq!(view.core_subgraph.n(), 3);
    }

    #[test]
    fn core_of_c5_is_itself() {
        let c5 = SimpleGraph::cycle(5).unwrap();
        let view = core(&c5);
        assert_eq!(view.v_delta.len(), 5);
        assert_eq!(view.core_subgraph, c5);
    }

    #[test]
    fn petersen_star_shape() {
        let p = petersen_star();
        assert_eq!(p.n(), 9);
        assert_eq!(p.m(), 12);
        let mut degs: Vec<usize> = (0..9).map(|v| p.degree(v)).collect();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(degs, vec![3, 3, 3, 3, 3, 3, 2, 2, 2]);
        assert!(p.is_connected());
        let view = core(&p);
        assert_eq!(view.v_delta.len(), 6);
        assert_eq!(view.core_max_degree, 2);
    }

    #[test]
    fn overfull_examples() {
        assert!(is_overfull(&SimpleGraph::cycle(5).unwrap()));
        assert!(is_overfull(&k5_minus_edge()));
        assert!(!is_overfull(&petersen_star()));
        assert!(!is_overfull(&SimpleGraph::cycle(6).unwrap()));
    }

    #[test]
    fn hz_candidates() {
        assert!(is_hz_candidate(&petersen_star()));
        assert!(!is_hz_candidate(&SimpleGraph::complete(4)));
        let two_triangles = SimpleGraph::cycle(3)
            .unwrap()
            .disjoint_union(&SimpleGraph::cycle(3).unwrap());
        assert!(!is_hz_candidate(&two_triangles));
    }

    #[test]
    fn classify_examples() {
        let l = classify(&k5_minus_edge()).unwrap();
        assert_eq!((l.value, l.reason), (GraphClass::Class2, ClassReason::Overfull));
        let l = classify(&petersen_star()).unwrap();
        assert_eq!(
            (l.value, l.reason),
            (GraphClass::Class2, ClassReason::PetersenStar)
        );
        let l = classify(&SimpleGraph::cycle(6).unwrap()).unwrap();
        assert_eq!(
            (l.value, l.reason),
            (GraphClass::Class1, ClassReason::NotOverfull)
        );
        assert!(matches!(
            classify(&SimpleGraph::complete(4)),
            Err(Error::NotHzCandidate(_))
        ));
    }

    #[test]
    fn relabeled_petersen_star_is_recognized() {
        let p = petersen_star();
        let perm = [8, 3, 5, 0, 7, 1, 6, 2, 4];
        let q = p.relabel(&perm).unwrap();
        assert_eq!(classify(&q).unwrap().reason, ClassReason::PetersenStar);
    }

    #[test]
    fn label_json() {
        let l = classify(&petersen_star()).unwrap();
        assert_eq!(
            serde_json::to_string(&l).unwrap(),
            r#"{"class":2,"reason":"PetersenStar"}"#
        );
    }
}
