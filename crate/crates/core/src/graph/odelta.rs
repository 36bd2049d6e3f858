//! The join family `O_Δ`: a 2-regular graph `H1` on `n1` vertices joined to a
//! `(Δ-1-n1)`-regular graph `H2` on `Δ-2` vertices, with `n1 + Δ - 2` odd.

use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use super::classes::degree_class;
use super::{canonical_form, SimpleGraph, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ODeltaSpec {
    pub delta: usize,
    pub n1: usize,
    pub h1_edges: Vec<(Vertex, Vertex)>,
    pub h2_edges: Vec<(Vertex, Vertex)>,
}

impl ODeltaSpec {
    pub fn h2_order(&self) -> usize {
        self.delta - 2
    }

    pub fn h2_degree(&self) -> usize {
        self.delta - 1 - self.n1
    }

    /// Spec with canonical `H1` (a single cycle) and canonical `H2`.
    pub fn canonical(delta: usize, n1: usize) -> Result<ODeltaSpec> {
        check_params(delta, n1)?;
        let h1 = SimpleGraph::cycle(n1)?;
        let h2 = canonical_h2(delta - 1 - n1, delta - 2)?;
        Ok(ODeltaSpec {
            delta,
            n1,
            h1_edges: h1.edges().to_vec(),
            h2_edges: h2.edges().to_vec(),
        })
    }

    pub fn h1(&self) -> Result<SimpleGraph> {
        SimpleGraph::from_edges(self.n1, self.h1_edges.iter().copied())
    }

    pub fn h2(&self) -> Result<SimpleGraph> {
        SimpleGraph::from_edges(self.h2_order(), self.h2_edges.iter().copied())
    }

    pub fn validate(&self) -> Result<()> {
        check_params(self.delta, self.n1)?;
        let h1 = self.h1()?;
        if !h1.is_regular(2) {
            return Err(Error::InfeasibleSpec("H1 is not 2-regular".into()));
        }
        let h2 = self.h2()?;
        if !h2.is_regular(self.h2_degree()) {
            return Err(Error::InfeasibleSpec(format!(
                "H2 is not {}-regular on {} vertices",
                self.h2_degree(),
                self.h2_order()
            )));
        }
        Ok(())
    }
}

fn check_params(delta: usize, n1: usize) -> Result<()> {
    if delta < 4 {
        return Err(Error::InfeasibleSpec(format!("delta = {delta} < 4")));
    }
    if n1 < 3 || n1 > delta - 1 {
        return Err(Error::InfeasibleSpec(format!(
            "n1 = {n1} outside [3, {}]",
            delta - 1
        )));
    }
    if (n1 + delta - 2) % 2 == 0 {
        return Err(Error::InfeasibleSpec(format!(
            "n1 + (delta - 2) = {} is even",
            n1 + delta - 2
        )));
    }
    if ((delta - 1 - n1) * (delta - 2)) % 2 == 1 {
        return Err(Error::InfeasibleSpec(format!(
            "no {}-regular graph on {} vertices",
            delta - 1 - n1,
            delta - 2
        )));
    }
    Ok(())
}

/// All `n1` admitted for `delta`.
pub fn feasible_o_delta_params(delta: usize) -> Vec<usize> {
    if delta < 4 {
        return Vec::new();
    }
    (3..delta).filter(|&n1| check_params(delta, n1).is_ok()).collect()
}

/// `H1` on vertices `0..n1`, `H2` on `n1..n1+Δ-2`.
pub fn build_o_delta(spec: &ODeltaSpec) -> Result<SimpleGraph> {
    spec.validate()?;
    Ok(spec.h1()?.join(&spec.h2()?))
}

pub fn recognize_o_delta(g: &SimpleGraph) -> Option<ODeltaSpec> {
    let n = g.n();
    let delta = g.max_degree();
    if n % 2 == 0 || delta < 4 {
        return None;
    }
    let high = degree_class(g, delta);
    let low = degree_class(g, delta - 1);
    if high.len() + low.len() != n || low.len() != delta - 2 {
        return None;
    }
    if high
        .iter()
        .any(|&a| low.iter().any(|&b| !g.has_edge(a, b)))
    {
        return None;
    }
    let h1 = g.induced_subgraph(&high);
    let h2 = g.induced_subgraph(&low);
    let n1 = high.len();
    if n1 + 1 > delta || !h1.is_regular(2) || !h2.is_regular(delta - 1 - n1) {
        return None;
    }
    let spec = ODeltaSpec {
        delta,
        n1,
        h1_edges: h1.edges().to_vec(),
        h2_edges: h2.edges().to_vec(),
    };
    spec.validate().ok().map(|_| spec)
}

/// A fixed `degree`-regular graph on `order` vertices: empty, a perfect
/// matching, or a circulant.
pub fn canonical_h2(degree: usize, order: usize) -> Result<SimpleGraph> {
    let too_dense = if order == 0 { degree > 0 } else { degree >= order };
    if too_dense || (degree * order) % 2 == 1 {
        return Err(Error::InfeasibleSpec(format!(
            "no {degree}-regular graph on {order} vertices"
        )));
    }
    let mut edges = Vec::new();
    for v in 0..order {
        for off in 1..=degree / 2 {
            edges.push((v, (v + off) % order));
        }
        if degree % 2 == 1 && v < order / 2 {
            edges.push((v, v + order / 2));
        }
    }
    let mut seen = HashSet::new();
    edges.retain(|&(u, v)| seen.insert((u.min(v), u.max(v))));
    SimpleGraph::from_edges(order, edges)
}

/// 2-regular graphs on `n` vertices up to isomorphism: one per partition of
/// `n` into cycle lengths of at least 3, lengths listed in decreasing order.
pub fn two_regular_graphs(n: usize) -> Vec<SimpleGraph> {
    fn parts(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (3..=max.min(rest)).rev() {
            cur.push(p);
            parts(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    parts(n, n, &mut Vec::new(), &mut all);
    all.into_iter()
        .map(|lengths| {
            lengths
                .iter()
                .map(|&l| SimpleGraph::cycle(l).expect("l >= 3"))
                .reduce(|a, b| a.disjoint_union(&b))
                .unwrap_or_else(|| SimpleGraph::empty(0))
        })
        .collect()
}

/// All `d`-regular graphs on `n` vertices up to isomorphism (small `n`).
pub fn regular_graphs(n: usize, d: usize) -> Vec<SimpleGraph> {
    if (n * d) % 2 == 1 || (n > 0 && d >= n) {
        return Vec::new();
    }
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut deg = vec![0usize; n];
    let mut chosen = Vec::new();
    let mut forms = HashSet::new();
    let mut out = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        pairs: &[(Vertex, Vertex)],
        d: usize,
        n: usize,
        deg: &mut Vec<usize>,
        chosen: &mut Vec<(Vertex, Vertex)>,
        forms: &mut HashSet<super::CanonicalForm>,
        out: &mut Vec<SimpleGraph>,
    ) {
        if deg.iter().all(|&x| x == d) {
            let g = SimpleGraph::from_edges(n, chosen.iter().copied()).expect("simple");
            if forms.insert(canonical_form(&g).expect("small graph")) {
                out.push(g);
            }
            return;
        }
        if i == pairs.len() {
            return;
        }
        let (u, v) = pairs[i];
        // vertex u must be saturated before moving past its last pair
        let last_for_u = pairs[i + 1..].iter().all(|&(a, b)| a != u && b != u);
        if deg[u] < d && deg[v] < d {
            deg[u] += 1;
            deg[v] += 1;
            chosen.push((u, v));
            rec(i + 1, pairs, d, n, deg, chosen, forms, out);
            chosen.pop();
            deg[u] -= 1;
            deg[v] -= 1;
        }
        if !(last_for_u && deg[u] < d) {
            rec(i + 1, pairs, d, n, deg, chosen, forms, out);
        }
    }
    rec(0, &pairs, d, n, &mut deg, &mut chosen, &mut forms, &mut out);
    out
}

/// Up to `limit` specs for `delta`, enumerating `n1`, then `H1` shapes, then
/// `H2` isomorphism classes.
pub fn o_delta_shapes(delta: usize, limit: usize) -> Vec<ODeltaSpec> {
    let mut specs = Vec::new();
    for n1 in feasible_o_delta_params(delta) {
        let h2s = regular_graphs(delta - 2, delta - 1 - n1);
        for h1 in two_regular_graphs(n1) {
            for h2 in &h2s {
                if specs.len() == limit {
                    return specs;
                }
                specs.push(ODeltaSpec {
                    delta,
                    n1,
                    h1_edges: h1.edges().to_vec(),
                    h2_edges: h2.edges().to_vec(),
                });
            }
        }
    }
    specs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{are_isomorphic, is_overfull};

    #[test]
    fn delta4_is_k5_minus_edge() {
        let spec = ODeltaSpec::canonical(4, 3).unwrap();
        let g = build_o_delta(&spec).unwrap();
        let k5e = SimpleGraph::complete(5).without_edge(3, 4).unwrap();
        assert!(are_isomorphic(&g, &k5e).unwrap());
    }

    #[test]
    fn delta5_n1_4() {
        let spec = ODeltaSpec::canonical(5, 4).unwrap();
        let g = build_o_delta(&spec).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.m(), 16);
        assert!(is_overfull(&g));
        for v in 0..4 {
            assert_eq!(g.degree(v), 5);
        }
        for v in 4..7 {
            assert_eq!(g.degree(v), 4);
        }
    }

    #[test]
    fn even_order_is_rejected() {
        let err = ODeltaSpec::canonical(5, 3).unwrap_err();
        assert!(matches!(err, Error::InfeasibleSpec(_)));
        let bad = ODeltaSpec {
            delta: 5,
            n1: 3,
            h1_edges: vec![(0, 1), (1, 2), (0, 2)],
            h2_edges: vec![(0, 1), (1, 2), (0, 2)],
        };
        assert!(build_o_delta(&bad).is_err());
    }

    #[test]
    fn feasible_params() {
        assert_eq!(feasible_o_delta_params(4), vec![3]);
        assert_eq!(feasible_o_delta_params(5), vec![4]);
        assert_eq!(feasible_o_delta_params(6), vec![3, 5]);
        assert_eq!(feasible_o_delta_params(7), vec![4, 6]);
        assert_eq!(feasible_o_delta_params(8), vec![3, 5, 7]);
    }

    #[test]
    fn regular_graph_counts() {
        // known counts of connected + disconnected regular graphs
        assert_eq!(regular_graphs(6, 2).len(), 2);
        assert_eq!(regular_graphs(6, 3).len(), 2);
        assert_eq!(regular_graphs(6, 4).len(), 1);
        assert_eq!(regular_graphs(8, 3).len(), 6);
        assert_eq!(regular_graphs(5, 3).len(), 0);
        assert_eq!(regular_graphs(4, 0).len(), 1);
        assert_eq!(two_regular_graphs(7).len(), 2);
        assert_eq!(two_regular_graphs(9).len(), 4);
    }

    #[test]
    fn canonical_h2_is_regular() {
        for order in 1..=8 {
            for degree in 0..order {
                if (degree * order) % 2 == 0 {
                    let g = canonical_h2(degree, order).unwrap();
                    assert!(g.is_regular(degree), "{degree}-regular on {order}");
                }
            }
        }
        assert!(canonical_h2(3, 5).is_err());
    }

    #[test]
    fn recognize_rejects_petersen_star() {
        assert!(recognize_o_delta(&crate::graph::petersen_star()).is_none());
    }

    #[test]
    fn recognize_round_trip() {
        for delta in 4..=8 {
            for spec in o_delta_shapes(delta, 50) {
                let g = build_o_delta(&spec).unwrap();
                let back = recognize_o_delta(&g).expect("member is recognized");
                assert_eq!(back.delta, spec.delta);
                assert_eq!(back.n1, spec.n1);
                assert!(are_isomorphic(&back.h1().unwrap(), &spec.h1().unwrap()).unwrap());
                assert!(are_isomorphic(&back.h2().unwrap(), &spec.h2().unwrap()).unwrap());
                let rebuilt = build_o_delta(&back).unwrap();
                assert!(are_isomorphic(&rebuilt, &g).unwrap());
            }
        }
    }
}
