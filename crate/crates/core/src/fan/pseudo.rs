use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::multifan::{check_multifan, grow_multifan, Multifan};
use super::triple::ColoringTriple;
use crate::coloring::{ChainKind, ColoringDoc, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, SimpleGraph, Vertex};
use crate::oracle::{enumerate_colorings, random_coloring, Visit};

/// How far the search for a maximum multifan at `r` got.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxFanCertificate {
    /// `|V(F)|` of the best fan found, center included.
    pub max_vertices: usize,
    /// `|N_{Δ−1}(r)| + 1`, which no multifan can exceed.
    pub upper_bound: usize,
    /// Every coloring of every `G − rs` was visited.
    pub exhaustive: bool,
    pub colorings_examined: u64,
}

impl MaxFanCertificate {
    pub fn bound_attained(&self) -> bool {
        self.max_vertices == self.upper_bound
    }

    /// The maximum is proven rather than a lower bound.
    pub fn certified(&self) -> bool {
        self.exhaustive || self.bound_attained()
    }
}

#[derive(Clone, Debug)]
pub struct MaxFanSearch {
    pub triple: ColoringTriple,
    pub fan: Multifan,
    pub certificate: MaxFanCertificate,
}

const PROBES_PER_NEIGHBOR: usize = 4;
const PROBE_NODES: u64 = 100_000;

/// Best multifan at `r` over `s ∈ N_{Δ−1}(r)` and colorings of `G − rs`
/// (one per color permutation class), visiting at most `max(budget, 1)`
/// colorings in total. Greedy closure gives the largest fan for a fixed
/// coloring, so the maximum is exact when enumeration completes.
pub fn search_maximum_multifan(g: &Arc<SimpleGraph>, r: Vertex, budget: u64, node_budget: u64) -> Result<MaxFanSearch> {
    let delta = g.max_degree();
    if g.degree(r) != delta {
        return Err(Error::Precondition(format!("{r} is not a vertex of maximum degree")));
    }
    let small: Vec<Vertex> = g
        .neighbors(r)
        .iter()
        .copied()
        .filter(|&v| g.degree(v) + 1 == delta)
        .collect();
    let upper_bound = small.len() + 1;
    let limit = budget.max(1);
    let mut examined = 0u64;
    let mut exhaustive = true;
    let mut best: Option<(ColoringTriple, Multifan)> = None;
    // cheap randomized probes often attain the bound before enumeration starts
    let mut rng = ChaCha8Rng::seed_from_u64(r as u64);
    'probe: for &s in &small {
        let h = g.without_edge(r, s)?;
        for _ in 0..PROBES_PER_NEIGHBOR {
            if examined >= limit {
                break 'probe;
            }
            let Ok(Some(cols)) = random_coloring(&h, delta, node_budget.min(PROBE_NODES), &mut rng) else {
                continue;
            };
            examined += 1;
            let t = ColoringTriple::from_coloring_of_deleted(g.clone(), r, s, &cols)?;
            let f = grow_multifan(t.coloring(), r, s);
            if best.as_ref().is_none_or(|(_, b)| f.len() > b.len()) {
                best = Some((t, f));
            }
            if best.as_ref().is_some_and(|(_, b)| b.len() + 1 == upper_bound) {
                break 'probe;
            }
        }
    }
    let done = |best: &Option<(ColoringTriple, Multifan)>, examined: u64| {
        best.as_ref().is_some_and(|(_, b)| b.len() + 1 == upper_bound) || examined >= limit
    };
    for &s in &small {
        if done(&best, examined) {
            exhaustive = false;
            break;
        }
        let h = g.without_edge(r, s)?;
        let mut failure = None;
        let outcome = enumerate_colorings(&h, delta, node_budget, &mut |cols| {
            examined += 1;
            match ColoringTriple::from_coloring_of_deleted(g.clone(), r, s, cols) {
                Ok(t) => {
                    let f = grow_multifan(t.coloring(), r, s);
                    if best.as_ref().is_none_or(|(_, b)| f.len() > b.len()) {
                        best = Some((t, f));
                    }
                }
                Err(e) => {
                    failure = Some(e);
                    return Visit::Stop;
                }
            }
            if done(&best, examined) {
                Visit::Stop
            } else {
                Visit::Continue
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        match outcome {
            Ok(true) => {}
            Ok(false) | Err(Error::BudgetExhausted(_)) => exhaustive = false,
            Err(e) => return Err(e),
        }
    }
    let (triple, fan) = best.ok_or_else(|| {
        Error::Precondition(format!("no Δ-coloring of G − rs for any small neighbor s of {r}"))
    })?;
    let certificate = MaxFanCertificate {
        max_vertices: fan.len() + 1,
        upper_bound,
        exhaustive,
        colorings_examined: examined,
    };
    Ok(MaxFanSearch { triple, fan, certificate })
}

/// `S_φ(r, s_1 : s_t : s_p)`. The prefix `s_1..s_t` is the embedded
/// multifan; its maximality is carried by `certificate`, not re-proven.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudoMultifan {
    pub center: Vertex,
    pub seq: Vec<Vertex>,
    pub t: usize,
    pub certificate: MaxFanCertificate,
}

impl PseudoMultifan {
    pub fn embedded(&self) -> Multifan {
        Multifan::new(self.center, self.seq[..self.t].to_vec())
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v = vec![self.center];
        v.extend_from_slice(&self.seq);
        v
    }

    /// 1-based lookup.
    pub fn s(&self, i: usize) -> Vertex {
        self.seq[i - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudoReport {
    pub structure: std::result::Result<(), String>,
    /// The certificate proves maximality and the prefix attains it.
    pub p1_certified: bool,
    /// The prefix matches the best size found, proven or not.
    pub p1_matches_search: bool,
    pub p2_base: bool,
    pub samples_checked: usize,
    pub violation: Option<ColoringDoc>,
}

impl PseudoReport {
    /// (P1) as far as the certificate reaches, and (P2) on every sample.
    pub fn passes(&self) -> bool {
        self.structure.is_ok() && self.p1_matches_search && self.p2_base && self.violation.is_none()
    }
}

/// A coloring reached from `c` by up to `max_swaps` random Kempe changes
/// whose chains avoid the edges `fixed_edges` and have no endpoint in
/// `fixed_vertices`, so it is stable on both.
pub fn sample_stable_coloring<R: Rng>(
    c: &PartialColoring,
    fixed_vertices: &[Vertex],
    fixed_edges: &[EdgeId],
    max_swaps: usize,
    rng: &mut R,
) -> PartialColoring {
    let mut out = c.clone();
    let n = out.graph().n();
    let k = out.k();
    if n == 0 || k < 2 {
        return out;
    }
    let swaps = rng.gen_range(1..=max_swaps.max(1));
    let mut done = 0;
    for _ in 0..swaps * 10 {
        if done == swaps {
            break;
        }
        let x = rng.gen_range(0..n);
        let a = rng.gen_range(1..=k);
        let mut b = rng.gen_range(1..k);
        if b >= a {
            b += 1;
        }
        let chain = out.chain_through(x, a, b).expect("valid colors");
        if chain.edges().is_empty() || chain.edges().iter().any(|e| fixed_edges.contains(e)) {
            continue;
        }
        if chain.kind() == ChainKind::Path {
            let (p, q) = chain.endpoints().unwrap();
            if fixed_vertices.contains(&p) || fixed_vertices.contains(&q) {
                continue;
            }
        }
        out.swap_chain(&chain).expect("fresh chain");
        done += 1;
    }
    out
}

/// Checks (P1) against the certificate and (P2) under `c` and `samples`
/// random `(F, φ)`-stable colorings.
pub fn validate_pseudo_multifan<R: Rng>(c: &PartialColoring, s: &PseudoMultifan, samples: usize, rng: &mut R) -> PseudoReport {
    let structure = check_pseudo_structure(c, s);
    let prefix_size = s.t + 1;
    let p1_matches_search = prefix_size == s.certificate.max_vertices;
    let p1_certified = p1_matches_search && s.certificate.certified();
    let verts = s.vertices();
    let p2_base = c.is_elementary(&verts);
    let mut report = PseudoReport {
        structure,
        p1_certified,
        p1_matches_search,
        p2_base,
        samples_checked: 0,
        violation: None,
    };
    if report.structure.is_err() || !p2_base {
        return report;
    }
    let f = s.embedded();
    let fv = f.vertices();
    let fe = f.edges(c);
    for _ in 0..samples {
        let d = sample_stable_coloring(c, &fv, &fe, 20, rng);
        report.samples_checked += 1;
        if !d.is_elementary(&verts) {
            report.violation = ColoringDoc::from_coloring(&d).ok();
            break;
        }
    }
    report
}

fn check_pseudo_structure(c: &PartialColoring, s: &PseudoMultifan) -> std::result::Result<(), String> {
    let g = c.graph();
    let delta = g.max_degree();
    if s.t == 0 || s.t > s.seq.len() {
        return Err(format!("t = {} outside [1, {}]", s.t, s.seq.len()));
    }
    check_multifan(c, &s.embedded())?;
    let mut seen = vec![s.center];
    for &v in &s.seq {
        if seen.contains(&v) {
            return Err(format!("vertex {v} repeated"));
        }
        seen.push(v);
        if !g.has_edge(s.center, v) || g.degree(v) + 1 != delta {
            return Err(format!("{v} is not in N_{{Δ−1}}({})", s.center));
        }
    }
    Ok(())
}
