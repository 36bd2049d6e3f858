//! Sources of HZ-graphs and of seeded coloring triples on them.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::enumerate::enumerate_hz_candidates;
use crate::coloring::{Color, PartialColoring};
use crate::error::{Error, Result};
use crate::fan::ColoringTriple;
use crate::graph::{build_o_delta, canonical_form, classify, o_delta_shapes, SimpleGraph, Vertex};
use crate::oracle::random_coloring;

#[derive(Clone, Debug)]
pub struct Instance {
    /// Stable, human-readable key; reports are ordered by source position.
    pub label: String,
    pub graph: Arc<SimpleGraph>,
}

/// Up to `limit` O_Δ members for each Δ in `deltas`.
pub fn o_delta_members(deltas: impl IntoIterator<Item = usize>, limit: usize) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for delta in deltas {
        for (i, spec) in o_delta_shapes(delta, limit).into_iter().enumerate() {
            out.push(Instance {
                label: format!("O_{delta}[n1={},#{i}]", spec.n1),
                graph: Arc::new(build_o_delta(&spec)?),
            });
        }
    }
    Ok(out)
}

/// Class 2 HZ candidates on at most `max_n` vertices.
pub fn enumerated_hz_graphs(max_n: usize, allow_slow: bool) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for g in enumerate_hz_candidates(max_n, allow_slow)? {
        if classify(&g)?.is_class2() {
            out.push(Instance {
                label: format!("enum[n={},{}]", g.n(), crate::graph::to_graph6(&g)),
                graph: Arc::new(g),
            });
        }
    }
    Ok(out)
}

/// Drops later isomorphic copies.
pub fn dedup_isomorphic(instances: Vec<Instance>) -> Result<Vec<Instance>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for inst in instances {
        if seen.insert(canonical_form(&inst.graph)?) {
            out.push(inst);
        }
    }
    Ok(out)
}

/// `(r, s_1)` pairs with `d(r) = Δ`, `d(s_1) = Δ − 1`.
pub fn triple_anchors(g: &SimpleGraph) -> Vec<(Vertex, Vertex)> {
    let delta = g.max_degree();
    let mut out = Vec::new();
    for r in (0..g.n()).filter(|&v| g.degree(v) == delta) {
        for &s in g.neighbors(r).iter().filter(|&&s| g.degree(s) + 1 == delta) {
            out.push((r, s));
        }
    }
    out
}

/// Random Δ-coloring of `G − r s_1` followed by `kempe_steps` random Kempe
/// changes, as a triple.
pub fn random_triple<R: Rng>(
    g: &Arc<SimpleGraph>,
    r: Vertex,
    s1: Vertex,
    kempe_steps: usize,
    budget: u64,
    rng: &mut R,
) -> Result<ColoringTriple> {
    let delta = g.max_degree();
    let h = g.without_edge(r, s1)?;
    let cols = random_coloring(&h, delta, budget, rng)?
        .ok_or_else(|| Error::Precondition(format!("G − {r}{s1} is not Δ-colorable")))?;
    let triple = ColoringTriple::from_coloring_of_deleted(g.clone(), r, s1, &cols)?;
    let mut c = triple.into_coloring();
    random_kempe_changes(&mut c, kempe_steps, rng)?;
    ColoringTriple::new(c, r, s1)
}

/// `steps` Kempe changes on random chains.
pub fn random_kempe_changes<R: Rng>(c: &mut PartialColoring, steps: usize, rng: &mut R) -> Result<()> {
    let n = c.graph().n();
    let k = c.k();
    if n == 0 || k < 2 {
        return Ok(());
    }
    let mut palette: Vec<Color> = (1..=k).collect();
    for _ in 0..steps {
        palette.shuffle(rng);
        let chain = c.chain_through(rng.gen_range(0..n), palette[0], palette[1])?;
        c.swap_chain(&chain)?;
    }
    Ok(())
}
