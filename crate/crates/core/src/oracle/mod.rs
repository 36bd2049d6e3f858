//! Exact chromatic index at desk scale, a Vizing (Δ+1)-colorer, and a
//! Δ-colorer for Class 1 graphs.

mod delta;
mod search;
mod vizing;

pub use delta::{delta_edge_color, DeltaColoring, DeltaStats};
pub use search::Visit;
pub use vizing::{fan_repair, vizing_plus_one};

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coloring::{Color, PartialColoring, MAX_COLORS};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use search::{static_order, symmetry_vertex, Outcome, Search};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub chi_prime: Color,
    pub witness: PartialColoring,
    /// Search nodes over both the `k = Δ` attempt and any fallback.
    pub nodes_explored: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSummary {
    pub chi_prime: Color,
    pub nodes_explored: u64,
}

impl OracleResult {
    pub fn summary(&self) -> OracleSummary {
        OracleSummary { chi_prime: self.chi_prime, nodes_explored: self.nodes_explored }
    }
}

fn check_palette(k: usize) -> Result<Color> {
    if k > MAX_COLORS as usize {
        return Err(Error::Precondition(format!(
            "palette of {k} colors exceeds the supported {MAX_COLORS}"
        )));
    }
    Ok(k as Color)
}

const PROBE_SEED: u64 = 0x5eed;
const PROBE_RESTARTS: u64 = 8;
const PROBE_NODES: u64 = 20_000;

/// Searches for a proper `k`-edge-coloring: a few short randomized
/// most-constrained-first runs from a fixed seed, then the exhaustive
/// static-order search. Tight instances (every color class a near-perfect
/// matching) defeat the static order but rarely the randomized one. `Ok(None)` means the search
/// space was exhausted, so none exists. Returns the nodes used either way.
pub fn color_with_k(g: &SimpleGraph, k: usize, budget: u64) -> Result<(Option<Vec<Color>>, u64)> {
    let k = check_palette(k)?;
    if g.m() == 0 {
        return Ok((Some(Vec::new()), 0));
    }
    if g.max_degree() > k as usize {
        return Ok((None, 0));
    }
    let mut used = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    for _ in 0..PROBE_RESTARTS {
        let quota = PROBE_NODES.min(budget / (2 * PROBE_RESTARTS));
        if quota == 0 {
            break;
        }
        let mut s = Search::new(g, k, quota);
        let outcome = s.run_random(&mut rng);
        used += s.nodes;
        match outcome {
            Outcome::Found => return Ok((Some(s.colors), used)),
            // the randomized search is complete too, so exhaustion is a proof
            Outcome::Exhausted => return Ok((None, used)),
            Outcome::OutOfBudget => {}
        }
    }
    let order = static_order(g);
    let mut s = Search::new(g, k, budget - used);
    let sym = symmetry_vertex(g, &order).expect("nonempty edge set");
    for (i, &e) in g.incident_edges(sym).iter().enumerate() {
        s.fix(e, (i + 1) as Color);
    }
    let mut found = None;
    let outcome = s.run_static(&order, true, &mut |cs| {
        found = Some(cs.to_vec());
        Visit::Stop
    });
    match outcome {
        Outcome::Found => Ok((found, used + s.nodes)),
        Outcome::Exhausted => Ok((None, used + s.nodes)),
        Outcome::OutOfBudget => Err(Error::BudgetExhausted(budget)),
    }
}

/// Exact chromatic index: tries `Δ` colors and, failing that, `Δ + 1`.
pub fn chromatic_index_exact(g: &SimpleGraph, budget: u64) -> Result<OracleResult> {
    let arc = Arc::new(g.clone());
    let delta = g.max_degree();
    let (first, used) = color_with_k(g, delta, budget)?;
    let (chi, colors, nodes) = match first {
        Some(cs) => (delta, cs, used),
        None => {
            let (second, more) = color_with_k(g, delta + 1, budget.saturating_sub(used))?;
            let cs = second.ok_or_else(|| {
                Error::Precondition("no (Δ+1)-coloring found; search is broken".into())
            })?;
            (delta + 1, cs, used + more)
        }
    };
    let chi = check_palette(chi)?;
    let opts: Vec<Option<Color>> = colors.into_iter().map(Some).collect();
    let witness = PartialColoring::from_colors(arc, chi, &opts)?;
    Ok(OracleResult { chi_prime: chi, witness, nodes_explored: nodes })
}

/// Visits every proper `k`-edge-coloring of `g` once per color
/// permutation class. Returns `true` if the enumeration ran to completion
/// (not stopped by `visit`).
pub fn enumerate_colorings(
    g: &SimpleGraph,
    k: usize,
    budget: u64,
    visit: &mut dyn FnMut(&[Color]) -> Visit,
) -> Result<bool> {
    let k = check_palette(k)?;
    if g.max_degree() > k as usize {
        return Ok(true);
    }
    if g.m() == 0 {
        return Ok(visit(&[]) == Visit::Continue);
    }
    let order = static_order(g);
    let mut s = Search::new(g, k, budget);
    let sym = symmetry_vertex(g, &order).expect("nonempty edge set");
    for (i, &e) in g.incident_edges(sym).iter().enumerate() {
        s.fix(e, (i + 1) as Color);
    }
    match s.run_static(&order, true, visit) {
        Outcome::Exhausted => Ok(true),
        Outcome::Found => Ok(false),
        Outcome::OutOfBudget => Err(Error::BudgetExhausted(budget)),
    }
}

/// A uniformly-seeded random proper `k`-edge-coloring, if one is found
/// within budget.
pub fn random_coloring<R: Rng>(g: &SimpleGraph, k: usize, budget: u64, rng: &mut R) -> Result<Option<Vec<Color>>> {
    let k = check_palette(k)?;
    if g.max_degree() > k as usize {
        return Ok(None);
    }
    let mut s = Search::new(g, k, budget);
    match s.run_random(rng) {
        Outcome::Found => Ok(Some(s.colors)),
        Outcome::Exhausted => Ok(None),
        Outcome::OutOfBudget => Err(Error::BudgetExhausted(budget)),
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::graph::petersen_star;

    /// Independent check: brute force over all `k^m` assignments.
    fn brute_colorable(g: &SimpleGraph, k: usize) -> bool {
        let m = g.m();
        if k == 0 {
            return m == 0;
        }
        let mut cs = vec![0usize; m];
        loop {
            let proper = (0..g.n()).all(|v| {
                let mut seen = 0u64;
                g.incident_edges(v).iter().all(|&e| {
                    let bit = 1 << cs[e];
                    let fresh = seen & bit == 0;
                    seen |= bit;
                    fresh
                })
            });
            if proper {
                return true;
            }
            let mut i = 0;
            loop {
                if i == m {
                    return false;
                }
                cs[i] += 1;
                if cs[i] < k {
                    break;
                }
                cs[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn small_cases() {
        assert_eq!(chromatic_index_exact(&SimpleGraph::cycle(5).unwrap(), DEFAULT_BUDGET).unwrap().chi_prime, 3);
        assert_eq!(chromatic_index_exact(&SimpleGraph::cycle(6).unwrap(), DEFAULT_BUDGET).unwrap().chi_prime, 2);
        assert_eq!(chromatic_index_exact(&SimpleGraph::complete(4), DEFAULT_BUDGET).unwrap().chi_prime, 3);
        assert_eq!(chromatic_index_exact(&SimpleGraph::complete(5), DEFAULT_BUDGET).unwrap().chi_prime, 5);
        assert_eq!(chromatic_index_exact(&SimpleGraph::empty(3), DEFAULT_BUDGET).unwrap().chi_prime, 0);
    }

    #[test]
    fn petersen_star_is_class_two() {
        let r = chromatic_index_exact(&petersen_star(), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.chi_prime, 4);
        assert!(r.witness.validate_proper() && r.witness.is_complete());
    }

    #[test]
    fn budget_is_reported() {
        let g = crate::graph::petersen();
        assert!(matches!(chromatic_index_exact(&g, 5), Err(Error::BudgetExhausted(5))));
    }

    #[test]
    fn enumeration_counts_k4() {
        // K4 has exactly one 3-edge-coloring up to color permutation
        let mut count = 0;
        assert!(enumerate_colorings(&SimpleGraph::complete(4), 3, DEFAULT_BUDGET, &mut |_| {
            count += 1;
            Visit::Continue
        })
        .unwrap());
        assert_eq!(count, 1);
    }

    #[test]
    fn enumeration_counts_match_brute_force() {
        // C4 with 3 colors: 18 proper colorings, orbits under S3 all have size 6
        let mut count = 0;
        enumerate_colorings(&SimpleGraph::cycle(4).unwrap(), 3, DEFAULT_BUDGET, &mut |_| {
            count += 1;
            Visit::Continue
        })
        .unwrap();
        assert_eq!(count, 3);
    }

    #[test]
    fn random_coloring_is_proper() {
        let g = Arc::new(crate::graph::petersen());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cs = random_coloring(&g, 4, DEFAULT_BUDGET, &mut rng).unwrap().unwrap();
        let opts: Vec<_> = cs.into_iter().map(Some).collect();
        assert!(PartialColoring::from_colors(g, 4, &opts).unwrap().validate_proper());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn exact_matches_brute_force(n in 2usize..6, bits in proptest::prelude::any::<u16>()) {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits >> (i % 16) & 1 == 1 {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            let g = SimpleGraph::from_edges(n, edges).unwrap();
            let r = chromatic_index_exact(&g, DEFAULT_BUDGET).unwrap();
            let chi = r.chi_prime as usize;
            proptest::prop_assert!(r.witness.validate_proper());
            proptest::prop_assert!(brute_colorable(&g, chi));
            if chi > 0 {
                proptest::prop_assert!(!brute_colorable(&g, chi - 1));
            }
        }
    }
}
