use serde::Serialize;

use super::{core, is_hz_candidate, SimpleGraph};
use crate::error::Result;
use crate::oracle::color_with_k;

/// Result of checking one conclusion. `Vacuous` means the hypotheses did
/// not hold, so nothing was asserted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "witness")]
pub enum ClauseOutcome {
    Pass,
    Vacuous,
    Fail(String),
}

impl ClauseOutcome {
    pub fn from_check(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            ClauseOutcome::Pass
        } else {
            ClauseOutcome::Fail(witness())
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, ClauseOutcome::Fail(_))
    }
}

/// Structural consequences of being a class 2 HZ-candidate: criticality and
/// a 2-regular core, minimum degree, and core neighbors of every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HzStructureReport {
    pub critical_and_core_two_regular: ClauseOutcome,
    pub min_degree: ClauseOutcome,
    pub two_core_neighbors: ClauseOutcome,
}

impl HzStructureReport {
    pub fn all(&self) -> [&ClauseOutcome; 3] {
        [&self.critical_and_core_two_regular, &self.min_degree, &self.two_core_neighbors]
    }

    pub fn any_fail(&self) -> bool {
        self.all().iter().any(|c| c.is_fail())
    }
}

/// Checks the three clauses on `g`, given the oracle's verdict
/// `is_class2`. Edge criticality runs the exact search once per edge.
pub fn check_hz_structure(g: &SimpleGraph, is_class2: bool, budget: u64) -> Result<HzStructureReport> {
    if !is_class2 || !is_hz_candidate(g) {
        return Ok(HzStructureReport {
            critical_and_core_two_regular: ClauseOutcome::Vacuous,
            min_degree: ClauseOutcome::Vacuous,
            two_core_neighbors: ClauseOutcome::Vacuous,
        });
    }
    let view = core(g);
    let delta = view.delta;

    let mut clause_a = ClauseOutcome::Pass;
    if !view.core_subgraph.is_regular(2) {
        clause_a = ClauseOutcome::Fail(format!(
            "core has maximum degree {} and is not 2-regular",
            view.core_max_degree
        ));
    } else {
        for &(u, v) in g.edges() {
            let h = g.without_edge(u, v)?;
            let (found, _) = color_with_k(&h, delta, budget)?;
            if found.is_none() {
                clause_a = ClauseOutcome::Fail(format!("edge {u}-{v} is not critical"));
                break;
            }
        }
    }

    let odd_cycle = delta == 2 && g.is_cycle() && g.n() % 2 == 1;
    let min_deg = g.min_degree();
    let clause_b = ClauseOutcome::from_check(min_deg + 1 == delta || odd_cycle, || {
        format!("minimum degree {min_deg} with Δ = {delta}")
    });

    let in_core: Vec<bool> = (0..g.n()).map(|v| g.degree(v) == delta).collect();
    let short = (0..g.n()).find(|&v| g.neighbors(v).iter().filter(|&&w| in_core[w]).count() < 2);
    let clause_c = ClauseOutcome::from_check(short.is_none(), || {
        format!("vertex {} has fewer than two core neighbors", short.unwrap())
    });

    Ok(HzStructureReport {
        critical_and_core_two_regular: clause_a,
        min_degree: clause_b,
        two_core_neighbors: clause_c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_BUDGET;

    #[test]
    fn k5_minus_edge_passes() {
        let g = SimpleGraph::complete(5).without_edge(3, 4).unwrap();
        let r = check_hz_structure(&g, true, DEFAULT_BUDGET).unwrap();
        assert!(r.all().iter().all(|c| **c == ClauseOutcome::Pass), "{r:?}");
    }

    #[test]
    fn odd_cycle_branch() {
        let r = check_hz_structure(&SimpleGraph::cycle(5).unwrap(), true, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.min_degree, ClauseOutcome::Pass);
        assert!(!r.any_fail());
    }

    #[test]
    fn class_one_is_vacuous() {
        let r = check_hz_structure(&SimpleGraph::cycle(6).unwrap(), false, DEFAULT_BUDGET).unwrap();
        assert!(r.all().iter().all(|c| **c == ClauseOutcome::Vacuous));
    }

    #[test]
    fn petersen_star_fails_nothing() {
        let r = check_hz_structure(&crate::graph::petersen_star(), true, DEFAULT_BUDGET).unwrap();
        assert!(!r.any_fail(), "{r:?}");
    }
}
