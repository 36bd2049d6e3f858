use serde::Serialize;

use crate::coloring::{Color, PartialColoring};
use crate::graph::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RotationFlavor {
    Plain,
    /// Every `φ̄(w_i)` lies in `[β+2, Δ−1]` and `r`, `w_i` are
    /// `(1, φ̄(w_i))`-linked.
    Stable,
    /// As stable, except the last vertex misses `α + 1`.
    NearStable,
}

/// `w_1..w_t` with `φ(r w_ℓ) = φ̄(w_{ℓ−1})`, indices mod `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rotation {
    pub center: Vertex,
    pub vertices: Vec<Vertex>,
    pub flavor: RotationFlavor,
}

/// Why the successor relation failed to be a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RotationFailure {
    pub vertex: Vertex,
    pub reason: String,
}

/// Splits `ws` into rotations at `r` by following `w ↦ w'` where
/// `φ(r w') = φ̄(w)`. Vertices that are not on a cycle of this map, or whose
/// successor leaves `ws`, are reported instead of dropped.
pub fn find_rotations(c: &PartialColoring, r: Vertex, ws: &[Vertex]) -> Result<Vec<Rotation>, RotationFailure> {
    let mut succ = Vec::with_capacity(ws.len());
    for &w in ws {
        let miss = c.missing(w).as_single().ok_or_else(|| RotationFailure {
            vertex: w,
            reason: format!("misses {:?}, not a single color", c.missing(w)),
        })?;
        let next = ws
            .iter()
            .position(|&v| c.color_between(r, v) == Some(miss))
            .ok_or_else(|| RotationFailure {
                vertex: w,
                reason: format!("no vertex of the set has edge color {miss} to {r}"),
            })?;
        succ.push(next);
    }
    let mut indegree = vec![0usize; ws.len()];
    for &j in &succ {
        indegree[j] += 1;
    }
    if let Some(i) = indegree.iter().position(|&d| d != 1) {
        return Err(RotationFailure {
            vertex: ws[i],
            reason: format!("{} predecessors under the successor map", indegree[i]),
        });
    }
    let mut seen = vec![false; ws.len()];
    let mut out = Vec::new();
    for start in 0..ws.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(ws[i]);
            i = succ[i];
        }
        out.push(Rotation { center: r, vertices: cycle, flavor: RotationFlavor::Plain });
    }
    Ok(out)
}

/// Checks the rotation equations and elementarity.
pub fn check_rotation(c: &PartialColoring, rot: &Rotation) -> bool {
    let ws = &rot.vertices;
    let t = ws.len();
    t > 0
        && c.is_elementary(ws)
        && (0..t).all(|l| {
            let prev = ws[(l + t - 1) % t];
            match c.missing(prev).as_single() {
                Some(m) => c.color_between(rot.center, ws[l]) == Some(m),
                None => false,
            }
        })
}

/// Upgrades the flavor to `Stable` when its extra conditions hold for a
/// typical coloring with fan parameter `beta`.
pub fn classify_rotation(c: &PartialColoring, rot: &mut Rotation, beta: usize) {
    let delta = c.k();
    let stable = rot.vertices.iter().all(|&w| match c.missing(w).as_single() {
        Some(m) => {
            (beta as Color + 2..delta).contains(&m)
                && c.linked(rot.center, w, 1, m).unwrap_or(false)
        }
        None => false,
    });
    if stable {
        rot.flavor = RotationFlavor::Stable;
    }
}
