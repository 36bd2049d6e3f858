use serde::Serialize;

use super::multifan::TypicalMultifan;
use crate::coloring::{Color, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::Vertex;

/// `L = (F, ru, u, ux, x)` at the center of a typical fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lollipop {
    pub fan: TypicalMultifan,
    pub u: Vertex,
    pub x: Vertex,
    /// `φ(ru) = α + 1`.
    pub ru_is_alpha_plus_1: bool,
    /// `φ̄(x) = {α + 1}`.
    pub x_misses_alpha_plus_1: bool,
}

impl Lollipop {
    /// The shared hypotheses of the lollipop lemmas.
    pub fn standard(&self) -> bool {
        self.ru_is_alpha_plus_1 && self.x_misses_alpha_plus_1
    }
}

pub fn build_lollipop(c: &PartialColoring, fan: &TypicalMultifan, u: Vertex, x: Vertex) -> Result<Lollipop> {
    let g = c.graph();
    let delta = g.max_degree();
    let r = fan.r();
    if !g.has_edge(r, u) || g.degree(u) != delta {
        return Err(Error::Precondition(format!("{u} is not in N_Δ({r})")));
    }
    if !g.has_edge(u, x) || g.degree(x) + 1 != delta {
        return Err(Error::Precondition(format!("{x} is not in N_{{Δ−1}}({u})")));
    }
    if fan.fan.seq.contains(&x) {
        return Err(Error::Precondition(format!("{x} lies on the fan")));
    }
    if x == r || fan.fan.seq.contains(&u) {
        return Err(Error::Precondition("lollipop vertices must be distinct".into()));
    }
    let a1 = (fan.alpha + 1) as Color;
    Ok(Lollipop {
        fan: fan.clone(),
        u,
        x,
        ru_is_alpha_plus_1: c.color_between(r, u) == Some(a1),
        x_misses_alpha_plus_1: c.missing(x).as_single() == Some(a1),
    })
}

/// Every lollipop on `fan`, ordered by `(u, x)`.
pub fn lollipops(c: &PartialColoring, fan: &TypicalMultifan) -> Vec<Lollipop> {
    let g = c.graph();
    let mut out = Vec::new();
    for &u in g.neighbors(fan.r()) {
        for &x in g.neighbors(u) {
            if let Ok(l) = build_lollipop(c, fan, u, x) {
                out.push(l);
            }
        }
    }
    out
}
