use std::sync::Arc;

use crate::coloring::{Color, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, Vertex};

/// Colors the uncolored edge `uv` with a common missing color if one exists.
pub(crate) fn greedy_extend(c: &mut PartialColoring, u: Vertex, v: Vertex) -> bool {
    match c.missing(u).intersection(c.missing(v)).min() {
        Some(col) => c.set_color_between(u, v, Some(col)).is_ok(),
        None => false,
    }
}

/// Tries to color the uncolored edge `uv` by a fan rotation at either end,
/// preceded by a Kempe change on a `(c,d)`-path from the fan center.
/// With at least `Δ + 1` colors this always succeeds. On failure `c` is
/// left untouched.
pub fn fan_repair(c: &mut PartialColoring, u: Vertex, v: Vertex) -> bool {
    if greedy_extend(c, u, v) {
        return true;
    }
    for (x, f0) in [(u, v), (v, u)] {
        if let Some(done) = rotate_at(c, x, f0) {
            *c = done;
            return true;
        }
    }
    false
}

fn maximal_fan(c: &PartialColoring, x: Vertex, f0: Vertex) -> Vec<Vertex> {
    let g = c.graph();
    let mut fan = vec![f0];
    loop {
        let last = *fan.last().unwrap();
        let next = g.neighbors(x).iter().copied().find(|&w| {
            !fan.contains(&w)
                && c.color_between(x, w).is_some_and(|col| c.missing(last).contains(col))
        });
        match next {
            Some(w) => fan.push(w),
            None => return fan,
        }
    }
}

fn rotate_at(c: &PartialColoring, x: Vertex, f0: Vertex) -> Option<PartialColoring> {
    let fan = maximal_fan(c, x, f0);
    let last = *fan.last().unwrap();
    for a in c.missing(x).iter() {
        for d in c.missing(last).iter() {
            let mut w = c.clone();
            if a != d && !w.missing(x).contains(d) && w.swap_at(x, a, d).is_err() {
                continue;
            }
            if let Some(done) = rotate_prefix(w, x, &fan, d) {
                return Some(done);
            }
        }
    }
    None
}

/// Finds the first fan vertex missing `d` whose prefix is still a fan,
/// rotates the prefix and colors its last edge `d`.
fn rotate_prefix(mut w: PartialColoring, x: Vertex, fan: &[Vertex], d: Color) -> Option<PartialColoring> {
    let mut j = None;
    for (i, &f) in fan.iter().enumerate() {
        if i > 0 {
            let ok = w
                .color_between(x, f)
                .is_some_and(|col| w.missing(fan[i - 1]).contains(col));
            if !ok {
                break;
            }
        }
        if w.missing(f).contains(d) {
            j = Some(i);
            break;
        }
    }
    let j = j?;
    for i in 0..j {
        let col = w.color_between(x, fan[i + 1])?;
        w.set_color_between(x, fan[i + 1], None).ok()?;
        w.set_color_between(x, fan[i], Some(col)).ok()?;
    }
    w.set_color_between(x, fan[j], Some(d)).ok()?;
    Some(w)
}

/// Proper `(Δ+1)`-edge-coloring built edge by edge with fan rotations.
pub fn vizing_plus_one(g: &SimpleGraph) -> Result<PartialColoring> {
    let k = g.max_degree() + 1;
    if k > crate::coloring::MAX_COLORS as usize {
        return Err(Error::Precondition(format!("Δ + 1 = {k} colors unsupported")));
    }
    let mut c = PartialColoring::uncolored(Arc::new(g.clone()), k as Color)?;
    for &(u, v) in g.edges() {
        if !fan_repair(&mut c, u, v) {
            return Err(Error::Precondition(format!(
                "fan rotation failed at {u}-{v}; Δ+1 colors should always suffice"
            )));
        }
    }
    Ok(c)
}
