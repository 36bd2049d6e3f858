//! Backtracking edge-coloring search shared by the exact oracle, the
//! enumerator and the random coloring sampler.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coloring::{Color, ColorSet};
use crate::graph::{EdgeId, SimpleGraph, Vertex};

pub(crate) enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

/// What to do after the enumerator reports a complete coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Visit {
    Continue,
    Stop,
}

pub(crate) struct Search<'a> {
    g: &'a SimpleGraph,
    k: Color,
    pub(crate) colors: Vec<Color>,
    present: Vec<ColorSet>,
    pending: Vec<u32>,
    uncolored: usize,
    pub(crate) nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    pub(crate) fn new(g: &'a SimpleGraph, k: Color, budget: u64) -> Self {
        let pending = (0..g.n()).map(|v| g.degree(v) as u32).collect();
        Search {
            g,
            k,
            colors: vec![0; g.m()],
            present: vec![ColorSet::EMPTY; g.n()],
            pending,
            uncolored: g.m(),
            nodes: 0,
            budget,
        }
    }

    /// Pre-assigns `e`; the caller guarantees properness.
    pub(crate) fn fix(&mut self, e: EdgeId, c: Color) {
        self.assign(e, c);
    }

    fn assign(&mut self, e: EdgeId, c: Color) {
        let (u, v) = self.g.edge(e);
        self.colors[e] = c;
        self.present[u].insert(c);
        self.present[v].insert(c);
        self.pending[u] -= 1;
        self.pending[v] -= 1;
        self.uncolored -= 1;
    }

    fn unassign(&mut self, e: EdgeId) {
        let (u, v) = self.g.edge(e);
        let c = self.colors[e];
        self.colors[e] = 0;
        self.present[u].remove(c);
        self.present[v].remove(c);
        self.pending[u] += 1;
        self.pending[v] += 1;
        self.uncolored += 1;
    }

    fn available(&self, e: EdgeId) -> ColorSet {
        let (u, v) = self.g.edge(e);
        ColorSet::palette(self.k).difference(self.present[u].union(self.present[v]))
    }

    /// Every uncolored edge at `u` or `v` still has a color left.
    fn forward_ok(&self, u: Vertex, v: Vertex) -> bool {
        [u, v].iter().all(|&w| {
            self.g
                .incident_edges(w)
                .iter()
                .all(|&f| self.colors[f] != 0 || !self.available(f).is_empty())
        })
    }

    /// Each color class is a matching, so color `c` can cover at most half
    /// of the vertices that miss `c` and still have uncolored edges.
    fn matching_bound_ok(&self) -> bool {
        let mut capacity = 0usize;
        for c in 1..=self.k {
            let free = (0..self.g.n())
                .filter(|&v| self.pending[v] > 0 && !self.present[v].contains(c))
                .count();
            capacity += free / 2;
            if capacity >= self.uncolored {
                return true;
            }
        }
        capacity >= self.uncolored
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }

    /// Colors the edges of `order` in sequence. With `canonical`, a color
    /// may be used only if every smaller color has appeared, so colorings
    /// are visited once per color permutation class.
    pub(crate) fn run_static(
        &mut self,
        order: &[EdgeId],
        canonical: bool,
        visit: &mut dyn FnMut(&[Color]) -> Visit,
    ) -> Outcome {
        if !self.matching_bound_ok() {
            return Outcome::Exhausted;
        }
        let used = self.colors.iter().copied().max().unwrap_or(0);
        self.static_rec(order, 0, canonical, used, visit)
    }

    fn static_rec(
        &mut self,
        order: &[EdgeId],
        mut i: usize,
        canonical: bool,
        used: Color,
        visit: &mut dyn FnMut(&[Color]) -> Visit,
    ) -> Outcome {
        while i < order.len() && self.colors[order[i]] != 0 {
            i += 1;
        }
        if i == order.len() {
            return match visit(&self.colors) {
                Visit::Continue => Outcome::Exhausted,
                Visit::Stop => Outcome::Found,
            };
        }
        let e = order[i];
        let (u, v) = self.g.edge(e);
        let mut avail = self.available(e);
        if canonical && used < self.k {
            avail = avail.intersection(ColorSet::palette(used + 1));
        }
        for c in avail.iter() {
            if !self.tick() {
                return Outcome::OutOfBudget;
            }
            self.assign(e, c);
            if self.forward_ok(u, v) && self.matching_bound_ok() {
                match self.static_rec(order, i + 1, canonical, used.max(c), visit) {
                    Outcome::Exhausted => {}
                    other => {
                        self.unassign(e);
                        return other;
                    }
                }
            }
            self.unassign(e);
        }
        Outcome::Exhausted
    }

    /// Randomized search: most constrained edge first, colors in random
    /// order. Finds one complete coloring.
    pub(crate) fn run_random<R: Rng>(&mut self, rng: &mut R) -> Outcome {
        if self.uncolored == 0 {
            return Outcome::Found;
        }
        let mut best: Option<(usize, u32, EdgeId)> = None;
        for e in 0..self.g.m() {
            if self.colors[e] != 0 {
                continue;
            }
            let a = self.available(e).len();
            if a == 0 {
                return Outcome::Exhausted;
            }
            let key = rng.gen::<u32>();
            if best.map_or(true, |(ba, bk, _)| (a, key) < (ba, bk)) {
                best = Some((a, key, e));
            }
        }
        let (_, _, e) = best.expect("an uncolored edge");
        let mut cs: Vec<Color> = self.available(e).iter().collect();
        cs.shuffle(rng);
        for c in cs {
            if !self.tick() {
                return Outcome::OutOfBudget;
            }
            self.assign(e, c);
            if self.matching_bound_ok() {
                match self.run_random(rng) {
                    Outcome::Exhausted => {}
                    other => return other,
                }
            }
            self.unassign(e);
        }
        Outcome::Exhausted
    }
}

/// Edge order for the exact search: larger minimum endpoint degree first,
/// then lexicographic.
pub(crate) fn static_order(g: &SimpleGraph) -> Vec<EdgeId> {
    let mut order: Vec<EdgeId> = (0..g.m()).collect();
    order.sort_by_key(|&e| {
        let (u, v) = g.edge(e);
        (std::cmp::Reverse(g.degree(u).min(g.degree(v))), u, v)
    });
    order
}

/// The endpoint of the first edge in `order` with the larger degree.
/// Its edges can be colored `1..=d` without loss of generality.
pub(crate) fn symmetry_vertex(g: &SimpleGraph, order: &[EdgeId]) -> Option<Vertex> {
    order.first().map(|&e| {
        let (u, v) = g.edge(e);
        if g.degree(v) > g.degree(u) {
            v
        } else {
            u
        }
    })
}
