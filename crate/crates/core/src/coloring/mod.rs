//! Partial edge colorings, two-colored chains, Kempe changes and the
//! transactional script executor.

mod chain;
mod colorset;
mod json;
mod script;

pub use chain::{Chain, ChainKind};
pub use colorset::{Color, ColorSet, MAX_COLORS};
pub use json::ColoringDoc;
pub use script::{RecolorScript, ScriptStep};

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, SimpleGraph, Vertex};

static NEXT_VERSION: AtomicU64 = AtomicU64::new(1);

fn fresh_version() -> u64 {
    NEXT_VERSION.fetch_add(1, Ordering::Relaxed)
}

/// A proper edge coloring with colors `1..=k`, possibly leaving edges uncolored.
///
/// Present-color bitsets are maintained incrementally. Every mutation takes a
/// process-unique version stamp, so a [`Chain`] extracted before a mutation
/// is rejected afterwards.
#[derive(Clone, Debug)]
pub struct PartialColoring {
    graph: Arc<SimpleGraph>,
    k: Color,
    colors: Vec<Color>,
    present: Vec<ColorSet>,
    version: u64,
}

impl PartialEq for PartialColoring {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.colors == other.colors && self.graph == other.graph
    }
}

impl Eq for PartialColoring {}

impl PartialColoring {
    pub fn uncolored(graph: Arc<SimpleGraph>, k: Color) -> Result<Self> {
        if k > MAX_COLORS {
            return Err(Error::Precondition(format!(
                "at most {MAX_COLORS} colors supported, got {k}"
            )));
        }
        let n = graph.n();
        let m = graph.m();
        Ok(PartialColoring {
            graph,
            k,
            colors: vec![0; m],
            present: vec![ColorSet::EMPTY; n],
            version: fresh_version(),
        })
    }

    /// Builds a coloring from per-edge colors, rejecting improper input.
    pub fn from_colors(graph: Arc<SimpleGraph>, k: Color, colors: &[Option<Color>]) -> Result<Self> {
        if colors.len() != graph.m() {
            return Err(Error::Precondition(format!(
                "{} colors for {} edges",
                colors.len(),
                graph.m()
            )));
        }
        let mut c = PartialColoring::uncolored(graph, k)?;
        for (e, &col) in colors.iter().enumerate() {
            if let Some(col) = col {
                c.set_color(e, Some(col))?;
            }
        }
        Ok(c)
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<SimpleGraph> {
        &self.graph
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    fn touch(&mut self) {
        self.version = fresh_version();
    }

    pub fn color(&self, e: EdgeId) -> Option<Color> {
        match self.colors[e] {
            0 => None,
            c => Some(c),
        }
    }

    /// Color of the edge `uv`; `None` if uncolored or absent.
    pub fn color_between(&self, u: Vertex, v: Vertex) -> Option<Color> {
        self.graph.edge_id(u, v).and_then(|e| self.color(e))
    }

    pub fn colors(&self) -> impl Iterator<Item = Option<Color>> + '_ {
        (0..self.colors.len()).map(|e| self.color(e))
    }

    pub fn uncolored_edges(&self) -> Vec<EdgeId> {
        (0..self.colors.len())
            .filter(|&e| self.colors[e] == 0)
            .collect()
    }

    /// The uncolored edge when exactly one edge is uncolored.
    pub fn uncolored_edge(&self) -> Option<EdgeId> {
        let mut it = self.colors.iter().enumerate().filter(|(_, &c)| c == 0);
        match (it.next(), it.next()) {
            (Some((e, _)), None) => Some(e),
            _ => None,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.colors.iter().all(|&c| c != 0)
    }

    /// `φ(v)`: colors on edges at `v`.
    pub fn present(&self, v: Vertex) -> ColorSet {
        self.present[v]
    }

    /// `φ̄(v) = [1,k] \ φ(v)`.
    pub fn missing(&self, v: Vertex) -> ColorSet {
        ColorSet::palette(self.k).difference(self.present[v])
    }

    /// Union of the missing sets over `vs`.
    pub fn missing_union(&self, vs: &[Vertex]) -> ColorSet {
        vs.iter()
            .fold(ColorSet::EMPTY, |acc, &v| acc.union(self.missing(v)))
    }

    /// Missing sets pairwise disjoint.
    pub fn is_elementary(&self, vs: &[Vertex]) -> bool {
        let mut seen = ColorSet::EMPTY;
        let mut distinct = vs.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        for v in distinct {
            let m = self.missing(v);
            if seen.intersects(m) {
                return false;
            }
            seen = seen.union(m);
        }
        true
    }

    /// The unique vertex of `vs` missing `c`, when `vs` is elementary.
    pub fn missing_vertex(&self, vs: &[Vertex], c: Color) -> Option<Vertex> {
        vs.iter().copied().find(|&v| self.missing(v).contains(c))
    }

    /// The edge at `v` colored `c`.
    pub fn edge_with_color(&self, v: Vertex, c: Color) -> Option<EdgeId> {
        if !self.present[v].contains(c) {
            return None;
        }
        self.graph
            .incident_edges(v)
            .iter()
            .copied()
            .find(|&e| self.colors[e] == c)
    }

    /// The neighbor of `v` across the edge colored `c`.
    pub fn neighbor_via(&self, v: Vertex, c: Color) -> Option<Vertex> {
        self.edge_with_color(v, c)
            .map(|e| self.graph.other_end(e, v))
    }

    fn check_color(&self, c: Color) -> Result<()> {
        if c == 0 || c > self.k {
            return Err(Error::InvalidColor { color: c, k: self.k });
        }
        Ok(())
    }

    /// Recolors (or uncolors) `e`, refusing to create a conflict.
    pub fn set_color(&mut self, e: EdgeId, color: Option<Color>) -> Result<()> {
        if e >= self.colors.len() {
            return Err(Error::Precondition(format!("edge id {e} out of range")));
        }
        let (u, v) = self.graph.edge(e);
        let old = self.colors[e];
        if let Some(c) = color {
            self.check_color(c)?;
            if c != old && (self.present[u].contains(c) || self.present[v].contains(c)) {
                return Err(Error::Improper(format!(
                    "color {c} already present at an endpoint of {u}-{v}"
                )));
            }
        }
        if old != 0 {
            self.present[u].remove(old);
            self.present[v].remove(old);
        }
        let new = color.unwrap_or(0);
        if new != 0 {
            self.present[u].insert(new);
            self.present[v].insert(new);
        }
        self.colors[e] = new;
        self.touch();
        Ok(())
    }

    pub fn set_color_between(&mut self, u: Vertex, v: Vertex, color: Option<Color>) -> Result<()> {
        let e = self.graph.edge_id(u, v).ok_or(Error::NoSuchEdge(u, v))?;
        self.set_color(e, color)
    }

    /// Full rescan: properness, palette range, and cache consistency.
    pub fn validate_proper(&self) -> bool {
        let mut rebuilt = vec![ColorSet::EMPTY; self.graph.n()];
        for (e, &c) in self.colors.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c > self.k {
                return false;
            }
            let (u, v) = self.graph.edge(e);
            if rebuilt[u].contains(c) || rebuilt[v].contains(c) {
                return false;
            }
            rebuilt[u].insert(c);
            rebuilt[v].insert(c);
        }
        rebuilt == self.present
    }

    #[doc(hidden)]
    pub fn corrupt_cache_for_test(&mut self, v: Vertex, c: Color) {
        self.present[v].insert(c);
    }

    /// Graphviz rendering with colors as edge labels; uncolored edges dashed.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph coloring {{\n  label=\"k = {}\";\n", self.k);
        for v in 0..self.graph.n() {
            out.push_str(&format!("  {v};\n"));
        }
        for (e, &(u, v)) in self.graph.edges().iter().enumerate() {
            match self.color(e) {
                Some(c) => out.push_str(&format!("  {u} -- {v} [label=\"{c}\"];\n")),
                None => out.push_str(&format!("  {u} -- {v} [style=dashed];\n")),
            }
        }
        out.push_str("}\n");
        out
    }

    /// Renames colors: color `c` becomes `perm[c]` (`perm[0]` is ignored).
    pub fn permute_colors(&self, perm: &[Color]) -> Result<PartialColoring> {
        let k = self.k as usize;
        if perm.len() != k + 1 {
            return Err(Error::Precondition("color permutation length".into()));
        }
        let mut image: Vec<Color> = perm[1..].to_vec();
        image.sort_unstable();
        if image != (1..=self.k).collect::<Vec<_>>() {
            return Err(Error::Precondition("not a permutation of 1..=k".into()));
        }
        let colors: Vec<Option<Color>> = self.colors().map(|c| c.map(|c| perm[c as usize])).collect();
        PartialColoring::from_colors(self.graph.clone(), self.k, &colors)
    }

    /// `(T, base)`-stability of `self`: equal missing sets on `vertices` and
    /// equal colors on `edges`.
    pub fn is_stable(&self, base: &PartialColoring, vertices: &[Vertex], edges: &[EdgeId]) -> Result<bool> {
        if self.graph != base.graph || self.k != base.k {
            return Err(Error::Precondition(
                "stability compares colorings of the same graph and palette".into(),
            ));
        }
        if self.uncolored_edges() != base.uncolored_edges() {
            return Err(Error::Precondition(
                "stability compares colorings with the same uncolored edge".into(),
            ));
        }
        Ok(vertices.iter().all(|&v| self.missing(v) == base.missing(v))
            && edges.iter().all(|&e| self.colors[e] == base.colors[e]))
    }

    /// The `(a, b)`-chain containing `x`.
    ///
    /// A path is listed from `x` when `x` misses one of the colors. When `x`
    /// sees both colors, a cycle starts at `x` heading toward the smaller of
    /// its two chain neighbors, and a path starts at the endpoint reached by
    /// walking toward that smaller neighbor.
    pub fn chain_through(&self, x: Vertex, a: Color, b: Color) -> Result<Chain> {
        self.check_color(a)?;
        self.check_color(b)?;
        if a == b {
            return Err(Error::Precondition(format!("chain colors must differ, got ({a},{a})")));
        }
        if x >= self.graph.n() {
            return Err(Error::VertexOutOfRange(x));
        }
        let has_a = self.present[x].contains(a);
        let has_b = self.present[x].contains(b);
        let make = |vertices, edges, kind| Chain::new((a, b), vertices, edges, kind, self.version);
        match (has_a, has_b) {
            (false, false) => Ok(make(vec![x], vec![], ChainKind::Path)),
            (true, false) | (false, true) => {
                let first = if has_a { a } else { b };
                let (vs, es, _) = self.walk(x, first, a, b);
                Ok(make(vs, es, ChainKind::Path))
            }
            (true, true) => {
                let na = self.neighbor_via(x, a).expect("present");
                let nb = self.neighbor_via(x, b).expect("present");
                let (near, far) = if na <= nb { (a, b) } else { (b, a) };
                let (vs, es, closed) = self.walk(x, near, a, b);
                if closed {
                    return Ok(make(vs, es, ChainKind::EvenCycle));
                }
                let (vs2, es2, _) = self.walk(x, far, a, b);
                let mut vertices: Vec<Vertex> = vs.into_iter().rev().collect();
                vertices.extend_from_slice(&vs2[1..]);
                let mut edges: Vec<EdgeId> = es.into_iter().rev().collect();
                edges.extend(es2);
                Ok(make(vertices, edges, ChainKind::Path))
            }
        }
    }

    /// Walks from `x` starting with color `first`, alternating between `a`
    /// and `b`. Returns the visited vertices and edges and whether the walk
    /// closed back on `x`.
    fn walk(&self, x: Vertex, first: Color, a: Color, b: Color) -> (Vec<Vertex>, Vec<EdgeId>, bool) {
        let mut vertices = vec![x];
        let mut edges = Vec::new();
        let mut cur = x;
        let mut c = first;
        while let Some(e) = self.edge_with_color(cur, c) {
            let next = self.graph.other_end(e, cur);
            edges.push(e);
            if next == x {
                return (vertices, edges, true);
            }
            vertices.push(next);
            cur = next;
            c = if c == a { b } else { a };
        }
        (vertices, edges, false)
    }

    /// Same `(a, b)`-chain contains both `x` and `y`.
    pub fn linked(&self, x: Vertex, y: Vertex, a: Color, b: Color) -> Result<bool> {
        Ok(self.chain_through(x, a, b)?.contains(y))
    }

    /// Kempe change: exchange the two colors along `chain`.
    pub fn swap_chain(&mut self, chain: &Chain) -> Result<()> {
        if chain.version() != self.version {
            return Err(Error::StaleChain);
        }
        let (a, b) = chain.colors;
        for &e in &chain.edges {
            let c = self.colors[e];
            if c != a && c != b {
                return Err(Error::StaleChain);
            }
        }
        let toggle = ColorSet::single(a).union(ColorSet::single(b)).0;
        for &e in &chain.edges {
            let (u, v) = self.graph.edge(e);
            self.colors[e] = if self.colors[e] == a { b } else { a };
            self.present[u].0 ^= toggle;
            self.present[v].0 ^= toggle;
        }
        self.touch();
        Ok(())
    }

    /// `(a, b)`-swap at `x`: the Kempe change on `P_x(a, b)`. Requires `x` to
    /// miss exactly one of the colors; an `(a, a)`-swap does nothing.
    pub fn swap_at(&mut self, x: Vertex, a: Color, b: Color) -> Result<()> {
        if a == b {
            return Ok(());
        }
        let miss = self.missing(x);
        if miss.contains(a) == miss.contains(b) {
            return Err(Error::Precondition(format!(
                "({a},{b})-swap at {x} needs {x} to miss exactly one of the colors"
            )));
        }
        let chain = self.chain_through(x, a, b)?;
        self.swap_chain(&chain)
    }

    /// `(a, b)`-swap at both `x` and `y`: one change when linked, otherwise
    /// the swap at `x` followed by the swap at `y` on the updated coloring.
    pub fn swap_at_both(&mut self, x: Vertex, y: Vertex, a: Color, b: Color) -> Result<()> {
        if a == b {
            return Ok(());
        }
        let mut work = self.clone();
        let linked = work.linked(x, y, a, b)?;
        work.swap_at(x, a, b)?;
        if !linked {
            work.swap_at(y, a, b)?;
        }
        *self = work;
        Ok(())
    }

    /// `(β0,β1)-(β1,β2)-…-(β_{t-1},β_t)`-swap at `x`, all or nothing.
    ///
    /// Stage `i` requires `β_{i-1}` missing and `β_i` present at `x` in the
    /// coloring produced by the earlier stages, so a color may reappear later
    /// in the list, as in `(2,δ)-(δ,Δ)-(Δ,1)-(1,2)`.
    pub fn multi_swap(&mut self, x: Vertex, colors: &[Color]) -> Result<()> {
        if colors.len() < 2 {
            return Err(Error::Precondition("multi-swap needs at least two colors".into()));
        }
        let mut work = self.clone();
        for (i, pair) in colors.windows(2).enumerate() {
            let (from, to) = (pair[0], pair[1]);
            if from == to {
                continue;
            }
            if !work.missing(x).contains(from) || !work.present(x).contains(to) {
                return Err(Error::Precondition(format!(
                    "multi-swap stage {}: ({from},{to})-swap at {x} needs {from} missing and {to} present",
                    i + 1
                )));
            }
            work.swap_at(x, from, to)?;
        }
        *self = work;
        Ok(())
    }

    /// Exchanges `a` and `b` on the subpath of the path chain through `x`
    /// and `y` between them. Fails, leaving `self` untouched, if the result
    /// is improper.
    pub fn swap_subchain(&mut self, x: Vertex, y: Vertex, a: Color, b: Color) -> Result<()> {
        let chain = self.chain_through(x, a, b)?;
        if chain.kind != ChainKind::Path {
            return Err(Error::Precondition(format!("({a},{b})-chain through {x} is a cycle")));
        }
        let i = chain.position(x).expect("x on its chain");
        let j = chain.position(y).ok_or(Error::NotOnChain(y))?;
        let (lo, hi) = (i.min(j), i.max(j));
        let sub = Chain::new(
            (a, b),
            chain.vertices[lo..=hi].to_vec(),
            chain.edges[lo..hi].to_vec(),
            ChainKind::Path,
            self.version,
        );
        let mut work = self.clone();
        work.swap_chain(&sub)?;
        if !work.validate_proper() {
            return Err(Error::Improper(format!(
                "swapping P[{x},{y}]({a},{b}) creates a conflict"
            )));
        }
        *self = work;
        Ok(())
    }

    /// Simultaneously recolors each `center–s` edge with the single color
    /// missing at `s`. Fails without mutation if any `s` misses other than
    /// exactly one color or the result is improper.
    pub fn shift(&mut self, center: Vertex, run: &[Vertex]) -> Result<()> {
        let mut targets = Vec::with_capacity(run.len());
        for &s in run {
            let e = self
                .graph
                .edge_id(center, s)
                .ok_or(Error::NoSuchEdge(center, s))?;
            if self.colors[e] == 0 {
                return Err(Error::Precondition(format!("edge {center}-{s} is uncolored")));
            }
            let c = self.missing(s).as_single().ok_or_else(|| {
                Error::Precondition(format!(
                    "shift needs a single missing color at {s}, found {:?}",
                    self.missing(s)
                ))
            })?;
            targets.push((e, c));
        }
        let mut work = self.clone();
        for &(e, _) in &targets {
            work.set_color(e, None)?;
        }
        for &(e, c) in &targets {
            work.set_color(e, Some(c)).map_err(|err| {
                let (u, v) = self.graph.edge(e);
                Error::Improper(format!("shift at {u}-{v}: {err}"))
            })?;
        }
        *self = work;
        Ok(())
    }

    /// Applies a script transactionally; on failure `self` is unchanged and
    /// the error names the failing step.
    pub fn apply_script(&mut self, script: &RecolorScript) -> Result<()> {
        let before = self.uncolored_edges().len();
        let mut work = self.clone();
        for (index, step) in script.steps.iter().enumerate() {
            step.apply(&mut work)
                .map_err(|e| Error::ScriptStep { index, reason: e.to_string() })?;
            if !work.validate_proper() {
                return Err(Error::ScriptStep {
                    index,
                    reason: "improper intermediate coloring".into(),
                });
            }
        }
        let after = work.uncolored_edges().len();
        if after > before.max(1) {
            return Err(Error::ScriptStep {
                index: script.steps.len().saturating_sub(1),
                reason: format!("script leaves {after} uncolored edges"),
            });
        }
        *self = work;
        Ok(())
    }
}
