//! Randomized campaign over the Kempe-change primitives and the script
//! executor, with fault injection.
//!
//! Every operation is checked against a model computed from the raw color
//! vector: components of two-colored subgraphs by BFS, missing sets by
//! direct count, properness by rescan. Each op works on the current coloring
//! of a seeded triple; successful ones are kept so the state drifts.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use super::lemmas::{all_anchors, campaign_triple, lemma_instances};
use super::report::{CampaignConfig, CheckTally, VerificationReport, Witness};
use super::rng::instance_rng;
use crate::coloring::{Color, ColorSet, ColoringDoc, PartialColoring, RecolorScript, ScriptStep};
use crate::error::{Error, Result};
use crate::fan::grow_multifan;
use crate::graph::{to_graph6, ClauseOutcome, EdgeId, SimpleGraph, Vertex};

pub const OPS_PER_TRIPLE: usize = 10;

pub const SWAP_CHAIN: &str = "kempe.swap_chain_effect";
pub const SWAP_INVOLUTION: &str = "kempe.swap_chain_involution";
pub const STALE_CHAIN: &str = "kempe.stale_chain_rejected";
pub const SWAP_AT: &str = "kempe.swap_at";
pub const MULTI_SWAP: &str = "kempe.multi_swap";
pub const SHIFT: &str = "kempe.shift";
pub const SUBCHAIN: &str = "kempe.swap_subchain";
pub const SCRIPT_STEPWISE: &str = "kempe.apply_script_matches_stepwise";
pub const SCRIPT_FAULT: &str = "kempe.apply_script_fault_injection";
pub const CACHE_CORRUPTION: &str = "kempe.cache_corruption_detected";

/// Keeps the op stream apart from the triple stream of the same index.
const OPS_STREAM: u64 = 1 << 41;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Op {
    SwapChain,
    SwapAt,
    MultiSwap,
    Shift,
    Subchain,
    Script,
    Fault,
    Corrupt,
}

const OP_TABLE: [Op; 10] = [
    Op::SwapChain,
    Op::SwapChain,
    Op::SwapAt,
    Op::SwapAt,
    Op::MultiSwap,
    Op::Shift,
    Op::Subchain,
    Op::Script,
    Op::Fault,
    Op::Corrupt,
];

impl Op {
    fn name(self) -> &'static str {
        match self {
            Op::SwapChain => "swap_chain",
            Op::SwapAt => "swap_at",
            Op::MultiSwap => "multi_swap",
            Op::Shift => "shift",
            Op::Subchain => "swap_subchain",
            Op::Script => "apply_script",
            Op::Fault => "fault_injection",
            Op::Corrupt => "cache_corruption",
        }
    }
}

// ---- raw model ----

fn raw(c: &PartialColoring) -> Vec<Color> {
    c.colors().map(|x| x.unwrap_or(0)).collect()
}

fn raw_proper(g: &SimpleGraph, cols: &[Color]) -> bool {
    let mut seen = vec![0u64; g.n()];
    for (e, &c) in cols.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (u, v) = g.edge(e);
        let bit = 1u64 << c;
        if seen[u] & bit != 0 || seen[v] & bit != 0 {
            return false;
        }
        seen[u] |= bit;
        seen[v] |= bit;
    }
    true
}

fn raw_missing(g: &SimpleGraph, cols: &[Color], k: Color, v: Vertex) -> ColorSet {
    let mut m = ColorSet::palette(k);
    for &w in g.neighbors(v) {
        let c = cols[g.edge_id(v, w).expect("adjacent")];
        if c != 0 {
            m.remove(c);
        }
    }
    m
}

/// Edges of the `(a, b)`-component containing `x`.
fn raw_component(g: &SimpleGraph, cols: &[Color], x: Vertex, a: Color, b: Color) -> BTreeSet<EdgeId> {
    let mut edges = BTreeSet::new();
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::from([x]);
    seen[x] = true;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            let e = g.edge_id(u, w).expect("adjacent");
            if cols[e] == a || cols[e] == b {
                edges.insert(e);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    edges
}

fn swapped(cols: &[Color], edges: impl IntoIterator<Item = EdgeId>, a: Color, b: Color) -> Vec<Color> {
    let mut out = cols.to_vec();
    for e in edges {
        out[e] = if cols[e] == a { b } else { a };
    }
    out
}

/// The component through `x` as an ordered path of vertices and edges, or
/// `None` for an even cycle.
fn raw_path(g: &SimpleGraph, cols: &[Color], x: Vertex, a: Color, b: Color) -> Option<(Vec<Vertex>, Vec<EdgeId>)> {
    let comp = raw_component(g, cols, x, a, b);
    let mut deg: BTreeMap<Vertex, usize> = BTreeMap::new();
    for &e in &comp {
        let (u, v) = g.edge(e);
        *deg.entry(u).or_default() += 1;
        *deg.entry(v).or_default() += 1;
    }
    if comp.is_empty() {
        return Some((vec![x], vec![]));
    }
    let start = *deg.iter().find(|(_, &d)| d == 1)?.0;
    let mut vs = vec![start];
    let mut es = Vec::new();
    let mut cur = start;
    loop {
        let next = g.neighbors(cur).iter().find_map(|&w| {
            let e = g.edge_id(cur, w).expect("adjacent");
            (comp.contains(&e) && !es.contains(&e)).then_some((w, e))
        });
        match next {
            Some((w, e)) => {
                vs.push(w);
                es.push(e);
                cur = w;
            }
            None => return Some((vs, es)),
        }
    }
}

fn check(ok: bool, detail: impl FnOnce() -> String) -> ClauseOutcome {
    if ok {
        ClauseOutcome::Pass
    } else {
        ClauseOutcome::Fail(detail())
    }
}

fn toggled(m: ColorSet, a: Color, b: Color) -> ColorSet {
    let mut out = m;
    if m.contains(a) != m.contains(b) {
        for c in [a, b] {
            if m.contains(c) {
                out.remove(c);
            } else {
                out.insert(c);
            }
        }
    }
    out
}

fn two_colors<R: Rng>(k: Color, rng: &mut R) -> (Color, Color) {
    let a = rng.gen_range(1..=k);
    let mut b = rng.gen_range(1..k);
    if b >= a {
        b += 1;
    }
    (a, b)
}

fn pick<R: Rng>(set: ColorSet, rng: &mut R) -> Option<Color> {
    let v: Vec<Color> = set.iter().collect();
    v.choose(rng).copied()
}

type Outcomes = Vec<(&'static str, ClauseOutcome)>;

struct OpCtx<'a> {
    g: &'a SimpleGraph,
    k: Color,
    r: Vertex,
    s1: Vertex,
}

// ---- operations ----

fn op_swap_chain<R: Rng>(cx: &OpCtx, c: &mut PartialColoring, rng: &mut R) -> Result<(Outcomes, bool)> {
    let (g, k) = (cx.g, cx.k);
    let x = rng.gen_range(0..g.n());
    let (a, b) = two_colors(k, rng);
    let before = c.clone();
    let cols = raw(c);
    let chain = c.chain_through(x, a, b)?;
    let comp = raw_component(g, &cols, x, a, b);
    let expected = swapped(&cols, comp.iter().copied(), a, b);
    c.swap_chain(&chain)?;
    let after = raw(c);
    let path_ends: BTreeSet<Vertex> = match raw_path(g, &cols, x, a, b) {
        Some((vs, es)) if !es.is_empty() => [vs[0], *vs.last().expect("nonempty")].into(),
        _ => BTreeSet::new(),
    };
    let mut bad = None;
    for v in 0..g.n() {
        let want = if path_ends.contains(&v) {
            toggled(before.missing(v), a, b)
        } else {
            before.missing(v)
        };
        if c.missing(v) != want || raw_missing(g, &after, k, v) != want {
            bad = Some(v);
            break;
        }
    }
    let effect = check(
        chain.edges().iter().copied().collect::<BTreeSet<_>>() == comp
            && after == expected
            && c.validate_proper()
            && raw_proper(g, &after)
            && bad.is_none(),
        || format!("({a},{b})-swap on the chain through {x}: wrong edges, colors or missing set at {bad:?}"),
    );

    let snapshot = c.clone();
    let stale = c.swap_chain(&chain);
    let stale_ok = check(matches!(stale, Err(Error::StaleChain)) && *c == snapshot, || {
        format!("reusing the ({a},{b}) chain through {x} after it was swapped gave {stale:?}")
    });

    let mut back = c.clone();
    let again = back.chain_through(x, a, b)?;
    let same_vertices =
        again.vertices().iter().collect::<BTreeSet<_>>() == chain.vertices().iter().collect::<BTreeSet<_>>();
    back.swap_chain(&again)?;
    let involution = check(same_vertices && back == before, || {
        format!("swapping the ({a},{b}) chain through {x} twice does not restore the coloring")
    });
    Ok((vec![(SWAP_CHAIN, effect), (STALE_CHAIN, stale_ok), (SWAP_INVOLUTION, involution)], true))
}

fn op_swap_at<R: Rng>(cx: &OpCtx, c: &mut PartialColoring, rng: &mut R) -> Result<(Outcomes, bool)> {
    let (g, k) = (cx.g, cx.k);
    let open: Vec<Vertex> = (0..g.n()).filter(|&v| !c.missing(v).is_empty() && !c.present(v).is_empty()).collect();
    let Some(&x) = open.choose(rng) else {
        return Ok((vec![(SWAP_AT, ClauseOutcome::Vacuous)], false));
    };
    let miss = c.missing(x);
    let pres = c.present(x);
    // a quarter of the time, a pair the precondition rejects
    let pair = if rng.gen_bool(0.25) {
        pick(pres, rng)
            .zip(pick(pres, rng))
            .filter(|(a, b)| a != b)
            .or_else(|| pick(miss, rng).zip(pick(miss, rng)).filter(|(a, b)| a != b))
    } else {
        pick(miss, rng).zip(pick(pres, rng))
    };
    let Some((a, b)) = pair else {
        return Ok((vec![(SWAP_AT, ClauseOutcome::Vacuous)], false));
    };
    let cols = raw(c);
    let legal = raw_missing(g, &cols, k, x).contains(a) != raw_missing(g, &cols, k, x).contains(b);
    let before = c.clone();
    let res = c.swap_at(x, a, b);
    let outcome = match (res.is_ok(), legal) {
        (true, true) => {
            let expected = swapped(&cols, raw_component(g, &cols, x, a, b), a, b);
            let after = raw(c);
            check(
                after == expected && c.validate_proper() && c.missing(x) == toggled(before.missing(x), a, b),
                || format!("({a},{b})-swap at {x} changed the wrong edges or missing set"),
            )
        }
        (false, false) => check(*c == before, || format!("rejected ({a},{b})-swap at {x} mutated the coloring")),
        (ok, _) => ClauseOutcome::Fail(format!(
            "({a},{b})-swap at {x}: returned ok={ok} but the precondition says {legal}"
        )),
    };
    Ok((vec![(SWAP_AT, outcome)], res.is_ok()))
}

/// Stagewise model of a multi-swap; `None` when a stage is illegal.
fn model_multi_swap(g: &SimpleGraph, k: Color, cols: &[Color], x: Vertex, seq: &[Color]) -> Option<Vec<Color>> {
    let mut cur = cols.to_vec();
    for w in seq.windows(2) {
        let (from, to) = (w[0], w[1]);
        if from == to {
            continue;
        }
        let m = raw_missing(g, &cur, k, x);
        if !m.contains(from) || m.contains(to) {
            return None;
        }
        cur = swapped(&cur, raw_component(g, &cur, x, from, to), from, to);
    }
    Some(cur)
}

fn op_multi_swap<R: Rng>(cx: &OpCtx, c: &mut PartialColoring, rng: &mut R) -> Result<(Outcomes, bool)> {
    let (g, k) = (cx.g, cx.k);
    let x = rng.gen_range(0..g.n());
    let len = rng.gen_range(2..=4);
    let mut seq = vec![pick(c.missing(x), rng).unwrap_or_else(|| rng.gen_range(1..=k))];
    while seq.len() < len {
        seq.push(rng.gen_range(1..=k));
    }
    let cols = raw(c);
    let model = model_multi_swap(g, k, &cols, x, &seq);
    let before = c.clone();
    let res = c.multi_swap(x, &seq);
    let outcome = match (&res, &model) {
        (Ok(()), Some(want)) => check(raw(c) == *want && c.validate_proper(), || {
            format!("multi-swap {seq:?} at {x} disagrees with stagewise swaps")
        }),
        (Err(_), None) => check(*c == before, || format!("failed multi-swap {seq:?} at {x} mutated the coloring")),
        _ => ClauseOutcome::Fail(format!(
            "multi-swap {seq:?} at {x}: ok={} but the stage model says {}",
            res.is_ok(),
            model.is_some()
        )),
    };
    Ok((vec![(MULTI_SWAP, outcome)], res.is_ok()))
}

/// A run on the fan grown at `r`, after uncoloring the fan edge just past
/// it when possible. Falls back to random neighbors of `r`.
fn shift_setup<R: Rng>(cx: &OpCtx, c: &PartialColoring, rng: &mut R) -> Result<(PartialColoring, Vec<Vertex>)> {
    let mut w = c.clone();
    let fan = grow_multifan(c, cx.r, cx.s1);
    if fan.len() >= 3 && rng.gen_bool(0.75) {
        let j = rng.gen_range(3..=fan.len());
        let lo = if rng.gen_bool(0.2) { 1 } else { 2 };
        let i = rng.gen_range(lo..j);
        w.set_color_between(cx.r, fan.s(j), None)?;
        return Ok((w, (i..j).map(|l| fan.s(l)).collect()));
    }
    let mut nbrs = cx.g.neighbors(cx.r).to_vec();
    nbrs.shuffle(rng);
    let take = rng.gen_range(1..=nbrs.len().min(3));
    nbrs.truncate(take);
    Ok((w, nbrs))
}

fn model_shift(g: &SimpleGraph, k: Color, cols: &[Color], center: Vertex, run: &[Vertex]) -> Option<Vec<Color>> {
    let mut out = cols.to_vec();
    for &s in run {
        let e = g.edge_id(center, s)?;
        if cols[e] == 0 {
            return None;
        }
        out[e] = raw_missing(g, cols, k, s).as_single()?;
    }
    raw_proper(g, &out).then_some(out)
}

fn op_shift<R: Rng>(cx: &OpCtx, c: &mut PartialColoring, rng: &mut R) -> Result<(Outcomes, bool)> {
    let (mut w, run) = shift_setup(cx, c, rng)?;
    let cols = raw(&w);
    let model = model_shift(cx.g, cx.k, &cols, cx.r, &run);
    let before = w.clone();
    let res = w.shift(cx.r, &run);
    let outcome = match (&res, &model) {
        (Ok(()), Some(want)) => check(raw(&w) == *want && w.validate_proper(), || {
            format!("shift at {} along {run:?} disagrees with the model", cx.r)
        }),
        (Err(_), None) => check(w == before, || format!("failed shift along {run:?} mutated the coloring")),
        _ => ClauseOutcome::Fail(format!(
            "shift at {} along {run:?}: ok={} but the model says {}",
            cx.r,
            res.is_ok(),
            model.is_some()
        )),
    };
    Ok((vec![(SHIFT, outcome)], res.is_ok()))
}

fn op_subchain<R: Rng>(cx: &OpCtx, c: &mut PartialColoring, rng: &mut R) -> Result<(Outcomes, bool)> {
    let g = cx.g;
    let x = rng.gen_range(0..g.n());
    let (a, b) = two_colors(cx.k, rng);
    let cols = raw(c);
    let path = raw_path(g, &cols, x, a, b);
    let y = match &path {
        Some((vs, _)) if !rng.gen_bool(0.15) => *vs.choose(rng).expect("nonempty"),
        _ => rng.gen_range(0..g.n()),
    };
    let model = path.as_ref().and_then(|(vs, es)| {
        let i = vs.iter().position(|&v| v == x)?;
        let j = vs.iter().position(|&v| v == y)?;
        let (lo, hi) = (i.min(j), i.max(j));
        let out = swapped(&cols, es[lo..hi].iter().copied(), a, b);
        raw_proper(g, &out).then_some(out)
    });
    let before = c.clone();
    let res = c.swap_subchain(x, y, a, b);
    let outcome = match (&res, &model) {
        (Ok(()), Some(want)) => check(raw(c) == *want && c.validate_proper(), || {
            format!("({a},{b}) subchain swap between {x} and {y} disagrees with the model")
        }),
        (Err(_), None) => check(*c == before, || {
            format!("failed ({a},{b}) subchain swap between {x} and {y} mutated the coloring")
        }),
        _ => ClauseOutcome::Fail(format!(
            "({a},{b}) subchain swap between {x} and {y}: ok={} but the model says {}",
            res.is_ok(),
            model.is_some()
        )),
    };
    Ok((vec![(SUBCHAIN, outcome)], res.is_ok()))
}

fn random_step<R: Rng>(cx: &OpCtx, c: &PartialColoring, rng: &mut R) -> Result<ScriptStep> {
    let (g, k) = (cx.g, cx.k);
    let x = rng.gen_range(0..g.n());
    Ok(match rng.gen_range(0..5) {
        0 => {
            let a = pick(c.missing(x), rng).unwrap_or(1);
            let b = pick(c.present(x), rng).unwrap_or(k);
            ScriptStep::SwapChainAt { vertex: x, a, b }
        }
        1 => {
            let (a, b) = two_colors(k, rng);
            let y = rng.gen_range(0..g.n());
            ScriptStep::SwapSubchain { x, y, a, b }
        }
        2 => {
            let (_, run) = shift_setup(cx, c, rng)?;
            ScriptStep::Shift { center: cx.r, run }
        }
        3 => {
            let (u, v) = g.edge(rng.gen_range(0..g.m()));
            let color = if rng.gen_bool(0.3) { None } else { Some(rng.gen_range(1..=k)) };
            ScriptStep::SetEdge { u, v, color }
        }
        _ => {
            let mut colors = vec![pick(c.missing(x), rng).unwrap_or(1)];
            for _ in 0..rng.gen_range(1..=3) {
                colors.push(rng.gen_range(1..=k));
            }
            ScriptStep::MultiSwap { vertex: x, colors }
        }
    })
}

/// One step through the public primitives.
fn step_once(c: &mut PartialColoring, step: &ScriptStep) -> Result<()> {
    match step {
        ScriptStep::SwapChainAt { vertex, a, b } => c.swap_at(*vertex, *a, *b),
        ScriptStep::SwapSubchain { x, y, a, b } => c.swap_subchain(*x, *y, *a, *b),
        ScriptStep::Shift { center, run } => c.shift(*center, run),
        ScriptStep::SetEdge { u, v, color } => c.set_color_between(*u, *v, *color),
        ScriptStep::MultiSwap { vertex, colors } => c.multi_swap(*vertex, colors),
    }
}

/// Stepwise reference for `apply_script`: the result, or the index of the
/// first failing step.
fn stepwise(c: &PartialColoring, steps: &[ScriptStep]) -> std::result::Result<PartialColoring, usize> {
    let before = c.uncolored_edges().len();
    let mut w = c.clone();
    for (i, s) in steps.iter().enumerate() {
        if step_once(&mut w, s).is_err() || !raw_proper(w.graph(), &raw(&w)) {
            return Err(i);
        }
    }
    if w.uncolored_edges().len() > before.max(1) {
        return Err(steps.len().saturating_sub(1));
    }
    Ok(w)
}

fn script_index(e: &Error) -> Option<usize> {
    match e {
        Error::ScriptStep { index, .. } => Some(*index),
        _ => None,
    }
}

fn op_script<R: Rng>(cx: &OpCtx, c: &mut PartialColoring, rng: &mut R) -> Result<(Outcomes, bool)> {
    let len = rng.gen_range(1..=4);
    let mut steps = Vec::with_capacity(len);
    for _ in 0..len {
        steps.push(random_step(cx, c, rng)?);
    }
    let model = stepwise(c, &steps);
    let before = c.clone();
    let res = c.apply_script(&RecolorScript::new(steps.clone()));
    let outcome = match (&res, &model) {
        (Ok(()), Ok(want)) => check(c == want && c.validate_proper(), || {
            format!("script {steps:?} differs from stepwise application")
        }),
        (Err(e), Err(i)) => check(script_index(e) == Some(*i) && *c == before && c.version() == before.version(), || {
            format!("script {steps:?} failed with {e} but stepwise fails at {i}, or the coloring changed")
        }),
        _ => ClauseOutcome::Fail(format!(
            "script {steps:?}: ok={} but stepwise says {:?}",
            res.is_ok(),
            model.as_ref().err()
        )),
    };
    Ok((vec![(SCRIPT_STEPWISE, outcome)], res.is_ok()))
}

/// A step that certainly fails on `w`.
fn failing_step<R: Rng>(cx: &OpCtx, w: &PartialColoring, rng: &mut R) -> ScriptStep {
    let g = cx.g;
    let x = rng.gen_range(0..g.n());
    let mut candidates = vec![ScriptStep::MultiSwap { vertex: x, colors: vec![1] }];
    let pres: Vec<Color> = w.present(x).iter().collect();
    if pres.len() >= 2 {
        candidates.push(ScriptStep::SwapChainAt { vertex: x, a: pres[0], b: pres[1] });
    }
    // recolor an edge at x with a color already on another edge at x
    for &y in g.neighbors(x) {
        let own = w.color_between(x, y);
        if let Some(&c) = pres.iter().find(|&&c| Some(c) != own) {
            candidates.push(ScriptStep::SetEdge { u: x, v: y, color: Some(c) });
            break;
        }
    }
    if let Some(y) = (0..g.n()).find(|&y| y != x && !g.has_edge(x, y)) {
        candidates.push(ScriptStep::SetEdge { u: x, v: y, color: Some(1) });
    }
    candidates.shuffle(rng);
    candidates
        .into_iter()
        .find(|s| step_once(&mut w.clone(), s).is_err())
        .unwrap_or(ScriptStep::MultiSwap { vertex: x, colors: vec![1] })
}

fn op_fault<R: Rng>(cx: &OpCtx, c: &mut PartialColoring, rng: &mut R) -> Result<(Outcomes, bool)> {
    let mut w = c.clone();
    let mut steps = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let s = random_step(cx, &w, rng)?;
        let mut trial = w.clone();
        if step_once(&mut trial, &s).is_ok() && trial.validate_proper() {
            w = trial;
            steps.push(s);
        }
    }
    let prefix = steps.len();
    steps.push(failing_step(cx, &w, rng));
    let before = c.clone();
    let res = c.apply_script(&RecolorScript::new(steps.clone()));
    let outcome = match &res {
        Ok(()) => ClauseOutcome::Fail(format!("script {steps:?} with a failing last step succeeded")),
        Err(e) => check(
            script_index(e) == Some(prefix) && *c == before && c.version() == before.version() && c.validate_proper(),
            || format!("fault at step {prefix} of {steps:?} reported as {e}, or the coloring changed"),
        ),
    };
    Ok((vec![(SCRIPT_FAULT, outcome)], false))
}

fn op_corrupt<R: Rng>(cx: &OpCtx, c: &mut PartialColoring, rng: &mut R) -> Result<(Outcomes, bool)> {
    let mut order: Vec<Vertex> = (0..cx.g.n()).collect();
    order.shuffle(rng);
    let Some((v, col)) = order.into_iter().find_map(|v| pick(c.missing(v), rng).map(|col| (v, col))) else {
        return Ok((vec![(CACHE_CORRUPTION, ClauseOutcome::Vacuous)], false));
    };
    let mut w = c.clone();
    w.corrupt_cache_for_test(v, col);
    let outcome = check(c.validate_proper() && !w.validate_proper(), || {
        format!("marking {col} present at {v} went unnoticed")
    });
    Ok((vec![(CACHE_CORRUPTION, outcome)], true))
}

// ---- campaign ----

#[derive(Default)]
struct TripleRun {
    checks: BTreeMap<String, CheckTally>,
    /// `(op, succeeded)` counts.
    ops: BTreeMap<(Op, bool), u64>,
}

fn run_triple(
    instances: &[super::instances::Instance],
    anchors: &[(usize, Vertex, Vertex)],
    cfg: &CampaignConfig,
    index: u64,
    ops: usize,
) -> Result<TripleRun> {
    let (i, triple) = campaign_triple(instances, anchors, cfg, index)?;
    let g = instances[i].graph.clone();
    let cx = OpCtx { g: &g, k: triple.delta() as Color, r: triple.r(), s1: triple.s1() };
    let graph6 = to_graph6(&g);
    let mut c = triple.into_coloring();
    let mut rng = instance_rng(cfg.seed, OPS_STREAM + index);
    let mut out = TripleRun::default();
    for j in 0..ops {
        let op = *OP_TABLE.choose(&mut rng).expect("nonempty");
        let start = c.clone();
        let (outcomes, ok) = match op {
            Op::SwapChain => op_swap_chain(&cx, &mut c, &mut rng)?,
            Op::SwapAt => op_swap_at(&cx, &mut c, &mut rng)?,
            Op::MultiSwap => op_multi_swap(&cx, &mut c, &mut rng)?,
            Op::Shift => op_shift(&cx, &mut c, &mut rng)?,
            Op::Subchain => op_subchain(&cx, &mut c, &mut rng)?,
            Op::Script => op_script(&cx, &mut c, &mut rng)?,
            Op::Fault => op_fault(&cx, &mut c, &mut rng)?,
            Op::Corrupt => op_corrupt(&cx, &mut c, &mut rng)?,
        };
        *out.ops.entry((op, ok)).or_default() += 1;
        for (name, o) in outcomes {
            out.checks.entry(name.to_string()).or_default().record(&o, |d| Witness {
                graph6: graph6.clone(),
                r: Some(cx.r),
                s1: Some(cx.s1),
                coloring: ColoringDoc::from_coloring(&start).ok(),
                stream: Some(index),
                detail: format!("op {j} ({}): {d}", op.name()),
            });
        }
    }
    Ok(out)
}

/// `cfg.trials` operations, `OPS_PER_TRIPLE` per seeded triple on the
/// lemma-suite graphs.
pub fn run_kempe_suite(cfg: &CampaignConfig) -> Result<VerificationReport> {
    let instances = lemma_instances()?;
    let anchors = all_anchors(&instances);
    let total = cfg.trials;
    let triples = total.div_ceil(OPS_PER_TRIPLE) as u64;
    let runs: Vec<Result<TripleRun>> = (0..triples)
        .into_par_iter()
        .map(|idx| {
            let ops = OPS_PER_TRIPLE.min(total - idx as usize * OPS_PER_TRIPLE);
            run_triple(&instances, &anchors, cfg, idx, ops)
        })
        .collect();
    let mut report = VerificationReport::new(cfg.clone());
    let mut ops: BTreeMap<String, BTreeMap<&'static str, u64>> = BTreeMap::new();
    for run in runs {
        let run = run?;
        report.merge_checks(run.checks);
        for ((op, ok), n) in run.ops {
            *ops.entry(op.name().into()).or_default().entry(if ok { "ok" } else { "err" }).or_default() += n;
        }
    }
    report.instances = total as u64;
    report.stats.insert("operations".into(), serde_json::json!(total));
    report.stats.insert("triples".into(), serde_json::json!(triples));
    report.stats.insert("operation_outcomes".into(), serde_json::json!(ops));
    Ok(report)
}

/// Reruns the witness's triple stream and reports the named check.
pub fn replay_kempe_witness(check: &str, w: &Witness, cfg: &CampaignConfig) -> Result<ClauseOutcome> {
    let index = w
        .stream
        .ok_or_else(|| Error::Precondition("kempe witness lacks its stream".into()))?;
    let instances = lemma_instances()?;
    let anchors = all_anchors(&instances);
    let run = run_triple(&instances, &anchors, cfg, index, OPS_PER_TRIPLE)?;
    Ok(match run.checks.get(check) {
        Some(t) if t.fail > 0 => ClauseOutcome::Fail(t.witnesses[0].detail.clone()),
        Some(t) if t.pass > 0 => ClauseOutcome::Pass,
        _ => ClauseOutcome::Vacuous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Suite;
    use std::sync::Arc;

    fn cfg(trials: usize) -> CampaignConfig {
        let mut c = CampaignConfig::new(Suite::Kempe);
        c.trials = trials;
        c.seed = 5;
        c
    }

    #[test]
    fn raw_path_orders_a_path_chain() {
        // path 0-1-2-3 colored 1,2,1
        let g = SimpleGraph::path(4);
        let cols = vec![1, 2, 1];
        let (vs, es) = raw_path(&g, &cols, 2, 1, 2).unwrap();
        assert!(vs == vec![0, 1, 2, 3] || vs == vec![3, 2, 1, 0]);
        assert_eq!(es.len(), 3);
        let c4 = SimpleGraph::cycle(4).unwrap();
        assert!(raw_path(&c4, &[1, 2, 2, 1], 0, 1, 2).is_none());
    }

    #[test]
    fn model_rejects_what_the_primitives_reject() {
        let g = Arc::new(SimpleGraph::cycle(3).unwrap());
        let c = PartialColoring::from_colors(g.clone(), 3, &[Some(1), Some(2), Some(3)]).unwrap();
        // 0 misses 3 only, so (3,1)-(1,3) is legal and returns to the start
        let want = model_multi_swap(&g, 3, &raw(&c), 0, &[3, 1, 3]).unwrap();
        assert_eq!(want, raw(&c));
        assert!(model_multi_swap(&g, 3, &raw(&c), 0, &[1, 2]).is_none());
    }

    #[test]
    fn small_campaign_is_clean_and_reproducible() {
        let a = run_kempe_suite(&cfg(400)).unwrap();
        let b = run_kempe_suite(&cfg(400)).unwrap();
        assert!(a.passed(), "{}", a.summary());
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.instances, 400);
        for name in [SWAP_CHAIN, SWAP_AT, SCRIPT_STEPWISE, SCRIPT_FAULT, SHIFT, SUBCHAIN] {
            assert!(a.checks[name].pass > 0, "{name} never exercised");
        }
    }

    #[test]
    fn both_branches_of_each_fallible_op_occur() {
        let r = run_kempe_suite(&cfg(2000)).unwrap();
        let outcomes = &r.stats["operation_outcomes"];
        for op in ["shift", "swap_subchain", "apply_script", "multi_swap"] {
            assert!(outcomes[op]["ok"].as_u64().unwrap_or(0) > 0, "{op} never succeeded");
            assert!(outcomes[op]["err"].as_u64().unwrap_or(0) > 0, "{op} never failed");
        }
    }
}
