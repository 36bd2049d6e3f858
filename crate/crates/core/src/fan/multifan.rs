use serde::Serialize;

use crate::coloring::{Color, ColorSet, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Vertex};

/// `F_φ(r, s_1 : s_p)`; `seq[0]` is `s_1`, whose edge to `r` is uncolored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multifan {
    pub center: Vertex,
    pub seq: Vec<Vertex>,
}

impl Multifan {
    pub fn new(center: Vertex, seq: Vec<Vertex>) -> Self {
        Multifan { center, seq }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// `V(F)`: the center followed by `s_1..s_p`.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v = vec![self.center];
        v.extend_from_slice(&self.seq);
        v
    }

    /// `E(F)` as edge ids of the coloring's graph.
    pub fn edges(&self, c: &PartialColoring) -> Vec<EdgeId> {
        self.seq
            .iter()
            .map(|&s| c.graph().edge_id(self.center, s).expect("fan edge"))
            .collect()
    }

    /// 1-based lookup: `s(1)` is `s_1`.
    pub fn s(&self, i: usize) -> Vertex {
        self.seq[i - 1]
    }
}

/// Greedy closure from `s_1`: repeatedly appends the lowest-indexed unused
/// neighbor of `r` of degree `Δ − 1` whose edge color is missing somewhere
/// on `s_1..s_p`.
pub fn grow_multifan(c: &PartialColoring, r: Vertex, s1: Vertex) -> Multifan {
    let g = c.graph();
    let delta = g.max_degree();
    let mut seq = vec![s1];
    let mut missing = c.missing(s1);
    loop {
        let next = g.neighbors(r).iter().copied().find(|&s| {
            g.degree(s) + 1 == delta
                && !seq.contains(&s)
                && c.color_between(r, s).is_some_and(|col| missing.contains(col))
        });
        match next {
            Some(s) => {
                seq.push(s);
                missing = missing.union(c.missing(s));
            }
            None => return Multifan::new(r, seq),
        }
    }
}

/// Checks the defining condition, distinctness, the uncolored first edge,
/// and that every non-center vertex has degree `Δ − 1`.
pub fn check_multifan(c: &PartialColoring, f: &Multifan) -> std::result::Result<(), String> {
    let g = c.graph();
    let delta = g.max_degree();
    let r = f.center;
    if f.seq.is_empty() {
        return Err("empty fan".into());
    }
    let mut seen = vec![r];
    let mut missing = ColorSet::EMPTY;
    for (i, &s) in f.seq.iter().enumerate() {
        if seen.contains(&s) {
            return Err(format!("vertex {s} repeated"));
        }
        seen.push(s);
        if !g.has_edge(r, s) {
            return Err(format!("{s} is not adjacent to the center {r}"));
        }
        if g.degree(s) + 1 != delta {
            return Err(format!("s_{} = {s} has degree {} ≠ Δ − 1", i + 1, g.degree(s)));
        }
        let col = c.color_between(r, s);
        if i == 0 {
            if col.is_some() {
                return Err(format!("edge {r}-{s} should be uncolored"));
            }
        } else {
            match col {
                Some(col) if missing.contains(col) => {}
                Some(col) => {
                    return Err(format!("color {col} of {r}-{s} is missed by no earlier s_j"));
                }
                None => return Err(format!("edge {r}-{s} is uncolored")),
            }
        }
        missing = missing.union(c.missing(s));
    }
    Ok(())
}

pub fn validate_multifan(c: &PartialColoring, f: &Multifan) -> bool {
    check_multifan(c, f).is_ok()
}

/// `F_φ(r, s_1 : s_α : s_β)` in typical form under the coloring it was
/// normalized with: `φ̄(r) = 1`, `φ̄(s_1) = {2, Δ}`, the 2-inducing run
/// `s_2..s_α` first, then the Δ-inducing run `s_{α+1}..s_β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypicalMultifan {
    pub fan: Multifan,
    pub alpha: usize,
    pub beta: usize,
}

impl TypicalMultifan {
    pub fn r(&self) -> Vertex {
        self.fan.center
    }

    pub fn s(&self, i: usize) -> Vertex {
        self.fan.s(i)
    }

    pub fn is_two_inducing(&self) -> bool {
        self.alpha == self.beta
    }

    /// Verifies every color equation of the typical form under `c`.
    pub fn check(&self, c: &PartialColoring) -> std::result::Result<(), String> {
        check_multifan(c, &self.fan)?;
        let delta = c.k();
        let (a, b) = (self.alpha, self.beta);
        if b != self.fan.len() || a < 1 || a > b {
            return Err(format!("bad indices α = {a}, β = {b}"));
        }
        let r = self.r();
        let want = |v: Vertex, set: &[Color]| -> std::result::Result<(), String> {
            let expect: ColorSet = set.iter().copied().collect();
            if c.missing(v) == expect {
                Ok(())
            } else {
                Err(format!("φ̄({v}) = {:?}, expected {:?}", c.missing(v), expect))
            }
        };
        want(r, &[1])?;
        want(self.s(1), &[2, delta])?;
        for i in 2..=b {
            let s = self.s(i);
            let (edge, miss) = if i == a + 1 {
                (delta, (a + 2) as Color)
            } else {
                (i as Color, (i + 1) as Color)
            };
            if c.color_between(r, s) != Some(edge) {
                return Err(format!("φ(r s_{i}) should be {edge}"));
            }
            want(s, &[miss])?;
        }
        Ok(())
    }
}

/// Result of [`normalize_typical`].
#[derive(Clone, Debug)]
pub struct Normalized {
    pub fan: TypicalMultifan,
    /// `perm[c]` is the new name of color `c`; `perm[0] = 0`.
    pub perm: Vec<Color>,
    pub coloring: PartialColoring,
}

/// Follows the inducing chain from the color `head` missing at `s_1`.
fn inducing_run(c: &PartialColoring, f: &Multifan, head: Color) -> Vec<Vertex> {
    let mut run = Vec::new();
    let mut col = head;
    while let Some(&s) = f.seq[1..]
        .iter()
        .find(|&&s| c.color_between(f.center, s) == Some(col) && !run.contains(&s))
    {
        run.push(s);
        match c.missing(s).as_single() {
            Some(next) => col = next,
            None => break,
        }
    }
    run
}

/// Renames colors and reorders `s_2..s_p` into typical form. The head of the
/// longer inducing run becomes color 2 (ties go to the smaller original
/// color), the other head becomes `Δ`.
pub fn normalize_typical(c: &PartialColoring, f: &Multifan) -> Result<Normalized> {
    check_multifan(c, f).map_err(Error::Precondition)?;
    let verts = f.vertices();
    if !c.is_elementary(&verts) {
        return Err(Error::NotElementary(format!("V(F) = {verts:?}")));
    }
    let k = c.k();
    let miss_r = c.missing(f.center).as_single().ok_or_else(|| {
        Error::Precondition(format!("center misses {:?}, expected one color", c.missing(f.center)))
    })?;
    let heads: Vec<Color> = c.missing(f.s(1)).iter().collect();
    if heads.len() != 2 {
        return Err(Error::Precondition(format!("s_1 misses {heads:?}, expected two colors")));
    }
    let runs: Vec<Vec<Vertex>> = heads.iter().map(|&h| inducing_run(c, f, h)).collect();
    if runs[0].len() + runs[1].len() + 1 != f.len() {
        return Err(Error::Precondition("inducing runs do not cover the fan".into()));
    }
    let (two, big) = if runs[1].len() > runs[0].len() { (1, 0) } else { (0, 1) };
    let mut perm = vec![0 as Color; k as usize + 1];
    let mut assigned = ColorSet::EMPTY;
    let mut put = |perm: &mut Vec<Color>, from: Color, to: Color| {
        perm[from as usize] = to;
        assigned.insert(to);
    };
    put(&mut perm, miss_r, 1);
    put(&mut perm, heads[two], 2);
    put(&mut perm, heads[big], k);
    let mut next = 3;
    for &s in runs[two].iter().chain(runs[big].iter()) {
        let m = c.missing(s).as_single().expect("non-first fan vertices miss one color");
        put(&mut perm, m, next);
        next += 1;
    }
    let mut free = (1..=k).filter(|&x| !assigned.contains(x));
    for col in 1..=k {
        if perm[col as usize] == 0 {
            perm[col as usize] = free.next().expect("bijection");
        }
    }
    let coloring = c.permute_colors(&perm)?;
    let mut seq = vec![f.s(1)];
    seq.extend_from_slice(&runs[two]);
    seq.extend_from_slice(&runs[big]);
    let fan = TypicalMultifan {
        fan: Multifan::new(f.center, seq),
        alpha: runs[two].len() + 1,
        beta: f.len(),
    };
    debug_assert_eq!(fan.check(&coloring), Ok(()));
    Ok(Normalized { fan, perm, coloring })
}

/// Which color of `φ̄(s_1)` induces a color, and how far down its run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Induced {
    pub color: Color,
    pub inducer: Color,
    /// 0 for the inducer itself, `i` for the color missing at the `i`-th
    /// vertex of the run.
    pub position: usize,
    pub vertex: Vertex,
}

/// Inducing data for every color of `φ̄(F) \ φ̄(r)` and the `≺` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducingStructure {
    pub entries: Vec<Induced>,
}

impl InducingStructure {
    pub fn get(&self, color: Color) -> Option<&Induced> {
        self.entries.iter().find(|e| e.color == color)
    }

    pub fn inducer(&self, color: Color) -> Option<Color> {
        self.get(color).map(|e| e.inducer)
    }

    /// `a ≺ b`: same inducing sequence and `a` strictly earlier.
    pub fn precedes(&self, a: Color, b: Color) -> bool {
        match (self.get(a), self.get(b)) {
            (Some(x), Some(y)) => x.inducer == y.inducer && x.position < y.position,
            _ => false,
        }
    }

    /// The last color induced by `inducer`.
    pub fn last_inducing(&self, inducer: Color) -> Option<Color> {
        self.entries
            .iter()
            .filter(|e| e.inducer == inducer)
            .max_by_key(|e| e.position)
            .map(|e| e.color)
    }

    pub fn is_induced_by(&self, color: Color, inducer: Color) -> bool {
        self.inducer(color) == Some(inducer)
    }
}

/// Computes inducing data of an elementary multifan.
pub fn inducing_structure(c: &PartialColoring, f: &Multifan) -> Result<InducingStructure> {
    if !c.is_elementary(&f.vertices()) {
        return Err(Error::NotElementary(format!("V(F) = {:?}", f.vertices())));
    }
    let s1 = f.s(1);
    let mut entries = Vec::new();
    for head in c.missing(s1).iter() {
        entries.push(Induced { color: head, inducer: head, position: 0, vertex: s1 });
        for (i, s) in inducing_run(c, f, head).into_iter().enumerate() {
            for col in c.missing(s).iter() {
                entries.push(Induced { color: col, inducer: head, position: i + 1, vertex: s });
            }
        }
    }
    Ok(InducingStructure { entries })
}

/// Graphviz star of the fan with edge colors as labels.
pub fn fan_to_dot(c: &PartialColoring, f: &Multifan) -> String {
    let r = f.center;
    let mut out = String::from("graph fan {\n");
    let label = |v: Vertex| {
        let m: Vec<String> = c.missing(v).iter().map(|x| x.to_string()).collect();
        format!("{v} [{}]", m.join(","))
    };
    out.push_str(&format!("  {r} [label=\"{}\", shape=doublecircle];\n", label(r)));
    for &s in &f.seq {
        out.push_str(&format!("  {s} [label=\"{}\"];\n", label(s)));
    }
    for &s in &f.seq {
        match c.color_between(r, s) {
            Some(col) => out.push_str(&format!("  {r} -- {s} [label=\"{col}\"];\n")),
            None => out.push_str(&format!("  {r} -- {s} [style=dashed];\n")),
        }
    }
    out.push_str("}\n");
    out
}
