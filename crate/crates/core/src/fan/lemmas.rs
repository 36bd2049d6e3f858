//! Literal evaluation of the structural lemmas on one coloring-triple.
//!
//! Every evaluator re-derives its hypotheses; when no object satisfies them
//! the outcome is `Vacuous`, never `Pass`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use super::kierstead::{kierstead_paths_from, KiersteadPath};
use super::lollipop::{lollipops, Lollipop};
use super::multifan::{grow_multifan, inducing_structure, normalize_typical, InducingStructure, Multifan, Normalized};
use super::pseudo::{validate_pseudo_multifan, MaxFanCertificate, PseudoMultifan, PseudoReport};
use super::rotation::{check_rotation, find_rotations};
use super::triple::ColoringTriple;
use crate::coloring::{ChainKind, Color, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::{ClauseOutcome, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LemmaId {
    L3_1a,
    L3_1b,
    L3_2a,
    L3_2b,
    L3_3a,
    L3_3b,
    L3_5a,
    L3_5b,
    L3_5c,
    L3_5d,
    L3_6a,
    L3_6b,
    L3_6c,
    L3_6d,
    L3_6e,
    L3_8,
    L3_9,
}

impl LemmaId {
    pub const ALL: [LemmaId; 17] = [
        LemmaId::L3_1a,
        LemmaId::L3_1b,
        LemmaId::L3_2a,
        LemmaId::L3_2b,
        LemmaId::L3_3a,
        LemmaId::L3_3b,
        LemmaId::L3_5a,
        LemmaId::L3_5b,
        LemmaId::L3_5c,
        LemmaId::L3_5d,
        LemmaId::L3_6a,
        LemmaId::L3_6b,
        LemmaId::L3_6c,
        LemmaId::L3_6d,
        LemmaId::L3_6e,
        LemmaId::L3_8,
        LemmaId::L3_9,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::L3_1a => "3.1a",
            LemmaId::L3_1b => "3.1b",
            LemmaId::L3_2a => "3.2a",
            LemmaId::L3_2b => "3.2b",
            LemmaId::L3_3a => "3.3a",
            LemmaId::L3_3b => "3.3b",
            LemmaId::L3_5a => "3.5a",
            LemmaId::L3_5b => "3.5b",
            LemmaId::L3_5c => "3.5c",
            LemmaId::L3_5d => "3.5d",
            LemmaId::L3_6a => "3.6a",
            LemmaId::L3_6b => "3.6b",
            LemmaId::L3_6c => "3.6c",
            LemmaId::L3_6d => "3.6d",
            LemmaId::L3_6e => "3.6e",
            LemmaId::L3_8 => "3.8",
            LemmaId::L3_9 => "3.9",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().trim_start_matches("L").replace('_', ".");
        LemmaId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == key)
            .ok_or_else(|| Error::UnknownLemma(s.to_string()))
    }
}

/// Counts quantified cases; the first failing case becomes the witness.
struct Tally {
    checked: usize,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failure: None }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn done(self) -> ClauseOutcome {
        match (self.failure, self.checked) {
            (Some(w), _) => ClauseOutcome::Fail(w),
            (None, 0) => ClauseOutcome::Vacuous,
            (None, _) => ClauseOutcome::Pass,
        }
    }
}

/// Branch counts for the rotation-or-near-rotation alternative of the
/// lollipop sequence lemma.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Lemma37Stats {
    /// `(lollipop, w_1)` pairs meeting the hypotheses that can be checked.
    pub instances: usize,
    /// Sequence closed with `φ̄(w_t) = τ_1`.
    pub closes_at_tau1: usize,
    /// Sequence ended with `φ̄(w_t) = α + 1`.
    pub ends_at_alpha_plus_1: usize,
    /// Sequence left `[β+2, Δ−1]` or ran out of vertices; the lemma's
    /// universally quantified hypothesis cannot hold here.
    pub neither: usize,
}

impl Lemma37Stats {
    pub fn add(&mut self, o: &Lemma37Stats) {
        self.instances += o.instances;
        self.closes_at_tau1 += o.closes_at_tau1;
        self.ends_at_alpha_plus_1 += o.ends_at_alpha_plus_1;
        self.neither += o.neither;
    }
}

/// Everything the lemmas quantify over for one triple, expressed in the
/// typical color names.
#[derive(Clone, Debug)]
pub struct LemmaContext {
    pub triple: ColoringTriple,
    pub is_class2: bool,
    pub grown: Multifan,
    /// `None` when the grown fan is not elementary, which is itself a
    /// finding for the first lemma.
    pub normalized: Option<Normalized>,
    pub inducing: Option<InducingStructure>,
    pub kierstead: Vec<KiersteadPath>,
    pub pseudo: Option<(PseudoMultifan, PseudoReport)>,
    pub lollipops: Vec<Lollipop>,
}

impl LemmaContext {
    /// `max_fan` is the certificate for the center, if a search ran. A
    /// pseudo-multifan is built only when the grown fan attains it.
    pub fn new<R: Rng>(
        triple: ColoringTriple,
        is_class2: bool,
        max_fan: Option<&MaxFanCertificate>,
        samples: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let r = triple.r();
        let grown = grow_multifan(triple.coloring(), r, triple.s1());
        let normalized = match normalize_typical(triple.coloring(), &grown) {
            Ok(n) => Some(n),
            Err(Error::NotElementary(_)) => None,
            Err(e) => return Err(e),
        };
        let (inducing, kierstead, pseudo, lolls) = match &normalized {
            Some(n) => {
                let c = &n.coloring;
                let ind = inducing_structure(c, &n.fan.fan)?;
                let mut ks = kierstead_paths_from(c, r, triple.s1());
                ks.extend(kierstead_paths_from(c, triple.s1(), r));
                let pseudo = max_fan
                    .filter(|cert| cert.max_vertices == n.fan.fan.len() + 1)
                    .map(|cert| {
                        let fan_seq = &n.fan.fan.seq;
                        let mut seq = fan_seq.clone();
                        seq.extend(triple.small_neighbors().into_iter().filter(|v| !fan_seq.contains(v)));
                        let s = PseudoMultifan { center: r, seq, t: n.fan.beta, certificate: cert.clone() };
                        let rep = validate_pseudo_multifan(c, &s, samples, rng);
                        (s, rep)
                    });
                (Some(ind), ks, pseudo, lollipops(c, &n.fan))
            }
            None => (None, Vec::new(), None, Vec::new()),
        };
        Ok(LemmaContext {
            triple,
            is_class2,
            grown,
            normalized,
            inducing,
            kierstead,
            pseudo,
            lollipops: lolls,
        })
    }

    /// The coloring all typical-form statements refer to.
    pub fn coloring(&self) -> &PartialColoring {
        match &self.normalized {
            Some(n) => &n.coloring,
            None => self.triple.coloring(),
        }
    }

    pub fn evaluate(&self, id: LemmaId) -> ClauseOutcome {
        if !self.is_class2 {
            return ClauseOutcome::Vacuous;
        }
        match id {
            LemmaId::L3_1a => self.lemma_3_1a(),
            LemmaId::L3_1b => self.lemma_3_1b(),
            LemmaId::L3_2a => self.lemma_3_2(true),
            LemmaId::L3_2b => self.lemma_3_2(false),
            LemmaId::L3_3a => self.lemma_3_3a(),
            LemmaId::L3_3b => self.lemma_3_3b(),
            LemmaId::L3_5a => self.lemma_3_5a(),
            LemmaId::L3_5b => self.lemma_3_5b(),
            LemmaId::L3_5c => self.lemma_3_5c(),
            LemmaId::L3_5d => self.lemma_3_5d(),
            LemmaId::L3_6a => self.lemma_3_6a(),
            LemmaId::L3_6b => self.lemma_3_6_tail('b'),
            LemmaId::L3_6c => self.lemma_3_6_tail('c'),
            LemmaId::L3_6d => self.lemma_3_6_tail('d'),
            LemmaId::L3_6e => self.lemma_3_6_tail('e'),
            LemmaId::L3_8 => self.lemma_3_8(),
            LemmaId::L3_9 => self.lemma_3_9(),
        }
    }

    fn lemma_3_1a(&self) -> ClauseOutcome {
        let v = self.grown.vertices();
        ClauseOutcome::from_check(self.triple.coloring().is_elementary(&v), || {
            format!("V(F) = {v:?} is not elementary")
        })
    }

    fn lemma_3_1b(&self) -> ClauseOutcome {
        let c = self.triple.coloring();
        let r = self.grown.center;
        let mut t = Tally::new();
        for &s in &self.grown.seq {
            for a in c.missing(r).iter() {
                for b in c.missing(s).iter().filter(|&b| b != a) {
                    let ok = c.linked(r, s, a, b).unwrap_or(false);
                    t.check(ok, || format!("r = {r} and {s} are ({a},{b})-unlinked"));
                }
            }
        }
        t.done()
    }

    /// Shared loop of both parts; `part_a` selects which conclusion.
    fn lemma_3_2(&self, part_a: bool) -> ClauseOutcome {
        let (Some(n), Some(ind)) = (&self.normalized, &self.inducing) else {
            return ClauseOutcome::Fail("fan is not elementary, inducing colors undefined".into());
        };
        let c = &n.coloring;
        let f = &n.fan.fan;
        let r = f.center;
        let mut t = Tally::new();
        for &si in &f.seq {
            for &sj in f.seq.iter().filter(|&&v| v != si) {
                for d in c.missing(si).iter() {
                    for l in c.missing(sj).iter() {
                        let (Some(id), Some(il)) = (ind.inducer(d), ind.inducer(l)) else {
                            continue;
                        };
                        if part_a {
                            if id != il {
                                let ok = c.linked(si, sj, d, l).unwrap_or(false);
                                t.check(ok, || format!("{si}, {sj} are ({d},{l})-unlinked"));
                            }
                        } else if id == il && ind.precedes(d, l) && !c.linked(si, sj, d, l).unwrap_or(true) {
                            let ok = c.chain_through(sj, l, d).is_ok_and(|ch| ch.contains(r));
                            t.check(ok, || format!("r = {r} not on P_{sj}({l},{d})"));
                        }
                    }
                }
            }
        }
        t.done()
    }

    fn kierstead_hypothesis(&self, k: &KiersteadPath) -> bool {
        let g = self.coloring().graph();
        let delta = g.max_degree();
        g.degree(k.vertices[1]).min(g.degree(k.vertices[2])) < delta
    }

    fn lemma_3_3a(&self) -> ClauseOutcome {
        let c = self.coloring();
        let mut t = Tally::new();
        for k in self.kierstead.iter().filter(|k| self.kierstead_hypothesis(k)) {
            t.check(c.is_elementary(&k.vertices), || format!("V(K) = {:?} is not elementary", k.vertices));
        }
        t.done()
    }

    fn lemma_3_3b(&self) -> ClauseOutcome {
        let c = self.coloring();
        let mut t = Tally::new();
        for k in self.kierstead.iter().filter(|k| self.kierstead_hypothesis(k)) {
            let v = &k.vertices;
            let used = [c.color_between(v[1], v[2]), c.color_between(v[2], v[3])];
            for a in c.missing(v[0]).iter().filter(|a| !used.contains(&Some(*a))) {
                for d in c.missing(v[3]).iter().filter(|&d| d != a) {
                    let ok = c.linked(v[3], v[0], a, d).unwrap_or(false);
                    t.check(ok, || format!("K = {v:?}: {} and {} are ({a},{d})-unlinked", v[3], v[0]));
                }
            }
        }
        t.done()
    }

    /// The pseudo-multifan when its hypotheses are established: proven
    /// maximal prefix, sampled (P2), and `p = Δ − 2`.
    fn pseudo_in_force(&self) -> Option<&PseudoMultifan> {
        let (s, rep) = self.pseudo.as_ref()?;
        let delta = self.coloring().k() as usize;
        (rep.passes() && rep.p1_certified && s.seq.len() + 2 == delta).then_some(s)
    }

    fn lemma_3_5a(&self) -> ClauseOutcome {
        let Some(s) = self.pseudo_in_force() else {
            return ClauseOutcome::Vacuous;
        };
        let rest = &s.seq[s.t..];
        if rest.is_empty() {
            return ClauseOutcome::Vacuous;
        }
        let c = self.coloring();
        match find_rotations(c, s.center, rest) {
            Ok(rots) => {
                let bad = rots.iter().find(|rot| !check_rotation(c, rot));
                ClauseOutcome::from_check(bad.is_none(), || format!("invalid rotation {:?}", bad.unwrap().vertices))
            }
            Err(f) => ClauseOutcome::Fail(format!("{rest:?} is not a union of rotations at {}: {} {}", s.center, f.vertex, f.reason)),
        }
    }

    /// `(j, δ)` pairs with `j ∈ [t+1, Δ−2]` and `δ ∈ φ̄(s_j)`.
    fn pseudo_tail(&self) -> Vec<(Vertex, Color)> {
        let Some(s) = self.pseudo_in_force() else {
            return Vec::new();
        };
        let c = self.coloring();
        s.seq[s.t..]
            .iter()
            .flat_map(|&v| c.missing(v).iter().map(move |d| (v, d)))
            .collect()
    }

    fn lemma_3_5b(&self) -> ClauseOutcome {
        let c = self.coloring();
        let mut t = Tally::new();
        for (sj, d) in self.pseudo_tail() {
            let r = self.triple.r();
            let ok = c.linked(sj, r, 1, d).unwrap_or(false);
            t.check(ok, || format!("{sj} and r = {r} are (1,{d})-unlinked"));
        }
        t.done()
    }

    fn lemma_3_5c(&self) -> ClauseOutcome {
        let c = self.coloring();
        let r = self.triple.r();
        let mut t = Tally::new();
        let Some(s) = self.pseudo_in_force() else {
            return ClauseOutcome::Vacuous;
        };
        let fan = s.embedded().vertices();
        for (sj, d) in self.pseudo_tail() {
            for g in c.missing_union(&fan).iter().filter(|&g| g != 1) {
                let y = c.missing_vertex(&fan, g).expect("γ is missed on F");
                let ok = match c.chain_through(y, g, d) {
                    Ok(ch) if ch.contains(sj) && ch.contains(r) => {
                        let z = c.neighbor_via(r, g).expect("r sees every color but 1");
                        ch.meets_before(z, r).unwrap_or(false)
                    }
                    _ => false,
                };
                t.check(ok, || format!("P_{y}({g},{d}) does not run from {y} to {sj} through z then r = {r}"));
            }
        }
        t.done()
    }

    fn lemma_3_5d(&self) -> ClauseOutcome {
        let c = self.coloring();
        let r = self.triple.r();
        let mut t = Tally::new();
        let Some(s) = self.pseudo_in_force() else {
            return ClauseOutcome::Vacuous;
        };
        let fan_missing = c.missing_union(&s.embedded().vertices());
        let all = s.vertices();
        let extra = c.missing_union(&all).difference(fan_missing);
        for (sj, d) in self.pseudo_tail() {
            for ds in extra.iter().filter(|&x| x != d) {
                let y = c.missing_vertex(&all, ds).expect("δ* is missed on S");
                let ok = match c.chain_through(y, d, ds) {
                    Ok(ch) if ch.contains(sj) => {
                        ch.contains(r)
                            || c.chain_through(r, d, ds).is_ok_and(|cr| cr.kind() == ChainKind::EvenCycle)
                    }
                    _ => false,
                };
                t.check(ok, || format!("P_{y}({d},{ds}) misses {sj}, or avoids r = {r} while P_r is a path"));
            }
        }
        t.done()
    }

    fn standard_lollipops(&self) -> impl Iterator<Item = &Lollipop> {
        self.lollipops.iter().filter(|l| l.standard())
    }

    fn lemma_3_6a(&self) -> ClauseOutcome {
        let c = self.coloring();
        let mut t = Tally::new();
        for l in self.standard_lollipops() {
            let r = l.fan.r();
            let tau = c.color_between(l.u, l.x).expect("ux is colored");
            let e = c.graph().edge_id(l.u, l.x).expect("edge");
            let ok = tau != 1 && c.chain_through(r, 1, tau).is_ok_and(|ch| ch.edges().contains(&e));
            t.check(ok, || format!("u = {}, x = {}: φ(ux) = {tau} and ux ∉ P_r(1,{tau})", l.u, l.x));
        }
        t.done()
    }

    /// Parts (b)–(e), all conditioned on `φ(ux)` being 2-inducing.
    fn lemma_3_6_tail(&self, part: char) -> ClauseOutcome {
        let (Some(n), Some(ind)) = (&self.normalized, &self.inducing) else {
            return ClauseOutcome::Vacuous;
        };
        let c = &n.coloring;
        let delta = c.k();
        let mut t = Tally::new();
        for l in self.standard_lollipops() {
            let f = &l.fan;
            let r = f.r();
            let a = f.alpha;
            let a1 = (a + 1) as Color;
            let tau = c.color_between(l.u, l.x).expect("ux is colored");
            if tau == 1 || !ind.is_induced_by(tau, 2) {
                continue;
            }
            // s_{δ−1} misses δ for 2 ≤ δ ≤ β + 1, reading s_{Δ−1} as s_1
            let missing_at = |d: Color| if d == delta { f.s(1) } else { f.s(d as usize - 1) };
            match part {
                'b' => {
                    let mut d = c.clone();
                    d.set_color_between(l.u, l.x, None).expect("edge exists");
                    let ok = d.chain_through(l.x, 1, tau).is_ok_and(|ch| {
                        ch.kind() == ChainKind::Path && ch.vertices().last() == Some(&r)
                    });
                    t.check(ok, || format!("u = {}, x = {}: P_x(1,{tau}) in G − ux does not end at r", l.u, l.x));
                }
                'c' => {
                    for dl in (3..=a1).filter(|&d| ind.precedes(tau, d)) {
                        let sd = missing_at(dl);
                        let ok = c.chain_through(f.s(1), dl, delta).is_ok_and(|ch| ch.contains(sd) && ch.contains(r));
                        t.check(ok, || format!("u = {}, x = {}: r ∉ P_s1({dl},{delta}) = P_{sd}", l.u, l.x));
                    }
                }
                'd' => {
                    for dl in std::iter::once(delta).chain(a1 + 1..=(f.beta + 1) as Color) {
                        let sd = missing_at(dl);
                        let ok = c.chain_through(f.s(a), a1, dl).is_ok_and(|ch| ch.contains(sd) && ch.contains(r));
                        t.check(ok, || format!("u = {}, x = {}: r ∉ P_s_α({a1},{dl}) = P_{sd}", l.u, l.x));
                    }
                }
                _ => {
                    for dl in (2..a1).filter(|&d| ind.precedes(d, tau)) {
                        let sd = missing_at(dl);
                        let ok = c.chain_through(f.s(a), dl, a1).is_ok_and(|ch| ch.contains(sd) && ch.contains(r));
                        t.check(ok, || format!("u = {}, x = {}: r ∉ P_s_α({dl},{a1}) = P_{sd}", l.u, l.x));
                    }
                }
            }
        }
        t.done()
    }

    fn lemma_3_8(&self) -> ClauseOutcome {
        let c = self.coloring();
        let g = c.graph();
        let mut t = Tally::new();
        for l in self.standard_lollipops().filter(|l| l.fan.is_two_inducing()) {
            if c.color_between(l.u, l.x) != Some(c.k()) {
                continue;
            }
            let (s1, sa) = (l.fan.s(1), l.fan.s(l.fan.alpha));
            t.check(!g.has_edge(l.u, s1) && !g.has_edge(l.u, sa), || {
                format!("u = {} is adjacent to s_1 = {s1} or s_α = {sa}", l.u)
            });
        }
        t.done()
    }

    fn lemma_3_9(&self) -> ClauseOutcome {
        let (Some(_), Some(ind)) = (&self.normalized, &self.inducing) else {
            return ClauseOutcome::Vacuous;
        };
        let c = self.coloring();
        let g = c.graph();
        let mut t = Tally::new();
        for l in self.standard_lollipops().filter(|l| l.fan.is_two_inducing()) {
            let mu = c.color_between(l.u, l.x).expect("ux is colored");
            if !ind.is_induced_by(mu, 2) || mu as usize > l.fan.alpha {
                continue;
            }
            let (p, q) = (l.fan.s(mu as usize - 1), l.fan.s(mu as usize));
            t.check(!g.has_edge(l.u, p) && !g.has_edge(l.u, q), || {
                format!("u = {} is adjacent to s_(μ−1) = {p} or s_μ = {q} for μ = {mu}", l.u)
            });
        }
        t.done()
    }

    /// Follows `w_1, w_2, …` with `φ(r w_{i+1}) = φ̄(w_i)` from every
    /// eligible `w_1` and records how each sequence ends. The sequence does
    /// not depend on the lollipop, so a triple counts once if it has any.
    pub fn lemma_3_7_branches(&self) -> Lemma37Stats {
        let mut stats = Lemma37Stats::default();
        if !self.is_class2 {
            return stats;
        }
        let Some(n) = &self.normalized else {
            return stats;
        };
        let c = &n.coloring;
        let f = &n.fan;
        let r = f.r();
        let delta = c.k();
        let beta = f.beta as Color;
        let rest: Vec<Vertex> = self
            .triple
            .small_neighbors()
            .into_iter()
            .filter(|v| !f.fan.seq.contains(v))
            .collect();
        let window = beta + 2..delta;
        let a1 = (f.alpha + 1) as Color;
        if self.standard_lollipops().next().is_some() {
            for &w1 in &rest {
                let Some(tau1) = c.color_between(r, w1).filter(|x| window.contains(x)) else {
                    continue;
                };
                stats.instances += 1;
                let mut used = vec![w1];
                let mut w = w1;
                loop {
                    let m = c.missing(w).as_single();
                    if m == Some(tau1) {
                        stats.closes_at_tau1 += 1;
                        break;
                    }
                    if m == Some(a1) {
                        stats.ends_at_alpha_plus_1 += 1;
                        break;
                    }
                    let next = m.filter(|x| window.contains(x)).and_then(|m| {
                        rest.iter().copied().find(|&v| !used.contains(&v) && c.color_between(r, v) == Some(m))
                    });
                    match next {
                        Some(v) => {
                            used.push(v);
                            w = v;
                        }
                        None => {
                            stats.neither += 1;
                            break;
                        }
                    }
                }
            }
        }
        stats
    }
}

/// Evaluates one lemma on a prepared context.
pub fn check_lemma_predicates(ctx: &LemmaContext, id: LemmaId) -> ClauseOutcome {
    ctx.evaluate(id)
}
