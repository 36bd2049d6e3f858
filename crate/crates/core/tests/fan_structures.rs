use std::collections::BTreeSet;
use std::sync::Arc;

use overfull::coloring::{Color, PartialColoring};
use overfull::fan::*;
use overfull::graph::{build_o_delta, ODeltaSpec, SimpleGraph, Vertex};
use overfull::harness::instances::{random_triple, triple_anchors};
use overfull::harness::rng::instance_rng;
use proptest::prelude::*;

fn k5_minus_e() -> Arc<SimpleGraph> {
    // vertices 0, 1, 2 have degree 4; 3 and 4 degree 3
    Arc::new(SimpleGraph::complete(5).without_edge(3, 4).unwrap())
}

/// Every proper `k`-coloring of all edges of `g` except `skip`, by plain
/// backtracking over edge ids.
fn brute_colorings(g: &SimpleGraph, k: Color, skip: usize) -> Vec<Vec<Option<Color>>> {
    fn go(g: &SimpleGraph, k: Color, skip: usize, e: usize, cur: &mut Vec<Option<Color>>, out: &mut Vec<Vec<Option<Color>>>) {
        if e == g.m() {
            out.push(cur.clone());
            return;
        }
        if e == skip {
            cur.push(None);
            go(g, k, skip, e + 1, cur, out);
            cur.pop();
            return;
        }
        let (u, v) = g.edge(e);
        for c in 1..=k {
            let clash = (0..e).any(|f| {
                let (a, b) = g.edge(f);
                cur[f] == Some(c) && (a == u || a == v || b == u || b == v)
            });
            if !clash {
                cur.push(Some(c));
                go(g, k, skip, e + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, k, skip, 0, &mut Vec::new(), &mut out);
    out
}

/// Closure of `{s1}` under the multifan rule, computed from scratch.
fn closure(c: &PartialColoring, r: Vertex, s1: Vertex) -> BTreeSet<Vertex> {
    let g = c.graph();
    let delta = g.max_degree();
    let mut set = BTreeSet::from([s1]);
    loop {
        let missing: BTreeSet<Color> = set.iter().flat_map(|&v| c.missing(v).iter()).collect();
        let add: Vec<Vertex> = g
            .neighbors(r)
            .iter()
            .copied()
            .filter(|&s| !set.contains(&s) && g.degree(s) + 1 == delta)
            .filter(|&s| c.color_between(r, s).is_some_and(|x| missing.contains(&x)))
            .collect();
        if add.is_empty() {
            return set;
        }
        set.extend(add);
    }
}

fn o_delta(delta: usize, n1: usize) -> Arc<SimpleGraph> {
    Arc::new(build_o_delta(&ODeltaSpec::canonical(delta, n1).unwrap()).unwrap())
}

/// Seeded triples on `g` until `want` accepts one.
fn find_triple(g: &Arc<SimpleGraph>, tries: u64, mut want: impl FnMut(&ColoringTriple) -> bool) -> Option<ColoringTriple> {
    let anchors = triple_anchors(g);
    (0..tries).find_map(|i| {
        let (r, s) = anchors[i as usize % anchors.len()];
        let t = random_triple(g, r, s, (i % 12) as usize, 10_000_000, &mut instance_rng(99, i)).ok()?;
        want(&t).then_some(t)
    })
}

#[test]
fn lone_fan_when_no_neighbor_qualifies() {
    // r = 0 with neighbors s1 = 1 (degree 2) and 2, 3 of degree 3
    let g = Arc::new(SimpleGraph::from_edges(7, [(0, 1), (0, 2), (0, 3), (2, 3), (2, 4), (3, 5), (1, 6)]).unwrap());
    let id = |u, v| g.edge_id(u, v).unwrap();
    let mut cols = vec![None; g.m()];
    cols[id(0, 2)] = Some(1);
    cols[id(0, 3)] = Some(2);
    cols[id(2, 3)] = Some(3);
    cols[id(2, 4)] = Some(2);
    cols[id(3, 5)] = Some(1);
    cols[id(1, 6)] = Some(1);
    let c = PartialColoring::from_colors(g.clone(), 3, &cols).unwrap();
    let f = grow_multifan(&c, 0, 1);
    assert_eq!(f, Multifan::new(0, vec![1]));
    assert!(validate_multifan(&c, &f));
}

#[test]
fn k5_minus_e_fans_are_elementary_closures() {
    let g = k5_minus_e();
    for (r, s1) in triple_anchors(&g) {
        let skip = g.edge_id(r, s1).unwrap();
        let all = brute_colorings(&g, 4, skip);
        assert!(!all.is_empty());
        for cols in all {
            let c = PartialColoring::from_colors(g.clone(), 4, &cols).unwrap();
            let f = grow_multifan(&c, r, s1);
            assert!(validate_multifan(&c, &f));
            assert!(c.is_elementary(&f.vertices()));
            assert_eq!(f.seq.iter().copied().collect::<BTreeSet<_>>(), closure(&c, r, s1));
        }
    }
}

#[test]
fn validate_rejects_broken_fans() {
    let g = k5_minus_e();
    let t = find_triple(&g, 50, |t| grow_multifan(t.coloring(), t.r(), t.s1()).len() == 2).unwrap();
    let c = t.coloring();
    let f = grow_multifan(c, t.r(), t.s1());
    // a degree-Δ vertex on the fan
    let big = (0..3).find(|&v| v != t.r()).unwrap();
    let mut with_big = f.clone();
    with_big.seq.push(big);
    assert!(!validate_multifan(c, &with_big));
    // s_2 placed first: its edge is colored, and s_1 then comes too late
    let swapped = Multifan::new(f.center, vec![f.s(2), f.s(1)]);
    assert!(check_multifan(c, &swapped).is_err());
    assert!(!validate_multifan(c, &Multifan::new(f.center, vec![])));
}

#[test]
fn later_vertex_whose_color_is_missed_nowhere_earlier() {
    // Δ = 3, r = 0 with small neighbors 1 (= s1), 2, 3; φ̄(1) = {1, 3},
    // φ̄(2) = {3}, and φ(r 3) = 2 is missed by neither
    let g = Arc::new(
        SimpleGraph::from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap(),
    );
    let id = |u, v| g.edge_id(u, v).unwrap();
    let mut cols = vec![None; g.m()];
    cols[id(0, 2)] = Some(1);
    cols[id(0, 3)] = Some(2);
    cols[id(1, 4)] = Some(2);
    cols[id(2, 5)] = Some(2);
    cols[id(3, 6)] = Some(1);
    let c = PartialColoring::from_colors(g.clone(), 3, &cols).unwrap();
    let err = check_multifan(&c, &Multifan::new(0, vec![1, 2, 3])).unwrap_err();
    assert!(err.contains("missed by no earlier"), "{err}");
    assert_eq!(grow_multifan(&c, 0, 1), Multifan::new(0, vec![1, 2]));
}

#[test]
fn normalizing_a_typical_fan_is_the_identity() {
    let g = o_delta(6, 5);
    let t = find_triple(&g, 40, |t| t.coloring().is_elementary(&grow_multifan(t.coloring(), t.r(), t.s1()).vertices())).unwrap();
    let f = grow_multifan(t.coloring(), t.r(), t.s1());
    let n = normalize_typical(t.coloring(), &f).unwrap();
    n.fan.check(&n.coloring).unwrap();
    let again = normalize_typical(&n.coloring, &n.fan.fan).unwrap();
    let identity: Vec<Color> = (0..=6).collect();
    assert_eq!(again.perm, identity);
    assert_eq!(again.fan, n.fan);
}

#[test]
fn center_missing_five_is_renamed_to_one() {
    let g = o_delta(6, 5);
    let t = find_triple(&g, 40, |t| {
        let f = grow_multifan(t.coloring(), t.r(), t.s1());
        t.coloring().is_elementary(&f.vertices())
    })
    .unwrap();
    let n = normalize_typical(t.coloring(), &grow_multifan(t.coloring(), t.r(), t.s1())).unwrap();
    // rename 1 <-> 5 so the center misses 5
    let mut perm: Vec<Color> = (0..=6).collect();
    perm.swap(1, 5);
    let c = n.coloring.permute_colors(&perm).unwrap();
    assert_eq!(c.missing(t.r()).as_single(), Some(5));
    let m = normalize_typical(&c, &n.fan.fan).unwrap();
    assert_eq!(m.perm[5], 1);
    m.fan.check(&m.coloring).unwrap();
}

#[test]
fn normalize_refuses_non_elementary_fans() {
    // K4 − e is class 1; some colorings of G − rs1 leave a clash on the fan
    let g = Arc::new(SimpleGraph::complete(4).without_edge(2, 3).unwrap());
    let mut saw = false;
    for (r, s1) in triple_anchors(&g) {
        for cols in brute_colorings(&g, 3, g.edge_id(r, s1).unwrap()) {
            let c = PartialColoring::from_colors(g.clone(), 3, &cols).unwrap();
            let f = grow_multifan(&c, r, s1);
            if !c.is_elementary(&f.vertices()) {
                saw = true;
                assert!(matches!(normalize_typical(&c, &f), Err(overfull::Error::NotElementary(_))));
            }
        }
    }
    assert!(saw);
}

#[test]
fn inducing_runs_follow_the_typical_numbering() {
    let g = o_delta(7, 6);
    let mut checked = 0;
    for i in 0..30u64 {
        let anchors = triple_anchors(&g);
        let (r, s) = anchors[i as usize % anchors.len()];
        let t = random_triple(&g, r, s, 8, 10_000_000, &mut instance_rng(3, i)).unwrap();
        let f = grow_multifan(t.coloring(), r, s);
        let Ok(n) = normalize_typical(t.coloring(), &f) else { continue };
        let ind = inducing_structure(&n.coloring, &n.fan.fan).unwrap();
        let (a, b, delta) = (n.fan.alpha as Color, n.fan.beta as Color, 7 as Color);
        for col in 3..=a + 1 {
            assert_eq!(ind.inducer(col), Some(2));
            assert!(ind.precedes(2, col));
        }
        for col in a + 2..=b + 1 {
            assert_eq!(ind.inducer(col), Some(delta));
            assert!(!ind.precedes(2, col));
        }
        assert_eq!(ind.last_inducing(2), Some(a + 1));
        assert_eq!(ind.inducer(1), None);
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn empty_shift_is_the_identity() {
    let g = k5_minus_e();
    let t = find_triple(&g, 1, |_| true).unwrap();
    let mut c = t.coloring().clone();
    shift(&mut c, t.r(), &[]).unwrap();
    assert_eq!(&c, t.coloring());
}

fn pseudo_for(t: &ColoringTriple, n: &Normalized, cert: &MaxFanCertificate) -> PseudoMultifan {
    let mut seq = n.fan.fan.seq.clone();
    seq.extend(t.small_neighbors().into_iter().filter(|v| !n.fan.fan.seq.contains(v)));
    PseudoMultifan { center: t.r(), seq, t: n.fan.beta, certificate: cert.clone() }
}

#[test]
fn two_inducing_fan_is_left_alone() {
    let g = k5_minus_e();
    let t = find_triple(&g, 1, |_| true).unwrap();
    let cert = search_maximum_multifan(&g, t.r(), 1000, 1_000_000).unwrap().certificate;
    let n = normalize_typical(t.coloring(), &grow_multifan(t.coloring(), t.r(), t.s1())).unwrap();
    assert!(n.fan.is_two_inducing());
    let out = make_2_inducing(&pseudo_for(&t, &n, &cert), &n.fan, &n.coloring).unwrap();
    assert_eq!(out.coloring, n.coloring);
    assert!(out.script.steps.is_empty());
}

#[test]
fn beta_alpha_plus_one_on_o5_round_trips() {
    let g = o_delta(5, 4);
    let cert = search_maximum_multifan(&g, triple_anchors(&g)[0].0, 1000, 1_000_000).unwrap().certificate;
    // every H1 vertex looks the same, so one certificate serves all centers
    let t = find_triple(&g, 400, |t| {
        normalize_typical(t.coloring(), &grow_multifan(t.coloring(), t.r(), t.s1()))
            .is_ok_and(|n| n.fan.beta == n.fan.alpha + 1 && n.fan.beta + 1 == cert.max_vertices)
    })
    .expect("a maximum typical fan with β = α + 1");
    let n = normalize_typical(t.coloring(), &grow_multifan(t.coloring(), t.r(), t.s1())).unwrap();
    let s = pseudo_for(&t, &n, &cert);
    let out = make_2_inducing(&s, &n.fan, &n.coloring).unwrap();
    assert!(out.coloring.validate_proper());
    let before: BTreeSet<_> = s.vertices().into_iter().collect();
    let after: BTreeSet<_> = out.pseudo.vertices().into_iter().collect();
    assert_eq!(before, after);
    let new_fan = out.pseudo.embedded();
    let nn = normalize_typical(&out.coloring, &new_fan).unwrap();
    assert!(nn.fan.is_two_inducing());
    assert!(validate_pseudo_multifan(&out.coloring, &out.pseudo, 50, &mut instance_rng(1, 1)).passes());
    let mut back = out.coloring.clone();
    back.apply_script(&out.inverse).unwrap();
    for e in n.fan.fan.edges(&n.coloring) {
        assert_eq!(back.color(e), n.coloring.color(e));
    }
}

#[test]
fn max_fan_on_k5_minus_e_matches_brute_force() {
    let g = k5_minus_e();
    let mut best = 0;
    for (r, s1) in triple_anchors(&g).into_iter().filter(|&(r, _)| r == 0) {
        for cols in brute_colorings(&g, 4, g.edge_id(r, s1).unwrap()) {
            let c = PartialColoring::from_colors(g.clone(), 4, &cols).unwrap();
            best = best.max(closure(&c, r, s1).len() + 1);
        }
    }
    let found = search_maximum_multifan(&g, 0, 10_000, 10_000_000).unwrap();
    assert_eq!(found.certificate.max_vertices, best);
    assert!(found.certificate.certified());
    assert!(validate_multifan(found.triple.coloring(), &found.fan));
}

#[test]
fn zero_budget_examines_one_coloring() {
    let g = o_delta(6, 5);
    let r = triple_anchors(&g)[0].0;
    let found = search_maximum_multifan(&g, r, 0, 10_000_000).unwrap();
    assert_eq!(found.certificate.colorings_examined, 1);
    assert_eq!(found.fan, grow_multifan(found.triple.coloring(), r, found.fan.s(1)));
}

#[test]
fn max_fan_alone_is_a_pseudo_multifan() {
    let g = k5_minus_e();
    let found = search_maximum_multifan(&g, 0, 1000, 1_000_000).unwrap();
    let s = PseudoMultifan {
        center: 0,
        seq: found.fan.seq.clone(),
        t: found.fan.len(),
        certificate: found.certificate.clone(),
    };
    let rep = validate_pseudo_multifan(found.triple.coloring(), &s, 100, &mut instance_rng(0, 0));
    assert!(rep.passes(), "{rep:?}");
    assert_eq!(rep.samples_checked, 100);
}

#[test]
fn duplicated_missing_color_in_the_tail_fails() {
    // r = 0 with small neighbors 1 (= s1), 2 and 3; 2 misses a color of s1
    let g = Arc::new(
        SimpleGraph::from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap(),
    );
    let id = |u, v| g.edge_id(u, v).unwrap();
    let mut cols = vec![None; g.m()];
    cols[id(0, 2)] = Some(1);
    cols[id(0, 3)] = Some(2);
    cols[id(1, 4)] = Some(3);
    cols[id(2, 5)] = Some(3);
    cols[id(3, 6)] = Some(1);
    let c = PartialColoring::from_colors(g.clone(), 3, &cols).unwrap();
    let cert = MaxFanCertificate { max_vertices: 2, upper_bound: 4, exhaustive: true, colorings_examined: 1 };
    let s = PseudoMultifan { center: 0, seq: vec![1, 2], t: 1, certificate: cert };
    let rep = validate_pseudo_multifan(&c, &s, 10, &mut instance_rng(0, 0));
    assert!(!rep.p2_base);
    assert!(!rep.passes());
}

#[test]
fn short_fan_prefixes_are_kierstead_paths() {
    let g = o_delta(6, 5);
    let mut seen = 0;
    for i in 0..20u64 {
        let anchors = triple_anchors(&g);
        let (r, s) = anchors[i as usize % anchors.len()];
        let t = random_triple(&g, r, s, 5, 10_000_000, &mut instance_rng(4, i)).unwrap();
        let f = grow_multifan(t.coloring(), r, s);
        if f.len() >= 2 {
            build_kierstead_path(t.coloring(), &[f.s(1), r, f.s(2)]).unwrap();
            seen += 1;
        }
        // a third vertex reached by a color missed on neither endpoint is refused
        let c = t.coloring();
        let m = c.missing(s).union(c.missing(r));
        for &v2 in g.neighbors(r) {
            if v2 != s && !c.color_between(r, v2).is_some_and(|x| m.contains(x)) {
                assert!(build_kierstead_path(c, &[s, r, v2]).is_err());
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn kierstead_errors_are_specific() {
    let g = k5_minus_e();
    let t = find_triple(&g, 1, |_| true).unwrap();
    let c = t.coloring();
    assert!(build_kierstead_path(c, &[t.r()]).is_err());
    assert!(build_kierstead_path(c, &[t.r(), t.s1(), t.r()]).is_err());
    // first edge must be the uncolored one
    let other = (0..3).find(|&v| v != t.r()).unwrap();
    assert!(build_kierstead_path(c, &[t.r(), other]).is_err());
    // 3 and 4 are not adjacent in K5 − e
    let s = t.s1();
    let partner = if s == 3 { 4 } else { 3 };
    let err = build_kierstead_path(c, &[t.r(), s, partner]).unwrap_err();
    assert!(matches!(err, overfull::Error::NoSuchEdge(..)));
}

#[test]
fn two_cycle_rotation() {
    // r = 0; w1 = 1 misses 2 and rw1 = 1, w2 = 2 misses 1 and rw2 = 2
    let g = Arc::new(SimpleGraph::from_edges(6, [(0, 1), (0, 2), (1, 3), (2, 4), (0, 5)]).unwrap());
    let id = |u, v| g.edge_id(u, v).unwrap();
    let mut cols = vec![None; g.m()];
    cols[id(0, 1)] = Some(1);
    cols[id(0, 2)] = Some(2);
    cols[id(1, 3)] = Some(3);
    cols[id(2, 4)] = Some(3);
    let c = PartialColoring::from_colors(g, 3, &cols).unwrap();
    let rots = find_rotations(&c, 0, &[1, 2]).unwrap();
    assert_eq!(rots.len(), 1);
    assert_eq!(rots[0].vertices.len(), 2);
    assert!(check_rotation(&c, &rots[0]));
    // alone, w1's successor leaves the set
    assert!(find_rotations(&c, 0, &[1]).is_err());
    assert!(find_rotations(&c, 0, &[]).unwrap().is_empty());
}

#[test]
fn rotations_match_an_independent_cycle_decomposition() {
    let g = o_delta(7, 6);
    let mut checked = 0;
    for i in 0..40u64 {
        let anchors = triple_anchors(&g);
        let (r, s) = anchors[i as usize % anchors.len()];
        let t = random_triple(&g, r, s, 10, 10_000_000, &mut instance_rng(8, i)).unwrap();
        let f = grow_multifan(t.coloring(), r, s);
        let Ok(n) = normalize_typical(t.coloring(), &f) else { continue };
        let c = &n.coloring;
        let ws: Vec<Vertex> = t.small_neighbors().into_iter().filter(|v| !f.seq.contains(v)).collect();
        let Ok(rots) = find_rotations(c, r, &ws) else { continue };
        // successor by scanning colors at r directly
        let succ = |w: Vertex| {
            let m = c.missing(w).as_single().unwrap();
            *ws.iter().find(|&&v| c.color_between(r, v) == Some(m)).unwrap()
        };
        let mut covered = BTreeSet::new();
        for rot in &rots {
            assert!(check_rotation(c, rot));
            let t = rot.vertices.len();
            for l in 0..t {
                assert_eq!(succ(rot.vertices[l]), rot.vertices[(l + 1) % t]);
                assert!(covered.insert(rot.vertices[l]));
            }
        }
        assert_eq!(covered, ws.iter().copied().collect());
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn lollipop_tip_on_the_fan_is_refused() {
    let g = k5_minus_e();
    let t = find_triple(&g, 50, |t| grow_multifan(t.coloring(), t.r(), t.s1()).len() == 2).unwrap();
    let n = normalize_typical(t.coloring(), &grow_multifan(t.coloring(), t.r(), t.s1())).unwrap();
    let u = (0..3).find(|&v| v != t.r()).unwrap();
    for &x in &n.fan.fan.seq {
        assert!(build_lollipop(&n.coloring, &n.fan, u, x).is_err());
    }
    assert!(lollipops(&n.coloring, &n.fan).is_empty());
}

#[test]
fn lollipop_tip_beyond_beta_is_allowed() {
    let g = o_delta(7, 6);
    let found = (0..60u64).find_map(|i| {
        let anchors = triple_anchors(&g);
        let (r, s) = anchors[i as usize % anchors.len()];
        let t = random_triple(&g, r, s, 10, 10_000_000, &mut instance_rng(12, i)).ok()?;
        let n = normalize_typical(t.coloring(), &grow_multifan(t.coloring(), r, s)).ok()?;
        let tail: Vec<Vertex> = t.small_neighbors().into_iter().filter(|v| !n.fan.fan.seq.contains(v)).collect();
        let x = *tail.first()?;
        let u = g.neighbors(r).iter().copied().find(|&u| g.degree(u) == 7 && g.has_edge(u, x))?;
        Some((n, u, x))
    });
    let (n, u, x) = found.expect("a fan short of N_{Δ−1}(r)");
    let l = build_lollipop(&n.coloring, &n.fan, u, x).unwrap();
    assert_eq!((l.u, l.x), (u, x));
}

#[test]
fn lemma_ids_parse() {
    assert_eq!("3.5a".parse::<LemmaId>().unwrap(), LemmaId::L3_5a);
    assert_eq!("L3_8".parse::<LemmaId>().unwrap(), LemmaId::L3_8);
    assert_eq!(LemmaId::L3_6e.to_string(), "3.6e");
    for id in LemmaId::ALL {
        assert_eq!(id.name().parse::<LemmaId>().unwrap(), id);
    }
    assert!(matches!("3.7".parse::<LemmaId>(), Err(overfull::Error::UnknownLemma(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Grown fans on seeded O_Δ triples are multifans, and normalizing them
    /// gives a fan that passes every typical equation.
    #[test]
    fn grown_fans_normalize(delta in 4usize..=7, seed in any::<u64>(), steps in 0usize..20) {
        let g = o_delta(delta, delta - 1);
        let anchors = triple_anchors(&g);
        let (r, s) = anchors[(seed % anchors.len() as u64) as usize];
        let t = random_triple(&g, r, s, steps, 10_000_000, &mut instance_rng(seed, 0)).unwrap();
        let f = grow_multifan(t.coloring(), r, s);
        prop_assert!(validate_multifan(t.coloring(), &f));
        prop_assert_eq!(f.seq.iter().copied().collect::<BTreeSet<_>>(), closure(t.coloring(), r, s));
        let n = normalize_typical(t.coloring(), &f).unwrap();
        prop_assert_eq!(n.fan.check(&n.coloring), Ok(()));
        // renaming colors leaves the uncolored edge and missing-set sizes alone
        for v in 0..g.n() {
            prop_assert_eq!(n.coloring.missing(v).len(), t.coloring().missing(v).len());
        }
    }
}
