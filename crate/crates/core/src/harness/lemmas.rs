//! Lemma predicates on seeded coloring triples, and the 2-inducing
//! transformation campaign built on the same triples.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use super::instances::{o_delta_members, random_triple, triple_anchors, Instance};
use super::report::{CampaignConfig, CheckTally, VerificationReport, Witness};
use super::rng::instance_rng;
use crate::coloring::{ColoringDoc, PartialColoring};
use crate::error::{Error, Result};
use crate::fan::{
    check_multifan, make_2_inducing, normalize_typical, search_maximum_multifan, ColoringTriple, Lemma37Stats,
    LemmaContext, LemmaId, MaxFanCertificate, Multifan, TripleWitness,
};
use crate::graph::{petersen_star, ClauseOutcome, Vertex};

/// Random stable colorings drawn per pseudo-multifan.
pub const PSEUDO_SAMPLES: usize = 8;
/// Upper bound on random Kempe changes applied after the initial coloring.
pub const MAX_KEMPE_STEPS: usize = 24;
/// Colorings visited per center by the maximum-multifan search.
pub const MAX_FAN_COLORINGS: u64 = 2_000;
pub const MAX_FAN_NODES: u64 = 2_000_000;

pub const TWO_INDUCING_VERTEX_SET: &str = "lemma_3_4.vertex_set_preserved";
pub const TWO_INDUCING_TYPICAL: &str = "lemma_3_4.output_typical_two_inducing";
pub const TWO_INDUCING_INVERSE: &str = "lemma_3_4.inverse_restores_fan_edges";

/// Salt keeping the context stream apart from the triple stream.
const CONTEXT_STREAM: u64 = 1 << 40;

pub fn check_name(id: LemmaId) -> String {
    format!("lemma_{}", id.name().replace('.', "_"))
}

/// The campaign's graphs: every O_Δ shape for Δ ∈ [4, 7], then P*.
///
/// On O_Δ members every Δ-coloring of `G − e` makes `V(G)` elementary and
/// each color class misses exactly one vertex, so any two vertices missing
/// different colors are linked and most lemma hypotheses cannot hold. P*
/// has slack and reaches some of them.
pub fn lemma_instances() -> Result<Vec<Instance>> {
    let mut all = o_delta_members(4..=7, 50)?;
    all.push(Instance { label: "P*".into(), graph: Arc::new(petersen_star()) });
    Ok(all)
}

/// Maximum-multifan certificates, one per `(instance, r)`.
pub type Certificates = BTreeMap<(usize, Vertex), MaxFanCertificate>;

pub fn max_fan_certificates(instances: &[Instance]) -> Result<Certificates> {
    let jobs: Vec<(usize, Vertex)> = instances
        .iter()
        .enumerate()
        .flat_map(|(i, inst)| {
            let mut rs: Vec<Vertex> = triple_anchors(&inst.graph).into_iter().map(|(r, _)| r).collect();
            rs.dedup();
            rs.into_iter().map(move |r| (i, r))
        })
        .collect();
    jobs.par_iter()
        .map(|&(i, r)| {
            let s = search_maximum_multifan(&instances[i].graph, r, MAX_FAN_COLORINGS, MAX_FAN_NODES)?;
            Ok(((i, r), s.certificate))
        })
        .collect()
}

/// The `index`-th triple of the campaign: anchors are visited round-robin
/// over all instances, colorings come from the instance stream.
pub fn campaign_triple(
    instances: &[Instance],
    anchors: &[(usize, Vertex, Vertex)],
    cfg: &CampaignConfig,
    index: u64,
) -> Result<(usize, ColoringTriple)> {
    let (i, r, s1) = anchors[(index % anchors.len() as u64) as usize];
    let mut rng = instance_rng(cfg.seed, index);
    let steps = rng.gen_range(0..=MAX_KEMPE_STEPS);
    Ok((i, random_triple(&instances[i].graph, r, s1, steps, cfg.budget, &mut rng)?))
}

pub fn all_anchors(instances: &[Instance]) -> Vec<(usize, Vertex, Vertex)> {
    instances
        .iter()
        .enumerate()
        .flat_map(|(i, inst)| triple_anchors(&inst.graph).into_iter().map(move |(r, s)| (i, r, s)))
        .collect()
}

pub fn build_context(triple: ColoringTriple, cert: &MaxFanCertificate, cfg: &CampaignConfig, index: u64) -> Result<LemmaContext> {
    let mut rng = instance_rng(cfg.seed, CONTEXT_STREAM + index);
    LemmaContext::new(triple, true, Some(cert), PSEUDO_SAMPLES, &mut rng)
}

fn witness_of(t: &TripleWitness, index: u64, detail: &str) -> Witness {
    Witness {
        graph6: t.graph6.clone(),
        r: Some(t.r),
        s1: Some(t.s1),
        coloring: Some(t.coloring.clone()),
        stream: Some(index),
        detail: detail.to_string(),
    }
}

#[derive(Default)]
struct TripleResult {
    checks: BTreeMap<String, CheckTally>,
    l37: Lemma37Stats,
    fan_sizes: Option<(usize, usize, usize)>,
    pseudo_built: bool,
    two_inducing_ran: bool,
}

impl TripleResult {
    fn record(&mut self, name: &str, outcome: &ClauseOutcome, w: &TripleWitness, index: u64) {
        self.checks
            .entry(name.to_string())
            .or_default()
            .record(outcome, |d| witness_of(w, index, d));
    }
}

/// The 2-inducing transformation on the context's pseudo-multifan, if it
/// has one with `β > α`. Returns the three check outcomes.
pub fn two_inducing_checks(ctx: &LemmaContext) -> Option<[(&'static str, ClauseOutcome); 3]> {
    let n = ctx.normalized.as_ref()?;
    let (s, rep) = ctx.pseudo.as_ref()?;
    if !rep.passes() || n.fan.is_two_inducing() {
        return None;
    }
    let c = &n.coloring;
    let out = match make_2_inducing(s, &n.fan, c) {
        Ok(o) => o,
        Err(e) => {
            let f = ClauseOutcome::Fail(format!("make_2_inducing refused: {e}"));
            return Some([(TWO_INDUCING_VERTEX_SET, f.clone()), (TWO_INDUCING_TYPICAL, f.clone()), (TWO_INDUCING_INVERSE, f)]);
        }
    };
    let before: BTreeSet<Vertex> = s.vertices().into_iter().collect();
    let after: BTreeSet<Vertex> = out.pseudo.vertices().into_iter().collect();
    let same = ClauseOutcome::from_check(before == after, || format!("V(S) = {before:?}, V(S*) = {after:?}"));

    let new_fan = Multifan::new(out.pseudo.center, out.pseudo.seq[..out.pseudo.t].to_vec());
    let typical = match check_multifan(&out.coloring, &new_fan) {
        Err(e) => ClauseOutcome::Fail(format!("output is not a multifan: {e}")),
        Ok(()) => match normalize_typical(&out.coloring, &new_fan) {
            Ok(nn) => ClauseOutcome::from_check(nn.fan.is_two_inducing() && nn.fan.check(&nn.coloring).is_ok(), || {
                format!("output normalizes to α = {}, β = {}", nn.fan.alpha, nn.fan.beta)
            }),
            Err(e) => ClauseOutcome::Fail(format!("output is not typical: {e}")),
        },
    };

    let mut back = out.coloring.clone();
    let inverse = match back.apply_script(&out.inverse) {
        Err(e) => ClauseOutcome::Fail(format!("inverse script failed: {e}")),
        Ok(()) => {
            let edges = n.fan.fan.edges(c);
            let bad: Vec<_> = edges.iter().filter(|&&e| back.color(e) != c.color(e)).collect();
            let rs1 = c.graph().edge_id(n.fan.r(), n.fan.s(1));
            let uncolored_ok = rs1.is_some_and(|e| back.color(e).is_none());
            ClauseOutcome::from_check(bad.is_empty() && uncolored_ok, || format!("edges {bad:?} differ after the inverse"))
        }
    };
    Some([(TWO_INDUCING_VERTEX_SET, same), (TWO_INDUCING_TYPICAL, typical), (TWO_INDUCING_INVERSE, inverse)])
}

fn run_one(
    instances: &[Instance],
    anchors: &[(usize, Vertex, Vertex)],
    certs: &Certificates,
    cfg: &CampaignConfig,
    index: u64,
) -> Result<TripleResult> {
    let (i, triple) = campaign_triple(instances, anchors, cfg, index)?;
    let w = triple.witness();
    let cert = &certs[&(i, triple.r())];
    let ctx = build_context(triple, cert, cfg, index)?;
    let mut out = TripleResult::default();
    for id in LemmaId::ALL {
        out.record(&check_name(id), &ctx.evaluate(id), &w, index);
    }
    out.l37 = ctx.lemma_3_7_branches();
    out.fan_sizes = ctx.normalized.as_ref().map(|n| (n.fan.alpha, n.fan.beta, ctx.triple.small_neighbors().len()));
    out.pseudo_built = ctx.pseudo.is_some();
    if let Some(results) = two_inducing_checks(&ctx) {
        out.two_inducing_ran = true;
        for (name, o) in results {
            out.record(name, &o, &w, index);
        }
    }
    Ok(out)
}

/// `cfg.trials` triples on O_4..O_7 members; every lemma predicate on each.
pub fn run_lemma_suite(cfg: &CampaignConfig) -> Result<VerificationReport> {
    let instances = lemma_instances()?;
    let anchors = all_anchors(&instances);
    let certs = max_fan_certificates(&instances)?;
    let results: Vec<Result<TripleResult>> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|idx| run_one(&instances, &anchors, &certs, cfg, idx))
        .collect();
    let mut report = VerificationReport::new(cfg.clone());
    report.instances = cfg.trials as u64;
    let mut l37 = Lemma37Stats::default();
    let mut shapes: BTreeMap<String, u64> = BTreeMap::new();
    let (mut pseudo, mut two) = (0u64, 0u64);
    for r in results {
        let r = r?;
        report.merge_checks(r.checks);
        l37.add(&r.l37);
        if let Some((a, b, small)) = r.fan_sizes {
            *shapes.entry(format!("alpha={a},beta={b},small={small}")).or_default() += 1;
        } else {
            *shapes.entry("not_elementary".into()).or_default() += 1;
        }
        pseudo += r.pseudo_built as u64;
        two += r.two_inducing_ran as u64;
    }
    let vacuous: BTreeMap<String, f64> = LemmaId::ALL
        .iter()
        .map(|&id| {
            let name = check_name(id);
            (name.clone(), report.checks.get(&name).map_or(0.0, |t| t.vacuous_rate()))
        })
        .collect();
    report.stats.insert("lemma_3_7_branches".into(), serde_json::to_value(l37).expect("plain struct"));
    report.stats.insert("vacuous_rate".into(), serde_json::json!(vacuous));
    report.stats.insert("typical_fan_shapes".into(), serde_json::json!(shapes));
    report.stats.insert("pseudo_multifans_built".into(), serde_json::json!(pseudo));
    report.stats.insert("two_inducing_instances".into(), serde_json::json!(two));
    let certs_json: Vec<_> = certs
        .iter()
        .map(|((i, r), c)| serde_json::json!({ "instance": instances[*i].label, "r": r, "certificate": c }))
        .collect();
    report.stats.insert("max_fan_certificates".into(), serde_json::json!(certs_json));
    Ok(report)
}

/// Runs triples until `cfg.trials` of them carry a pseudo-multifan with
/// `β > α`, or `attempt_factor · cfg.trials` triples have been tried.
pub fn run_two_inducing_suite(cfg: &CampaignConfig, attempt_factor: u64) -> Result<VerificationReport> {
    let instances = lemma_instances()?;
    let anchors = all_anchors(&instances);
    let certs = max_fan_certificates(&instances)?;
    let mut report = VerificationReport::new(cfg.clone());
    let target = cfg.trials as u64;
    let mut found = 0u64;
    let mut tried = 0u64;
    let chunk = 256u64;
    while found < target && tried < attempt_factor * target.max(1) {
        let batch: Vec<Result<Option<BTreeMap<String, CheckTally>>>> = (tried..tried + chunk)
            .into_par_iter()
            .map(|idx| {
                let (i, triple) = campaign_triple(&instances, &anchors, cfg, idx)?;
                let w = triple.witness();
                let ctx = build_context(triple, &certs[&(i, w.r)], cfg, idx)?;
                Ok(two_inducing_checks(&ctx).map(|res| {
                    let mut m: BTreeMap<String, CheckTally> = BTreeMap::new();
                    for (name, o) in res {
                        m.entry(name.to_string()).or_default().record(&o, |d| witness_of(&w, idx, d));
                    }
                    m
                }))
            })
            .collect();
        for r in batch {
            tried += 1;
            if found == target {
                continue;
            }
            if let Some(m) = r? {
                found += 1;
                report.merge_checks(m);
            }
        }
    }
    report.instances = found;
    report.stats.insert("triples_tried".into(), serde_json::json!(tried));
    report.stats.insert("beta_greater_than_alpha".into(), serde_json::json!(found));
    Ok(report)
}

/// Rebuilds the triple and context of a lemma witness and re-evaluates.
pub fn replay_lemma_witness(check: &str, w: &Witness, cfg: &CampaignConfig) -> Result<ClauseOutcome> {
    let missing = || Error::Precondition("lemma witness lacks r, s1, coloring or stream".into());
    let tw = TripleWitness {
        graph6: w.graph6.clone(),
        r: w.r.ok_or_else(missing)?,
        s1: w.s1.ok_or_else(missing)?,
        coloring: w.coloring.clone().ok_or_else(missing)?,
    };
    let index = w.stream.ok_or_else(missing)?;
    let triple = tw.replay()?;
    let g = Arc::new(triple.graph().clone());
    let cert = search_maximum_multifan(&g, tw.r, MAX_FAN_COLORINGS, MAX_FAN_NODES)?.certificate;
    let ctx = build_context(triple, &cert, cfg, index)?;
    if let Some(id) = LemmaId::ALL.iter().copied().find(|&id| check_name(id) == check) {
        return Ok(ctx.evaluate(id));
    }
    let found = two_inducing_checks(&ctx).and_then(|res| res.into_iter().find(|(n, _)| *n == check));
    Ok(found.map_or(ClauseOutcome::Vacuous, |(_, o)| o))
}

/// A triple's coloring as JSON, for witnesses printed outside reports.
pub fn triple_doc(c: &PartialColoring) -> Result<ColoringDoc> {
    ColoringDoc::from_coloring(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Suite;

    fn cfg(trials: usize) -> CampaignConfig {
        let mut c = CampaignConfig::new(Suite::Lemmas);
        c.trials = trials;
        c.seed = 11;
        c
    }

    #[test]
    fn names_are_stable() {
        assert_eq!(check_name(LemmaId::L3_5a), "lemma_3_5a");
        assert_eq!(check_name(LemmaId::L3_8), "lemma_3_8");
    }

    #[test]
    fn small_campaign_is_clean_and_reproducible() {
        let a = run_lemma_suite(&cfg(40)).unwrap();
        let b = run_lemma_suite(&cfg(40)).unwrap();
        assert!(a.passed(), "{}", a.summary());
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.checks.len(), LemmaId::ALL.len() + a.checks.keys().filter(|k| k.starts_with("lemma_3_4")).count());
    }

    #[test]
    fn witness_replays_to_the_same_outcome() {
        let c = cfg(1);
        let instances = lemma_instances().unwrap();
        let anchors = all_anchors(&instances);
        let certs = max_fan_certificates(&instances).unwrap();
        let (i, triple) = campaign_triple(&instances, &anchors, &c, 5).unwrap();
        let tw = triple.witness();
        let ctx = build_context(triple, &certs[&(i, tw.r)], &c, 5).unwrap();
        let w = witness_of(&tw, 5, "");
        for id in [LemmaId::L3_1a, LemmaId::L3_2b, LemmaId::L3_6a] {
            assert_eq!(replay_lemma_witness(&check_name(id), &w, &c).unwrap(), ctx.evaluate(id));
        }
    }
}
