use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coloring::ColoringDoc;
use crate::graph::ClauseOutcome;

pub const SCHEMA_VERSION: u32 = 1;

/// Witnesses kept per check; counts are always complete.
pub const MAX_WITNESSES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Theorems,
    Lemmas,
    Census,
    Odelta,
    Kempe,
    TwoInducing,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorems => "theorems",
            Suite::Lemmas => "lemmas",
            Suite::Census => "census",
            Suite::Odelta => "odelta",
            Suite::Kempe => "kempe",
            Suite::TwoInducing => "two-inducing",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [Suite::Theorems, Suite::Lemmas, Suite::Census, Suite::Odelta, Suite::Kempe, Suite::TwoInducing]
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?} (expected theorems, lemmas, census, odelta, kempe or two-inducing)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_n: usize,
    pub budget: u64,
    pub suite: Suite,
    #[serde(default)]
    pub allow_slow: bool,
}

impl CampaignConfig {
    pub fn new(suite: Suite) -> Self {
        CampaignConfig {
            seed: 0,
            trials: 1000,
            max_n: 9,
            budget: crate::oracle::DEFAULT_BUDGET,
            suite,
            allow_slow: false,
        }
    }
}

/// Enough to rebuild the failing instance: the graph, and for coloring-level
/// checks the triple and the instance seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub graph6: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColoringDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stream: Option<u64>,
    pub detail: String,
}

impl Witness {
    pub fn graph(graph6: String, detail: impl Into<String>) -> Self {
        Witness { graph6, r: None, s1: None, coloring: None, stream: None, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub pass: u64,
    pub vacuous: u64,
    pub fail: u64,
    /// Neither proved nor refuted within the budget.
    pub unresolved: u64,
    pub witnesses: Vec<Witness>,
}

impl CheckTally {
    pub fn record(&mut self, outcome: &ClauseOutcome, witness: impl FnOnce(&str) -> Witness) {
        match outcome {
            ClauseOutcome::Pass => self.pass += 1,
            ClauseOutcome::Vacuous => self.vacuous += 1,
            ClauseOutcome::Fail(detail) => {
                self.fail += 1;
                if self.witnesses.len() < MAX_WITNESSES {
                    self.witnesses.push(witness(detail));
                }
            }
        }
    }

    pub fn merge(&mut self, other: CheckTally) {
        self.pass += other.pass;
        self.vacuous += other.vacuous;
        self.fail += other.fail;
        self.unresolved += other.unresolved;
        let room = MAX_WITNESSES.saturating_sub(self.witnesses.len());
        self.witnesses.extend(other.witnesses.into_iter().take(room));
    }

    pub fn total(&self) -> u64 {
        self.pass + self.vacuous + self.fail + self.unresolved
    }

    pub fn vacuous_rate(&self) -> f64 {
        match self.total() {
            0 => 0.0,
            t => self.vacuous as f64 / t as f64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub config: CampaignConfig,
    pub rng: String,
    pub instances: u64,
    pub checks: BTreeMap<String, CheckTally>,
    /// Branch counts and other campaign-specific numbers.
    pub stats: BTreeMap<String, serde_json::Value>,
}

impl VerificationReport {
    pub fn new(config: CampaignConfig) -> Self {
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            config,
            rng: super::rng::RNG_NAME.to_string(),
            instances: 0,
            checks: BTreeMap::new(),
            stats: BTreeMap::new(),
        }
    }

    pub fn check(&mut self, name: &str) -> &mut CheckTally {
        self.checks.entry(name.to_string()).or_default()
    }

    pub fn merge_checks(&mut self, checks: BTreeMap<String, CheckTally>) {
        for (k, v) in checks {
            self.check(&k).merge(v);
        }
    }

    pub fn failures(&self) -> u64 {
        self.checks.values().map(|t| t.fail).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check, for terminals.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "suite {} seed {} instances {}\n",
            self.config.suite.name(),
            self.config.seed,
            self.instances
        );
        for (name, t) in &self.checks {
            out.push_str(&format!(
                "{:<40} pass {:>7} vacuous {:>7} fail {:>4} unresolved {:>4}\n",
                name, t.pass, t.vacuous, t.fail, t.unresolved
            ));
        }
        out
    }
}
