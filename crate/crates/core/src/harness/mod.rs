//! Enumeration and verification campaigns.

pub mod census;
pub mod enumerate;
pub mod instances;
pub mod kempe;
pub mod lemmas;
pub mod odelta;
pub mod report;
pub mod rng;
pub mod theorems;

pub use census::run_census;
pub use enumerate::{enumerate_hz_candidates, hz_candidates_from_graph6};
pub use kempe::run_kempe_suite;
pub use lemmas::{run_lemma_suite, run_two_inducing_suite};
pub use odelta::run_odelta_suite;
pub use report::{CampaignConfig, CheckTally, Suite, VerificationReport, Witness};
pub use theorems::run_theorem_suite;

use crate::error::Result;
use crate::graph::ClauseOutcome;

/// Triples tried per requested instance before the 2-inducing campaign
/// gives up looking for `β > α`.
pub const TWO_INDUCING_ATTEMPT_FACTOR: u64 = 20;

pub fn run_suite(cfg: &CampaignConfig) -> Result<VerificationReport> {
    match cfg.suite {
        Suite::Theorems => run_theorem_suite(cfg),
        Suite::Lemmas => run_lemma_suite(cfg),
        Suite::Census => run_census(cfg),
        Suite::Odelta => run_odelta_suite(cfg),
        Suite::Kempe => run_kempe_suite(cfg),
        Suite::TwoInducing => run_two_inducing_suite(cfg, TWO_INDUCING_ATTEMPT_FACTOR),
    }
}

/// Re-evaluates one check from a witness of a report made under `cfg`.
pub fn replay_witness(check: &str, w: &Witness, cfg: &CampaignConfig) -> Result<ClauseOutcome> {
    match cfg.suite {
        Suite::Theorems => theorems::replay_theorem_witness(check, w, cfg),
        Suite::Lemmas | Suite::TwoInducing => lemmas::replay_lemma_witness(check, w, cfg),
        Suite::Census => census::replay_census_witness(check, w, cfg.budget),
        Suite::Odelta => odelta::replay_odelta_witness(check, w, cfg),
        Suite::Kempe => kempe::replay_kempe_witness(check, w, cfg),
    }
}
