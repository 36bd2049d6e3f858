//! Multifans, Kierstead paths, pseudo-multifans, rotations, lollipops and
//! the lemma evaluators built on them.

mod kierstead;
mod lemmas;
mod lollipop;
mod multifan;
mod pseudo;
mod rotation;
mod transform;
mod triple;

pub use kierstead::{build_kierstead_path, kierstead_paths_from, KiersteadPath};
pub use lemmas::{check_lemma_predicates, Lemma37Stats, LemmaContext, LemmaId};
pub use lollipop::{build_lollipop, lollipops, Lollipop};
pub use multifan::{
    check_multifan, fan_to_dot, grow_multifan, inducing_structure, normalize_typical, validate_multifan,
    Induced, InducingStructure, Multifan, Normalized, TypicalMultifan,
};
pub use pseudo::{
    sample_stable_coloring, search_maximum_multifan, validate_pseudo_multifan, MaxFanCertificate, MaxFanSearch,
    PseudoMultifan, PseudoReport,
};
pub use rotation::{check_rotation, classify_rotation, find_rotations, Rotation, RotationFailure, RotationFlavor};
pub use transform::{make_2_inducing, shift, two_inducing_inverse_script, two_inducing_script, TwoInducing};
pub use triple::{ColoringTriple, TripleWitness};
