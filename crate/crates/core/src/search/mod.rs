//! Exhaustive search over maximal intersecting families.

pub mod enumerate;
pub mod raw;
pub mod verify;

pub use enumerate::{
    count_maximal_p_families, enumerate_maximal_p_families, maximal_iso_classes, IsoClass,
    SearchOptions,
};
pub use raw::{maximal_intersecting_families, raw_max_nontrivial, RawMaximum};
pub use verify::{
    verify_layer_bound, verify_layer_check, verify_main_theorem, verify_main_theorem_on,
    verify_missing_layer, verify_pair_rule, verify_twist, verify_valuable_structure, Check,
    LemmaReport, UniquenessVerdict, VerificationReport, Violation,
};
