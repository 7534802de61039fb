//! Matching theory on small simple graphs.
//!
//! * [`graph`]: representation, text format, components, vertex deletion.
//! * [`generate`]: standard families and a reproducible `G(n, p)`.
//! * [`matching`]: Edmonds' blossom algorithm and factor queries.
//! * [`criticality`]: factor-critical and near-factor-critical recognition,
//!   Tutte sets, and witness re-validation.
//! * [`oracle`]: brute-force enumeration used as ground truth.
//! * [`harness`]: exhaustive and randomized cross-checks.
//! * [`cli`]: the `nfc` command line.

pub mod cli;
pub mod criticality;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod matching;
pub mod oracle;

pub use criticality::{
    check_lemma1, is_factor_critical, is_nfc_by_definition, is_nfc_by_theorem, tutte_witness,
    CriticalityVerdict, Property, Route, StructuralCase, TutteWitness, Witness,
};
pub use graph::{components, count_odd_components, delete_vertices, ComponentDecomposition, Graph};
pub use matching::{find_near_factor, has_perfect_matching, max_matching, Matching, NearFactor};
