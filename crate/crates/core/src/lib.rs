//! Exact model and maximal-cone census for the genus-2 Dolgachev–Nikulin–Voisin
//! Mori fan.
//!
//! - [`triple`]: the order-6 shift/involution action on integer triples.
//! - [`families`]: the explicit families of regular type-P models.
//! - [`declared`]: counts taken as inputs from a config file.
//! - [`cone`]: orbit-length aggregation into maximal-cone counts.
//! - [`closure`]: breadth-first closure of labelled graphs under moves,
//!   deduplicated up to isomorphism.
//! - [`claims`]: the arithmetic claims format and evaluator.
//! - [`verify`]: the end-to-end run behind `morifan verify`.

pub mod claims;
pub mod closure;
pub mod cone;
pub mod declared;
pub mod families;
pub mod report;
pub mod triple;
pub mod verify;

pub use claims::{audit, evaluate, parse_claims, AuditReport, Claim, Verdict};
pub use closure::{canonical_graph, closure, iso, LabeledGraph, MoveOperator};
pub use cone::{build_census, p_cone_count, t_cone_count, total_census, CensusReport, ModelRecord};
pub use declared::{interval_case_count, load_declared, t_flop_case_count, DeclaredCensus, DeclaredEntry, RangeCase};
pub use families::{regular_models, FamilyId, RegularModel};
pub use triple::{apply, canonical, involution, orbit, shift, GroupElement, OrbitRecord, Triple};
pub use verify::{run_default_verification, run_full_verification, VerificationReport};
