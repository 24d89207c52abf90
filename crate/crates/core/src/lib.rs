//! Finite-model engine for analogical reasoning.
//!
//! Candidate analogies between a source and a target [`kb::KnowledgeDomain`]
//! are classified by how well they agree on known facts, ordered by a strict
//! preference relation, and the best ones are consulted skeptically to fill
//! gaps in the target. The [`repcheck`] module verifies, by exhaustive
//! enumeration, the properties of the choice function induced by such
//! relations.

pub mod analogy;
pub mod entailment;
pub mod formula;
pub mod kb;
pub mod preference;
pub mod repcheck;
pub mod session;
pub mod syntax;
pub mod truth;

pub use formula::{check_formula, evaluate, parse_formula, Formula, Term, Valuation};
pub use kb::{make_domain, GroundAtom, Interpretation, KnowledgeDomain, Signature};
pub use truth::TruthValue;
