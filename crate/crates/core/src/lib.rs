//! Structured argumentation engine and axiom laboratory.
//!
//! The crate builds arguments from rule-based theories, computes attack and
//! defeat relations, evaluates Dung-style semantics, and tests which
//! closure axioms the induced consequence relations satisfy, either on a
//! fixed theory or by searching generated theories for counterexamples.

pub mod consequence;
pub mod dsl;
pub mod engine;
pub mod fixtures;
pub mod lang;
pub mod search;
pub mod semantics;
pub mod survey;
pub mod theory;

pub use lang::Literal;
pub use theory::{ArgumentationTheory, KnowledgeBase, Placement, Rule, RuleKind, TheoryError};
