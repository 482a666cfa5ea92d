//! Bundled counterexample theories.
//!
//! Each fixture pins one failing cell of the axiom survey: `fx_cp_a`
//! breaks contraposition for construction consequence on a purely strict
//! theory, and the `*_j` fixtures break reflexivity, the defeasible
//! readings of left logical equivalence and right weakening, monotony,
//! and transitivity for justified consequence. Fixtures are evaluated
//! exactly as written; none is implicitly closed under transposition.

use crate::dsl::parse;
use crate::theory::ArgumentationTheory;

pub const NAMES: [&str; 6] =
    ["fx_cp_a", "fx_ref_j", "fx_lle_j", "fx_rw_j", "fx_m_j", "fx_t_j"];

/// Source text of a bundled fixture.
pub fn fixture_text(name: &str) -> Option<&'static str> {
    match name {
        "fx_cp_a" => Some(include_str!("../fixtures/fx_cp_a.at")),
        "fx_ref_j" => Some(include_str!("../fixtures/fx_ref_j.at")),
        "fx_lle_j" => Some(include_str!("../fixtures/fx_lle_j.at")),
        "fx_rw_j" => Some(include_str!("../fixtures/fx_rw_j.at")),
        "fx_m_j" => Some(include_str!("../fixtures/fx_m_j.at")),
        "fx_t_j" => Some(include_str!("../fixtures/fx_t_j.at")),
        _ => None,
    }
}

/// Parsed bundled fixture.
pub fn fixture(name: &str) -> Option<ArgumentationTheory> {
    fixture_text(name).map(|text| parse(text).expect("bundled fixtures parse"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::serialize;
    use crate::engine::{ArgumentSet, EngineOptions};
    use crate::lang::Literal;
    use crate::theory::{Placement, Rule, RuleIdentity};
    use std::collections::BTreeSet;

    #[test]
    fn every_fixture_parses_and_round_trips() {
        for name in NAMES {
            let theory = fixture(name).unwrap_or_else(|| panic!("{name} missing"));
            let back = parse(&serialize(&theory)).unwrap();
            assert_eq!(back, theory, "{name}");
        }
    }

    #[test]
    fn cp_fixture_is_strict_and_transposition_closed() {
        let theory = fixture("fx_cp_a").unwrap();
        assert!(theory.is_strict());
        assert_eq!(theory.rules.len(), 8);
        assert_eq!(theory.kb.axioms.len(), 1);
        let before: BTreeSet<RuleIdentity> =
            theory.rules.iter().map(Rule::identity).collect();
        let after: BTreeSet<RuleIdentity> =
            theory.close_transposition().rules.iter().map(Rule::identity).collect();
        assert_eq!(before, after);
    }

    #[test]
    fn t_fixture_shape_matches_its_description() {
        let theory = fixture("fx_t_j").unwrap();
        assert_eq!(theory.defeasible_rules().count(), 3);
        assert_eq!(theory.strict_rules().count(), 1);
        assert!(theory.kb.axioms.is_empty() && theory.kb.premises.is_empty());
    }

    #[test]
    fn m_fixture_with_b_added_builds_exactly_three_arguments() {
        let theory = fixture("fx_m_j").unwrap();
        let b: Literal = "b".parse().unwrap();
        let augmented = theory.augment(&[b], Placement::Premises).unwrap();
        let args = ArgumentSet::build(&augmented, &EngineOptions::default()).unwrap();
        assert_eq!(args.len(), 3);
        let concs: BTreeSet<String> =
            args.conclusions().iter().map(|l| l.to_string()).collect();
        assert_eq!(concs, ["~a", "b", "g"].map(String::from).into_iter().collect());
    }

    #[test]
    fn lle_fixture_with_b_added_is_undercut_twice() {
        use crate::engine::{compute_attacks, AttackKind};
        let theory = fixture("fx_lle_j").unwrap();
        let b: Literal = "b".parse().unwrap();
        let augmented = theory.augment(&[b], Placement::Premises).unwrap();
        let args = ArgumentSet::build(&augmented, &EngineOptions::default()).unwrap();
        let attacks = compute_attacks(&args);
        assert_eq!(attacks.len(), 2);
        assert!(attacks.iter().all(|a| a.kind == AttackKind::Undercut));
        let attacked: BTreeSet<String> =
            attacks.iter().map(|a| args.conclusion(a.target).to_string()).collect();
        assert_eq!(attacked, ["a", "r"].map(String::from).into_iter().collect());
    }
}
