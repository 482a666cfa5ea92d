//! Argumentation theories: strict and defeasible rules over a knowledge
//! base split into axioms and ordinary premises.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lang::{Literal, RESERVED_ATOM_PREFIX};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    Strict,
    Defeasible,
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleKind::Strict => write!(f, "strict"),
            RuleKind::Defeasible => write!(f, "defeasible"),
        }
    }
}

/// Name of a defeasible rule. Names are literals of the language, so other
/// rules can conclude their negation (the undercut hook). Auto names use
/// the reserved atom prefix and are interchangeable for theory equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleName {
    pub literal: Literal,
    pub auto: bool,
}

impl RuleName {
    pub fn explicit(literal: Literal) -> Self {
        RuleName { literal, auto: false }
    }
}

/// An inference rule. Bodies are kept in input order for display but rule
/// identity treats them as multisets; `head` is a single literal.
///
/// Invariants (checked by [`ArgumentationTheory::new`]): the body is
/// non-empty, exactly the defeasible rules carry a name, names are positive
/// literals and pairwise distinct, ids are unique within a theory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub id: String,
    pub kind: RuleKind,
    pub body: Vec<Literal>,
    pub head: Literal,
    pub name: Option<RuleName>,
}

/// Identity of a rule: kind, body as a multiset, head.
pub type RuleIdentity = (RuleKind, Vec<Literal>, Literal);

impl Rule {
    pub fn strict(body: Vec<Literal>, head: Literal) -> Self {
        Rule {
            id: String::new(),
            kind: RuleKind::Strict,
            body,
            head,
            name: None,
        }
    }

    pub fn defeasible(body: Vec<Literal>, head: Literal) -> Self {
        Rule {
            id: String::new(),
            kind: RuleKind::Defeasible,
            body,
            head,
            name: None,
        }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn named(mut self, name: Literal) -> Self {
        self.name = Some(RuleName::explicit(name));
        self
    }

    pub fn identity(&self) -> RuleIdentity {
        let mut body = self.body.clone();
        body.sort();
        (self.kind, body, self.head.clone())
    }

    pub fn is_strict(&self) -> bool {
        self.kind == RuleKind::Strict
    }

    fn arrow(&self) -> &'static str {
        match self.kind {
            RuleKind::Strict => "->",
            RuleKind::Defeasible => "=>",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.body.iter().map(|l| l.to_string()).collect();
        match &self.name {
            Some(n) if !n.auto => {
                write!(f, "[{}]: {} {} {}", n.literal, body.join(", "), self.arrow(), self.head)
            }
            _ => write!(f, "{} {} {}", body.join(", "), self.arrow(), self.head),
        }
    }
}

/// Knowledge base: axioms (unattackable) and ordinary premises, disjoint.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnowledgeBase {
    pub axioms: BTreeSet<Literal>,
    pub premises: BTreeSet<Literal>,
}

impl KnowledgeBase {
    pub fn new(
        axioms: BTreeSet<Literal>,
        premises: BTreeSet<Literal>,
    ) -> Result<Self, TheoryError> {
        if let Some(l) = axioms.intersection(&premises).next() {
            return Err(TheoryError::OverlappingKnowledge(l.clone()));
        }
        Ok(KnowledgeBase { axioms, premises })
    }

    pub fn contains(&self, l: &Literal) -> bool {
        self.axioms.contains(l) || self.premises.contains(l)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Literal> {
        self.axioms.iter().chain(self.premises.iter())
    }
}

/// Where `augment` inserts the added literals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Placement {
    /// Ordinary premises (the default; added claims stay attackable).
    #[default]
    Premises,
    /// Axioms (keeps a strict theory strict).
    Axioms,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("literal {0} cannot be both an axiom and an ordinary premise")]
    OverlappingKnowledge(Literal),
    #[error("cannot place {literal} into {placement:?}: it is already in the other partition")]
    PlacementConflict { literal: Literal, placement: Placement },
    #[error("rule {0:?} has an empty body")]
    EmptyBody(String),
    #[error("strict rule {0:?} carries a name")]
    NamedStrictRule(String),
    #[error("rule name {0} is not a positive literal")]
    NegativeRuleName(Literal),
    #[error("rule name {0} is used by more than one rule")]
    DuplicateRuleName(Literal),
    #[error("rule id {0:?} is used by more than one rule")]
    DuplicateRuleId(String),
    #[error("rules {first:?} and {second:?} are the same rule under different names")]
    ConflictingNames { first: String, second: String },
}

/// A theory: rules plus a knowledge base. The argumentation system's
/// language is left implicit (all literals over all atoms); the naming
/// function is the `name` field of the defeasible rules.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArgumentationTheory {
    pub kb: KnowledgeBase,
    pub rules: Vec<Rule>,
}

impl ArgumentationTheory {
    /// Validates invariants, merges duplicate rules, and completes missing
    /// ids (`rN`) and defeasible names (auto, reserved prefix).
    pub fn new(kb: KnowledgeBase, rules: Vec<Rule>) -> Result<Self, TheoryError> {
        let mut merged: Vec<Rule> = Vec::with_capacity(rules.len());
        let mut by_identity: HashMap<RuleIdentity, usize> = HashMap::new();
        for rule in rules {
            if rule.body.is_empty() {
                return Err(TheoryError::EmptyBody(rule.id));
            }
            if rule.kind == RuleKind::Strict && rule.name.is_some() {
                return Err(TheoryError::NamedStrictRule(rule.id));
            }
            if let Some(name) = &rule.name {
                if !name.literal.is_positive() {
                    return Err(TheoryError::NegativeRuleName(name.literal.clone()));
                }
            }
            match by_identity.get(&rule.identity()) {
                Some(&i) => {
                    // Same rule stated twice: merge, preferring an explicit
                    // name; two different explicit names is an error.
                    let kept: &mut Rule = &mut merged[i];
                    let incoming_explicit =
                        rule.name.as_ref().map(|n| !n.auto).unwrap_or(false);
                    let kept_explicit =
                        kept.name.as_ref().map(|n| !n.auto).unwrap_or(false);
                    if incoming_explicit && kept_explicit && kept.name != rule.name {
                        return Err(TheoryError::ConflictingNames {
                            first: kept.id.clone(),
                            second: rule.id,
                        });
                    }
                    if incoming_explicit && !kept_explicit {
                        kept.name = rule.name;
                        if !rule.id.is_empty() && kept.id.is_empty() {
                            kept.id = rule.id;
                        }
                    }
                }
                None => {
                    by_identity.insert(rule.identity(), merged.len());
                    merged.push(rule);
                }
            }
        }

        // Assign missing ids, check uniqueness of the explicit ones.
        let mut ids: HashSet<String> =
            merged.iter().filter(|r| !r.id.is_empty()).map(|r| r.id.clone()).collect();
        if ids.len() != merged.iter().filter(|r| !r.id.is_empty()).count() {
            let mut seen = HashSet::new();
            for r in &merged {
                if !r.id.is_empty() && !seen.insert(r.id.clone()) {
                    return Err(TheoryError::DuplicateRuleId(r.id.clone()));
                }
            }
        }
        let mut next_id = 1usize;
        for rule in merged.iter_mut() {
            if rule.id.is_empty() {
                loop {
                    let candidate = format!("r{next_id}");
                    next_id += 1;
                    if !ids.contains(&candidate) {
                        ids.insert(candidate.clone());
                        rule.id = candidate;
                        break;
                    }
                }
            }
        }

        // Complete the naming function and check injectivity.
        let mut names: HashSet<Literal> = HashSet::new();
        for rule in merged.iter().filter(|r| r.name.is_some()) {
            let lit = rule.name.as_ref().unwrap().literal.clone();
            if !names.insert(lit.clone()) {
                return Err(TheoryError::DuplicateRuleName(lit));
            }
        }
        let mut next_name = 1usize;
        for rule in merged.iter_mut() {
            if rule.kind == RuleKind::Defeasible && rule.name.is_none() {
                loop {
                    let atom = format!("{RESERVED_ATOM_PREFIX}r{next_name}");
                    next_name += 1;
                    let lit = Literal::positive(atom).expect("reserved name atom is valid");
                    if names.insert(lit.clone()) {
                        rule.name = Some(RuleName { literal: lit, auto: true });
                        break;
                    }
                }
            }
        }

        Ok(ArgumentationTheory { kb, rules: merged })
    }

    pub fn empty() -> Self {
        ArgumentationTheory { kb: KnowledgeBase::default(), rules: Vec::new() }
    }

    /// A theory is strict when it has no defeasible rules and no ordinary
    /// premises. Strict theories admit no attacks at all.
    pub fn is_strict(&self) -> bool {
        self.kb.premises.is_empty() && self.rules.iter().all(Rule::is_strict)
    }

    pub fn strict_rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(|r| r.kind == RuleKind::Strict)
    }

    pub fn defeasible_rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(|r| r.kind == RuleKind::Defeasible)
    }

    /// Every atom mentioned anywhere: knowledge base, rule bodies, heads,
    /// rule names.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for l in self.kb.iter() {
            out.insert(l.atom().to_string());
        }
        for r in &self.rules {
            for l in &r.body {
                out.insert(l.atom().to_string());
            }
            out.insert(r.head.atom().to_string());
            if let Some(n) = &r.name {
                out.insert(n.literal.atom().to_string());
            }
        }
        out
    }

    /// Adds literals to the chosen partition. Re-adding a literal to the
    /// partition it is already in is a no-op; adding one that sits in the
    /// other partition is rejected (it would break the disjointness of
    /// axioms and premises).
    pub fn augment(&self, adds: &[Literal], placement: Placement) -> Result<Self, TheoryError> {
        let mut kb = self.kb.clone();
        for l in adds {
            match placement {
                Placement::Premises => {
                    if kb.axioms.contains(l) {
                        return Err(TheoryError::PlacementConflict {
                            literal: l.clone(),
                            placement,
                        });
                    }
                    kb.premises.insert(l.clone());
                }
                Placement::Axioms => {
                    if kb.premises.contains(l) {
                        return Err(TheoryError::PlacementConflict {
                            literal: l.clone(),
                            placement,
                        });
                    }
                    kb.axioms.insert(l.clone());
                }
            }
        }
        Ok(ArgumentationTheory { kb, rules: self.rules.clone() })
    }

    /// Union-semantics augment: an add that is already present anywhere in
    /// the knowledge base leaves the theory unchanged. Used by consequence
    /// evaluation, where K u {x} = K whenever x is already known.
    pub(crate) fn augment_union(&self, adds: &[Literal], placement: Placement) -> Self {
        let mut kb = self.kb.clone();
        for l in adds {
            if kb.contains(l) {
                continue;
            }
            match placement {
                Placement::Premises => kb.premises.insert(l.clone()),
                Placement::Axioms => kb.axioms.insert(l.clone()),
            };
        }
        ArgumentationTheory { kb, rules: self.rules.clone() }
    }

    /// Closes the strict rules under transposition and returns the closed
    /// theory. Defeasible rules and the knowledge base are untouched.
    pub fn close_transposition(&self) -> Self {
        let rules = transposition_closure(&self.rules);
        ArgumentationTheory::new(self.kb.clone(), rules)
            .expect("closing a valid theory preserves validity")
    }

    /// Structural key that forgets rule ids, body order, and the concrete
    /// identity of auto-generated names.
    pub fn canonical_key(&self) -> CanonicalTheory {
        let mut rules: BTreeSet<(RuleKind, Vec<Literal>, Literal, Option<Literal>)> =
            BTreeSet::new();
        for r in &self.rules {
            let mut body = r.body.clone();
            body.sort();
            let name = match &r.name {
                Some(n) if !n.auto => Some(n.literal.clone()),
                _ => None,
            };
            rules.insert((r.kind, body, r.head.clone(), name));
        }
        CanonicalTheory {
            axioms: self.kb.axioms.clone(),
            premises: self.kb.premises.clone(),
            rules,
        }
    }
}

// Theories compare up to rule ids, body order, and auto-name identity.
impl PartialEq for ArgumentationTheory {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}

impl Eq for ArgumentationTheory {}

/// See [`ArgumentationTheory::canonical_key`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalTheory {
    pub axioms: BTreeSet<Literal>,
    pub premises: BTreeSet<Literal>,
    pub rules: BTreeSet<(RuleKind, Vec<Literal>, Literal, Option<Literal>)>,
}

/// Least superset of `rules` whose strict part contains, for every strict
/// rule b1,...,bn -> h and every position i, the transposed rule
/// ~h, b1,...,bi-1, bi+1,...,bn -> ~bi. Idempotent; generated rules get
/// fresh ids and keep the negated head in front for readability.
pub fn transposition_closure(rules: &[Rule]) -> Vec<Rule> {
    let mut out: Vec<Rule> = rules.to_vec();
    let mut seen: HashSet<RuleIdentity> = out.iter().map(Rule::identity).collect();
    let mut next_fresh = 1usize;
    let ids: HashSet<String> = out.iter().map(|r| r.id.clone()).collect();
    let fresh_id = |n: &mut usize| loop {
        let candidate = format!("t{}", *n);
        *n += 1;
        if !ids.contains(&candidate) {
            return candidate;
        }
    };

    let mut frontier = 0usize;
    while frontier < out.len() {
        let end = out.len();
        for i in frontier..end {
            if out[i].kind != RuleKind::Strict {
                continue;
            }
            let (body, head) = (out[i].body.clone(), out[i].head.clone());
            for drop in 0..body.len() {
                let mut tbody = Vec::with_capacity(body.len());
                tbody.push(head.bar());
                for (j, l) in body.iter().enumerate() {
                    if j != drop {
                        tbody.push(l.clone());
                    }
                }
                let transposed =
                    Rule::strict(tbody, body[drop].bar()).with_id(fresh_id(&mut next_fresh));
                if seen.insert(transposed.identity()) {
                    out.push(transposed);
                }
            }
        }
        frontier = end;
    }
    out
}

/// Convenience constructors used by tests and the generators.
pub fn kb(axioms: &[Literal], premises: &[Literal]) -> Result<KnowledgeBase, TheoryError> {
    KnowledgeBase::new(axioms.iter().cloned().collect(), premises.iter().cloned().collect())
}

/// Renders the knowledge base partition of a literal, if any.
pub fn partition_of(theory: &ArgumentationTheory, l: &Literal) -> Option<Placement> {
    if theory.kb.axioms.contains(l) {
        Some(Placement::Axioms)
    } else if theory.kb.premises.contains(l) {
        Some(Placement::Premises)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lit(s: &str) -> Literal {
        s.parse().unwrap()
    }

    fn strict(body: &[&str], head: &str) -> Rule {
        Rule::strict(body.iter().map(|s| lit(s)).collect(), lit(head))
    }

    #[test]
    fn kb_partitions_must_be_disjoint() {
        let err = kb(&[lit("a")], &[lit("a")]).unwrap_err();
        assert_eq!(err, TheoryError::OverlappingKnowledge(lit("a")));
    }

    #[test]
    fn empty_bodies_are_rejected() {
        let rule = Rule::strict(vec![], lit("a"));
        let err = ArgumentationTheory::new(KnowledgeBase::default(), vec![rule]).unwrap_err();
        assert!(matches!(err, TheoryError::EmptyBody(_)));
    }

    #[test]
    fn defeasible_rules_get_fresh_reserved_names() {
        let theory = ArgumentationTheory::new(
            KnowledgeBase::default(),
            vec![
                Rule::defeasible(vec![lit("a")], lit("b")),
                Rule::defeasible(vec![lit("b")], lit("a")).named(lit("n1")),
            ],
        )
        .unwrap();
        let names: Vec<_> = theory
            .rules
            .iter()
            .map(|r| r.name.as_ref().unwrap())
            .collect();
        assert!(names[0].auto && names[0].literal.has_reserved_atom());
        assert!(!names[1].auto && names[1].literal == lit("n1"));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let err = ArgumentationTheory::new(
            KnowledgeBase::default(),
            vec![
                Rule::defeasible(vec![lit("a")], lit("b")).named(lit("n1")),
                Rule::defeasible(vec![lit("b")], lit("c")).named(lit("n1")),
            ],
        )
        .unwrap_err();
        assert_eq!(err, TheoryError::DuplicateRuleName(lit("n1")));
    }

    #[test]
    fn augment_is_idempotent_within_a_partition() {
        let theory =
            ArgumentationTheory::new(kb(&[], &[lit("a")]).unwrap(), vec![]).unwrap();
        let again = theory.augment(&[lit("a")], Placement::Premises).unwrap();
        assert_eq!(again, theory);
    }

    #[test]
    fn augment_rejects_cross_partition_adds() {
        let theory =
            ArgumentationTheory::new(kb(&[lit("a")], &[]).unwrap(), vec![]).unwrap();
        let err = theory.augment(&[lit("a")], Placement::Premises).unwrap_err();
        assert!(matches!(err, TheoryError::PlacementConflict { .. }));
    }

    #[test]
    fn augment_union_absorbs_known_literals() {
        let theory =
            ArgumentationTheory::new(kb(&[lit("a")], &[]).unwrap(), vec![]).unwrap();
        let same = theory.augment_union(&[lit("a")], Placement::Premises);
        assert_eq!(same, theory);
        let grown = theory.augment_union(&[lit("b")], Placement::Premises);
        assert!(grown.kb.premises.contains(&lit("b")));
    }

    #[test]
    fn strictness_accounts_for_premises_and_rule_kinds() {
        let strict_theory = ArgumentationTheory::new(
            kb(&[lit("c")], &[]).unwrap(),
            vec![strict(&["c"], "d")],
        )
        .unwrap();
        assert!(strict_theory.is_strict());
        assert!(!strict_theory
            .augment(&[lit("a")], Placement::Premises)
            .unwrap()
            .is_strict());
        let with_defeasible = ArgumentationTheory::new(
            kb(&[lit("c")], &[]).unwrap(),
            vec![Rule::defeasible(vec![lit("c")], lit("d"))],
        )
        .unwrap();
        assert!(!with_defeasible.is_strict());
    }

    #[test]
    fn transposition_of_a_two_literal_body() {
        let closed = transposition_closure(&[strict(&["a", "c"], "d").with_id("r1")]);
        let keys: BTreeSet<RuleIdentity> = closed.iter().map(Rule::identity).collect();
        assert_eq!(closed.len(), 3);
        assert!(keys.contains(&strict(&["~d", "c"], "~a").identity()));
        assert!(keys.contains(&strict(&["~d", "a"], "~c").identity()));
    }

    #[test]
    fn transposition_closure_is_idempotent_on_examples() {
        let rules = vec![strict(&["a", "c"], "d"), strict(&["a"], "e")];
        let once = transposition_closure(&rules);
        let twice = transposition_closure(&once);
        let a: BTreeSet<RuleIdentity> = once.iter().map(Rule::identity).collect();
        let b: BTreeSet<RuleIdentity> = twice.iter().map(Rule::identity).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn defeasible_rules_pass_through_transposition() {
        let rules = vec![Rule::defeasible(vec![lit("a")], lit("b"))];
        let closed = transposition_closure(&rules);
        assert_eq!(closed.len(), 1);
        assert_eq!(closed[0].kind, RuleKind::Defeasible);
    }

    proptest! {
        // Closure really is a closure operator: extensive, monotone on the
        // rule set, idempotent.
        #[test]
        fn transposition_closure_properties(
            bodies in proptest::collection::vec(
                (proptest::collection::vec(("[abc]", any::<bool>()), 1..3), "[abcd]", any::<bool>()),
                0..4,
            )
        ) {
            let rules: Vec<Rule> = bodies
                .into_iter()
                .map(|(body, head, pos)| {
                    Rule::strict(
                        body.into_iter()
                            .map(|(a, p)| Literal::new(a, p).unwrap())
                            .collect(),
                        Literal::new(head, pos).unwrap(),
                    )
                })
                .collect();
            let once = transposition_closure(&rules);
            let twice = transposition_closure(&once);
            let base: BTreeSet<RuleIdentity> = rules.iter().map(Rule::identity).collect();
            let a: BTreeSet<RuleIdentity> = once.iter().map(Rule::identity).collect();
            let b: BTreeSet<RuleIdentity> = twice.iter().map(Rule::identity).collect();
            prop_assert!(base.is_subset(&a));
            prop_assert_eq!(&a, &b);
        }
    }
}
