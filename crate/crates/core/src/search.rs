//! Deterministic theory generation and counterexample search.
//!
//! [`generate_theories`] produces a reproducible stream of argumentation
//! theories within size bounds: an exhaustive canonical enumeration when
//! the bounded space is small enough, and seeded structured sampling
//! otherwise. [`search_counterexample`] walks that stream looking for the
//! first theory and variable binding on which a closure axiom fails,
//! then shrinks the witness and re-verifies it.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::consequence::{
    equivalent, evaluate_axiom, rule_exists, AxiomId, AxiomInstance, Bindings, ConsequenceOptions,
    Interpretation, LabError, Relation, TheoryEvaluator, Verdict, VerdictStatus,
};
use crate::lang::{Literal, RESERVED_ATOM_PREFIX};
use crate::theory::{ArgumentationTheory, KnowledgeBase, Placement, Rule};

/// Spaces at most this large are enumerated exhaustively instead of
/// sampled.
const ENUM_CAP: u128 = 4096;

/// Size bounds and reproducibility knobs for the theory stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    /// Distinct atoms in the generated language (at least 1).
    pub max_atoms: usize,
    /// Rules per theory.
    pub max_rules: usize,
    /// Literals per rule body (at least 1).
    pub max_body: usize,
    /// Generate strict theories only: no defeasible rules, no ordinary
    /// premises, and added antecedents go to the axioms.
    pub strict_only: bool,
    /// Close every generated theory under transposition.
    pub close_transposition: bool,
    /// Maximum number of theories drawn from the stream.
    pub limit: usize,
    /// Seed for the sampling branch.
    pub seed: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_atoms: 4,
            max_rules: 6,
            max_body: 2,
            strict_only: false,
            close_transposition: false,
            limit: 10_000,
            seed: 42,
        }
    }
}

impl SearchBounds {
    /// Bounds with the hard minimums applied.
    fn normalized(&self) -> Self {
        SearchBounds {
            max_atoms: self.max_atoms.max(1),
            max_body: self.max_body.max(1),
            limit: self.limit.max(1),
            ..*self
        }
    }
}

fn atom_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("a{i}")
    }
}

/// Saturating binomial coefficient, capped just above `ENUM_CAP` so the
/// size estimate cannot overflow.
fn binom_capped(n: u128, k: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
        if acc > ENUM_CAP {
            return ENUM_CAP + 1;
        }
    }
    acc
}

/// Number of theories in the exhaustive space, capped just above
/// `ENUM_CAP` (anything larger is sampled instead).
fn enumeration_size(bounds: &SearchBounds) -> u128 {
    let literals = 2 * bounds.max_atoms as u128;
    let placements: u128 = if bounds.strict_only { 2 } else { 3 };
    let mut kb_configs: u128 = 1;
    for _ in 0..literals {
        kb_configs = kb_configs.saturating_mul(placements);
        if kb_configs > ENUM_CAP {
            return ENUM_CAP + 1;
        }
    }
    let mut bodies: u128 = 0;
    for len in 1..=bounds.max_body.min(2 * bounds.max_atoms) {
        bodies = bodies.saturating_add(binom_capped(literals, len as u128));
    }
    let kinds: u128 = if bounds.strict_only { 1 } else { 2 };
    let universe = bodies.saturating_mul(literals).saturating_mul(kinds);
    let mut rule_sets: u128 = 0;
    for k in 0..=bounds.max_rules as u128 {
        rule_sets = rule_sets.saturating_add(binom_capped(universe, k));
        if rule_sets > ENUM_CAP {
            return ENUM_CAP + 1;
        }
    }
    kb_configs.saturating_mul(rule_sets)
}

/// All literals over the first `n` generated atoms, in canonical order.
fn literal_universe(n: usize) -> Vec<Literal> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let atom = atom_name(i);
        out.push(Literal::positive(atom.clone()).expect("generated atom is valid"));
        out.push(Literal::negative(atom).expect("generated atom is valid"));
    }
    out
}

/// Non-empty subsets of `literals` up to `max_len`, smallest first, then
/// lexicographic by member indices.
fn body_universe(literals: &[Literal], max_len: usize) -> Vec<Vec<Literal>> {
    let mut out = Vec::new();
    let n = literals.len();
    for len in 1..=max_len.min(n) {
        let mut combo: Vec<usize> = (0..len).collect();
        loop {
            out.push(combo.iter().map(|&i| literals[i].clone()).collect());
            // Advance to the next lexicographic combination.
            let mut pos = len;
            while pos > 0 {
                pos -= 1;
                if combo[pos] != pos + n - len {
                    combo[pos] += 1;
                    for j in pos + 1..len {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    out
}

fn enumerate_all(bounds: &SearchBounds) -> Vec<ArgumentationTheory> {
    let literals = literal_universe(bounds.max_atoms);
    let placements = if bounds.strict_only { 2usize } else { 3 };

    let mut rule_universe: Vec<Rule> = Vec::new();
    for body in body_universe(&literals, bounds.max_body) {
        for head in &literals {
            rule_universe.push(Rule::strict(body.clone(), head.clone()));
            if !bounds.strict_only {
                rule_universe.push(Rule::defeasible(body.clone(), head.clone()));
            }
        }
    }

    // Rule subsets up to max_rules, smallest first, lexicographic within
    // a size.
    let mut rule_sets: Vec<Vec<usize>> = vec![Vec::new()];
    for len in 1..=bounds.max_rules.min(rule_universe.len()) {
        let n = rule_universe.len();
        let mut combo: Vec<usize> = (0..len).collect();
        loop {
            rule_sets.push(combo.clone());
            let mut advanced = false;
            let mut pos = len;
            while pos > 0 {
                pos -= 1;
                if combo[pos] != pos + n - len {
                    combo[pos] += 1;
                    for j in pos + 1..len {
                        combo[j] = combo[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }

    let mut out = Vec::new();
    let digits = literals.len();
    let kb_configs = placements.pow(digits as u32);
    for code in 0..kb_configs {
        let mut axioms = BTreeSet::new();
        let mut premises = BTreeSet::new();
        let mut rest = code;
        for lit in &literals {
            match rest % placements {
                1 => {
                    axioms.insert(lit.clone());
                }
                2 => {
                    premises.insert(lit.clone());
                }
                _ => {}
            }
            rest /= placements;
        }
        let kb = KnowledgeBase::new(axioms, premises).expect("distinct literals cannot overlap");
        for set in &rule_sets {
            let rules: Vec<Rule> = set.iter().map(|&i| rule_universe[i].clone()).collect();
            let theory = ArgumentationTheory::new(kb.clone(), rules)
                .expect("enumerated rules are unnamed and well formed");
            out.push(if bounds.close_transposition {
                theory.close_transposition()
            } else {
                theory
            });
        }
    }
    out
}

/// Pick from `1..=max` with weight `2^(max - k)`, favouring small values.
fn weighted_small(rng: &mut ChaCha8Rng, max: usize) -> usize {
    let max = max.clamp(1, 60);
    let total: u64 = (1u64 << max) - 1;
    let mut roll = rng.gen_range(0..total);
    for k in 1..=max {
        let weight = 1u64 << (max - k);
        if roll < weight {
            return k;
        }
        roll -= weight;
    }
    max
}

fn sample_theory(rng: &mut ChaCha8Rng, bounds: &SearchBounds) -> Option<ArgumentationTheory> {
    let n_atoms = weighted_small(rng, bounds.max_atoms);
    let literals = literal_universe(n_atoms);
    let pick_literal =
        |rng: &mut ChaCha8Rng| -> Literal { literals[rng.gen_range(0..literals.len())].clone() };

    let n_rules = rng.gen_range(0..=bounds.max_rules);
    let mut heads: Vec<Literal> = Vec::new();
    let mut used_names: BTreeSet<Literal> = BTreeSet::new();
    let mut rules: Vec<Rule> = Vec::new();
    for _ in 0..n_rules {
        let strict = bounds.strict_only || rng.gen_bool(0.5);
        let len = weighted_small(rng, bounds.max_body);
        // Bodies preferentially chain on earlier heads so arguments of
        // depth greater than one actually arise at small sizes.
        let mut body: BTreeSet<Literal> = BTreeSet::new();
        for _ in 0..len {
            if !heads.is_empty() && rng.gen_bool(0.45) {
                body.insert(heads[rng.gen_range(0..heads.len())].clone());
            } else {
                body.insert(pick_literal(rng));
            }
        }
        // Heads sometimes contradict earlier heads so attacks arise.
        let head = if !heads.is_empty() && rng.gen_bool(0.3) {
            heads[rng.gen_range(0..heads.len())].bar()
        } else {
            pick_literal(rng)
        };
        heads.push(head.clone());
        let body: Vec<Literal> = body.into_iter().collect();
        let mut rule =
            if strict { Rule::strict(body, head) } else { Rule::defeasible(body, head) };
        if !strict && rng.gen_bool(0.35) {
            // A name drawn from the atom universe makes undercuts
            // expressible by other rules.
            let name = Literal::positive(atom_name(rng.gen_range(0..n_atoms)))
                .expect("generated atom is valid");
            if used_names.insert(name.clone()) {
                rule = rule.named(name);
            }
        }
        rules.push(rule);
    }

    let mut axioms = BTreeSet::new();
    let mut premises = BTreeSet::new();
    for lit in &literals {
        if bounds.strict_only {
            if rng.gen_bool(0.4) {
                axioms.insert(lit.clone());
            }
        } else {
            let roll: f64 = rng.gen();
            if roll < 0.22 {
                axioms.insert(lit.clone());
            } else if roll < 0.45 {
                premises.insert(lit.clone());
            }
        }
    }

    let kb = KnowledgeBase::new(axioms, premises).ok()?;
    let theory = ArgumentationTheory::new(kb, rules).ok()?;
    Some(if bounds.close_transposition { theory.close_transposition() } else { theory })
}

/// A deterministic stream of theories within `bounds`, at most
/// `bounds.limit` long. Small spaces are enumerated exhaustively in
/// canonical order (knowledge-base placements outermost, rule subsets by
/// size); larger ones are sampled with a seeded generator.
pub fn generate_theories(bounds: &SearchBounds) -> Box<dyn Iterator<Item = ArgumentationTheory>> {
    let bounds = bounds.normalized();
    if enumeration_size(&bounds) <= ENUM_CAP {
        return Box::new(enumerate_all(&bounds).into_iter().take(bounds.limit));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let mut attempts = 0usize;
    Box::new(
        std::iter::from_fn(move || loop {
            attempts += 1;
            if attempts > 1000 && attempts > bounds.limit.saturating_mul(1000) {
                return None;
            }
            if let Some(theory) = sample_theory(&mut rng, &bounds) {
                return Some(theory);
            }
        })
        .take(bounds.limit),
    )
}

/// Candidate literals for schema variables: both polarities of every
/// non-reserved atom of the theory plus one fresh atom, in canonical
/// order.
pub fn binding_universe(theory: &ArgumentationTheory) -> Vec<Literal> {
    let mut atoms: BTreeSet<String> = theory
        .atoms()
        .into_iter()
        .filter(|a| !a.starts_with(RESERVED_ATOM_PREFIX))
        .collect();
    let fresh = (0..)
        .map(|i: usize| if i == 0 { "x".to_string() } else { format!("x{i}") })
        .find(|c| !atoms.contains(c))
        .expect("some fresh atom is always available");
    atoms.insert(fresh);
    let mut out = Vec::with_capacity(2 * atoms.len());
    for atom in atoms {
        out.push(Literal::positive(atom.clone()).expect("theory atoms are valid"));
        out.push(Literal::negative(atom).expect("theory atoms are valid"));
    }
    out
}

/// Scan all bindings of one axiom over one theory in canonical nested
/// order (alpha outermost) and report the first failing one. Cheap
/// rule-presence premises gate the pipeline-backed conditional checks.
pub(crate) fn scan_axiom(
    evaluator: &mut TheoryEvaluator,
    axiom: AxiomId,
    interpretation: Option<Interpretation>,
    relation: Relation,
    universe: &[Literal],
) -> Result<Option<Bindings>, LabError> {
    let theory = evaluator.theory();
    let interp = interpretation.unwrap_or(Interpretation::Defeasible);
    let follows = |ev: &mut TheoryEvaluator, adds: &[Literal], q: &Literal| {
        ev.follows(relation, adds, q)
    };
    match axiom {
        AxiomId::Ref => {
            for a in universe {
                if !follows(evaluator, std::slice::from_ref(a), a)? {
                    return Ok(Some(Bindings::unary(a.clone())));
                }
            }
        }
        AxiomId::Lle => {
            for a in universe {
                for b in universe {
                    if !equivalent(theory, a, b, interp) {
                        continue;
                    }
                    for g in universe {
                        if follows(evaluator, std::slice::from_ref(a), g)?
                            && !follows(evaluator, std::slice::from_ref(b), g)?
                        {
                            return Ok(Some(Bindings::ternary(a.clone(), b.clone(), g.clone())));
                        }
                    }
                }
            }
        }
        AxiomId::Rw => {
            for a in universe {
                for b in universe {
                    if !rule_exists(theory, a, b, interp) {
                        continue;
                    }
                    for g in universe {
                        if follows(evaluator, std::slice::from_ref(g), a)?
                            && !follows(evaluator, std::slice::from_ref(g), b)?
                        {
                            return Ok(Some(Bindings::ternary(a.clone(), b.clone(), g.clone())));
                        }
                    }
                }
            }
        }
        AxiomId::Cut => {
            for a in universe {
                for b in universe {
                    if !follows(evaluator, std::slice::from_ref(a), b)? {
                        continue;
                    }
                    let pair = [a.clone(), b.clone()];
                    for g in universe {
                        if follows(evaluator, &pair, g)?
                            && !follows(evaluator, std::slice::from_ref(a), g)?
                        {
                            return Ok(Some(Bindings::ternary(a.clone(), b.clone(), g.clone())));
                        }
                    }
                }
            }
        }
        AxiomId::Cm => {
            for a in universe {
                for b in universe {
                    if !follows(evaluator, std::slice::from_ref(a), b)? {
                        continue;
                    }
                    let pair = [a.clone(), b.clone()];
                    for g in universe {
                        if follows(evaluator, std::slice::from_ref(a), g)?
                            && !follows(evaluator, &pair, g)?
                        {
                            return Ok(Some(Bindings::ternary(a.clone(), b.clone(), g.clone())));
                        }
                    }
                }
            }
        }
        AxiomId::M => {
            for a in universe {
                for b in universe {
                    if !rule_exists(theory, a, b, interp) {
                        continue;
                    }
                    for g in universe {
                        if follows(evaluator, std::slice::from_ref(b), g)?
                            && !follows(evaluator, std::slice::from_ref(a), g)?
                        {
                            return Ok(Some(Bindings::ternary(a.clone(), b.clone(), g.clone())));
                        }
                    }
                }
            }
        }
        AxiomId::T => {
            for a in universe {
                for b in universe {
                    if !follows(evaluator, std::slice::from_ref(a), b)? {
                        continue;
                    }
                    for g in universe {
                        if follows(evaluator, std::slice::from_ref(b), g)?
                            && !follows(evaluator, std::slice::from_ref(a), g)?
                        {
                            return Ok(Some(Bindings::ternary(a.clone(), b.clone(), g.clone())));
                        }
                    }
                }
            }
        }
        AxiomId::Cp => {
            for a in universe {
                for b in universe {
                    if follows(evaluator, std::slice::from_ref(a), b)?
                        && !follows(evaluator, &[b.bar()], &a.bar())?
                    {
                        return Ok(Some(Bindings::binary(a.clone(), b.clone())));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// A failing axiom instance: theory, bindings, and the verdict that
/// re-evaluating the instance on the theory reproduces.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub theory: ArgumentationTheory,
    pub bindings: Bindings,
    pub verdict: Verdict,
}

/// Outcome of a counterexample search.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub axiom: AxiomId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interpretation: Option<Interpretation>,
    pub relation: Relation,
    pub bounds: SearchBounds,
    /// Theories fully scanned.
    pub examined: usize,
    /// Theories abandoned because a pipeline hit a resource cap.
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Evaluator options used while searching: added antecedents go to the
/// axioms when only strict theories are generated, so augmentation
/// preserves strictness.
pub(crate) fn search_options(bounds: &SearchBounds) -> ConsequenceOptions {
    ConsequenceOptions {
        placement: if bounds.strict_only { Placement::Axioms } else { Placement::Premises },
        ..ConsequenceOptions::default()
    }
}

fn instance_fails(
    theory: &ArgumentationTheory,
    instance: &AxiomInstance,
    relation: Relation,
    options: &ConsequenceOptions,
) -> bool {
    let mut evaluator = TheoryEvaluator::new(theory, *options);
    matches!(
        evaluate_axiom(&mut evaluator, instance, relation),
        Ok(v) if v.status == VerdictStatus::Fails
    )
}

/// Greedily drop rules and knowledge-base literals while the instance
/// keeps failing.
fn minimize_witness(
    theory: &ArgumentationTheory,
    instance: &AxiomInstance,
    relation: Relation,
    options: &ConsequenceOptions,
) -> ArgumentationTheory {
    let mut current = theory.clone();
    loop {
        let mut improved = false;
        for i in 0..current.rules.len() {
            let mut rules = current.rules.clone();
            rules.remove(i);
            if let Ok(candidate) = ArgumentationTheory::new(current.kb.clone(), rules) {
                if instance_fails(&candidate, instance, relation, options) {
                    current = candidate;
                    improved = true;
                    break;
                }
            }
        }
        if improved {
            continue;
        }
        let kb_literals: Vec<(bool, Literal)> = current
            .kb
            .axioms
            .iter()
            .map(|l| (true, l.clone()))
            .chain(current.kb.premises.iter().map(|l| (false, l.clone())))
            .collect();
        for (is_axiom, lit) in kb_literals {
            let mut axioms = current.kb.axioms.clone();
            let mut premises = current.kb.premises.clone();
            if is_axiom {
                axioms.remove(&lit);
            } else {
                premises.remove(&lit);
            }
            let kb = KnowledgeBase::new(axioms, premises)
                .expect("removing a literal keeps the partitions disjoint");
            let candidate = ArgumentationTheory::new(kb, current.rules.clone())
                .expect("the rules were already accepted");
            if instance_fails(&candidate, instance, relation, options) {
                current = candidate;
                improved = true;
                break;
            }
        }
        if !improved {
            return current;
        }
    }
}

/// Shrink a failing binding into a [`Witness`]: minimize the theory,
/// re-evaluate the instance on it, and keep the result only if it still
/// fails.
pub(crate) fn certify_witness(
    theory: &ArgumentationTheory,
    axiom: AxiomId,
    interpretation: Option<Interpretation>,
    relation: Relation,
    bindings: Bindings,
    options: &ConsequenceOptions,
) -> Option<Witness> {
    let instance = AxiomInstance::new(axiom, interpretation, bindings.clone()).ok()?;
    let minimized = minimize_witness(theory, &instance, relation, options);
    let mut check = TheoryEvaluator::new(&minimized, *options);
    let verdict = evaluate_axiom(&mut check, &instance, relation).ok()?;
    (verdict.status == VerdictStatus::Fails)
        .then_some(Witness { theory: minimized, bindings, verdict })
}

/// Search the bounded theory stream for the first failing instance of
/// `axiom` under `relation`, trying every binding of the schema
/// variables over each theory's atoms plus one fresh atom. The witness,
/// if any, is shrunk greedily and re-verified before being reported.
pub fn search_counterexample(
    axiom: AxiomId,
    interpretation: Option<Interpretation>,
    relation: Relation,
    bounds: &SearchBounds,
) -> SearchReport {
    let bounds = bounds.normalized();
    let interpretation = if axiom.interpreted() { interpretation } else { None };
    let options = search_options(&bounds);
    let mut examined = 0usize;
    let mut skipped = 0usize;
    let mut witness = None;
    for theory in generate_theories(&bounds) {
        let universe = binding_universe(&theory);
        let mut evaluator = TheoryEvaluator::new(&theory, options);
        match scan_axiom(&mut evaluator, axiom, interpretation, relation, &universe) {
            Err(_) => skipped += 1,
            Ok(None) => examined += 1,
            Ok(Some(bindings)) => {
                examined += 1;
                if let Some(found) =
                    certify_witness(&theory, axiom, interpretation, relation, bindings, &options)
                {
                    witness = Some(found);
                    break;
                }
            }
        }
    }
    SearchReport { axiom, interpretation, relation, bounds, examined, skipped, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::CanonicalTheory;

    fn keys(bounds: &SearchBounds) -> Vec<CanonicalTheory> {
        generate_theories(bounds).map(|t| t.canonical_key()).collect()
    }

    #[test]
    fn minimum_bounds_enumerate_nine_theories() {
        let bounds = SearchBounds { max_atoms: 1, max_rules: 0, ..SearchBounds::default() };
        let all = keys(&bounds);
        assert_eq!(all.len(), 9);
        let distinct: BTreeSet<_> = all.into_iter().collect();
        assert_eq!(distinct.len(), 9);
    }

    #[test]
    fn one_atom_one_rule_enumerates_the_full_space() {
        let bounds = SearchBounds { max_atoms: 1, max_rules: 1, ..SearchBounds::default() };
        // 9 knowledge bases times (1 empty set + 12 singleton rule sets).
        let all = keys(&bounds);
        assert_eq!(all.len(), 117);
        let distinct: BTreeSet<_> = all.into_iter().collect();
        assert_eq!(distinct.len(), 117);
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let bounds = SearchBounds { limit: 40, ..SearchBounds::default() };
        assert_eq!(keys(&bounds), keys(&bounds));
        let reseeded = SearchBounds { seed: 7, ..bounds };
        assert_ne!(keys(&bounds), keys(&reseeded));
    }

    #[test]
    fn strict_only_streams_contain_only_strict_theories() {
        let bounds = SearchBounds {
            max_atoms: 3,
            max_rules: 4,
            strict_only: true,
            limit: 60,
            ..SearchBounds::default()
        };
        let mut count = 0;
        for theory in generate_theories(&bounds) {
            assert!(theory.is_strict());
            count += 1;
        }
        assert_eq!(count, 60);
    }

    #[test]
    fn closed_streams_are_transposition_closed() {
        let bounds =
            SearchBounds { close_transposition: true, limit: 25, ..SearchBounds::default() };
        for theory in generate_theories(&bounds) {
            assert_eq!(theory, theory.close_transposition());
        }
    }

    #[test]
    fn reflexivity_has_no_construction_witness() {
        let bounds =
            SearchBounds { max_atoms: 2, max_rules: 2, limit: 150, ..SearchBounds::default() };
        let report =
            search_counterexample(AxiomId::Ref, None, Relation::Construction, &bounds);
        assert!(report.witness.is_none());
        assert_eq!(report.examined + report.skipped, 150);
    }

    #[test]
    fn contraposition_witness_is_found_verified_and_minimal() {
        let bounds =
            SearchBounds { max_atoms: 2, max_rules: 2, limit: 400, ..SearchBounds::default() };
        let report = search_counterexample(AxiomId::Cp, None, Relation::Construction, &bounds);
        let witness = report.witness.expect("contraposition fails somewhere in 400 theories");
        assert_eq!(witness.verdict.status, VerdictStatus::Fails);

        let instance =
            AxiomInstance::new(AxiomId::Cp, None, witness.bindings.clone()).unwrap();
        let options = search_options(&bounds);
        assert!(instance_fails(&witness.theory, &instance, Relation::Construction, &options));

        // Minimality: removing any single rule or knowledge-base literal
        // repairs the instance.
        for i in 0..witness.theory.rules.len() {
            let mut rules = witness.theory.rules.clone();
            rules.remove(i);
            let candidate =
                ArgumentationTheory::new(witness.theory.kb.clone(), rules).unwrap();
            assert!(!instance_fails(&candidate, &instance, Relation::Construction, &options));
        }
        for lit in witness.theory.kb.iter() {
            let mut axioms = witness.theory.kb.axioms.clone();
            let mut premises = witness.theory.kb.premises.clone();
            axioms.remove(lit);
            premises.remove(lit);
            let kb = KnowledgeBase::new(axioms, premises).unwrap();
            let candidate =
                ArgumentationTheory::new(kb, witness.theory.rules.clone()).unwrap();
            assert!(!instance_fails(&candidate, &instance, Relation::Construction, &options));
        }
    }

    #[test]
    fn justified_transitivity_witness_found_at_default_bounds() {
        let report =
            search_counterexample(AxiomId::T, None, Relation::Justified, &SearchBounds::default());
        let witness = report.witness.expect("transitivity fails under the justified relation");
        assert_eq!(witness.verdict.status, VerdictStatus::Fails);
        let instance = AxiomInstance::new(AxiomId::T, None, witness.bindings.clone()).unwrap();
        let options = search_options(&SearchBounds::default());
        assert!(instance_fails(&witness.theory, &instance, Relation::Justified, &options));
    }

    #[test]
    fn strict_only_reflexivity_justified_has_no_witness() {
        let bounds = SearchBounds {
            max_atoms: 2,
            max_rules: 3,
            strict_only: true,
            limit: 300,
            ..SearchBounds::default()
        };
        let report = search_counterexample(AxiomId::Ref, None, Relation::Justified, &bounds);
        assert!(report.witness.is_none());
    }

    #[test]
    fn strict_interpretation_right_weakening_justified_has_no_witness() {
        let bounds = SearchBounds { limit: 800, ..SearchBounds::default() };
        let report = search_counterexample(
            AxiomId::Rw,
            Some(Interpretation::Strict),
            Relation::Justified,
            &bounds,
        );
        assert!(report.witness.is_none());
    }

    #[test]
    fn binding_universe_adds_one_fresh_atom() {
        let theory = crate::dsl::parse("axiom a.\ndefeasible a => b.\n").unwrap();
        let universe = binding_universe(&theory);
        let atoms: BTreeSet<&str> = universe.iter().map(|l| l.atom()).collect();
        // a, b, the auto rule name is reserved and excluded, plus fresh x.
        assert_eq!(atoms, BTreeSet::from(["a", "b", "x"]));
        assert_eq!(universe.len(), 6);
        assert!(universe.windows(2).all(|w| w[0] < w[1]));
    }
}
