//! Induced consequence relations and the closure-axiom laboratory.
//!
//! A theory induces two relations between a set of added premises X and a
//! literal y: construction consequence (some argument of the theory
//! augmented with X concludes y) and justified consequence (y is among
//! the justified conclusions of the augmented theory under the chosen
//! semantics). Closure axioms such as Cut or Cautious Monotony are
//! schemata over these relations; this module instantiates and evaluates
//! them on a fixed theory, caching one evaluation pipeline per distinct
//! premise set. The rationality postulates (closure under strict rules,
//! direct and indirect consistency) are checked here as well.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::engine::{
    compute_attacks, compute_defeats, defeat_edges, ArgumentSet, EngineError, EngineOptions,
    PreferenceOrdering,
};
use crate::lang::Literal;
use crate::semantics::{
    justified_conclusions, DefeatGraph, JustificationMode, SemanticsError, SemanticsOptions,
};
use crate::theory::{ArgumentationTheory, Placement, RuleKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LabError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// Which induced relation an axiom is read over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Construction,
    Justified,
}

impl Relation {
    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Construction => "|~a",
            Relation::Justified => "|~j",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Construction => write!(f, "construction"),
            Relation::Justified => write!(f, "justified"),
        }
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "construction" | "a" | "|~a" => Ok(Relation::Construction),
            "justified" | "j" | "|~j" => Ok(Relation::Justified),
            other => Err(format!("unknown relation {other:?} (use 'construction' or 'justified')")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConsequenceOptions {
    /// Partition receiving added premises.
    pub placement: Placement,
    /// With the guard on, X |~ y also holds whenever y already follows
    /// from the unaugmented theory.
    pub guard: bool,
    pub mode: JustificationMode,
    pub engine: EngineOptions,
    pub semantics: SemanticsOptions,
}

impl Default for ConsequenceOptions {
    fn default() -> Self {
        ConsequenceOptions {
            placement: Placement::Premises,
            guard: false,
            mode: JustificationMode::default(),
            engine: EngineOptions::default(),
            semantics: SemanticsOptions::default(),
        }
    }
}

#[derive(Default)]
struct Entry {
    construction: Option<Result<Rc<BTreeSet<Literal>>, LabError>>,
    justified: Option<Result<Rc<BTreeSet<Literal>>, LabError>>,
}

/// Evaluates consequence queries against one theory, memoizing per
/// distinct set of added premises and per relation.
pub struct TheoryEvaluator<'t> {
    theory: &'t ArgumentationTheory,
    options: ConsequenceOptions,
    entries: HashMap<Vec<Literal>, Entry>,
    pipelines: usize,
}

impl<'t> TheoryEvaluator<'t> {
    pub fn new(theory: &'t ArgumentationTheory, options: ConsequenceOptions) -> Self {
        TheoryEvaluator { theory, options, entries: HashMap::new(), pipelines: 0 }
    }

    pub fn theory(&self) -> &'t ArgumentationTheory {
        self.theory
    }

    pub fn options(&self) -> &ConsequenceOptions {
        &self.options
    }

    /// Number of argument-construction pipelines actually run (cache
    /// misses), a proxy for work done.
    pub fn pipelines_run(&self) -> usize {
        self.pipelines
    }

    fn key(adds: &[Literal]) -> Vec<Literal> {
        let mut k = adds.to_vec();
        k.sort();
        k.dedup();
        k
    }

    fn build_args(&mut self, key: &[Literal]) -> Result<ArgumentSet, EngineError> {
        let augmented = self.theory.augment_union(key, self.options.placement);
        self.pipelines += 1;
        ArgumentSet::build(&augmented, &self.options.engine)
    }

    /// Conclusions of all arguments of the augmented theory.
    pub fn construction_set(
        &mut self,
        adds: &[Literal],
    ) -> Result<Rc<BTreeSet<Literal>>, LabError> {
        let key = Self::key(adds);
        if let Some(cached) = self.entries.get(&key).and_then(|e| e.construction.clone()) {
            return cached;
        }
        let computed = self
            .build_args(&key)
            .map(|args| Rc::new(args.conclusions()))
            .map_err(LabError::from);
        self.entries.entry(key).or_default().construction = Some(computed.clone());
        computed
    }

    /// Justified conclusions of the augmented theory under the configured
    /// mode.
    pub fn justified_set(&mut self, adds: &[Literal]) -> Result<Rc<BTreeSet<Literal>>, LabError> {
        let key = Self::key(adds);
        if let Some(cached) = self.entries.get(&key).and_then(|e| e.justified.clone()) {
            return cached;
        }
        let computed = self.compute_justified(&key);
        self.entries.entry(key).or_default().justified = Some(computed.clone());
        computed
    }

    fn compute_justified(&mut self, key: &[Literal]) -> Result<Rc<BTreeSet<Literal>>, LabError> {
        let args = self.build_args(key)?;
        let attacks = compute_attacks(&args);
        let defeats = compute_defeats(&attacks, &PreferenceOrdering::empty());
        let graph = DefeatGraph::new(args.len(), defeat_edges(&defeats));
        let just = justified_conclusions(&args, &graph, self.options.mode, &self.options.semantics)?;
        Ok(Rc::new(just))
    }

    fn set_for(
        &mut self,
        relation: Relation,
        adds: &[Literal],
    ) -> Result<Rc<BTreeSet<Literal>>, LabError> {
        match relation {
            Relation::Construction => self.construction_set(adds),
            Relation::Justified => self.justified_set(adds),
        }
    }

    /// Does `adds |~ query` hold under the relation?
    pub fn follows(
        &mut self,
        relation: Relation,
        adds: &[Literal],
        query: &Literal,
    ) -> Result<bool, LabError> {
        if self.set_for(relation, adds)?.contains(query) {
            return Ok(true);
        }
        if self.options.guard && self.set_for(relation, &[])?.contains(query) {
            return Ok(true);
        }
        Ok(false)
    }
}

/// One-shot construction consequence: does some argument of the theory
/// plus `adds` conclude `query`?
pub fn follows_construction(
    theory: &ArgumentationTheory,
    adds: &[Literal],
    query: &Literal,
    options: &ConsequenceOptions,
) -> Result<bool, LabError> {
    TheoryEvaluator::new(theory, *options).follows(Relation::Construction, adds, query)
}

/// One-shot justified consequence: is `query` justified in the theory
/// plus `adds`?
pub fn follows_justified(
    theory: &ArgumentationTheory,
    adds: &[Literal],
    query: &Literal,
    options: &ConsequenceOptions,
) -> Result<bool, LabError> {
    TheoryEvaluator::new(theory, *options).follows(Relation::Justified, adds, query)
}

/// The eight closure axioms of the laboratory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AxiomId {
    /// Reflexivity: alpha |~ alpha.
    Ref,
    /// Left logical equivalence: from equivalent alpha, beta and
    /// alpha |~ gamma, infer beta |~ gamma.
    #[serde(rename = "LLE")]
    Lle,
    /// Right weakening: from a rule alpha to beta and gamma |~ alpha,
    /// infer gamma |~ beta.
    #[serde(rename = "RW")]
    Rw,
    /// Cut: from alpha and beta |~ gamma and alpha |~ beta, infer
    /// alpha |~ gamma.
    Cut,
    /// Cautious monotony: from alpha |~ beta and alpha |~ gamma, infer
    /// alpha and beta |~ gamma.
    #[serde(rename = "CM")]
    Cm,
    /// Monotony: from a rule alpha to beta and beta |~ gamma, infer
    /// alpha |~ gamma.
    M,
    /// Transitivity: from alpha |~ beta and beta |~ gamma, infer
    /// alpha |~ gamma.
    T,
    /// Contraposition: from alpha |~ beta, infer the negation of beta |~
    /// the negation of alpha.
    #[serde(rename = "CP")]
    Cp,
}

impl AxiomId {
    pub const ALL: [AxiomId; 8] = [
        AxiomId::Ref,
        AxiomId::Lle,
        AxiomId::Rw,
        AxiomId::Cut,
        AxiomId::Cm,
        AxiomId::M,
        AxiomId::T,
        AxiomId::Cp,
    ];

    /// Number of distinct literals the schema binds.
    pub fn arity(&self) -> usize {
        match self {
            AxiomId::Ref => 1,
            AxiomId::Cp => 2,
            _ => 3,
        }
    }

    /// Whether the schema mentions an object-level rule or equivalence,
    /// which must then be read strictly or defeasibly.
    pub fn interpreted(&self) -> bool {
        matches!(self, AxiomId::Lle | AxiomId::Rw | AxiomId::M)
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AxiomId::Ref => "Ref",
            AxiomId::Lle => "LLE",
            AxiomId::Rw => "RW",
            AxiomId::Cut => "Cut",
            AxiomId::Cm => "CM",
            AxiomId::M => "M",
            AxiomId::T => "T",
            AxiomId::Cp => "CP",
        };
        write!(f, "{s}")
    }
}

impl FromStr for AxiomId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ref" => Ok(AxiomId::Ref),
            "lle" => Ok(AxiomId::Lle),
            "rw" => Ok(AxiomId::Rw),
            "cut" => Ok(AxiomId::Cut),
            "cm" => Ok(AxiomId::Cm),
            "m" => Ok(AxiomId::M),
            "t" => Ok(AxiomId::T),
            "cp" => Ok(AxiomId::Cp),
            other => Err(format!(
                "unknown axiom {other:?} (use Ref, LLE, RW, Cut, CM, M, T, or CP)"
            )),
        }
    }
}

/// Reading of an object-level rule premise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Interpretation {
    /// The rule must be strict.
    Strict,
    /// A rule of either kind will do.
    Defeasible,
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interpretation::Strict => write!(f, "strict"),
            Interpretation::Defeasible => write!(f, "defeasible"),
        }
    }
}

impl FromStr for Interpretation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "strict" => Ok(Interpretation::Strict),
            "defeasible" => Ok(Interpretation::Defeasible),
            other => Err(format!("unknown interpretation {other:?} (use strict or defeasible)")),
        }
    }
}

/// Literals bound to the schema variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Bindings {
    pub alpha: Literal,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Literal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Literal>,
}

impl Bindings {
    pub fn unary(alpha: Literal) -> Self {
        Bindings { alpha, beta: None, gamma: None }
    }

    pub fn binary(alpha: Literal, beta: Literal) -> Self {
        Bindings { alpha, beta: Some(beta), gamma: None }
    }

    pub fn ternary(alpha: Literal, beta: Literal, gamma: Literal) -> Self {
        Bindings { alpha, beta: Some(beta), gamma: Some(gamma) }
    }

    pub fn to_map(&self) -> std::collections::BTreeMap<&'static str, Literal> {
        let mut m = std::collections::BTreeMap::new();
        m.insert("alpha", self.alpha.clone());
        if let Some(b) = &self.beta {
            m.insert("beta", b.clone());
        }
        if let Some(g) = &self.gamma {
            m.insert("gamma", g.clone());
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("axiom {axiom} needs a {role} binding")]
    MissingBinding { axiom: AxiomId, role: &'static str },
}

/// A closure axiom with bound variables, ready to evaluate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomInstance {
    pub axiom: AxiomId,
    /// Only meaningful for the interpreted axioms (LLE, RW, M); those
    /// default to the defeasible reading when unset.
    pub interpretation: Option<Interpretation>,
    pub bindings: Bindings,
}

/// One premise of an instantiated axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Premise {
    /// `antecedents |~ consequent` under the relation being tested.
    Conditional { antecedents: Vec<Literal>, consequent: Literal },
    /// A single-bodied rule from `from` to `to` exists in the theory.
    RuleExists { from: Literal, to: Literal, interpretation: Interpretation },
    /// Rules both ways exist, of the same kind (both strict under the
    /// strict interpretation).
    Equivalent { a: Literal, b: Literal, interpretation: Interpretation },
}

/// The consequent conditional of an instantiated axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conditional {
    pub antecedents: Vec<Literal>,
    pub consequent: Literal,
}

impl AxiomInstance {
    pub fn new(
        axiom: AxiomId,
        interpretation: Option<Interpretation>,
        bindings: Bindings,
    ) -> Result<Self, InstanceError> {
        if axiom.arity() >= 2 && bindings.beta.is_none() {
            return Err(InstanceError::MissingBinding { axiom, role: "beta" });
        }
        if axiom.arity() >= 3 && bindings.gamma.is_none() {
            return Err(InstanceError::MissingBinding { axiom, role: "gamma" });
        }
        let interpretation = if axiom.interpreted() { interpretation } else { None };
        Ok(AxiomInstance { axiom, interpretation, bindings })
    }

    pub fn effective_interpretation(&self) -> Interpretation {
        self.interpretation.unwrap_or(Interpretation::Defeasible)
    }

    fn alpha(&self) -> Literal {
        self.bindings.alpha.clone()
    }

    fn beta(&self) -> Literal {
        self.bindings.beta.clone().expect("validated at construction")
    }

    fn gamma(&self) -> Literal {
        self.bindings.gamma.clone().expect("validated at construction")
    }

    /// Premises in schema order.
    pub fn premises(&self) -> Vec<Premise> {
        let interp = self.effective_interpretation();
        match self.axiom {
            AxiomId::Ref => vec![],
            AxiomId::Lle => vec![
                Premise::Equivalent { a: self.alpha(), b: self.beta(), interpretation: interp },
                Premise::Conditional { antecedents: vec![self.alpha()], consequent: self.gamma() },
            ],
            AxiomId::Rw => vec![
                Premise::RuleExists { from: self.alpha(), to: self.beta(), interpretation: interp },
                Premise::Conditional { antecedents: vec![self.gamma()], consequent: self.alpha() },
            ],
            AxiomId::Cut => vec![
                Premise::Conditional {
                    antecedents: vec![self.alpha(), self.beta()],
                    consequent: self.gamma(),
                },
                Premise::Conditional { antecedents: vec![self.alpha()], consequent: self.beta() },
            ],
            AxiomId::Cm => vec![
                Premise::Conditional { antecedents: vec![self.alpha()], consequent: self.beta() },
                Premise::Conditional { antecedents: vec![self.alpha()], consequent: self.gamma() },
            ],
            AxiomId::M => vec![
                Premise::RuleExists { from: self.alpha(), to: self.beta(), interpretation: interp },
                Premise::Conditional { antecedents: vec![self.beta()], consequent: self.gamma() },
            ],
            AxiomId::T => vec![
                Premise::Conditional { antecedents: vec![self.alpha()], consequent: self.beta() },
                Premise::Conditional { antecedents: vec![self.beta()], consequent: self.gamma() },
            ],
            AxiomId::Cp => vec![Premise::Conditional {
                antecedents: vec![self.alpha()],
                consequent: self.beta(),
            }],
        }
    }

    pub fn conclusion(&self) -> Conditional {
        match self.axiom {
            AxiomId::Ref => Conditional { antecedents: vec![self.alpha()], consequent: self.alpha() },
            AxiomId::Lle => Conditional { antecedents: vec![self.beta()], consequent: self.gamma() },
            AxiomId::Rw => Conditional { antecedents: vec![self.gamma()], consequent: self.beta() },
            AxiomId::Cut => Conditional { antecedents: vec![self.alpha()], consequent: self.gamma() },
            AxiomId::Cm => Conditional {
                antecedents: vec![self.alpha(), self.beta()],
                consequent: self.gamma(),
            },
            AxiomId::M => Conditional { antecedents: vec![self.alpha()], consequent: self.gamma() },
            AxiomId::T => Conditional { antecedents: vec![self.alpha()], consequent: self.gamma() },
            AxiomId::Cp => Conditional {
                antecedents: vec![self.beta().bar()],
                consequent: self.alpha().bar(),
            },
        }
    }
}

/// Does the theory contain a single-bodied rule `from` to `to` compatible
/// with the interpretation?
pub fn rule_exists(
    theory: &ArgumentationTheory,
    from: &Literal,
    to: &Literal,
    interpretation: Interpretation,
) -> bool {
    theory.rules.iter().any(|r| {
        r.body.len() == 1
            && &r.body[0] == from
            && &r.head == to
            && (interpretation == Interpretation::Defeasible || r.kind == RuleKind::Strict)
    })
}

/// Are `a` and `b` inter-derivable by a pair of single-bodied rules of
/// the same kind (both strict under the strict interpretation)?
pub fn equivalent(
    theory: &ArgumentationTheory,
    a: &Literal,
    b: &Literal,
    interpretation: Interpretation,
) -> bool {
    let kinds = |from: &Literal, to: &Literal| -> BTreeSet<RuleKind> {
        theory
            .rules
            .iter()
            .filter(|r| r.body.len() == 1 && &r.body[0] == from && &r.head == to)
            .map(|r| r.kind)
            .collect()
    };
    let forward = kinds(a, b);
    let backward = kinds(b, a);
    match interpretation {
        Interpretation::Strict => {
            forward.contains(&RuleKind::Strict) && backward.contains(&RuleKind::Strict)
        }
        Interpretation::Defeasible => forward.intersection(&backward).next().is_some(),
    }
}

fn premise_holds(
    evaluator: &mut TheoryEvaluator,
    relation: Relation,
    premise: &Premise,
) -> Result<bool, LabError> {
    Ok(match premise {
        Premise::Conditional { antecedents, consequent } => {
            evaluator.follows(relation, antecedents, consequent)?
        }
        Premise::RuleExists { from, to, interpretation } => {
            rule_exists(evaluator.theory(), from, to, *interpretation)
        }
        Premise::Equivalent { a, b, interpretation } => {
            equivalent(evaluator.theory(), a, b, *interpretation)
        }
    })
}

fn render_premise(premise: &Premise, relation: Relation) -> String {
    match premise {
        Premise::Conditional { antecedents, consequent } => {
            let xs: Vec<String> = antecedents.iter().map(|l| l.to_string()).collect();
            format!("{} {} {consequent}", xs.join(", "), relation.symbol())
        }
        Premise::RuleExists { from, to, interpretation } => match interpretation {
            Interpretation::Strict => format!("strict rule {from} -> {to} present"),
            Interpretation::Defeasible => format!("rule {from} -> {to} present (either kind)"),
        },
        Premise::Equivalent { a, b, interpretation } => match interpretation {
            Interpretation::Strict => format!("{a} and {b} strictly inter-derivable"),
            Interpretation::Defeasible => format!("{a} and {b} inter-derivable (same kind)"),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictStatus {
    /// Premises and conclusion hold.
    Holds,
    /// Some premise fails, so the instance says nothing.
    Vacuous,
    /// Premises hold but the conclusion does not: a counterexample.
    Fails,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictStatus::Holds => write!(f, "holds"),
            VerdictStatus::Vacuous => write!(f, "vacuous"),
            VerdictStatus::Fails => write!(f, "fails"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PremiseCheck {
    pub rendered: String,
    pub holds: bool,
}

/// Outcome of evaluating one axiom instance on one theory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub premises: Vec<PremiseCheck>,
    /// Rendered conclusion conditional and whether it held; `None` when
    /// the instance was vacuous.
    pub conclusion: Option<PremiseCheck>,
}

/// Evaluates an instance: all premises, then (if they hold) the
/// conclusion.
pub fn evaluate_axiom(
    evaluator: &mut TheoryEvaluator,
    instance: &AxiomInstance,
    relation: Relation,
) -> Result<Verdict, LabError> {
    let mut premises = Vec::new();
    let mut all = true;
    for p in instance.premises() {
        let holds = premise_holds(evaluator, relation, &p)?;
        premises.push(PremiseCheck { rendered: render_premise(&p, relation), holds });
        all &= holds;
    }
    if !all {
        return Ok(Verdict { status: VerdictStatus::Vacuous, premises, conclusion: None });
    }
    let c = instance.conclusion();
    let conc = Premise::Conditional { antecedents: c.antecedents, consequent: c.consequent };
    let holds = premise_holds(evaluator, relation, &conc)?;
    Ok(Verdict {
        status: if holds { VerdictStatus::Holds } else { VerdictStatus::Fails },
        premises,
        conclusion: Some(PremiseCheck { rendered: render_premise(&conc, relation), holds }),
    })
}

/// Closes a set of literals under the strict rules of the theory.
pub fn strict_closure(
    theory: &ArgumentationTheory,
    base: &BTreeSet<Literal>,
) -> BTreeSet<Literal> {
    let mut out = base.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for r in theory.strict_rules() {
            if !out.contains(&r.head) && r.body.iter().all(|l| out.contains(l)) {
                out.insert(r.head.clone());
                changed = true;
            }
        }
    }
    out
}

fn directly_consistent(set: &BTreeSet<Literal>) -> bool {
    set.iter().all(|l| !set.contains(&l.bar()))
}

/// Rationality postulates, checked extension by extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PostulateReport {
    pub extensions_checked: usize,
    /// Every extension's conclusions are closed under the strict rules.
    pub closure: bool,
    /// No extension concludes both a literal and its negation.
    pub direct_consistency: bool,
    /// No extension's strict closure is inconsistent.
    pub indirect_consistency: bool,
}

impl PostulateReport {
    pub fn all_hold(&self) -> bool {
        self.closure && self.direct_consistency && self.indirect_consistency
    }
}

/// Checks the postulates over the extension family of the given
/// semantics.
pub fn check_postulates(
    theory: &ArgumentationTheory,
    kind: crate::semantics::SemanticsKind,
    options: &ConsequenceOptions,
) -> Result<PostulateReport, LabError> {
    let args = ArgumentSet::build(theory, &options.engine)?;
    let attacks = compute_attacks(&args);
    let defeats = compute_defeats(&attacks, &PreferenceOrdering::empty());
    let graph = DefeatGraph::new(args.len(), defeat_edges(&defeats));
    let family = crate::semantics::extensions(&graph, kind, &options.semantics)?;

    let mut report = PostulateReport {
        extensions_checked: family.len(),
        closure: true,
        direct_consistency: true,
        indirect_consistency: true,
    };
    for extension in &family {
        let concs = crate::semantics::extension_conclusions(&args, extension);
        let closed = strict_closure(theory, &concs);
        report.closure &= closed == concs;
        report.direct_consistency &= directly_consistent(&concs);
        report.indirect_consistency &= directly_consistent(&closed);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use crate::semantics::SemanticsKind;

    fn lit(s: &str) -> Literal {
        s.parse().unwrap()
    }

    fn lits(xs: &[&str]) -> Vec<Literal> {
        xs.iter().map(|s| lit(s)).collect()
    }

    fn set(xs: &[&str]) -> BTreeSet<Literal> {
        xs.iter().map(|s| lit(s)).collect()
    }

    #[test]
    fn strict_closure_chains_through_rules() {
        let theory = parse("strict a -> b.\nstrict b, c -> d.\ndefeasible d => e.\n").unwrap();
        assert_eq!(strict_closure(&theory, &set(&["a", "c"])), set(&["a", "b", "c", "d"]));
        assert_eq!(strict_closure(&theory, &BTreeSet::new()), BTreeSet::new());
    }

    #[test]
    fn construction_consequence_is_derivability() {
        let theory = parse("defeasible a => b.\n").unwrap();
        let opts = ConsequenceOptions::default();
        assert!(follows_construction(&theory, &lits(&["a"]), &lit("b"), &opts).unwrap());
        assert!(follows_construction(&theory, &lits(&["a"]), &lit("a"), &opts).unwrap());
        assert!(!follows_construction(&theory, &[], &lit("b"), &opts).unwrap());
        assert!(!follows_construction(&theory, &lits(&["b"]), &lit("a"), &opts).unwrap());
    }

    #[test]
    fn justified_consequence_respects_defeat() {
        // The axiom ~a wins against an added premise a.
        let theory = parse("axiom ~a.\n").unwrap();
        let opts = ConsequenceOptions::default();
        assert!(follows_construction(&theory, &lits(&["a"]), &lit("a"), &opts).unwrap());
        assert!(!follows_justified(&theory, &lits(&["a"]), &lit("a"), &opts).unwrap());
        assert!(follows_justified(&theory, &lits(&["a"]), &lit("~a"), &opts).unwrap());
    }

    #[test]
    fn guard_falls_back_to_the_base_theory() {
        let theory = parse("premise b.\n").unwrap();
        let no_guard = ConsequenceOptions::default();
        let guard = ConsequenceOptions { guard: true, ..Default::default() };
        // Adding ~b destroys b's justification; the guard restores the
        // conditional through the unaugmented theory.
        assert!(!follows_justified(&theory, &lits(&["~b"]), &lit("b"), &no_guard).unwrap());
        assert!(follows_justified(&theory, &lits(&["~b"]), &lit("b"), &guard).unwrap());
    }

    #[test]
    fn axiom_placement_keeps_added_premises_unattackable() {
        let theory = parse("premise ~a.\n").unwrap();
        let axioms = ConsequenceOptions { placement: Placement::Axioms, ..Default::default() };
        assert!(follows_justified(&theory, &lits(&["a"]), &lit("a"), &axioms).unwrap());
        assert!(!follows_justified(&theory, &lits(&["a"]), &lit("~a"), &axioms).unwrap());
    }

    #[test]
    fn evaluator_caches_identical_premise_sets() {
        let theory = parse("defeasible a => b.\n").unwrap();
        let mut ev = TheoryEvaluator::new(&theory, ConsequenceOptions::default());
        assert!(ev.follows(Relation::Construction, &lits(&["a"]), &lit("b")).unwrap());
        assert!(ev.follows(Relation::Construction, &lits(&["a"]), &lit("a")).unwrap());
        // Same premise set in a different order and with repeats.
        assert!(ev.follows(Relation::Construction, &lits(&["a", "a"]), &lit("b")).unwrap());
        assert_eq!(ev.pipelines_run(), 1);
        assert!(!ev.follows(Relation::Construction, &lits(&["b"]), &lit("a")).unwrap());
        assert_eq!(ev.pipelines_run(), 2);
    }

    #[test]
    fn engine_limits_surface_as_errors() {
        let theory = parse("strict a -> b.\nstrict b -> c.\n").unwrap();
        let opts = ConsequenceOptions {
            engine: EngineOptions { max_arguments: 1 },
            ..Default::default()
        };
        let err = follows_construction(&theory, &lits(&["a"]), &lit("c"), &opts).unwrap_err();
        assert_eq!(err, LabError::Engine(EngineError::ArgumentLimitExceeded(1)));
    }

    #[test]
    fn rule_premises_distinguish_interpretations() {
        let theory = parse("strict a -> b.\ndefeasible c => d.\n").unwrap();
        assert!(rule_exists(&theory, &lit("a"), &lit("b"), Interpretation::Strict));
        assert!(rule_exists(&theory, &lit("a"), &lit("b"), Interpretation::Defeasible));
        assert!(!rule_exists(&theory, &lit("c"), &lit("d"), Interpretation::Strict));
        assert!(rule_exists(&theory, &lit("c"), &lit("d"), Interpretation::Defeasible));
        assert!(!rule_exists(&theory, &lit("b"), &lit("a"), Interpretation::Defeasible));
    }

    #[test]
    fn equivalence_needs_both_directions_of_one_kind() {
        let one_way = parse("strict a -> b.\n").unwrap();
        assert!(!equivalent(&one_way, &lit("a"), &lit("b"), Interpretation::Defeasible));

        let mixed = parse("strict a -> b.\ndefeasible b => a.\n").unwrap();
        assert!(!equivalent(&mixed, &lit("a"), &lit("b"), Interpretation::Strict));
        assert!(!equivalent(&mixed, &lit("a"), &lit("b"), Interpretation::Defeasible));

        let strict_pair = parse("strict a -> b.\nstrict b -> a.\n").unwrap();
        assert!(equivalent(&strict_pair, &lit("a"), &lit("b"), Interpretation::Strict));
        assert!(equivalent(&strict_pair, &lit("a"), &lit("b"), Interpretation::Defeasible));

        let defeasible_pair = parse("defeasible a => b.\ndefeasible b => a.\n").unwrap();
        assert!(!equivalent(&defeasible_pair, &lit("a"), &lit("b"), Interpretation::Strict));
        assert!(equivalent(&defeasible_pair, &lit("a"), &lit("b"), Interpretation::Defeasible));
    }

    #[test]
    fn reflexivity_fails_on_justified_consequence_with_a_contrary_axiom() {
        let theory = parse("axiom ~a.\n").unwrap();
        let instance =
            AxiomInstance::new(AxiomId::Ref, None, Bindings::unary(lit("a"))).unwrap();
        let mut ev = TheoryEvaluator::new(&theory, ConsequenceOptions::default());
        let just = evaluate_axiom(&mut ev, &instance, Relation::Justified).unwrap();
        assert_eq!(just.status, VerdictStatus::Fails);
        let cons = evaluate_axiom(&mut ev, &instance, Relation::Construction).unwrap();
        assert_eq!(cons.status, VerdictStatus::Holds);
    }

    #[test]
    fn contraposition_fails_even_on_a_strict_theory() {
        let theory = parse("strict a -> b.\n").unwrap();
        let instance =
            AxiomInstance::new(AxiomId::Cp, None, Bindings::binary(lit("a"), lit("b"))).unwrap();
        let mut ev = TheoryEvaluator::new(&theory, ConsequenceOptions::default());
        for relation in [Relation::Construction, Relation::Justified] {
            let verdict = evaluate_axiom(&mut ev, &instance, relation).unwrap();
            assert_eq!(verdict.status, VerdictStatus::Fails, "{relation}");
            assert_eq!(verdict.premises.len(), 1);
            assert!(verdict.premises[0].holds);
            assert_eq!(
                verdict.conclusion.as_ref().unwrap().rendered,
                format!("~b {} ~a", relation.symbol())
            );
        }
    }

    #[test]
    fn unmet_premises_make_an_instance_vacuous() {
        let theory = parse("defeasible a => b.\n").unwrap();
        let instance = AxiomInstance::new(
            AxiomId::Lle,
            Some(Interpretation::Defeasible),
            Bindings::ternary(lit("a"), lit("b"), lit("c")),
        )
        .unwrap();
        let mut ev = TheoryEvaluator::new(&theory, ConsequenceOptions::default());
        let verdict = evaluate_axiom(&mut ev, &instance, Relation::Construction).unwrap();
        assert_eq!(verdict.status, VerdictStatus::Vacuous);
        assert!(verdict.conclusion.is_none());
    }

    #[test]
    fn missing_bindings_are_rejected() {
        let err = AxiomInstance::new(AxiomId::Cut, None, Bindings::unary(lit("a"))).unwrap_err();
        assert_eq!(err, InstanceError::MissingBinding { axiom: AxiomId::Cut, role: "beta" });
    }

    #[test]
    fn transposition_restores_the_postulates() {
        let theory = parse("premise a.\npremise b.\nstrict a -> c.\nstrict b -> ~c.\n").unwrap();
        let opts = ConsequenceOptions::default();

        // Unclosed: no argument attacks any other, so every argument is
        // grounded-accepted and c clashes with ~c.
        let before = check_postulates(&theory, SemanticsKind::Grounded, &opts).unwrap();
        assert!(before.closure);
        assert!(!before.direct_consistency);
        assert!(!before.indirect_consistency);

        let closed = theory.close_transposition();
        for kind in [SemanticsKind::Grounded, SemanticsKind::Preferred] {
            let report = check_postulates(&closed, kind, &opts).unwrap();
            assert!(report.all_hold(), "{kind:?}: {report:?}");
            assert!(report.extensions_checked >= 1);
        }
    }
}
