//! Argument construction and the attack/defeat relations.
//!
//! Arguments are finite derivation trees: a premise argument for every
//! knowledge-base literal, and a rule application on top of subarguments
//! matching the rule body position by position. Construction is
//! non-circular (no conclusion repeats along a root-to-leaf path), which
//! keeps the set finite without losing any conclusion or any attack
//! surface. Attacks come in three forms: undermining an ordinary premise,
//! rebutting a defeasible conclusion, and undercutting a defeasible rule
//! by denying its name.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::lang::Literal;
use crate::theory::{ArgumentationTheory, Rule, RuleKind};

/// Index of an argument within its [`ArgumentSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ArgId(pub usize);

impl fmt::Display for ArgId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("argument construction exceeded the limit of {0} arguments")]
    ArgumentLimitExceeded(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    /// Hard cap on the number of arguments constructed for one theory.
    pub max_arguments: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { max_arguments: 100_000 }
    }
}

/// Interned literal: `2 * atom + sign`, so negation is `id ^ 1`.
type LitId = usize;

const fn bar(l: LitId) -> LitId {
    l ^ 1
}

/// Fixed-width bitset over the interned literal space.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn for_space(n_bits: usize) -> Self {
        Bits(vec![0; n_bits.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }

    fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
}

/// Structural identity of an argument. Rule applications are canonical:
/// where a rule body repeats a literal, the children filling those
/// positions are in non-decreasing id order, so permuting interchangeable
/// children does not create a second argument.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum ArgKey {
    Premise(LitId),
    App { rule: usize, children: Vec<ArgId> },
}

#[derive(Debug, Clone)]
struct ArgNode {
    key: ArgKey,
    conc: LitId,
    /// All subarguments, self included, sorted.
    subs: Vec<ArgId>,
    /// Conclusions of all subarguments, self included.
    sub_concs: Bits,
}

#[derive(Debug)]
struct CompiledRule {
    kind: RuleKind,
    body: Vec<LitId>,
    /// For each body position, the closest earlier position holding the
    /// same literal (the canonicalization constraint partner).
    prev_same: Vec<Option<usize>>,
    head: LitId,
    name: Option<LitId>,
}

/// All arguments of a theory, with interning tables and a by-conclusion
/// index. Construction is deterministic: premise arguments in knowledge
/// base order, then saturation rounds in rule order.
#[derive(Debug)]
pub struct ArgumentSet {
    theory: ArgumentationTheory,
    atoms: Vec<String>,
    atom_ids: HashMap<String, usize>,
    rules: Vec<CompiledRule>,
    nodes: Vec<ArgNode>,
    by_conc: Vec<Vec<ArgId>>,
    key_index: HashMap<ArgKey, ArgId>,
    lit_space: usize,
    /// Ordinary premises (the underminable part of the knowledge base).
    kp: Bits,
}

impl ArgumentSet {
    pub fn build(
        theory: &ArgumentationTheory,
        options: &EngineOptions,
    ) -> Result<Self, EngineError> {
        let theory = theory.clone();
        let atoms: Vec<String> = theory.atoms().into_iter().collect();
        let atom_ids: HashMap<String, usize> =
            atoms.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        let lit_space = 2 * atoms.len();

        let intern = |l: &Literal| -> LitId {
            2 * atom_ids[l.atom()] + usize::from(!l.is_positive())
        };

        let rules = theory
            .rules
            .iter()
            .map(|r| {
                let body: Vec<LitId> = r.body.iter().map(intern).collect();
                let prev_same = (0..body.len())
                    .map(|i| (0..i).rev().find(|&j| body[j] == body[i]))
                    .collect();
                CompiledRule {
                    kind: r.kind,
                    prev_same,
                    head: intern(&r.head),
                    name: r.name.as_ref().map(|n| intern(&n.literal)),
                    body,
                }
            })
            .collect();

        let mut kp = Bits::for_space(lit_space);
        for l in &theory.kb.premises {
            kp.set(intern(l));
        }

        let mut set = ArgumentSet {
            rules,
            nodes: Vec::new(),
            by_conc: vec![Vec::new(); lit_space],
            key_index: HashMap::new(),
            lit_space,
            kp,
            atoms,
            atom_ids,
            theory,
        };

        for l in set.theory.kb.iter().cloned().collect::<Vec<_>>() {
            let lit = 2 * set.atom_ids[l.atom()] + usize::from(!l.is_positive());
            set.add_premise(lit, options)?;
        }
        set.saturate(options)?;
        Ok(set)
    }

    fn add_premise(&mut self, lit: LitId, options: &EngineOptions) -> Result<(), EngineError> {
        if self.nodes.len() >= options.max_arguments {
            return Err(EngineError::ArgumentLimitExceeded(options.max_arguments));
        }
        let id = ArgId(self.nodes.len());
        let mut sub_concs = Bits::for_space(self.lit_space);
        sub_concs.set(lit);
        let key = ArgKey::Premise(lit);
        self.nodes.push(ArgNode { key: key.clone(), conc: lit, subs: vec![id], sub_concs });
        self.by_conc[lit].push(id);
        self.key_index.insert(key, id);
        Ok(())
    }

    /// Saturation with per-round snapshots: a round only combines
    /// arguments that existed when it started, and every new application
    /// must use at least one argument from the previous round.
    fn saturate(&mut self, options: &EngineOptions) -> Result<(), EngineError> {
        let mut new_lo = 0usize;
        loop {
            let hi = self.nodes.len();
            for rule in 0..self.rules.len() {
                let mut children = Vec::with_capacity(self.rules[rule].body.len());
                self.apply_rule(rule, 0, false, &mut children, new_lo, hi, options)?;
            }
            if self.nodes.len() == hi {
                return Ok(());
            }
            new_lo = hi;
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn apply_rule(
        &mut self,
        rule: usize,
        pos: usize,
        has_new: bool,
        children: &mut Vec<ArgId>,
        new_lo: usize,
        hi: usize,
        options: &EngineOptions,
    ) -> Result<(), EngineError> {
        if pos == self.rules[rule].body.len() {
            if has_new {
                self.try_add(rule, children, options)?;
            }
            return Ok(());
        }
        let lit = self.rules[rule].body[pos];
        let floor = self.rules[rule].prev_same[pos].map(|p| children[p]);
        for i in 0..self.by_conc[lit].len() {
            let c = self.by_conc[lit][i];
            if c.0 >= hi {
                break;
            }
            if floor.is_some_and(|f| c < f) {
                continue;
            }
            children.push(c);
            self.apply_rule(rule, pos + 1, has_new || c.0 >= new_lo, children, new_lo, hi, options)?;
            children.pop();
        }
        Ok(())
    }

    fn try_add(
        &mut self,
        rule: usize,
        children: &[ArgId],
        options: &EngineOptions,
    ) -> Result<(), EngineError> {
        let head = self.rules[rule].head;
        // Non-circularity: the new conclusion must not already occur
        // anywhere inside the chosen subarguments.
        if children.iter().any(|c| self.nodes[c.0].sub_concs.get(head)) {
            return Ok(());
        }
        let key = ArgKey::App { rule, children: children.to_vec() };
        if self.key_index.contains_key(&key) {
            return Ok(());
        }
        if self.nodes.len() >= options.max_arguments {
            return Err(EngineError::ArgumentLimitExceeded(options.max_arguments));
        }
        let id = ArgId(self.nodes.len());
        let mut subs: Vec<ArgId> =
            children.iter().flat_map(|c| self.nodes[c.0].subs.iter().copied()).collect();
        subs.push(id);
        subs.sort_unstable();
        subs.dedup();
        let mut sub_concs = Bits::for_space(self.lit_space);
        for c in children {
            sub_concs.union_with(&self.nodes[c.0].sub_concs);
        }
        sub_concs.set(head);
        self.nodes.push(ArgNode { key: key.clone(), conc: head, subs, sub_concs });
        self.by_conc[head].push(id);
        self.key_index.insert(key, id);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = ArgId> {
        (0..self.nodes.len()).map(ArgId)
    }

    pub fn theory(&self) -> &ArgumentationTheory {
        &self.theory
    }

    fn literal(&self, l: LitId) -> Literal {
        Literal::new(&self.atoms[l / 2], l % 2 == 0).expect("interned atoms are valid")
    }

    fn lit_id(&self, l: &Literal) -> Option<LitId> {
        self.atom_ids.get(l.atom()).map(|&a| 2 * a + usize::from(!l.is_positive()))
    }

    pub fn conclusion(&self, id: ArgId) -> Literal {
        self.literal(self.nodes[id.0].conc)
    }

    pub fn conclusions(&self) -> BTreeSet<Literal> {
        (0..self.lit_space)
            .filter(|&l| !self.by_conc[l].is_empty())
            .map(|l| self.literal(l))
            .collect()
    }

    pub fn has_conclusion(&self, l: &Literal) -> bool {
        self.lit_id(l).is_some_and(|l| !self.by_conc[l].is_empty())
    }

    pub fn args_concluding(&self, l: &Literal) -> &[ArgId] {
        self.lit_id(l).map(|l| self.by_conc[l].as_slice()).unwrap_or(&[])
    }

    /// All subarguments of `id`, self included, in id order.
    pub fn subarguments(&self, id: ArgId) -> &[ArgId] {
        &self.nodes[id.0].subs
    }

    /// Knowledge-base literals the argument rests on.
    pub fn premises(&self, id: ArgId) -> BTreeSet<Literal> {
        self.nodes[id.0]
            .subs
            .iter()
            .filter_map(|s| match self.nodes[s.0].key {
                ArgKey::Premise(l) => Some(self.literal(l)),
                ArgKey::App { .. } => None,
            })
            .collect()
    }

    pub fn is_premise_argument(&self, id: ArgId) -> bool {
        matches!(self.nodes[id.0].key, ArgKey::Premise(_))
    }

    /// The rule applied at the root, if any.
    pub fn top_rule(&self, id: ArgId) -> Option<&Rule> {
        match self.nodes[id.0].key {
            ArgKey::Premise(_) => None,
            ArgKey::App { rule, .. } => Some(&self.theory.rules[rule]),
        }
    }

    /// Nested rendering: `[p]` for premises, `[sub, ... => head]` for rule
    /// applications (`->` when the top rule is strict).
    pub fn render(&self, id: ArgId) -> String {
        match &self.nodes[id.0].key {
            ArgKey::Premise(l) => format!("[{}]", self.literal(*l)),
            ArgKey::App { rule, children } => {
                let parts: Vec<String> = children.iter().map(|c| self.render(*c)).collect();
                let arrow = match self.rules[*rule].kind {
                    RuleKind::Strict => "->",
                    RuleKind::Defeasible => "=>",
                };
                format!("[{} {arrow} {}]", parts.join(", "), self.literal(self.rules[*rule].head))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AttackKind {
    Undermine,
    Rebut,
    Undercut,
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttackKind::Undermine => write!(f, "undermine"),
            AttackKind::Rebut => write!(f, "rebut"),
            AttackKind::Undercut => write!(f, "undercut"),
        }
    }
}

/// One attack, remembering the subargument it lands on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Attack {
    pub attacker: ArgId,
    pub target: ArgId,
    /// The subargument of `target` the attack is aimed at: a premise
    /// argument for undermining, a defeasibly-topped application for
    /// rebutting and undercutting.
    pub locus: ArgId,
    pub kind: AttackKind,
}

/// Every attack of the theory. An argument is attacked through any of its
/// subarguments: ordinary premises can be undermined by arguments for the
/// contrary of the premise, defeasible conclusions rebutted by arguments
/// for the contrary of the conclusion, and defeasible rule applications
/// undercut by arguments for the contrary of the rule name. Axioms are
/// unattackable, and strict applications can be neither rebutted nor
/// undercut, so a strict theory has no attacks at all.
pub fn compute_attacks(args: &ArgumentSet) -> Vec<Attack> {
    let mut out = Vec::new();
    for target in args.ids() {
        for &locus in &args.nodes[target.0].subs {
            match &args.nodes[locus.0].key {
                ArgKey::Premise(p) => {
                    if args.kp.get(*p) {
                        for &attacker in &args.by_conc[bar(*p)] {
                            out.push(Attack { attacker, target, locus, kind: AttackKind::Undermine });
                        }
                    }
                }
                ArgKey::App { rule, .. } => {
                    if args.rules[*rule].kind == RuleKind::Defeasible {
                        let conc = args.nodes[locus.0].conc;
                        for &attacker in &args.by_conc[bar(conc)] {
                            out.push(Attack { attacker, target, locus, kind: AttackKind::Rebut });
                        }
                        let name = args.rules[*rule].name.expect("defeasible rules are named");
                        for &attacker in &args.by_conc[bar(name)] {
                            out.push(Attack { attacker, target, locus, kind: AttackKind::Undercut });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Strict preference between arguments. Empty by default, in which case
/// every attack succeeds as a defeat.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PreferenceOrdering {
    strict: BTreeSet<(ArgId, ArgId)>,
}

impl PreferenceOrdering {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.strict.is_empty()
    }

    /// Records `weaker < stronger`.
    pub fn prefer(&mut self, weaker: ArgId, stronger: ArgId) {
        self.strict.insert((weaker, stronger));
    }

    pub fn strictly_less(&self, a: ArgId, b: ArgId) -> bool {
        self.strict.contains(&(a, b))
    }
}

/// The attacks that succeed under the ordering: undercuts always do,
/// underminings and rebuttals unless the attacker is strictly weaker than
/// the subargument it is aimed at.
pub fn compute_defeats(attacks: &[Attack], ordering: &PreferenceOrdering) -> Vec<Attack> {
    attacks
        .iter()
        .filter(|a| {
            a.kind == AttackKind::Undercut || !ordering.strictly_less(a.attacker, a.locus)
        })
        .copied()
        .collect()
}

/// Distinct defeat edges, collapsing multiple loci between one pair.
pub fn defeat_edges(defeats: &[Attack]) -> BTreeSet<(ArgId, ArgId)> {
    defeats.iter().map(|a| (a.attacker, a.target)).collect()
}

/// Graphviz rendering of the attack graph, one node per argument, edge
/// style by attack kind.
pub fn to_dot(args: &ArgumentSet, attacks: &[Attack]) -> String {
    let mut out = String::from("digraph attacks {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n");
    for id in args.ids() {
        out.push_str(&format!("  a{} [label=\"{id}: {}\"];\n", id.0, args.conclusion(id)));
    }
    for at in attacks {
        let style = match at.kind {
            AttackKind::Undermine => "dashed",
            AttackKind::Rebut => "solid",
            AttackKind::Undercut => "dotted",
        };
        out.push_str(&format!(
            "  a{} -> a{} [style={style}, label=\"{}\"];\n",
            at.attacker.0, at.target.0, at.kind
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    fn build(text: &str) -> ArgumentSet {
        ArgumentSet::build(&parse(text).unwrap(), &EngineOptions::default()).unwrap()
    }

    fn concs(args: &ArgumentSet) -> BTreeSet<String> {
        args.conclusions().iter().map(|l| l.to_string()).collect()
    }

    #[test]
    fn premise_arguments_cover_the_knowledge_base() {
        let args = build("axiom a.\npremise ~b.\n");
        assert_eq!(args.len(), 2);
        assert_eq!(concs(&args), ["a", "~b"].map(String::from).into_iter().collect());
    }

    #[test]
    fn chains_of_rules_stack() {
        let args = build("premise a.\nstrict a -> b.\ndefeasible b => c.\n");
        assert_eq!(args.len(), 3);
        let c = args.args_concluding(&"c".parse().unwrap())[0];
        assert_eq!(args.render(c), "[[[a] -> b] => c]");
        assert_eq!(args.subarguments(c).len(), 3);
        assert_eq!(args.premises(c), ["a".parse().unwrap()].into_iter().collect());
        assert_eq!(args.top_rule(c).unwrap().kind, RuleKind::Defeasible);
    }

    #[test]
    fn circular_derivations_are_not_arguments() {
        // b => a => b would repeat b on the path.
        let args = build("premise b.\ndefeasible b => a.\ndefeasible a => b.\n");
        assert_eq!(args.len(), 2);
        assert_eq!(concs(&args), ["b", "a"].map(String::from).into_iter().collect());
    }

    #[test]
    fn multiple_derivations_of_one_conclusion_are_distinct_arguments() {
        let args = build("premise a.\npremise c.\ndefeasible c => a.\nstrict a -> b.\n");
        // a twice (premise and via c), so b twice as well, plus [c].
        assert_eq!(args.len(), 5);
        assert_eq!(args.args_concluding(&"a".parse().unwrap()).len(), 2);
        assert_eq!(args.args_concluding(&"b".parse().unwrap()).len(), 2);
    }

    #[test]
    fn repeated_body_literals_do_not_multiply_by_permutation() {
        // Two arguments conclude a; the pair positions are interchangeable,
        // so a, a -> b yields C(2,2) + 2 = 3 applications, not 4.
        let args = build("premise a.\npremise c.\ndefeasible c => a.\nstrict a, a -> b.\n");
        assert_eq!(args.args_concluding(&"b".parse().unwrap()).len(), 3);
    }

    #[test]
    fn unknown_atoms_are_simply_absent() {
        let args = build("premise a.\n");
        assert!(!args.has_conclusion(&"zz".parse().unwrap()));
        assert!(args.args_concluding(&"~zz".parse().unwrap()).is_empty());
    }

    #[test]
    fn argument_cap_is_enforced() {
        let theory = parse("premise a.\npremise b.\nstrict a -> c.\n").unwrap();
        let err = ArgumentSet::build(&theory, &EngineOptions { max_arguments: 2 }).unwrap_err();
        assert_eq!(err, EngineError::ArgumentLimitExceeded(2));
        assert!(ArgumentSet::build(&theory, &EngineOptions { max_arguments: 3 }).is_ok());
    }

    #[test]
    fn axioms_cannot_be_undermined() {
        let args = build("axiom a.\npremise ~a.\n");
        let attacks = compute_attacks(&args);
        // Only [a] undermines [~a]; the axiom is safe.
        assert_eq!(attacks.len(), 1);
        assert_eq!(attacks[0].kind, AttackKind::Undermine);
        assert_eq!(args.conclusion(attacks[0].attacker), "a".parse().unwrap());
        assert_eq!(args.conclusion(attacks[0].target), "~a".parse().unwrap());
        assert_eq!(attacks[0].locus, attacks[0].target);
    }

    #[test]
    fn undermining_reaches_every_superargument() {
        let args = build("premise a.\naxiom ~a.\nstrict a -> b.\n");
        let attacks = compute_attacks(&args);
        // [~a] undermines [a] and [[a] -> b], both at the premise locus.
        assert_eq!(attacks.len(), 2);
        assert!(attacks.iter().all(|at| at.kind == AttackKind::Undermine));
        assert!(attacks.iter().all(|at| args.conclusion(at.locus) == "a".parse().unwrap()));
    }

    #[test]
    fn rebuttal_requires_a_defeasible_top_at_the_locus() {
        let args = build("premise a.\npremise b.\ndefeasible a => c.\nstrict b -> ~c.\n");
        let attacks = compute_attacks(&args);
        // The strict ~c application cannot be rebutted, so the only attack
        // is [[b] -> ~c] rebutting [[a] => c].
        assert_eq!(attacks.len(), 1);
        assert_eq!(attacks[0].kind, AttackKind::Rebut);
        assert_eq!(args.conclusion(attacks[0].attacker), "~c".parse().unwrap());
        assert_eq!(args.conclusion(attacks[0].target), "c".parse().unwrap());
    }

    #[test]
    fn undercuts_deny_the_rule_name() {
        let args = build("premise a.\npremise c.\ndefeasible [n1]: a => b.\nstrict c -> ~n1.\n");
        let attacks = compute_attacks(&args);
        assert_eq!(attacks.len(), 1);
        assert_eq!(attacks[0].kind, AttackKind::Undercut);
        assert_eq!(args.conclusion(attacks[0].attacker), "~n1".parse().unwrap());
        assert_eq!(args.conclusion(attacks[0].target), "b".parse().unwrap());
    }

    #[test]
    fn strict_theories_admit_no_attacks() {
        let args = build("axiom a.\naxiom ~b.\nstrict a -> b.\nstrict ~b -> ~a.\n");
        // Arguments for a, ~a, b, ~b exist, yet nothing is attackable.
        assert!(args.len() >= 4);
        assert!(compute_attacks(&args).is_empty());
    }

    #[test]
    fn defeats_default_to_attacks_and_respect_preferences() {
        let args = build("premise a.\npremise ~a.\ndefeasible [n1]: a => b.\npremise c.\nstrict c -> ~n1.\n");
        let attacks = compute_attacks(&args);
        assert_eq!(compute_defeats(&attacks, &PreferenceOrdering::empty()), attacks);

        // Make every underminer strictly weaker than its locus: the
        // underminings vanish, the undercut survives.
        let mut ordering = PreferenceOrdering::empty();
        for at in attacks.iter().filter(|a| a.kind == AttackKind::Undermine) {
            ordering.prefer(at.attacker, at.locus);
        }
        let defeats = compute_defeats(&attacks, &ordering);
        assert!(defeats.iter().all(|a| a.kind == AttackKind::Undercut));
        assert!(!defeats.is_empty());
    }

    #[test]
    fn dot_output_lists_nodes_and_styled_edges() {
        let args = build("premise a.\npremise ~a.\n");
        let attacks = compute_attacks(&args);
        let dot = to_dot(&args, &attacks);
        assert!(dot.starts_with("digraph attacks {"));
        assert!(dot.contains("label=\"A0: a\""));
        assert!(dot.contains("style=dashed"));
        assert!(dot.contains("label=\"undermine\""));
    }
}
