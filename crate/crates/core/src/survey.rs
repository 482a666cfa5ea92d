//! The laboratory's summary table: which closure axioms each induced
//! consequence relation satisfies, and with which qualification.
//!
//! A cell is decided by evidence, strongest first. A failing instance on
//! a strict theory (under the strictness-preserving convention that
//! added antecedents join the axioms) marks the cell `N`. Otherwise a
//! failing instance on some theory marks it `(Y)`: the axiom holds for
//! strict theories only. For the interpreted axioms a failing instance
//! whose rule premises are read strictly also yields `(Y)`, while
//! failures confined to the defeasible reading yield `[Y]`: the axiom
//! holds under the strict-rule interpretation. With no failing instance
//! at all the cell is `Y`.
//!
//! Evidence comes from two places: the bundled fixture corpus, whose
//! failing instances are re-evaluated rather than trusted, and scans of
//! the generated theory streams (a general stream and a strict-only
//! stream) shared across all still-open cells.
//!
//! The generated streams are always closed under transposition: a
//! well-formed system requires its strict rules to be closed, and the
//! positive table entries quantify over well-formed systems only (an
//! unclosed strict pair such as `a -> ~b` with `~b -> a` genuinely
//! breaks the strict reading of left logical equivalence, but is not a
//! system the table speaks about). Fixture counterexamples, by
//! contrast, run exactly as printed; closing them as well is the
//! informational `closed_fixtures` variant, under which some of them
//! stop failing.

use std::fmt;

use serde::Serialize;

use crate::consequence::{
    evaluate_axiom, AxiomId, AxiomInstance, Bindings, ConsequenceOptions, Interpretation, Relation,
    TheoryEvaluator, VerdictStatus,
};
use crate::fixtures;
use crate::lang::Literal;
use crate::search::{
    binding_universe, certify_witness, generate_theories, scan_axiom, search_options, SearchBounds,
    Witness,
};
use crate::theory::{ArgumentationTheory, Placement};

/// Verdict for one table cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CellMark {
    /// Holds on every theory examined.
    #[serde(rename = "Y")]
    Yes,
    /// Fails somewhere, but holds on strict theories.
    #[serde(rename = "(Y)")]
    StrictTheoriesOnly,
    /// Fails somewhere, but holds when the rule premise is read strictly.
    #[serde(rename = "[Y]")]
    StrictRulesOnly,
    /// Fails even on strict theories.
    #[serde(rename = "N")]
    No,
}

impl fmt::Display for CellMark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CellMark::Yes => "Y",
            CellMark::StrictTheoriesOnly => "(Y)",
            CellMark::StrictRulesOnly => "[Y]",
            CellMark::No => "N",
        };
        write!(f, "{s}")
    }
}

/// One decided cell of the table.
#[derive(Debug, Clone, Serialize)]
pub struct SurveyCell {
    pub axiom: AxiomId,
    pub relation: Relation,
    pub mark: CellMark,
    /// Fixture whose failing instance decided a non-`Y` mark.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    /// Witness found by the stream scan, when no fixture decided it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// The full table plus stream statistics.
#[derive(Debug, Clone, Serialize)]
pub struct SurveyReport {
    pub bounds: SearchBounds,
    /// Fixtures were closed under transposition before evaluation.
    pub closed_fixtures: bool,
    /// Sixteen cells: the construction row then the justified row, in
    /// axiom order.
    pub cells: Vec<SurveyCell>,
    pub general_examined: usize,
    pub general_skipped: usize,
    pub strict_examined: usize,
    pub strict_skipped: usize,
}

impl SurveyReport {
    pub fn mark(&self, axiom: AxiomId, relation: Relation) -> CellMark {
        self.cells
            .iter()
            .find(|c| c.axiom == axiom && c.relation == relation)
            .map(|c| c.mark)
            .expect("the survey decides every cell")
    }

    /// Two-row text rendering with axiom columns.
    pub fn grid(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{:<6}", ""));
        for axiom in AxiomId::ALL {
            out.push_str(&format!("{:<6}", axiom.to_string()));
        }
        out.push('\n');
        for relation in [Relation::Construction, Relation::Justified] {
            out.push_str(&format!("{:<6}", relation.symbol()));
            for axiom in AxiomId::ALL {
                out.push_str(&format!("{:<6}", self.mark(axiom, relation).to_string()));
            }
            out.push('\n');
        }
        out
    }
}

/// Where a piece of failing evidence came from.
#[derive(Debug, Clone)]
enum Evidence {
    Fixture(&'static str),
    Found(Witness),
}

/// Accumulated evidence for one cell.
struct CellState {
    axiom: AxiomId,
    relation: Relation,
    /// Fails on a strict theory under the axiom placement.
    strict_theory: Option<Evidence>,
    /// Fails with the rule premise read strictly (interpreted axioms).
    strict_interp: Option<Evidence>,
    /// Fails under the general reading.
    general: Option<Evidence>,
}

impl CellState {
    fn new(axiom: AxiomId, relation: Relation) -> Self {
        CellState { axiom, relation, strict_theory: None, strict_interp: None, general: None }
    }

    fn decided_against_strict_theories(&self) -> bool {
        self.strict_theory.is_some()
    }

    fn into_cell(self) -> SurveyCell {
        let (mark, evidence) = if let Some(e) = self.strict_theory {
            (CellMark::No, Some(e))
        } else if self.axiom.interpreted() {
            match (self.strict_interp, self.general) {
                (Some(e), _) => (CellMark::StrictTheoriesOnly, Some(e)),
                (None, Some(e)) => (CellMark::StrictRulesOnly, Some(e)),
                (None, None) => (CellMark::Yes, None),
            }
        } else if let Some(e) = self.general {
            (CellMark::StrictTheoriesOnly, Some(e))
        } else {
            (CellMark::Yes, None)
        };
        let (fixture, witness) = match evidence {
            Some(Evidence::Fixture(name)) => (Some(name.to_string()), None),
            Some(Evidence::Found(w)) => (None, Some(w)),
            None => (None, None),
        };
        SurveyCell { axiom: self.axiom, relation: self.relation, mark, fixture, witness }
    }
}

/// The bundled failing instances: fixture name, axiom, relations on
/// which it fails, interpretation, bindings.
#[allow(clippy::type_complexity)]
fn fixture_instances() -> Vec<(&'static str, AxiomId, Vec<Relation>, Option<Interpretation>, Bindings)>
{
    let lit = |s: &str| s.parse::<Literal>().expect("fixture binding literal is valid");
    vec![
        (
            "fx_cp_a",
            AxiomId::Cp,
            vec![Relation::Construction, Relation::Justified],
            None,
            Bindings::binary(lit("alpha"), lit("beta")),
        ),
        ("fx_ref_j", AxiomId::Ref, vec![Relation::Justified], None, Bindings::unary(lit("a"))),
        (
            "fx_lle_j",
            AxiomId::Lle,
            vec![Relation::Justified],
            Some(Interpretation::Defeasible),
            Bindings::ternary(lit("a"), lit("b"), lit("r")),
        ),
        (
            "fx_rw_j",
            AxiomId::Rw,
            vec![Relation::Justified],
            Some(Interpretation::Defeasible),
            Bindings::ternary(lit("a"), lit("b"), lit("g")),
        ),
        (
            "fx_m_j",
            AxiomId::M,
            vec![Relation::Justified],
            Some(Interpretation::Strict),
            Bindings::ternary(lit("a"), lit("b"), lit("g")),
        ),
        (
            "fx_t_j",
            AxiomId::T,
            vec![Relation::Justified],
            None,
            Bindings::ternary(lit("a"), lit("b"), lit("r")),
        ),
    ]
}

fn instance_fails_with(
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

/// Decide the whole table within `bounds`. Both generated streams are
/// closed under transposition (see the module notes); the strict
/// stream re-runs the same bounds with `strict_only` set. With
/// `closed_fixtures` the bundled counterexamples are closed too before
/// being re-evaluated.
pub fn run_survey(bounds: &SearchBounds, closed_fixtures: bool) -> SurveyReport {
    let general_bounds =
        SearchBounds { strict_only: false, close_transposition: true, ..*bounds };
    let strict_bounds = SearchBounds { strict_only: true, close_transposition: true, ..*bounds };
    let general_options = search_options(&general_bounds);
    let strict_options = search_options(&strict_bounds);

    let mut cells: Vec<CellState> = Vec::with_capacity(16);
    for relation in [Relation::Construction, Relation::Justified] {
        for axiom in AxiomId::ALL {
            cells.push(CellState::new(axiom, relation));
        }
    }

    // Fixture evidence first; every claimed failure is re-evaluated, and
    // strict theories are additionally certified under the axiom
    // placement before they may decide a cell against strict theories.
    for (name, axiom, relations, interpretation, bindings) in fixture_instances() {
        let theory = fixtures::fixture(name).expect("bundled fixture parses");
        let theory = if closed_fixtures { theory.close_transposition() } else { theory };
        let instance = AxiomInstance::new(axiom, interpretation, bindings)
            .expect("fixture instances are fully bound");
        for relation in relations {
            let cell = cells
                .iter_mut()
                .find(|c| c.axiom == axiom && c.relation == relation)
                .expect("all cells exist");
            if instance_fails_with(&theory, &instance, relation, &general_options) {
                cell.general.get_or_insert(Evidence::Fixture(name));
                if interpretation == Some(Interpretation::Strict) {
                    cell.strict_interp.get_or_insert(Evidence::Fixture(name));
                }
            }
            if theory.is_strict() {
                let axiom_placed =
                    ConsequenceOptions { placement: Placement::Axioms, ..general_options };
                if instance_fails_with(&theory, &instance, relation, &axiom_placed) {
                    cell.strict_theory.get_or_insert(Evidence::Fixture(name));
                }
            }
        }
    }

    // General stream: one evaluator per theory, shared by every cell
    // that still needs general evidence. A resource error abandons the
    // theory for the remaining cells.
    let mut general_examined = 0usize;
    let mut general_skipped = 0usize;
    'general: for theory in generate_theories(&general_bounds) {
        let wanted: Vec<(usize, Option<Interpretation>)> = cells
            .iter()
            .enumerate()
            .flat_map(|(i, c)| {
                let mut asks = Vec::new();
                if c.decided_against_strict_theories() {
                    return asks;
                }
                if c.general.is_none() {
                    let interp = c.axiom.interpreted().then_some(Interpretation::Defeasible);
                    asks.push((i, interp));
                }
                if c.axiom.interpreted() && c.strict_interp.is_none() {
                    asks.push((i, Some(Interpretation::Strict)));
                }
                asks
            })
            .collect();
        if wanted.is_empty() {
            break;
        }
        let universe = binding_universe(&theory);
        let mut evaluator = TheoryEvaluator::new(&theory, general_options);
        for (i, interp) in wanted {
            let (axiom, relation) = (cells[i].axiom, cells[i].relation);
            match scan_axiom(&mut evaluator, axiom, interp, relation, &universe) {
                Err(_) => {
                    general_skipped += 1;
                    continue 'general;
                }
                Ok(None) => {}
                Ok(Some(bindings)) => {
                    if let Some(w) =
                        certify_witness(&theory, axiom, interp, relation, bindings, &general_options)
                    {
                        let cell = &mut cells[i];
                        if interp == Some(Interpretation::Strict) {
                            cell.strict_interp.get_or_insert(Evidence::Found(w.clone()));
                        }
                        cell.general.get_or_insert(Evidence::Found(w));
                    }
                }
            }
        }
        general_examined += 1;
    }

    // Strict-only stream: any failure here counts against strict
    // theories. All rules are strict, so the interpretation is moot.
    let mut strict_examined = 0usize;
    let mut strict_skipped = 0usize;
    'strict: for theory in generate_theories(&strict_bounds) {
        let wanted: Vec<usize> = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.decided_against_strict_theories())
            .map(|(i, _)| i)
            .collect();
        if wanted.is_empty() {
            break;
        }
        let universe = binding_universe(&theory);
        let mut evaluator = TheoryEvaluator::new(&theory, strict_options);
        for i in wanted {
            let (axiom, relation) = (cells[i].axiom, cells[i].relation);
            match scan_axiom(&mut evaluator, axiom, None, relation, &universe) {
                Err(_) => {
                    strict_skipped += 1;
                    continue 'strict;
                }
                Ok(None) => {}
                Ok(Some(bindings)) => {
                    if let Some(w) =
                        certify_witness(&theory, axiom, None, relation, bindings, &strict_options)
                    {
                        cells[i].strict_theory.get_or_insert(Evidence::Found(w));
                    }
                }
            }
        }
        strict_examined += 1;
    }

    SurveyReport {
        bounds: general_bounds,
        closed_fixtures,
        cells: cells.into_iter().map(CellState::into_cell).collect(),
        general_examined,
        general_skipped,
        strict_examined,
        strict_skipped,
    }
}
