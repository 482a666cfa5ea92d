//! Extension semantics over the defeat graph, and justified conclusions.
//!
//! An extension is conflict-free and a fixpoint of the characteristic
//! function F, where F(E) collects the arguments whose every defeater is
//! itself defeated by E. Grounded is the least such fixpoint, complete
//! the full family, preferred its inclusion-maximal members.
//!
//! Complete extensions are enumerated region-wise: with G the grounded
//! extension and OUT its targets, every complete extension is G plus a
//! subset of the remaining (contingent) arguments, no conflicts exist
//! between G and that region, and no OUT argument can ever re-enter. The
//! contingent region is therefore the only space searched, and its size
//! is capped.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::engine::{ArgId, ArgumentSet};
use crate::lang::Literal;

/// Defeat graph over argument indices `0..n`.
#[derive(Debug, Clone)]
pub struct DefeatGraph {
    n: usize,
    defeaters: Vec<Vec<usize>>,
    targets: Vec<Vec<usize>>,
}

impl DefeatGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (ArgId, ArgId)>) -> Self {
        let dedup: BTreeSet<(ArgId, ArgId)> = edges.into_iter().collect();
        let mut defeaters = vec![Vec::new(); n];
        let mut targets = vec![Vec::new(); n];
        for (a, b) in dedup {
            assert!(a.0 < n && b.0 < n, "defeat edge out of range");
            targets[a.0].push(b.0);
            defeaters[b.0].push(a.0);
        }
        DefeatGraph { n, defeaters, targets }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edges(&self) -> impl Iterator<Item = (ArgId, ArgId)> + '_ {
        self.targets
            .iter()
            .enumerate()
            .flat_map(|(a, ts)| ts.iter().map(move |&t| (ArgId(a), ArgId(t))))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error(
        "{count} arguments are neither accepted nor rejected by the grounded extension; \
         refusing to enumerate subsets of more than {limit}"
    )]
    ContingentRegionTooLarge { count: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemanticsOptions {
    /// Cap on the contingent region explored during complete-extension
    /// enumeration (at most 63, the subset-mask width).
    pub max_contingent: usize,
}

impl Default for SemanticsOptions {
    fn default() -> Self {
        SemanticsOptions { max_contingent: 22 }
    }
}

/// Sorted argument indices.
pub type Extension = Vec<ArgId>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SemanticsKind {
    Grounded,
    Complete,
    Preferred,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregation {
    /// Accept what every extension accepts.
    Sceptical,
    /// Accept what some extension accepts.
    Credulous,
}

/// How justified conclusions are drawn from the extension family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct JustificationMode {
    pub kind: SemanticsKind,
    pub aggregation: Aggregation,
}

impl Default for JustificationMode {
    fn default() -> Self {
        JustificationMode { kind: SemanticsKind::Grounded, aggregation: Aggregation::Sceptical }
    }
}

/// The grounded extension: least fixpoint of F, computed by chaotic
/// iteration (accept every argument whose defeaters are all defeated,
/// repeat until stable).
pub fn grounded_extension(graph: &DefeatGraph) -> Extension {
    let n = graph.n;
    let mut accepted = vec![false; n];
    let mut defeated = vec![false; n];
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..n {
            if accepted[a] || defeated[a] {
                continue;
            }
            if graph.defeaters[a].iter().all(|&d| defeated[d]) {
                accepted[a] = true;
                changed = true;
                for &t in &graph.targets[a] {
                    defeated[t] = true;
                }
            }
        }
    }
    (0..n).filter(|&a| accepted[a]).map(ArgId).collect()
}

/// Internal region split. `contingent` is sorted.
struct Regions {
    grounded: Vec<bool>,
    contingent: Vec<usize>,
}

fn regions(graph: &DefeatGraph) -> Regions {
    let g = grounded_extension(graph);
    let mut grounded = vec![false; graph.n];
    for a in &g {
        grounded[a.0] = true;
    }
    let mut out = vec![false; graph.n];
    for a in &g {
        for &t in &graph.targets[a.0] {
            out[t] = true;
        }
    }
    let contingent =
        (0..graph.n).filter(|&a| !grounded[a] && !out[a]).collect();
    Regions { grounded, contingent }
}

/// All complete extensions, in lexicographic order of their sorted member
/// lists. The grounded extension is always among them.
pub fn complete_extensions(
    graph: &DefeatGraph,
    options: &SemanticsOptions,
) -> Result<Vec<Extension>, SemanticsError> {
    let regions = regions(graph);
    let u = &regions.contingent;
    let limit = options.max_contingent.min(63);
    if u.len() > limit {
        return Err(SemanticsError::ContingentRegionTooLarge { count: u.len(), limit });
    }

    // Bit index within the contingent region.
    let mut ubit = vec![usize::MAX; graph.n];
    for (i, &a) in u.iter().enumerate() {
        ubit[a] = i;
    }

    // conflict[i]: contingent arguments in conflict with u[i] (either
    // direction, self included for self-defeaters).
    let mut conflict = vec![0u64; u.len()];
    // critical[i]: defeaters of u[i] inside the region; defeaters in OUT
    // are permanently defeated and never block acceptability.
    let mut critical: Vec<Vec<usize>> = vec![Vec::new(); u.len()];
    // defeated_by[i]: region arguments that defeat u[i], as a mask; u[i]
    // counts as defeated by a subset S iff S intersects it.
    let mut defeated_by = vec![0u64; u.len()];
    for (i, &a) in u.iter().enumerate() {
        for &d in &graph.defeaters[a] {
            if ubit[d] != usize::MAX {
                conflict[i] |= 1 << ubit[d];
                critical[i].push(ubit[d]);
                defeated_by[i] |= 1 << ubit[d];
            }
        }
        for &t in &graph.targets[a] {
            if ubit[t] != usize::MAX {
                conflict[i] |= 1 << ubit[t];
            }
        }
        debug_assert!(
            graph.defeaters[a].iter().all(|&d| !regions.grounded[d]),
            "grounded arguments cannot defeat contingent ones"
        );
    }

    let base: Vec<ArgId> =
        (0..graph.n).filter(|&a| regions.grounded[a]).map(ArgId).collect();
    let mut found = Vec::new();
    'masks: for mask in 0u64..(1u64 << u.len()) {
        // Conflict-freeness within the region (G cannot conflict with it).
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if conflict[i] & mask != 0 {
                continue 'masks;
            }
        }
        // Fixpoint: selected arguments must be acceptable, unselected
        // region arguments must not be. Arguments in OUT stay
        // unacceptable because their grounded defeater is never defeated.
        for i in 0..u.len() {
            let selected = mask & (1 << i) != 0;
            let acceptable = critical[i].iter().all(|&d| defeated_by[d] & mask != 0);
            if selected != acceptable {
                continue 'masks;
            }
        }
        let mut ext = base.clone();
        ext.extend(
            (0..u.len()).filter(|&i| mask & (1 << i) != 0).map(|i| ArgId(u[i])),
        );
        ext.sort_unstable();
        found.push(ext);
    }
    found.sort();
    Ok(found)
}

/// Inclusion-maximal complete extensions, same canonical order.
pub fn preferred_extensions(
    graph: &DefeatGraph,
    options: &SemanticsOptions,
) -> Result<Vec<Extension>, SemanticsError> {
    let complete = complete_extensions(graph, options)?;
    let sets: Vec<BTreeSet<ArgId>> =
        complete.iter().map(|e| e.iter().copied().collect()).collect();
    Ok(complete
        .iter()
        .zip(&sets)
        .filter(|(_, s)| !sets.iter().any(|o| s.len() < o.len() && s.is_subset(o)))
        .map(|(e, _)| e.clone())
        .collect())
}

/// The extension family of the requested semantics.
pub fn extensions(
    graph: &DefeatGraph,
    kind: SemanticsKind,
    options: &SemanticsOptions,
) -> Result<Vec<Extension>, SemanticsError> {
    match kind {
        SemanticsKind::Grounded => Ok(vec![grounded_extension(graph)]),
        SemanticsKind::Complete => complete_extensions(graph, options),
        SemanticsKind::Preferred => preferred_extensions(graph, options),
    }
}

/// Conclusions of the arguments in one extension.
pub fn extension_conclusions(args: &ArgumentSet, extension: &Extension) -> BTreeSet<Literal> {
    extension.iter().map(|&a| args.conclusion(a)).collect()
}

/// Justified conclusions: the conclusion sets of the extension family,
/// intersected (sceptical) or united (credulous). Every family here is
/// non-empty, so the sceptical intersection is well defined.
pub fn justified_conclusions(
    args: &ArgumentSet,
    graph: &DefeatGraph,
    mode: JustificationMode,
    options: &SemanticsOptions,
) -> Result<BTreeSet<Literal>, SemanticsError> {
    let family = extensions(graph, mode.kind, options)?;
    let mut sets = family.iter().map(|e| extension_conclusions(args, e));
    let first = sets.next().expect("every semantics yields at least one extension");
    Ok(match mode.aggregation {
        Aggregation::Sceptical => {
            sets.fold(first, |acc, s| acc.intersection(&s).cloned().collect())
        }
        Aggregation::Credulous => sets.fold(first, |acc, s| acc.union(&s).cloned().collect()),
    })
}
