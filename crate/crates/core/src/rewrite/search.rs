//! Bounded search for `Δ, Γ ⊢ s ↔* t`, where `↔` is general rewriting in
//! either direction and `Γ` constrains fresh atoms away from every unknown.
//!
//! Two breadth-first searches grow from `s` and from `t`, each using the rules
//! forwards and, where the reversed rule is executable, backwards. A trace is
//! reported as soon as the two explored sets share a term up to α. Failure is
//! inconclusive: the fuel or the fresh-atom budget may simply be too small.

use std::collections::BTreeSet;

use crate::alpha::{is_alpha, FreshnessContext};
use crate::syntax::{Atom, Names, Term};

use super::closure::Explorer;
use super::general::SearchConfig;
use super::rule::{RewriteRule, Theory};
use super::step::{Orientation, RewriteTrace, TraceStep};

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    /// A chain from `s` to `t`, valid under the trace's context `Δ ∪ Γ`.
    Found(RewriteTrace),
    NotFound {
        expansions: usize,
        /// Whether a step search hit a cap, on top of running out of fuel.
        truncated: bool,
    },
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn trace(&self) -> Option<&RewriteTrace> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            SearchOutcome::NotFound { .. } => None,
        }
    }
}

/// `Γ`: `budget` machine-fresh atoms, each fresh for every unknown of `Δ, s, t`.
pub fn fresh_gamma(
    ctx: &FreshnessContext,
    s: &Term,
    t: &Term,
    theory: &Theory,
    budget: usize,
) -> FreshnessContext {
    let mut avoid: BTreeSet<Atom> = (ctx, s, t).atoms();
    avoid.extend(theory.atoms());
    let unknowns = (ctx, s, t).unknowns();
    let mut gamma = FreshnessContext::new();
    for _ in 0..budget {
        let a = Atom::fresh_for("n", &avoid);
        avoid.insert(a.clone());
        for x in &unknowns {
            gamma.insert(a.clone(), x.clone());
        }
    }
    gamma
}

/// Rules together with their executable reversals.
fn both_ways(theory: &Theory) -> Vec<(RewriteRule, bool)> {
    let mut out = Vec::new();
    for r in &theory.rules {
        out.push((r.clone(), false));
        if let Some(rev) = r.reversed() {
            out.push((rev, true));
        }
    }
    out
}

pub fn symmetric_search(
    ctx: &FreshnessContext,
    s: &Term,
    t: &Term,
    theory: &Theory,
    cfg: &SearchConfig,
) -> SearchOutcome {
    let budget = cfg.gamma_budget.unwrap_or_else(|| theory.atoms().len());
    let full = ctx.union(&fresh_gamma(ctx, s, t, theory, budget));
    let mut cfg = cfg.clone();
    cfg.extra_atoms.extend((s, t).atoms());

    let rules = both_ways(theory);
    let mut left = Explorer::new(full.clone(), s.clone());
    let mut right = Explorer::new(full.clone(), t.clone());
    if is_alpha(&full, s, t) {
        return SearchOutcome::Found(RewriteTrace::new(full, s.clone()));
    }

    let mut expansions = 0;
    while expansions < cfg.fuel {
        let grow_left = match (left.frontier(), right.frontier()) {
            (0, 0) => break,
            (0, _) => false,
            (_, 0) => true,
            (l, r) => l <= r,
        };
        let (this, other) = if grow_left {
            (&mut left, &right)
        } else {
            (&mut right, &left)
        };
        let Some(fresh) = this.expand(&full, &rules, &cfg) else {
            break;
        };
        expansions += 1;
        for j in fresh {
            if let Some(k) = other.nodes.find(this.nodes.get(j)) {
                let (l, r) = if grow_left { (j, k) } else { (k, j) };
                return SearchOutcome::Found(join(&full, s, &left, l, &right, r));
            }
        }
    }
    SearchOutcome::NotFound {
        expansions,
        truncated: left.truncated || right.truncated,
    }
}

fn join(
    ctx: &FreshnessContext,
    s: &Term,
    left: &Explorer,
    l: usize,
    right: &Explorer,
    r: usize,
) -> RewriteTrace {
    let mut trace = RewriteTrace::new(ctx.clone(), s.clone());
    for step in left.path_to(l) {
        trace.push(TraceStep::forward(step));
    }
    for step in right.path_to(r).into_iter().rev() {
        trace.push(TraceStep {
            step,
            orientation: Orientation::Backward,
        });
    }
    trace
}
