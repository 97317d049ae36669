//! Closed rewriting: `Δ ⊢ s →c t` when, for a freshened variant `R'` of the
//! rule, `Δ, atms(R')#unkn(Δ,s) ⊢ (∇'θ, s' ≈ l'θ, C[r'θ] ≈ t)`. No permutation
//! is searched for; renaming the rule apart does that job when the rule is
//! closed.

use crate::alpha::{is_alpha, simplify_suspensions, tidy_binders, FreshnessContext};
use crate::matching::match_terms;
use crate::rewrite::{
    AlphaSet, Explorer, Normalized, Orientation, RewriteRule, RewriteStep, RewriteTrace,
    SearchConfig, Status, StepKind, Theory, TraceStep,
};
use crate::syntax::{Names, Permutation, Position, Term};

use super::session::Session;
use crate::rewrite::strategy_positions;

/// A rule freshened for one source term, with its context extension.
struct FreshRule {
    name: String,
    rule: RewriteRule,
    extension: FreshnessContext,
    full: FreshnessContext,
}

impl FreshRule {
    fn new(session: &mut Session, ctx: &FreshnessContext, s: &Term, rule: &RewriteRule) -> Self {
        let names = (ctx, s);
        let variant = session.freshen(rule, &names.atoms(), &names.unknowns());
        let extension = FreshnessContext::product(&variant.renamed.atoms(), &names.unknowns());
        FreshRule {
            name: rule.name.clone(),
            full: ctx.union(&extension),
            rule: variant.renamed,
            extension,
        }
    }

    fn step_at(&self, s: &Term, pos: &Position) -> Option<RewriteStep> {
        let redex = s.subterm(pos)?;
        let theta = match_terms(&self.rule.ctx, &self.rule.lhs, &self.full, redex)?;
        let contractum = s.replace(pos, self.rule.rhs.subst(&theta))?;
        let result = tidy_binders(&self.full, &simplify_suspensions(&self.full, &contractum));
        Some(RewriteStep {
            kind: StepKind::Closed,
            rule: self.name.clone(),
            reversed: false,
            applied_rule: self.rule.clone(),
            context_extension: self.extension.clone(),
            source: s.clone(),
            variant: s.clone(),
            position: pos.clone(),
            permutation: Permutation::id(),
            substitution: theta,
            result,
        })
    }
}

/// Every closed one-step rewrite of `s` by `rule`, one per α-class of result.
pub fn closed_rewrite_step(
    session: &mut Session,
    ctx: &FreshnessContext,
    s: &Term,
    rule: &RewriteRule,
) -> Vec<RewriteStep> {
    let fresh = FreshRule::new(session, ctx, s, rule);
    let mut seen = AlphaSet::new(ctx.clone());
    s.positions()
        .into_iter()
        .filter_map(|(pos, _)| fresh.step_at(s, &pos))
        .filter(|step| seen.insert(step.result.clone()).1)
        .collect()
}

/// The first closed step by the configured strategy, trying rules in theory
/// order at each position.
pub fn first_closed_step(
    session: &mut Session,
    ctx: &FreshnessContext,
    s: &Term,
    theory: &Theory,
    cfg: &SearchConfig,
) -> Option<RewriteStep> {
    let fresh: Vec<FreshRule> = theory
        .rules
        .iter()
        .map(|r| FreshRule::new(session, ctx, s, r))
        .collect();
    strategy_positions(s, cfg.strategy)
        .iter()
        .find_map(|pos| fresh.iter().find_map(|r| r.step_at(s, pos)))
}

/// Rewrites with closed steps until none applies or `cfg.fuel` steps have been
/// taken.
pub fn closed_normalize(
    session: &mut Session,
    ctx: &FreshnessContext,
    s: &Term,
    theory: &Theory,
    cfg: &SearchConfig,
) -> Normalized {
    let mut trace = RewriteTrace::new(ctx.clone(), s.clone());
    let mut current = s.clone();
    let mut taken = 0;
    loop {
        let Some(step) = first_closed_step(session, ctx, &current, theory, cfg) else {
            return Normalized {
                term: current,
                trace,
                status: Status::NormalForm,
            };
        };
        if taken == cfg.fuel {
            return Normalized {
                term: current,
                trace,
                status: Status::FuelExhausted,
            };
        }
        taken += 1;
        current = step.result.clone();
        trace.push(TraceStep::forward(step));
    }
}

fn all_closed_steps(
    session: &mut Session,
    ctx: &FreshnessContext,
    s: &Term,
    theory: &Theory,
) -> Vec<RewriteStep> {
    theory
        .rules
        .iter()
        .flat_map(|r| closed_rewrite_step(session, ctx, s, r))
        .collect()
}

/// A valley `s →c* u c*← t`, searching breadth-first from both ends with at
/// most `cfg.fuel` expansions in total.
pub fn closed_joinable(
    session: &mut Session,
    ctx: &FreshnessContext,
    s: &Term,
    t: &Term,
    theory: &Theory,
    cfg: &SearchConfig,
) -> Option<RewriteTrace> {
    let mut left = Explorer::new(ctx.clone(), s.clone());
    let mut right = Explorer::new(ctx.clone(), t.clone());
    if is_alpha(ctx, s, t) {
        return Some(RewriteTrace::new(ctx.clone(), s.clone()));
    }
    for _ in 0..cfg.fuel {
        let grow_left = match (left.frontier(), right.frontier()) {
            (0, 0) => return None,
            (0, _) => false,
            (_, 0) => true,
            (l, r) => l <= r,
        };
        let (this, other) = if grow_left {
            (&mut left, &right)
        } else {
            (&mut right, &left)
        };
        let fresh = this.expand_with(|u| (all_closed_steps(session, ctx, u, theory), false))?;
        for j in fresh {
            if let Some(k) = other.nodes.find(this.nodes.get(j)) {
                let (l, r) = if grow_left { (j, k) } else { (k, j) };
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
                return Some(trace);
            }
        }
    }
    None
}
