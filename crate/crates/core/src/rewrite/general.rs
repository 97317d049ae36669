//! The general one-step relation: `Δ ⊢ s → t` when `s ≡ C[s']` and
//! `Δ ⊢ (∇θ, s' ≈ π·(lθ), C[π·(rθ)] ≈ t)` for some `π` and `θ`.
//!
//! `π` ranges over injections from the rule's atoms into a finite universe:
//! the atoms of the context, the term and the rule, plus a few machine-fresh
//! spares. Permutations agreeing on the rule's atoms give the same steps up to
//! the choice of `θ`, and any two atoms outside the universe behave alike, so
//! the universe only needs one spare per rule atom. The spare count and the
//! number of candidates per position are capped by [`SearchConfig`]; hitting
//! the candidate cap is reported, never silent.

use std::collections::{BTreeMap, BTreeSet};

use crate::alpha::{is_alpha, is_fresh, simplify_suspensions, FreshnessContext};
use crate::matching::match_terms;
use crate::syntax::{Atom, Names, Permutation, Position, Step, Term, Unknown};

use super::closure::AlphaSet;
use super::rule::{rename_ctx, rename_term, RewriteRule};
use super::step::{RewriteStep, StepKind};

/// Order in which positions are tried when a single step is wanted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Leftmost-outermost.
    #[default]
    Outermost,
    /// Leftmost-innermost.
    Innermost,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "outermost" => Ok(Strategy::Outermost),
            "innermost" => Ok(Strategy::Innermost),
            other => Err(format!(
                "unknown strategy `{other}` (expected outermost or innermost)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Candidate permutations per position are capped at `max_support!`.
    pub max_support: usize,
    /// Upper bound on machine-fresh spare atoms added to the universe.
    pub spare_atoms: usize,
    /// Upper bound on α-variants of the source tried per position.
    pub max_variants: usize,
    /// Steps for normalisation, expansions for closure and search.
    pub fuel: usize,
    pub strategy: Strategy,
    /// Fresh constraints for symmetric search; `None` means the number of
    /// distinct atoms in the theory.
    pub gamma_budget: Option<usize>,
    /// Atoms added to the permutation universe.
    pub extra_atoms: BTreeSet<Atom>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_support: 6,
            spare_atoms: 2,
            max_variants: 64,
            fuel: 1000,
            strategy: Strategy::Outermost,
            gamma_budget: None,
            extra_atoms: BTreeSet::new(),
        }
    }
}

impl SearchConfig {
    pub fn with_fuel(mut self, fuel: usize) -> Self {
        self.fuel = fuel;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_gamma_budget(mut self, budget: usize) -> Self {
        self.gamma_budget = Some(budget);
        self
    }

    fn candidate_limit(&self) -> usize {
        (1..=self.max_support).product::<usize>().max(1)
    }
}

/// All one-step rewrites found, one per α-class of result.
#[derive(Clone, Debug, Default)]
pub struct StepResults {
    pub steps: Vec<RewriteStep>,
    /// Set when a permutation or variant cap cut the search short.
    pub truncated: bool,
}

impl StepResults {
    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.steps.iter().map(|s| &s.result)
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn contains(&self, ctx: &FreshnessContext, t: &Term) -> bool {
        self.terms().any(|u| is_alpha(ctx, u, t))
    }
}

/// Every general one-step rewrite of `s` under `ctx` by `rule`.
pub fn rewrite_step_general(
    ctx: &FreshnessContext,
    s: &Term,
    rule: &RewriteRule,
    cfg: &SearchConfig,
) -> StepResults {
    oriented_steps(ctx, s, rule, false, cfg)
}

pub(crate) fn oriented_steps(
    ctx: &FreshnessContext,
    s: &Term,
    rule: &RewriteRule,
    reversed: bool,
    cfg: &SearchConfig,
) -> StepResults {
    let prepared = PreparedRule::new(ctx, s, rule, reversed, cfg);
    let mut out = StepResults {
        truncated: prepared.truncated,
        ..Default::default()
    };
    let mut seen = AlphaSet::new(ctx.clone());
    for (pos, _) in s.positions() {
        let found = prepared.steps_at(ctx, s, &pos, cfg, false, &mut out.truncated);
        for step in found {
            if seen.insert(step.result.clone()).1 {
                out.steps.push(step);
            }
        }
    }
    out
}

/// The rule used in the given orientation, ready to be applied to one term.
pub(crate) struct PreparedRule {
    name: String,
    reversed: bool,
    rule: RewriteRule,
    universe: BTreeSet<Atom>,
    /// `(π, π·l)`, identity first.
    candidates: Vec<(Permutation, Term)>,
    truncated: bool,
}

impl PreparedRule {
    /// `rule` is expected already oriented; `reversed` is only recorded.
    pub(crate) fn new(
        ctx: &FreshnessContext,
        s: &Term,
        rule: &RewriteRule,
        reversed: bool,
        cfg: &SearchConfig,
    ) -> Self {
        let rule = rename_apart(ctx, s, rule);
        let rule_atoms: Vec<Atom> = rule.atoms().into_iter().collect();
        let mut universe: BTreeSet<Atom> = (ctx, s).atoms();
        universe.extend(rule_atoms.iter().cloned());
        universe.extend(cfg.extra_atoms.iter().cloned());
        let spares = rule_atoms.len().min(cfg.spare_atoms);
        for a in rule_atoms.iter().take(spares) {
            let spare = Atom::fresh_for(a.base(), &universe);
            universe.insert(spare);
        }
        let (perms, truncated) = injections(&rule_atoms, &universe, cfg.candidate_limit());
        let candidates = perms
            .into_iter()
            .map(|p| {
                let l = rule.lhs.permute(&p);
                (p, l)
            })
            .collect();
        PreparedRule {
            name: rule.name.clone(),
            reversed,
            rule,
            universe,
            candidates,
            truncated,
        }
    }

    /// Steps with the redex at `pos`. With `first_only`, stops at the first
    /// one and does not look at α-variants of `s`.
    pub(crate) fn steps_at(
        &self,
        ctx: &FreshnessContext,
        s: &Term,
        pos: &Position,
        cfg: &SearchConfig,
        first_only: bool,
        truncated: &mut bool,
    ) -> Vec<RewriteStep> {
        let mut out = Vec::new();
        let plain = self.match_at(ctx, s, s, pos, first_only, &mut out);
        if first_only || !plain {
            return out;
        }
        // renaming binders above the redex can change what the contractum
        // captures, so the matching variants are tried too
        let (variants, cut) = binder_variants(ctx, s, pos, &self.universe, cfg.max_variants);
        *truncated |= cut;
        for v in variants.iter().skip(1) {
            self.match_at(ctx, s, v, pos, false, &mut out);
        }
        out
    }

    fn match_at(
        &self,
        ctx: &FreshnessContext,
        source: &Term,
        variant: &Term,
        pos: &Position,
        first_only: bool,
        out: &mut Vec<RewriteStep>,
    ) -> bool {
        let Some(redex) = variant.subterm(pos) else {
            return false;
        };
        let mut any = false;
        for (pi, l) in &self.candidates {
            if !same_head(l, redex) {
                continue;
            }
            let Some(theta) = match_terms(&self.rule.ctx, l, ctx, redex) else {
                continue;
            };
            any = true;
            let contractum = self.rule.rhs.subst(&theta).permute(pi);
            let result = variant
                .replace(pos, contractum)
                .expect("position exists in variant");
            out.push(RewriteStep {
                kind: StepKind::General,
                rule: self.name.clone(),
                reversed: self.reversed,
                applied_rule: self.rule.clone(),
                context_extension: FreshnessContext::new(),
                source: source.clone(),
                variant: variant.clone(),
                position: pos.clone(),
                permutation: pi.clone(),
                substitution: theta,
                result: simplify_suspensions(ctx, &result),
            });
            if first_only {
                return true;
            }
        }
        any
    }
}

/// Renames the unknowns of `rule` that clash with those of `ctx` and `s`.
fn rename_apart(ctx: &FreshnessContext, s: &Term, rule: &RewriteRule) -> RewriteRule {
    let taken = (ctx, s).unknowns();
    let mine = rule.unknowns();
    if taken.is_disjoint(&mine) {
        return rule.clone();
    }
    let mut avoid: BTreeSet<Unknown> = taken.union(&mine).cloned().collect();
    let mut map = BTreeMap::new();
    for x in mine.intersection(&taken) {
        let y = Unknown::fresh_for(x.base(), &avoid);
        avoid.insert(y.clone());
        map.insert(x.clone(), y);
    }
    let none = BTreeMap::new();
    RewriteRule {
        name: rule.name.clone(),
        ctx: rename_ctx(&rule.ctx, &none, &map),
        lhs: rename_term(&rule.lhs, &none, &map),
        rhs: rename_term(&rule.rhs, &none, &map),
    }
}

/// Quick rejection before matching: the pattern's head constructor must
/// agree with the target's unless the pattern is a suspension.
fn same_head(pattern: &Term, target: &Term) -> bool {
    match (pattern, target) {
        (Term::Susp(..), _) => true,
        (Term::Atom(a), Term::Atom(b)) => a == b,
        (Term::Abs(..), Term::Abs(..)) => true,
        (Term::App(f, xs), Term::App(g, ys)) => f == g && xs.len() == ys.len(),
        _ => false,
    }
}

/// Injections `dom → universe` as permutations, identity first, at most
/// `limit` of them. The flag reports whether the limit was hit.
fn injections(dom: &[Atom], universe: &BTreeSet<Atom>, limit: usize) -> (Vec<Permutation>, bool) {
    fn go(
        dom: &[Atom],
        universe: &[Atom],
        chosen: &mut Vec<Atom>,
        out: &mut Vec<Permutation>,
        limit: usize,
    ) -> bool {
        if out.len() >= limit {
            return true;
        }
        let i = chosen.len();
        if i == dom.len() {
            let pairs = dom.iter().cloned().zip(chosen.iter().cloned());
            out.push(Permutation::from_injection(pairs).expect("injective by construction"));
            return false;
        }
        let own = std::iter::once(&dom[i]).chain(universe.iter().filter(|b| **b != dom[i]));
        for b in own {
            if chosen.contains(b) {
                continue;
            }
            chosen.push(b.clone());
            let cut = go(dom, universe, chosen, out, limit);
            chosen.pop();
            if cut {
                return true;
            }
        }
        false
    }
    let universe: Vec<Atom> = universe.iter().cloned().collect();
    let mut out = Vec::new();
    let cut = go(dom, &universe, &mut Vec::new(), &mut out, limit);
    (out, cut)
}

/// α-variants of `s` obtained by renaming binders strictly above `pos` to
/// atoms of `universe` fresh for the abstraction. `s` itself comes first.
fn binder_variants(
    ctx: &FreshnessContext,
    s: &Term,
    pos: &Position,
    universe: &BTreeSet<Atom>,
    limit: usize,
) -> (Vec<Term>, bool) {
    fn go(
        ctx: &FreshnessContext,
        t: &Term,
        path: &[Step],
        universe: &BTreeSet<Atom>,
        limit: usize,
        cut: &mut bool,
    ) -> Vec<Term> {
        let Some((step, rest)) = path.split_first() else {
            return vec![t.clone()];
        };
        match (t, step) {
            (Term::Abs(b, body), Step::Body) => {
                let mut out = Vec::new();
                let whole_fresh = |c: &Atom| c == b || is_fresh(ctx, c, t);
                for c in std::iter::once(b).chain(universe.iter().filter(|c| *c != b)) {
                    if !whole_fresh(c) {
                        continue;
                    }
                    let renamed = body.permute(&Permutation::swap(c.clone(), b.clone()));
                    for inner in go(ctx, &renamed, rest, universe, limit, cut) {
                        if out.len() >= limit {
                            *cut = true;
                            return out;
                        }
                        out.push(Term::Abs(c.clone(), Box::new(inner)));
                    }
                }
                out
            }
            (Term::App(f, args), Step::Arg(i)) if *i < args.len() => {
                go(ctx, &args[*i], rest, universe, limit, cut)
                    .into_iter()
                    .map(|inner| {
                        let mut args = args.clone();
                        args[*i] = inner;
                        Term::App(f.clone(), args)
                    })
                    .collect()
            }
            _ => vec![t.clone()],
        }
    }
    let mut cut = false;
    let out = go(ctx, s, pos.steps(), universe, limit.max(1), &mut cut);
    (out, cut)
}

/// Checks one instance of equivariance: if `s` rewrites to `t` by `rule`,
/// then `π·s` rewrites to `π·t`.
pub fn check_equivariance_sample(
    ctx: &FreshnessContext,
    s: &Term,
    t: &Term,
    rule: &RewriteRule,
    pi: &Permutation,
    cfg: &SearchConfig,
) -> bool {
    let (ps, pt) = (s.permute(pi), t.permute(pi));
    let mut cfg = cfg.clone();
    cfg.extra_atoms.extend((&ps, &pt).atoms());
    rewrite_step_general(ctx, &ps, rule, &cfg).contains(ctx, &pt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Unknown;

    fn at(s: &str) -> Atom {
        Atom::new(s)
    }

    fn rule(name: &str, ctx: FreshnessContext, l: Term, r: Term) -> RewriteRule {
        RewriteRule::new(name, ctx, l, r).unwrap()
    }

    fn drop_binder() -> RewriteRule {
        rule(
            "drop",
            FreshnessContext::new(),
            Term::abs(at("a"), Term::var("X")),
            Term::var("X"),
        )
    }

    #[test]
    fn injections_start_with_identity() {
        let dom = vec![at("a"), at("b")];
        let universe: BTreeSet<Atom> = ["a", "b", "c"].into_iter().map(at).collect();
        let (perms, cut) = injections(&dom, &universe, 100);
        assert!(!cut);
        assert_eq!(perms.len(), 6);
        assert!(perms[0].is_id());
        let (perms, cut) = injections(&dom, &universe, 4);
        assert!(cut);
        assert_eq!(perms.len(), 4);
    }

    #[test]
    fn atom_rule_renames_through_pi() {
        let r = rule(
            "ab",
            FreshnessContext::new(),
            Term::atom("a"),
            Term::atom("b"),
        );
        let ctx = FreshnessContext::new();
        let res = rewrite_step_general(&ctx, &Term::atom("a"), &r, &SearchConfig::default());
        assert!(res.contains(&ctx, &Term::atom("b")));
        let res = rewrite_step_general(&ctx, &Term::atom("c"), &r, &SearchConfig::default());
        assert!(!res.is_empty());
        for step in &res.steps {
            step.verify(&ctx, None).unwrap();
        }
        assert!(res.steps.iter().any(|s| match &s.result {
            Term::Atom(d) => !["a", "b", "c"].contains(&d.name()),
            _ => false,
        }));
    }

    #[test]
    fn permutation_lets_binder_rule_reach_renamed_body() {
        // [b][a]a rewrites to [a]b by way of the variant [a][b]b
        let s = Term::abs(at("b"), Term::abs(at("a"), Term::atom("a")));
        let target = Term::abs(at("a"), Term::atom("b"));
        let ctx = FreshnessContext::new();
        let res = rewrite_step_general(&ctx, &s, &drop_binder(), &SearchConfig::default());
        let step = res
            .steps
            .iter()
            .find(|st| is_alpha(&ctx, &st.result, &target))
            .expect("[a]b is a one-step rewrite");
        assert!(!step.permutation.is_id());
        step.verify(&ctx, None).unwrap();
    }

    #[test]
    fn suspension_lhs_needs_context() {
        let r = rule(
            "grow",
            FreshnessContext::new().with("a", "X"),
            Term::var("X"),
            Term::app("f", vec![Term::var("X")]),
        );
        let ctx = FreshnessContext::new();
        assert!(
            rewrite_step_general(&ctx, &Term::var("X"), &r, &SearchConfig::default()).is_empty()
        );
        let ctx = FreshnessContext::new().with("c", "X");
        let res = rewrite_step_general(&ctx, &Term::var("X"), &r, &SearchConfig::default());
        assert!(res.contains(&ctx, &Term::app("f", vec![Term::var("X")])));
    }

    #[test]
    fn clashing_unknowns_are_renamed() {
        let r = rule(
            "proj",
            FreshnessContext::new(),
            Term::app("g", vec![Term::var("X"), Term::var("Y")]),
            Term::var("X"),
        );
        let s = Term::app("g", vec![Term::var("Y"), Term::var("X")]);
        let ctx = FreshnessContext::new();
        let res = rewrite_step_general(&ctx, &s, &r, &SearchConfig::default());
        assert_eq!(res.steps.len(), 1);
        assert_eq!(res.steps[0].result, Term::var("Y"));
        assert!(res.steps[0]
            .applied_rule
            .unknowns()
            .iter()
            .all(|x: &Unknown| x.is_machine()));
    }

    #[test]
    fn equivariance_samples_hold() {
        let r = rule(
            "ab",
            FreshnessContext::new(),
            Term::atom("a"),
            Term::atom("b"),
        );
        let ctx = FreshnessContext::new();
        let pi = Permutation::swap(at("a"), at("c"));
        assert!(check_equivariance_sample(
            &ctx,
            &Term::atom("a"),
            &Term::atom("b"),
            &r,
            &pi,
            &SearchConfig::default()
        ));
        assert!(check_equivariance_sample(
            &ctx,
            &Term::atom("a"),
            &Term::atom("b"),
            &r,
            &Permutation::id(),
            &SearchConfig::default()
        ));
    }
}
