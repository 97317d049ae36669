//! Nominal matching: given `(∇ ⊢ l) ⪯? (Δ ⊢ s)` find `σ` with `Δ ⊢ ∇σ`,
//! `Δ ⊢ lσ ≈ s` and `dom(σ) ⊆ unkn(∇ ⊢ l)`.
//!
//! The solver simplifies `l ≈? s` by decomposition. Abstractions with
//! different binders `[a]l' ≈? [b]s'` become `(b a)·l' ≈? s'` plus the
//! obligation `b # l'σ`, checked once `σ` is known. A suspension `π·X ≈? s`
//! binds `X ↦ π⁻¹·s`, or checks `π·σ(X) ≈ s` if `X` is already bound. Pattern
//! and target unknowns are disjoint so no occurs check is needed. Worst case
//! is quadratic in the size of the problem.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::alpha::{is_alpha, is_fresh, FreshnessContext};
use crate::syntax::{Atom, Names, Permutation, Substitution, Term, Unknown};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("pattern and target share unknowns: {}", names(.0))]
    SharedUnknowns(BTreeSet<Unknown>),
}

fn names(xs: &BTreeSet<Unknown>) -> String {
    xs.iter().map(|x| x.name()).collect::<Vec<_>>().join(", ")
}

/// `(∇ ⊢ l) ⪯? (Δ ⊢ s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchProblem {
    pattern_ctx: FreshnessContext,
    pattern: Term,
    target_ctx: FreshnessContext,
    target: Term,
}

impl MatchProblem {
    pub fn new(
        pattern_ctx: FreshnessContext,
        pattern: Term,
        target_ctx: FreshnessContext,
        target: Term,
    ) -> Result<Self, MatchError> {
        let left = (&pattern_ctx, &pattern).unknowns();
        let right = (&target_ctx, &target).unknowns();
        let shared: BTreeSet<Unknown> = left.intersection(&right).cloned().collect();
        if !shared.is_empty() {
            return Err(MatchError::SharedUnknowns(shared));
        }
        Ok(MatchProblem {
            pattern_ctx,
            pattern,
            target_ctx,
            target,
        })
    }

    pub fn pattern_ctx(&self) -> &FreshnessContext {
        &self.pattern_ctx
    }

    pub fn pattern(&self) -> &Term {
        &self.pattern
    }

    pub fn target_ctx(&self) -> &FreshnessContext {
        &self.target_ctx
    }

    pub fn target(&self) -> &Term {
        &self.target
    }

    pub fn pattern_unknowns(&self) -> BTreeSet<Unknown> {
        (&self.pattern_ctx, &self.pattern).unknowns()
    }
}

impl fmt::Display for MatchProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} |- {}) <=? ({} |- {})",
            self.pattern_ctx, self.pattern, self.target_ctx, self.target
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchSolution {
    pub sigma: Substitution,
}

pub fn solve_match(p: &MatchProblem) -> Option<MatchSolution> {
    let sigma = match_terms(&p.pattern_ctx, &p.pattern, &p.target_ctx, &p.target)?;
    debug_assert!(is_solution(p, &sigma), "unsound match for {p}: {sigma}");
    Some(MatchSolution { sigma })
}

pub fn is_solution(p: &MatchProblem, sigma: &Substitution) -> bool {
    let allowed = p.pattern_unknowns();
    sigma.domain().all(|x| allowed.contains(x))
        && p.pattern_ctx
            .iter()
            .all(|(a, x)| is_fresh(&p.target_ctx, a, &sigma.get(x)))
        && is_alpha(&p.target_ctx, &p.pattern.subst(sigma), &p.target)
}

/// The solver without problem construction. Callers guarantee that pattern
/// and target unknowns are disjoint.
pub(crate) fn match_terms(
    pattern_ctx: &FreshnessContext,
    pattern: &Term,
    target_ctx: &FreshnessContext,
    target: &Term,
) -> Option<Substitution> {
    let mut m = Matcher {
        ctx: target_ctx,
        sigma: Substitution::new(),
        obligations: Vec::new(),
    };
    m.solve(&Permutation::id(), pattern, target)?;
    for (b, l) in &m.obligations {
        if !is_fresh(target_ctx, b, &l.subst(&m.sigma)) {
            return None;
        }
    }
    // unknowns constrained by ∇ but absent from l can be sent to any atom
    // outside their constraints
    for x in pattern_ctx.unknowns() {
        if m.sigma.lookup(&x).is_none() {
            let banned: BTreeSet<&Atom> = pattern_ctx
                .iter()
                .filter(|(_, y)| *y == x)
                .map(|(a, _)| a)
                .collect();
            let pick = (0..)
                .map(|i| Atom::new(format!("c{i}")))
                .find(|c| !banned.contains(c))
                .expect("unbounded supply");
            m.sigma.insert(x, Term::Atom(pick));
        }
    }
    for (a, x) in pattern_ctx.iter() {
        if !is_fresh(target_ctx, a, &m.sigma.get(x)) {
            return None;
        }
    }
    Some(m.sigma)
}

struct Matcher<'a> {
    ctx: &'a FreshnessContext,
    sigma: Substitution,
    /// Pending `b # l` obligations, `l` a pattern term to be instantiated.
    obligations: Vec<(Atom, Term)>,
}

impl Matcher<'_> {
    /// Solves `π·l ≈? s`, with the permutation kept lazy.
    fn solve(&mut self, pi: &Permutation, l: &Term, s: &Term) -> Option<()> {
        match (l, s) {
            (Term::Atom(a), Term::Atom(b)) => (pi.apply(a) == *b).then_some(()),
            (Term::Susp(p, x), _) => {
                let perm = pi.compose(p);
                match self.sigma.lookup(x) {
                    Some(bound) => is_alpha(self.ctx, &bound.permute(&perm), s).then_some(()),
                    None => {
                        self.sigma.insert(x.clone(), s.permute(&perm.inverse()));
                        Some(())
                    }
                }
            }
            (Term::Abs(a, l1), Term::Abs(b, s1)) => {
                let a2 = pi.apply(a);
                if a2 == *b {
                    self.solve(pi, l1, s1)
                } else {
                    self.obligations.push((b.clone(), l1.permute(pi)));
                    let next = Permutation::swap(b.clone(), a2).compose(pi);
                    self.solve(&next, l1, s1)
                }
            }
            (Term::App(f, ls), Term::App(g, ss)) if f == g && ls.len() == ss.len() => {
                for (l, s) in ls.iter().zip(ss) {
                    self.solve(pi, l, s)?;
                }
                Some(())
            }
            _ => None,
        }
    }
}

/// Largest target accepted by [`enumerate_solutions_small`], in nodes.
pub const SMALL_TARGET_NODES: usize = 12;
/// Largest atom universe accepted by [`enumerate_solutions_small`].
pub const SMALL_ATOM_UNIVERSE: usize = 6;
/// Largest number of candidate substitutions [`enumerate_solutions_small`]
/// will try.
pub const SMALL_CANDIDATE_LIMIT: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationOverflow {
    #[error("target has {0} nodes, more than {SMALL_TARGET_NODES}")]
    TargetTooLarge(usize),
    #[error("atom universe has {0} atoms, more than {SMALL_ATOM_UNIVERSE}")]
    TooManyAtoms(usize),
    #[error("{0} candidate substitutions, more than {SMALL_CANDIDATE_LIMIT}")]
    TooManyCandidates(u128),
}

/// Brute-force enumeration of solutions, used to certify the solver.
///
/// Each pattern unknown ranges over the images of target subterms under every
/// permutation of `atms(p)` plus `atom_budget` spare atoms, and over those
/// atoms themselves. Every candidate substitution is filtered with
/// [`is_solution`].
pub fn enumerate_solutions_small(
    p: &MatchProblem,
    atom_budget: usize,
) -> Result<Vec<Substitution>, EnumerationOverflow> {
    let size = p.target.size();
    if size > SMALL_TARGET_NODES {
        return Err(EnumerationOverflow::TargetTooLarge(size));
    }
    let mut universe: Vec<Atom> = (&p.pattern_ctx, &p.pattern, &p.target_ctx, &p.target)
        .atoms()
        .into_iter()
        .collect();
    universe.extend((0..atom_budget).map(|i| Atom::new(format!("spare${i}"))));
    if universe.len() > SMALL_ATOM_UNIVERSE {
        return Err(EnumerationOverflow::TooManyAtoms(universe.len()));
    }

    let perms = all_permutations(&universe);
    let mut seen: HashSet<Term> = HashSet::new();
    let mut candidates: Vec<Term> = Vec::new();
    let mut push = |t: Term| {
        if seen.insert(t.clone()) {
            candidates.push(t);
        }
    };
    for a in &universe {
        push(Term::Atom(a.clone()));
    }
    for (_, u) in p.target.positions() {
        for pi in &perms {
            push(u.permute(pi));
        }
    }

    let vars: Vec<Unknown> = p.pattern_unknowns().into_iter().collect();
    let total = (candidates.len() as u128).saturating_pow(vars.len() as u32);
    if total > SMALL_CANDIDATE_LIMIT as u128 {
        return Err(EnumerationOverflow::TooManyCandidates(total));
    }

    let mut out = Vec::new();
    let mut idx = vec![0usize; vars.len()];
    loop {
        let sigma: Substitution = vars
            .iter()
            .zip(&idx)
            .map(|(x, &i)| (x.clone(), candidates[i].clone()))
            .collect();
        if is_solution(p, &sigma) {
            out.push(sigma);
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < candidates.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn all_permutations(atoms: &[Atom]) -> Vec<Permutation> {
    fn go(
        rest: &mut Vec<Atom>,
        chosen: &mut Vec<Atom>,
        atoms: &[Atom],
        out: &mut Vec<Permutation>,
    ) {
        if rest.is_empty() {
            let pairs = atoms.iter().cloned().zip(chosen.iter().cloned());
            out.push(Permutation::from_injection(pairs).expect("bijection"));
            return;
        }
        for i in 0..rest.len() {
            let a = rest.remove(i);
            chosen.push(a.clone());
            go(rest, chosen, atoms, out);
            chosen.pop();
            rest.insert(i, a);
        }
    }
    let mut out = Vec::new();
    go(&mut atoms.to_vec(), &mut Vec::new(), atoms, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(s: &str) -> Atom {
        Atom::new(s)
    }

    fn problem(pctx: FreshnessContext, l: Term, tctx: FreshnessContext, s: Term) -> MatchProblem {
        MatchProblem::new(pctx, l, tctx, s).unwrap()
    }

    fn empty() -> FreshnessContext {
        FreshnessContext::new()
    }

    #[test]
    fn unknown_matches_atom() {
        let p = problem(empty(), Term::var("X"), empty(), Term::atom("a"));
        let sol = solve_match(&p).unwrap();
        assert_eq!(
            sol.sigma,
            Substitution::singleton(Unknown::new("X"), Term::atom("a"))
        );
        assert!(is_solution(&p, &sol.sigma));
        assert!(!is_solution(
            &p,
            &Substitution::singleton(Unknown::new("X"), Term::atom("b"))
        ));
    }

    #[test]
    fn abstraction_renames_binder() {
        // [a]X matches [b]b with X := a
        let p = problem(
            empty(),
            Term::abs(at("a"), Term::var("X")),
            empty(),
            Term::abs(at("b"), Term::atom("b")),
        );
        let sol = solve_match(&p).unwrap();
        assert_eq!(sol.sigma.get(&Unknown::new("X")), Term::atom("a"));
    }

    #[test]
    fn suspension_inverts_permutation() {
        let pi = Permutation::swap(at("a"), at("b"));
        let p = problem(
            empty(),
            Term::susp(pi, Unknown::new("X")),
            empty(),
            Term::app("f", vec![Term::atom("a")]),
        );
        let sol = solve_match(&p).unwrap();
        assert_eq!(
            sol.sigma.get(&Unknown::new("X")),
            Term::app("f", vec![Term::atom("b")])
        );
    }

    #[test]
    fn freshness_in_pattern_context_is_enforced() {
        let p = problem(
            FreshnessContext::new().with("a", "X"),
            Term::var("X"),
            empty(),
            Term::atom("a"),
        );
        assert!(solve_match(&p).is_none());
        assert!(enumerate_solutions_small(&p, 1).unwrap().is_empty());
    }

    #[test]
    fn solution_check_uses_target_context() {
        let p = problem(
            FreshnessContext::new().with("a", "X"),
            Term::app("f", vec![Term::var("X")]),
            FreshnessContext::new().with("a", "Y"),
            Term::app("f", vec![Term::var("Y")]),
        );
        let sigma = Substitution::singleton(Unknown::new("X"), Term::var("Y"));
        assert!(is_solution(&p, &sigma));
        assert!(solve_match(&p).is_some());
    }

    #[test]
    fn shared_unknowns_are_rejected() {
        let err = MatchProblem::new(empty(), Term::var("X"), empty(), Term::var("X")).unwrap_err();
        assert!(matches!(err, MatchError::SharedUnknowns(_)));
    }

    #[test]
    fn repeated_unknown_must_agree() {
        let l = Term::app("g", vec![Term::var("X"), Term::var("X")]);
        let ok = problem(
            empty(),
            l.clone(),
            empty(),
            Term::app("g", vec![Term::atom("a"), Term::atom("a")]),
        );
        assert!(solve_match(&ok).is_some());
        let bad = problem(
            empty(),
            l,
            empty(),
            Term::app("g", vec![Term::atom("a"), Term::atom("b")]),
        );
        assert!(solve_match(&bad).is_none());
    }

    #[test]
    fn obligation_on_different_binders() {
        // [a]X vs [b]a: X := (a b)·a = b but then b#X fails? No: the obligation
        // is b # Xσ = b # b, which fails, so there is no solution.
        let p = problem(
            empty(),
            Term::abs(at("a"), Term::var("X")),
            empty(),
            Term::abs(at("b"), Term::atom("a")),
        );
        assert!(solve_match(&p).is_none());
        assert!(enumerate_solutions_small(&p, 1).unwrap().is_empty());
    }

    #[test]
    fn enumeration_examples() {
        let p = problem(empty(), Term::var("X"), empty(), Term::atom("a"));
        let sols = enumerate_solutions_small(&p, 1).unwrap();
        assert!(sols.contains(&Substitution::singleton(Unknown::new("X"), Term::atom("a"))));

        let p = problem(
            empty(),
            Term::abs(at("a"), Term::var("X")),
            empty(),
            Term::abs(at("b"), Term::atom("b")),
        );
        let sols = enumerate_solutions_small(&p, 1).unwrap();
        assert!(!sols.is_empty());
        assert!(sols.iter().all(|s| is_solution(&p, s)));
    }

    #[test]
    fn enumeration_reports_overflow() {
        let big = (0..13).fold(Term::atom("a"), |t, _| Term::app("f", vec![t]));
        let p = problem(empty(), Term::var("X"), empty(), big);
        assert!(matches!(
            enumerate_solutions_small(&p, 0),
            Err(EnumerationOverflow::TargetTooLarge(_))
        ));
    }

    #[test]
    fn unconstrained_context_unknown_gets_an_atom() {
        let p = problem(
            FreshnessContext::new().with("c0", "Y"),
            Term::var("X"),
            empty(),
            Term::atom("a"),
        );
        let sol = solve_match(&p).unwrap();
        assert!(is_solution(&p, &sol.sigma));
    }
}
