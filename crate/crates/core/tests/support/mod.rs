//! Term generators shared by the integration tests and the acceptance runner.
#![allow(dead_code)]

use nomrew::{Atom, FreshnessContext, Permutation, Substitution, Term, Unknown};
use rand::seq::IndexedRandom;
use rand::Rng;

/// Leaves, unary and binary formers and binder atoms for exhaustive term
/// enumeration.
pub struct Grammar {
    pub leaves: Vec<Term>,
    pub unary: Vec<&'static str>,
    pub binary: Vec<&'static str>,
    pub binders: Vec<Atom>,
}

impl Grammar {
    pub fn ground(atoms: &[&str], unary: &[&'static str], binary: &[&'static str]) -> Self {
        Grammar {
            leaves: atoms.iter().map(Term::atom).collect(),
            unary: unary.to_vec(),
            binary: binary.to_vec(),
            binders: atoms.iter().map(Atom::new).collect(),
        }
    }

    /// Every term of depth at most `depth`, with leaves at depth 1.
    pub fn terms(&self, depth: usize) -> Vec<Term> {
        let mut all = self.leaves.clone();
        for _ in 1..depth {
            let prev = all.clone();
            let mut next = self.leaves.clone();
            for t in &prev {
                for f in &self.unary {
                    next.push(Term::app(f, vec![t.clone()]));
                }
                for a in &self.binders {
                    next.push(Term::abs(a.clone(), t.clone()));
                }
            }
            for f in &self.binary {
                for t in &prev {
                    for u in &prev {
                        next.push(Term::app(f, vec![t.clone(), u.clone()]));
                    }
                }
            }
            all = next;
        }
        all
    }
}

pub fn atoms(n: usize) -> Vec<Atom> {
    ["a", "b", "c", "d", "e"][..n]
        .iter()
        .map(Atom::new)
        .collect()
}

pub fn unknowns(n: usize) -> Vec<Unknown> {
    ["X", "Y", "Z"][..n].iter().map(Unknown::new).collect()
}

pub fn random_perm<R: Rng>(rng: &mut R, atoms: &[Atom], max_swaps: usize) -> Permutation {
    let n = rng.random_range(0..=max_swaps);
    Permutation::from_swaps((0..n).map(|_| {
        (
            atoms.choose(rng).unwrap().clone(),
            atoms.choose(rng).unwrap().clone(),
        )
    }))
}

/// A random term of depth at most `depth` over formers `f/1` and `g/2`.
pub fn random_term<R: Rng>(
    rng: &mut R,
    depth: usize,
    atoms: &[Atom],
    unknowns: &[Unknown],
) -> Term {
    let leaf = depth <= 1 || rng.random_bool(0.25);
    if leaf {
        if !unknowns.is_empty() && rng.random_bool(0.5) {
            let pi = random_perm(rng, atoms, 2);
            Term::susp(pi, unknowns.choose(rng).unwrap().clone())
        } else {
            Term::Atom(atoms.choose(rng).unwrap().clone())
        }
    } else {
        match rng.random_range(0..3) {
            0 => Term::abs(
                atoms.choose(rng).unwrap().clone(),
                random_term(rng, depth - 1, atoms, unknowns),
            ),
            1 => Term::app("f", vec![random_term(rng, depth - 1, atoms, unknowns)]),
            _ => Term::app(
                "g",
                vec![
                    random_term(rng, depth - 1, atoms, unknowns),
                    random_term(rng, depth - 1, atoms, unknowns),
                ],
            ),
        }
    }
}

pub fn random_subst<R: Rng>(
    rng: &mut R,
    depth: usize,
    atoms: &[Atom],
    unknowns: &[Unknown],
) -> Substitution {
    let mut sigma = Substitution::new();
    for x in unknowns {
        if rng.random_bool(0.6) {
            sigma.insert(x.clone(), random_term(rng, depth, atoms, unknowns));
        }
    }
    sigma
}

pub fn random_ctx<R: Rng>(
    rng: &mut R,
    atoms: &[Atom],
    unknowns: &[Unknown],
    p: f64,
) -> FreshnessContext {
    let mut ctx = FreshnessContext::new();
    for a in atoms {
        for x in unknowns {
            if rng.random_bool(p) {
                ctx.insert(a.clone(), x.clone());
            }
        }
    }
    ctx
}

/// Adds to `out` the primitive constraints `b#Z` that make `a#t` derivable.
/// Returns false when `a` occurs free as an atom of `t`.
pub fn fresh_requirements(a: &Atom, t: &Term, out: &mut FreshnessContext) -> bool {
    match t {
        Term::Atom(b) => a != b,
        Term::Susp(pi, z) => {
            out.insert(pi.apply_inverse(a), z.clone());
            true
        }
        Term::Abs(b, body) => a == b || fresh_requirements(a, body, out),
        Term::App(_, args) => args.iter().all(|u| fresh_requirements(a, u, out)),
    }
}

/// A random instance `C[π·(lθ)]` of `rule` together with a context `Δ` that
/// derives `∇θ`, or `None` if the sampled `θ` cannot satisfy `∇`.
pub fn random_redex<R: Rng>(
    rng: &mut R,
    rule: &nomrew::RewriteRule,
    host_formers: &[(&str, usize)],
) -> Option<(FreshnessContext, Term)> {
    use nomrew::Names;
    let pool = atoms(3);
    let zs = [Unknown::new("Z")];
    let mut theta = Substitution::new();
    for x in rule.unknowns() {
        theta.insert(x, random_term_over(rng, 3, &pool, &zs, host_formers));
    }
    let mut ctx = FreshnessContext::new();
    for (a, x) in rule.ctx.iter() {
        if !fresh_requirements(a, &theta.get(x), &mut ctx) {
            return None;
        }
    }
    let pi = random_perm(rng, &pool, 2);
    let mut s = rule.lhs.subst(&theta).permute(&pi);
    for _ in 0..rng.random_range(0..=2) {
        s = match host_formers.choose(rng) {
            Some(&(f, n)) if n > 0 && rng.random_bool(0.6) => {
                let hole = rng.random_range(0..n);
                let args = (0..n)
                    .map(|i| {
                        if i == hole {
                            s.clone()
                        } else {
                            Term::Atom(pool.choose(rng).unwrap().clone())
                        }
                    })
                    .collect();
                Term::app(f, args)
            }
            _ => Term::abs(pool.choose(rng).unwrap().clone(), s),
        };
    }
    Some((ctx, s))
}

/// Like [`random_term`] but over the given formers.
pub fn random_term_over<R: Rng>(
    rng: &mut R,
    depth: usize,
    atoms: &[Atom],
    unknowns: &[Unknown],
    formers: &[(&str, usize)],
) -> Term {
    if depth <= 1 || formers.is_empty() || rng.random_bool(0.4) {
        return if !unknowns.is_empty() && rng.random_bool(0.5) {
            Term::susp(
                random_perm(rng, atoms, 1),
                unknowns.choose(rng).unwrap().clone(),
            )
        } else {
            Term::Atom(atoms.choose(rng).unwrap().clone())
        };
    }
    if rng.random_bool(0.3) {
        return Term::abs(
            atoms.choose(rng).unwrap().clone(),
            random_term_over(rng, depth - 1, atoms, unknowns, formers),
        );
    }
    let &(f, n) = formers.choose(rng).unwrap();
    Term::app(
        f,
        (0..n)
            .map(|_| random_term_over(rng, depth - 1, atoms, unknowns, formers))
            .collect(),
    )
}
