//! Syntax-directed derivability of `Δ ⊢ a#t` and `Δ ⊢ s ≈ t`.
//!
//! The freshness and α-equivalence rules are deterministic on the shape of the
//! terms involved, so each check is a single structural recursion. The `is_*`
//! functions decide; the `check_*` functions also build the derivation tree.

use std::collections::BTreeSet;
use std::fmt;

use super::context::{FreshnessConstraint, FreshnessContext};
use crate::syntax::{Atom, Permutation, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FigRule {
    /// `Δ ⊢ a#b`
    FreshAtom,
    /// `Δ ⊢ a#[a]t`
    FreshAbsSame,
    /// `Δ ⊢ a#π·X` when `π⁻¹(a)#X ∈ Δ`
    FreshSusp,
    /// `Δ ⊢ a#[b]t` from `Δ ⊢ a#t`
    FreshAbs,
    /// `Δ ⊢ a#f(t1..tn)` from each `Δ ⊢ a#ti`
    FreshApp,
    /// `Δ ⊢ a ≈ a`
    AlphaAtom,
    /// `Δ ⊢ [a]t ≈ [b]u` from `Δ ⊢ b#t` and `Δ ⊢ (b a)·t ≈ u`
    AlphaAbsDiff,
    /// `Δ ⊢ π·X ≈ π'·X` when `a#X ∈ Δ` for every `a` in `ds(π, π')`
    AlphaSusp,
    /// `Δ ⊢ [a]t ≈ [a]u` from `Δ ⊢ t ≈ u`
    AlphaAbsSame,
    /// `Δ ⊢ f(t1..tn) ≈ f(u1..un)` from each `Δ ⊢ ti ≈ ui`
    AlphaApp,
}

impl FigRule {
    pub fn label(self) -> &'static str {
        match self {
            FigRule::FreshAtom => "#ab",
            FigRule::FreshAbsSame => "#[a]",
            FigRule::FreshSusp => "#X",
            FigRule::FreshAbs => "#[b]",
            FigRule::FreshApp => "#f",
            FigRule::AlphaAtom => "=a=a",
            FigRule::AlphaAbsDiff => "=a=[b]",
            FigRule::AlphaSusp => "=a=X",
            FigRule::AlphaAbsSame => "=a=[a]",
            FigRule::AlphaApp => "=a=f",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Judgement {
    Fresh(Atom, Term),
    Alpha(Term, Term),
}

impl fmt::Display for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Judgement::Fresh(a, t) => write!(f, "{a}#{t}"),
            Judgement::Alpha(s, t) => write!(f, "{s} =a= {t}"),
        }
    }
}

/// A derivation tree; every node names the rule that concludes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: FigRule,
    pub judgement: Judgement,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    fn leaf(rule: FigRule, judgement: Judgement) -> Self {
        Derivation {
            rule,
            judgement,
            premises: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    /// Re-checks every node against its rule under `ctx`, independently of the
    /// search that produced the tree.
    pub fn verify(&self, ctx: &FreshnessContext) -> bool {
        let premise_judgements: Vec<&Judgement> =
            self.premises.iter().map(|d| &d.judgement).collect();
        let shape_ok = match (&self.rule, &self.judgement) {
            (FigRule::FreshAtom, Judgement::Fresh(a, Term::Atom(b))) => {
                a != b && premise_judgements.is_empty()
            }
            (FigRule::FreshAbsSame, Judgement::Fresh(a, Term::Abs(b, _))) => {
                a == b && premise_judgements.is_empty()
            }
            (FigRule::FreshSusp, Judgement::Fresh(a, Term::Susp(p, x))) => {
                ctx.contains(&p.apply_inverse(a), x) && premise_judgements.is_empty()
            }
            (FigRule::FreshAbs, Judgement::Fresh(a, Term::Abs(b, t))) => {
                a != b && premise_judgements == [&Judgement::Fresh(a.clone(), (**t).clone())]
            }
            (FigRule::FreshApp, Judgement::Fresh(a, Term::App(_, ts))) => {
                premise_judgements.len() == ts.len()
                    && ts
                        .iter()
                        .zip(&premise_judgements)
                        .all(|(t, j)| **j == Judgement::Fresh(a.clone(), t.clone()))
            }
            (FigRule::AlphaAtom, Judgement::Alpha(Term::Atom(a), Term::Atom(b))) => {
                a == b && premise_judgements.is_empty()
            }
            (FigRule::AlphaAbsDiff, Judgement::Alpha(Term::Abs(a, t), Term::Abs(b, u))) => {
                let swapped = t.permute(&Permutation::swap(b.clone(), a.clone()));
                a != b
                    && premise_judgements
                        == [
                            &Judgement::Fresh(b.clone(), (**t).clone()),
                            &Judgement::Alpha(swapped, (**u).clone()),
                        ]
            }
            (FigRule::AlphaSusp, Judgement::Alpha(Term::Susp(p, x), Term::Susp(q, y))) => {
                x == y
                    && premise_judgements.is_empty()
                    && disagreement_set(p, q).iter().all(|a| ctx.contains(a, x))
            }
            (FigRule::AlphaAbsSame, Judgement::Alpha(Term::Abs(a, t), Term::Abs(b, u))) => {
                a == b && premise_judgements == [&Judgement::Alpha((**t).clone(), (**u).clone())]
            }
            (FigRule::AlphaApp, Judgement::Alpha(Term::App(f, ts), Term::App(g, us))) => {
                f == g
                    && ts.len() == us.len()
                    && premise_judgements.len() == ts.len()
                    && ts
                        .iter()
                        .zip(us)
                        .zip(&premise_judgements)
                        .all(|((t, u), j)| **j == Judgement::Alpha(t.clone(), u.clone()))
            }
            _ => false,
        };
        shape_ok && self.premises.iter().all(|d| d.verify(ctx))
    }

    fn render(&self, depth: usize, out: &mut String) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&format!("{}  [{}]\n", self.judgement, self.rule.label()));
        for p in &self.premises {
            p.render(depth + 1, out);
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.render(0, &mut s);
        f.write_str(s.trim_end())
    }
}

/// `ds(π, π') = {a | π(a) ≠ π'(a)}`, computed over the mentioned atoms.
pub fn disagreement_set(p: &Permutation, q: &Permutation) -> BTreeSet<Atom> {
    let mut atoms = p.mentioned();
    atoms.extend(q.mentioned());
    atoms
        .into_iter()
        .filter(|a| p.apply(a) != q.apply(a))
        .collect()
}

pub fn is_fresh(ctx: &FreshnessContext, a: &Atom, t: &Term) -> bool {
    match t {
        Term::Atom(b) => a != b,
        Term::Susp(p, x) => ctx.contains(&p.apply_inverse(a), x),
        Term::Abs(b, body) => a == b || is_fresh(ctx, a, body),
        Term::App(_, args) => args.iter().all(|u| is_fresh(ctx, a, u)),
    }
}

pub fn check_fresh(ctx: &FreshnessContext, a: &Atom, t: &Term) -> Option<Derivation> {
    let judgement = Judgement::Fresh(a.clone(), t.clone());
    match t {
        Term::Atom(b) => (a != b).then(|| Derivation::leaf(FigRule::FreshAtom, judgement)),
        Term::Susp(p, x) => ctx
            .contains(&p.apply_inverse(a), x)
            .then(|| Derivation::leaf(FigRule::FreshSusp, judgement)),
        Term::Abs(b, _) if a == b => Some(Derivation::leaf(FigRule::FreshAbsSame, judgement)),
        Term::Abs(_, body) => Some(Derivation {
            rule: FigRule::FreshAbs,
            judgement,
            premises: vec![check_fresh(ctx, a, body)?],
        }),
        Term::App(_, args) => Some(Derivation {
            rule: FigRule::FreshApp,
            judgement,
            premises: args
                .iter()
                .map(|u| check_fresh(ctx, a, u))
                .collect::<Option<Vec<_>>>()?,
        }),
    }
}

pub fn is_alpha(ctx: &FreshnessContext, s: &Term, t: &Term) -> bool {
    match (s, t) {
        (Term::Atom(a), Term::Atom(b)) => a == b,
        (Term::Susp(p, x), Term::Susp(q, y)) => {
            x == y && disagreement_set(p, q).iter().all(|a| ctx.contains(a, x))
        }
        (Term::Abs(a, s1), Term::Abs(b, t1)) => {
            if a == b {
                is_alpha(ctx, s1, t1)
            } else {
                is_fresh(ctx, b, s1)
                    && is_alpha(
                        ctx,
                        &s1.permute(&Permutation::swap(b.clone(), a.clone())),
                        t1,
                    )
            }
        }
        (Term::App(f, ss), Term::App(g, ts)) => {
            f == g && ss.len() == ts.len() && ss.iter().zip(ts).all(|(s, t)| is_alpha(ctx, s, t))
        }
        _ => false,
    }
}

pub fn check_alpha(ctx: &FreshnessContext, s: &Term, t: &Term) -> Option<Derivation> {
    let judgement = Judgement::Alpha(s.clone(), t.clone());
    match (s, t) {
        (Term::Atom(a), Term::Atom(b)) => {
            (a == b).then(|| Derivation::leaf(FigRule::AlphaAtom, judgement))
        }
        (Term::Susp(p, x), Term::Susp(q, y)) => (x == y
            && disagreement_set(p, q).iter().all(|a| ctx.contains(a, x)))
        .then(|| Derivation::leaf(FigRule::AlphaSusp, judgement)),
        (Term::Abs(a, s1), Term::Abs(b, t1)) if a == b => Some(Derivation {
            rule: FigRule::AlphaAbsSame,
            judgement,
            premises: vec![check_alpha(ctx, s1, t1)?],
        }),
        (Term::Abs(a, s1), Term::Abs(b, t1)) => {
            let fresh = check_fresh(ctx, b, s1)?;
            let swapped = s1.permute(&Permutation::swap(b.clone(), a.clone()));
            let rest = check_alpha(ctx, &swapped, t1)?;
            Some(Derivation {
                rule: FigRule::AlphaAbsDiff,
                judgement,
                premises: vec![fresh, rest],
            })
        }
        (Term::App(f, ss), Term::App(g, ts)) if f == g && ss.len() == ts.len() => {
            Some(Derivation {
                rule: FigRule::AlphaApp,
                judgement,
                premises: ss
                    .iter()
                    .zip(ts)
                    .map(|(s, t)| check_alpha(ctx, s, t))
                    .collect::<Option<Vec<_>>>()?,
            })
        }
        _ => None,
    }
}

/// `Δ ⊢ (φ1, ..., φn)` for freshness constraints.
pub fn ctx_entails<'a>(
    ctx: &FreshnessContext,
    constraints: impl IntoIterator<Item = &'a FreshnessConstraint>,
) -> bool {
    constraints
        .into_iter()
        .all(|c| is_fresh(ctx, &c.atom, &c.target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Unknown;

    fn at(s: &str) -> Atom {
        Atom::new(s)
    }

    fn sw(a: &str, b: &str) -> Permutation {
        Permutation::swap(at(a), at(b))
    }

    fn abs(a: &str, t: Term) -> Term {
        Term::abs(at(a), t)
    }

    #[test]
    fn freshness_examples() {
        let empty = FreshnessContext::new();
        let d = check_fresh(&empty, &at("a"), &Term::atom("b")).unwrap();
        assert_eq!(d.rule, FigRule::FreshAtom);
        let d = check_fresh(&empty, &at("a"), &abs("a", Term::atom("a"))).unwrap();
        assert_eq!(d.rule, FigRule::FreshAbsSame);
        let ctx = FreshnessContext::new().with("b", "X");
        let t = Term::susp(sw("a", "b"), Unknown::new("X"));
        let d = check_fresh(&ctx, &at("a"), &t).unwrap();
        assert_eq!(d.rule, FigRule::FreshSusp);
        assert!(d.verify(&ctx));
        assert!(!d.verify(&empty));
        assert!(check_fresh(&empty, &at("a"), &Term::atom("a")).is_none());
    }

    #[test]
    fn disagreement_examples() {
        assert!(disagreement_set(&Permutation::id(), &Permutation::id()).is_empty());
        assert_eq!(
            disagreement_set(&sw("a", "b"), &Permutation::id()),
            [at("a"), at("b")].into_iter().collect()
        );
        // (a b) vs (a b)∘(c d): they differ exactly on c and d
        assert_eq!(
            disagreement_set(&sw("a", "b"), &sw("a", "b").compose(&sw("c", "d"))),
            [at("c"), at("d")].into_iter().collect()
        );
    }

    #[test]
    fn alpha_examples() {
        let empty = FreshnessContext::new();
        let d = check_alpha(
            &empty,
            &abs("a", Term::atom("a")),
            &abs("b", Term::atom("b")),
        )
        .unwrap();
        assert_eq!(d.rule, FigRule::AlphaAbsDiff);
        assert!(d.verify(&empty));

        let ctx = FreshnessContext::new().with("a", "X").with("b", "X");
        let d = check_alpha(
            &ctx,
            &Term::susp(sw("a", "b"), Unknown::new("X")),
            &Term::var("X"),
        )
        .unwrap();
        assert_eq!(d.rule, FigRule::AlphaSusp);

        let s = abs("b", abs("a", Term::atom("a")));
        let t = abs("a", abs("b", Term::atom("b")));
        let d = check_alpha(&empty, &s, &t).unwrap();
        assert!(d.verify(&empty));

        assert!(
            check_alpha(&empty, &abs("a", Term::var("X")), &abs("b", Term::var("X"))).is_none()
        );
    }

    #[test]
    fn derivation_rejects_tampering() {
        let empty = FreshnessContext::new();
        let mut d = check_alpha(
            &empty,
            &Term::app("f", vec![Term::atom("a")]),
            &Term::app("f", vec![Term::atom("a")]),
        )
        .unwrap();
        assert!(d.verify(&empty));
        d.premises[0].judgement = Judgement::Alpha(Term::atom("b"), Term::atom("b"));
        assert!(!d.verify(&empty));
    }

    #[test]
    fn entailment_examples() {
        let empty = FreshnessContext::new();
        assert!(ctx_entails(&empty, &[]));
        let ctx = FreshnessContext::new().with("a", "X");
        let c = FreshnessConstraint::new(
            at("a"),
            Term::app("f", vec![Term::var("X"), Term::atom("b")]),
        );
        assert!(ctx_entails(&ctx, [&c]));
        let c = FreshnessConstraint::new(at("a"), Term::var("X"));
        assert!(c.is_primitive());
        assert!(!ctx_entails(&empty, [&c]));
    }
}
