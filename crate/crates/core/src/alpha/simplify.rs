use crate::syntax::{Atom, Names, Permutation, Term};

use super::{is_fresh, FreshnessContext};

/// Rewrites every suspension `π·X` to `π'·X` where `π'` keeps only the part of
/// `π` acting on atoms not known fresh for `X`. The result is α-equivalent to
/// the input under `ctx`.
pub fn simplify_suspensions(ctx: &FreshnessContext, t: &Term) -> Term {
    match t {
        Term::Atom(_) => t.clone(),
        Term::Susp(pi, x) => {
            if pi.is_id() {
                return Term::Susp(Permutation::id(), x.clone());
            }
            let visible = pi
                .support()
                .into_iter()
                .filter(|c| !ctx.contains(c, x))
                .map(|c| {
                    let image = pi.apply(&c);
                    (c, image)
                });
            match Permutation::from_injection(visible) {
                Some(p) if p.support().len() <= pi.support().len() => Term::Susp(p, x.clone()),
                _ => t.clone(),
            }
        }
        Term::Abs(a, body) => Term::Abs(a.clone(), Box::new(simplify_suspensions(ctx, body))),
        Term::App(f, args) => Term::App(
            f.clone(),
            args.iter().map(|u| simplify_suspensions(ctx, u)).collect(),
        ),
    }
}

/// Renames machine-generated binders to user atoms that are fresh for the
/// abstraction, preferring the binder's base name. The result is
/// α-equivalent to the input under `ctx`.
pub fn tidy_binders(ctx: &FreshnessContext, t: &Term) -> Term {
    let pool: Vec<Atom> = (ctx, t)
        .atoms()
        .into_iter()
        .filter(|a| !a.is_machine())
        .collect();
    tidy_with(ctx, t, &pool)
}

fn tidy_with(ctx: &FreshnessContext, t: &Term, pool: &[Atom]) -> Term {
    match t {
        Term::Atom(_) | Term::Susp(..) => t.clone(),
        Term::Abs(a, body) => {
            let plain = Atom::new(a.base());
            let target = if a.is_machine() {
                std::iter::once(&plain)
                    .chain(pool.iter().filter(|b| **b != plain))
                    .find(|b| is_fresh(ctx, b, t))
            } else {
                None
            };
            let (a, body) = match target {
                Some(b) => {
                    let body = body.permute(&Permutation::swap(b.clone(), a.clone()));
                    (b.clone(), simplify_suspensions(ctx, &body))
                }
                None => (a.clone(), (**body).clone()),
            };
            Term::Abs(a, Box::new(tidy_with(ctx, &body, pool)))
        }
        Term::App(f, args) => Term::App(
            f.clone(),
            args.iter().map(|u| tidy_with(ctx, u, pool)).collect(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::is_alpha;
    use crate::syntax::{Atom, Unknown};

    fn sw(a: &str, b: &str) -> Permutation {
        Permutation::swap(Atom::new(a), Atom::new(b))
    }

    #[test]
    fn fresh_swaps_disappear() {
        let ctx = FreshnessContext::new().with("a", "X").with("b", "X");
        let t = Term::susp(sw("a", "b"), Unknown::new("X"));
        assert_eq!(simplify_suspensions(&ctx, &t), Term::var("X"));
    }

    #[test]
    fn visible_part_is_kept() {
        let ctx = FreshnessContext::new().with("c", "X");
        let t = Term::susp(sw("a", "b").compose(&sw("b", "c")), Unknown::new("X"));
        let u = simplify_suspensions(&ctx, &t);
        assert!(is_alpha(&ctx, &t, &u));
    }

    #[test]
    fn machine_binders_get_base_names() {
        let ctx = FreshnessContext::new();
        let t = Term::abs(
            Atom::new("a$3"),
            Term::app("f", vec![Term::atom("a$3"), Term::atom("b")]),
        );
        let u = tidy_binders(&ctx, &t);
        assert_eq!(
            u,
            Term::abs(
                Atom::new("a"),
                Term::app("f", vec![Term::atom("a"), Term::atom("b")])
            )
        );
        // a occurs free, so the binder keeps its machine name
        let t = Term::abs(Atom::new("a$3"), Term::atom("a"));
        assert_eq!(tidy_binders(&ctx, &t), t);
        // ...unless another user atom is fresh for it
        let t = Term::app("g", vec![t, Term::atom("c")]);
        let u = tidy_binders(&ctx, &t);
        assert_eq!(u.to_string(), "g([c]a,c)");
        assert!(is_alpha(&ctx, &t, &u));
    }

    #[test]
    fn nothing_fresh_means_no_change() {
        let t = Term::abs(Atom::new("a"), Term::susp(sw("a", "b"), Unknown::new("X")));
        let u = simplify_suspensions(&FreshnessContext::new(), &t);
        assert_eq!(u, t);
    }
}
