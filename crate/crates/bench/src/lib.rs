//! Workloads for the engine benchmarks.

use nomrew::{Atom, Term};

/// `app(lam([a1]...app(lam([an]app(a_n,a_n)), ...)), b)`: a chain of `n`
/// nested β-redexes, each duplicating its argument.
pub fn redex_chain(n: usize) -> Term {
    let mut t = Term::atom("b");
    for i in 0..n {
        let a = Atom::new(format!("a{i}"));
        let body = Term::app("app", vec![Term::Atom(a.clone()), Term::Atom(a.clone())]);
        t = Term::app("app", vec![Term::app("lam", vec![Term::abs(a, body)]), t]);
    }
    t
}

/// `[a1][a2]...[an]f(a1, ..., an)` with every binder renamed to `b_i`, so the
/// two terms are α-equivalent but share no binder names.
pub fn binder_pair(n: usize) -> (Term, Term) {
    let build = |prefix: &str| {
        let names: Vec<Atom> = (0..n).map(|i| Atom::new(format!("{prefix}{i}"))).collect();
        let mut t = Term::app("f", names.iter().cloned().map(Term::Atom).collect());
        for a in names.into_iter().rev() {
            t = Term::abs(a, t);
        }
        t
    };
    (build("a"), build("b"))
}
