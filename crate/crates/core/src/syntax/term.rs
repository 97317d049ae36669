use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::names::{Atom, Symbol, Unknown};
use super::perm::Permutation;
use super::position::{Position, Step};
use super::subst::Substitution;

/// Nominal terms: `a | π·X | [a]t | f(t1, ..., tn)`.
///
/// A bare unknown is always represented as `Susp(id, X)`, and permutations
/// applied to terms are pushed down eagerly, so a permutation only ever rests
/// on an unknown.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Atom(Atom),
    Susp(Permutation, Unknown),
    Abs(Atom, Box<Term>),
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn atom(name: impl AsRef<str>) -> Term {
        Term::Atom(Atom::new(name))
    }

    pub fn var(name: impl AsRef<str>) -> Term {
        Term::Susp(Permutation::id(), Unknown::new(name))
    }

    pub fn susp(pi: Permutation, x: Unknown) -> Term {
        Term::Susp(pi, x)
    }

    pub fn abs(a: Atom, body: Term) -> Term {
        Term::Abs(a, Box::new(body))
    }

    pub fn app(f: impl AsRef<str>, args: Vec<Term>) -> Term {
        Term::App(Symbol::new(f), args)
    }

    /// The permutation action `π·t`.
    pub fn permute(&self, pi: &Permutation) -> Term {
        if pi.swaps().is_empty() {
            return self.clone();
        }
        self.permute_nonempty(pi)
    }

    fn permute_nonempty(&self, pi: &Permutation) -> Term {
        match self {
            Term::Atom(a) => Term::Atom(pi.apply(a)),
            Term::Susp(p, x) => Term::Susp(pi.compose(p), x.clone()),
            Term::Abs(a, body) => Term::Abs(pi.apply(a), Box::new(body.permute_nonempty(pi))),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|t| t.permute_nonempty(pi)).collect(),
            ),
        }
    }

    /// The substitution action `tσ`. Substitution is capturing.
    pub fn subst(&self, sigma: &Substitution) -> Term {
        if sigma.is_empty() {
            return self.clone();
        }
        match self {
            Term::Atom(_) => self.clone(),
            Term::Susp(p, x) => match sigma.lookup(x) {
                Some(image) => image.permute(p),
                None => self.clone(),
            },
            Term::Abs(a, body) => Term::Abs(a.clone(), Box::new(body.subst(sigma))),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|t| t.subst(sigma)).collect())
            }
        }
    }

    pub fn is_susp(&self) -> bool {
        matches!(self, Term::Susp(..))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Atom(_) => true,
            Term::Susp(..) => false,
            Term::Abs(_, body) => body.is_ground(),
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Atom(_) | Term::Susp(..) => 1,
            Term::Abs(_, body) => 1 + body.size(),
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Height of the syntax tree; atoms and suspensions have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Term::Atom(_) | Term::Susp(..) => 1,
            Term::Abs(_, body) => 1 + body.depth(),
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn subterm(&self, pos: &Position) -> Option<&Term> {
        let mut cur = self;
        for step in pos.steps() {
            cur = match (step, cur) {
                (Step::Body, Term::Abs(_, body)) => body,
                (Step::Arg(i), Term::App(_, args)) => args.get(*i)?,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// `C[u]` where `C` is this term with a hole at `pos`. Capturing, like
    /// substitution. Returns `None` if the position does not exist.
    pub fn replace(&self, pos: &Position, u: Term) -> Option<Term> {
        self.replace_from(pos.steps(), u)
    }

    fn replace_from(&self, steps: &[Step], u: Term) -> Option<Term> {
        let Some((first, rest)) = steps.split_first() else {
            return Some(u);
        };
        match (first, self) {
            (Step::Body, Term::Abs(a, body)) => {
                Some(Term::Abs(a.clone(), Box::new(body.replace_from(rest, u)?)))
            }
            (Step::Arg(i), Term::App(f, args)) if *i < args.len() => {
                let mut args = args.clone();
                args[*i] = args[*i].replace_from(rest, u)?;
                Some(Term::App(f.clone(), args))
            }
            _ => None,
        }
    }

    /// All positions in leftmost-outermost (pre-) order, with their subterms.
    pub fn positions(&self) -> Vec<(Position, &Term)> {
        let mut out = Vec::new();
        self.collect_positions(&mut Vec::new(), &mut out, false);
        out
    }

    /// All positions in leftmost-innermost (post-) order.
    pub fn positions_innermost(&self) -> Vec<(Position, &Term)> {
        let mut out = Vec::new();
        self.collect_positions(&mut Vec::new(), &mut out, true);
        out
    }

    fn collect_positions<'a>(
        &'a self,
        path: &mut Vec<Step>,
        out: &mut Vec<(Position, &'a Term)>,
        post: bool,
    ) {
        if !post {
            out.push((Position::new(path.clone()), self));
        }
        match self {
            Term::Abs(_, body) => {
                path.push(Step::Body);
                body.collect_positions(path, out, post);
                path.pop();
            }
            Term::App(_, args) => {
                for (i, t) in args.iter().enumerate() {
                    path.push(Step::Arg(i));
                    t.collect_positions(path, out, post);
                    path.pop();
                }
            }
            _ => {}
        }
        if post {
            out.push((Position::new(path.clone()), self));
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Atom(a) => write!(f, "{a}"),
            Term::Susp(p, x) => {
                if p.swaps().is_empty() {
                    write!(f, "{x}")
                } else {
                    write!(f, "{p}.{x}")
                }
            }
            Term::Abs(a, body) => write!(f, "[{a}]{body}"),
            Term::App(s, args) => {
                write!(f, "{s}")?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, t) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{t}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("unknown term-former `{0}`")]
    UnknownFormer(Symbol),
    #[error("term-former `{former}` has arity {expected} but is applied to {found} argument(s)")]
    Arity {
        former: Symbol,
        expected: usize,
        found: usize,
    },
    #[error("term-former `{former}` declared with arity {first} and again with arity {second}")]
    Redeclared {
        former: Symbol,
        first: usize,
        second: usize,
    },
}

/// Term-formers with their arities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    arities: BTreeMap<Symbol, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn declare(&mut self, f: Symbol, arity: usize) -> Result<(), SignatureError> {
        match self.arities.get(&f) {
            Some(&prev) if prev != arity => Err(SignatureError::Redeclared {
                former: f,
                first: prev,
                second: arity,
            }),
            _ => {
                self.arities.insert(f, arity);
                Ok(())
            }
        }
    }

    pub fn with(mut self, f: &str, arity: usize) -> Self {
        self.declare(Symbol::new(f), arity)
            .expect("conflicting arity in signature literal");
        self
    }

    pub fn arity(&self, f: &Symbol) -> Option<usize> {
        self.arities.get(f).copied()
    }

    pub fn contains(&self, f: &Symbol) -> bool {
        self.arities.contains_key(f)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, usize)> {
        self.arities.iter().map(|(f, n)| (f, *n))
    }

    pub fn is_empty(&self) -> bool {
        self.arities.is_empty()
    }

    /// Checks that every application in `t` uses a declared former at its arity.
    pub fn check(&self, t: &Term) -> Result<(), SignatureError> {
        match t {
            Term::Atom(_) | Term::Susp(..) => Ok(()),
            Term::Abs(_, body) => self.check(body),
            Term::App(f, args) => {
                let expected = self
                    .arity(f)
                    .ok_or_else(|| SignatureError::UnknownFormer(f.clone()))?;
                if expected != args.len() {
                    return Err(SignatureError::Arity {
                        former: f.clone(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check(a))
            }
        }
    }
}

/// Things that mention atoms and unknowns: `atms(·)` and `unkn(·)`.
pub trait Names {
    fn collect_atoms(&self, out: &mut BTreeSet<Atom>);
    fn collect_unknowns(&self, out: &mut BTreeSet<Unknown>);

    fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn unknowns(&self) -> BTreeSet<Unknown> {
        let mut out = BTreeSet::new();
        self.collect_unknowns(&mut out);
        out
    }
}

impl Names for Term {
    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Term::Atom(a) => {
                out.insert(a.clone());
            }
            Term::Susp(p, _) => out.extend(p.support()),
            Term::Abs(a, body) => {
                out.insert(a.clone());
                body.collect_atoms(out);
            }
            Term::App(_, args) => args.iter().for_each(|t| t.collect_atoms(out)),
        }
    }

    fn collect_unknowns(&self, out: &mut BTreeSet<Unknown>) {
        match self {
            Term::Atom(_) => {}
            Term::Susp(_, x) => {
                out.insert(x.clone());
            }
            Term::Abs(_, body) => body.collect_unknowns(out),
            Term::App(_, args) => args.iter().for_each(|t| t.collect_unknowns(out)),
        }
    }
}

impl Names for Atom {
    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        out.insert(self.clone());
    }
    fn collect_unknowns(&self, _: &mut BTreeSet<Unknown>) {}
}

impl<T: Names + ?Sized> Names for &T {
    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        (**self).collect_atoms(out)
    }
    fn collect_unknowns(&self, out: &mut BTreeSet<Unknown>) {
        (**self).collect_unknowns(out)
    }
}

impl<T: Names> Names for [T] {
    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        self.iter().for_each(|t| t.collect_atoms(out))
    }
    fn collect_unknowns(&self, out: &mut BTreeSet<Unknown>) {
        self.iter().for_each(|t| t.collect_unknowns(out))
    }
}

impl<T: Names> Names for Vec<T> {
    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        self.as_slice().collect_atoms(out)
    }
    fn collect_unknowns(&self, out: &mut BTreeSet<Unknown>) {
        self.as_slice().collect_unknowns(out)
    }
}

macro_rules! tuple_names {
    ($($t:ident . $i:tt),+) => {
        impl<$($t: Names),+> Names for ($($t,)+) {
            fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
                $(self.$i.collect_atoms(out);)+
            }
            fn collect_unknowns(&self, out: &mut BTreeSet<Unknown>) {
                $(self.$i.collect_unknowns(out);)+
            }
        }
    };
}

tuple_names!(A.0, B.1);
tuple_names!(A.0, B.1, C.2);
tuple_names!(A.0, B.1, C.2, D.3);

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Atom {
        Atom::new(s)
    }

    fn sw(x: &str, y: &str) -> Permutation {
        Permutation::swap(a(x), a(y))
    }

    #[test]
    fn permutation_renames_binders() {
        // (a b)·[a]f(a,c) = [b]f(b,c)
        let t = Term::abs(
            a("a"),
            Term::app("f", vec![Term::atom("a"), Term::atom("c")]),
        );
        let expected = Term::abs(
            a("b"),
            Term::app("f", vec![Term::atom("b"), Term::atom("c")]),
        );
        assert_eq!(t.permute(&sw("a", "b")), expected);
    }

    #[test]
    fn permutation_is_absorbed_by_suspensions() {
        let inner = Term::susp(sw("b", "c"), Unknown::new("X"));
        let composed = Term::susp(sw("a", "b").compose(&sw("b", "c")), Unknown::new("X"));
        assert_eq!(inner.permute(&sw("a", "b")), composed);
    }

    #[test]
    fn identity_permutation_is_neutral() {
        let t = Term::abs(
            a("a"),
            Term::app("f", vec![Term::var("X"), Term::atom("b")]),
        );
        assert_eq!(t.permute(&Permutation::id()), t);
    }

    #[test]
    fn atms_and_unkn() {
        let t = Term::susp(sw("a", "b"), Unknown::new("X"));
        assert_eq!(t.atoms(), [a("a"), a("b")].into_iter().collect());
        let t = Term::abs(a("a"), Term::atom("b"));
        assert_eq!(t.atoms(), [a("a"), a("b")].into_iter().collect());
        assert!(t.unknowns().is_empty());
        let t = Term::app(
            "f",
            vec![Term::var("X"), Term::susp(sw("a", "b"), Unknown::new("Y"))],
        );
        assert_eq!(
            t.unknowns(),
            [Unknown::new("X"), Unknown::new("Y")].into_iter().collect()
        );
    }

    #[test]
    fn positions_in_leftmost_outermost_order() {
        let t = Term::app(
            "f",
            vec![Term::atom("a"), Term::app("g", vec![Term::atom("b")])],
        );
        let ps: Vec<String> = t.positions().iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(ps, vec!["ε", "arg1", "arg2", "arg2.arg1"]);
        let t = Term::abs(a("a"), Term::atom("b"));
        let ps: Vec<(String, String)> = t
            .positions()
            .iter()
            .map(|(p, s)| (p.to_string(), s.to_string()))
            .collect();
        assert_eq!(
            ps,
            vec![("ε".into(), "[a]b".into()), ("body".into(), "b".into())]
        );
        assert_eq!(Term::atom("a").positions().len(), 1);
    }

    #[test]
    fn replace_is_capturing() {
        let t = Term::abs(a("a"), Term::var("X"));
        let p = Position::new(vec![Step::Body]);
        assert_eq!(
            t.replace(&p, Term::atom("a")).unwrap(),
            Term::abs(a("a"), Term::atom("a"))
        );
        assert!(t
            .replace(&Position::new(vec![Step::Arg(0)]), Term::atom("a"))
            .is_none());
    }

    #[test]
    fn signature_checks_arity() {
        let sig = Signature::new().with("lam", 1).with("app", 2);
        assert!(sig.check(&Term::app("lam", vec![Term::atom("a")])).is_ok());
        assert!(matches!(
            sig.check(&Term::app("app", vec![Term::atom("a")])),
            Err(SignatureError::Arity { .. })
        ));
        assert!(matches!(
            sig.check(&Term::app("g", vec![])),
            Err(SignatureError::UnknownFormer(_))
        ));
    }
}
