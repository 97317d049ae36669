use std::collections::{BTreeMap, BTreeSet};

use crate::alpha::FreshnessContext;
use crate::rewrite::{rename_ctx, rename_term, RewriteRule};
use crate::syntax::{Atom, Names, Term, Unknown};

/// Source of machine-fresh names `base$n`.
///
/// The counter only ever grows, so names from one session never repeat. Each
/// call also receives an explicit avoid set, so names are fresh for the
/// syntax at hand even across sessions.
#[derive(Clone, Debug, Default)]
pub struct Session {
    counter: u64,
}

impl Session {
    pub fn new(seed: u64) -> Self {
        Session { counter: seed }
    }

    pub fn counter(&self) -> u64 {
        self.counter
    }

    fn next(&mut self, base: &str) -> String {
        let n = self.counter;
        self.counter += 1;
        format!("{base}{}{n}", crate::syntax::MACHINE_MARKER)
    }

    pub fn fresh_atom(&mut self, base: &str, avoid: &BTreeSet<Atom>) -> Atom {
        loop {
            let a = Atom::new(self.next(base));
            if !avoid.contains(&a) {
                return a;
            }
        }
    }

    pub fn fresh_unknown(&mut self, base: &str, avoid: &BTreeSet<Unknown>) -> Unknown {
        loop {
            let x = Unknown::new(self.next(base));
            if !avoid.contains(&x) {
                return x;
            }
        }
    }

    /// A freshened variant of `item`: every atom and unknown replaced by a new
    /// machine name outside `avoid_atoms`, `avoid_unknowns` and `item` itself.
    pub fn freshen<T: Rename + Names>(
        &mut self,
        item: &T,
        avoid_atoms: &BTreeSet<Atom>,
        avoid_unknowns: &BTreeSet<Unknown>,
    ) -> FreshenedVariant<T> {
        let atoms = item.atoms();
        let unknowns = item.unknowns();
        let mut avoid_a: BTreeSet<Atom> = avoid_atoms.union(&atoms).cloned().collect();
        let mut avoid_u: BTreeSet<Unknown> = avoid_unknowns.union(&unknowns).cloned().collect();
        let mut atom_map = BTreeMap::new();
        for a in atoms {
            let b = self.fresh_atom(a.base(), &avoid_a);
            avoid_a.insert(b.clone());
            atom_map.insert(a, b);
        }
        let mut unknown_map = BTreeMap::new();
        for x in unknowns {
            let y = self.fresh_unknown(x.base(), &avoid_u);
            avoid_u.insert(y.clone());
            unknown_map.insert(x, y);
        }
        FreshenedVariant {
            renamed: item.rename(&atom_map, &unknown_map),
            atom_map,
            unknown_map,
        }
    }
}

/// Syntax that atoms and unknowns can be renamed in.
pub trait Rename {
    fn rename(&self, atoms: &BTreeMap<Atom, Atom>, unknowns: &BTreeMap<Unknown, Unknown>) -> Self;
}

impl Rename for Term {
    fn rename(&self, atoms: &BTreeMap<Atom, Atom>, unknowns: &BTreeMap<Unknown, Unknown>) -> Self {
        rename_term(self, atoms, unknowns)
    }
}

impl Rename for FreshnessContext {
    fn rename(&self, atoms: &BTreeMap<Atom, Atom>, unknowns: &BTreeMap<Unknown, Unknown>) -> Self {
        rename_ctx(self, atoms, unknowns)
    }
}

impl Rename for RewriteRule {
    fn rename(&self, atoms: &BTreeMap<Atom, Atom>, unknowns: &BTreeMap<Unknown, Unknown>) -> Self {
        RewriteRule::rename(self, atoms, unknowns)
    }
}

impl<A: Rename, B: Rename> Rename for (A, B) {
    fn rename(&self, atoms: &BTreeMap<Atom, Atom>, unknowns: &BTreeMap<Unknown, Unknown>) -> Self {
        (
            self.0.rename(atoms, unknowns),
            self.1.rename(atoms, unknowns),
        )
    }
}

/// A copy of some syntax with all atoms and unknowns renamed apart, together
/// with the renamings used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreshenedVariant<T> {
    pub renamed: T,
    pub atom_map: BTreeMap<Atom, Atom>,
    pub unknown_map: BTreeMap<Unknown, Unknown>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binders_get_distinct_fresh_names() {
        let t = Term::abs(Atom::new("a"), Term::abs(Atom::new("b"), Term::var("X")));
        let mut session = Session::default();
        let v = session.freshen(&t, &BTreeSet::new(), &BTreeSet::new());
        let Term::Abs(a2, inner) = &v.renamed else {
            panic!()
        };
        let Term::Abs(b2, x2) = &**inner else {
            panic!()
        };
        assert_ne!(a2, b2);
        assert!(a2.is_machine() && b2.is_machine());
        assert_eq!(a2.base(), "a");
        let Term::Susp(p, x) = &**x2 else { panic!() };
        assert!(p.is_id());
        assert!(x.is_machine());
        assert_eq!(t.rename(&v.atom_map, &v.unknown_map), v.renamed);
    }

    #[test]
    fn freshened_context() {
        let ctx = FreshnessContext::new().with("a", "X");
        let mut session = Session::new(7);
        let v = session.freshen(&ctx, &BTreeSet::new(), &BTreeSet::new());
        let (a, x) = v.renamed.iter().next().unwrap().clone();
        assert_eq!(a, v.atom_map[&Atom::new("a")]);
        assert_eq!(x, v.unknown_map[&Unknown::new("X")]);
        assert!(a.name().ends_with(&format!("{}", 7)));
    }

    #[test]
    fn avoid_set_is_respected() {
        let t = Term::atom("a");
        let avoid: BTreeSet<Atom> = [Atom::new("a$0"), Atom::new("a$1")].into_iter().collect();
        let v = Session::default().freshen(&t, &avoid, &BTreeSet::new());
        assert_eq!(v.renamed, Term::atom("a$2"));
    }
}
