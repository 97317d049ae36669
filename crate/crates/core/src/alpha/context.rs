use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{Atom, Names, Term, Unknown};

/// A freshness constraint `a#t`. Only primitive ones (`a#X`) live in contexts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreshnessConstraint {
    pub atom: Atom,
    pub target: Term,
}

impl FreshnessConstraint {
    pub fn new(atom: Atom, target: Term) -> Self {
        FreshnessConstraint { atom, target }
    }

    pub fn is_primitive(&self) -> bool {
        matches!(&self.target, Term::Susp(p, _) if p.is_id())
    }
}

impl fmt::Display for FreshnessConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.atom, self.target)
    }
}

/// A finite set of primitive freshness constraints `a#X`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FreshnessContext {
    pairs: BTreeSet<(Atom, Unknown)>,
}

impl FreshnessContext {
    pub fn new() -> Self {
        FreshnessContext::default()
    }

    pub fn insert(&mut self, a: Atom, x: Unknown) -> bool {
        self.pairs.insert((a, x))
    }

    pub fn with(mut self, a: &str, x: &str) -> Self {
        self.insert(Atom::new(a), Unknown::new(x));
        self
    }

    pub fn contains(&self, a: &Atom, x: &Unknown) -> bool {
        self.pairs.contains(&(a.clone(), x.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Atom, Unknown)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn union(&self, other: &FreshnessContext) -> FreshnessContext {
        FreshnessContext {
            pairs: self.pairs.union(&other.pairs).cloned().collect(),
        }
    }

    pub fn is_subset(&self, other: &FreshnessContext) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    /// `A # U`: every atom of `atoms` fresh for every unknown of `unknowns`.
    pub fn product<'a>(
        atoms: impl IntoIterator<Item = &'a Atom>,
        unknowns: impl IntoIterator<Item = &'a Unknown> + Clone,
    ) -> FreshnessContext {
        let mut ctx = FreshnessContext::new();
        for a in atoms {
            for x in unknowns.clone() {
                ctx.insert(a.clone(), x.clone());
            }
        }
        ctx
    }

    /// The constraints `a#X` as general freshness constraints.
    pub fn constraints(&self) -> Vec<FreshnessConstraint> {
        self.pairs
            .iter()
            .map(|(a, x)| {
                FreshnessConstraint::new(a.clone(), Term::Susp(Default::default(), x.clone()))
            })
            .collect()
    }
}

impl Extend<(Atom, Unknown)> for FreshnessContext {
    fn extend<I: IntoIterator<Item = (Atom, Unknown)>>(&mut self, iter: I) {
        self.pairs.extend(iter)
    }
}

impl FromIterator<(Atom, Unknown)> for FreshnessContext {
    fn from_iter<I: IntoIterator<Item = (Atom, Unknown)>>(iter: I) -> Self {
        FreshnessContext {
            pairs: iter.into_iter().collect(),
        }
    }
}

impl Names for FreshnessContext {
    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        out.extend(self.pairs.iter().map(|(a, _)| a.clone()))
    }

    fn collect_unknowns(&self, out: &mut BTreeSet<Unknown>) {
        out.extend(self.pairs.iter().map(|(_, x)| x.clone()))
    }
}

impl Names for FreshnessConstraint {
    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        out.insert(self.atom.clone());
        self.target.collect_atoms(out);
    }

    fn collect_unknowns(&self, out: &mut BTreeSet<Unknown>) {
        self.target.collect_unknowns(out)
    }
}

impl fmt::Display for FreshnessContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, x)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}#{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FreshnessContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}
