use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::names::{Atom, Unknown};
use super::term::{Names, Term};

/// A finite map from unknowns to terms. Unknowns outside the domain behave as
/// `id·X`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    map: BTreeMap<Unknown, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn singleton(x: Unknown, t: Term) -> Self {
        let mut s = Substitution::new();
        s.insert(x, t);
        s
    }

    pub fn insert(&mut self, x: Unknown, t: Term) -> Option<Term> {
        self.map.insert(x, t)
    }

    pub fn lookup(&self, x: &Unknown) -> Option<&Term> {
        self.map.get(x)
    }

    /// `σ(X)`, defaulting to `id·X` outside the domain.
    pub fn get(&self, x: &Unknown) -> Term {
        self.map
            .get(x)
            .cloned()
            .unwrap_or_else(|| Term::Susp(Default::default(), x.clone()))
    }

    pub fn domain(&self) -> impl Iterator<Item = &Unknown> {
        self.map.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Unknown, &Term)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `σ∘θ`, mapping each `X` to `(Xσ)θ`.
    pub fn compose(&self, theta: &Substitution) -> Substitution {
        let mut map: BTreeMap<Unknown, Term> = self
            .map
            .iter()
            .map(|(x, t)| (x.clone(), t.subst(theta)))
            .collect();
        for (x, t) in &theta.map {
            map.entry(x.clone()).or_insert_with(|| t.clone());
        }
        Substitution { map }
    }

    pub fn restrict(&self, keep: &BTreeSet<Unknown>) -> Substitution {
        Substitution {
            map: self
                .map
                .iter()
                .filter(|(x, _)| keep.contains(*x))
                .map(|(x, t)| (x.clone(), t.clone()))
                .collect(),
        }
    }
}

impl FromIterator<(Unknown, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Unknown, Term)>>(iter: I) -> Self {
        Substitution {
            map: iter.into_iter().collect(),
        }
    }
}

/// `atms(θ)` is the atoms of the images; `unkn(θ)` covers domain and images.
impl Names for Substitution {
    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        self.map.values().for_each(|t| t.collect_atoms(out))
    }

    fn collect_unknowns(&self, out: &mut BTreeSet<Unknown>) {
        for (x, t) in &self.map {
            out.insert(x.clone());
            t.collect_unknowns(out);
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (x, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}:={t}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
