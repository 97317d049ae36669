use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::alpha::FreshnessContext;
use crate::syntax::{Atom, Names, Permutation, Signature, Term, Unknown};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("rule `{rule}`: unknown {unknown} occurs on the right but not on the left")]
    RhsUnknown { rule: String, unknown: Unknown },
    #[error("rule `{rule}`: unknown {unknown} occurs in the context but not on the left")]
    CtxUnknown { rule: String, unknown: Unknown },
}

/// A rewrite rule `∇ ⊢ l → r`.
///
/// Rules are executable: every unknown of `r` and of `∇` occurs in `l`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RewriteRule {
    pub name: String,
    pub ctx: FreshnessContext,
    pub lhs: Term,
    pub rhs: Term,
}

impl RewriteRule {
    pub fn new(
        name: impl Into<String>,
        ctx: FreshnessContext,
        lhs: Term,
        rhs: Term,
    ) -> Result<Self, RuleError> {
        let rule = RewriteRule {
            name: name.into(),
            ctx,
            lhs,
            rhs,
        };
        rule.check_executable()?;
        Ok(rule)
    }

    pub fn check_executable(&self) -> Result<(), RuleError> {
        let left = self.lhs.unknowns();
        if let Some(x) = self.rhs.unknowns().difference(&left).next() {
            return Err(RuleError::RhsUnknown {
                rule: self.name.clone(),
                unknown: x.clone(),
            });
        }
        if let Some(x) = self.ctx.unknowns().difference(&left).next() {
            return Err(RuleError::CtxUnknown {
                rule: self.name.clone(),
                unknown: x.clone(),
            });
        }
        Ok(())
    }

    /// `∇ ⊢ r → l`, if that is executable.
    pub fn reversed(&self) -> Option<RewriteRule> {
        let rule = RewriteRule {
            name: self.name.clone(),
            ctx: self.ctx.clone(),
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
        };
        rule.check_executable().ok().map(|_| rule)
    }

    /// Applies atom and unknown renamings to every part of the rule.
    pub fn rename(
        &self,
        atoms: &BTreeMap<Atom, Atom>,
        unknowns: &BTreeMap<Unknown, Unknown>,
    ) -> RewriteRule {
        RewriteRule {
            name: self.name.clone(),
            ctx: rename_ctx(&self.ctx, atoms, unknowns),
            lhs: rename_term(&self.lhs, atoms, unknowns),
            rhs: rename_term(&self.rhs, atoms, unknowns),
        }
    }

    /// Whether `other` is this rule with atoms and unknowns renamed bijectively.
    pub fn is_renaming_of(&self, other: &RewriteRule) -> bool {
        let mut r = Renamer::default();
        if !(r.term(&other.lhs, &self.lhs) && r.term(&other.rhs, &self.rhs)) {
            return false;
        }
        if other.ctx.len() != self.ctx.len() {
            return false;
        }
        // atoms mentioned only in the context are paired up by the unknowns
        // they are constrained against
        let constrained = |ctx: &FreshnessContext, a: &Atom| -> BTreeSet<Unknown> {
            ctx.iter()
                .filter(|(b, _)| b == a)
                .map(|(_, x)| x.clone())
                .collect()
        };
        for a in other.ctx.atoms() {
            if r.atoms.contains_key(&a) {
                continue;
            }
            let Some(xs) = constrained(&other.ctx, &a)
                .iter()
                .map(|x| r.unknowns.get(x).cloned())
                .collect::<Option<BTreeSet<Unknown>>>()
            else {
                return false;
            };
            let partner = self
                .ctx
                .atoms()
                .into_iter()
                .find(|b| !r.atom_images.contains_key(b) && constrained(&self.ctx, b) == xs);
            match partner {
                Some(b) => {
                    r.atom(&a, &b);
                }
                None => return false,
            }
        }
        other
            .ctx
            .iter()
            .all(|(a, x)| match (r.atoms.get(a), r.unknowns.get(x)) {
                (Some(b), Some(y)) => self.ctx.contains(b, y),
                _ => false,
            })
    }
}

#[derive(Default)]
struct Renamer {
    atoms: BTreeMap<Atom, Atom>,
    atom_images: BTreeMap<Atom, Atom>,
    unknowns: BTreeMap<Unknown, Unknown>,
    unknown_images: BTreeMap<Unknown, Unknown>,
}

impl Renamer {
    fn atom(&mut self, a: &Atom, b: &Atom) -> bool {
        match (self.atoms.get(a), self.atom_images.get(b)) {
            (Some(x), _) => x == b,
            (None, Some(_)) => false,
            (None, None) => {
                self.atoms.insert(a.clone(), b.clone());
                self.atom_images.insert(b.clone(), a.clone());
                true
            }
        }
    }

    fn unknown(&mut self, x: &Unknown, y: &Unknown) -> bool {
        match (self.unknowns.get(x), self.unknown_images.get(y)) {
            (Some(z), _) => z == y,
            (None, Some(_)) => false,
            (None, None) => {
                self.unknowns.insert(x.clone(), y.clone());
                self.unknown_images.insert(y.clone(), x.clone());
                true
            }
        }
    }

    fn term(&mut self, s: &Term, t: &Term) -> bool {
        match (s, t) {
            (Term::Atom(a), Term::Atom(b)) => self.atom(a, b),
            (Term::Susp(p, x), Term::Susp(q, y)) => {
                p.swaps().len() == q.swaps().len()
                    && p.swaps()
                        .iter()
                        .zip(q.swaps())
                        .all(|((a1, b1), (a2, b2))| self.atom(a1, a2) && self.atom(b1, b2))
                    && self.unknown(x, y)
            }
            (Term::Abs(a, s1), Term::Abs(b, t1)) => self.atom(a, b) && self.term(s1, t1),
            (Term::App(f, ss), Term::App(g, ts)) => {
                f == g && ss.len() == ts.len() && ss.iter().zip(ts).all(|(s, t)| self.term(s, t))
            }
            _ => false,
        }
    }
}

pub(crate) fn rename_term(
    t: &Term,
    atoms: &BTreeMap<Atom, Atom>,
    unknowns: &BTreeMap<Unknown, Unknown>,
) -> Term {
    let ra = |a: &Atom| atoms.get(a).cloned().unwrap_or_else(|| a.clone());
    match t {
        Term::Atom(a) => Term::Atom(ra(a)),
        Term::Susp(p, x) => Term::Susp(
            Permutation::from_swaps(p.swaps().iter().map(|(a, b)| (ra(a), ra(b)))),
            unknowns.get(x).cloned().unwrap_or_else(|| x.clone()),
        ),
        Term::Abs(a, body) => Term::Abs(ra(a), Box::new(rename_term(body, atoms, unknowns))),
        Term::App(f, args) => Term::App(
            f.clone(),
            args.iter()
                .map(|u| rename_term(u, atoms, unknowns))
                .collect(),
        ),
    }
}

pub(crate) fn rename_ctx(
    ctx: &FreshnessContext,
    atoms: &BTreeMap<Atom, Atom>,
    unknowns: &BTreeMap<Unknown, Unknown>,
) -> FreshnessContext {
    ctx.iter()
        .map(|(a, x)| {
            (
                atoms.get(a).cloned().unwrap_or_else(|| a.clone()),
                unknowns.get(x).cloned().unwrap_or_else(|| x.clone()),
            )
        })
        .collect()
}

impl Names for RewriteRule {
    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        self.ctx.collect_atoms(out);
        self.lhs.collect_atoms(out);
        self.rhs.collect_atoms(out);
    }

    fn collect_unknowns(&self, out: &mut BTreeSet<Unknown>) {
        self.ctx.collect_unknowns(out);
        self.lhs.collect_unknowns(out);
        self.rhs.collect_unknowns(out);
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.is_empty() {
            write!(f, "|- {} -> {}", self.lhs, self.rhs)
        } else {
            write!(f, "{} |- {} -> {}", self.ctx, self.lhs, self.rhs)
        }
    }
}

impl fmt::Debug for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self)
    }
}

/// Whether the rules of a theory are meant as oriented rewrite rules or as
/// unoriented equations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TheoryKind {
    #[default]
    Rewrite,
    Equational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    pub signature: Signature,
    pub rules: Vec<RewriteRule>,
    pub kind: TheoryKind,
}

impl Theory {
    pub fn new(name: impl Into<String>, signature: Signature, rules: Vec<RewriteRule>) -> Self {
        Theory {
            name: name.into(),
            signature,
            rules,
            kind: TheoryKind::Rewrite,
        }
    }

    pub fn rule(&self, name: &str) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.name == name)
    }

    /// The theory restricted to the named rules, in the given order.
    pub fn only(&self, names: &[&str]) -> Theory {
        Theory {
            name: self.name.clone(),
            signature: self.signature.clone(),
            rules: names.iter().filter_map(|n| self.rule(n).cloned()).collect(),
            kind: self.kind,
        }
    }
}

impl Names for Theory {
    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        self.rules.collect_atoms(out)
    }

    fn collect_unknowns(&self, out: &mut BTreeSet<Unknown>) {
        self.rules.collect_unknowns(out)
    }
}
