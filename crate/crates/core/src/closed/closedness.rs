use crate::alpha::FreshnessContext;
use crate::matching::{solve_match, MatchProblem};
use crate::rewrite::RewriteRule;
use crate::syntax::{Names, Substitution, Symbol, Term};

use super::session::Session;

/// Reserved binary former used to test a rule `∇ ⊢ l → r` as the single term
/// `∇ ⊢ pair(l, r)`. The marker keeps it out of every user signature.
pub const PAIR_FORMER: &str = "$pair";

pub fn pair(l: Term, r: Term) -> Term {
    Term::App(Symbol::new(PAIR_FORMER), vec![l, r])
}

/// The outcome of a closedness test, with the matching problem that decided it.
#[derive(Clone, Debug)]
pub struct Closedness {
    pub closed: bool,
    /// `(∇' ⊢ t') ⪯? (∇, atms(∇',t')#unkn(∇,t) ⊢ t)`.
    pub problem: MatchProblem,
    pub witness: Option<Substitution>,
}

/// Whether `∇ ⊢ t` is closed: a freshened variant `∇' ⊢ t'` matches `t` under
/// `∇` extended with the fresh atoms constrained against every unknown of
/// `∇ ⊢ t`.
pub fn is_closed(session: &mut Session, ctx: &FreshnessContext, t: &Term) -> Closedness {
    let item = (ctx.clone(), t.clone());
    let variant = session.freshen(&item, &item.atoms(), &item.unknowns());
    let (fresh_ctx, fresh_term) = variant.renamed;
    let fresh_atoms = (&fresh_ctx, &fresh_term).atoms();
    let target_ctx = ctx.union(&FreshnessContext::product(&fresh_atoms, &item.unknowns()));
    let problem = MatchProblem::new(fresh_ctx, fresh_term, target_ctx, t.clone())
        .expect("freshened unknowns are disjoint from the original");
    let witness = solve_match(&problem).map(|s| s.sigma);
    Closedness {
        closed: witness.is_some(),
        problem,
        witness,
    }
}

pub fn is_closed_rule(session: &mut Session, rule: &RewriteRule) -> Closedness {
    is_closed(
        session,
        &rule.ctx,
        &pair(rule.lhs.clone(), rule.rhs.clone()),
    )
}
