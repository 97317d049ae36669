use thiserror::Error;

use crate::alpha::{is_alpha, FreshnessContext};
use crate::rewrite::{Normalized, RewriteTrace, SearchConfig, Status, Theory};
use crate::syntax::Term;

use super::closedness::is_closed_rule;
use super::session::Session;
use super::step::{closed_joinable, closed_normalize};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("rule `{0}` is not closed, so closed rewriting does not decide equality")]
    NotClosed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equal,
    NotEqual,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equal => "equal",
            Verdict::NotEqual => "not-equal",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct DecideOptions {
    /// Trust that the rules are terminating and confluent, so distinct normal
    /// forms mean distinct terms.
    pub assume_convergent: bool,
    pub cfg: SearchConfig,
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    pub left: Normalized,
    pub right: Normalized,
    /// A valley found after the normal forms disagreed.
    pub join: Option<RewriteTrace>,
}

/// Decides `Δ ⊢ s = t` in the equational theory presented by closed rules.
///
/// Both sides are normalised by closed rewriting and the normal forms compared
/// up to α. `Equal` is always sound. `NotEqual` is only reported under
/// `assume_convergent`; otherwise a bounded valley search is tried and the
/// answer is `Inconclusive` if it fails. Running out of fuel is `Inconclusive`.
pub fn decide_equal(
    session: &mut Session,
    ctx: &FreshnessContext,
    s: &Term,
    t: &Term,
    theory: &Theory,
    opts: &DecideOptions,
) -> Result<Decision, DecideError> {
    for rule in &theory.rules {
        if !is_closed_rule(session, rule).closed {
            return Err(DecideError::NotClosed(rule.name.clone()));
        }
    }
    let left = closed_normalize(session, ctx, s, theory, &opts.cfg);
    let right = closed_normalize(session, ctx, t, theory, &opts.cfg);
    let both_normal = left.status == Status::NormalForm && right.status == Status::NormalForm;
    let mut join = None;
    let verdict = if is_alpha(ctx, &left.term, &right.term) {
        Verdict::Equal
    } else if both_normal && opts.assume_convergent {
        Verdict::NotEqual
    } else {
        join = closed_joinable(session, ctx, s, t, theory, &opts.cfg);
        if join.is_some() {
            Verdict::Equal
        } else {
            Verdict::Inconclusive
        }
    };
    Ok(Decision {
        verdict,
        left,
        right,
        join,
    })
}
