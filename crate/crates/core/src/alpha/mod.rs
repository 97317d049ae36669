//! Freshness and α-equivalence relative to a freshness context.

mod context;
mod judge;
mod oracle;
mod simplify;

pub use context::{FreshnessConstraint, FreshnessContext};
pub use judge::{
    check_alpha, check_fresh, ctx_entails, disagreement_set, is_alpha, is_fresh, Derivation,
    FigRule, Judgement,
};
pub use oracle::{alpha_oracle_ground, to_nameless, Nameless, NonGround};
pub use simplify::{simplify_suspensions, tidy_binders};
