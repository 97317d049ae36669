//! General nominal rewriting: rules, the one-step relation with its
//! permutation search, normalisation, reachability and symmetric search.

mod closure;
mod general;
mod rule;
mod search;
mod step;

pub use crate::syntax::{Position, Step};
pub use closure::{
    find_rewrite_path, first_general_step, normalize_general, rewrite_closure_reachable, AlphaSet,
    Normalized, Reachable, Status,
};
pub use general::{
    check_equivariance_sample, rewrite_step_general, SearchConfig, StepResults, Strategy,
};
pub use rule::{RewriteRule, RuleError, Theory, TheoryKind};
pub use search::{fresh_gamma, symmetric_search, SearchOutcome};
pub use step::{
    Orientation, RewriteStep, RewriteTrace, StepError, StepKind, TraceError, TraceStep,
};

pub(crate) use closure::{strategy_positions, Explorer};
pub(crate) use rule::{rename_ctx, rename_term};
