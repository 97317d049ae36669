//! Freshened variants, closedness, closed rewriting and deciding equality by
//! closed normalisation.

mod closedness;
mod decide;
mod session;
mod step;

pub use closedness::{is_closed, is_closed_rule, pair, Closedness, PAIR_FORMER};
pub use decide::{decide_equal, DecideError, DecideOptions, Decision, Verdict};
pub use session::{FreshenedVariant, Rename, Session};
pub use step::{closed_joinable, closed_normalize, closed_rewrite_step, first_closed_step};
