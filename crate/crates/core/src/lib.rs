//! Nominal terms with atoms, abstraction and permutation-suspended unknowns,
//! together with α-equivalence, nominal matching, nominal rewriting and
//! closed nominal rewriting.
//!
//! ```
//! use nomrew::closed::{closed_normalize, Session};
//! use nomrew::frontend::{corpus, parse_term};
//! use nomrew::{is_alpha, FreshnessContext, SearchConfig};
//!
//! let theory = corpus::betaeta();
//! let ctx = FreshnessContext::new();
//! let s = parse_term("app(lam([a]app(a,a)),b)").unwrap();
//! let n = closed_normalize(&mut Session::default(), &ctx, &s, &theory, &SearchConfig::default());
//! assert!(is_alpha(&ctx, &n.term, &parse_term("app(b,b)").unwrap()));
//! ```

pub mod alpha;
pub mod closed;
pub mod frontend;
pub mod matching;
pub mod rewrite;
pub mod syntax;

pub use alpha::{
    check_alpha, check_fresh, is_alpha, is_fresh, FreshnessConstraint, FreshnessContext,
};
pub use closed::Session;
pub use matching::{solve_match, MatchProblem, MatchSolution};
pub use rewrite::{RewriteRule, RewriteStep, RewriteTrace, SearchConfig, Strategy, Theory};
pub use syntax::{
    Atom, Names, Permutation, Position, Signature, Substitution, Symbol, Term, Unknown,
};
