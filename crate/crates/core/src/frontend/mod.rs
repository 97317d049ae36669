//! Concrete syntax, printing, JSON reports and the bundled theories.

pub mod corpus;
mod parse;
mod print;
pub mod report;

pub use parse::{
    parse_context, parse_context_with, parse_term, parse_term_with, parse_theory,
    parse_theory_with, ParseError, ParseOptions, Span,
};
pub use print::{print_rule, print_theory};
