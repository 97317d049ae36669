//! Nominal syntax: atoms, unknowns, permutations, terms, and substitutions.

mod names;
mod perm;
mod position;
mod subst;
mod term;

pub use names::{Atom, Origin, Symbol, Unknown, MACHINE_MARKER};
pub use perm::Permutation;
pub use position::{Position, Step};
pub use subst::Substitution;
pub use term::{Names, Signature, SignatureError, Term};
