//! An independent α-equivalence decision for ground terms, by conversion to a
//! nameless (de Bruijn indexed) representation.

use thiserror::Error;

use crate::syntax::{Atom, Symbol, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("term `{0}` contains unknowns; the nameless oracle only handles ground terms")]
pub struct NonGround(pub Term);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Nameless {
    Free(Atom),
    /// Distance to the binding abstraction, innermost binder is 0.
    Bound(usize),
    Abs(Box<Nameless>),
    App(Symbol, Vec<Nameless>),
}

pub fn to_nameless(t: &Term) -> Result<Nameless, NonGround> {
    fn go(t: &Term, binders: &mut Vec<Atom>, root: &Term) -> Result<Nameless, NonGround> {
        Ok(match t {
            Term::Atom(a) => match binders.iter().rev().position(|b| b == a) {
                Some(i) => Nameless::Bound(i),
                None => Nameless::Free(a.clone()),
            },
            Term::Susp(..) => return Err(NonGround(root.clone())),
            Term::Abs(a, body) => {
                binders.push(a.clone());
                let inner = go(body, binders, root);
                binders.pop();
                Nameless::Abs(Box::new(inner?))
            }
            Term::App(f, args) => Nameless::App(
                f.clone(),
                args.iter()
                    .map(|u| go(u, binders, root))
                    .collect::<Result<_, _>>()?,
            ),
        })
    }
    go(t, &mut Vec::new(), t)
}

pub fn alpha_oracle_ground(s: &Term, t: &Term) -> Result<bool, NonGround> {
    Ok(to_nameless(s)? == to_nameless(t)?)
}
