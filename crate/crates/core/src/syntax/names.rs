use std::fmt;
use std::sync::Arc;

/// Character reserved for machine-generated names. The concrete syntax never
/// accepts it, so a name containing it cannot clash with user input.
pub const MACHINE_MARKER: char = '$';

/// Where a name came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    User,
    Machine,
}

fn origin_of(name: &str) -> Origin {
    if name.contains(MACHINE_MARKER) {
        Origin::Machine
    } else {
        Origin::User
    }
}

/// The part of a name before the machine marker, so `a$12` has base `a`.
fn base_of(name: &str) -> &str {
    name.split(MACHINE_MARKER).next().unwrap_or(name)
}

macro_rules! name_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn new(name: impl AsRef<str>) -> Self {
                $name(Arc::from(name.as_ref()))
            }

            pub fn name(&self) -> &str {
                &self.0
            }

            pub fn origin(&self) -> Origin {
                origin_of(&self.0)
            }

            pub fn is_machine(&self) -> bool {
                self.origin() == Origin::Machine
            }

            pub fn base(&self) -> &str {
                base_of(&self.0)
            }

            /// The machine name `base$n`.
            pub fn machine(base: &str, n: usize) -> Self {
                $name::new(format!("{base}{MACHINE_MARKER}{n}"))
            }

            /// The machine name `base$n` with the least `n` not in `avoid`.
            pub fn fresh_for(base: &str, avoid: &std::collections::BTreeSet<$name>) -> Self {
                (0..)
                    .map(|n| $name::machine(base, n))
                    .find(|x| !avoid.contains(x))
                    .expect("unbounded supply")
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name::new(s)
            }
        }
    };
}

name_type!(
    /// A bindable constant name.
    Atom
);
name_type!(
    /// A meta-level variable, instantiated by substitutions.
    Unknown
);
name_type!(
    /// A term-former (function symbol).
    Symbol
);
