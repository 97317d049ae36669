use std::fmt;

/// One step down a term: into the body of an abstraction, or into the i-th
/// (0-based) argument of an application.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Body,
    Arg(usize),
}

/// A path from the root of a host term to one of its subterms. Together with
/// the host it determines a one-hole context `C` with `host ≡ C[subterm]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(Vec<Step>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn new(steps: Vec<Step>) -> Self {
        Position(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, step: Step) -> Position {
        let mut steps = self.0.clone();
        steps.push(step);
        Position(steps)
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Body => f.write_str("body"),
            Step::Arg(i) => write!(f, "arg{}", i + 1),
        }
    }
}

impl std::str::FromStr for Step {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "body" {
            return Ok(Step::Body);
        }
        s.strip_prefix("arg")
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|n| *n >= 1)
            .map(|n| Step::Arg(n - 1))
            .ok_or_else(|| format!("bad position step `{s}`"))
    }
}

/// Parses the display form; `ε` and the empty string are the root.
impl std::str::FromStr for Position {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || s == "ε" {
            return Ok(Position::root());
        }
        s.split('.')
            .map(str::parse)
            .collect::<Result<Vec<Step>, _>>()
            .map(Position)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
