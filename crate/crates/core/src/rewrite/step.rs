use std::fmt;

use thiserror::Error;

use crate::alpha::{is_alpha, is_fresh, FreshnessContext};
use crate::syntax::{Names, Permutation, Position, Substitution, Term};

use super::rule::{RewriteRule, Theory};

/// Which one-step relation produced a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// `Δ ⊢ (∇θ, s' ≈ π·(lθ), C[π·(rθ)] ≈ t)`.
    General,
    /// `Δ, atms(R')#unkn(Δ,s) ⊢ (∇'θ, s' ≈ l'θ, C[r'θ] ≈ t)` with `R'` freshened.
    Closed,
}

impl StepKind {
    pub fn arrow(self) -> &'static str {
        match self {
            StepKind::General => "->1",
            StepKind::Closed => "->c",
        }
    }
}

/// One rewrite step together with everything needed to re-check it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub kind: StepKind,
    /// Name of the theory rule used.
    pub rule: String,
    /// Whether the rule was used right to left.
    pub reversed: bool,
    /// The rule as applied: unknowns renamed apart, and for closed steps
    /// atoms freshened too.
    pub applied_rule: RewriteRule,
    /// Constraints added to the context for this step.
    pub context_extension: FreshnessContext,
    pub source: Term,
    /// An α-variant of `source` containing the redex at `position`.
    pub variant: Term,
    pub position: Position,
    pub permutation: Permutation,
    pub substitution: Substitution,
    pub result: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("source is not α-equivalent to the rewritten variant")]
    Variant,
    #[error("position {0} does not exist in the term")]
    Position(Position),
    #[error("instantiated rule context not entailed: {0}")]
    RuleContext(String),
    #[error("redex does not match the permuted instantiated left-hand side")]
    Redex,
    #[error("result is not α-equivalent to the contractum in context")]
    Result,
    #[error("closed step uses atoms that are not fresh for the source")]
    NotFresh,
    #[error("context extension is not of the form atms(R')#unkn(ctx, source)")]
    Extension,
    #[error("closed step with a non-identity permutation")]
    Permutation,
    #[error("rule `{0}` not found in the theory")]
    UnknownRule(String),
    #[error("applied rule is not a renaming of rule `{0}`")]
    NotARenaming(String),
}

impl RewriteStep {
    /// The context the step's judgements are checked under.
    pub fn step_context(&self, ctx: &FreshnessContext) -> FreshnessContext {
        ctx.union(&self.context_extension)
    }

    /// Independently re-checks every side condition of the step under `ctx`.
    ///
    /// With a theory, also checks that the applied rule is a renaming of the
    /// named theory rule, in the recorded orientation.
    pub fn verify(&self, ctx: &FreshnessContext, theory: Option<&Theory>) -> Result<(), StepError> {
        if let Some(theory) = theory {
            let original = theory
                .rule(&self.rule)
                .ok_or_else(|| StepError::UnknownRule(self.rule.clone()))?;
            let oriented = if self.reversed {
                original
                    .reversed()
                    .ok_or_else(|| StepError::NotARenaming(self.rule.clone()))?
            } else {
                original.clone()
            };
            if !oriented.is_renaming_of(&self.applied_rule) {
                return Err(StepError::NotARenaming(self.rule.clone()));
            }
        }
        let full = self.step_context(ctx);
        if self.kind == StepKind::Closed {
            if !self.permutation.is_id() {
                return Err(StepError::Permutation);
            }
            let rule_atoms = self.applied_rule.atoms();
            let source_names = (ctx, &self.source);
            if !rule_atoms.is_disjoint(&source_names.atoms()) {
                return Err(StepError::NotFresh);
            }
            let expected = FreshnessContext::product(&rule_atoms, &source_names.unknowns());
            if !self.context_extension.is_subset(&expected) {
                return Err(StepError::Extension);
            }
        } else if !self.context_extension.is_empty() {
            return Err(StepError::Extension);
        }
        if !is_alpha(&full, &self.source, &self.variant) {
            return Err(StepError::Variant);
        }
        let redex = self
            .variant
            .subterm(&self.position)
            .ok_or_else(|| StepError::Position(self.position.clone()))?;
        let rule = &self.applied_rule;
        for (a, x) in rule.ctx.iter() {
            let image = self.substitution.get(x);
            if !is_fresh(&full, a, &image) {
                return Err(StepError::RuleContext(format!("{a}#{image}")));
            }
        }
        let lhs = rule
            .lhs
            .subst(&self.substitution)
            .permute(&self.permutation);
        if !is_alpha(&full, redex, &lhs) {
            return Err(StepError::Redex);
        }
        let rhs = rule
            .rhs
            .subst(&self.substitution)
            .permute(&self.permutation);
        let contractum = self
            .variant
            .replace(&self.position, rhs)
            .ok_or_else(|| StepError::Position(self.position.clone()))?;
        if !is_alpha(&full, &contractum, &self.result) {
            return Err(StepError::Result);
        }
        Ok(())
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}  [{}{} at {}",
            self.source,
            self.kind.arrow(),
            self.result,
            self.rule,
            if self.reversed { " reversed" } else { "" },
            self.position
        )?;
        if !self.permutation.is_id() {
            write!(f, ", pi = {}", self.permutation)?;
        }
        if !self.substitution.is_empty() {
            write!(f, ", theta = {}", self.substitution)?;
        }
        if self.variant != self.source {
            write!(f, ", via {}", self.variant)?;
        }
        if !self.context_extension.is_empty() {
            write!(f, ", with {}", self.context_extension)?;
        }
        f.write_str("]")
    }
}

/// How a step is traversed in a trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// From the step's source to its result.
    Forward,
    /// From the step's result back to its source.
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub step: RewriteStep,
    pub orientation: Orientation,
}

impl TraceStep {
    pub fn forward(step: RewriteStep) -> Self {
        TraceStep {
            step,
            orientation: Orientation::Forward,
        }
    }

    pub fn from_term(&self) -> &Term {
        match self.orientation {
            Orientation::Forward => &self.step.source,
            Orientation::Backward => &self.step.result,
        }
    }

    pub fn to_term(&self) -> &Term {
        match self.orientation {
            Orientation::Forward => &self.step.result,
            Orientation::Backward => &self.step.source,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("trace does not start at the claimed source")]
    Start,
    #[error("trace does not end at the claimed target")]
    End,
    #[error("steps {0} and {1} do not connect up to α-equivalence")]
    Gap(usize, usize),
    #[error("step {index}: {error}")]
    Step { index: usize, error: StepError },
}

/// A chain `start = t0, t1, ..., tn ≈ end` of rewrite steps under `ctx`, where
/// consecutive terms are joined modulo α.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteTrace {
    pub ctx: FreshnessContext,
    pub start: Term,
    pub steps: Vec<TraceStep>,
}

impl RewriteTrace {
    pub fn new(ctx: FreshnessContext, start: Term) -> Self {
        RewriteTrace {
            ctx,
            start,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: TraceStep) {
        self.steps.push(step)
    }

    pub fn end(&self) -> &Term {
        self.steps.last().map_or(&self.start, |s| s.to_term())
    }

    /// Re-checks every step and every junction between steps.
    pub fn replay(&self, theory: Option<&Theory>) -> Result<(), TraceError> {
        let mut current = &self.start;
        for (index, s) in self.steps.iter().enumerate() {
            if !is_alpha(&self.ctx, current, s.from_term()) {
                return Err(if index == 0 {
                    TraceError::Start
                } else {
                    TraceError::Gap(index - 1, index)
                });
            }
            s.step
                .verify(&self.ctx, theory)
                .map_err(|error| TraceError::Step { index, error })?;
            current = s.to_term();
        }
        Ok(())
    }

    /// Replays and checks the chain ends at a term α-equivalent to `target`.
    pub fn replay_to(&self, target: &Term, theory: Option<&Theory>) -> Result<(), TraceError> {
        self.replay(theory)?;
        if is_alpha(&self.ctx, self.end(), target) {
            Ok(())
        } else {
            Err(TraceError::End)
        }
    }
}

impl fmt::Display for RewriteTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.start)?;
        for s in &self.steps {
            let st = &s.step;
            let arrow = match s.orientation {
                Orientation::Forward => st.kind.arrow().to_string(),
                Orientation::Backward => st.kind.arrow().replace("->", "<-"),
            };
            write!(f, "  {arrow} {}  [{}", s.to_term(), st.rule)?;
            if st.reversed {
                f.write_str(" reversed")?;
            }
            write!(f, " at {}", st.position)?;
            if !st.permutation.is_id() {
                write!(f, ", pi = {}", st.permutation)?;
            }
            if !st.substitution.is_empty() {
                write!(f, ", theta = {}", st.substitution)?;
            }
            if st.variant != st.source {
                write!(f, ", via {}", st.variant)?;
            }
            if !st.context_extension.is_empty() {
                write!(f, ", with {}", st.context_extension)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
