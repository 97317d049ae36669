//! JSON reports (`"schema": 1`) and their replay.
//!
//! Terms and contexts are rendered in concrete syntax, permutations as swap
//! lists and substitutions as objects from unknown names to terms. Every
//! object with `ctx`, `start` and `steps` fields is a trace, and [`replay`]
//! re-verifies each one it finds in a document.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::alpha::FreshnessContext;
use crate::closed::{Closedness, Decision};
use crate::rewrite::{
    Normalized, Orientation, RewriteRule, RewriteStep, RewriteTrace, StepKind, Theory, TraceError,
    TraceStep,
};
use crate::syntax::{Atom, Permutation, Position, Substitution, Term, Unknown};

use super::parse::{parse_context_with, parse_term_with, ParseOptions};

pub const SCHEMA: u64 = 1;

pub fn context_json(ctx: &FreshnessContext) -> Value {
    Value::String(ctx.to_string())
}

pub fn permutation_json(pi: &Permutation) -> Value {
    Value::Array(
        pi.swaps()
            .iter()
            .map(|(a, b)| json!([a.name(), b.name()]))
            .collect(),
    )
}

pub fn substitution_json(sigma: &Substitution) -> Value {
    Value::Object(
        sigma
            .iter()
            .map(|(x, t)| (x.name().to_string(), Value::String(t.to_string())))
            .collect(),
    )
}

pub fn rule_json(rule: &RewriteRule) -> Value {
    json!({
        "name": rule.name,
        "ctx": context_json(&rule.ctx),
        "lhs": rule.lhs.to_string(),
        "rhs": rule.rhs.to_string(),
    })
}

pub fn step_json(step: &RewriteStep) -> Value {
    json!({
        "kind": match step.kind { StepKind::General => "general", StepKind::Closed => "closed" },
        "rule": step.rule,
        "reversed": step.reversed,
        "applied_rule": rule_json(&step.applied_rule),
        "context_extension": context_json(&step.context_extension),
        "source": step.source.to_string(),
        "variant": step.variant.to_string(),
        "position": step.position.to_string(),
        "permutation": permutation_json(&step.permutation),
        "substitution": substitution_json(&step.substitution),
        "result": step.result.to_string(),
    })
}

pub fn trace_json(trace: &RewriteTrace) -> Value {
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "orientation": match s.orientation {
                    Orientation::Forward => "forward",
                    Orientation::Backward => "backward",
                },
                "step": step_json(&s.step),
            })
        })
        .collect();
    json!({
        "ctx": context_json(&trace.ctx),
        "start": trace.start.to_string(),
        "end": trace.end().to_string(),
        "steps": steps,
    })
}

pub fn normalized_json(n: &Normalized) -> Value {
    json!({
        "status": n.status.as_str(),
        "result": n.term.to_string(),
        "steps": n.trace.len(),
        "trace": trace_json(&n.trace),
    })
}

pub fn closedness_json(rule: &RewriteRule, c: &Closedness) -> Value {
    json!({
        "rule": rule.name,
        "closed": c.closed,
        "problem": c.problem.to_string(),
        "witness": c.witness.as_ref().map(substitution_json),
    })
}

pub fn decision_json(d: &Decision) -> Value {
    json!({
        "verdict": d.verdict.as_str(),
        "left": normalized_json(&d.left),
        "right": normalized_json(&d.right),
        "join": d.join.as_ref().map(trace_json),
    })
}

/// Wraps a report body with the schema version and command name.
pub fn document(command: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(SCHEMA));
    map.insert("command".into(), json!(command));
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    Value::Object(map)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("unsupported report schema {0:?}")]
    Schema(Option<u64>),
    #[error("malformed report at {path}: {message}")]
    Malformed { path: String, message: String },
    #[error("trace at {path} does not replay: {error}")]
    Invalid { path: String, error: TraceError },
}

/// What a successful replay checked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReplaySummary {
    pub traces: usize,
    pub steps: usize,
}

/// Re-verifies every trace in a report against `theory`.
pub fn replay(theory: &Theory, doc: &Value) -> Result<ReplaySummary, ReplayError> {
    let schema = doc.get("schema").and_then(Value::as_u64);
    if schema != Some(SCHEMA) {
        return Err(ReplayError::Schema(schema));
    }
    let mut summary = ReplaySummary::default();
    walk(theory, doc, "$", &mut summary)?;
    Ok(summary)
}

fn walk(
    theory: &Theory,
    v: &Value,
    path: &str,
    summary: &mut ReplaySummary,
) -> Result<(), ReplayError> {
    match v {
        Value::Object(map) => {
            if map.contains_key("ctx") && map.contains_key("start") && map.contains_key("steps") {
                let reader = Reader { theory, path };
                let trace = reader.trace(v)?;
                let checked = match map.get("end").and_then(Value::as_str) {
                    Some(end) => {
                        let end = reader.term(end, "end")?;
                        trace.replay_to(&end, Some(theory))
                    }
                    None => trace.replay(Some(theory)),
                };
                checked.map_err(|error| ReplayError::Invalid {
                    path: path.to_string(),
                    error,
                })?;
                summary.traces += 1;
                summary.steps += trace.len();
                return Ok(());
            }
            for (k, child) in map {
                walk(theory, child, &format!("{path}.{k}"), summary)?;
            }
            Ok(())
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                walk(theory, child, &format!("{path}[{i}]"), summary)?;
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

struct Reader<'a> {
    theory: &'a Theory,
    path: &'a str,
}

impl Reader<'_> {
    fn err(&self, field: &str, message: impl Into<String>) -> ReplayError {
        ReplayError::Malformed {
            path: format!("{}.{field}", self.path),
            message: message.into(),
        }
    }

    fn opts(&self) -> ParseOptions<'_> {
        ParseOptions {
            signature: Some(&self.theory.signature),
            allow_machine: true,
        }
    }

    fn field<'v>(&self, v: &'v Value, field: &str) -> Result<&'v Value, ReplayError> {
        v.get(field).ok_or_else(|| self.err(field, "missing"))
    }

    fn str<'v>(&self, v: &'v Value, field: &str) -> Result<&'v str, ReplayError> {
        self.field(v, field)?
            .as_str()
            .ok_or_else(|| self.err(field, "expected a string"))
    }

    fn term(&self, text: &str, field: &str) -> Result<Term, ReplayError> {
        parse_term_with(text, self.opts()).map_err(|e| self.err(field, e.to_string()))
    }

    fn term_field(&self, v: &Value, field: &str) -> Result<Term, ReplayError> {
        self.term(self.str(v, field)?, field)
    }

    fn ctx_field(&self, v: &Value, field: &str) -> Result<FreshnessContext, ReplayError> {
        parse_context_with(self.str(v, field)?, self.opts())
            .map_err(|e| self.err(field, e.to_string()))
    }

    fn rule(&self, v: &Value) -> Result<RewriteRule, ReplayError> {
        Ok(RewriteRule {
            name: self.str(v, "name")?.to_string(),
            ctx: self.ctx_field(v, "ctx")?,
            lhs: self.term_field(v, "lhs")?,
            rhs: self.term_field(v, "rhs")?,
        })
    }

    fn step(&self, v: &Value) -> Result<RewriteStep, ReplayError> {
        let kind = match self.str(v, "kind")? {
            "general" => StepKind::General,
            "closed" => StepKind::Closed,
            other => return Err(self.err("kind", format!("unknown step kind `{other}`"))),
        };
        let swaps = self
            .field(v, "permutation")?
            .as_array()
            .ok_or_else(|| self.err("permutation", "expected an array"))?
            .iter()
            .map(|pair| match pair.as_array().map(Vec::as_slice) {
                Some([Value::String(a), Value::String(b)]) => Ok((Atom::new(a), Atom::new(b))),
                _ => Err(self.err("permutation", "expected pairs of atom names")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let substitution = self
            .field(v, "substitution")?
            .as_object()
            .ok_or_else(|| self.err("substitution", "expected an object"))?
            .iter()
            .map(|(x, t)| {
                let t = t
                    .as_str()
                    .ok_or_else(|| self.err("substitution", "expected term strings"))?;
                Ok((Unknown::new(x), self.term(t, "substitution")?))
            })
            .collect::<Result<Substitution, ReplayError>>()?;
        let position: Position = self
            .str(v, "position")?
            .parse()
            .map_err(|e: String| self.err("position", e))?;
        Ok(RewriteStep {
            kind,
            rule: self.str(v, "rule")?.to_string(),
            reversed: self
                .field(v, "reversed")?
                .as_bool()
                .ok_or_else(|| self.err("reversed", "expected a boolean"))?,
            applied_rule: self.rule(self.field(v, "applied_rule")?)?,
            context_extension: self.ctx_field(v, "context_extension")?,
            source: self.term_field(v, "source")?,
            variant: self.term_field(v, "variant")?,
            position,
            permutation: Permutation::from_swaps(swaps),
            substitution,
            result: self.term_field(v, "result")?,
        })
    }

    fn trace(&self, v: &Value) -> Result<RewriteTrace, ReplayError> {
        let mut trace = RewriteTrace::new(self.ctx_field(v, "ctx")?, self.term_field(v, "start")?);
        let steps = self
            .field(v, "steps")?
            .as_array()
            .ok_or_else(|| self.err("steps", "expected an array"))?;
        for s in steps {
            let orientation = match self.str(s, "orientation")? {
                "forward" => Orientation::Forward,
                "backward" => Orientation::Backward,
                other => {
                    return Err(self.err("orientation", format!("unknown orientation `{other}`")))
                }
            };
            trace.push(TraceStep {
                step: self.step(self.field(s, "step")?)?,
                orientation,
            });
        }
        Ok(trace)
    }
}

/// Reads a trace back from its JSON form.
pub fn trace_from_json(theory: &Theory, v: &Value) -> Result<RewriteTrace, ReplayError> {
    Reader { theory, path: "$" }.trace(v)
}
