//! `nomrew`: closedness checking, normalisation, equality, matching and
//! α-equivalence over nominal rewrite theories.
//!
//! Exit codes: 0 success or yes, 1 a definite no, 2 usage, parse or input
//! errors, 3 inconclusive (fuel ran out or search found nothing).

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nomrew::alpha::{check_alpha, check_fresh};
use nomrew::closed::{
    closed_normalize, closed_rewrite_step, decide_equal, is_closed_rule, DecideOptions, Session,
    Verdict,
};
use nomrew::frontend::report::{
    closedness_json, decision_json, document, normalized_json, replay, step_json,
    substitution_json, trace_json,
};
use nomrew::frontend::{corpus, parse_context_with, parse_term_with, parse_theory, ParseOptions};
use nomrew::matching::{solve_match, MatchProblem};
use nomrew::rewrite::{
    find_rewrite_path, normalize_general, rewrite_step_general, symmetric_search, RewriteStep,
    SearchOutcome, Status, Strategy, Theory,
};
use nomrew::{Atom, FreshnessContext, SearchConfig, Signature, Term};

#[derive(Parser)]
#[command(
    name = "nomrew",
    version,
    about = "Nominal rewriting and closed nominal rewriting"
)]
struct Cli {
    /// Print a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report which rules of a theory are closed
    Check { theory: String },
    /// Rewrite a term until no rule applies
    Normalize {
        theory: String,
        #[arg(long)]
        term: String,
        #[command(flatten)]
        mode: Mode,
        #[command(flatten)]
        search: SearchArgs,
        /// Print every step
        #[arg(long)]
        trace: bool,
    },
    /// List the one-step rewrites of a term
    Rewrite {
        theory: String,
        #[arg(long)]
        term: String,
        /// Only use this rule
        #[arg(long)]
        rule: Option<String>,
        #[command(flatten)]
        mode: Mode,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Look for a general rewrite sequence from one term to another
    Reach {
        theory: String,
        from: String,
        to: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Look for a chain of rewrites in either direction, under fresh constraints
    Search {
        theory: String,
        left: String,
        right: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Decide equality by closed normalisation
    Equal {
        theory: String,
        left: String,
        right: String,
        /// Treat distinct normal forms as distinct terms
        #[arg(long)]
        assume_convergent: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check α-equivalence of two terms
    Alpha {
        #[arg(long, default_value = "")]
        ctx: String,
        left: String,
        right: String,
    },
    /// Check that an atom is fresh for a term
    Fresh {
        #[arg(long, default_value = "")]
        ctx: String,
        atom: String,
        term: String,
    },
    /// Solve a matching problem (pattern-ctx |- pattern) against (target-ctx |- target)
    Match {
        #[arg(long, default_value = "")]
        pattern_ctx: String,
        pattern: String,
        #[arg(long, default_value = "")]
        target_ctx: String,
        target: String,
    },
    /// Re-verify every trace in a JSON report
    Replay { theory: String, report: String },
}

#[derive(Args)]
#[group(multiple = false)]
struct Mode {
    /// Use general rewriting, searching over rule permutations (the default)
    #[arg(long)]
    general: bool,
    /// Use closed rewriting with freshened rules
    #[arg(long)]
    closed: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Freshness context, e.g. "a#X, b#Y"
    #[arg(long, default_value = "")]
    ctx: String,
    /// Steps for normalisation, expansions for search
    #[arg(long, default_value_t = 1000)]
    fuel: usize,
    #[arg(long, default_value = "outermost")]
    strategy: Strategy,
    /// Largest permutation support searched per position
    #[arg(long, default_value_t = 6)]
    max_support: usize,
    /// Number of fresh atoms for symmetric search (default: atoms in the theory)
    #[arg(long)]
    gamma_budget: Option<usize>,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            fuel: self.fuel,
            strategy: self.strategy,
            max_support: self.max_support,
            gamma_budget: self.gamma_budget,
            ..SearchConfig::default()
        }
    }
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(u8, Value, String), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((code, report, text)) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("reports serialise")
                );
            } else {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn session() -> Result<Session, Failure> {
    match std::env::var("NOMREW_SEED") {
        Ok(s) => s.trim().parse().map(Session::new).map_err(|_| {
            Failure(format!(
                "NOMREW_SEED must be an unsigned integer, got `{s}`"
            ))
        }),
        Err(_) => Ok(Session::default()),
    }
}

/// Reads a theory file, falling back to the bundled theories by name.
fn load_theory(arg: &str) -> Result<Theory, Failure> {
    if Path::new(arg).exists() {
        let text = fs::read_to_string(arg)?;
        return parse_theory(&text).map_err(|e| Failure(format!("{arg}:{e}")));
    }
    corpus::bundled(arg).ok_or_else(|| Failure(format!("no such theory file `{arg}`")))
}

fn opts(sig: Option<&Signature>) -> ParseOptions<'_> {
    ParseOptions {
        signature: sig,
        allow_machine: false,
    }
}

fn term(text: &str, sig: Option<&Signature>) -> Result<Term, Failure> {
    parse_term_with(text, opts(sig)).map_err(|e| Failure(format!("term `{text}`: {e}")))
}

fn context(text: &str, sig: Option<&Signature>) -> Result<FreshnessContext, Failure> {
    parse_context_with(text, opts(sig)).map_err(|e| Failure(format!("context `{text}`: {e}")))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Check { theory } => check(&load_theory(&theory)?),
        Command::Normalize {
            theory,
            term: t,
            mode,
            search,
            trace,
        } => {
            let th = load_theory(&theory)?;
            let ctx = context(&search.ctx, Some(&th.signature))?;
            let s = term(&t, Some(&th.signature))?;
            let cfg = search.config();
            let n = if mode.closed {
                closed_normalize(&mut session()?, &ctx, &s, &th, &cfg)
            } else {
                normalize_general(&ctx, &s, &th, &cfg)
            };
            let mut text = String::new();
            if trace {
                text.push_str(&n.trace.to_string());
            }
            text.push_str(&format!("{}\n", n.term));
            if n.status == Status::FuelExhausted {
                text.push_str(&format!("fuel exhausted after {} steps\n", n.trace.len()));
            }
            let code = if n.status == Status::NormalForm { 0 } else { 3 };
            Ok((code, document("normalize", normalized_json(&n)), text))
        }
        Command::Rewrite {
            theory,
            term: t,
            rule,
            mode,
            search,
        } => {
            let th = load_theory(&theory)?;
            let th = match &rule {
                Some(name) if th.rule(name).is_none() => {
                    return Err(Failure(format!("no rule named `{name}`")))
                }
                Some(name) => th.only(&[name]),
                None => th,
            };
            let ctx = context(&search.ctx, Some(&th.signature))?;
            let s = term(&t, Some(&th.signature))?;
            let cfg = search.config();
            let mut steps: Vec<RewriteStep> = Vec::new();
            let mut truncated = false;
            let mut session = session()?;
            for r in &th.rules {
                if mode.closed {
                    steps.extend(closed_rewrite_step(&mut session, &ctx, &s, r));
                } else {
                    let found = rewrite_step_general(&ctx, &s, r, &cfg);
                    truncated |= found.truncated;
                    steps.extend(found.steps);
                }
            }
            let mut text: String = steps.iter().map(|st| format!("{st}\n")).collect();
            if steps.is_empty() {
                text.push_str("no rewrites\n");
            }
            if truncated {
                text.push_str("permutation search was truncated\n");
            }
            let report = document(
                "rewrite",
                json!({
                    "ctx": ctx.to_string(),
                    "source": s.to_string(),
                    "truncated": truncated,
                    "steps": steps.iter().map(step_json).collect::<Vec<_>>(),
                }),
            );
            Ok((if steps.is_empty() { 1 } else { 0 }, report, text))
        }
        Command::Reach {
            theory,
            from,
            to,
            search,
        } => {
            let th = load_theory(&theory)?;
            let ctx = context(&search.ctx, Some(&th.signature))?;
            let (s, t) = (
                term(&from, Some(&th.signature))?,
                term(&to, Some(&th.signature))?,
            );
            match find_rewrite_path(&ctx, &s, &t, &th, &search.config()) {
                Some(trace) => {
                    let report = document(
                        "reach",
                        json!({ "found": true, "trace": trace_json(&trace) }),
                    );
                    Ok((0, report, trace.to_string()))
                }
                None => {
                    let report = document("reach", json!({ "found": false }));
                    Ok((3, report, format!("{t} not reached from {s} within fuel\n")))
                }
            }
        }
        Command::Search {
            theory,
            left,
            right,
            search,
        } => {
            let th = load_theory(&theory)?;
            let ctx = context(&search.ctx, Some(&th.signature))?;
            let (s, t) = (
                term(&left, Some(&th.signature))?,
                term(&right, Some(&th.signature))?,
            );
            match symmetric_search(&ctx, &s, &t, &th, &search.config()) {
                SearchOutcome::Found(trace) => {
                    let text = format!("under {}\n{trace}", trace.ctx);
                    let report = document(
                        "search",
                        json!({ "found": true, "trace": trace_json(&trace) }),
                    );
                    Ok((0, report, text))
                }
                SearchOutcome::NotFound {
                    expansions,
                    truncated,
                } => {
                    let report = document(
                        "search",
                        json!({ "found": false, "expansions": expansions, "truncated": truncated }),
                    );
                    Ok((
                        3,
                        report,
                        format!("not found after {expansions} expansions\n"),
                    ))
                }
            }
        }
        Command::Equal {
            theory,
            left,
            right,
            assume_convergent,
            search,
        } => {
            let th = load_theory(&theory)?;
            let ctx = context(&search.ctx, Some(&th.signature))?;
            let (s, t) = (
                term(&left, Some(&th.signature))?,
                term(&right, Some(&th.signature))?,
            );
            let opts = DecideOptions {
                assume_convergent,
                cfg: search.config(),
            };
            let d = decide_equal(&mut session()?, &ctx, &s, &t, &th, &opts)?;
            let code = match d.verdict {
                Verdict::Equal => 0,
                Verdict::NotEqual => 1,
                Verdict::Inconclusive => 3,
            };
            let text = format!(
                "{}\n  {s} ->c* {} ({})\n  {t} ->c* {} ({})\n",
                d.verdict.as_str(),
                d.left.term,
                d.left.status.as_str(),
                d.right.term,
                d.right.status.as_str()
            );
            Ok((code, document("equal", decision_json(&d)), text))
        }
        Command::Alpha { ctx, left, right } => {
            let ctx = context(&ctx, None)?;
            let (s, t) = (term(&left, None)?, term(&right, None)?);
            let d = check_alpha(&ctx, &s, &t);
            let mut text = format!("{}\n", yes_no(d.is_some()));
            if let Some(d) = &d {
                text.push_str(&format!("{d}\n"));
            }
            let report = document(
                "alpha",
                json!({
                    "ctx": ctx.to_string(), "left": s.to_string(), "right": t.to_string(),
                    "holds": d.is_some(), "derivation": d.map(|d| d.to_string()),
                }),
            );
            Ok((
                if report["holds"] == json!(true) { 0 } else { 1 },
                report,
                text,
            ))
        }
        Command::Fresh { ctx, atom, term: t } => {
            let ctx = context(&ctx, None)?;
            let a = match term(&atom, None)? {
                Term::Atom(a) => a,
                other => return Err(Failure(format!("`{other}` is not an atom"))),
            };
            let t = term(&t, None)?;
            let d = check_fresh(&ctx, &a, &t);
            let mut text = format!("{}\n", yes_no(d.is_some()));
            if let Some(d) = &d {
                text.push_str(&format!("{d}\n"));
            }
            let holds = d.is_some();
            let report = document(
                "fresh",
                json!({
                    "ctx": ctx.to_string(), "atom": Atom::name(&a), "term": t.to_string(),
                    "holds": holds, "derivation": d.map(|d| d.to_string()),
                }),
            );
            Ok((if holds { 0 } else { 1 }, report, text))
        }
        Command::Match {
            pattern_ctx,
            pattern,
            target_ctx,
            target,
        } => {
            let p = MatchProblem::new(
                context(&pattern_ctx, None)?,
                term(&pattern, None)?,
                context(&target_ctx, None)?,
                term(&target, None)?,
            )?;
            let sol = solve_match(&p);
            let text = match &sol {
                Some(s) => format!("{}\n", s.sigma),
                None => "no match\n".to_string(),
            };
            let report = document(
                "match",
                json!({
                    "pattern_ctx": p.pattern_ctx().to_string(), "pattern": p.pattern().to_string(),
                    "target_ctx": p.target_ctx().to_string(), "target": p.target().to_string(),
                    "solution": sol.as_ref().map(|s| substitution_json(&s.sigma)),
                }),
            );
            Ok((if sol.is_some() { 0 } else { 1 }, report, text))
        }
        Command::Replay { theory, report } => {
            let th = load_theory(&theory)?;
            let text = fs::read_to_string(&report)?;
            let doc: Value =
                serde_json::from_str(&text).map_err(|e| Failure(format!("{report}: {e}")))?;
            match replay(&th, &doc) {
                Ok(summary) => {
                    let out = format!(
                        "ok: {} trace(s), {} step(s) verified\n",
                        summary.traces, summary.steps
                    );
                    let r = document(
                        "replay",
                        json!({ "valid": true, "traces": summary.traces, "steps": summary.steps }),
                    );
                    Ok((0, r, out))
                }
                Err(e @ nomrew::frontend::report::ReplayError::Invalid { .. }) => {
                    let r = document("replay", json!({ "valid": false, "error": e.to_string() }));
                    Ok((1, r, format!("invalid: {e}\n")))
                }
                Err(e) => Err(Failure(format!("{report}: {e}"))),
            }
        }
    }
}

fn check(th: &Theory) -> Outcome {
    let mut session = session()?;
    let mut all = true;
    let mut text = String::new();
    let mut rules = Vec::new();
    for rule in &th.rules {
        let c = is_closed_rule(&mut session, rule);
        all &= c.closed;
        match &c.witness {
            Some(w) => text.push_str(&format!("{}: closed  witness {w}\n", rule.name)),
            None => text.push_str(&format!("{}: not closed\n", rule.name)),
        }
        rules.push(closedness_json(rule, &c));
    }
    let report = document(
        "check",
        json!({ "theory": th.name, "all_closed": all, "rules": rules }),
    );
    Ok((if all { 0 } else { 1 }, report, text))
}
