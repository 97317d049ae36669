use std::collections::{HashMap, VecDeque};

use crate::alpha::{is_alpha, to_nameless, FreshnessContext, Nameless};
use crate::syntax::{Position, Term};

use super::general::{oriented_steps, PreparedRule, SearchConfig, Strategy};
use super::rule::{RewriteRule, Theory};
use super::step::{RewriteStep, RewriteTrace, TraceStep};

/// A set of terms up to α-equivalence under a fixed context.
///
/// Ground terms are keyed by their nameless form; other terms are compared
/// pairwise.
#[derive(Clone, Debug)]
pub struct AlphaSet {
    ctx: FreshnessContext,
    terms: Vec<Term>,
    exact: HashMap<Term, usize>,
    ground: HashMap<Nameless, usize>,
    open: Vec<usize>,
}

impl AlphaSet {
    pub fn new(ctx: FreshnessContext) -> Self {
        AlphaSet {
            ctx,
            terms: Vec::new(),
            exact: HashMap::new(),
            ground: HashMap::new(),
            open: Vec::new(),
        }
    }

    pub fn find(&self, t: &Term) -> Option<usize> {
        if let Some(&i) = self.exact.get(t) {
            return Some(i);
        }
        if t.is_ground() {
            let key = to_nameless(t).expect("ground");
            return self.ground.get(&key).copied();
        }
        self.open
            .iter()
            .copied()
            .find(|&i| is_alpha(&self.ctx, &self.terms[i], t))
    }

    /// Inserts `t` unless an α-equivalent term is present. Returns the index
    /// of its class and whether it was new.
    pub fn insert(&mut self, t: Term) -> (usize, bool) {
        if let Some(i) = self.find(&t) {
            return (i, false);
        }
        let i = self.terms.len();
        if t.is_ground() {
            self.ground.insert(to_nameless(&t).expect("ground"), i);
        } else {
            self.open.push(i);
        }
        self.exact.insert(t.clone(), i);
        self.terms.push(t);
        (i, true)
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.find(t).is_some()
    }

    pub fn get(&self, i: usize) -> &Term {
        &self.terms[i]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    NormalForm,
    FuelExhausted,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::NormalForm => "normal-form",
            Status::FuelExhausted => "fuel-exhausted",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub term: Term,
    pub trace: RewriteTrace,
    pub status: Status,
}

pub(crate) fn strategy_positions(s: &Term, strategy: Strategy) -> Vec<Position> {
    let positions = match strategy {
        Strategy::Outermost => s.positions(),
        Strategy::Innermost => s.positions_innermost(),
    };
    positions.into_iter().map(|(p, _)| p).collect()
}

/// The first general step by the configured strategy, trying rules in theory
/// order at each position.
pub fn first_general_step(
    ctx: &FreshnessContext,
    s: &Term,
    theory: &Theory,
    cfg: &SearchConfig,
) -> Option<RewriteStep> {
    let prepared: Vec<PreparedRule> = theory
        .rules
        .iter()
        .map(|r| PreparedRule::new(ctx, s, r, false, cfg))
        .collect();
    let mut truncated = false;
    for pos in strategy_positions(s, cfg.strategy) {
        for rule in &prepared {
            if let Some(step) = rule.steps_at(ctx, s, &pos, cfg, true, &mut truncated).pop() {
                return Some(step);
            }
        }
    }
    None
}

/// Rewrites with general steps until none applies or `cfg.fuel` steps have
/// been taken.
pub fn normalize_general(
    ctx: &FreshnessContext,
    s: &Term,
    theory: &Theory,
    cfg: &SearchConfig,
) -> Normalized {
    let mut trace = RewriteTrace::new(ctx.clone(), s.clone());
    let mut current = s.clone();
    for _ in 0..cfg.fuel {
        match first_general_step(ctx, &current, theory, cfg) {
            Some(step) => {
                current = step.result.clone();
                trace.push(TraceStep::forward(step));
            }
            None => {
                return Normalized {
                    term: current,
                    trace,
                    status: Status::NormalForm,
                }
            }
        }
    }
    let status = if first_general_step(ctx, &current, theory, cfg).is_some() {
        Status::FuelExhausted
    } else {
        Status::NormalForm
    };
    Normalized {
        term: current,
        trace,
        status,
    }
}

/// Breadth-first exploration of a rewrite graph up to α, remembering how each
/// node was first reached.
pub(crate) struct Explorer {
    pub(crate) nodes: AlphaSet,
    parent: Vec<Option<(usize, RewriteStep)>>,
    queue: VecDeque<usize>,
    pub(crate) truncated: bool,
}

impl Explorer {
    pub(crate) fn new(ctx: FreshnessContext, start: Term) -> Self {
        let mut nodes = AlphaSet::new(ctx);
        nodes.insert(start);
        Explorer {
            nodes,
            parent: vec![None],
            queue: VecDeque::from([0]),
            truncated: false,
        }
    }

    pub(crate) fn frontier(&self) -> usize {
        self.queue.len()
    }

    /// Expands the next queued node with general steps. Returns the indices
    /// of new nodes, or `None` when the queue is empty.
    pub(crate) fn expand(
        &mut self,
        ctx: &FreshnessContext,
        rules: &[(RewriteRule, bool)],
        cfg: &SearchConfig,
    ) -> Option<Vec<usize>> {
        self.expand_with(|term| {
            let mut steps = Vec::new();
            let mut truncated = false;
            for (rule, reversed) in rules {
                let res = oriented_steps(ctx, term, rule, *reversed, cfg);
                truncated |= res.truncated;
                steps.extend(res.steps);
            }
            (steps, truncated)
        })
    }

    /// Expands the next queued node with the steps produced by `next`.
    pub(crate) fn expand_with(
        &mut self,
        mut next: impl FnMut(&Term) -> (Vec<RewriteStep>, bool),
    ) -> Option<Vec<usize>> {
        let i = self.queue.pop_front()?;
        let term = self.nodes.get(i).clone();
        let (steps, truncated) = next(&term);
        self.truncated |= truncated;
        let mut fresh = Vec::new();
        for step in steps {
            let (j, new) = self.nodes.insert(step.result.clone());
            if new {
                self.parent.push(Some((i, step)));
                self.queue.push_back(j);
                fresh.push(j);
            }
        }
        Some(fresh)
    }

    /// The steps from the start to node `i`, in order.
    pub(crate) fn path_to(&self, mut i: usize) -> Vec<RewriteStep> {
        let mut out = Vec::new();
        while let Some((p, step)) = &self.parent[i] {
            out.push(step.clone());
            i = *p;
        }
        out.reverse();
        out
    }
}

pub(crate) fn forward_rules(theory: &Theory) -> Vec<(RewriteRule, bool)> {
    theory.rules.iter().map(|r| (r.clone(), false)).collect()
}

/// Terms reachable from `s` by general steps, up to α-equivalence under `ctx`.
#[derive(Clone, Debug)]
pub struct Reachable {
    pub terms: AlphaSet,
    /// Set when fuel ran out before the graph was exhausted, or a step search
    /// was capped.
    pub truncated: bool,
}

impl Reachable {
    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains(t)
    }
}

/// The reflexive-transitive closure of general rewriting from `s`, modulo α,
/// expanding at most `cfg.fuel` terms.
pub fn rewrite_closure_reachable(
    ctx: &FreshnessContext,
    s: &Term,
    theory: &Theory,
    cfg: &SearchConfig,
) -> Reachable {
    let rules = forward_rules(theory);
    let mut ex = Explorer::new(ctx.clone(), s.clone());
    let mut expansions = 0;
    while expansions < cfg.fuel {
        if ex.expand(ctx, &rules, cfg).is_none() {
            break;
        }
        expansions += 1;
    }
    let truncated = ex.truncated || ex.frontier() > 0;
    Reachable {
        terms: ex.nodes,
        truncated,
    }
}

/// A shortest chain of general steps from `s` to a term α-equivalent to `t`,
/// expanding at most `cfg.fuel` terms.
pub fn find_rewrite_path(
    ctx: &FreshnessContext,
    s: &Term,
    t: &Term,
    theory: &Theory,
    cfg: &SearchConfig,
) -> Option<RewriteTrace> {
    let rules = forward_rules(theory);
    let mut ex = Explorer::new(ctx.clone(), s.clone());
    let build = |ex: &Explorer, i: usize| {
        let mut trace = RewriteTrace::new(ctx.clone(), s.clone());
        for step in ex.path_to(i) {
            trace.push(TraceStep::forward(step));
        }
        trace
    };
    if let Some(i) = ex.nodes.find(t) {
        return Some(build(&ex, i));
    }
    for _ in 0..cfg.fuel {
        let fresh = ex.expand(ctx, &rules, cfg)?;
        for j in fresh {
            if is_alpha(ctx, ex.nodes.get(j), t) {
                return Some(build(&ex, j));
            }
        }
    }
    None
}
