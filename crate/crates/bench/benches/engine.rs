use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nomrew::closed::{closed_normalize, is_closed_rule, Session};
use nomrew::frontend::{corpus, parse_term};
use nomrew::matching::{solve_match, MatchProblem};
use nomrew::rewrite::{normalize_general, rewrite_step_general};
use nomrew::{is_alpha, FreshnessContext, SearchConfig};
use nomrew_bench::{binder_pair, redex_chain};

fn alpha(c: &mut Criterion) {
    let mut g = c.benchmark_group("alpha");
    for n in [4, 16, 64] {
        let (s, t) = binder_pair(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &(s, t), |b, (s, t)| {
            b.iter(|| is_alpha(&FreshnessContext::new(), black_box(s), black_box(t)))
        });
    }
    g.finish();
}

fn matching(c: &mut Criterion) {
    let l = parse_term("app(lam([a]app(X,Y)),Z)").unwrap();
    let s = parse_term("app(lam([b]app(app(b,c),lam([c]c))),d)").unwrap();
    let p = MatchProblem::new(FreshnessContext::new(), l, FreshnessContext::new(), s).unwrap();
    c.bench_function("match/beta_app", |b| b.iter(|| solve_match(black_box(&p))));
}

fn closedness(c: &mut Criterion) {
    let th = corpus::betaeta();
    c.bench_function("closedness/betaeta", |b| {
        b.iter(|| {
            let mut session = Session::default();
            th.rules
                .iter()
                .all(|r| is_closed_rule(&mut session, r).closed)
        })
    });
}

fn normalisation(c: &mut Criterion) {
    let th = corpus::betaeta();
    let cfg = SearchConfig::default();
    let ctx = FreshnessContext::new();
    let mut g = c.benchmark_group("normalize");
    g.sample_size(20);
    for n in [1, 2, 3] {
        let s = redex_chain(n);
        g.bench_with_input(BenchmarkId::new("closed", n), &s, |b, s| {
            b.iter(|| closed_normalize(&mut Session::default(), &ctx, black_box(s), &th, &cfg))
        });
        g.bench_with_input(BenchmarkId::new("general", n), &s, |b, s| {
            b.iter(|| normalize_general(&ctx, black_box(s), &th, &cfg))
        });
    }
    g.finish();
}

fn permutation_search(c: &mut Criterion) {
    let th = corpus::bundled("nonclosed").unwrap();
    let rule = th.rule("rename").unwrap();
    let s = parse_term("[c][d]e").unwrap();
    let ctx = FreshnessContext::new();
    let mut g = c.benchmark_group("general_step");
    for support in [3, 4, 5, 6] {
        let cfg = SearchConfig {
            max_support: support,
            ..SearchConfig::default()
        };
        g.bench_with_input(BenchmarkId::new("rename", support), &cfg, |b, cfg| {
            b.iter(|| rewrite_step_general(&ctx, black_box(&s), rule, cfg))
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    alpha,
    matching,
    closedness,
    normalisation,
    permutation_search
);
criterion_main!(benches);
