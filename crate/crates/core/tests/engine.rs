mod support;

use nomrew::closed::{
    closed_joinable, closed_normalize, closed_rewrite_step, decide_equal, is_closed, pair,
    DecideError, DecideOptions, Session, Verdict,
};
use nomrew::frontend::report::{decision_json, document, replay, trace_json};
use nomrew::frontend::{corpus, parse_context, parse_term, parse_theory};
use nomrew::rewrite::{
    check_equivariance_sample, normalize_general, rewrite_closure_reachable, rewrite_step_general,
    symmetric_search, Status, Theory,
};
use nomrew::{is_alpha, Atom, FreshnessContext, Permutation, SearchConfig, Term};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn t(s: &str) -> Term {
    parse_term(s).unwrap()
}

fn empty() -> FreshnessContext {
    FreshnessContext::new()
}

fn theory(src: &str) -> Theory {
    parse_theory(src).unwrap()
}

fn swap(a: &str, b: &str) -> Permutation {
    Permutation::swap(Atom::new(a), Atom::new(b))
}

#[test]
fn positions_are_leftmost_outermost() {
    let host = t("f(a,g(b))");
    let got: Vec<String> = host
        .positions()
        .iter()
        .map(|(p, _)| p.to_string())
        .collect();
    assert_eq!(got, ["ε", "arg1", "arg2", "arg2.arg1"]);
    let got: Vec<String> = t("[a]b")
        .positions()
        .iter()
        .map(|(p, u)| format!("{p}:{u}"))
        .collect();
    assert_eq!(got, ["ε:[a]b", "body:b"]);
}

#[test]
fn general_steps_from_the_examples() {
    let th = corpus::betaeta();
    let cfg = SearchConfig::default();
    let beta_var = th.rule("beta_var").unwrap();
    assert!(
        rewrite_step_general(&empty(), &t("app(lam([a]a),b)"), beta_var, &cfg)
            .contains(&empty(), &t("b"))
    );

    let drop = theory("rule drop : |- [a]X -> X ;");
    let steps = rewrite_step_general(&empty(), &t("[b][a]a"), &drop.rules[0], &cfg);
    let hit = steps
        .steps
        .iter()
        .find(|s| is_alpha(&empty(), &s.result, &t("[a]b")))
        .expect("[a]b is a one-step rewrite");
    assert!(!hit.permutation.is_id());
    hit.verify(&empty(), Some(&drop)).unwrap();
}

#[test]
fn every_emitted_step_replays() {
    let th = corpus::betaeta();
    let cfg = SearchConfig::default();
    let ctx = parse_context("a#X").unwrap();
    for s in [
        "app(lam([a]app(a,a)),b)",
        "lam([a]app(X,a))",
        "app(lam([a]lam([b]app(a,b))),c)",
    ] {
        for rule in &th.rules {
            for step in rewrite_step_general(&ctx, &t(s), rule, &cfg).steps {
                step.verify(&ctx, Some(&th)).unwrap();
            }
        }
    }
}

#[test]
fn normalisation_examples() {
    let th = corpus::betaeta();
    let cfg = SearchConfig::default();
    let n = normalize_general(&empty(), &t("app(lam([a]app(a,a)),b)"), &th, &cfg);
    assert!(is_alpha(&empty(), &n.term, &t("app(b,b)")));
    assert_eq!(n.status, Status::NormalForm);

    let n = normalize_general(&empty(), &t("b"), &th, &cfg);
    assert_eq!(n.term, t("b"));
    assert!(n.trace.is_empty());

    let ctx = parse_context("a#X").unwrap();
    let n = normalize_general(&ctx, &t("lam([a]app(X,a))"), &th.only(&["eta"]), &cfg);
    assert!(is_alpha(&ctx, &n.term, &t("X")));
}

#[test]
fn fuel_exhaustion_is_a_status() {
    let th = corpus::bundled("remark43").unwrap();
    let ctx = parse_context("a#X").unwrap();
    let n = normalize_general(&ctx, &t("X"), &th, &SearchConfig::default().with_fuel(5));
    assert_eq!(n.status, Status::FuelExhausted);
    assert_eq!(n.trace.len(), 5);
    n.trace.replay(Some(&th)).unwrap();
}

#[test]
fn closure_is_reflexive_modulo_alpha() {
    let th = corpus::betaeta();
    let reach = rewrite_closure_reachable(
        &empty(),
        &t("[a]a"),
        &th,
        &SearchConfig::default().with_fuel(10),
    );
    assert!(reach.contains(&t("[b]b")));
}

#[test]
fn equivariance_on_sampled_steps() {
    let rename = theory("rule rename : |- a -> b ;");
    let cfg = SearchConfig::default();
    assert!(check_equivariance_sample(
        &empty(),
        &t("a"),
        &t("b"),
        &rename.rules[0],
        &swap("a", "c"),
        &cfg
    ));
    assert!(check_equivariance_sample(
        &empty(),
        &t("a"),
        &t("b"),
        &rename.rules[0],
        &Permutation::id(),
        &cfg
    ));
    let th = corpus::betaeta();
    let beta_var = th.rule("beta_var").unwrap();
    let s = t("app(lam([a]a),c)");
    assert!(check_equivariance_sample(
        &empty(),
        &s,
        &t("c"),
        beta_var,
        &swap("a", "c"),
        &cfg
    ));
}

#[test]
fn random_steps_are_equivariant() {
    use rand::Rng;
    let th = corpus::betaeta();
    let cfg = SearchConfig::default();
    let fs = [("lam", 1), ("app", 2)];
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut checked = 0;
    while checked < 40 {
        let rule = &th.rules[rng.random_range(0..th.rules.len())];
        let Some((ctx, s)) = support::random_redex(&mut rng, rule, &fs) else {
            continue;
        };
        let steps = rewrite_step_general(&ctx, &s, rule, &cfg);
        let Some(step) = steps.steps.first() else {
            continue;
        };
        // π must leave the context's atoms alone for the permuted judgement to make sense
        let pi = support::random_perm(&mut rng, &support::atoms(3), 2);
        if pi.support().iter().any(|a| ctx.iter().any(|(b, _)| a == b)) {
            continue;
        }
        assert!(
            check_equivariance_sample(&ctx, &s, &step.result, rule, &pi, &cfg),
            "{ctx} |- {s} under {pi}"
        );
        checked += 1;
    }
}

#[test]
fn symmetric_search_examples() {
    let th = corpus::bundled("remark43").unwrap();
    let cfg = SearchConfig::default().with_fuel(100);
    let found = symmetric_search(
        &empty(),
        &t("X"),
        &t("f(X)"),
        &th,
        &cfg.clone().with_gamma_budget(2),
    );
    assert!(found.is_found());
    let same = symmetric_search(&empty(), &t("[a]a"), &t("[b]b"), &th, &cfg);
    assert!(same.trace().unwrap().is_empty());
}

#[test]
fn freshened_variants_never_identify_atoms() {
    let mut session = Session::default();
    let item = (parse_context("a#X").unwrap(), t("[a][b]X"));
    let v = session.freshen(&item, &Default::default(), &Default::default());
    let (ctx, term) = &v.renamed;
    let Term::Abs(a1, inner) = term else { panic!() };
    let Term::Abs(b1, _) = &**inner else { panic!() };
    assert_ne!(a1, b1);
    assert!(a1.is_machine() && b1.is_machine());
    assert_eq!(ctx.len(), 1);
    assert_eq!(v.atom_map.len(), 2);
    assert_eq!(v.unknown_map.len(), 1);
}

#[test]
fn closedness_of_single_judgements() {
    let mut session = Session::default();
    let eta = is_closed(
        &mut session,
        &parse_context("a#X").unwrap(),
        &pair(t("lam([a]app(X,a))"), t("X")),
    );
    assert!(eta.closed);
    assert!(!is_closed(&mut session, &empty(), &pair(t("a"), t("b"))).closed);
    assert!(!is_closed(&mut session, &empty(), &pair(t("[a]X"), t("X"))).closed);
    assert!(
        is_closed(
            &mut session,
            &parse_context("a#X").unwrap(),
            &pair(t("X"), t("f(X)"))
        )
        .closed
    );
}

#[test]
fn closed_step_examples() {
    let mut session = Session::default();
    let nonclosed = corpus::bundled("nonclosed").unwrap();
    assert!(closed_rewrite_step(
        &mut session,
        &empty(),
        &t("a"),
        nonclosed.rule("rename").unwrap()
    )
    .is_empty());

    let grow = corpus::bundled("remark43").unwrap();
    let steps = closed_rewrite_step(&mut session, &empty(), &t("X"), &grow.rules[0]);
    assert!(steps.iter().any(|s| s.result == t("f(X)")));

    let th = corpus::betaeta();
    let s = t("app(lam([a]app(a,a)),b)");
    let steps = closed_rewrite_step(&mut session, &empty(), &s, th.rule("beta_app").unwrap());
    let contractum = t("app(app(lam([a]a),b),app(lam([a]a),b))");
    assert!(steps
        .iter()
        .any(|st| is_alpha(&st.step_context(&empty()), &st.result, &contractum)));
    for st in &steps {
        st.verify(&empty(), Some(&th)).unwrap();
    }
}

#[test]
fn closed_normal_forms_and_joins() {
    let th = corpus::betaeta();
    let cfg = SearchConfig::default();
    let mut session = Session::default();
    let n = closed_normalize(&mut session, &empty(), &t("app(b,b)"), &th, &cfg);
    assert_eq!(n.term, t("app(b,b)"));
    assert_eq!(n.status, Status::NormalForm);
    let join = closed_joinable(
        &mut session,
        &empty(),
        &t("app(lam([a]a),c)"),
        &t("c"),
        &th,
        &cfg,
    )
    .unwrap();
    join.replay(Some(&th)).unwrap();
}

#[test]
fn deciding_equality() {
    let th = corpus::betaeta();
    let mut session = Session::default();
    let opts = DecideOptions::default();
    let d = decide_equal(
        &mut session,
        &empty(),
        &t("app(lam([a]app(a,a)),b)"),
        &t("app(b,b)"),
        &th,
        &opts,
    )
    .unwrap();
    assert_eq!(d.verdict, Verdict::Equal);
    let ctx = parse_context("a#X").unwrap();
    let d = decide_equal(
        &mut session,
        &ctx,
        &t("lam([a]app(X,a))"),
        &t("X"),
        &th,
        &opts,
    )
    .unwrap();
    assert_eq!(d.verdict, Verdict::Equal);

    let d = decide_equal(&mut session, &empty(), &t("a"), &t("b"), &th, &opts).unwrap();
    assert_eq!(d.verdict, Verdict::Inconclusive);
    let convergent = DecideOptions {
        assume_convergent: true,
        ..DecideOptions::default()
    };
    let d = decide_equal(&mut session, &empty(), &t("a"), &t("b"), &th, &convergent).unwrap();
    assert_eq!(d.verdict, Verdict::NotEqual);
    replay(&th, &document("equal", decision_json(&d))).unwrap();

    let nonclosed = corpus::bundled("nonclosed").unwrap();
    let err =
        decide_equal(&mut session, &empty(), &t("a"), &t("b"), &nonclosed, &opts).unwrap_err();
    assert_eq!(err, DecideError::NotClosed("rename".into()));
}

#[test]
fn search_traces_survive_json() {
    let th = corpus::bundled("remark43").unwrap();
    let cfg = SearchConfig::default().with_fuel(100).with_gamma_budget(1);
    let found = symmetric_search(&empty(), &t("X"), &t("f(f(X))"), &th, &cfg);
    let trace = found.trace().expect("two steps with one fresh atom");
    let doc = document("search", serde_json::json!({ "trace": trace_json(trace) }));
    let text = serde_json::to_string(&doc).unwrap();
    let summary = replay(&th, &serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(summary.steps, trace.len());
}

#[test]
fn first_order_theory_is_self_consistent() {
    let th = corpus::bundled("fol").unwrap();
    let cfg = SearchConfig::default();
    let mut session = Session::default();
    let s = t("not(forall([x]exists([y]and(P,eq(x,y)))))");
    let n = closed_normalize(&mut session, &empty(), &s, &th, &cfg);
    assert_eq!(n.status, Status::NormalForm);
    n.trace.replay_to(&n.term, Some(&th)).unwrap();
    let g = normalize_general(&empty(), &s, &th, &cfg);
    assert!(
        is_alpha(&empty(), &g.term, &n.term),
        "{} vs {}",
        g.term,
        n.term
    );
    let ctx = parse_context("a#P").unwrap();
    let vacuous = closed_normalize(&mut session, &ctx, &t("forall([a]not(not(P)))"), &th, &cfg);
    assert_eq!(vacuous.term, t("P"));
}
