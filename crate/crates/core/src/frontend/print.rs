use std::fmt::Write;

use crate::rewrite::{RewriteRule, Theory, TheoryKind};

/// `name : ctx |- lhs -> rhs`, with `=` in place of `->` for axioms.
pub fn print_rule(rule: &RewriteRule, kind: TheoryKind) -> String {
    let (keyword, sep) = match kind {
        TheoryKind::Rewrite => ("rule", "->"),
        TheoryKind::Equational => ("axiom", "="),
    };
    let ctx = if rule.ctx.is_empty() {
        String::new()
    } else {
        format!("{} ", rule.ctx)
    };
    format!(
        "{keyword} {} : {ctx}|- {} {sep} {} ;",
        rule.name, rule.lhs, rule.rhs
    )
}

/// Concrete syntax that parses back to the same theory.
pub fn print_theory(theory: &Theory) -> String {
    let mut out = String::new();
    writeln!(out, "theory {} ;", theory.name).unwrap();
    if !theory.signature.is_empty() {
        out.push_str("sig");
        for (f, n) in theory.signature.iter() {
            write!(out, " {f}:{n}").unwrap();
        }
        out.push_str(" ;\n");
    }
    for rule in &theory.rules {
        writeln!(out, "{}", print_rule(rule, theory.kind)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_theory;

    #[test]
    fn theory_round_trips() {
        let text = "theory t ;\nsig lam:1 app:2 zero:0 ;\nrule eta : a#X |- lam([a]app(X,a)) -> X ;\nrule z : |- app(zero,(a b).Y) -> zero ;\n";
        let th = parse_theory(text).unwrap();
        let printed = print_theory(&th);
        assert_eq!(parse_theory(&printed).unwrap(), th);
    }
}
