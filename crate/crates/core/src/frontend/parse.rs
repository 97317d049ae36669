//! Concrete syntax.
//!
//! ```text
//! term    ::= atom | susp | '[' atom ']' term | former '(' term,* ')' | former
//! susp    ::= ('(' atom atom ')')* '.' Unknown | Unknown
//! context ::= (atom '#' Unknown),*
//! theory  ::= item*
//! item    ::= 'theory' name ';'
//!           | 'sig' (former ':' arity)* ';'
//!           | 'rule' name ':' [context '|-'] term '->' term ';'
//!           | 'axiom' name ':' [context '|-'] term '=' term ';'
//! ```
//!
//! Atoms and formers are lowercase identifiers, unknowns start uppercase.
//! `//` starts a comment. The machine marker `$` is rejected unless machine
//! names are explicitly allowed, which replay does.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::alpha::FreshnessContext;
use crate::rewrite::{RewriteRule, RuleError, Theory, TheoryKind};
use crate::syntax::{Atom, Permutation, Signature, Symbol, Term, Unknown, MACHINE_MARKER};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

impl ParseError {
    fn new(span: Span, message: impl Into<String>) -> Self {
        ParseError {
            span,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Hash,
    Colon,
    Semi,
    Turnstile,
    Arrow,
    Equals,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Hash => f.write_str("`#`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Turnstile => f.write_str("`|-`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Equals => f.write_str("`=`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str, allow_machine: bool) -> Result<Vec<(Tok, Span)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let ident_char = |c: char| c.is_alphanumeric() || c == '_' || c == '\'';
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let two: String = chars[i..chars.len().min(i + 2)].iter().collect();
        let tok = match (c, two.as_str()) {
            (_, "|-") => Some((Tok::Turnstile, 2)),
            (_, "->") => Some((Tok::Arrow, 2)),
            ('(', _) => Some((Tok::LParen, 1)),
            (')', _) => Some((Tok::RParen, 1)),
            ('[', _) => Some((Tok::LBracket, 1)),
            (']', _) => Some((Tok::RBracket, 1)),
            (',', _) => Some((Tok::Comma, 1)),
            ('.', _) => Some((Tok::Dot, 1)),
            ('#', _) => Some((Tok::Hash, 1)),
            (':', _) => Some((Tok::Colon, 1)),
            (';', _) => Some((Tok::Semi, 1)),
            ('=', _) => Some((Tok::Equals, 1)),
            _ => None,
        };
        if let Some((tok, n)) = tok {
            out.push((tok, span));
            i += n;
            col += n;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            let n = s
                .parse()
                .map_err(|_| ParseError::new(span, format!("number `{s}` is too large")))?;
            out.push((Tok::Num(n), span));
            continue;
        }
        if ident_char(c) || c == MACHINE_MARKER {
            let start = i;
            while i < chars.len() && (ident_char(chars[i]) || chars[i] == MACHINE_MARKER) {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            if !allow_machine && s.contains(MACHINE_MARKER) {
                return Err(ParseError::new(
                    span,
                    format!("`{MACHINE_MARKER}` is reserved for machine-generated names"),
                ));
            }
            out.push((Tok::Ident(s), span));
            continue;
        }
        return Err(ParseError::new(span, format!("unexpected character `{c}`")));
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

/// Options shared by the entry points.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions<'a> {
    /// Formers are checked against this signature when given.
    pub signature: Option<&'a Signature>,
    /// Accept names containing the machine marker.
    pub allow_machine: bool,
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    signature: Option<Signature>,
}

fn is_unknown_name(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_uppercase())
}

impl Parser {
    fn new(text: &str, opts: ParseOptions<'_>) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text, opts.allow_machine)?,
            pos: 0,
            signature: opts.signature.cloned(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Span, ParseError> {
        let (tok, span) = self.bump();
        if tok == want {
            Ok(span)
        } else {
            Err(ParseError::new(
                span,
                format!("expected {want}, found {tok}"),
            ))
        }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == want {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Span), ParseError> {
        match self.bump() {
            (Tok::Ident(s), span) => Ok((s, span)),
            (tok, span) => Err(ParseError::new(
                span,
                format!("expected {what}, found {tok}"),
            )),
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let (s, span) = self.ident("an atom")?;
        if is_unknown_name(&s) {
            return Err(ParseError::new(
                span,
                format!("expected an atom, found unknown `{s}`"),
            ));
        }
        if let Some(sig) = &self.signature {
            if sig.contains(&Symbol::new(&s)) {
                return Err(ParseError::new(
                    span,
                    format!("`{s}` is a term-former, not an atom"),
                ));
            }
        }
        Ok(Atom::new(s))
    }

    fn unknown(&mut self) -> Result<Unknown, ParseError> {
        let (s, span) = self.ident("an unknown")?;
        if !is_unknown_name(&s) {
            return Err(ParseError::new(
                span,
                format!("expected an unknown (uppercase), found `{s}`"),
            ));
        }
        Ok(Unknown::new(s))
    }

    fn eof(&mut self) -> Result<(), ParseError> {
        match self.bump() {
            (Tok::Eof, _) => Ok(()),
            (tok, span) => Err(ParseError::new(
                span,
                format!("unexpected {tok} after the end"),
            )),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::LBracket => {
                self.bump();
                let a = self.atom()?;
                self.expect(Tok::RBracket)?;
                Ok(Term::Abs(a, Box::new(self.term()?)))
            }
            Tok::LParen => self.suspension(),
            Tok::Dot => {
                self.bump();
                Ok(Term::Susp(Permutation::id(), self.unknown()?))
            }
            Tok::Ident(s) if is_unknown_name(&s) => {
                self.bump();
                Ok(Term::Susp(Permutation::id(), Unknown::new(s)))
            }
            Tok::Ident(s) => {
                self.bump();
                let f = Symbol::new(&s);
                let declared = self.signature.as_ref().map(|sig| sig.arity(&f));
                if self.eat(&Tok::LParen) {
                    let mut args = Vec::new();
                    if !self.eat(&Tok::RParen) {
                        loop {
                            args.push(self.term()?);
                            if self.eat(&Tok::RParen) {
                                break;
                            }
                            self.expect(Tok::Comma)?;
                        }
                    }
                    match declared {
                        Some(None) => {
                            Err(ParseError::new(span, format!("unknown term-former `{s}`")))
                        }
                        Some(Some(n)) if n != args.len() => Err(ParseError::new(
                            span,
                            format!(
                                "term-former `{s}` has arity {n} but is applied to {} arguments",
                                args.len()
                            ),
                        )),
                        _ => Ok(Term::App(f, args)),
                    }
                } else {
                    match declared {
                        Some(Some(0)) => Ok(Term::App(f, Vec::new())),
                        Some(Some(n)) => Err(ParseError::new(
                            span,
                            format!(
                                "term-former `{s}` has arity {n} but is applied to 0 arguments"
                            ),
                        )),
                        _ => Ok(Term::Atom(Atom::new(s))),
                    }
                }
            }
            tok => Err(ParseError::new(
                span,
                format!("expected a term, found {tok}"),
            )),
        }
    }

    fn suspension(&mut self) -> Result<Term, ParseError> {
        let mut swaps = Vec::new();
        while self.eat(&Tok::LParen) {
            let a = self.atom()?;
            let b = self.atom()?;
            self.expect(Tok::RParen)?;
            swaps.push((a, b));
        }
        self.expect(Tok::Dot)?;
        let x = self.unknown()?;
        Ok(Term::Susp(Permutation::from_swaps(swaps), x))
    }

    /// Parses `a#X, ...` up to (not including) a token outside the list.
    fn context(&mut self) -> Result<FreshnessContext, ParseError> {
        let mut ctx = FreshnessContext::new();
        if !matches!(self.peek(), Tok::Ident(_)) {
            return Ok(ctx);
        }
        loop {
            let a = self.atom()?;
            self.expect(Tok::Hash)?;
            let x = self.unknown()?;
            ctx.insert(a, x);
            if !self.eat(&Tok::Comma) {
                return Ok(ctx);
            }
        }
    }

    /// `[ctx |-] lhs SEP rhs`
    fn judgement(&mut self, sep: Tok) -> Result<(FreshnessContext, Term, Term), ParseError> {
        let ctx = if self.eat(&Tok::Turnstile) {
            FreshnessContext::new()
        } else if self.looks_like_context() {
            let ctx = self.context()?;
            self.expect(Tok::Turnstile)?;
            ctx
        } else {
            FreshnessContext::new()
        };
        let lhs = self.term()?;
        self.expect(sep)?;
        let rhs = self.term()?;
        Ok((ctx, lhs, rhs))
    }

    fn looks_like_context(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_)) && *self.peek2() == Tok::Hash
    }
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    parse_term_with(text, ParseOptions::default())
}

pub fn parse_term_with(text: &str, opts: ParseOptions<'_>) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, opts)?;
    let t = p.term()?;
    p.eof()?;
    Ok(t)
}

pub fn parse_context(text: &str) -> Result<FreshnessContext, ParseError> {
    parse_context_with(text, ParseOptions::default())
}

pub fn parse_context_with(
    text: &str,
    opts: ParseOptions<'_>,
) -> Result<FreshnessContext, ParseError> {
    let mut p = Parser::new(text, opts)?;
    let ctx = p.context()?;
    p.eof()?;
    Ok(ctx)
}

pub fn parse_theory(text: &str) -> Result<Theory, ParseError> {
    parse_theory_with(text, false)
}

pub fn parse_theory_with(text: &str, allow_machine: bool) -> Result<Theory, ParseError> {
    let mut p = Parser::new(
        text,
        ParseOptions {
            signature: None,
            allow_machine,
        },
    )?;
    let mut signature = Signature::new();
    let mut name: Option<String> = None;
    let mut rules: Vec<RewriteRule> = Vec::new();
    let mut kind: Option<(TheoryKind, Span)> = None;
    let mut names: BTreeSet<String> = BTreeSet::new();
    loop {
        let (tok, span) = p.bump();
        let keyword = match tok {
            Tok::Eof => break,
            Tok::Ident(k) => k,
            tok => {
                return Err(ParseError::new(
                    span,
                    format!("expected `theory`, `sig`, `rule` or `axiom`, found {tok}"),
                ))
            }
        };
        match keyword.as_str() {
            "theory" => {
                let (n, span) = p.ident("a theory name")?;
                if name.replace(n).is_some() {
                    return Err(ParseError::new(span, "theory name given twice"));
                }
                p.expect(Tok::Semi)?;
            }
            "sig" => {
                while !p.eat(&Tok::Semi) {
                    let (f, span) = p.ident("a term-former")?;
                    if is_unknown_name(&f) {
                        return Err(ParseError::new(
                            span,
                            format!("term-former `{f}` must start lowercase"),
                        ));
                    }
                    p.expect(Tok::Colon)?;
                    let arity = match p.bump() {
                        (Tok::Num(n), _) => n,
                        (tok, span) => {
                            return Err(ParseError::new(
                                span,
                                format!("expected an arity, found {tok}"),
                            ))
                        }
                    };
                    signature
                        .declare(Symbol::new(&f), arity)
                        .map_err(|e| ParseError::new(span, e.to_string()))?;
                }
            }
            "rule" | "axiom" => {
                let this = if keyword == "rule" {
                    TheoryKind::Rewrite
                } else {
                    TheoryKind::Equational
                };
                match kind {
                    Some((k, _)) if k != this => {
                        return Err(ParseError::new(
                            span,
                            "a theory cannot mix `rule` and `axiom` items",
                        ))
                    }
                    None => kind = Some((this, span)),
                    _ => {}
                }
                let (rule_name, name_span) = p.ident("a rule name")?;
                if !names.insert(rule_name.clone()) {
                    return Err(ParseError::new(
                        name_span,
                        format!("rule `{rule_name}` defined twice"),
                    ));
                }
                p.expect(Tok::Colon)?;
                p.signature = Some(signature.clone());
                let body_span = p.span();
                let sep = if this == TheoryKind::Rewrite {
                    Tok::Arrow
                } else {
                    Tok::Equals
                };
                let parsed = p.judgement(sep);
                p.signature = None;
                let (ctx, lhs, rhs) = parsed?;
                p.expect(Tok::Semi)?;
                let rule = RewriteRule::new(rule_name, ctx, lhs, rhs).map_err(|e| {
                    let msg = match &e {
                        RuleError::RhsUnknown { unknown, .. } => {
                            format!("unknown {unknown} occurs on the right-hand side but not on the left")
                        }
                        RuleError::CtxUnknown { unknown, .. } => {
                            format!("unknown {unknown} occurs in the freshness context but not on the left")
                        }
                    };
                    ParseError::new(body_span, msg)
                })?;
                rules.push(rule);
            }
            other => {
                return Err(ParseError::new(
                    span,
                    format!("expected `theory`, `sig`, `rule` or `axiom`, found `{other}`"),
                ))
            }
        }
    }
    Ok(Theory {
        name: name.unwrap_or_else(|| "theory".to_string()),
        signature,
        rules,
        kind: kind.map(|(k, _)| k).unwrap_or_default(),
    })
}
