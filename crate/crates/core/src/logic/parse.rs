//! Recursive-descent parser for the sequent DSL.
//!
//! ```text
//! term    ::= 0 | u | x | neg(t) | oplus(t,t) | odot(t,t) | add(t,t)
//!           | minus(t) | inf(t,t) | sup(t,t) | times(k,t)
//! atom    ::= t = t | t <= t
//! formula ::= tt | ff | atom | f & f | f \/ f | (f)
//!           | exists x. f | bigvee n<=N. f | bigvee n<=auto. f
//! sequent ::= f |- [x,y,...] f
//! ```

use thiserror::Error;

use super::ast::{Bound, Formula, Op, Scalar, Sequent, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {}: {message}", .pos + 1)]
pub struct ParseError {
    /// 0-based character offset.
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Eq,
    Leq,
    And,
    Or,
    Turnstile,
}

impl Tok {
    fn show(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Leq => "`<=`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`\\/`".into(),
            Tok::Turnstile => "`|-`".into(),
        }
    }
}

const KEYWORDS: [&str; 6] = ["tt", "ff", "exists", "bigvee", "auto", "u"];

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, m: String| ParseError { pos, message: m };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let two = |s: &str| chars[i..].iter().take(2).collect::<String>() == s;
        let tok = if c.is_whitespace() {
            i += 1;
            continue;
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
            continue;
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| err(start, format!("number {text} is too large")))?;
            out.push((start, Tok::Num(n)));
            continue;
        } else if two("<=") {
            i += 1;
            Tok::Leq
        } else if two("\\/") {
            i += 1;
            Tok::Or
        } else if two("|-") {
            i += 1;
            Tok::Turnstile
        } else {
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '=' => Tok::Eq,
                '&' => Tok::And,
                _ => return Err(err(start, format!("unexpected character `{c}`"))),
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(src)?, at: 0, end: src.chars().count() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.at + 1).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), message: message.into() })
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".to_string(), Tok::show)
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.at += 1;
            Ok(())
        } else {
            self.fail(format!("expected {}, found {}", tok.show(), self.found()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) && Op::from_name(s).is_none() && s != "times" => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.fail(format!("expected {what}, found {}", self.found())),
        }
    }

    fn done(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.fail(format!("unexpected {} after end of input", t.show())),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(0)) => {
                self.at += 1;
                Ok(Term::Zero)
            }
            Some(Tok::Num(n)) => self.fail(format!("numeral {n} is not a term (only 0 is)")),
            Some(Tok::Ident(name)) if self.peek2() == Some(&Tok::LParen) => {
                self.at += 2;
                if name == "times" {
                    let k = match self.peek().cloned() {
                        Some(Tok::Num(n)) => {
                            self.at += 1;
                            Scalar::Lit(n)
                        }
                        _ => Scalar::Index(self.ident("a multiplier")?),
                    };
                    self.expect(Tok::Comma)?;
                    let t = self.term()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Term::Times(k, Box::new(t)));
                }
                let Some(op) = Op::from_name(&name) else {
                    self.at -= 2;
                    return self.fail(format!("unknown function symbol `{name}`"));
                };
                let mut args = vec![self.term()?];
                for _ in 1..op.arity() {
                    self.expect(Tok::Comma)?;
                    args.push(self.term()?);
                }
                self.expect(Tok::RParen)?;
                Ok(Term::App(op, args))
            }
            Some(Tok::Ident(name)) if name == "u" => {
                self.at += 1;
                Ok(Term::Unit)
            }
            Some(Tok::Ident(_)) => Ok(Term::Var(self.ident("a term")?)),
            _ => self.fail(format!("expected a term, found {}", self.found())),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.at += 1;
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.at += 1;
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.at += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Ident(k)) if k == "tt" => {
                self.at += 1;
                Ok(Formula::Top)
            }
            Some(Tok::Ident(k)) if k == "ff" => {
                self.at += 1;
                Ok(Formula::Bottom)
            }
            Some(Tok::Ident(k)) if k == "exists" => {
                self.at += 1;
                let x = self.ident("a variable")?;
                self.expect(Tok::Dot)?;
                Ok(Formula::Exists(x, Box::new(self.formula()?)))
            }
            Some(Tok::Ident(k)) if k == "bigvee" => {
                self.at += 1;
                let index = self.ident("an index variable")?;
                self.expect(Tok::Leq)?;
                let bound = match self.peek().cloned() {
                    Some(Tok::Num(n)) => Bound::Lit(n),
                    Some(Tok::Ident(a)) if a == "auto" => Bound::Auto,
                    _ => return self.fail(format!("expected a bound or `auto`, found {}", self.found())),
                };
                self.at += 1;
                self.expect(Tok::Dot)?;
                Ok(Formula::BigVee { index, bound, body: Box::new(self.formula()?) })
            }
            _ => {
                let a = self.term()?;
                let rel = self.peek().cloned();
                match rel {
                    Some(Tok::Eq) | Some(Tok::Leq) => self.at += 1,
                    _ => return self.fail(format!("expected `=` or `<=`, found {}", self.found())),
                }
                let b = self.term()?;
                Ok(if rel == Some(Tok::Eq) { Formula::Eq(a, b) } else { Formula::Leq(a, b) })
            }
        }
    }

    fn sequent(&mut self) -> Result<Sequent, ParseError> {
        let premise = self.formula()?;
        self.expect(Tok::Turnstile)?;
        self.expect(Tok::LBracket)?;
        let mut context = Vec::new();
        if self.peek() != Some(&Tok::RBracket) {
            context.push(self.ident("a context variable")?);
            while self.peek() == Some(&Tok::Comma) {
                self.at += 1;
                context.push(self.ident("a context variable")?);
            }
        }
        self.expect(Tok::RBracket)?;
        let conclusion = self.formula()?;
        Ok(Sequent { context, premise, conclusion })
    }
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.done()?;
    Ok(t)
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src)?;
    let f = p.formula()?;
    p.done()?;
    Ok(f)
}

/// Parses a sequent and checks that its free variables are declared in
/// the context and that no context variable is repeated.
pub fn parse_sequent(src: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(src)?;
    let s = p.sequent()?;
    p.done()?;
    for (i, v) in s.context.iter().enumerate() {
        if s.context[..i].contains(v) {
            return Err(ParseError { pos: 0, message: format!("context variable {v} declared twice") });
        }
    }
    if let Some(v) = s.free_vars().into_iter().find(|v| !s.context.contains(v)) {
        return Err(ParseError { pos: 0, message: format!("free variable {v} is not in the context") });
    }
    Ok(s)
}

/// One sequent per non-empty line; `#` starts a comment. Errors carry the
/// 1-based line number.
pub fn parse_sequents(src: &str) -> Result<Vec<Sequent>, (usize, ParseError)> {
    src.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then(|| parse_sequent(line).map_err(|e| (i + 1, e)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> Term {
        Term::var(s)
    }

    #[test]
    fn terms() {
        assert_eq!(parse_term("0").unwrap(), Term::Zero);
        assert_eq!(parse_term("u").unwrap(), Term::Unit);
        assert_eq!(
            parse_term("inf(u, add(x,x))").unwrap(),
            Term::app2(Op::Inf, Term::Unit, Term::app2(Op::Add, v("x"), v("x")))
        );
        assert_eq!(parse_term("times(3, minus(y))").unwrap(), Term::Times(Scalar::Lit(3), Box::new(Term::app1(Op::Minus, v("y")))));
        assert_eq!(parse_term("times(n, u)").unwrap(), Term::Times(Scalar::Index("n".into()), Box::new(Term::Unit)));
        assert!(parse_term("1").is_err());
        assert!(parse_term("neg(x, y)").is_err());
        assert!(parse_term("foo(x)").unwrap_err().message.contains("unknown function symbol"));
        assert!(parse_term("oplus(x)").is_err());
    }

    #[test]
    fn formulas() {
        let f = parse_formula("x = 0 & y <= u \\/ tt").unwrap();
        assert_eq!(
            f,
            Formula::or(
                Formula::and(Formula::Eq(v("x"), Term::Zero), Formula::Leq(v("y"), Term::Unit)),
                Formula::Top
            )
        );
        let g = parse_formula("exists z. z = x & (ff \\/ z <= x)").unwrap();
        assert!(matches!(g, Formula::Exists(ref z, _) if z == "z"));
        assert_eq!(g.free_vars().into_iter().collect::<Vec<_>>(), vec!["x".to_string()]);
        let h = parse_formula("bigvee n<=8. x <= times(n,u)").unwrap();
        assert!(matches!(h, Formula::BigVee { bound: Bound::Lit(8), .. }));
        let a = parse_formula("bigvee n<=auto. x <= times(n,u)").unwrap();
        assert!(matches!(a, Formula::BigVee { bound: Bound::Auto, .. }));
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("tt |- [x] x = 0").unwrap();
        assert_eq!(s.context, vec!["x"]);
        assert_eq!(s.premise, Formula::Top);
        let s = parse_sequent("x <= y & y <= x |- [x,y] x = y").unwrap();
        assert_eq!(s.to_string(), "x <= y & y <= x |- [x,y] x = y");
        assert!(parse_sequent("tt |- [] 0 = 0").is_ok());
        let e = parse_sequent("tt |- [x] x = y").unwrap_err();
        assert!(e.message.contains("free variable y"));
        assert!(parse_sequent("tt |- [x,x] x = x").is_err());
        let e = parse_sequent("tt |- [x] x = ").unwrap_err();
        assert_eq!(e.pos, 14);
        assert!(parse_sequent("tt |- [x] x = 0 extra").is_err());
        assert!(parse_sequent("tt |- [u] 0 = 0").is_err());
    }

    #[test]
    fn files() {
        let src = "# axioms\n tt |- [x] oplus(x, 0) = x\n\n tt |- [x,y] oplus(x,y) = oplus(y,x) # comm\n";
        assert_eq!(parse_sequents(src).unwrap().len(), 2);
        let err = parse_sequents("tt |- [] 0 = 0\nbad |-").unwrap_err();
        assert_eq!(err.0, 2);
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            Just(Term::Zero),
            Just(Term::Unit),
            prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (prop::sample::select(vec![Op::Neg, Op::Minus]), inner.clone()).prop_map(|(op, a)| Term::app1(op, a)),
                (
                    prop::sample::select(vec![Op::Oplus, Op::Odot, Op::Add, Op::Inf, Op::Sup]),
                    inner.clone(),
                    inner.clone()
                )
                    .prop_map(|(op, a, b)| Term::app2(op, a, b)),
                (0u64..5, inner.clone()).prop_map(|(k, a)| Term::Times(Scalar::Lit(k), Box::new(a))),
                inner.prop_map(|a| Term::Times(Scalar::Index("n".into()), Box::new(a))),
            ]
        })
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::Top),
            Just(Formula::Bottom),
            (arb_term(), arb_term()).prop_map(|(a, b)| Formula::Eq(a, b)),
            (arb_term(), arb_term()).prop_map(|(a, b)| Formula::Leq(a, b)),
        ];
        leaf.prop_recursive(4, 16, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (prop::sample::select(vec!["x", "w"]), inner.clone())
                    .prop_map(|(x, f)| Formula::Exists(x.to_string(), Box::new(f))),
                (prop::option::of(0u64..10), inner).prop_map(|(b, f)| Formula::BigVee {
                    index: "n".into(),
                    bound: b.map_or(Bound::Auto, Bound::Lit),
                    body: Box::new(f)
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn terms_round_trip(t in arb_term()) {
            prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }

        #[test]
        fn formulas_round_trip(f in arb_formula()) {
            prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }

        #[test]
        fn sequents_round_trip(p in arb_formula(), c in arb_formula()) {
            let s = Sequent::new(&["x", "y", "z"], p, c);
            prop_assert_eq!(parse_sequent(&s.to_string()).unwrap(), s);
        }
    }
}
