//! Text syntax for space and action expressions.
//!
//! ```text
//! space  := "pt" | "empty" | "S(" INT ")" | "P(" INT "," INT ")"
//!         | "toda(" INT "," INT "," INT ")" | "cone(" INT "," INT ")"
//!         | "wedge(" space ("," space)* ")" | "disj(" [space ("," space)*] ")"
//!         | "join(" space "," space ")" | "susp(" space ")"
//!         | "prod(" space "," space ")" | "punct(" space ")"
//! action := "trivial(" space ")" | "rotfree(" INT ")" | "suspA(" action ")"
//!         | "joinA(" action "," action ")" | "wedgeA(" based ("," based)* ")"
//!         | "coneA(" INT "," INT ")" | "multA(" INT ")" | "bundleA(" INT ")"
//!         | "punctA(" action ")"
//! based  := action ["@" INT]
//! ```
//!
//! `@k` puts the wedge basepoint in fixed component `k` of that summand
//! (default 0). The `Display` impls of [`SpaceExpr`] and [`ActionExpr`]
//! print this syntax, and parsing their output gives back the same tree.

use std::fmt;

use crate::equivariant::{ActionExpr, Based};
use crate::space::SpaceExpr;
use crate::{Error, ParseErrorKind, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
    /// Byte offsets into the source.
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Space(SpaceExpr),
    Action(ActionExpr),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Space(s) => s.fmt(f),
            Expr::Action(a) => a.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DslProgram {
    pub source: String,
    pub root: Expr,
    /// Span of every node, in preorder.
    pub spans: Vec<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    Comma,
    At,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => f.write_str(s),
            Tok::Int(i) => write!(f, "{i}"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
            Tok::Comma => f.write_str(","),
            Tok::At => f.write_str("@"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    text: String,
    span: Span,
}

fn syntax(span: Span, token: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        kind: ParseErrorKind::Syntax,
        line: span.line,
        column: span.column,
        token: token.to_string(),
        message: message.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut it = src.char_indices().peekable();
    while let Some(&(start, c)) = it.peek() {
        let span_at = |end| Span {
            line,
            column: col,
            start,
            end,
        };
        if c == '\n' {
            it.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            it.next();
            col += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '@' => Some(Tok::At),
            _ => None,
        };
        if let Some(tok) = single {
            it.next();
            out.push(Token {
                tok,
                text: c.to_string(),
                span: span_at(start + 1),
            });
            col += 1;
            continue;
        }
        let mut end = start;
        let mut chars = 0;
        if c.is_ascii_alphabetic() || c == '_' {
            while let Some(&(i, d)) = it.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                end = i + d.len_utf8();
                chars += 1;
                it.next();
            }
            let text = &src[start..end];
            out.push(Token {
                tok: Tok::Ident(text.to_string()),
                text: text.to_string(),
                span: span_at(end),
            });
        } else if c.is_ascii_digit() || c == '-' || c == '+' {
            it.next();
            end = start + 1;
            chars = 1;
            while let Some(&(i, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                chars += 1;
                it.next();
            }
            let text = &src[start..end];
            let value = text
                .parse::<i64>()
                .map_err(|_| syntax(span_at(end), text, "expected an integer"))?;
            out.push(Token {
                tok: Tok::Int(value),
                text: text.to_string(),
                span: span_at(end),
            });
        } else {
            return Err(syntax(
                span_at(start + c.len_utf8()),
                &c.to_string(),
                "unexpected character",
            ));
        }
        col += chars;
    }
    out.push(Token {
        tok: Tok::End,
        text: String::new(),
        span: Span {
            line,
            column: col,
            start: src.len(),
            end: src.len(),
        },
    });
    Ok(out)
}

const SPACE_HEADS: &[&str] = &[
    "pt", "empty", "S", "P", "toda", "cone", "wedge", "disj", "join", "susp", "prod", "punct",
];
const ACTION_HEADS: &[&str] = &[
    "trivial", "rotfree", "suspA", "joinA", "wedgeA", "coneA", "multA", "bundleA", "punctA",
];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    spans: Vec<Span>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(syntax(
                t.span,
                &t.tok.to_string(),
                format!("expected {what}"),
            ))
        }
    }

    fn int(&mut self) -> Result<(i64, Span)> {
        let t = self.next();
        match t.tok {
            Tok::Int(v) => Ok((v, t.span)),
            other => Err(syntax(t.span, &other.to_string(), "expected an integer")),
        }
    }

    fn uint(&mut self) -> Result<u32> {
        let (v, span) = self.int()?;
        u32::try_from(v)
            .map_err(|_| semantic(span, &v.to_string(), "expected a nonnegative integer"))
    }

    fn head(&mut self, allowed: &[&str], what: &str) -> Result<(String, Span)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(name) if allowed.contains(&name.as_str()) => Ok((name.clone(), t.span)),
            Tok::Ident(name) => {
                let hint = if what == "space" && ACTION_HEADS.contains(&name.as_str()) {
                    "; this is an action, expected a space"
                } else if what == "action" && SPACE_HEADS.contains(&name.as_str()) {
                    "; this is a space, wrap it as trivial(...)"
                } else {
                    ""
                };
                Err(syntax(
                    t.span,
                    name,
                    format!("unknown {what} constructor{hint}"),
                ))
            }
            other => Err(syntax(
                t.span,
                &other.to_string(),
                format!("expected a {what}"),
            )),
        }
    }

    /// Reserves the preorder slot of a node; the span is finished once the
    /// node's closing token is known.
    fn open(&mut self, start: Span) -> usize {
        self.spans.push(start);
        self.spans.len() - 1
    }

    fn close(&mut self, slot: usize) {
        let end = self.toks[self.pos.saturating_sub(1)].span.end;
        self.spans[slot].end = end;
    }

    fn space(&mut self) -> Result<SpaceExpr> {
        let (name, span) = self.head(SPACE_HEADS, "space")?;
        let slot = self.open(span);
        let e = match name.as_str() {
            "pt" => SpaceExpr::Point,
            "empty" => SpaceExpr::Empty,
            _ => {
                self.expect(Tok::LParen, "`(`")?;
                let e = match name.as_str() {
                    "S" => SpaceExpr::Sphere(self.uint()?),
                    "P" => {
                        let h = self.uint()?;
                        self.expect(Tok::Comma, "`,`")?;
                        SpaceExpr::PTrunc { h, n: self.uint()? }
                    }
                    "toda" => {
                        let n = self.uint()?;
                        self.expect(Tok::Comma, "`,`")?;
                        let a = self.int()?.0;
                        self.expect(Tok::Comma, "`,`")?;
                        SpaceExpr::Toda {
                            n,
                            a,
                            b: self.int()?.0,
                        }
                    }
                    "cone" => {
                        let n = self.uint()?;
                        self.expect(Tok::Comma, "`,`")?;
                        SpaceExpr::MappingCone {
                            n,
                            hopf: self.int()?.0,
                        }
                    }
                    "wedge" => SpaceExpr::Wedge(self.list(Self::space, 1)?),
                    "disj" => SpaceExpr::Disjoint(self.list(Self::space, 0)?),
                    "join" | "prod" => {
                        let a = self.space()?;
                        self.expect(Tok::Comma, "`,`")?;
                        let b = self.space()?;
                        if name == "join" {
                            SpaceExpr::join(a, b)
                        } else {
                            SpaceExpr::product(a, b)
                        }
                    }
                    "susp" => SpaceExpr::susp(self.space()?),
                    _ => SpaceExpr::punctured(self.space()?),
                };
                self.expect(Tok::RParen, "`)`")?;
                e
            }
        };
        self.close(slot);
        e.validate()
            .map_err(|err| semantic(span, &name, strip_prefix(&err)))?;
        Ok(e)
    }

    /// Comma-separated items up to the closing parenthesis, which is left
    /// for the caller.
    fn list<T>(&mut self, item: fn(&mut Self) -> Result<T>, min: usize) -> Result<Vec<T>> {
        let mut out = Vec::new();
        if self.peek().tok == Tok::RParen {
            if min > 0 {
                let t = self.peek().clone();
                return Err(syntax(
                    t.span,
                    ")",
                    format!("expected at least {min} item(s)"),
                ));
            }
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.peek().tok != Tok::Comma {
                return Ok(out);
            }
            self.next();
        }
    }

    fn based(&mut self) -> Result<Based> {
        let action = self.action()?;
        if self.peek().tok != Tok::At {
            return Ok(Based::new(action));
        }
        self.next();
        let component = self.uint()? as usize;
        Ok(Based::at(action, component))
    }

    fn action(&mut self) -> Result<ActionExpr> {
        let (name, span) = self.head(ACTION_HEADS, "action")?;
        let slot = self.open(span);
        self.expect(Tok::LParen, "`(`")?;
        let a = match name.as_str() {
            "trivial" => ActionExpr::Trivial(self.space()?),
            "rotfree" => ActionExpr::FreeRotation(self.uint()?),
            "suspA" => ActionExpr::susp(self.action()?),
            "joinA" => {
                let a = self.action()?;
                self.expect(Tok::Comma, "`,`")?;
                ActionExpr::join(a, self.action()?)
            }
            "wedgeA" => ActionExpr::WedgeA(self.list(Self::based, 1)?),
            "coneA" => {
                let n = self.uint()?;
                self.expect(Tok::Comma, "`,`")?;
                ActionExpr::ConeA { n, k: self.uint()? }
            }
            "multA" => ActionExpr::MultConeA(self.uint()?),
            "bundleA" => ActionExpr::BundleA(self.uint()?),
            _ => ActionExpr::puncture(self.action()?),
        };
        self.expect(Tok::RParen, "`)`")?;
        self.close(slot);
        a.validate()
            .map_err(|err| semantic(span, &name, strip_prefix(&err)))?;
        Ok(a)
    }
}

fn semantic(span: Span, token: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        kind: ParseErrorKind::Semantic,
        line: span.line,
        column: span.column,
        token: token.to_string(),
        message: message.into(),
    }
}

fn strip_prefix(e: &Error) -> String {
    match e {
        Error::InvalidSpace(m) | Error::InvalidAction(m) => m.clone(),
        other => other.to_string(),
    }
}

/// Parses a space or an action, whichever the leading constructor names.
pub fn parse(text: &str) -> Result<DslProgram> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        spans: Vec::new(),
    };
    let first = p.peek().clone();
    let root = match &first.tok {
        Tok::Ident(name) if ACTION_HEADS.contains(&name.as_str()) => Expr::Action(p.action()?),
        Tok::Ident(_) => Expr::Space(p.space()?),
        Tok::End => return Err(syntax(first.span, "", "empty input")),
        other => {
            return Err(syntax(
                first.span,
                &other.to_string(),
                "expected a space or an action",
            ))
        }
    };
    let rest = p.peek().clone();
    if rest.tok != Tok::End {
        return Err(syntax(rest.span, &rest.text, "unexpected trailing input"));
    }
    Ok(DslProgram {
        source: text.to_string(),
        root,
        spans: p.spans,
    })
}

pub fn parse_space(text: &str) -> Result<SpaceExpr> {
    match parse(text)?.root {
        Expr::Space(s) => Ok(s),
        Expr::Action(a) => Err(Error::Parse {
            kind: ParseErrorKind::Syntax,
            line: 1,
            column: 1,
            token: a.to_string(),
            message: "expected a space, found an action".into(),
        }),
    }
}

pub fn parse_action(text: &str) -> Result<ActionExpr> {
    match parse(text)?.root {
        Expr::Action(a) => Ok(a),
        Expr::Space(s) => Err(Error::Parse {
            kind: ParseErrorKind::Syntax,
            line: 1,
            column: 1,
            token: s.to_string(),
            message: "expected an action, found a space; wrap it as trivial(...)".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use SpaceExpr as S;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_space("wedge(S(2), S(4), S(6))").unwrap(),
            S::Wedge(vec![S::Sphere(2), S::Sphere(4), S::Sphere(6)])
        );
        assert_eq!(
            parse_action("coneA(4, 2)").unwrap(),
            ActionExpr::ConeA { n: 4, k: 2 }
        );
        assert_eq!(
            parse_space("toda(2,-1, 0)").unwrap(),
            S::Toda { n: 2, a: -1, b: 0 }
        );
        assert_eq!(
            parse_action("wedgeA(trivial(S(2)), joinA(rotfree(1), multA(2)) @1)").unwrap(),
            ActionExpr::WedgeA(vec![
                Based::new(ActionExpr::Trivial(S::Sphere(2))),
                Based::at(
                    ActionExpr::join(ActionExpr::FreeRotation(1), ActionExpr::MultConeA(2)),
                    1
                ),
            ])
        );
        assert_eq!(
            parse_space(" disj( pt ,\n S(3) ) ").unwrap(),
            S::disjoint(vec![S::Point, S::Sphere(3)])
        );
    }

    fn err(text: &str) -> (ParseErrorKind, usize, usize, String, String) {
        match parse(text) {
            Err(Error::Parse {
                kind,
                line,
                column,
                token,
                message,
            }) => (kind, line, column, token, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn semantic_errors_name_the_invariant() {
        let (kind, line, col, token, msg) = err("rotfree(4)");
        assert_eq!(kind, ParseErrorKind::Semantic);
        assert_eq!((line, col, token.as_str()), (1, 1, "rotfree"));
        assert!(msg.contains("FreeRotation requires odd dimension"), "{msg}");
        let (kind, _, col, _, msg) = err("suspA(coneA(3, 0))");
        assert_eq!(kind, ParseErrorKind::Semantic);
        assert_eq!(col, 7);
        assert!(msg.contains("even n"));
        assert_eq!(err("toda(3, 1, 0)").0, ParseErrorKind::Semantic);
        assert_eq!(err("punct(toda(2, 0, 0))").0, ParseErrorKind::Semantic);
        assert_eq!(err("S(-1)").0, ParseErrorKind::Semantic);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let (kind, line, col, token, _) = err("wedge(S(2),\n  S(4) S(6))");
        assert_eq!(kind, ParseErrorKind::Syntax);
        assert_eq!((line, col, token.as_str()), (2, 8, "S"));
        assert_eq!(err("sphere(2)").3, "sphere");
        assert_eq!(err("").4, "empty input");
        assert_eq!(err("S(2) S(3)").4, "unexpected trailing input");
        assert_eq!(err("S(2").3, "end of input");
        assert_eq!(err("S(2)#").3, "#");
        assert!(err("suspA(S(2))").4.contains("trivial(...)"));
        assert!(parse_action("S(2)").is_err());
        assert!(parse_space("rotfree(1)").is_err());
        assert_eq!(err("wedge()").0, ParseErrorKind::Syntax);
    }

    #[test]
    fn spans_in_preorder() {
        let p = parse("join(S(1), susp(pt))").unwrap();
        let starts: Vec<usize> = p.spans.iter().map(|s| s.start).collect();
        assert_eq!(starts, vec![0, 5, 11, 16]);
        assert_eq!(p.spans[0].end, 20);
        assert_eq!(&p.source[p.spans[2].start..p.spans[2].end], "susp(pt)");
    }

    fn space_strategy() -> impl Strategy<Value = SpaceExpr> {
        let leaf = prop_oneof![
            Just(S::Point),
            Just(S::Empty),
            (0u32..10).prop_map(S::Sphere),
            (1u32..4, 1u32..4).prop_map(|(h, m)| S::PTrunc { h, n: 2 * m }),
            (1u32..5, -3i64..4, -3i64..4).prop_map(|(n, a, b)| S::Toda {
                n,
                a: if n % 2 == 0 { a } else { 0 },
                b
            }),
            (1u32..4, -3i64..4).prop_map(|(m, hopf)| S::MappingCone { n: 2 * m, hopf }),
            (0u32..5).prop_map(|k| S::punctured(S::Sphere(k))),
            (1u32..4, 1u32..4)
                .prop_map(|(p, q)| S::punctured(S::product(S::Sphere(p), S::Sphere(q)))),
        ];
        leaf.prop_recursive(3, 24, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 2..4).prop_map(S::Wedge),
                prop::collection::vec(inner.clone(), 0..3).prop_map(S::Disjoint),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| S::join(a, b)),
                inner.clone().prop_map(S::susp),
                (inner.clone(), inner).prop_map(|(a, b)| S::product(a, b)),
            ]
        })
    }

    fn action_strategy() -> impl Strategy<Value = ActionExpr> {
        let leaf = prop_oneof![
            space_strategy().prop_map(ActionExpr::Trivial),
            (0u32..4).prop_map(|k| ActionExpr::FreeRotation(2 * k + 1)),
            (1u32..4, 0u32..4).prop_map(|(m, j)| ActionExpr::ConeA {
                n: 2 * m,
                k: 2 * j.min(m)
            }),
            prop::sample::select(vec![2u32, 4, 8]).prop_map(ActionExpr::MultConeA),
            (1u32..4).prop_map(|m| ActionExpr::BundleA(2 * m + 1)),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(ActionExpr::susp),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| ActionExpr::join(a, b)),
                prop::collection::vec((inner.clone(), 0usize..3), 2..4).prop_map(|cs| {
                    ActionExpr::WedgeA(cs.into_iter().map(|(a, i)| Based::at(a, i)).collect())
                }),
                inner.prop_map(ActionExpr::puncture),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn space_round_trip(e in space_strategy()) {
            let printed = e.to_string();
            let back = parse_space(&printed).unwrap();
            prop_assert_eq!(&back, &e);
            prop_assert_eq!(back.to_string(), printed);
        }

        #[test]
        fn action_round_trip(a in action_strategy()) {
            let printed = a.to_string();
            let back = parse_action(&printed).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), printed);
        }
    }
}
