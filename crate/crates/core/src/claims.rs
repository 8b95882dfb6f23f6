//! Arithmetic claims: a one-line-per-claim format for stating integer
//! identities, plus an exact evaluator.
//!
//! ```text
//! claim <name>: <expr> == <expr> expect=(holds|fails) [cite="<text>"]
//! ```
//!
//! Expressions use non-negative integer literals, `+`, `-`, `*`, unary
//! minus and parentheses. `×` and `−` are accepted as aliases. Whitespace
//! is free inside a line; blank lines and `#` comments are skipped.

use std::fmt;
use std::iter::Peekable;
use std::str::CharIndices;

use serde::Serialize;
use thiserror::Error;

use crate::declared::{escape, take_quoted};

pub const DEFAULT_CLAIMS: &str = include_str!("../data/claims.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("claim `{claim}`: integer overflow while evaluating")]
pub struct OverflowError {
    pub claim: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Lit(i64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Exact value, or `None` on `i64` overflow.
    pub fn eval(&self) -> Option<i64> {
        match self {
            Expr::Lit(n) => Some(*n),
            Expr::Neg(e) => e.eval()?.checked_neg(),
            Expr::Add(a, b) => a.eval()?.checked_add(b.eval()?),
            Expr::Sub(a, b) => a.eval()?.checked_sub(b.eval()?),
            Expr::Mul(a, b) => a.eval()?.checked_mul(b.eval()?),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Lit(..) => 4,
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>, min_precedence: u8) -> fmt::Result {
        if self.precedence() < min_precedence {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Operators are left-associative, so right operands of equal
        // precedence need parentheses.
        let binary = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, p: u8| {
            a.fmt_operand(f, p)?;
            f.write_str(op)?;
            b.fmt_operand(f, p + 1)
        };
        match self {
            Expr::Lit(n) => write!(f, "{n}"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                e.fmt_operand(f, 3)
            }
            Expr::Add(a, b) => binary(f, a, "+", b, 1),
            Expr::Sub(a, b) => binary(f, a, "-", b, 1),
            Expr::Mul(a, b) => binary(f, a, "*", b, 2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Holds,
    Fails,
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expectation::Holds => "holds",
            Expectation::Fails => "fails",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub name: String,
    pub lhs: Expr,
    pub rhs: Expr,
    pub expect: Expectation,
    pub cite: String,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "claim {}: {} == {} expect={}", self.name, self.lhs, self.rhs, self.expect)?;
        if !self.cite.is_empty() {
            write!(f, " cite=\"{}\"", escape(&self.cite))?;
        }
        Ok(())
    }
}

struct LineParser<'a> {
    text: &'a str,
    chars: Peekable<CharIndices<'a>>,
    line: usize,
}

impl<'a> LineParser<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        LineParser {
            text,
            chars: text.char_indices().peekable(),
            line,
        }
    }

    fn offset(&mut self) -> usize {
        self.chars.peek().map_or(self.text.len(), |(i, _)| *i)
    }

    fn error(&mut self, message: impl Into<String>) -> ParseError {
        let offset = self.offset();
        self.error_at(offset, message)
    }

    fn error_at(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.text[..offset].chars().count() + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|(_, c)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.offset();
        while self
            .chars
            .next_if(|(_, c)| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
            .is_some()
        {}
        let end = self.offset();
        &self.text[start..end]
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.chars.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some('-' | '−') => {
                    self.chars.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while matches!(self.peek(), Some('*' | '×')) {
            self.chars.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some('-' | '−') => {
                self.chars.next();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some('(') => {
                self.chars.next();
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.offset();
                while self.chars.next_if(|(_, c)| c.is_ascii_digit()).is_some() {}
                let end = self.offset();
                self.text[start..end]
                    .parse()
                    .map(Expr::Lit)
                    .map_err(|_| self.error_at(start, "integer literal too large"))
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`, expected an expression"))),
            None => Err(self.error("unexpected end of line, expected an expression")),
        }
    }

    fn claim(&mut self) -> Result<Claim, ParseError> {
        if self.word() != "claim" {
            return Err(self.error("line must start with `claim`"));
        }
        let name = self.word();
        if name.is_empty() {
            return Err(self.error("missing claim name"));
        }
        if !self.eat(':') {
            return Err(self.error("expected `:` after claim name"));
        }
        let lhs = self.expr()?;
        if !(self.eat('=') && self.chars.next_if(|(_, c)| *c == '=').is_some()) {
            return Err(self.error("expected `==`"));
        }
        let rhs = self.expr()?;

        let mut expect = None;
        let mut cite = None;
        while self.peek().is_some() {
            let key_start = self.offset();
            let key = self.word();
            if key.is_empty() {
                let c = self.peek().unwrap_or(' ');
                return Err(self.error(format!("unexpected `{c}`")));
            }
            if !self.eat('=') {
                return Err(self.error(format!("expected `=` after `{key}`")));
            }
            match key {
                "expect" if expect.is_none() => {
                    self.skip_ws();
                    let value_start = self.offset();
                    expect = Some(match self.word() {
                        "holds" => Expectation::Holds,
                        "fails" => Expectation::Fails,
                        _ => return Err(self.error_at(value_start, "expect must be `holds` or `fails`")),
                    });
                }
                "cite" if cite.is_none() => {
                    self.skip_ws();
                    let start = self.offset();
                    let (text, rest) = take_quoted(&self.text[start..])
                        .ok_or_else(|| self.error("expected a double-quoted string"))?;
                    let end = self.text.len() - rest.len();
                    while self.chars.next_if(|(i, _)| *i < end).is_some() {}
                    cite = Some(text);
                }
                "expect" | "cite" => return Err(self.error_at(key_start, format!("repeated key `{key}`"))),
                other => return Err(self.error_at(key_start, format!("unknown key `{other}`"))),
            }
        }
        let expect = expect.ok_or_else(|| self.error("missing expect=(holds|fails)"))?;
        Ok(Claim {
            name: name.to_string(),
            lhs,
            rhs,
            expect,
            cite: cite.unwrap_or_default(),
        })
    }
}

pub fn parse_claims(text: &str) -> Result<Vec<Claim>, ParseError> {
    let mut claims = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        claims.push(LineParser::new(raw, idx + 1).claim()?);
    }
    Ok(claims)
}

/// Render claims in the input format, one per line.
pub fn format_claims(claims: &[Claim]) -> String {
    claims.iter().map(|c| format!("{c}\n")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub holds: bool,
    pub lhs: i64,
    pub rhs: i64,
    pub expect: Expectation,
    pub cite: String,
}

impl Verdict {
    pub fn as_expected(&self) -> bool {
        self.holds == (self.expect == Expectation::Holds)
    }
}

pub fn evaluate(c: &Claim) -> Result<Verdict, OverflowError> {
    let overflow = || OverflowError { claim: c.name.clone() };
    let lhs = c.lhs.eval().ok_or_else(overflow)?;
    let rhs = c.rhs.eval().ok_or_else(overflow)?;
    Ok(Verdict {
        name: c.name.clone(),
        holds: lhs == rhs,
        lhs,
        rhs,
        expect: c.expect,
        cite: c.cite.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub verdicts: Vec<Verdict>,
    pub findings: Vec<String>,
    pub exit_status: i32,
}

impl AuditReport {
    pub fn from_verdicts(verdicts: Vec<Verdict>) -> Self {
        let mut findings = Vec::new();
        for v in &verdicts {
            if !v.as_expected() {
                findings.push(format!(
                    "unexpected: {} {} (lhs {}, rhs {})",
                    v.name,
                    if v.holds { "holds" } else { "fails" },
                    v.lhs,
                    v.rhs
                ));
            } else if !v.holds {
                let cite = if v.cite.is_empty() { String::new() } else { format!(" [{}]", v.cite) };
                findings.push(format!(
                    "{}: stated {} but computes to {}{cite}",
                    v.name, v.rhs, v.lhs
                ));
            }
        }
        let exit_status = if verdicts.iter().all(Verdict::as_expected) { 0 } else { 1 };
        AuditReport {
            verdicts,
            findings,
            exit_status,
        }
    }
}

pub fn audit(claims: &[Claim]) -> Result<AuditReport, OverflowError> {
    let verdicts = claims.iter().map(evaluate).collect::<Result<Vec<_>, _>>()?;
    Ok(AuditReport::from_verdicts(verdicts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(text: &str) -> Claim {
        let mut v = parse_claims(text).unwrap();
        assert_eq!(v.len(), 1);
        v.remove(0)
    }

    #[test]
    fn parses_sum() {
        let c = one("claim t_total: 83+1+45 == 129 expect=holds");
        assert_eq!(c.name, "t_total");
        assert_eq!(c.lhs.eval(), Some(129));
        assert_eq!(c.rhs, Expr::Lit(129));
        assert_eq!(c.expect, Expectation::Holds);
        assert_eq!(c.cite, "");
    }

    #[test]
    fn empty_sides_rejected() {
        let err = parse_claims("claim empty: ==").unwrap_err();
        assert_eq!((err.line, err.column), (1, 14));
    }

    #[test]
    fn expected_failure_parses() {
        let c = one("claim t_cones_proof: 118*6+11*3 == 747 expect=fails");
        let v = evaluate(&c).unwrap();
        assert_eq!((v.lhs, v.rhs, v.holds), (741, 747, false));
        assert!(v.as_expected());
    }

    #[test]
    fn evaluates_identities() {
        for text in [
            "claim a: 1*1 + 2*2 + 10*3 + 437*6 == 2657 expect=holds",
            "claim b: 7+10+15+12+57+45+34+24+15 == 219 expect=holds",
            "claim c: 0 == 0 expect=holds",
            "claim d: 2 × (3 − 5) == -4 expect=holds",
            "claim e: 10-3-2 == 5 expect=holds",
            "claim f: --3 == 3 expect=holds",
        ] {
            let v = evaluate(&one(text)).unwrap();
            assert!(v.holds, "{text}");
        }
    }

    #[test]
    fn precedence() {
        assert_eq!(one("claim p: 2+3*4 == 14 expect=holds").lhs.eval(), Some(14));
        assert_eq!(one("claim p: (2+3)*4 == 20 expect=holds").lhs.eval(), Some(20));
        assert_eq!(one("claim p: -2*3 == -6 expect=holds").lhs.eval(), Some(-6));
    }

    #[test]
    fn cite_and_key_order() {
        let c = one(r#"claim x: 1 == 1 cite="a \"b\"" expect=fails"#);
        assert_eq!(c.cite, "a \"b\"");
        assert_eq!(c.expect, Expectation::Fails);
    }

    #[test]
    fn parse_errors_carry_position() {
        let cases = [
            ("claim x: 1 == 1", 16),
            ("claim x: 1 = 1 expect=holds", 13),
            ("claim x 1 == 1 expect=holds", 9),
            ("claim x: (1 == 1 expect=holds", 13),
            ("claim x: 1 == 1 expect=maybe", 24),
            ("claim x: 1 == 1 expect=holds colour=red", 30),
            ("claim x: 1 == 1 expect=holds expect=holds", 30),
            ("claim x: 1 == 1 expect=holds cite=open", 35),
            ("claim x: 1.5 == 1 expect=holds", 11),
            ("claim x: 99999999999999999999 == 1 expect=holds", 10),
            ("rule x: 1 == 1 expect=holds", 5),
        ];
        for (text, column) in cases {
            let err = parse_claims(&format!("# c\n{text}")).unwrap_err();
            assert_eq!(err.line, 2, "{text}");
            assert_eq!(err.column, column, "{text}: {err}");
        }
    }

    #[test]
    fn overflow() {
        let c = one("claim big: 9223372036854775807 + 1 == 0 expect=holds");
        assert_eq!(evaluate(&c), Err(OverflowError { claim: "big".into() }));
    }

    #[test]
    fn display_round_trip() {
        let text = "claim a: 1-(2-3)*-(4+5) == -(1) expect=holds cite=\"x\"\n";
        let claims = parse_claims(text).unwrap();
        assert_eq!(parse_claims(&format_claims(&claims)).unwrap(), claims);
        assert_eq!(format_claims(&claims), "claim a: 1-(2-3)*-(4+5) == -1 expect=holds cite=\"x\"\n");
    }

    #[test]
    fn exit_status_contract() {
        let claims = parse_claims(
            "claim a: 1 == 1 expect=holds\nclaim b: 1 == 2 expect=fails",
        )
        .unwrap();
        let report = audit(&claims).unwrap();
        assert_eq!(report.exit_status, 0);
        assert_eq!(report.findings.len(), 1);

        let mut flipped = claims.clone();
        flipped[1].expect = Expectation::Holds;
        assert_eq!(audit(&flipped).unwrap().exit_status, 1);

        let mut flipped = claims;
        flipped[0].expect = Expectation::Fails;
        assert_eq!(audit(&flipped).unwrap().exit_status, 1);

        let empty = audit(&[]).unwrap();
        assert_eq!((empty.verdicts.len(), empty.exit_status), (0, 0));
    }
}
