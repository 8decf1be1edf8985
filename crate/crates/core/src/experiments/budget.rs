//! Tiny arithmetic grammar for budget rules.
//!
//! Budgets are formulas of the problem size, e.g. `"50*n*ln(n)"` or
//! `"10*n^2.5"`. Grammar (ASCII, case-insensitive function names):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := primary ('^' factor)?
//! primary:= number | 'n' | ('ln' | 'log') '(' expr ')' | '(' expr ')'
//! ```
//!
//! `log` is natural log, same as `ln`. Evaluation happens in `f64`; the
//! result is ceiled and must be a positive integer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A parsed budget rule, kept alongside its source text so configs echo
/// verbatim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BudgetRule {
    text: String,
    expr: Expr,
}

impl BudgetRule {
    pub fn parse(text: &str) -> Result<Self> {
        let mut parser = Parser {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let expr = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.bytes.len() {
            return Err(Error::BudgetExpr(format!(
                "unexpected trailing input at byte {} of `{text}`",
                parser.pos
            )));
        }
        Ok(BudgetRule {
            text: text.to_string(),
            expr,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Evaluate at problem size `n`, ceiled to a positive generation count.
    pub fn evaluate(&self, n: usize) -> Result<u64> {
        let v = self.expr.eval(n as f64);
        if !v.is_finite() {
            return Err(Error::BudgetExpr(format!(
                "`{}` is not finite at n={n}",
                self.text
            )));
        }
        let ceiled = v.ceil();
        if ceiled < 1.0 || ceiled > u64::MAX as f64 {
            return Err(Error::BudgetExpr(format!(
                "`{}` must give a positive generation count, got {v} at n={n}",
                self.text
            )));
        }
        Ok(ceiled as u64)
    }
}

impl TryFrom<String> for BudgetRule {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        BudgetRule::parse(&s)
    }
}

impl From<BudgetRule> for String {
    fn from(rule: BudgetRule) -> String {
        rule.text
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Number(f64),
    Size,
    Ln(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn eval(&self, n: f64) -> f64 {
        match self {
            Expr::Number(v) => *v,
            Expr::Size => n,
            Expr::Ln(e) => e.eval(n).ln(),
            Expr::Add(a, b) => a.eval(n) + b.eval(n),
            Expr::Sub(a, b) => a.eval(n) - b.eval(n),
            Expr::Mul(a, b) => a.eval(n) * b.eval(n),
            Expr::Div(a, b) => a.eval(n) / b.eval(n),
            Expr::Pow(a, b) => a.eval(n).powf(b.eval(n)),
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut left = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let right = self.term()?;
            left = if op == b'+' {
                Expr::Add(Box::new(left), Box::new(right))
            } else {
                Expr::Sub(Box::new(left), Box::new(right))
            };
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut left = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let right = self.factor()?;
            left = if op == b'*' {
                Expr::Mul(Box::new(left), Box::new(right))
            } else {
                Expr::Div(Box::new(left), Box::new(right))
            };
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            // Right-associative exponent.
            let exponent = self.factor()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let word = self.word();
                match word.as_str() {
                    "n" => Ok(Expr::Size),
                    "ln" | "log" => {
                        self.expect(b'(')?;
                        let inner = self.expr()?;
                        self.expect(b')')?;
                        Ok(Expr::Ln(Box::new(inner)))
                    }
                    other => Err(Error::BudgetExpr(format!("unknown name `{other}`"))),
                }
            }
            Some(c) => Err(Error::BudgetExpr(format!(
                "unexpected character `{}`",
                c as char
            ))),
            None => Err(Error::BudgetExpr("unexpected end of expression".into())),
        }
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).to_ascii_lowercase()
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_digit() || self.bytes[self.pos] == b'.')
        {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        s.parse::<f64>()
            .map(Expr::Number)
            .map_err(|_| Error::BudgetExpr(format!("bad number `{s}`")))
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::BudgetExpr(format!(
                "expected `{}` at byte {}",
                c as char, self.pos
            )))
        }
    }
}
