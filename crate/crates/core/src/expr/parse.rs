//! Recursive-descent parser shared by scalar expressions and form literals.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/' | '/\') unary)*
//! unary  := '-' unary | power
//! power  := base ('^' '-'? integer)?
//! base   := number | ident | func '(' expr ')' | '(' expr ')'
//! ```

use super::{ExprError, Func, ScalarExpr};
use crate::rational::Rational;

/// Resolution of identifiers to axis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames {
    custom: Option<Vec<String>>,
    dim: usize,
}

const STANDARD: [&str; 4] = ["x", "y", "z", "t"];

impl VarNames {
    /// `x, y, z, t` for axes 0–3 and `x1 … x9` for axes 0–8, limited to `dim` axes.
    pub fn standard(dim: usize) -> Self {
        VarNames { custom: None, dim }
    }

    pub fn custom<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        VarNames { dim: names.len(), custom: Some(names) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn resolve(&self, ident: &str) -> Option<usize> {
        let axis = match &self.custom {
            Some(names) => names.iter().position(|n| n == ident)?,
            None => match STANDARD.iter().position(|n| *n == ident) {
                Some(i) => i,
                None => {
                    let digits = ident.strip_prefix('x')?;
                    if digits.len() != 1 {
                        return None;
                    }
                    let k: usize = digits.parse().ok()?;
                    if k == 0 {
                        return None;
                    }
                    k - 1
                }
            },
        };
        (axis < self.dim).then_some(axis)
    }

    pub fn name(&self, axis: usize) -> String {
        match &self.custom {
            Some(names) if axis < names.len() => names[axis].clone(),
            _ if axis < STANDARD.len() => STANDARD[axis].to_string(),
            _ => format!("x{}", axis + 1),
        }
    }
}

/// Semantic actions for the parser; `Err` carries a message that is reported
/// at the position of the offending operator.
pub(crate) trait Builder {
    type Value: Clone;
    fn constant(&self, c: Rational) -> Self::Value;
    fn variable(&self, axis: usize) -> Self::Value;
    fn differential(&self, axis: usize) -> Result<Self::Value, String>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String>;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String>;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String>;
    fn wedge(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String>;
    fn pow(&self, a: Self::Value, exp: i32) -> Result<Self::Value, String>;
    fn apply(&self, func: Func, a: Self::Value) -> Result<Self::Value, String>;
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Wedge,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((Tok::Plus, start)),
            '-' => out.push((Tok::Minus, start)),
            '*' => out.push((Tok::Star, start)),
            '^' => out.push((Tok::Caret, start)),
            '(' => out.push((Tok::LParen, start)),
            ')' => out.push((Tok::RParen, start)),
            '/' => {
                if bytes.get(i + 1) == Some(&b'\\') {
                    out.push((Tok::Wedge, start));
                    i += 1;
                } else {
                    out.push((Tok::Slash, start));
                }
            }
            '0'..='9' | '.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                let lit = &text[start..i];
                let value = Rational::parse_decimal(lit).ok_or_else(|| ExprError::Syntax {
                    pos: start,
                    message: format!("malformed number `{lit}`"),
                })?;
                out.push((Tok::Num(value), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(ExprError::Syntax {
                    pos: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a, B: Builder> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    names: &'a VarNames,
    builder: &'a B,
}

impl<B: Builder> Parser<'_, B> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, pos: usize, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { pos, message: message.into() })
    }

    fn lift<T>(&self, pos: usize, r: Result<T, String>) -> Result<T, ExprError> {
        r.map_err(|message| ExprError::Syntax { pos, message })
    }

    fn expr(&mut self) -> Result<B::Value, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    let (_, pos) = self.bump();
                    let rhs = self.term()?;
                    acc = self.lift(pos, self.builder.add(acc, rhs))?;
                }
                Tok::Minus => {
                    let (_, pos) = self.bump();
                    let rhs = self.term()?;
                    let rhs = self.builder.neg(rhs);
                    acc = self.lift(pos, self.builder.add(acc, rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<B::Value, ExprError> {
        let mut acc = self.unary()?;
        loop {
            let op = self.peek().clone();
            if !matches!(op, Tok::Star | Tok::Slash | Tok::Wedge) {
                return Ok(acc);
            }
            let (_, pos) = self.bump();
            let rhs = self.unary()?;
            let r = match op {
                Tok::Star => self.builder.mul(acc, rhs),
                Tok::Slash => self.builder.div(acc, rhs),
                _ => self.builder.wedge(acc, rhs),
            };
            acc = self.lift(pos, r)?;
        }
    }

    fn unary(&mut self) -> Result<B::Value, ExprError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                let v = self.unary()?;
                Ok(self.builder.neg(v))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<B::Value, ExprError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let (_, pos) = self.bump();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (tok, npos) = self.bump();
        let Tok::Num(n) = tok else {
            return self.fail(npos, "expected an integer exponent");
        };
        let exp: Option<i32> = if n.is_integer() { n.numer().try_into().ok() } else { None };
        let Some(exp) = exp else {
            return self.fail(npos, "exponent must be a small integer");
        };
        let exp: i32 = if negative { -exp } else { exp };
        self.lift(pos, self.builder.pow(base, exp))
    }

    fn base(&mut self) -> Result<B::Value, ExprError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Num(n) => Ok(self.builder.constant(n)),
            Tok::LParen => {
                let v = self.expr()?;
                self.expect_close()?;
                Ok(v)
            }
            Tok::Ident(name) => {
                if let Some(func) = Func::from_name(&name) {
                    if *self.peek() != Tok::LParen {
                        return self.fail(self.pos(), format!("expected `(` after `{name}`"));
                    }
                    self.bump();
                    let arg = self.expr()?;
                    self.expect_close()?;
                    return self.lift(pos, self.builder.apply(func, arg));
                }
                if let Some(axis) = self.names.resolve(&name) {
                    return Ok(self.builder.variable(axis));
                }
                if let Some(axis) = name.strip_prefix('d').and_then(|v| self.names.resolve(v)) {
                    return self.lift(pos, self.builder.differential(axis));
                }
                Err(ExprError::UnknownVariable { name, pos })
            }
            Tok::End => self.fail(pos, "unexpected end of input"),
            other => self.fail(pos, format!("unexpected token {other:?}")),
        }
    }

    fn expect_close(&mut self) -> Result<(), ExprError> {
        let (tok, pos) = self.bump();
        if tok == Tok::RParen {
            Ok(())
        } else {
            self.fail(pos, "expected `)`")
        }
    }
}

pub(crate) fn parse_with<B: Builder>(
    text: &str,
    names: &VarNames,
    builder: &B,
) -> Result<B::Value, ExprError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, names, builder };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(p.pos(), "unexpected trailing input");
    }
    Ok(v)
}

struct ScalarBuilder;

impl Builder for ScalarBuilder {
    type Value = ScalarExpr;

    fn constant(&self, c: Rational) -> ScalarExpr {
        ScalarExpr::constant(c)
    }

    fn variable(&self, axis: usize) -> ScalarExpr {
        ScalarExpr::var(axis)
    }

    fn differential(&self, _axis: usize) -> Result<ScalarExpr, String> {
        Err("form symbols are not allowed in a scalar expression".into())
    }

    fn add(&self, a: ScalarExpr, b: ScalarExpr) -> Result<ScalarExpr, String> {
        Ok(a + b)
    }

    fn neg(&self, a: ScalarExpr) -> ScalarExpr {
        -a
    }

    fn mul(&self, a: ScalarExpr, b: ScalarExpr) -> Result<ScalarExpr, String> {
        Ok(a * b)
    }

    fn div(&self, a: ScalarExpr, b: ScalarExpr) -> Result<ScalarExpr, String> {
        a.checked_div(&b).map_err(|e| e.to_string())
    }

    fn wedge(&self, _a: ScalarExpr, _b: ScalarExpr) -> Result<ScalarExpr, String> {
        Err("wedge product in a scalar expression".into())
    }

    fn pow(&self, a: ScalarExpr, exp: i32) -> Result<ScalarExpr, String> {
        a.powi(exp).map_err(|e| e.to_string())
    }

    fn apply(&self, func: Func, a: ScalarExpr) -> Result<ScalarExpr, String> {
        Ok(ScalarExpr::apply(func, &a))
    }
}

impl ScalarExpr {
    /// Parses with the standard variable names of ℝⁿ.
    pub fn parse(text: &str, dim: usize) -> Result<ScalarExpr, ExprError> {
        parse_with(text, &VarNames::standard(dim), &ScalarBuilder)
    }

    pub fn parse_with_names(text: &str, names: &VarNames) -> Result<ScalarExpr, ExprError> {
        parse_with(text, names, &ScalarBuilder)
    }
}
