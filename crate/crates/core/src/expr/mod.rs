//! Symbolic scalar expressions in the axis variables of ℝⁿ.
//!
//! A [`ScalarExpr`] is always held in normal form: a numerator polynomial over
//! ℚ in *atoms* (axis variables and elementary-function applications) divided
//! by a product of powers of monic denominator factors. Every constructor and
//! arithmetic operation re-normalizes, applying the rewrites
//!
//! * `cos(u)^2 → 1 - sin(u)^2`
//! * `exp(a)·exp(b) → exp(a + b)`, `exp(a)^k → exp(k·a)`, `1/exp(a) → exp(-a)`
//! * `sqrt(u)^2 → u`, `1/sqrt(u) → sqrt(u)/u`
//!
//! so that zero-testing is complete on rational functions of the variables and
//! of these atoms. Outside that fragment equal expressions may still compare
//! unequal.

mod ast;
mod calculus;
mod display;
mod eval;
mod parse;
mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

pub use ast::Expr;
pub use eval::CompiledExpr;
pub use parse::VarNames;
#[allow(unused_imports)]
pub(crate) use parse::{parse_with, Builder};
use poly::{Monomial, Poly};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("singularity: {0}")]
    Singularity(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expression is not polynomial in axis {axis}")]
    NotPolynomial { axis: usize },
}

/// Elementary functions admitted as opaque atoms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Atom {
    Var(usize),
    Apply(Func, ScalarExpr),
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            // lower axes rank higher so that x leads y in printed output
            (Atom::Var(a), Atom::Var(b)) => b.cmp(a),
            (Atom::Var(_), Atom::Apply(..)) => Ordering::Less,
            (Atom::Apply(..), Atom::Var(_)) => Ordering::Greater,
            (Atom::Apply(f, u), Atom::Apply(g, w)) => f.cmp(g).then_with(|| u.cmp(w)),
        }
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct Inner {
    num: Poly,
    den: Vec<(Poly, u32)>,
}

/// A normalized symbolic scalar function of the axis variables.
///
/// Structural equality (`==`) coincides with mathematical equality on the
/// rational-function fragment; use [`ScalarExpr::equals`] for the semantic test
/// everywhere else.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScalarExpr(Arc<Inner>);

impl fmt::Debug for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarExpr({self})")
    }
}

impl Default for ScalarExpr {
    fn default() -> Self {
        ScalarExpr::zero()
    }
}

impl ScalarExpr {
    fn from_parts_unchecked(num: Poly, den: Vec<(Poly, u32)>) -> Self {
        ScalarExpr(Arc::new(Inner { num, den }))
    }

    fn from_poly(num: Poly) -> Self {
        ScalarExpr::from_parts_unchecked(num, Vec::new())
    }

    pub fn zero() -> Self {
        ScalarExpr::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        ScalarExpr::from_poly(Poly::one())
    }

    pub fn constant(c: Rational) -> Self {
        ScalarExpr::from_poly(Poly::constant(c))
    }

    pub fn int(value: i64) -> Self {
        ScalarExpr::constant(Rational::from_int(value))
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        ScalarExpr::constant(Rational::new(numer, denom))
    }

    /// The coordinate function of `axis`.
    pub fn var(axis: usize) -> Self {
        ScalarExpr::from_poly(Poly::atom(Atom::Var(axis)))
    }

    fn atom(atom: Atom) -> Self {
        ScalarExpr::from_poly(Poly::atom(atom))
    }

    pub fn is_zero(&self) -> bool {
        self.0.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.den.is_empty() && self.0.num.is_one()
    }

    /// The value if the expression is a rational constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.0.den.is_empty() {
            self.0.num.as_constant()
        } else {
            None
        }
    }

    /// True when the expression is a polynomial in the axis variables alone.
    pub fn is_polynomial(&self) -> bool {
        self.0.den.is_empty() && self.0.num.atoms().all(|a| matches!(a, Atom::Var(_)))
    }

    /// Semantic equality: the difference normalizes to zero.
    pub fn equals(&self, other: &ScalarExpr) -> bool {
        self == other || (self - other).is_zero()
    }

    /// Largest axis index referenced plus one (0 for constants).
    pub fn arity(&self) -> usize {
        fn atom_arity(a: &Atom) -> usize {
            match a {
                Atom::Var(i) => i + 1,
                Atom::Apply(_, u) => u.arity(),
            }
        }
        self.all_atoms().map(atom_arity).max().unwrap_or(0)
    }

    fn all_atoms(&self) -> impl Iterator<Item = &Atom> {
        self.0.num.atoms().chain(self.0.den.iter().flat_map(|(f, _)| f.atoms()))
    }

    /// Applies an elementary function, folding the trivial constant cases.
    pub fn apply(func: Func, arg: &ScalarExpr) -> ScalarExpr {
        if let Some(c) = arg.as_constant() {
            match func {
                Func::Exp | Func::Cos if c.is_zero() => return ScalarExpr::one(),
                Func::Sin | Func::Sqrt if c.is_zero() => return ScalarExpr::zero(),
                Func::Ln if c.is_one() => return ScalarExpr::zero(),
                Func::Sqrt => {
                    if let Some(r) = c.sqrt_exact() {
                        return ScalarExpr::constant(r);
                    }
                }
                _ => {}
            }
        }
        ScalarExpr::atom(Atom::Apply(func, arg.clone()))
    }

    pub fn exp(&self) -> ScalarExpr {
        ScalarExpr::apply(Func::Exp, self)
    }

    pub fn ln(&self) -> ScalarExpr {
        ScalarExpr::apply(Func::Ln, self)
    }

    pub fn sin(&self) -> ScalarExpr {
        ScalarExpr::apply(Func::Sin, self)
    }

    pub fn cos(&self) -> ScalarExpr {
        ScalarExpr::apply(Func::Cos, self)
    }

    pub fn sqrt(&self) -> ScalarExpr {
        ScalarExpr::apply(Func::Sqrt, self)
    }

    pub fn scale(&self, c: &Rational) -> ScalarExpr {
        if c.is_zero() || self.is_zero() {
            return ScalarExpr::zero();
        }
        ScalarExpr::from_parts_unchecked(self.0.num.scale(c), self.0.den.clone())
    }

    fn add_expr(&self, other: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.0.den == other.0.den {
            return finish(self.0.num.add(&other.0.num), self.0.den.clone());
        }
        // common denominator over identical factors, plain product otherwise
        let mut lcd = self.0.den.clone();
        for (f, e) in &other.0.den {
            match lcd.iter_mut().find(|(g, _)| g == f) {
                Some(slot) => slot.1 = slot.1.max(*e),
                None => lcd.push((f.clone(), *e)),
            }
        }
        let lhs = reduce_poly(self.0.num.mul_raw(&cofactor(&lcd, &self.0.den)));
        let rhs = reduce_poly(other.0.num.mul_raw(&cofactor(&lcd, &other.0.den)));
        let sum = lhs.add_expr(&rhs);
        let mut den = lcd;
        den.extend(sum.0.den.iter().cloned());
        finish(sum.0.num.clone(), den)
    }

    fn mul_expr(&self, other: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() || other.is_zero() {
            return ScalarExpr::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let prod = reduce_poly(self.0.num.mul_raw(&other.0.num));
        let mut den = self.0.den.clone();
        den.extend(other.0.den.iter().cloned());
        den.extend(prod.0.den.iter().cloned());
        finish(prod.0.num.clone(), den)
    }

    /// Multiplicative inverse.
    pub fn recip(&self) -> Result<ScalarExpr, ExprError> {
        if self.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        let expanded = self
            .0
            .den
            .iter()
            .fold(Poly::one(), |acc, (f, e)| acc.mul_raw(&f.pow_raw(*e)));
        Ok(reduce_poly(expanded).mul_expr(&reciprocal_of_poly(&self.0.num)))
    }

    pub fn checked_div(&self, other: &ScalarExpr) -> Result<ScalarExpr, ExprError> {
        if let Some(c) = other.as_constant() {
            let inv = c.recip().ok_or(ExprError::DivisionByZero)?;
            return Ok(self.scale(&inv));
        }
        Ok(self.mul_expr(&other.recip()?))
    }

    /// Integer power; negative exponents divide.
    pub fn powi(&self, exp: i32) -> Result<ScalarExpr, ExprError> {
        if exp < 0 {
            return self.recip()?.powi(-exp);
        }
        let mut base = self.clone();
        let mut acc = ScalarExpr::one();
        let mut k = exp as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_expr(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_expr(&base);
            }
        }
        Ok(acc)
    }

    pub(crate) fn numerator(&self) -> &Poly {
        &self.0.num
    }

    pub(crate) fn denominator(&self) -> &[(Poly, u32)] {
        &self.0.den
    }
}

/// Product of the factors of `lcd` not already covered by `den`.
fn cofactor(lcd: &[(Poly, u32)], den: &[(Poly, u32)]) -> Poly {
    let mut out = Poly::one();
    for (f, e) in lcd {
        let have = den.iter().find(|(g, _)| g == f).map(|(_, k)| *k).unwrap_or(0);
        if *e > have {
            out = out.mul_raw(&f.pow_raw(e - have));
        }
    }
    out
}

/// Assembles a normal form from a reduced numerator and arbitrary monic factors.
fn finish(mut num: Poly, den: Vec<(Poly, u32)>) -> ScalarExpr {
    if num.is_zero() {
        return ScalarExpr::zero();
    }
    let mut canon: Vec<(Poly, u32)> = Vec::new();
    for (f, e) in den {
        insert_factor(&mut canon, f, e);
    }
    for (f, e) in canon.iter_mut() {
        while *e > 0 {
            match num.div_exact(f) {
                Some(q) if q.is_reduced() => {
                    num = q;
                    *e -= 1;
                }
                _ => break,
            }
        }
    }
    canon.retain(|(_, e)| *e > 0);
    canon.sort();
    ScalarExpr::from_parts_unchecked(num, canon)
}

/// Adds `f^e` to a factored denominator, splitting factors that divide one another.
fn insert_factor(list: &mut Vec<(Poly, u32)>, f: Poly, e: u32) {
    let mut work = vec![(f, e)];
    'outer: while let Some((f, e)) = work.pop() {
        if e == 0 || f.is_one() {
            continue;
        }
        if let Some(slot) = list.iter_mut().find(|(g, _)| *g == f) {
            slot.1 += e;
            continue;
        }
        let fdeg = f.degree();
        for i in 0..list.len() {
            let gdeg = list[i].0.degree();
            if fdeg > gdeg {
                if let Some(q) = f.div_exact(&list[i].0).filter(Poly::is_reduced) {
                    list[i].1 += e;
                    work.push((q, e));
                    continue 'outer;
                }
            } else if gdeg > fdeg {
                if let Some(q) = list[i].0.div_exact(&f).filter(Poly::is_reduced) {
                    let (_, ge) = list.remove(i);
                    work.push((q, ge));
                    work.push((f, e + ge));
                    continue 'outer;
                }
            }
        }
        list.push((f, e));
    }
    list.sort();
}

/// `1 / p` in normal form for a nonzero reduced polynomial `p`.
fn reciprocal_of_poly(p: &Poly) -> ScalarExpr {
    let (_, lc) = p.leading().expect("nonzero polynomial");
    let lc_inv = lc.recip().expect("nonzero leading coefficient");
    let monic = p.scale(&lc_inv);
    let content = monic.monomial_content();
    let rest = monic.div_monomial(&content);
    let mut out = ScalarExpr::constant(lc_inv);
    for (atom, e) in content.factors() {
        let r = match atom {
            Atom::Apply(Func::Exp, u) => u.scale(&Rational::from_int(-(*e as i64))).exp(),
            Atom::Apply(Func::Sqrt, u) => {
                // 1/sqrt(u)^e = sqrt(u)^(e mod 2) / u^ceil(e/2)
                let half = e.div_ceil(2) as i32;
                let inv_u = u.powi(-half).expect("sqrt argument is nonzero");
                if e % 2 == 1 {
                    ScalarExpr::atom(atom.clone()).mul_expr(&inv_u)
                } else {
                    inv_u
                }
            }
            _ => finish(Poly::one(), vec![(Poly::atom(atom.clone()), *e)]),
        };
        out = out.mul_expr(&r);
    }
    if !rest.is_one() {
        out = out.mul_expr(&finish(Poly::one(), vec![(rest, 1)]));
    }
    out
}

/// Brings a free-ring polynomial to normal form.
fn reduce_poly(p: Poly) -> ScalarExpr {
    if p.is_reduced() {
        return ScalarExpr::from_poly(p);
    }
    let mut plain = Poly::zero();
    let mut rest = ScalarExpr::zero();
    for (m, c) in p.into_terms() {
        if m.is_reduced() {
            plain.add_term(m, c);
        } else {
            rest = rest.add_expr(&reduce_monomial(&m).scale(&c));
        }
    }
    ScalarExpr::from_poly(plain).add_expr(&rest)
}

fn reduce_monomial(m: &Monomial) -> ScalarExpr {
    let mut base = Monomial::one();
    let mut exp_arg = ScalarExpr::zero();
    let mut extra = Vec::new();
    for (atom, e) in m.factors() {
        match atom {
            Atom::Apply(Func::Exp, u) => {
                exp_arg = exp_arg.add_expr(&u.scale(&Rational::from_int(*e as i64)));
            }
            Atom::Apply(Func::Cos, u) if *e >= 2 => {
                if e % 2 == 1 {
                    base = base.mul_atom(atom, 1);
                }
                let sin2 = Monomial::atom(Atom::Apply(Func::Sin, u.clone()), 2);
                let mut one_minus = Poly::one();
                one_minus.add_term(sin2, -&Rational::one());
                extra.push(ScalarExpr::from_poly(one_minus.pow_raw(e / 2)));
            }
            Atom::Apply(Func::Sqrt, u) if *e >= 2 => {
                if e % 2 == 1 {
                    base = base.mul_atom(atom, 1);
                }
                extra.push(u.powi((e / 2) as i32).expect("nonnegative power"));
            }
            _ => base = base.mul_atom(atom, *e),
        }
    }
    let mut out = ScalarExpr::from_poly(Poly::term(base, Rational::one()));
    if !exp_arg.is_zero() {
        out = out.mul_expr(&exp_arg.exp());
    }
    for x in extra {
        out = out.mul_expr(&x);
    }
    out
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: &ScalarExpr) -> ScalarExpr {
                let f: fn(&ScalarExpr, &ScalarExpr) -> ScalarExpr = $body;
                f(self, rhs)
            }
        }
        impl $trait<ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: ScalarExpr) -> ScalarExpr {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: &ScalarExpr) -> ScalarExpr {
                (&self).$method(rhs)
            }
        }
        impl $trait<ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: ScalarExpr) -> ScalarExpr {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_expr(b));
binop!(Sub, sub, |a, b| a.add_expr(&-b));
binop!(Mul, mul, |a, b| a.mul_expr(b));

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        if self.is_zero() {
            return self.clone();
        }
        ScalarExpr::from_parts_unchecked(self.0.num.neg(), self.0.den.clone())
    }
}

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        -&self
    }
}

impl std::iter::Sum for ScalarExpr {
    fn sum<I: Iterator<Item = ScalarExpr>>(iter: I) -> Self {
        iter.fold(ScalarExpr::zero(), |a, b| a + b)
    }
}

impl From<i64> for ScalarExpr {
    fn from(value: i64) -> Self {
        ScalarExpr::int(value)
    }
}

impl From<Rational> for ScalarExpr {
    fn from(value: Rational) -> Self {
        ScalarExpr::constant(value)
    }
}
