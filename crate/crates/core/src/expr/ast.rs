//! Plain expression trees, for building expressions programmatically and for
//! inspecting a normal form.

use super::poly::Poly;
use super::{Atom, ExprError, Func, ScalarExpr};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Rational),
    Var(usize),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, i32),
    Quotient(Box<Expr>, Box<Expr>),
    Apply(Func, Box<Expr>),
}

impl Expr {
    pub fn normalize(&self) -> Result<ScalarExpr, ExprError> {
        Ok(match self {
            Expr::Const(c) => ScalarExpr::constant(c.clone()),
            Expr::Var(i) => ScalarExpr::var(*i),
            Expr::Sum(items) => {
                let mut acc = ScalarExpr::zero();
                for e in items {
                    acc = acc + e.normalize()?;
                }
                acc
            }
            Expr::Product(items) => {
                let mut acc = ScalarExpr::one();
                for e in items {
                    acc = acc * e.normalize()?;
                }
                acc
            }
            Expr::Pow(b, k) => b.normalize()?.powi(*k)?,
            Expr::Quotient(a, b) => a.normalize()?.checked_div(&b.normalize()?)?,
            Expr::Apply(f, u) => ScalarExpr::apply(*f, &u.normalize()?),
        })
    }
}

fn atom_expr(atom: &Atom) -> Expr {
    match atom {
        Atom::Var(i) => Expr::Var(*i),
        Atom::Apply(f, u) => Expr::Apply(*f, Box::new(u.to_expr())),
    }
}

fn poly_expr(p: &Poly) -> Expr {
    let mut terms: Vec<Expr> = p
        .terms()
        .rev()
        .map(|(m, c)| {
            let mut factors = Vec::new();
            if !c.is_one() || m.is_one() {
                factors.push(Expr::Const(c.clone()));
            }
            for (atom, e) in m.factors().iter().rev() {
                let a = atom_expr(atom);
                factors.push(if *e == 1 { a } else { Expr::Pow(Box::new(a), *e as i32) });
            }
            if factors.len() == 1 {
                factors.pop().unwrap()
            } else {
                Expr::Product(factors)
            }
        })
        .collect();
    match terms.len() {
        0 => Expr::Const(Rational::zero()),
        1 => terms.pop().unwrap(),
        _ => Expr::Sum(terms),
    }
}

impl ScalarExpr {
    /// The normal form as a tree: a sum of products, over a product of
    /// factor powers when there is a denominator.
    pub fn to_expr(&self) -> Expr {
        let num = poly_expr(self.numerator());
        let den = self.denominator();
        if den.is_empty() {
            return num;
        }
        let mut factors: Vec<Expr> = den
            .iter()
            .map(|(f, e)| {
                let b = poly_expr(f);
                if *e == 1 {
                    b
                } else {
                    Expr::Pow(Box::new(b), *e as i32)
                }
            })
            .collect();
        let den = if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) };
        Expr::Quotient(Box::new(num), Box::new(den))
    }
}
