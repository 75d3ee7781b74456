//! Floating-point evaluation.

use super::poly::Poly;
use super::{Atom, ExprError, Func, ScalarExpr};

/// A [`ScalarExpr`] with its coefficients converted to `f64` for repeated
/// evaluation, e.g. at quadrature nodes.
#[derive(Clone, Debug)]
pub struct CompiledExpr {
    num: CompiledPoly,
    den: Vec<(CompiledPoly, i32)>,
}

#[derive(Clone, Debug)]
struct CompiledPoly(Vec<(f64, Vec<(CompiledAtom, i32)>)>);

#[derive(Clone, Debug)]
enum CompiledAtom {
    Var(usize),
    Apply(Func, Box<CompiledExpr>),
}

impl CompiledPoly {
    fn new(p: &Poly) -> Self {
        CompiledPoly(
            p.terms()
                .map(|(m, c)| {
                    let factors = m
                        .factors()
                        .iter()
                        .map(|(a, e)| {
                            let atom = match a {
                                Atom::Var(i) => CompiledAtom::Var(*i),
                                Atom::Apply(f, u) => CompiledAtom::Apply(*f, Box::new(u.compile())),
                            };
                            (atom, *e as i32)
                        })
                        .collect();
                    (c.to_f64(), factors)
                })
                .collect(),
        )
    }

    fn eval(&self, point: &[f64]) -> Result<f64, ExprError> {
        let mut sum = 0.0;
        for (c, factors) in &self.0 {
            let mut term = *c;
            for (atom, e) in factors {
                term *= atom.eval(point)?.powi(*e);
            }
            sum += term;
        }
        Ok(sum)
    }
}

impl CompiledAtom {
    fn eval(&self, point: &[f64]) -> Result<f64, ExprError> {
        match self {
            CompiledAtom::Var(i) => point.get(*i).copied().ok_or(ExprError::DimensionMismatch {
                expected: i + 1,
                found: point.len(),
            }),
            CompiledAtom::Apply(f, u) => {
                let v = u.eval(point)?;
                match f {
                    Func::Exp => Ok(v.exp()),
                    Func::Sin => Ok(v.sin()),
                    Func::Cos => Ok(v.cos()),
                    Func::Ln if v <= 0.0 => {
                        Err(ExprError::Singularity(format!("ln of non-positive value {v}")))
                    }
                    Func::Ln => Ok(v.ln()),
                    Func::Sqrt if v < 0.0 => {
                        Err(ExprError::Singularity(format!("sqrt of negative value {v}")))
                    }
                    Func::Sqrt => Ok(v.sqrt()),
                }
            }
        }
    }
}

impl CompiledExpr {
    pub fn eval(&self, point: &[f64]) -> Result<f64, ExprError> {
        let num = self.num.eval(point)?;
        let mut den = 1.0;
        for (f, e) in &self.den {
            den *= f.eval(point)?.powi(*e);
        }
        if den == 0.0 {
            return Err(ExprError::Singularity(format!("division by zero at {point:?}")));
        }
        let value = num / den;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(ExprError::Singularity(format!("non-finite value at {point:?}")))
        }
    }
}

impl ScalarExpr {
    pub fn compile(&self) -> CompiledExpr {
        CompiledExpr {
            num: CompiledPoly::new(self.numerator()),
            den: self
                .denominator()
                .iter()
                .map(|(f, e)| (CompiledPoly::new(f), *e as i32))
                .collect(),
        }
    }

    /// Evaluates at `point`; coordinates beyond the expression's arity are ignored.
    pub fn evaluate(&self, point: &[f64]) -> Result<f64, ExprError> {
        if let Some(c) = self.as_constant() {
            return Ok(c.to_f64());
        }
        self.compile().eval(point)
    }
}
