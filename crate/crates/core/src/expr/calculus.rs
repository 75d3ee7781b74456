//! Differentiation, substitution and polynomial antiderivatives.

use std::collections::BTreeMap;

use super::poly::{Monomial, Poly};
use super::{reduce_poly, Atom, ExprError, Func, ScalarExpr};
use crate::rational::Rational;

impl ScalarExpr {
    /// True when the expression involves the coordinate `axis`.
    pub fn depends_on(&self, axis: usize) -> bool {
        self.all_atoms().any(|a| atom_depends_on(a, axis))
    }

    /// Partial derivative with respect to `axis`.
    pub fn differentiate(&self, axis: usize) -> ScalarExpr {
        if !self.depends_on(axis) {
            return ScalarExpr::zero();
        }
        let dnum = diff_poly(self.numerator(), axis);
        let den = self.denominator();
        if den.is_empty() {
            return dnum;
        }
        let inv_den = super::finish(Poly::one(), den.to_vec());
        let mut out = &dnum * &inv_den;
        // d(N / Π F^e) = N'/D - N Σ e F'/(F D)
        let num = ScalarExpr::from_poly(self.numerator().clone());
        for (f, e) in den {
            let df = diff_poly(f, axis);
            if df.is_zero() {
                continue;
            }
            let mut over = den.to_vec();
            over.push((f.clone(), 1));
            let term = super::finish(Poly::one(), over) * &num * &df;
            out = out - term.scale(&Rational::from_int(*e as i64));
        }
        out
    }

    /// Simultaneous substitution of `replacements[i]` for axis `i`.
    pub fn substitute(&self, replacements: &[ScalarExpr]) -> Result<ScalarExpr, ExprError> {
        let mut cache = BTreeMap::new();
        self.substitute_cached(replacements, &mut cache)
    }

    fn substitute_cached(
        &self,
        replacements: &[ScalarExpr],
        cache: &mut BTreeMap<Atom, ScalarExpr>,
    ) -> Result<ScalarExpr, ExprError> {
        let num = subst_poly(self.numerator(), replacements, cache)?;
        let mut out = num;
        for (f, e) in self.denominator() {
            let fv = subst_poly(f, replacements, cache)?;
            out = out.checked_div(&fv.powi(*e as i32)?)?;
        }
        Ok(out)
    }

    /// Antiderivative in `axis` that vanishes when that coordinate equals
    /// `lower`. The integrand must be polynomial in `axis`; its coefficients
    /// may depend arbitrarily on the other axes.
    pub fn integrate_polynomial(
        &self,
        axis: usize,
        lower: &ScalarExpr,
    ) -> Result<ScalarExpr, ExprError> {
        let var = Atom::Var(axis);
        let not_poly = ExprError::NotPolynomial { axis };
        for (f, _) in self.denominator() {
            if f.atoms().any(|a| atom_depends_on(a, axis)) {
                return Err(not_poly);
            }
        }
        // group numerator terms by power of the integration variable
        let mut by_power: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in self.numerator().terms() {
            let mut k = 0;
            let mut rest = Monomial::one();
            for (atom, e) in m.factors() {
                if *atom == var {
                    k = *e;
                } else if atom_depends_on(atom, axis) {
                    return Err(not_poly);
                } else {
                    rest = rest.mul_atom(atom, *e);
                }
            }
            by_power.entry(k).or_default().add_term(rest, c.clone());
        }
        let x = ScalarExpr::var(axis);
        let mut out = ScalarExpr::zero();
        for (k, coeff) in by_power {
            let span = x.powi(k as i32 + 1)? - lower.powi(k as i32 + 1)?;
            let scale = Rational::new(1, k as i64 + 1);
            out = out + (ScalarExpr::from_poly(coeff) * span).scale(&scale);
        }
        if self.denominator().is_empty() {
            Ok(out)
        } else {
            Ok(out * super::finish(Poly::one(), self.denominator().to_vec()))
        }
    }
}

fn atom_depends_on(atom: &Atom, axis: usize) -> bool {
    match atom {
        Atom::Var(i) => *i == axis,
        Atom::Apply(_, u) => u.depends_on(axis),
    }
}

fn diff_atom(atom: &Atom, axis: usize) -> ScalarExpr {
    match atom {
        Atom::Var(i) => {
            if *i == axis {
                ScalarExpr::one()
            } else {
                ScalarExpr::zero()
            }
        }
        Atom::Apply(f, u) => {
            let du = u.differentiate(axis);
            if du.is_zero() {
                return du;
            }
            let outer = match f {
                Func::Exp => u.exp(),
                Func::Ln => u.recip().expect("ln argument is nonzero"),
                Func::Sin => u.cos(),
                Func::Cos => -u.sin(),
                // 1/(2 sqrt(u)) = sqrt(u) / (2u)
                Func::Sqrt => (u.sqrt() * u.recip().expect("sqrt argument is nonzero"))
                    .scale(&Rational::new(1, 2)),
            };
            outer * du
        }
    }
}

fn diff_poly(p: &Poly, axis: usize) -> ScalarExpr {
    let mut raw = Poly::zero();
    let mut rational = ScalarExpr::zero();
    let mut atom_cache: BTreeMap<&Atom, ScalarExpr> = BTreeMap::new();
    for (m, c) in p.terms() {
        for (idx, (atom, e)) in m.factors().iter().enumerate() {
            let da = atom_cache
                .entry(atom)
                .or_insert_with(|| diff_atom(atom, axis))
                .clone();
            if da.is_zero() {
                continue;
            }
            let coeff = c * &Rational::from_int(*e as i64);
            let rest = m.without_one(idx);
            if da.denominator().is_empty() {
                raw = raw.add(&da.numerator().mul_term(&rest, &coeff));
            } else {
                let term = ScalarExpr::from_poly(Poly::term(rest, coeff)) * da;
                rational = rational + term;
            }
        }
    }
    reduce_poly(raw) + rational
}

fn subst_poly(
    p: &Poly,
    replacements: &[ScalarExpr],
    cache: &mut BTreeMap<Atom, ScalarExpr>,
) -> Result<ScalarExpr, ExprError> {
    let mut out = ScalarExpr::zero();
    for (m, c) in p.terms() {
        let mut term = ScalarExpr::constant(c.clone());
        for (atom, e) in m.factors() {
            let value = match cache.get(atom) {
                Some(v) => v.clone(),
                None => {
                    let v = match atom {
                        Atom::Var(i) => replacements
                            .get(*i)
                            .cloned()
                            .ok_or(ExprError::DimensionMismatch {
                                expected: i + 1,
                                found: replacements.len(),
                            })?,
                        Atom::Apply(f, u) => {
                            ScalarExpr::apply(*f, &u.substitute_cached(replacements, cache)?)
                        }
                    };
                    cache.insert(atom.clone(), v.clone());
                    v
                }
            };
            term = term * value.powi(*e as i32)?;
        }
        out = out + term;
    }
    Ok(out)
}
