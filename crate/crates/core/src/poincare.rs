//! The homotopy operator on ℝ×X and primitives of closed polynomial forms.
//!
//! Writing α = dt∧β + γ with β, γ free of dt, the operator
//! P(α) = Σ_J (∫₀ᵗ β_J(s,x) ds) dx^J satisfies dP + Pd = 1 − π*s₀*.
//! Applied along each axis in turn it produces a primitive of any closed
//! polynomial form of positive degree.

use crate::error::{Error, Result};
use crate::expr::ScalarExpr;
use crate::form::DifferentialForm;

/// α = dx^axis ∧ beta + gamma, with no dx^axis in beta or gamma.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberSplit {
    pub beta: DifferentialForm,
    pub gamma: DifferentialForm,
}

impl FiberSplit {
    pub fn reconstruct(&self, axis: usize) -> Result<DifferentialForm> {
        let dt = DifferentialForm::dx(self.gamma.dim(), axis);
        dt.wedge(&self.beta)?.add(&self.gamma)
    }
}

/// Splits off the dt-part, with t = axis 0.
pub fn fiber_split(form: &DifferentialForm) -> Result<FiberSplit> {
    fiber_split_along(form, 0)
}

pub fn fiber_split_along(form: &DifferentialForm, axis: usize) -> Result<FiberSplit> {
    let n = form.dim();
    if axis >= n {
        return Err(Error::InvalidIndex { index: axis, dim: n });
    }
    let k = form.degree();
    let mut beta = Vec::new();
    let mut gamma = Vec::new();
    for (idx, c) in form.terms() {
        match idx.position(axis) {
            // dx^I = (−1)^p dx^axis ∧ dx^{I∖axis}
            Some(p) => {
                let c = if p % 2 == 0 { c.clone() } else { -c };
                beta.push((idx.without(p).into(), c));
            }
            None => gamma.push((idx.clone().into(), c.clone())),
        }
    }
    Ok(FiberSplit {
        beta: DifferentialForm::from_terms(n, k.saturating_sub(1), beta)?,
        gamma: DifferentialForm::from_terms(n, k, gamma)?,
    })
}

/// P(α) with t = axis 0.
pub fn homotopy_p(form: &DifferentialForm) -> Result<DifferentialForm> {
    homotopy_p_along(form, 0)
}

/// P along `axis`: integrates the dx^axis-part from 0 to x^axis.
pub fn homotopy_p_along(form: &DifferentialForm, axis: usize) -> Result<DifferentialForm> {
    let split = fiber_split_along(form, axis)?;
    let zero = ScalarExpr::zero();
    split.beta.try_map_coefficients(|c| Ok(c.integrate_polynomial(axis, &zero)?))
}

/// π*s₀*α: γ with t set to 0.
pub fn base_restriction(form: &DifferentialForm, axis: usize) -> Result<DifferentialForm> {
    let split = fiber_split_along(form, axis)?;
    let subs: Vec<ScalarExpr> = (0..form.dim())
        .map(|i| if i == axis { ScalarExpr::zero() } else { ScalarExpr::var(i) })
        .collect();
    split.gamma.substitute_coefficients(&subs)
}

/// d(Pα) + P(dα) − (α − π*s₀*α), which is the zero form whenever P is defined.
pub fn homotopy_identity_check(form: &DifferentialForm) -> Result<DifferentialForm> {
    homotopy_identity_residual(form, 0)
}

pub fn homotopy_identity_residual(form: &DifferentialForm, axis: usize) -> Result<DifferentialForm> {
    let dp = if form.degree() == 0 {
        DifferentialForm::zero(form.dim(), 0)
    } else {
        homotopy_p_along(form, axis)?.d()
    };
    let pd = homotopy_p_along(&form.d(), axis)?;
    let rhs = form.sub(&base_restriction(form, axis)?)?;
    dp.add(&pd)?.sub(&rhs)
}

/// A form b with db = α, for closed α of positive degree with coefficients
/// polynomial in the coordinates. The result is checked before it is returned.
pub fn primitive(form: &DifferentialForm) -> Result<DifferentialForm> {
    if form.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    if !form.is_closed() {
        return Err(Error::NotClosed);
    }
    // α = d(P_0 α) + r_1 with r_1 free of x_0 and dx_0; continue with r_1 along x_1.
    let mut result = DifferentialForm::zero(form.dim(), form.degree() - 1);
    let mut rest = form.clone();
    for axis in 0..form.dim() {
        if rest.is_zero() {
            break;
        }
        result = result.add(&homotopy_p_along(&rest, axis)?)?;
        rest = base_restriction(&rest, axis)?;
    }
    if !rest.is_zero() {
        return Err(Error::Verification(format!("nonzero remainder {rest} after peeling every axis")));
    }
    if !result.d().equals(form) {
        return Err(Error::Verification("d(primitive) differs from the input".into()));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{ExprError, VarNames};

    /// t, x, y as axes 0, 1, 2.
    fn tf(s: &str) -> DifferentialForm {
        DifferentialForm::parse_with_names(s, &VarNames::custom(["t", "x", "y"])).unwrap()
    }

    #[test]
    fn split_examples() {
        let s = fiber_split(&tf("dt/\\dx")).unwrap();
        assert_eq!(s.beta, tf("dx"));
        assert!(s.gamma.is_zero());
        let a = tf("x*dt + t*dx");
        let s = fiber_split(&a).unwrap();
        assert_eq!(s.beta, tf("x"));
        assert_eq!(s.gamma, tf("t*dx"));
        assert_eq!(s.reconstruct(0).unwrap(), a);
        let b = tf("x*dx/\\dt/\\dy");
        assert_eq!(fiber_split(&b).unwrap().reconstruct(0).unwrap(), b);
    }

    #[test]
    fn homotopy_operator_examples() {
        assert_eq!(homotopy_p(&tf("dt/\\dx")).unwrap(), tf("t*dx"));
        assert_eq!(homotopy_p(&tf("t*dt")).unwrap(), tf("t^2/2"));
        assert_eq!(homotopy_p(&tf("t*x*dt/\\dy")).unwrap(), tf("t^2*x/2*dy"));
        assert_eq!(
            homotopy_p(&tf("sin(t)*dt")),
            Err(Error::Expr(ExprError::NotPolynomial { axis: 0 }))
        );
    }

    #[test]
    fn identity_holds_with_or_without_closedness() {
        for s in ["t*dx", "dt/\\dx", "x*y*dt/\\dy + t^2*dx/\\dy", "x*dx + y^2*dy", "t*x + y"] {
            assert!(homotopy_identity_check(&tf(s)).unwrap().is_zero(), "{s}");
        }
        assert!(homotopy_p(&tf("x*dy")).unwrap().is_zero());
    }

    #[test]
    fn primitives() {
        let a = DifferentialForm::parse("dx/\\dy", 2).unwrap();
        assert_eq!(primitive(&a).unwrap().d(), a);
        let a = DifferentialForm::parse("y*dx + x*dy", 2).unwrap();
        let b = primitive(&a).unwrap();
        assert_eq!(b, DifferentialForm::parse("x*y", 2).unwrap());
        let a = DifferentialForm::parse("2*x*y*dx/\\dz + x^2*dy/\\dz", 3).unwrap();
        assert!(a.is_closed());
        assert_eq!(primitive(&a).unwrap().d(), a);
    }

    #[test]
    fn primitive_errors() {
        let a = DifferentialForm::parse("x*dy", 2).unwrap();
        assert_eq!(primitive(&a), Err(Error::NotClosed));
        assert_eq!(primitive(&DifferentialForm::parse("x", 2).unwrap()), Err(Error::DegreeZero));
        let a = DifferentialForm::parse("cos(x)*dx", 1).unwrap();
        assert!(matches!(primitive(&a), Err(Error::Expr(ExprError::NotPolynomial { .. }))));
    }
}
