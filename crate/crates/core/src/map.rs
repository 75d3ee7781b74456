//! Smooth maps ℝⁿ → ℝᵐ with symbolic components, and pullback of forms.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::expr::{ScalarExpr, VarNames};
use crate::form::{DifferentialForm, MultiIndex};

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothMap {
    domain: usize,
    components: Vec<ScalarExpr>,
    names: VarNames,
}

impl SmoothMap {
    /// Components are expressions in the `domain` standard variables.
    pub fn new(domain: usize, components: Vec<ScalarExpr>) -> Result<Self> {
        SmoothMap::with_names(VarNames::standard(domain), components)
    }

    pub fn with_names(names: VarNames, components: Vec<ScalarExpr>) -> Result<Self> {
        let domain = names.dim();
        if let Some(c) = components.iter().find(|c| c.arity() > domain) {
            return Err(Error::DimensionMismatch { expected: domain, found: c.arity() });
        }
        Ok(SmoothMap { domain, components, names })
    }

    pub fn parse(domain: usize, components: &[&str]) -> Result<Self> {
        let names = VarNames::standard(domain);
        let comps = components
            .iter()
            .map(|s| ScalarExpr::parse_with_names(s, &names))
            .collect::<std::result::Result<_, _>>()?;
        SmoothMap::with_names(names, comps)
    }

    /// Parses `map(r,theta) = r*cos(theta); r*sin(theta)`.
    pub fn parse_literal(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidInput(format!("map literal: {m}"));
        let rest = text.trim().strip_prefix("map").ok_or_else(|| bad("expected `map(`"))?.trim_start();
        let rest = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
        let (params, body) = rest.split_once(')').ok_or_else(|| bad("expected `)`"))?;
        let body = body.trim_start().strip_prefix('=').ok_or_else(|| bad("expected `=`"))?;
        let params: Vec<String> = params.split(',').map(|p| p.trim().to_string()).collect();
        if params.iter().any(|p| p.is_empty() || !p.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')) {
            return Err(bad("malformed parameter list"));
        }
        let names = VarNames::custom(params);
        let comps = body
            .split(';')
            .map(|s| ScalarExpr::parse_with_names(s.trim(), &names))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        SmoothMap::with_names(names, comps)
    }

    pub fn identity(n: usize) -> Self {
        SmoothMap {
            domain: n,
            components: (0..n).map(ScalarExpr::var).collect(),
            names: VarNames::standard(n),
        }
    }

    /// x ↦ A x for an integer matrix given by rows.
    pub fn linear(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        let components = rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(j, &a)| ScalarExpr::var(j) * ScalarExpr::int(a)).sum())
            .collect();
        SmoothMap::new(n, components)
    }

    pub fn domain_dim(&self) -> usize {
        self.domain
    }

    pub fn codomain_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[ScalarExpr] {
        &self.components
    }

    pub fn names(&self) -> &VarNames {
        &self.names
    }

    /// Entry (i, j) is ∂gⁱ/∂xʲ.
    pub fn jacobian_symbolic(&self) -> Vec<Vec<ScalarExpr>> {
        self.components
            .iter()
            .map(|g| (0..self.domain).map(|j| g.differentiate(j)).collect())
            .collect()
    }

    pub fn evaluate(&self, point: &[f64]) -> Result<Vec<f64>> {
        self.check_point(point)?;
        self.components.iter().map(|g| Ok(g.evaluate(point)?)).collect()
    }

    pub fn jacobian_at(&self, point: &[f64]) -> Result<DMatrix<f64>> {
        self.check_point(point)?;
        let jac = self.jacobian_symbolic();
        let mut m = DMatrix::zeros(self.codomain_dim(), self.domain);
        for (i, row) in jac.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                m[(i, j)] = e.evaluate(point)?;
            }
        }
        Ok(m)
    }

    fn check_point(&self, point: &[f64]) -> Result<()> {
        if point.len() != self.domain {
            return Err(Error::DimensionMismatch { expected: self.domain, found: point.len() });
        }
        Ok(())
    }

    /// The 1-forms dgⁱ = Σ_j ∂_j gⁱ dxʲ.
    pub fn differentials(&self) -> Vec<DifferentialForm> {
        self.components.iter().map(|g| DifferentialForm::scalar(self.domain, g.clone()).d()).collect()
    }

    /// g*α = Σ_I α_I(g(x)) dg^{i₁}∧⋯∧dg^{i_k}.
    pub fn pullback(&self, form: &DifferentialForm) -> Result<DifferentialForm> {
        if form.dim() != self.codomain_dim() {
            return Err(Error::DimensionMismatch { expected: self.codomain_dim(), found: form.dim() });
        }
        let dg = self.differentials();
        let mut wedges: BTreeMap<MultiIndex, DifferentialForm> = BTreeMap::new();
        let mut out = DifferentialForm::zero(self.domain, form.degree());
        for (idx, coeff) in form.terms() {
            let c = coeff.substitute(&self.components)?;
            if c.is_zero() {
                continue;
            }
            if !wedges.contains_key(idx) {
                let mut w = DifferentialForm::scalar(self.domain, ScalarExpr::one());
                for &i in idx.as_slice() {
                    w = w.wedge(&dg[i])?;
                }
                wedges.insert(idx.clone(), w);
            }
            out = out.add(&wedges[idx].scale(&c))?;
        }
        Ok(out)
    }

    /// h∘g, with `self = h`.
    pub fn compose(&self, inner: &SmoothMap) -> Result<SmoothMap> {
        if inner.codomain_dim() != self.domain {
            return Err(Error::DimensionMismatch { expected: self.domain, found: inner.codomain_dim() });
        }
        let components = self
            .components
            .iter()
            .map(|h| h.substitute(&inner.components))
            .collect::<std::result::Result<_, _>>()?;
        SmoothMap::with_names(inner.names.clone(), components)
    }

    pub fn display(&self) -> String {
        let params: Vec<String> = (0..self.domain).map(|i| self.names.name(i)).collect();
        let comps: Vec<String> = self.components.iter().map(|c| c.display_with(&self.names)).collect();
        format!("map({}) = {}", params.join(","), comps.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn polar() -> SmoothMap {
        SmoothMap::parse_literal("map(r,theta) = r*cos(theta); r*sin(theta)").unwrap()
    }

    #[test]
    fn polar_jacobian_determinant_is_r() {
        let g = polar();
        let j = g.jacobian_symbolic();
        let det = &j[0][0] * &j[1][1] - &j[0][1] * &j[1][0];
        assert_eq!(det, ScalarExpr::var(0));
        for k in 0..10 {
            let p = [0.3 + 0.2 * k as f64, 0.7 * k as f64];
            assert!((g.jacobian_at(&p).unwrap().determinant() - p[0]).abs() < 1e-12);
        }
    }

    #[test]
    fn polar_area_form() {
        let g = polar();
        let area = DifferentialForm::parse("dx/\\dy", 2).unwrap();
        let got = g.pullback(&area).unwrap();
        let names = VarNames::custom(["r", "theta"]);
        assert_eq!(got, DifferentialForm::parse_with_names("r*dr/\\dtheta", &names).unwrap());
        assert_eq!(got.display_with(g.names()), "r*dr/\\dtheta");
    }

    #[test]
    fn identity_and_linear_jacobians() {
        let id = SmoothMap::identity(3);
        assert_eq!(id.jacobian_at(&[1.0, 2.0, 3.0]).unwrap(), DMatrix::identity(3, 3));
        let a = SmoothMap::linear(&[vec![1, 2], vec![3, 4], vec![0, -1]]).unwrap();
        let want = DMatrix::from_row_slice(3, 2, &[1.0, 2.0, 3.0, 4.0, 0.0, -1.0]);
        assert_eq!(a.jacobian_at(&[5.0, -7.0]).unwrap(), want);
    }

    #[test]
    fn pullback_of_function_is_composition() {
        let g = polar();
        let f = DifferentialForm::parse("x^2 + y^2", 2).unwrap();
        let got = g.pullback(&f).unwrap();
        assert_eq!(got.as_scalar().unwrap(), ScalarExpr::var(0) * ScalarExpr::var(0));
    }

    #[test]
    fn radius_after_polar() {
        let h = SmoothMap::parse(2, &["sqrt(x^2+y^2)"]).unwrap();
        let hg = h.compose(&polar()).unwrap();
        // sqrt(r^2) = r holds only for r > 0, so it is not rewritten symbolically
        let r = ScalarExpr::var(0);
        assert_eq!(hg.components()[0], (&r * &r).sqrt());
        for k in 1..10 {
            let p = [0.25 * k as f64, 0.9 * k as f64];
            assert!((hg.evaluate(&p).unwrap()[0] - p[0]).abs() < 1e-14);
        }
    }

    #[test]
    fn compose_with_identity() {
        let g = polar();
        assert_eq!(SmoothMap::identity(2).compose(&g).unwrap(), g);
    }

    #[test]
    fn literal_errors() {
        assert!(SmoothMap::parse_literal("map(r) r").is_err());
        assert!(SmoothMap::parse_literal("map(r) = s").is_err());
        assert!(SmoothMap::parse_literal("f(r) = r").is_err());
    }

    #[test]
    fn dimension_checks() {
        let g = polar();
        let three = DifferentialForm::parse("dz", 3).unwrap();
        assert!(g.pullback(&three).is_err());
        assert!(g.evaluate(&[1.0]).is_err());
        assert!(g.compose(&SmoothMap::identity(3)).is_err());
    }
}
