//! Differential forms on ℝⁿ with symbolic coefficients.
//!
//! A k-form is stored as a map from strictly increasing multi-indices
//! `i₁ < … < i_k` to nonzero [`ScalarExpr`] coefficients, so two forms are
//! equal exactly when their coefficient maps agree.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::expr::{parse_with, Builder, Func, ScalarExpr, VarNames};
use crate::rational::Rational;

/// A strictly increasing list of axes; empty for the scalar part.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    /// `None` unless `indices` is strictly increasing.
    pub fn new(indices: Vec<usize>) -> Option<Self> {
        indices.windows(2).all(|w| w[0] < w[1]).then_some(MultiIndex(indices))
    }

    pub fn single(axis: usize) -> Self {
        MultiIndex(vec![axis])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, axis: usize) -> bool {
        self.0.binary_search(&axis).is_ok()
    }

    /// Position of `axis` in the index, if present.
    pub fn position(&self, axis: usize) -> Option<usize> {
        self.0.binary_search(&axis).ok()
    }

    pub fn without(&self, pos: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v.remove(pos);
        MultiIndex(v)
    }

    /// All increasing k-subsets of `0..n`, in lexicographic order.
    pub fn all(n: usize, k: usize) -> Vec<MultiIndex> {
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if cur.len() == k {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k <= n {
            rec(0, n, k, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl From<MultiIndex> for Vec<usize> {
    fn from(m: MultiIndex) -> Self {
        m.0
    }
}

/// Sorts `indices`, returning the sign of the sorting permutation, or 0 when
/// an index repeats (the wedge of the corresponding differentials vanishes).
pub fn canonicalize(indices: &[usize]) -> (i8, MultiIndex) {
    let mut v = indices.to_vec();
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return (0, MultiIndex::empty());
    }
    (sign, MultiIndex(v))
}

#[derive(Clone)]
pub struct DifferentialForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, ScalarExpr>,
}

impl DifferentialForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        DifferentialForm { dim, degree, terms: BTreeMap::new() }
    }

    /// A 0-form.
    pub fn scalar(dim: usize, f: ScalarExpr) -> Self {
        let mut out = DifferentialForm::zero(dim, 0);
        out.add_term(MultiIndex::empty(), f);
        out
    }

    /// The coordinate differential `dx^axis`.
    pub fn dx(dim: usize, axis: usize) -> Self {
        assert!(axis < dim, "axis {axis} out of range for dimension {dim}");
        let mut out = DifferentialForm::zero(dim, 1);
        out.add_term(MultiIndex::single(axis), ScalarExpr::one());
        out
    }

    /// `coeff · dx^{i₁} ∧ … ∧ dx^{i_k}` for arbitrary (unsorted) axes.
    pub fn monomial(dim: usize, coeff: ScalarExpr, axes: &[usize]) -> Result<Self> {
        DifferentialForm::from_terms(dim, axes.len(), [(axes.to_vec(), coeff)])
    }

    /// Builds a form from (axes, coefficient) pairs, canonicalizing each
    /// index list with its permutation sign.
    pub fn from_terms(
        dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, ScalarExpr)>,
    ) -> Result<Self> {
        let mut out = DifferentialForm::zero(dim, degree);
        for (axes, c) in terms {
            if axes.len() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: axes.len() });
            }
            if let Some(&bad) = axes.iter().find(|&&a| a >= dim) {
                return Err(Error::InvalidIndex { index: bad, dim });
            }
            let (sign, idx) = canonicalize(&axes);
            match sign {
                0 => {}
                1 => out.add_term(idx, c),
                _ => out.add_term(idx, -c),
            }
        }
        Ok(out)
    }

    fn add_term(&mut self, idx: MultiIndex, c: ScalarExpr) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &ScalarExpr)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> ScalarExpr {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    /// The coefficient of a 0-form.
    pub fn as_scalar(&self) -> Option<ScalarExpr> {
        (self.degree == 0).then(|| self.coefficient(&MultiIndex::empty()))
    }

    fn check_dim(&self, other: &DifferentialForm) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.check_dim(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DifferentialForm {
        self.map_coefficients(|c| -c)
    }

    /// Multiplication by a scalar function.
    pub fn scale(&self, f: &ScalarExpr) -> DifferentialForm {
        self.map_coefficients(|c| c * f)
    }

    pub fn scale_rational(&self, r: &Rational) -> DifferentialForm {
        self.map_coefficients(|c| c.scale(r))
    }

    /// Applies `f` to every coefficient, dropping those that become zero.
    pub fn map_coefficients(&self, mut f: impl FnMut(&ScalarExpr) -> ScalarExpr) -> DifferentialForm {
        let mut out = DifferentialForm::zero(self.dim, self.degree);
        for (i, c) in self.terms() {
            out.add_term(i.clone(), f(c));
        }
        out
    }

    pub fn try_map_coefficients(
        &self,
        mut f: impl FnMut(&ScalarExpr) -> Result<ScalarExpr>,
    ) -> Result<DifferentialForm> {
        let mut out = DifferentialForm::zero(self.dim, self.degree);
        for (i, c) in self.terms() {
            out.add_term(i.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.check_dim(other)?;
        let mut out = DifferentialForm::zero(self.dim, self.degree + other.degree);
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                let mut axes = i.0.clone();
                axes.extend_from_slice(&j.0);
                let (sign, idx) = canonicalize(&axes);
                if sign == 0 {
                    continue;
                }
                let c = a * b;
                out.add_term(idx, if sign > 0 { c } else { -c });
            }
        }
        Ok(out)
    }

    /// dα = Σ_{I,j} ∂_j α_I dx^j ∧ dx^I.
    pub fn d(&self) -> DifferentialForm {
        let mut out = DifferentialForm::zero(self.dim, self.degree + 1);
        for (i, a) in self.terms() {
            for j in 0..self.dim {
                if i.contains(j) {
                    continue;
                }
                let da = a.differentiate(j);
                if da.is_zero() {
                    continue;
                }
                let mut axes = vec![j];
                axes.extend_from_slice(&i.0);
                let (sign, idx) = canonicalize(&axes);
                out.add_term(idx, if sign > 0 { da } else { -da });
            }
        }
        out
    }

    /// Contraction with a vector field in the first slot:
    /// i_v(dx^I) = Σ_r (−1)^{r−1} v^{i_r} dx^{I∖i_r}.
    pub fn interior(&self, v: &VectorFieldSym) -> Result<DifferentialForm> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.dim() });
        }
        if self.degree == 0 {
            return Err(Error::DegreeZero);
        }
        let mut out = DifferentialForm::zero(self.dim, self.degree - 1);
        for (i, a) in self.terms() {
            for (r, &axis) in i.0.iter().enumerate() {
                let vr = &v.components[axis];
                if vr.is_zero() {
                    continue;
                }
                let c = a * vr;
                out.add_term(i.without(r), if r % 2 == 0 { c } else { -c });
            }
        }
        Ok(out)
    }

    /// Cartan's combination d(i_v α) + i_v(dα). For 0-forms the first term is absent.
    pub fn lie_derivative(&self, v: &VectorFieldSym) -> Result<DifferentialForm> {
        let second = self.d().interior(v)?;
        if self.degree == 0 {
            return Ok(second);
        }
        self.interior(v)?.d().add(&second)
    }

    pub fn is_closed(&self) -> bool {
        self.d().is_zero()
    }

    /// Semantic equality of coefficients.
    pub fn equals(&self, other: &DifferentialForm) -> bool {
        self.dim == other.dim && self.sub(other).is_ok_and(|d| d.is_zero())
    }

    /// Simultaneous substitution into every coefficient (no change to the differentials).
    pub fn substitute_coefficients(&self, replacements: &[ScalarExpr]) -> Result<DifferentialForm> {
        self.try_map_coefficients(|c| Ok(c.substitute(replacements)?))
    }

    /// Re-embeds the form in a space of dimension `dim ≥ self.dim()`.
    pub fn with_dim(&self, dim: usize) -> Result<DifferentialForm> {
        if dim < self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: dim });
        }
        Ok(DifferentialForm { dim, ..self.clone() })
    }

    /// Coefficient values at `point`, on increasing multi-indices.
    pub fn evaluate_coefficients(&self, point: &[f64]) -> Result<Vec<(MultiIndex, f64)>> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: point.len() });
        }
        self.terms()
            .map(|(i, c)| Ok((i.clone(), c.evaluate(point)?)))
            .collect()
    }

    pub fn parse(text: &str, dim: usize) -> Result<DifferentialForm> {
        DifferentialForm::parse_with_names(text, &VarNames::standard(dim))
    }

    /// Parses a form literal such as `x*dy/\dz - exp(x)*dx/\dy`.
    pub fn parse_with_names(text: &str, names: &VarNames) -> Result<DifferentialForm> {
        Ok(parse_with(text, names, &FormBuilder { dim: names.dim() })?)
    }

    pub fn display_with(&self, names: &VarNames) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (idx, c)) in self.terms().enumerate() {
            // a bare multi-term scalar is printed unparenthesized, so its sign stays inside
            let negative = c.numerator_leading_negative() && (c.is_single_term() || !idx.is_empty());
            let c = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let differential = idx
                .as_slice()
                .iter()
                .map(|&a| format!("d{}", names.name(a)))
                .collect::<Vec<_>>()
                .join("/\\");
            if idx.is_empty() {
                out.push_str(&c.display_with(names));
                continue;
            }
            if !c.is_one() {
                let s = c.display_with(names);
                if c.is_single_term() {
                    out.push_str(&s);
                } else {
                    out.push('(');
                    out.push_str(&s);
                    out.push(')');
                }
                out.push('*');
            }
            out.push_str(&differential);
        }
        out
    }
}

impl PartialEq for DifferentialForm {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&VarNames::standard(self.dim)))
    }
}

impl fmt::Debug for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DifferentialForm(dim={}, degree={}, {self})", self.dim, self.degree)
    }
}

struct FormBuilder {
    dim: usize,
}

impl FormBuilder {
    fn scalar_of(&self, a: &DifferentialForm, what: &str) -> std::result::Result<ScalarExpr, String> {
        if a.is_zero() {
            return Ok(ScalarExpr::zero());
        }
        a.as_scalar().ok_or_else(|| format!("{what} of a form of positive degree"))
    }
}

impl Builder for FormBuilder {
    type Value = DifferentialForm;

    fn constant(&self, c: Rational) -> DifferentialForm {
        DifferentialForm::scalar(self.dim, ScalarExpr::constant(c))
    }

    fn variable(&self, axis: usize) -> DifferentialForm {
        DifferentialForm::scalar(self.dim, ScalarExpr::var(axis))
    }

    fn differential(&self, axis: usize) -> std::result::Result<DifferentialForm, String> {
        Ok(DifferentialForm::dx(self.dim, axis))
    }

    fn add(&self, a: DifferentialForm, b: DifferentialForm) -> std::result::Result<DifferentialForm, String> {
        a.add(&b).map_err(|e| e.to_string())
    }

    fn neg(&self, a: DifferentialForm) -> DifferentialForm {
        a.neg()
    }

    fn mul(&self, a: DifferentialForm, b: DifferentialForm) -> std::result::Result<DifferentialForm, String> {
        if a.degree > 0 && b.degree > 0 && !a.is_zero() && !b.is_zero() {
            return Err("use `/\\` to multiply two forms of positive degree".into());
        }
        a.wedge(&b).map_err(|e| e.to_string())
    }

    fn div(&self, a: DifferentialForm, b: DifferentialForm) -> std::result::Result<DifferentialForm, String> {
        let d = self.scalar_of(&b, "division by")?;
        let inv = d.recip().map_err(|e| e.to_string())?;
        Ok(a.scale(&inv))
    }

    fn wedge(&self, a: DifferentialForm, b: DifferentialForm) -> std::result::Result<DifferentialForm, String> {
        a.wedge(&b).map_err(|e| e.to_string())
    }

    fn pow(&self, a: DifferentialForm, exp: i32) -> std::result::Result<DifferentialForm, String> {
        let s = self.scalar_of(&a, "power")?;
        let p = s.powi(exp).map_err(|e| e.to_string())?;
        Ok(DifferentialForm::scalar(self.dim, p))
    }

    fn apply(&self, func: Func, a: DifferentialForm) -> std::result::Result<DifferentialForm, String> {
        let s = self.scalar_of(&a, func.name())?;
        Ok(DifferentialForm::scalar(self.dim, ScalarExpr::apply(func, &s)))
    }
}

/// A vector field on ℝⁿ with symbolic components.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorFieldSym {
    components: Vec<ScalarExpr>,
}

impl VectorFieldSym {
    pub fn new(components: Vec<ScalarExpr>) -> Self {
        VectorFieldSym { components }
    }

    pub fn parse(components: &[&str], dim: usize) -> Result<Self> {
        if components.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: components.len() });
        }
        let components = components
            .iter()
            .map(|s| ScalarExpr::parse(s, dim))
            .collect::<std::result::Result<_, _>>()?;
        Ok(VectorFieldSym { components })
    }

    /// The constant field e_axis.
    pub fn basis(dim: usize, axis: usize) -> Self {
        let components = (0..dim)
            .map(|i| if i == axis { ScalarExpr::one() } else { ScalarExpr::zero() })
            .collect();
        VectorFieldSym { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[ScalarExpr] {
        &self.components
    }

    pub fn gradient(f: &ScalarExpr, dim: usize) -> Self {
        VectorFieldSym { components: (0..dim).map(|j| f.differentiate(j)).collect() }
    }

    pub fn curl(&self) -> Result<Self> {
        self.require_3d()?;
        let v = &self.components;
        Ok(VectorFieldSym {
            components: vec![
                v[2].differentiate(1) - v[1].differentiate(2),
                v[0].differentiate(2) - v[2].differentiate(0),
                v[1].differentiate(0) - v[0].differentiate(1),
            ],
        })
    }

    pub fn divergence(&self) -> ScalarExpr {
        self.components.iter().enumerate().map(|(j, c)| c.differentiate(j)).sum()
    }

    fn require_3d(&self) -> Result<()> {
        if self.dim() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: self.dim() });
        }
        Ok(())
    }

    /// ω¹_v = v₁ dx + v₂ dy + v₃ dz.
    pub fn omega1(&self) -> Result<DifferentialForm> {
        self.require_3d()?;
        DifferentialForm::from_terms(
            3,
            1,
            self.components.iter().enumerate().map(|(i, c)| (vec![i], c.clone())),
        )
    }

    /// ω²_v = v₁ dy∧dz + v₂ dz∧dx + v₃ dx∧dy.
    pub fn omega2(&self) -> Result<DifferentialForm> {
        self.require_3d()?;
        let v = &self.components;
        DifferentialForm::from_terms(
            3,
            2,
            [(vec![1, 2], v[0].clone()), (vec![2, 0], v[1].clone()), (vec![0, 1], v[2].clone())],
        )
    }
}

impl ScalarExpr {
    fn numerator_leading_negative(&self) -> bool {
        self.numerator().leading().is_some_and(|(_, c)| c.is_negative())
    }

    fn is_single_term(&self) -> bool {
        self.numerator().len() <= 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str, n: usize) -> DifferentialForm {
        DifferentialForm::parse(s, n).unwrap()
    }

    fn e(s: &str, n: usize) -> ScalarExpr {
        ScalarExpr::parse(s, n).unwrap()
    }

    #[test]
    fn canonical_signs() {
        assert_eq!(canonicalize(&[2, 1]), (-1, MultiIndex(vec![1, 2])));
        assert_eq!(canonicalize(&[1, 2, 1]), (0, MultiIndex::empty()));
        assert_eq!(canonicalize(&[1, 2, 3]), (1, MultiIndex(vec![1, 2, 3])));
        assert_eq!(canonicalize(&[3, 1, 2]), (1, MultiIndex(vec![1, 2, 3])));
    }

    #[test]
    fn wedge_of_one_forms() {
        assert_eq!(f("x*dx", 2).wedge(&f("y*dy", 2)).unwrap(), f("x*y*dx/\\dy", 2));
        assert!(f("dx", 2).wedge(&f("dx", 2)).unwrap().is_zero());
        assert_eq!(f("dy/\\dx", 2), f("-dx/\\dy", 2));
    }

    #[test]
    fn worked_exterior_derivative() {
        let a = f("x*y*dx + exp(x)*dy", 2);
        let da = a.d();
        assert_eq!(da, f("(exp(x) - x)*dx/\\dy", 2));
        assert_eq!(da.to_string(), "(exp(x) - x)*dx/\\dy");
    }

    #[test]
    fn angular_form_is_closed() {
        let w = f("(x*dy - y*dx)/(x^2+y^2)", 2);
        assert!(w.is_closed());
        assert!(!f("x*dy", 2).is_closed());
        assert!(f("7*dx/\\dy", 2).d().is_zero());
    }

    #[test]
    fn solid_angle_form_is_closed() {
        let w = f("(x*dy/\\dz - y*dx/\\dz + z*dx/\\dy)/sqrt(x^2+y^2+z^2)^3", 3);
        assert!(w.is_closed());
    }

    #[test]
    fn interior_product_of_volume() {
        let v = VectorFieldSym::parse(&["x*y", "z", "exp(x)"], 3).unwrap();
        let vol = f("dx/\\dy/\\dz", 3);
        assert_eq!(vol.interior(&v).unwrap(), v.omega2().unwrap());
        let e1 = VectorFieldSym::basis(2, 0);
        assert_eq!(f("dx", 2).interior(&e1).unwrap(), DifferentialForm::scalar(2, ScalarExpr::one()));
        assert_eq!(DifferentialForm::scalar(2, ScalarExpr::one()).interior(&e1), Err(Error::DegreeZero));
    }

    #[test]
    fn lie_derivative_along_dx() {
        let v = VectorFieldSym::parse(&["x*y^2", "sin(x)"], 2).unwrap();
        let got = f("dx", 2).lie_derivative(&v).unwrap();
        assert_eq!(got, f("y^2*dx + 2*x*y*dy", 2));
    }

    #[test]
    fn vector_calculus_bridge() {
        let g = e("x^2*y + z", 3);
        let grad = VectorFieldSym::gradient(&g, 3);
        assert_eq!(grad.omega1().unwrap(), DifferentialForm::scalar(3, g).d());
        let v = VectorFieldSym::parse(&["y*z", "-x", "x^2"], 3).unwrap();
        assert_eq!(v.omega1().unwrap().d(), v.curl().unwrap().omega2().unwrap());
        let div = v.divergence();
        assert_eq!(v.omega2().unwrap().d(), f("dx/\\dy/\\dz", 3).scale(&div));
    }

    #[test]
    fn parse_errors() {
        assert!(DifferentialForm::parse("dx/\\dy + dz", 3).is_err());
        assert!(DifferentialForm::parse("dx*dy", 2).is_err());
        assert!(DifferentialForm::parse("sin(dx)", 2).is_err());
        assert!(DifferentialForm::parse("dz", 2).is_err());
        assert!(DifferentialForm::parse("x/dx", 2).is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "x*y*dx + exp(x)*dy",
            "-y/(x^2+y^2)*dx + x/(x^2+y^2)*dy",
            "-dx/\\dz + 3*z^2/4*dy/\\dz",
            "x^2 + 1",
            "-2*x*y^2 + cos(y)",
            "(1 - x)*dy",
            "0",
        ] {
            let a = f(s, 3);
            assert_eq!(f(&a.to_string(), 3), a, "{s} -> {a}");
        }
    }

    #[test]
    fn custom_names() {
        let names = VarNames::custom(["r", "theta"]);
        let a = DifferentialForm::parse_with_names("r*dr/\\dtheta", &names).unwrap();
        assert_eq!(a.display_with(&names), "r*dr/\\dtheta");
    }

    #[test]
    fn degree_above_dimension_is_zero() {
        let a = f("dx", 1).wedge(&f("dx", 1)).unwrap();
        assert!(a.is_zero());
        assert_eq!(a.degree(), 2);
    }
}
