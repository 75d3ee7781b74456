//! Integrals that count: winding numbers, degrees, linking numbers, and the
//! curvature integral of Gauss–Bonnet.

mod linking;
mod surface;

pub use linking::{linking_integrand_crosscheck, linking_kernel, linking_number, DEFAULT_LINKING_POINTS};
pub use surface::{
    area, gauss_bonnet_check, gauss_curvature, gauss_map, gauss_map_pullback_integral, hypersurface_volume_form,
    shape_operator, GaussBonnetReport, Surface, FD_STEP,
};

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{DifferentialForm, MultiIndex};
use crate::integration::shapes::exact;
use crate::integration::{Cell, Chain, Param, QuadratureSpec};
use crate::map::SmoothMap;

/// (x dy − y dx)/(x² + y²) on ℝ²∖{0}.
pub fn angular_form() -> DifferentialForm {
    DifferentialForm::parse("(x*dy - y*dx)/(x^2 + y^2)", 2).expect("fixed form")
}

/// (x dy∧dz + y dz∧dx + z dx∧dy)/|p|³ on ℝ³∖{0}; it restricts to the area
/// form on S² and is invariant under radial rescaling.
pub fn solid_angle_form() -> DifferentialForm {
    DifferentialForm::parse("(x*dy/\\dz - y*dx/\\dz + z*dx/\\dy)/sqrt(x^2 + y^2 + z^2)^3", 3).expect("fixed form")
}

/// A real number that should be an integer, with its nearest integer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntegerValued {
    pub value: f64,
    pub rounded: i64,
}

impl IntegerValued {
    pub fn new(value: f64) -> Self {
        IntegerValued { value, rounded: value.round() as i64 }
    }

    pub fn gap(&self) -> f64 {
        (self.value - self.rounded as f64).abs()
    }
}

/// A closed parametrized curve in ℝ² or ℝ³.
#[derive(Clone, Debug, PartialEq)]
pub struct Loop {
    cell: Cell,
}

/// Endpoint agreement required of a loop.
pub const CLOSURE_TOL: f64 = 1e-12;

impl Loop {
    pub fn new(cell: Cell) -> Result<Self> {
        if cell.dim() != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: cell.dim() });
        }
        if !(2..=3).contains(&cell.ambient()) {
            return Err(Error::InvalidInput(format!("loops live in R^2 or R^3, not R^{}", cell.ambient())));
        }
        let faces = cell.faces();
        let p: Vec<Vec<f64>> = faces
            .iter()
            .map(|(_, f)| {
                let params: Vec<f64> = f.params().iter().map(|p| match *p {
                    Param::Fixed(v) => v,
                    Param::Interval(a, _) => a,
                })
                .collect();
                f.map().evaluate(&params)
            })
            .collect::<Result<_>>()?;
        let gap = p[0].iter().zip(&p[1]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let scale = p[0].iter().map(|a| a.abs()).fold(1.0, f64::max);
        if gap > CLOSURE_TOL * scale {
            return Err(Error::InvalidInput(format!("loop is not closed: endpoints differ by {gap:e}")));
        }
        Ok(Loop { cell })
    }

    /// t ∈ [a, b] ↦ the given components in the parameter `t`, orientation +1.
    pub fn parse(a: f64, b: f64, components: &[&str]) -> Result<Self> {
        let map = SmoothMap::parse_literal(&format!("map(t) = {}", components.join("; ")))?;
        Loop::new(Cell::new(&[(a, b)], map, 1)?)
    }

    /// The circle of radius r around `center` in the plane spanned by the
    /// orthonormal pair (e1, e2), traversed from e1 towards e2.
    pub fn circle_3d(center: [f64; 3], e1: [f64; 3], e2: [f64; 3], r: f64) -> Result<Self> {
        let comps: Vec<String> = (0..3)
            .map(|i| format!("{} + {}*cos(t) + {}*sin(t)", exact(center[i]), exact(r * e1[i]), exact(r * e2[i])))
            .collect();
        let refs: Vec<&str> = comps.iter().map(String::as_str).collect();
        Loop::parse(0.0, 2.0 * std::f64::consts::PI, &refs)
    }

    pub fn cell(&self) -> &Cell {
        &self.cell
    }

    pub fn ambient(&self) -> usize {
        self.cell.ambient()
    }

    pub fn reversed(&self) -> Loop {
        Loop { cell: self.cell.reversed() }
    }

    pub fn chain(&self) -> Chain {
        Chain::single(self.cell.clone())
    }
}

/// Gauss–Legendre points for winding numbers. The rule is not periodic, so a
/// smooth loop needs more nodes than the generic default: (2 + cos t, sin t)
/// is off by 7e-4 at 16 points.
pub const DEFAULT_WINDING_POINTS: usize = 64;

/// (1/2π) ∫ of the angular form over a plane loop avoiding the origin.
pub fn winding_number(l: &Loop, spec: QuadratureSpec) -> Result<IntegerValued> {
    if l.ambient() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: l.ambient() });
    }
    // the pulled-back integrand can simplify to something finite even when
    // the loop passes through the origin, so check the image itself
    l.cell.quadrature(spec, |p| {
        let x = l.cell.map().evaluate(p)?;
        let r = x[0].hypot(x[1]);
        if r < 1e-12 {
            return Err(Error::Singular(format!("loop meets the origin at parameter {}", p[0])));
        }
        Ok(0.0)
    })?;
    let v = l.cell.integrate(&angular_form(), spec)?;
    Ok(IntegerValued::new(v / (2.0 * std::f64::consts::PI)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The integral of a closed form over a cycle is nonzero, so by Stokes the
    /// form is not d of anything on a domain containing the cycle.
    NotExact,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::NotExact => "not exact on this domain",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub integral: f64,
    pub verdict: Verdict,
}

/// A fixed polynomial k-form with every coefficient nonzero, used to probe
/// whether a chain has (numerically) empty boundary.
fn probe_form(dim: usize, k: usize) -> Result<DifferentialForm> {
    let terms = MultiIndex::all(dim, k).into_iter().enumerate().map(|(j, idx)| {
        let mut c = crate::expr::ScalarExpr::int(1 + j as i64);
        for i in 0..dim {
            let x = crate::expr::ScalarExpr::var(i);
            c = c + x.scale(&(((i + j) % 3) as i64 + 1).into()) + (&x * &x).scale(&crate::rational::Rational::new(1, (i + 2) as i64));
        }
        (Vec::from(idx), c)
    });
    DifferentialForm::from_terms(dim, k, terms)
}

/// Integrates every nonzero-coefficient probe over ∂chain; a cycle gives ≈ 0.
pub fn boundary_residual(chain: &Chain, spec: QuadratureSpec) -> Result<f64> {
    let (Some(k), Some(n)) = (chain.dim(), chain.ambient()) else {
        return Ok(0.0);
    };
    if k == 0 {
        return Ok(0.0);
    }
    chain.boundary()?.integrate(&probe_form(n, k - 1)?, spec)
}

/// Stokes obstruction to exactness: a closed form with nonzero period over a cycle.
pub fn nonexactness_certificate(
    form: &DifferentialForm,
    chain: &Chain,
    spec: QuadratureSpec,
    tol: f64,
) -> Result<Certificate> {
    if !form.is_closed() {
        return Err(Error::NotClosed);
    }
    let leak = boundary_residual(chain, spec)?;
    if leak.abs() > tol.max(1e-8) {
        return Err(Error::InvalidInput(format!("chain is not a cycle: boundary probe gives {leak:e}")));
    }
    let integral = chain.integrate(form, spec)?;
    let verdict = if integral.abs() > tol { Verdict::NotExact } else { Verdict::Inconclusive };
    Ok(Certificate { integral, verdict })
}

/// deg f = ∫_X f*α / ∫_Y α for f : X → Y between closed oriented chains.
pub fn degree_by_integration(
    f: &SmoothMap,
    domain: &Chain,
    codomain: &Chain,
    form: &DifferentialForm,
    spec: QuadratureSpec,
) -> Result<IntegerValued> {
    if domain.dim() != codomain.dim() {
        return Err(Error::DimensionMismatch {
            expected: codomain.dim().unwrap_or(0),
            found: domain.dim().unwrap_or(0),
        });
    }
    let below = codomain.integrate(form, spec)?;
    if below.abs() < 1e-12 {
        return Err(Error::Singular("test form integrates to zero over the codomain".into()));
    }
    let above = domain.remapped(f)?.integrate(form, spec)?;
    Ok(IntegerValued::new(above / below))
}

/// The local degree of a self-map of the unit sphere S² ⊂ ℝ³ at `p`: the sign
/// of det[f(p), Df·v₁, Df·v₂] for a tangent basis with det[p, v₁, v₂] > 0.
/// Summed over the preimages of a regular value this is the degree.
pub fn sphere_local_sign(f: &SmoothMap, p: [f64; 3]) -> Result<i64> {
    if f.domain_dim() != 3 || f.codomain_dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: f.domain_dim() });
    }
    let n = Vector3::from(p);
    let helper = if n.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    let v1 = n.cross(&helper).normalize();
    let v2 = n.cross(&v1);
    let j = f.jacobian_at(&p)?;
    let j = Matrix3::from_fn(|r, c| j[(r, c)]);
    let image = Vector3::from_vec(f.evaluate(&p)?);
    let det = Matrix3::from_columns(&[image, j * v1, j * v2]).determinant();
    if det.abs() < 1e-12 {
        return Err(Error::Singular(format!("{p:?} is a critical point")));
    }
    Ok(det.signum() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integration::shapes;
    use std::f64::consts::PI;

    fn q() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn wq() -> QuadratureSpec {
        QuadratureSpec::new(DEFAULT_WINDING_POINTS).unwrap()
    }

    #[test]
    fn winding_of_power_loops() {
        for k in -2i64..=3 {
            let l = Loop::parse(0.0, 2.0 * PI, &[&format!("cos({k}*t)"), &format!("sin({k}*t)")]).unwrap();
            let w = winding_number(&l, wq()).unwrap();
            assert_eq!(w.rounded, k);
            assert!(w.gap() < 1e-6, "{w:?}");
        }
    }

    #[test]
    fn winding_of_offset_loop_is_zero() {
        let l = Loop::parse(0.0, 2.0 * PI, &["2 + cos(t)", "sin(t)"]).unwrap();
        let w = winding_number(&l, wq()).unwrap();
        assert!(w.value.abs() < 1e-10, "{w:?}");
        let coarse = winding_number(&l, q()).unwrap();
        assert!(coarse.value.abs() > w.value.abs());
    }

    #[test]
    fn forward_then_backward_cancels() {
        let fwd = Loop::parse(0.0, 2.0 * PI, &["cos(t)", "sin(t)"]).unwrap();
        let chain = Chain::from_cells([(1, fwd.cell().clone()), (1, fwd.reversed().cell().clone())]).unwrap();
        assert!(chain.integrate(&angular_form(), q()).unwrap().abs() < 1e-14);
    }

    #[test]
    fn open_curves_are_rejected() {
        assert!(Loop::parse(0.0, PI, &["cos(t)", "sin(t)"]).is_err());
        assert!(Loop::new(shapes::unit_disk()).is_err());
    }

    #[test]
    fn loop_through_origin_is_singular() {
        let l = Loop::parse(0.0, 2.0 * PI, &["1 + cos(t)", "sin(t)"]).unwrap();
        // five nodes on [−π, π] include t = 0, where the loop is at the origin;
        // the pulled-back integrand is the constant 1/2 there, so only the image check catches it
        let hit = Loop::parse(-PI, PI, &["cos(t) - 1", "sin(t)"]).unwrap();
        assert!(winding_number(&l, wq()).is_ok());
        let odd = QuadratureSpec::new(5).unwrap();
        assert!(matches!(winding_number(&hit, odd), Err(Error::Singular(_))));
    }

    #[test]
    fn certificates() {
        let c = nonexactness_certificate(&angular_form(), &Chain::single(shapes::unit_circle()), q(), 1e-8).unwrap();
        assert!((c.integral - 2.0 * PI).abs() < 1e-10);
        assert_eq!(c.verdict, Verdict::NotExact);
        let s = nonexactness_certificate(&solid_angle_form(), &Chain::single(shapes::unit_sphere()), q(), 1e-8).unwrap();
        assert!((s.integral - 4.0 * PI).abs() < 1e-8);
        assert_eq!(s.verdict, Verdict::NotExact);
        let exact = DifferentialForm::parse("y*dx + x*dy", 2).unwrap();
        let c = nonexactness_certificate(&exact, &Chain::single(shapes::unit_circle()), q(), 1e-8).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn certificate_preconditions() {
        let open = Chain::single(shapes::interval(0.0, 1.0));
        let form = DifferentialForm::parse("dx", 1).unwrap();
        assert!(matches!(nonexactness_certificate(&form, &open, q(), 1e-8), Err(Error::InvalidInput(_))));
        let not_closed = DifferentialForm::parse("x*dy", 2).unwrap();
        let circle = Chain::single(shapes::unit_circle());
        assert_eq!(nonexactness_certificate(&not_closed, &circle, q(), 1e-8), Err(Error::NotClosed));
    }

    #[test]
    fn degrees() {
        let s2 = Chain::single(shapes::unit_sphere());
        let id = SmoothMap::identity(3);
        let d = degree_by_integration(&id, &s2, &s2, &solid_angle_form(), q()).unwrap();
        assert_eq!(d.rounded, 1);
        assert!(d.gap() < 1e-8);

        let antipodal = SmoothMap::linear(&[vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]]).unwrap();
        let d = degree_by_integration(&antipodal, &s2, &s2, &solid_angle_form(), q()).unwrap();
        // oracle: the antipode of a regular value has exactly one preimage
        let oracle = sphere_local_sign(&antipodal, [0.0, 0.6, 0.8]).unwrap();
        assert_eq!(oracle, -1);
        assert_eq!(d.rounded, oracle);

        let s1 = Chain::single(shapes::unit_circle());
        let square = SmoothMap::parse(2, &["x^2 - y^2", "2*x*y"]).unwrap();
        let d = degree_by_integration(&square, &s1, &s1, &angular_form(), q()).unwrap();
        assert_eq!(d.rounded, 2);
        assert!(d.gap() < 1e-8);
    }

    #[test]
    fn degree_needs_nonzero_denominator() {
        let s1 = Chain::single(shapes::unit_circle());
        let exact = DifferentialForm::parse("y*dx + x*dy", 2).unwrap();
        let id = SmoothMap::identity(2);
        assert!(matches!(degree_by_integration(&id, &s1, &s1, &exact, q()), Err(Error::Singular(_))));
    }

    #[test]
    fn decimal_text() {
        assert_eq!(exact(0.5), "0.5");
        assert_eq!(exact(-2.0), "(-2.0)");
        let tiny = crate::expr::ScalarExpr::parse(&exact(-1.5e-20), 1).unwrap();
        assert_eq!(tiny.evaluate(&[0.0]).unwrap(), -1.5e-20);
    }
}
