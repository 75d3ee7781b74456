//! Oriented surfaces in ℝ³: normals, the shape operator, curvature and area.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Vector3};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::MultiIndex;
use crate::integration::{Cell, Chain, QuadratureSpec};
use crate::tensor::AltTensor;

/// Step of the central differences used for the derivative of the normal.
pub const FD_STEP: f64 = 1e-5;

/// A closed oriented surface given as a chain of 2-cells in ℝ³, with its
/// Euler characteristic supplied by the caller.
#[derive(Clone, Debug, PartialEq)]
pub struct Surface {
    chain: Chain,
    euler_characteristic: i64,
}

impl Surface {
    pub fn new(chain: Chain, euler_characteristic: i64) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::InvalidInput("empty surface".into()));
        }
        if chain.dim() != Some(2) || chain.ambient() != Some(3) {
            return Err(Error::InvalidInput("a surface is a chain of 2-cells in R^3".into()));
        }
        Ok(Surface { chain, euler_characteristic })
    }

    pub fn single(cell: Cell, euler_characteristic: i64) -> Result<Self> {
        Surface::new(Chain::single(cell), euler_characteristic)
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.euler_characteristic
    }

    /// The same surface with the opposite orientation.
    pub fn reversed(&self) -> Surface {
        let cells = self.chain.cells().iter().map(|(w, c)| (-w, c.clone()));
        Surface { chain: Chain::from_cells(cells).expect("same cells"), euler_characteristic: self.euler_characteristic }
    }
}

fn require_surface_cell(cell: &Cell) -> Result<()> {
    if cell.dim() != 2 || cell.ambient() != 3 {
        return Err(Error::InvalidInput("expected a 2-cell in R^3".into()));
    }
    Ok(())
}

/// The two parameter tangents at a full parameter point.
fn tangents(cell: &Cell, p: &[f64]) -> Result<(Vector3<f64>, Vector3<f64>)> {
    require_surface_cell(cell)?;
    let j = cell.map().jacobian_at(p)?;
    let axes = cell.free_axes();
    let col = |a: usize| Vector3::new(j[(0, a)], j[(1, a)], j[(2, a)]);
    Ok((col(axes[0]), col(axes[1])))
}

fn unit_normal(cell: &Cell, p: &[f64], sign: f64) -> Result<Vector3<f64>> {
    let (tu, tv) = tangents(cell, p)?;
    let n = tu.cross(&tv);
    let len = n.norm();
    if !(len > 1e-12 * (tu.norm() * tv.norm()).max(1e-300)) {
        return Err(Error::Singular(format!("the cell is not immersed at parameter point {p:?}")));
    }
    Ok(n * (sign * cell.orientation() as f64 / len))
}

/// Unit normal: ∂ᵤ × ∂ᵥ normalized, times the cell orientation.
pub fn gauss_map(cell: &Cell, p: &[f64]) -> Result<Vector3<f64>> {
    unit_normal(cell, p, 1.0)
}

/// dn along each free parameter, by central differences.
fn normal_derivatives(cell: &Cell, p: &[f64], sign: f64) -> Result<[Vector3<f64>; 2]> {
    let axes = cell.free_axes();
    let mut out = [Vector3::zeros(); 2];
    for (slot, &a) in axes.iter().enumerate() {
        let mut plus = p.to_vec();
        let mut minus = p.to_vec();
        plus[a] += FD_STEP;
        minus[a] -= FD_STEP;
        out[slot] = (unit_normal(cell, &plus, sign)? - unit_normal(cell, &minus, sign)?) / (2.0 * FD_STEP);
    }
    Ok(out)
}

/// The Weingarten map S = −dn in the basis (∂ᵤ, ∂ᵥ) of the tangent plane.
pub fn shape_operator(cell: &Cell, p: &[f64]) -> Result<Matrix2<f64>> {
    shape_operator_signed(cell, p, 1.0)
}

fn shape_operator_signed(cell: &Cell, p: &[f64], sign: f64) -> Result<Matrix2<f64>> {
    let (tu, tv) = tangents(cell, p)?;
    let dn = normal_derivatives(cell, p, sign)?;
    let first = Matrix2::new(tu.dot(&tu), tu.dot(&tv), tv.dot(&tu), tv.dot(&tv));
    // dn_j = Σ_i M_ij t_i, so Gᵀ-projections give I·M
    let proj = Matrix2::new(tu.dot(&dn[0]), tu.dot(&dn[1]), tv.dot(&dn[0]), tv.dot(&dn[1]));
    let inv = first
        .try_inverse()
        .ok_or_else(|| Error::Singular(format!("degenerate first fundamental form at {p:?}")))?;
    Ok(-(inv * proj))
}

/// K = det S.
pub fn gauss_curvature(cell: &Cell, p: &[f64]) -> Result<f64> {
    Ok(shape_operator(cell, p)?.determinant())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GaussBonnetReport {
    pub integral: f64,
    pub expected: f64,
    pub residual: f64,
}

/// ∫ K dA over the surface against 2πχ.
pub fn gauss_bonnet_check(surface: &Surface, spec: QuadratureSpec) -> Result<GaussBonnetReport> {
    let mut integral = 0.0;
    for (w, cell) in surface.chain.cells() {
        let part = cell.quadrature(spec, |p| {
            let (tu, tv) = tangents(cell, p)?;
            Ok(gauss_curvature(cell, p)? * tu.cross(&tv).norm())
        })?;
        integral += w.unsigned_abs() as f64 * part;
    }
    let expected = 2.0 * PI * surface.euler_characteristic as f64;
    Ok(GaussBonnetReport { integral, expected, residual: (integral - expected).abs() })
}

/// ∫ n*ω₂ where n is the Gauss map into S² and ω₂ = x dy∧dz + y dz∧dx + z dx∧dy.
/// Pointwise n*ω₂(∂ᵤ, ∂ᵥ) = n · (∂ᵤn × ∂ᵥn), which is K times the area element.
pub fn gauss_map_pullback_integral(surface: &Surface, spec: QuadratureSpec) -> Result<f64> {
    let mut total = 0.0;
    for (w, cell) in surface.chain.cells() {
        let sign = w.signum() as f64;
        let part = cell.quadrature(spec, |p| {
            let n = unit_normal(cell, p, sign)?;
            let [du, dv] = normal_derivatives(cell, p, sign)?;
            Ok(n.dot(&du.cross(&dv)))
        })?;
        // n·(∂n × ∂n) is odd in the orientation, so this sign makes the total invariant
        total += (*w as f64) * cell.orientation() as f64 * part;
    }
    Ok(total)
}

/// The area form i_n(dV) = n₁ dy∧dz + n₂ dz∧dx + n₃ dx∧dy of the cell at a
/// parameter point, as an alternating 2-tensor on ℝ³.
pub fn hypersurface_volume_form(cell: &Cell, p: &[f64]) -> Result<AltTensor> {
    let n = gauss_map(cell, p)?;
    let idx = |a: usize, b: usize| MultiIndex::new(vec![a, b]).expect("increasing");
    AltTensor::from_coefficients(3, 2, [(idx(1, 2), n.x), (idx(0, 2), -n.y), (idx(0, 1), n.z)])
}

/// Σ w ∫ i_n(dV)(∂ᵤ, ∂ᵥ) over the cells: the area for a consistently oriented chain.
pub fn area(chain: &Chain, spec: QuadratureSpec) -> Result<f64> {
    let mut total = 0.0;
    for (w, cell) in chain.cells() {
        require_surface_cell(cell)?;
        let part = cell.quadrature(spec, |p| {
            let (tu, tv) = tangents(cell, p)?;
            let omega = hypersurface_volume_form(cell, p)?;
            omega.evaluate(&[tu.as_slice(), tv.as_slice()])
        })?;
        total += (*w as f64) * cell.orientation() as f64 * part;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integration::shapes;
    use crate::map::SmoothMap;

    fn graph(expr: &str) -> Cell {
        let map = SmoothMap::parse(2, &["x", "y", expr]).unwrap();
        Cell::new(&[(-1.0, 1.0), (-1.0, 1.0)], map, 1).unwrap()
    }

    #[test]
    fn sphere_is_round() {
        let s = shapes::unit_sphere();
        for p in [[0.4, 1.0], [1.3, 4.0], [2.9, 0.2]] {
            let n = gauss_map(&s, &p).unwrap();
            let x = Vector3::from_vec(s.map().evaluate(&p).unwrap());
            assert!((n - x).norm() < 1e-12);
            assert!((gauss_curvature(&s, &p).unwrap() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn saddle_is_negative_either_way() {
        let c = graph("x^2 - y^2");
        let k = gauss_curvature(&c, &[0.0, 0.0]).unwrap();
        let k_rev = gauss_curvature(&c.reversed(), &[0.0, 0.0]).unwrap();
        assert!(k < 0.0 && k_rev < 0.0);
        assert!((k - k_rev).abs() < 1e-9);
        assert!((k + 4.0).abs() < 1e-6);
    }

    #[test]
    fn quadratic_graphs() {
        // oracle: for z = f(x,y) with ∇f(0) = 0, K(0) = f_xx f_yy − f_xy² = 4ac − b²
        for (a, b, c) in [(1, 0, 1), (2, 3, -1), (1, 2, 1), (-1, 1, 3)] {
            let cell = graph(&format!("{a}*x^2 + {b}*x*y + {c}*y^2"));
            let k = gauss_curvature(&cell, &[0.0, 0.0]).unwrap();
            assert!((k - (4 * a * c - b * b) as f64).abs() < 1e-5, "{a} {b} {c}: {k}");
        }
    }

    #[test]
    fn rank_deficient_points_error() {
        let pinched = Cell::new(&[(0.0, 1.0), (0.0, 1.0)], SmoothMap::parse(2, &["x", "x", "0"]).unwrap(), 1).unwrap();
        assert!(matches!(gauss_map(&pinched, &[0.5, 0.5]), Err(Error::Singular(_))));
    }

    #[test]
    fn gauss_bonnet_examples() {
        let spec = QuadratureSpec::default();
        let r = gauss_bonnet_check(&Surface::single(shapes::unit_sphere(), 2).unwrap(), spec).unwrap();
        assert!(r.residual < 1e-4, "{r:?}");
        let r = gauss_bonnet_check(&Surface::single(shapes::torus(2.0, 1.0), 0).unwrap(), spec).unwrap();
        assert!(r.residual < 1e-4, "{r:?}");
        // curvature on the (1, 2, 3) ellipsoid is concentrated near the ends of
        // the short axes; 16 points per axis leave a 1e-2 error, 32 points 2e-5
        let ell = Surface::single(shapes::ellipsoid(1.0, 2.0, 3.0), 2).unwrap();
        let coarse = gauss_bonnet_check(&ell, spec).unwrap();
        let r = gauss_bonnet_check(&ell, QuadratureSpec::new(32).unwrap()).unwrap();
        assert!(r.residual < 1e-3, "{r:?}");
        assert!(r.residual < coarse.residual);
    }

    #[test]
    fn pullback_of_area_matches_curvature_integral() {
        let spec = QuadratureSpec::default();
        for s in [
            Surface::single(shapes::unit_sphere(), 2).unwrap(),
            Surface::single(shapes::torus(2.0, 1.0), 0).unwrap(),
            Surface::single(shapes::ellipsoid(1.0, 1.5, 2.0), 2).unwrap().reversed(),
        ] {
            let a = gauss_map_pullback_integral(&s, spec).unwrap();
            let b = gauss_bonnet_check(&s, spec).unwrap().integral;
            assert!((a - b).abs() < 1e-4, "{a} vs {b}");
        }
    }

    #[test]
    fn areas() {
        let spec = QuadratureSpec::default();
        let sphere = area(&Chain::single(shapes::unit_sphere()), spec).unwrap();
        assert!((sphere - 4.0 * PI).abs() < 1e-6);
        // oracle: parametric area ∫|∂ᵤ × ∂ᵥ|
        let s = shapes::unit_sphere();
        let direct = s
            .quadrature(spec, |p| {
                let (tu, tv) = tangents(&s, p)?;
                Ok(tu.cross(&tv).norm())
            })
            .unwrap();
        assert!((sphere - direct).abs() < 1e-12);
        let flat = Cell::new(&[(0.0, 1.0), (0.0, 1.0)], SmoothMap::parse(2, &["x", "y", "0"]).unwrap(), 1).unwrap();
        assert!((area(&Chain::single(flat), spec).unwrap() - 1.0).abs() < 1e-14);
        let torus = area(&Chain::single(shapes::torus(2.0, 1.0)), spec).unwrap();
        assert!((torus - 8.0 * PI * PI).abs() < 1e-6);
    }
}
