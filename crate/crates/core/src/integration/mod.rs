//! Integration of forms over oriented parametrized boxes and their chains.
//!
//! A [`Cell`] is a box in parameter space, some of whose coordinates may be
//! frozen (the faces of a higher cell), mapped into ℝᴺ. The integral of a
//! k-form over a cell with k free parameters is the orientation times the
//! Gauss–Legendre quadrature of the coefficient of its pullback on the free
//! parameter differentials.

mod quadrature;
pub mod shapes;

pub use quadrature::{gauss_legendre, QuadratureSpec, DEFAULT_POINTS, MAX_POINTS, MIN_POINTS};

use crate::error::{Error, Result};
use crate::form::{DifferentialForm, MultiIndex};
use crate::map::SmoothMap;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Param {
    Interval(f64, f64),
    Fixed(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    params: Vec<Param>,
    map: SmoothMap,
    orientation: i8,
}

impl Cell {
    /// A cell over the box Π[aᵢ, bᵢ] with all parameters free.
    pub fn new(bounds: &[(f64, f64)], map: SmoothMap, orientation: i8) -> Result<Self> {
        let params = bounds.iter().map(|&(a, b)| Param::Interval(a, b)).collect();
        Cell::with_params(params, map, orientation)
    }

    pub fn with_params(params: Vec<Param>, map: SmoothMap, orientation: i8) -> Result<Self> {
        if map.domain_dim() != params.len() {
            return Err(Error::DimensionMismatch { expected: params.len(), found: map.domain_dim() });
        }
        for p in &params {
            match *p {
                Param::Interval(a, b) if !(a < b) || !a.is_finite() || !b.is_finite() => {
                    return Err(Error::InvalidInput(format!("interval [{a}, {b}] is empty or unbounded")));
                }
                Param::Fixed(v) if !v.is_finite() => {
                    return Err(Error::InvalidInput(format!("fixed parameter {v} is not finite")));
                }
                _ => {}
            }
        }
        if orientation != 1 && orientation != -1 {
            return Err(Error::InvalidInput(format!("orientation {orientation} is not ±1")));
        }
        Ok(Cell { params, map, orientation })
    }

    pub fn params(&self) -> &[Param] {
        &self.params
    }

    pub fn map(&self) -> &SmoothMap {
        &self.map
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    /// Number of free parameters.
    pub fn dim(&self) -> usize {
        self.free_axes().len()
    }

    pub fn ambient(&self) -> usize {
        self.map.codomain_dim()
    }

    pub fn free_axes(&self) -> Vec<usize> {
        self.params
            .iter()
            .enumerate()
            .filter(|(_, p)| matches!(p, Param::Interval(..)))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn reversed(&self) -> Cell {
        Cell { orientation: -self.orientation, ..self.clone() }
    }

    /// Replaces the parametrization with `outer ∘ map`.
    pub fn remapped(&self, outer: &SmoothMap) -> Result<Cell> {
        Ok(Cell { map: outer.compose(&self.map)?, ..self.clone() })
    }

    /// The 2k faces with their boundary signs: freezing the j-th free
    /// parameter (1-based) at bⱼ gives sign (−1)^{j−1}, at aⱼ sign (−1)^j,
    /// each times the cell orientation.
    pub fn faces(&self) -> Vec<(i64, Cell)> {
        let mut out = Vec::new();
        for (j, axis) in self.free_axes().into_iter().enumerate() {
            let Param::Interval(a, b) = self.params[axis] else { unreachable!() };
            let upper = if j % 2 == 0 { 1 } else { -1 };
            for (value, sign) in [(a, -upper), (b, upper)] {
                let mut params = self.params.clone();
                params[axis] = Param::Fixed(value);
                let face = Cell { params, map: self.map.clone(), orientation: 1 };
                out.push((sign * self.orientation as i64, face));
            }
        }
        out
    }

    /// The parameter point with free coordinates taken from `free`.
    fn point(&self, free: &[f64]) -> Vec<f64> {
        let mut it = free.iter();
        self.params
            .iter()
            .map(|p| match p {
                Param::Interval(..) => *it.next().expect("one value per free axis"),
                Param::Fixed(v) => *v,
            })
            .collect()
    }

    /// Quadrature of a function of the full parameter point over the free box.
    pub fn quadrature(
        &self,
        spec: QuadratureSpec,
        mut f: impl FnMut(&[f64]) -> Result<f64>,
    ) -> Result<f64> {
        let rules: Vec<Vec<(f64, f64)>> = self
            .params
            .iter()
            .filter_map(|p| match *p {
                Param::Interval(a, b) => Some(spec.rule(a, b)),
                Param::Fixed(_) => None,
            })
            .collect();
        let k = rules.len();
        let mut counter = vec![0usize; k];
        let mut free = vec![0.0; k];
        let mut total = 0.0;
        loop {
            let mut w = 1.0;
            for (r, &c) in counter.iter().enumerate() {
                free[r] = rules[r][c].0;
                w *= rules[r][c].1;
            }
            total += w * f(&self.point(&free))?;
            // lexicographic odometer, last axis fastest
            let mut r = k;
            loop {
                if r == 0 {
                    return Ok(total);
                }
                r -= 1;
                counter[r] += 1;
                if counter[r] < rules[r].len() {
                    break;
                }
                counter[r] = 0;
            }
        }
    }

    pub fn integrate(&self, form: &DifferentialForm, spec: QuadratureSpec) -> Result<f64> {
        let k = self.dim();
        if form.degree() != k {
            return Err(Error::DegreeMismatch { expected: k, found: form.degree() });
        }
        if form.dim() != self.ambient() {
            return Err(Error::DimensionMismatch { expected: self.ambient(), found: form.dim() });
        }
        if form.is_zero() {
            return Ok(0.0);
        }
        let pulled = self.map.pullback(form)?;
        let idx = MultiIndex::new(self.free_axes()).expect("free axes are increasing");
        let coeff = pulled.coefficient(&idx).compile();
        let value = self.quadrature(spec, |p| {
            coeff.eval(p).map_err(|e| Error::Singular(format!("at parameter point {p:?}: {e}")))
        })?;
        Ok(self.orientation as f64 * value)
    }
}

/// An integer combination of cells of equal dimension in a common ℝᴺ.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Chain {
    cells: Vec<(i64, Cell)>,
}

impl Chain {
    pub fn new() -> Self {
        Chain::default()
    }

    pub fn from_cells(cells: impl IntoIterator<Item = (i64, Cell)>) -> Result<Self> {
        let mut out = Chain::new();
        for (w, c) in cells {
            out.push(w, c)?;
        }
        Ok(out)
    }

    pub fn single(cell: Cell) -> Self {
        Chain { cells: vec![(1, cell)] }
    }

    pub fn push(&mut self, weight: i64, cell: Cell) -> Result<()> {
        if let Some((_, first)) = self.cells.first() {
            if first.dim() != cell.dim() {
                return Err(Error::DegreeMismatch { expected: first.dim(), found: cell.dim() });
            }
            if first.ambient() != cell.ambient() {
                return Err(Error::DimensionMismatch { expected: first.ambient(), found: cell.ambient() });
            }
        }
        if weight != 0 {
            self.cells.push((weight, cell));
        }
        Ok(())
    }

    pub fn cells(&self) -> &[(i64, Cell)] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Dimension of the cells; `None` for the empty chain.
    pub fn dim(&self) -> Option<usize> {
        self.cells.first().map(|(_, c)| c.dim())
    }

    pub fn ambient(&self) -> Option<usize> {
        self.cells.first().map(|(_, c)| c.ambient())
    }

    pub fn boundary(&self) -> Result<Chain> {
        let mut out = Chain::new();
        for (w, c) in &self.cells {
            if c.dim() == 0 {
                return Err(Error::DegreeZero);
            }
            for (s, face) in c.faces() {
                out.push(w * s, face)?;
            }
        }
        Ok(out)
    }

    pub fn remapped(&self, outer: &SmoothMap) -> Result<Chain> {
        Chain::from_cells(self.cells.iter().map(|(w, c)| Ok((*w, c.remapped(outer)?))).collect::<Result<Vec<_>>>()?)
    }

    /// Terms summed in list order.
    pub fn integrate(&self, form: &DifferentialForm, spec: QuadratureSpec) -> Result<f64> {
        let mut total = 0.0;
        for (w, c) in &self.cells {
            total += *w as f64 * c.integrate(form, spec)?;
        }
        Ok(total)
    }

    /// The signed points of a chain of 0-cells.
    pub fn to_points(&self) -> Result<PointChain> {
        let mut out = PointChain::default();
        for (w, c) in &self.cells {
            if c.dim() != 0 {
                return Err(Error::DegreeMismatch { expected: 0, found: c.dim() });
            }
            let p = c.map.evaluate(&c.point(&[]))?;
            out.points.push((w * c.orientation as i64, p));
        }
        Ok(out)
    }
}

/// A signed finite set of points.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PointChain {
    pub points: Vec<(i64, Vec<f64>)>,
}

impl PointChain {
    pub fn new(points: Vec<(i64, Vec<f64>)>) -> Self {
        PointChain { points }
    }

    /// Σ ± f(x) for a 0-form f.
    pub fn integrate(&self, form: &DifferentialForm) -> Result<f64> {
        let f = form.as_scalar().ok_or(Error::DegreeMismatch { expected: 0, found: form.degree() })?;
        let mut total = 0.0;
        for (s, p) in &self.points {
            if p.len() != form.dim() {
                return Err(Error::DimensionMismatch { expected: form.dim(), found: p.len() });
            }
            let v = f.evaluate(p).map_err(|e| Error::Singular(format!("at {p:?}: {e}")))?;
            total += *s as f64 * v;
        }
        Ok(total)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StokesReport {
    /// ∫_c dω
    pub lhs: f64,
    /// ∫_{∂c} ω
    pub rhs: f64,
    pub residual: f64,
}

pub fn stokes_check(form: &DifferentialForm, chain: &Chain, spec: QuadratureSpec) -> Result<StokesReport> {
    if let Some(k) = chain.dim() {
        if form.degree() + 1 != k {
            return Err(Error::DegreeMismatch { expected: k.saturating_sub(1), found: form.degree() });
        }
    }
    let lhs = chain.integrate(&form.d(), spec)?;
    let rhs = chain.boundary()?.integrate(form, spec)?;
    Ok(StokesReport { lhs, rhs, residual: (lhs - rhs).abs() })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransferReport {
    pub hemisphere: f64,
    pub disk: f64,
    pub half_ball: f64,
    pub residual: f64,
}

/// Compares ∫_S ω − ∫_{S′} ω with ∫_B dω for the upper unit hemisphere S,
/// the equatorial disk S′ (both oriented by the upward normal) and the
/// half ball B, whose boundary is S − S′.
pub fn hemisphere_transfer_check(form: &DifferentialForm, spec: QuadratureSpec) -> Result<TransferReport> {
    if form.dim() != 3 || form.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: form.degree() });
    }
    let hemisphere = shapes::upper_hemisphere().integrate(form, spec)?;
    let disk = shapes::equatorial_disk().integrate(form, spec)?;
    let half_ball = shapes::half_ball().integrate(&form.d(), spec)?;
    Ok(TransferReport { hemisphere, disk, half_ball, residual: (hemisphere - disk - half_ball).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn form(s: &str, n: usize) -> DifferentialForm {
        DifferentialForm::parse(s, n).unwrap()
    }

    #[test]
    fn circle_period() {
        let v = shapes::unit_circle().integrate(&form("x*dy - y*dx", 2), QuadratureSpec::new(32).unwrap()).unwrap();
        assert!((v - 2.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn zero_form_integrates_to_zero() {
        let z = DifferentialForm::zero(2, 1);
        assert_eq!(shapes::unit_circle().integrate(&z, QuadratureSpec::default()).unwrap(), 0.0);
    }

    #[test]
    fn interval_boundary_points() {
        let c = Chain::single(shapes::interval(0.0, 1.0));
        let pts = c.boundary().unwrap().to_points().unwrap();
        assert_eq!(pts.points, vec![(-1, vec![0.0]), (1, vec![1.0])]);
        let f = form("x^3 + x", 1);
        assert_eq!(pts.integrate(&f).unwrap(), 2.0);
        let r = stokes_check(&f, &c, QuadratureSpec::default()).unwrap();
        assert!(r.residual < 1e-14);
    }

    #[test]
    fn signed_point_sum() {
        let pc = PointChain::new(vec![(1, vec![3.0]), (-1, vec![1.0])]);
        assert_eq!(pc.integrate(&form("x", 1)).unwrap(), 2.0);
    }

    #[test]
    fn square_boundary_is_counterclockwise() {
        let sq = Chain::single(shapes::unit_square());
        let v = sq.boundary().unwrap().integrate(&form("x*dy", 2), QuadratureSpec::default()).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cancellation_of_opposite_weights() {
        let c = shapes::unit_circle();
        let chain = Chain::from_cells([(1, c.clone()), (-1, c)]).unwrap();
        assert_eq!(chain.integrate(&form("x*dy", 2), QuadratureSpec::default()).unwrap(), 0.0);
    }

    #[test]
    fn degree_mismatch_is_reported() {
        let c = shapes::unit_circle();
        assert!(matches!(
            c.integrate(&form("dx/\\dy", 2), QuadratureSpec::default()),
            Err(Error::DegreeMismatch { .. })
        ));
        let disk = Chain::single(shapes::unit_disk());
        assert!(stokes_check(&form("dx/\\dy", 2), &disk, QuadratureSpec::default()).is_err());
    }

    #[test]
    fn singular_node_is_an_error() {
        let c = Cell::new(&[(-1.0, 1.0)], SmoothMap::parse(1, &["x", "0"]).unwrap(), 1).unwrap();
        let w = form("(x*dy - y*dx)/(x^2+y^2) + dx/(x^2+y^2)", 2);
        // an odd number of nodes puts one at the origin
        assert!(matches!(c.integrate(&w, QuadratureSpec::new(3).unwrap()), Err(Error::Singular(_))));
    }

    #[test]
    fn disk_green_case() {
        let disk = Chain::single(shapes::unit_disk());
        let r = stokes_check(&form("x*dy", 2), &disk, QuadratureSpec::default()).unwrap();
        assert!((r.lhs - PI).abs() < 1e-12 && r.residual < 1e-12);
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let cube = Chain::single(shapes::half_ball());
        let bb = cube.boundary().unwrap().boundary().unwrap();
        let v = bb.integrate(&form("x*y*dz + exp(z)*dx", 3), QuadratureSpec::default()).unwrap();
        assert!(v.abs() < 1e-10);
    }

    #[test]
    fn invalid_cells() {
        let m = SmoothMap::identity(1);
        assert!(Cell::new(&[(1.0, 0.0)], m.clone(), 1).is_err());
        assert!(Cell::new(&[(0.0, 1.0)], m.clone(), 0).is_err());
        assert!(Cell::new(&[(0.0, 1.0), (0.0, 1.0)], m, 1).is_err());
    }
}
