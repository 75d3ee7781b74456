//! An explicit generator of H¹(S¹) from the Mayer–Vietoris connecting map.
//!
//! S¹ is covered by U (the part with y > −1/10) and V (y < 1/10); U∩V has
//! two components, near (1, 0) and near (−1, 0). With a partition of unity
//! ρ_U + ρ_V = 1, where ρ_V rises from 0 at y = −1/10 to 1 at y = 1/10, the
//! connecting map sends a locally constant γ on U∩V to the 1-form equal to
//! d(ρ_V γ) on U and −d(ρ_U γ) on V. Both expressions reduce to γ dρ_V on the
//! overlap and vanish elsewhere.
//!
//! ρ_V is the cubic smoothstep 3s² − 2s³ in s = 5y + 1/2: C¹ rather than C^∞,
//! which is enough for the integral of its differential.

use crate::error::Result;
use crate::expr::ScalarExpr;
use crate::form::DifferentialForm;
use crate::integration::{Cell, QuadratureSpec};
use crate::map::SmoothMap;

/// Half-width of the overlap band in y.
pub const BAND: f64 = 0.1;

#[derive(Clone, Debug)]
pub struct ConnectingGenerator {
    /// Values of γ on the x > 0 and x < 0 components of U∩V.
    pub class: (i64, i64),
    /// ρ_V on the band |y| ≤ 1/10, as a polynomial in y (axis 1 of ℝ²).
    pub rho_v: ScalarExpr,
    /// The form on the x > 0 component; zero outside the band.
    pub east: DifferentialForm,
    /// The form on the x < 0 component; zero outside the band.
    pub west: DifferentialForm,
    /// ∫ over S¹, counterclockwise.
    pub integral: f64,
}

impl ConnectingGenerator {
    /// The 1-form's (dx, dy) coefficients at a point of ℝ².
    pub fn value_at(&self, point: [f64; 2]) -> Result<[f64; 2]> {
        if point[1].abs() > BAND {
            return Ok([0.0, 0.0]);
        }
        let piece = if point[0] > 0.0 { &self.east } else { &self.west };
        let mut out = [0.0; 2];
        for (idx, c) in piece.terms() {
            out[idx.as_slice()[0]] = c.evaluate(&point)?;
        }
        Ok(out)
    }
}

/// ρ_V(y) on all of ℝ.
pub fn rho_v(y: f64) -> f64 {
    let s = (5.0 * y + 0.5).clamp(0.0, 1.0);
    s * s * (3.0 - 2.0 * s)
}

/// d♯ applied to the locally constant function with value `class.0` on
/// the x > 0 component and `class.1` on the x < 0 component.
pub fn s1_connecting_generator(class: (i64, i64), spec: QuadratureSpec) -> Result<ConnectingGenerator> {
    let y = ScalarExpr::var(1);
    let s = y.scale(&5.into()) + ScalarExpr::ratio(1, 2);
    let s2 = &s * &s;
    let rho_v = s2.scale(&3.into()) - (&s2 * &s).scale(&2.into());
    let d_rho = DifferentialForm::scalar(2, rho_v.clone()).d();
    let east = d_rho.scale(&ScalarExpr::int(class.0));
    let west = d_rho.scale(&ScalarExpr::int(class.1));
    let edge = BAND.asin();
    let arc = |a: f64, b: f64| -> Result<Cell> {
        Cell::new(&[(a, b)], SmoothMap::parse(1, &["cos(x)", "sin(x)"])?, 1)
    };
    let pi = std::f64::consts::PI;
    let integral = arc(-edge, edge)?.integrate(&east, spec)? + arc(pi - edge, pi + edge)?.integrate(&west, spec)?;
    Ok(ConnectingGenerator { class, rho_v, east, west, integral })
}
