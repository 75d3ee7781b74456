//! Standard parametrized cells.

use std::f64::consts::PI;

use super::Cell;
use crate::map::SmoothMap;

fn cell(bounds: &[(f64, f64)], literal: &str, orientation: i8) -> Cell {
    let map = SmoothMap::parse_literal(literal).expect("built-in map literal");
    Cell::new(bounds, map, orientation).expect("built-in cell")
}

/// [a, b] ⊂ ℝ with t ↦ t.
pub fn interval(a: f64, b: f64) -> Cell {
    cell(&[(a, b)], "map(t) = t", 1)
}

pub fn unit_square() -> Cell {
    cell(&[(0.0, 1.0), (0.0, 1.0)], "map(u,v) = u; v", 1)
}

/// θ ∈ [0, 2π] ↦ (cos θ, sin θ), counterclockwise.
pub fn unit_circle() -> Cell {
    circle(1.0)
}

pub fn circle(radius: f64) -> Cell {
    let lit = format!("map(theta) = {r}*cos(theta); {r}*sin(theta)", r = exact(radius));
    cell(&[(0.0, 2.0 * PI)], &lit, 1)
}

/// (r, θ) ↦ (r cos θ, r sin θ) on [0,1]×[0,2π].
pub fn unit_disk() -> Cell {
    cell(&[(0.0, 1.0), (0.0, 2.0 * PI)], "map(r,theta) = r*cos(theta); r*sin(theta)", 1)
}

/// Spherical chart (φ, θ) ∈ [0,π]×[0,2π] with the outward orientation.
pub fn unit_sphere() -> Cell {
    cell(
        &[(0.0, PI), (0.0, 2.0 * PI)],
        "map(phi,theta) = sin(phi)*cos(theta); sin(phi)*sin(theta); cos(phi)",
        1,
    )
}

/// φ ∈ [0, π/2]: the part of the unit sphere with z ≥ 0, upward normal.
pub fn upper_hemisphere() -> Cell {
    cell(
        &[(0.0, PI / 2.0), (0.0, 2.0 * PI)],
        "map(phi,theta) = sin(phi)*cos(theta); sin(phi)*sin(theta); cos(phi)",
        1,
    )
}

/// The unit disk in the plane z = 0, upward normal.
pub fn equatorial_disk() -> Cell {
    cell(&[(0.0, 1.0), (0.0, 2.0 * PI)], "map(r,theta) = r*cos(theta); r*sin(theta); 0", 1)
}

/// The solid upper half of the unit ball, standard orientation.
pub fn half_ball() -> Cell {
    cell(
        &[(0.0, 1.0), (0.0, PI / 2.0), (0.0, 2.0 * PI)],
        "map(rho,phi,theta) = rho*sin(phi)*cos(theta); rho*sin(phi)*sin(theta); rho*cos(phi)",
        1,
    )
}

/// Torus of revolution about the z-axis, outward normal.
pub fn torus(major: f64, minor: f64) -> Cell {
    let lit = format!(
        "map(u,v) = ({a} + {b}*cos(v))*cos(u); ({a} + {b}*cos(v))*sin(u); {b}*sin(v)",
        a = exact(major),
        b = exact(minor)
    );
    cell(&[(0.0, 2.0 * PI), (0.0, 2.0 * PI)], &lit, 1)
}

/// Ellipsoid with semi-axes a, b, c, outward normal.
pub fn ellipsoid(a: f64, b: f64, c: f64) -> Cell {
    let lit = format!(
        "map(phi,theta) = {a}*sin(phi)*cos(theta); {b}*sin(phi)*sin(theta); {c}*cos(phi)",
        a = exact(a),
        b = exact(b),
        c = exact(c)
    );
    cell(&[(0.0, PI), (0.0, 2.0 * PI)], &lit, 1)
}

/// Decimal text that parses back to the same double (the symbolic layer
/// takes exact decimals, and exponents only as integer powers of 10).
pub(crate) fn exact(v: f64) -> String {
    let s = format!("{v:?}");
    if let Some((m, e)) = s.split_once('e') {
        return format!("({m}*10^{e})");
    }
    if v < 0.0 {
        format!("({s})")
    } else {
        s
    }
}
