//! The Gauss linking integral.
//!
//! For disjoint loops γ₁, γ₂ in ℝ³ the map (s, t) ↦ (γ₂(t) − γ₁(s))/|γ₂(t) − γ₁(s)|
//! sends the torus to S², and its degree is the linking number. Pulling the
//! solid-angle form back along D(s, t) = γ₂(t) − γ₁(s) gives the coefficient
//!
//!   D · (∂ₛD × ∂ₜD) / |D|³ = (γ₁ − γ₂) · (γ₁′ × γ₂′) / |γ₁ − γ₂|³,
//!
//! which is the kernel frozen in [`linking_kernel`].

use std::f64::consts::PI;

use nalgebra::Vector3;

use super::{solid_angle_form, IntegerValued, Loop};
use crate::error::{Error, Result};
use crate::expr::ScalarExpr;
use crate::form::MultiIndex;
use crate::integration::{Param, QuadratureSpec};
use crate::map::SmoothMap;

/// Gauss–Legendre points per loop used when the caller does not ask for more.
pub const DEFAULT_LINKING_POINTS: usize = 48;

/// Closer than this fraction of the loops' extent counts as touching.
const MIN_SEPARATION: f64 = 1e-3;

pub fn linking_kernel(p1: Vector3<f64>, d1: Vector3<f64>, p2: Vector3<f64>, d2: Vector3<f64>) -> f64 {
    let r = p1 - p2;
    r.dot(&d1.cross(&d2)) / r.norm().powi(3)
}

fn interval(l: &Loop) -> (f64, f64) {
    match l.cell().params()[0] {
        Param::Interval(a, b) => (a, b),
        Param::Fixed(_) => unreachable!("loops have one free parameter"),
    }
}

fn require_space_loop(l: &Loop) -> Result<()> {
    if l.ambient() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: l.ambient() });
    }
    Ok(())
}

/// (weight × orientation, point, velocity) at one node.
type Sample = (f64, Vector3<f64>, Vector3<f64>);

fn samples(l: &Loop, spec: QuadratureSpec) -> Result<Vec<Sample>> {
    let (a, b) = interval(l);
    let o = l.cell().orientation() as f64;
    spec.rule(a, b)
        .into_iter()
        .map(|(t, w)| {
            let p = Vector3::from_vec(l.cell().map().evaluate(&[t])?);
            let j = l.cell().map().jacobian_at(&[t])?;
            Ok((w * o, p, Vector3::new(j[(0, 0)], j[(1, 0)], j[(2, 0)])))
        })
        .collect()
}

/// (1/4π) ∫∫ of the Gauss kernel over the parameter torus.
pub fn linking_number(l1: &Loop, l2: &Loop, spec: QuadratureSpec) -> Result<IntegerValued> {
    require_space_loop(l1)?;
    require_space_loop(l2)?;
    let s1 = samples(l1, spec)?;
    let s2 = samples(l2, spec)?;
    let extent = s1
        .iter()
        .chain(&s2)
        .flat_map(|(_, p, _)| s1.iter().map(move |(_, q, _)| (p - q).norm()))
        .fold(0.0, f64::max)
        .max(1e-300);
    let mut total = 0.0;
    for (w1, p1, d1) in &s1 {
        for (w2, p2, d2) in &s2 {
            let dist = (p1 - p2).norm();
            if dist < MIN_SEPARATION * extent {
                return Err(Error::Singular(format!("loops come within {dist:e} of each other")));
            }
            total += w1 * w2 * linking_kernel(*p1, *d1, *p2, *d2);
        }
    }
    Ok(IntegerValued::new(total / (4.0 * PI)))
}

/// Largest difference between [`linking_kernel`] and the coefficient of
/// D*(solid-angle form) computed symbolically, over the given (s, t) pairs.
pub fn linking_integrand_crosscheck(l1: &Loop, l2: &Loop, pairs: &[(f64, f64)]) -> Result<f64> {
    require_space_loop(l1)?;
    require_space_loop(l2)?;
    let to_t = [ScalarExpr::var(1)];
    let comps: Vec<ScalarExpr> = l1
        .cell()
        .map()
        .components()
        .iter()
        .zip(l2.cell().map().components())
        .map(|(g1, g2)| Ok(g2.substitute(&to_t)? - g1.clone()))
        .collect::<Result<_>>()?;
    let d = SmoothMap::new(2, comps)?;
    let coeff = d.pullback(&solid_angle_form())?.coefficient(&MultiIndex::new(vec![0, 1]).expect("increasing")).compile();
    let m1 = l1.cell().map();
    let m2 = l2.cell().map();
    let mut worst = 0.0f64;
    for &(s, t) in pairs {
        let symbolic = coeff.eval(&[s, t]).map_err(|e| Error::Singular(e.to_string()))?;
        let j1 = m1.jacobian_at(&[s])?;
        let j2 = m2.jacobian_at(&[t])?;
        let frozen = linking_kernel(
            Vector3::from_vec(m1.evaluate(&[s])?),
            Vector3::new(j1[(0, 0)], j1[(1, 0)], j1[(2, 0)]),
            Vector3::from_vec(m2.evaluate(&[t])?),
            Vector3::new(j2[(0, 0)], j2[(1, 0)], j2[(2, 0)]),
        );
        worst = worst.max((symbolic - frozen).abs());
    }
    Ok(worst)
}
