//! Gauss–Legendre rules.

use crate::error::{Error, Result};

pub const MIN_POINTS: usize = 2;
pub const MAX_POINTS: usize = 64;
pub const DEFAULT_POINTS: usize = 16;

/// Points per axis of a tensor-product Gauss–Legendre rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureSpec {
    points: usize,
}

impl QuadratureSpec {
    pub fn new(points: usize) -> Result<Self> {
        if !(MIN_POINTS..=MAX_POINTS).contains(&points) {
            return Err(Error::InvalidInput(format!(
                "quadrature points {points} outside {MIN_POINTS}..={MAX_POINTS}"
            )));
        }
        Ok(QuadratureSpec { points })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Nodes and weights on [a, b].
    pub fn rule(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        gauss_legendre(self.points).into_iter().map(|(x, w)| (mid + half * x, half * w)).collect()
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { points: DEFAULT_POINTS }
    }
}

/// Legendre P_n and its derivative at x.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Nodes (ascending) and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = -(std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}
