//! Random instances shared by the property tests and the acceptance run.
#![allow(dead_code)]

pub mod laws;

use dform::form::MultiIndex;
use dform::{DifferentialForm, ScalarExpr, SmoothMap};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A polynomial in n variables with up to `terms` monomials of degree ≤ 2 per
/// variable and integer coefficients in [−3, 3].
pub fn poly(rng: &mut TestRng, n: usize, terms: usize) -> ScalarExpr {
    let mut out = ScalarExpr::zero();
    for _ in 0..rng.random_range(1..=terms) {
        let mut m = ScalarExpr::int(rng.random_range(-3..=3));
        for i in 0..n {
            for _ in 0..rng.random_range(0..=2u32) {
                m = m * ScalarExpr::var(i);
            }
        }
        out = out + m;
    }
    out
}

/// Like [`poly`] but occasionally multiplied by exp, sin or cos of a variable.
pub fn transcendental(rng: &mut TestRng, n: usize) -> ScalarExpr {
    let p = poly(rng, n, 2);
    let x = ScalarExpr::var(rng.random_range(0..n));
    match rng.random_range(0..4) {
        0 => p * x.exp(),
        1 => p * x.sin(),
        2 => p + x.cos(),
        _ => p,
    }
}

fn fill(rng: &mut TestRng, n: usize, k: usize, mut coeff: impl FnMut(&mut TestRng) -> ScalarExpr) -> DifferentialForm {
    let all = MultiIndex::all(n, k);
    let mut terms = Vec::new();
    for idx in all {
        if rng.random_bool(0.6) {
            terms.push((Vec::from(idx), coeff(rng)));
        }
    }
    DifferentialForm::from_terms(n, k, terms).expect("valid indices")
}

/// A random polynomial k-form on ℝⁿ.
pub fn form(rng: &mut TestRng, n: usize, k: usize) -> DifferentialForm {
    fill(rng, n, k, |r| poly(r, n, 3))
}

pub fn transcendental_form(rng: &mut TestRng, n: usize, k: usize) -> DifferentialForm {
    fill(rng, n, k, |r| transcendental(r, n))
}

/// A random polynomial map ℝᵃ → ℝᵇ with components of low degree.
pub fn poly_map(rng: &mut TestRng, a: usize, b: usize) -> SmoothMap {
    SmoothMap::new(a, (0..b).map(|_| poly(rng, a, 2)).collect()).expect("components use only the domain variables")
}

/// Dimension in 1..=4 and degree in 0..=min(3, n).
pub fn shape(rng: &mut TestRng) -> (usize, usize) {
    let n = rng.random_range(1..=4);
    (n, rng.random_range(0..=n.min(3)))
}

pub fn vector(rng: &mut TestRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}
