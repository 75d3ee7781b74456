//! Each law takes a seed, builds its own random instance and reports the
//! first violation it finds. The property tests and the acceptance run share
//! these so both check the same statements.

use dform::form::MultiIndex;
use dform::poincare::{homotopy_identity_residual, primitive};
use dform::tensor::{covector_wedge_det, wedge_constant, AltTensor, GenericTensor, WedgeConvention};
use dform::DifferentialForm;
use nalgebra::DMatrix;
use rand::Rng;

use super::*;

pub type Law = fn(u64) -> Result<(), String>;

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn sign(p: usize) -> i64 {
    if p.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

// exterior algebra

pub fn d_squared_is_zero(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let (n, k) = shape(&mut r);
    let a = form(&mut r, n, k);
    check(a.d().d().is_zero(), || format!("d(d({a})) = {}", a.d().d()))
}

pub fn graded_leibniz(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.random_range(1..=4);
    let k = r.random_range(0..=n.min(3));
    let l = r.random_range(0..=(n - k).min(3));
    let a = form(&mut r, n, k);
    let b = form(&mut r, n, l);
    let lhs = a.wedge(&b).map_err(e)?.d();
    let rhs = a.d().wedge(&b).map_err(e)?.add(&a.wedge(&b.d()).map_err(e)?.scale(&sign(k).into())).map_err(e)?;
    check(lhs.equals(&rhs), || format!("Leibniz fails for {a} and {b}"))
}

pub fn graded_commutativity(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.random_range(1..=4);
    let k = r.random_range(0..=n.min(3));
    let l = r.random_range(0..=(n - k).min(3));
    let a = form(&mut r, n, k);
    let b = form(&mut r, n, l);
    let ab = a.wedge(&b).map_err(e)?;
    let ba = b.wedge(&a).map_err(e)?.scale(&sign(k * l).into());
    check(ab.equals(&ba), || format!("{a} and {b} do not graded-commute"))
}

pub fn wedge_is_associative(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.random_range(1..=4);
    let k = r.random_range(0..=n.min(2));
    let l = r.random_range(0..=(n - k).min(2));
    let m = r.random_range(0..=(n - k - l).min(2));
    let a = form(&mut r, n, k);
    let b = form(&mut r, n, l);
    let c = form(&mut r, n, m);
    let left = a.wedge(&b).map_err(e)?.wedge(&c).map_err(e)?;
    let right = a.wedge(&b.wedge(&c).map_err(e)?).map_err(e)?;
    check(left.equals(&right), || format!("({a} ^ {b}) ^ {c} differs from {a} ^ ({b} ^ {c})"))
}

pub fn pullback_is_natural(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let a = r.random_range(1..=3);
    let b = r.random_range(1..=3);
    let c = r.random_range(1..=3);
    let g = poly_map(&mut r, a, b);
    let h = poly_map(&mut r, b, c);
    let k = r.random_range(0..=c.min(a).min(2));
    let w = form(&mut r, c, k);
    let composite = h.compose(&g).map_err(e)?.pullback(&w).map_err(e)?;
    let stepwise = g.pullback(&h.pullback(&w).map_err(e)?).map_err(e)?;
    check(composite.equals(&stepwise), || format!("(h o g)* != g* h* on {w}"))
}

pub fn pullback_commutes_with_d(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let a = r.random_range(1..=4);
    let b = r.random_range(1..=4);
    let g = poly_map(&mut r, a, b);
    let k = r.random_range(0..=b.min(3));
    let w = form(&mut r, b, k);
    let lhs = g.pullback(&w.d()).map_err(e)?;
    let rhs = g.pullback(&w).map_err(e)?.d();
    check(lhs.equals(&rhs), || format!("g* d != d g* on {w}"))
}

// tensors at a point

fn generic(r: &mut TestRng, n: usize, k: usize) -> GenericTensor {
    let len = n.pow(k as u32);
    GenericTensor::from_data(n, k, vector(r, len)).expect("length n^k")
}

fn alternating(r: &mut TestRng, n: usize, k: usize) -> AltTensor {
    let coeffs = MultiIndex::all(n, k).into_iter().map(|i| (i, r.random_range(-1.0..1.0)));
    AltTensor::from_coefficients(n, k, coeffs).expect("valid indices")
}

pub fn alt_is_idempotent(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.random_range(1..=4);
    let k = r.random_range(0..=4);
    let t = generic(&mut r, n, k);
    let once = t.alt().map_err(e)?;
    let twice = once.alt().map_err(e)?;
    check(once.is_alternating(1e-12), || format!("Alt(t) is not alternating (n={n}, k={k})"))?;
    let gap = once.max_abs_diff(&twice);
    check(gap < 1e-12, || format!("Alt(Alt t) differs from Alt t by {gap:e}"))
}

pub fn alt_kills_products(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.random_range(1..=3);
    let k = r.random_range(1..=3);
    let l = r.random_range(0..=(4 - k));
    let raw = generic(&mut r, n, k);
    // Alt(T) = 0 by construction
    let t = raw.add(&raw.alt().map_err(e)?.scale(-1.0)).map_err(e)?;
    let s = generic(&mut r, n, l);
    for (name, p) in [("T⊗S", t.tensor_product(&s)), ("S⊗T", s.tensor_product(&t))] {
        let a = p.map_err(e)?.alt().map_err(e)?;
        let worst = a.data().iter().fold(0.0f64, |m, x| m.max(x.abs()));
        check(worst < 1e-12, || format!("Alt({name}) has a component of size {worst:e}"))?;
    }
    Ok(())
}

/// C_{k,ℓ}C_{k+ℓ,m} = C_{ℓ,m}C_{k,ℓ+m} for all k, ℓ, m ≤ 5, in integers,
/// plus the associativity it buys on random alternating tensors.
pub fn c_identity(seed: u64) -> Result<(), String> {
    for k in 0..=5 {
        for l in 0..=5 {
            for m in 0..=5 {
                let left = wedge_constant(k, l) * wedge_constant(k + l, m);
                let right = wedge_constant(l, m) * wedge_constant(k, l + m);
                check(left == right, || format!("C identity fails at ({k}, {l}, {m}): {left} vs {right}"))?;
            }
        }
    }
    let mut r = rng(seed);
    let n = r.random_range(1..=4);
    let k = r.random_range(0..=n.min(2));
    let l = r.random_range(0..=(n - k).min(2));
    let m = r.random_range(0..=(n - k - l).min(2));
    let (a, b, c) = (alternating(&mut r, n, k), alternating(&mut r, n, l), alternating(&mut r, n, m));
    let conv = WedgeConvention::Determinant;
    let left = a.wedge(&b, conv).map_err(e)?.wedge(&c, conv).map_err(e)?;
    let right = a.wedge(&b.wedge(&c, conv).map_err(e)?, conv).map_err(e)?;
    let gap = left.max_abs_diff(&right);
    check(gap < 1e-12, || format!("tensor wedge is not associative: {gap:e}"))
}

pub fn wedge_equals_determinant(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.random_range(1..=5);
    let k = r.random_range(1..=n);
    let covectors: Vec<Vec<f64>> = (0..k).map(|_| vector(&mut r, n)).collect();
    let vectors: Vec<Vec<f64>> = (0..k).map(|_| vector(&mut r, n)).collect();
    let cs: Vec<&[f64]> = covectors.iter().map(Vec::as_slice).collect();
    let vs: Vec<&[f64]> = vectors.iter().map(Vec::as_slice).collect();
    let (wedge, det) = covector_wedge_det(&cs, &vs).map_err(e)?;
    check((wedge - det).abs() <= 1e-10, || format!("wedge {wedge} vs det {det} (n={n}, k={k})"))
}

/// φ^I = k!·Alt(φ^{i₁}⊗⋯⊗φ^{i_k}).
pub fn basis_is_scaled_alt(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.random_range(1..=4);
    let k = r.random_range(1..=n);
    let all = MultiIndex::all(n, k);
    let idx = &all[r.random_range(0..all.len())];
    let mut product = GenericTensor::scalar(n, 1.0);
    for &i in idx.as_slice() {
        product = product.tensor_product(&GenericTensor::covector(n, i)).map_err(e)?;
    }
    let factorial: f64 = (1..=k).map(|i| i as f64).product();
    let rhs = product.alt().map_err(e)?.scale(factorial);
    let lhs = AltTensor::basis(n, idx.as_slice()).map_err(e)?.to_generic().map_err(e)?;
    let gap = lhs.max_abs_diff(&rhs);
    check(gap < 1e-12, || format!("phi^{:?} differs from k! Alt by {gap:e}", idx.as_slice()))
}

/// L*α(v…) = α(Av…); on covectors L* is Aᵀ; on basis forms the coefficients
/// are the k×k minors of A; and L* respects ∧.
pub fn pullback_transpose_law(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let m = r.random_range(1..=4);
    let n = r.random_range(1..=4);
    let a = DMatrix::from_fn(m, n, |_, _| r.random_range(-1.0..1.0));

    let phi = vector(&mut r, m);
    let pulled = AltTensor::from_covector(&phi).pullback_linear(&a).map_err(e)?;
    let at_phi = a.transpose() * nalgebra::DVector::from_vec(phi);
    let want = AltTensor::from_covector(at_phi.as_slice());
    let gap = pulled.max_abs_diff(&want);
    check(gap < 1e-12, || format!("L* on a covector differs from A^T by {gap:e}"))?;

    let k = r.random_range(0..=m.min(n).min(3));
    let alpha = alternating(&mut r, m, k);
    let pulled = alpha.pullback_linear(&a).map_err(e)?;
    let vs: Vec<Vec<f64>> = (0..k).map(|_| vector(&mut r, n)).collect();
    let avs: Vec<Vec<f64>> = vs.iter().map(|v| (&a * nalgebra::DVector::from_column_slice(v)).as_slice().to_vec()).collect();
    let lhs = pulled.evaluate(&vs.iter().map(Vec::as_slice).collect::<Vec<_>>()).map_err(e)?;
    let rhs = alpha.evaluate(&avs.iter().map(Vec::as_slice).collect::<Vec<_>>()).map_err(e)?;
    check((lhs - rhs).abs() < 1e-12, || format!("L*alpha(v) = {lhs} but alpha(Av) = {rhs}"))?;

    if k > 0 {
        let rows = &MultiIndex::all(m, k)[0];
        let pulled = AltTensor::basis(m, rows.as_slice()).map_err(e)?.pullback_linear(&a).map_err(e)?;
        for cols in MultiIndex::all(n, k) {
            let minor = DMatrix::from_fn(k, k, |i, j| a[(rows.as_slice()[i], cols.as_slice()[j])]).determinant();
            let got = pulled.coefficient(&cols);
            check((got - minor).abs() < 1e-12, || format!("minor {:?}: {got} vs {minor}", cols.as_slice()))?;
        }
    }

    let l = r.random_range(0..=(m - k).min(2));
    let beta = alternating(&mut r, m, l);
    let conv = WedgeConvention::Determinant;
    let lhs = alpha.wedge(&beta, conv).map_err(e)?.pullback_linear(&a).map_err(e)?;
    let rhs = alpha.pullback_linear(&a).map_err(e)?.wedge(&beta.pullback_linear(&a).map_err(e)?, conv).map_err(e)?;
    let gap = lhs.max_abs_diff(&rhs);
    check(gap < 1e-12, || format!("L* does not respect wedge: {gap:e}"))
}

/// The symbolic wedge evaluated at a point equals the tensor wedge of the
/// evaluated factors; the plain convention is the determinant one over C_{k,ℓ}.
pub fn symbolic_and_tensor_wedge_agree(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.random_range(1..=4);
    let k = r.random_range(0..=n.min(2));
    let l = r.random_range(0..=(n - k).min(2));
    let a = form(&mut r, n, k);
    let b = form(&mut r, n, l);
    let p = vector(&mut r, n);
    let symbolic = AltTensor::from_form(&a.wedge(&b).map_err(e)?, &p).map_err(e)?;
    let ta = AltTensor::from_form(&a, &p).map_err(e)?;
    let tb = AltTensor::from_form(&b, &p).map_err(e)?;
    let det = ta.wedge(&tb, WedgeConvention::Determinant).map_err(e)?;
    let scale = symbolic.coefficients().chain(det.coefficients()).fold(1.0f64, |s, (_, c)| s.max(c.abs()));
    let gap = symbolic.max_abs_diff(&det);
    check(gap < 1e-12 * scale, || format!("symbolic and tensor wedge differ by {gap:e} for {a} ^ {b}"))?;
    let plain = ta.wedge(&tb, WedgeConvention::Plain).map_err(e)?;
    let c = wedge_constant(k, l) as f64;
    let rescaled = AltTensor::from_coefficients(n, k + l, plain.coefficients().map(|(i, v)| (i.clone(), v * c))).map_err(e)?;
    let gap = rescaled.max_abs_diff(&det);
    check(gap < 1e-12 * scale, || format!("plain convention is off by {gap:e} after rescaling"))
}

// Poincaré lemma

/// A closed polynomial form of positive degree, built as dβ.
pub fn closed_form(r: &mut TestRng) -> DifferentialForm {
    let n = r.random_range(1..=4);
    let k = r.random_range(1..=n.min(3));
    form(r, n, k - 1).d()
}

pub fn primitive_inverts_d(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let alpha = closed_form(&mut r);
    let b = primitive(&alpha).map_err(e)?;
    check(b.d().equals(&alpha), || format!("d(primitive({alpha})) = {}", b.d()))
}

pub fn homotopy_identity_holds(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let (n, k) = shape(&mut r);
    let alpha = form(&mut r, n, k);
    let axis = r.random_range(0..n);
    let residual = homotopy_identity_residual(&alpha, axis).map_err(e)?;
    check(residual.is_zero(), || format!("dP + Pd - (1 - pi* s*) leaves {residual} on {alpha}"))
}
