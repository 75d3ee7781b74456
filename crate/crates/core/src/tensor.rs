//! Multilinear algebra at a point.
//!
//! [`GenericTensor`] stores all nᵏ components; [`AltTensor`] stores an
//! alternating tensor by its coefficients on the basis
//! φ^I = φ^{i₁}∧⋯∧φ^{i_k}, I increasing. Wedge products use
//! α∧β = C_{k,ℓ}·Alt(α⊗β); with the default [`WedgeConvention::Determinant`]
//! (C_{k,ℓ} = (k+ℓ)!/(k!ℓ!)) φ^I evaluates to a minor determinant.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::form::{canonicalize, DifferentialForm, MultiIndex};

/// Largest degree for which the permutation-sum `alt` is attempted.
pub const MAX_ALT_DEGREE: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct GenericTensor {
    n: usize,
    k: usize,
    data: Vec<f64>,
}

fn checked_len(n: usize, k: usize) -> Result<usize> {
    n.checked_pow(k as u32)
        .filter(|&l| l <= 1 << 24)
        .ok_or_else(|| Error::TooLarge(format!("{n}^{k} tensor components")))
}

fn decode(mut flat: usize, n: usize, k: usize, out: &mut [usize]) {
    for slot in (0..k).rev() {
        out[slot] = flat % n;
        flat /= n;
    }
}

fn encode(idx: &[usize], n: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

impl GenericTensor {
    pub fn zeros(n: usize, k: usize) -> Result<Self> {
        Ok(GenericTensor { n, k, data: vec![0.0; checked_len(n, k)?] })
    }

    /// Components in row-major order of the index (i₁, …, i_k).
    pub fn from_data(n: usize, k: usize, data: Vec<f64>) -> Result<Self> {
        let len = checked_len(n, k)?;
        if data.len() != len {
            return Err(Error::DimensionMismatch { expected: len, found: data.len() });
        }
        Ok(GenericTensor { n, k, data })
    }

    pub fn scalar(n: usize, c: f64) -> Self {
        GenericTensor { n, k: 0, data: vec![c] }
    }

    /// The dual basis covector φ^axis.
    pub fn covector(n: usize, axis: usize) -> Self {
        let mut data = vec![0.0; n];
        data[axis] = 1.0;
        GenericTensor { n, k: 1, data }
    }

    pub fn from_covector(components: &[f64]) -> Self {
        GenericTensor { n: components.len(), k: 1, data: components.to_vec() }
    }

    /// φ̃^I = φ^{i₁}⊗⋯⊗φ^{i_k}.
    pub fn basis(n: usize, idx: &[usize]) -> Result<Self> {
        let mut t = GenericTensor::zeros(n, idx.len())?;
        t.data[encode(idx, n)] = 1.0;
        Ok(t)
    }

    /// The inner-product 2-tensor.
    pub fn dot(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        GenericTensor { n, k: 2, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[encode(idx, self.n)]
    }

    pub fn evaluate(&self, vectors: &[&[f64]]) -> Result<f64> {
        check_vectors(self.n, self.k, vectors)?;
        // contract the last slot first so the working array shrinks
        let mut cur = self.data.clone();
        for v in vectors.iter().rev() {
            cur = cur.chunks(self.n).map(|c| c.iter().zip(*v).map(|(a, b)| a * b).sum()).collect();
        }
        Ok(cur[0])
    }

    pub fn tensor_product(&self, other: &GenericTensor) -> Result<GenericTensor> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        let len = checked_len(self.n, self.k + other.k)?;
        let mut data = Vec::with_capacity(len);
        for a in &self.data {
            data.extend(other.data.iter().map(|b| a * b));
        }
        Ok(GenericTensor { n: self.n, k: self.k + other.k, data })
    }

    pub fn scale(&self, c: f64) -> GenericTensor {
        GenericTensor { data: self.data.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &GenericTensor) -> Result<GenericTensor> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::DimensionMismatch { expected: self.data.len(), found: other.data.len() });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(GenericTensor { data, ..self.clone() })
    }

    /// Alt(t) = (1/k!) Σ_σ sign(σ) t∘σ, by explicit permutation sum.
    pub fn alt(&self) -> Result<GenericTensor> {
        if self.k > MAX_ALT_DEGREE {
            return Err(Error::TooLarge(format!("alt of a degree-{} tensor", self.k)));
        }
        let perms = permutations(self.k);
        let norm = 1.0 / perms.len() as f64;
        let mut out = vec![0.0; self.data.len()];
        let mut idx = vec![0; self.k];
        let mut permuted = vec![0; self.k];
        for (flat, slot) in out.iter_mut().enumerate() {
            decode(flat, self.n, self.k, &mut idx);
            let mut acc = 0.0;
            for (sigma, sign) in &perms {
                for (r, &s) in sigma.iter().enumerate() {
                    permuted[r] = idx[s];
                }
                acc += *sign as f64 * self.data[encode(&permuted, self.n)];
            }
            *slot = acc * norm;
        }
        Ok(GenericTensor { data: out, ..self.clone() })
    }

    /// (L*t)(v₁,…,v_k) = t(Av₁,…,Av_k) for an m×n matrix A and t on ℝᵐ.
    pub fn pullback_linear(&self, a: &DMatrix<f64>) -> Result<GenericTensor> {
        if a.nrows() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: a.nrows() });
        }
        let n = a.ncols();
        // contract one slot at a time: slot r goes from index j ∈ 0..m to i ∈ 0..n
        let mut cur = self.data.clone();
        let mut dims = vec![self.n; self.k];
        for slot in 0..self.k {
            let outer: usize = dims[..slot].iter().product();
            let inner: usize = dims[slot + 1..].iter().product();
            let mut next = vec![0.0; outer * n * inner];
            for o in 0..outer {
                for j in 0..self.n {
                    for i in 0..n {
                        let aji = a[(j, i)];
                        if aji == 0.0 {
                            continue;
                        }
                        for q in 0..inner {
                            next[(o * n + i) * inner + q] += aji * cur[(o * self.n + j) * inner + q];
                        }
                    }
                }
            }
            dims[slot] = n;
            cur = next;
        }
        Ok(GenericTensor { n, k: self.k, data: cur })
    }

    /// True when every transposition of arguments flips the sign.
    pub fn is_alternating(&self, tol: f64) -> bool {
        let mut idx = vec![0; self.k];
        for flat in 0..self.data.len() {
            decode(flat, self.n, self.k, &mut idx);
            for a in 0..self.k {
                for b in a + 1..self.k {
                    let mut sw = idx.clone();
                    sw.swap(a, b);
                    if (self.data[flat] + self.data[encode(&sw, self.n)]).abs() > tol {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn max_abs_diff(&self, other: &GenericTensor) -> f64 {
        if self.n != other.n || self.k != other.k {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

fn check_vectors(n: usize, k: usize, vectors: &[&[f64]]) -> Result<()> {
    if vectors.len() != k {
        return Err(Error::DegreeMismatch { expected: k, found: vectors.len() });
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    Ok(())
}

/// All permutations of `0..k` with their signs, via Heap's algorithm.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, i8)> {
    let mut a: Vec<usize> = (0..k).collect();
    let mut c = vec![0; k];
    let mut sign = 1i8;
    let mut out = vec![(a.clone(), sign)];
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            out.push((a.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// C_{k,ℓ} = (k+ℓ)!/(k!ℓ!).
pub fn wedge_constant(k: usize, l: usize) -> u128 {
    factorial(k + l) / (factorial(k) * factorial(l))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WedgeConvention {
    /// C_{k,ℓ} = (k+ℓ)!/(k!ℓ!); φ¹∧⋯∧φⁿ = det.
    #[default]
    Determinant,
    /// C_{k,ℓ} = 1; φ¹∧⋯∧φⁿ = det/n!.
    Plain,
}

impl WedgeConvention {
    pub fn constant(self, k: usize, l: usize) -> f64 {
        match self {
            WedgeConvention::Determinant => wedge_constant(k, l) as f64,
            WedgeConvention::Plain => 1.0,
        }
    }
}

/// An alternating tensor α = Σ_I α_I φ^I (determinant normalization of φ^I).
#[derive(Clone, Debug, PartialEq)]
pub struct AltTensor {
    n: usize,
    k: usize,
    coeffs: BTreeMap<MultiIndex, f64>,
}

impl AltTensor {
    pub fn zero(n: usize, k: usize) -> Self {
        AltTensor { n, k, coeffs: BTreeMap::new() }
    }

    /// φ^{i₁}∧⋯∧φ^{i_k} for arbitrary axes (sign from sorting).
    pub fn basis(n: usize, axes: &[usize]) -> Result<Self> {
        if let Some(&bad) = axes.iter().find(|&&a| a >= n) {
            return Err(Error::InvalidIndex { index: bad, dim: n });
        }
        let mut out = AltTensor::zero(n, axes.len());
        let (sign, idx) = canonicalize(axes);
        if sign != 0 {
            out.coeffs.insert(idx, sign as f64);
        }
        Ok(out)
    }

    pub fn from_covector(components: &[f64]) -> Self {
        let n = components.len();
        let coeffs = components
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(i, c)| (MultiIndex::single(i), *c))
            .collect();
        AltTensor { n, k: 1, coeffs }
    }

    pub fn from_coefficients(n: usize, k: usize, coeffs: impl IntoIterator<Item = (MultiIndex, f64)>) -> Result<Self> {
        let mut out = AltTensor::zero(n, k);
        for (idx, c) in coeffs {
            if idx.len() != k {
                return Err(Error::DegreeMismatch { expected: k, found: idx.len() });
            }
            if let Some(&bad) = idx.as_slice().iter().find(|&&a| a >= n) {
                return Err(Error::InvalidIndex { index: bad, dim: n });
            }
            if c != 0.0 {
                *out.coeffs.entry(idx).or_insert(0.0) += c;
            }
        }
        Ok(out)
    }

    /// The pointwise value of a symbolic form: coefficients α_I(p).
    pub fn from_form(form: &DifferentialForm, point: &[f64]) -> Result<Self> {
        let values = form.evaluate_coefficients(point)?;
        AltTensor::from_coefficients(form.dim(), form.degree(), values)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> f64 {
        self.coeffs.get(idx).copied().unwrap_or(0.0)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&MultiIndex, f64)> {
        self.coeffs.iter().map(|(i, c)| (i, *c))
    }

    /// α(v₁,…,v_k) = Σ_I α_I det[v_j^{i_r}].
    pub fn evaluate(&self, vectors: &[&[f64]]) -> Result<f64> {
        check_vectors(self.n, self.k, vectors)?;
        let mut total = 0.0;
        for (idx, c) in &self.coeffs {
            let m = DMatrix::from_fn(self.k, self.k, |r, j| vectors[j][idx.as_slice()[r]]);
            total += c * m.determinant();
        }
        Ok(total)
    }

    pub fn to_generic(&self) -> Result<GenericTensor> {
        let mut t = GenericTensor::zeros(self.n, self.k)?;
        let mut idx = vec![0; self.k];
        for flat in 0..t.data.len() {
            decode(flat, self.n, self.k, &mut idx);
            let (sign, sorted) = canonicalize(&idx);
            if sign != 0 {
                t.data[flat] = sign as f64 * self.coefficient(&sorted);
            }
        }
        Ok(t)
    }

    /// Reads α_I = t(e_{i₁},…,e_{i_k}); exact when `t` is alternating.
    pub fn from_generic(t: &GenericTensor) -> AltTensor {
        let coeffs = MultiIndex::all(t.n, t.k)
            .into_iter()
            .map(|idx| {
                let c = t.get(idx.as_slice());
                (idx, c)
            })
            .filter(|(_, c)| *c != 0.0)
            .collect();
        AltTensor { n: t.n, k: t.k, coeffs }
    }

    /// α∧β = C_{k,ℓ} Alt(α⊗β), computed from the definition.
    pub fn wedge(&self, other: &AltTensor, convention: WedgeConvention) -> Result<AltTensor> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        let prod = self.to_generic()?.tensor_product(&other.to_generic()?)?;
        let c = convention.constant(self.k, other.k);
        Ok(AltTensor::from_generic(&prod.alt()?.scale(c)))
    }

    pub fn pullback_linear(&self, a: &DMatrix<f64>) -> Result<AltTensor> {
        Ok(AltTensor::from_generic(&self.to_generic()?.pullback_linear(a)?))
    }

    pub fn max_abs_diff(&self, other: &AltTensor) -> f64 {
        if self.n != other.n || self.k != other.k {
            return f64::INFINITY;
        }
        let keys: std::collections::BTreeSet<_> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.into_iter()
            .map(|i| (self.coefficient(i) - other.coefficient(i)).abs())
            .fold(0.0, f64::max)
    }
}

/// (α₁∧⋯∧α_k)(v₁,…,v_k) computed by iterated wedge products, alongside
/// det[α_i(v_j)] computed directly.
pub fn covector_wedge_det(covectors: &[&[f64]], vectors: &[&[f64]]) -> Result<(f64, f64)> {
    let k = covectors.len();
    if vectors.len() != k {
        return Err(Error::DegreeMismatch { expected: k, found: vectors.len() });
    }
    let Some(first) = covectors.first() else {
        return Ok((1.0, 1.0));
    };
    let n = first.len();
    let mut acc = AltTensor::from_covector(first);
    for c in &covectors[1..] {
        if c.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: c.len() });
        }
        acc = acc.wedge(&AltTensor::from_covector(c), WedgeConvention::Determinant)?;
    }
    let wedge_value = acc.evaluate(vectors)?;
    let pairing = DMatrix::from_fn(k, k, |i, j| {
        covectors[i].iter().zip(vectors[j]).map(|(a, b)| a * b).sum::<f64>()
    });
    Ok((wedge_value, pairing.determinant()))
}

/// The signed projected areas on ℝ³: φ¹∧φ² (onto the x-y plane), φ¹∧φ³ and φ²∧φ³.
pub fn projection_areas_decomposition() -> [AltTensor; 3] {
    let w = |i: usize, j: usize| {
        AltTensor::basis(3, &[i])
            .and_then(|a| a.wedge(&AltTensor::basis(3, &[j])?, WedgeConvention::Determinant))
            .expect("basis covectors on R^3")
    };
    [w(0, 1), w(0, 2), w(1, 2)]
}
