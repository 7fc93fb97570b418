//! Norms of sign matrices and sign tensors.
//!
//! * [`spectral_norm`]: largest singular value by power iteration on `AᵀA`.
//! * [`mixed_norm`]: the norm of an m-linear form on `ℓ2 × ℓ∞ × ⋯ × ℓ∞ × ℓ2`.
//!   The form is convex in each middle argument, so the supremum over the
//!   middle `ℓ∞` balls is reached at sign vectors; for each such choice the
//!   remaining bilinear form is a matrix whose norm is its spectral norm.
//! * [`injective_inf_norm`]: the norm over products of `ℓ∞` balls. All
//!   arguments but the last are enumerated over sign vectors and the last is
//!   optimized in closed form, giving the `ℓ1` norm of the induced functional.

use crate::budget;
use crate::error::{Error, Result};
use crate::hadamard::verify_hadamard;
use crate::sign_matrix::SignMatrix;

/// Default relative tolerance on the Rayleigh quotient.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Iteration budget for [`spectral_norm`].
pub const MAX_POWER_ITERATIONS: usize = 100_000;
const START_PERTURBATION: f64 = 1e-12;

/// Dense real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::Shape("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self::new(n, n, data)
    }

    pub fn from_signs(m: &SignMatrix) -> Self {
        let data = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| m.get(i, j) as f64)
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    fn mul_vec(&self, v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
    }

    fn mul_transpose_vec(&self, w: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for (i, &wi) in w.iter().enumerate() {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * wi;
            }
        }
    }
}

impl From<&SignMatrix> for DenseMatrix {
    fn from(m: &SignMatrix) -> Self {
        Self::from_signs(m)
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Largest singular value of `a` to relative tolerance `tol`.
///
/// Power iteration on `AᵀA`, run from three fixed start vectors: the
/// normalized all-ones vector plus a `1e-12 · (i + 1)` perturbation, then two
/// generic quasi-random vectors. Sign matrices often have the all-ones vector
/// exactly orthogonal to the top singular vector, in which case the first run
/// settles on a smaller singular value; the largest of the three runs is
/// returned. Each run stops when the Rayleigh quotient changes by at most
/// `tol` relative and the eigen-residual is below `√tol` relative.
/// An all-zero matrix has norm 0.
pub fn spectral_norm(a: &DenseMatrix, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::UnsupportedParameter(format!("tolerance must be positive, got {tol}")));
    }
    let scale = a.data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Ok(0.0);
    }
    let n = a.cols;
    let starts: [Vec<f64>; 3] = [
        (0..n).map(|i| 1.0 + START_PERTURBATION * (i + 1) as f64).collect(),
        (0..n).map(|i| ((i + 1) as f64 * 0.754_877_666_246_692_7).fract() - 0.5).collect(),
        (0..n).map(|i| ((i + 1) as f64 * 2.399_963_229_728_653).sin()).collect(),
    ];
    let mut best = 0.0f64;
    for v in starts {
        best = best.max(power_iterate(a, v, tol, scale)?);
    }
    Ok(best)
}

fn power_iterate(a: &DenseMatrix, mut v: Vec<f64>, tol: f64, scale: f64) -> Result<f64> {
    let n = a.cols;
    let mut w = vec![0.0; a.rows];
    let mut u = vec![0.0; n];

    let nv = norm2(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    a.mul_vec(&v, &mut w);
    if norm2(&w) <= f64::EPSILON * scale {
        // Start vector is in the null space; restart on the heaviest column.
        let heaviest = (0..n)
            .max_by(|&x, &y| {
                let cx: f64 = (0..a.rows).map(|i| a.get(i, x).powi(2)).sum();
                let cy: f64 = (0..a.rows).map(|i| a.get(i, y).powi(2)).sum();
                cx.total_cmp(&cy)
            })
            .unwrap_or(0);
        v.iter_mut().for_each(|x| *x = 0.0);
        v[heaviest] = 1.0;
    }

    let mut rho_prev = f64::NAN;
    let mut rho = 0.0;
    for _ in 0..MAX_POWER_ITERATIONS {
        a.mul_vec(&v, &mut w);
        a.mul_transpose_vec(&w, &mut u);
        rho = v.iter().zip(&u).map(|(x, y)| x * y).sum::<f64>();
        let residual = v
            .iter()
            .zip(&u)
            .map(|(x, y)| (y - rho * x).powi(2))
            .sum::<f64>()
            .sqrt();
        let nu = norm2(&u);
        if nu == 0.0 {
            return Ok(0.0);
        }
        if (rho - rho_prev).abs() <= tol * rho && residual <= tol.sqrt() * rho {
            return Ok(rho.max(0.0).sqrt());
        }
        rho_prev = rho;
        for (x, y) in v.iter_mut().zip(&u) {
            *x = y / nu;
        }
    }
    Err(Error::NumericFailure {
        iterations: MAX_POWER_ITERATIONS,
        last_estimate: rho.max(0.0).sqrt(),
    })
}

/// Spectral norm of the leading `rows × cols` block of a Hadamard matrix of
/// order `r`, paired with the ceiling `√r` that block cannot exceed.
pub fn truncated_hadamard_bound(h: &SignMatrix, rows: usize, cols: usize) -> Result<(f64, f64)> {
    if !verify_hadamard(h) {
        return Err(Error::Shape("input is not a Hadamard matrix".into()));
    }
    let block = h.leading_block(rows, cols)?;
    let norm = spectral_norm(&DenseMatrix::from_signs(&block), DEFAULT_TOL)?;
    Ok((norm, (h.rows() as f64).sqrt()))
}

/// m-dimensional ±1 array, row-major with the last index fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignTensor {
    dims: Vec<usize>,
    entries: Vec<i8>,
}

impl SignTensor {
    pub fn new(dims: Vec<usize>, entries: Vec<i8>) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::Shape(format!("tensor order must be at least 2, got {}", dims.len())));
        }
        if dims.iter().any(|&d| d == 0) {
            return Err(Error::Shape(format!("zero dimension in {dims:?}")));
        }
        let count: usize = dims.iter().product();
        if entries.len() != count {
            return Err(Error::Shape(format!(
                "{} entries for dims {dims:?} (expected {count})",
                entries.len()
            )));
        }
        if entries.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::Shape("tensor entries must be ±1".into()));
        }
        Ok(Self { dims, entries })
    }

    pub fn from_fn<F: FnMut(&[usize]) -> i8>(dims: Vec<usize>, mut f: F) -> Result<Self> {
        let count: usize = dims.iter().product();
        let mut idx = vec![0usize; dims.len()];
        let mut entries = Vec::with_capacity(count);
        for _ in 0..count {
            entries.push(if f(&idx) > 0 { 1 } else { -1 });
            for d in (0..dims.len()).rev() {
                idx[d] += 1;
                if idx[d] < dims[d] {
                    break;
                }
                idx[d] = 0;
            }
        }
        Self::new(dims, entries)
    }

    pub fn from_matrix(m: &SignMatrix) -> Self {
        Self::from_fn(vec![m.rows(), m.cols()], |ix| m.get(ix[0], ix[1])).expect("valid shape")
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn get(&self, index: &[usize]) -> i8 {
        let mut flat = 0;
        for (i, d) in index.iter().zip(&self.dims) {
            flat = flat * d + i;
        }
        self.entries[flat]
    }

    /// Contracts every argument except the first and last against the sign
    /// vectors encoded in `middle_bits` (argument `k` uses the next `n_k`
    /// bits, bit set = −1). Returns the induced `n_1 × n_m` matrix.
    fn contract_middle(&self, middle_bits: u64) -> Vec<i64> {
        let m = self.order();
        let n1 = self.dims[0];
        let nm = self.dims[m - 1];
        let mid = &self.dims[1..m - 1];
        let mid_count: usize = mid.iter().product();
        // Product of middle signs for each middle multi-index.
        let mut weight = vec![1i64; mid_count];
        let mut idx = vec![0usize; mid.len()];
        for w in weight.iter_mut() {
            let mut offset = 0;
            for (k, &i) in idx.iter().enumerate() {
                if middle_bits >> (offset + i) & 1 == 1 {
                    *w = -*w;
                }
                offset += mid[k];
            }
            for d in (0..mid.len()).rev() {
                idx[d] += 1;
                if idx[d] < mid[d] {
                    break;
                }
                idx[d] = 0;
            }
        }
        let mut out = vec![0i64; n1 * nm];
        for i1 in 0..n1 {
            for (mi, &w) in weight.iter().enumerate() {
                let base = (i1 * mid_count + mi) * nm;
                let row = &self.entries[base..base + nm];
                for (o, &e) in out[i1 * nm..(i1 + 1) * nm].iter_mut().zip(row) {
                    *o += w * e as i64;
                }
            }
        }
        out
    }
}

/// Spreads `free` bits into the layout where each block's first bit is 0.
fn spread_bits(mut free: u64, dims: &[usize]) -> u64 {
    let mut out = 0u64;
    let mut offset = 0;
    for &d in dims {
        let take = d - 1;
        let chunk = free & ((1u64 << take) - 1);
        out |= chunk << (offset + 1);
        free >>= take;
        offset += d;
    }
    out
}

/// Norm of the form on `ℓ2^{n_1} × ℓ∞^{n_2} × ⋯ × ℓ∞^{n_{m−1}} × ℓ2^{n_m}`.
pub fn mixed_norm(t: &SignTensor) -> Result<f64> {
    let m = t.order();
    let dims = t.dims();
    let mid = &dims[1..m - 1];
    let all_bits: u64 = mid.iter().map(|&d| d as u64).sum();
    budget::check("mixed-norm sign bits", all_bits, budget::MIXED_BITS)?;
    // The first sign of each middle argument is fixed to +1: negating a
    // whole argument negates the form.
    let free: u32 = mid.iter().map(|&d| (d - 1) as u32).sum();
    let (n1, nm) = (dims[0], dims[m - 1]);
    let mut best = 0.0f64;
    for f in 0..(1u64 << free) {
        let bits = spread_bits(f, mid);
        let induced = t.contract_middle(bits);
        let dense = DenseMatrix {
            rows: n1,
            cols: nm,
            data: induced.iter().map(|&v| v as f64).collect(),
        };
        best = best.max(spectral_norm(&dense, DEFAULT_TOL)?);
    }
    Ok(best)
}

/// Norm of the form on `ℓ∞^{n_1} × ⋯ × ℓ∞^{n_m}`; an integer because the
/// coefficients are ±1 and the supremum sits at sign vectors.
pub fn injective_inf_norm(t: &SignTensor) -> Result<u64> {
    let m = t.order();
    let dims = t.dims();
    let lead_bits: u64 = dims[..m - 1].iter().map(|&d| d as u64).sum();
    budget::check("injective-norm sign bits", lead_bits, budget::INJECTIVE_BITS)?;

    // Outer loop fixes x^(1..m−2) as a "middle" of a reshaped tensor whose
    // first axis is x^(m−1); the inner Gray-code loop runs over x^(m−1).
    let outer_dims = &dims[..m - 2];
    let pen = dims[m - 2];
    let last = dims[m - 1];
    let free: u32 = outer_dims.iter().map(|&d| (d - 1) as u32).sum();
    let outer_count: usize = outer_dims.iter().product();
    let mut best = 0u64;

    for f in 0..(1u64 << free) {
        let bits = spread_bits(f, outer_dims);
        // Signs of outer multi-indices.
        let mut weight = vec![1i64; outer_count.max(1)];
        let mut idx = vec![0usize; outer_dims.len()];
        for w in weight.iter_mut().take(outer_count) {
            let mut offset = 0;
            for (k, &i) in idx.iter().enumerate() {
                if bits >> (offset + i) & 1 == 1 {
                    *w = -*w;
                }
                offset += outer_dims[k];
            }
            for d in (0..outer_dims.len()).rev() {
                idx[d] += 1;
                if idx[d] < outer_dims[d] {
                    break;
                }
                idx[d] = 0;
            }
        }
        // Matrix over (i_{m−1}, i_m).
        let mut mat = vec![0i64; pen * last];
        for (oi, &w) in weight.iter().enumerate().take(outer_count.max(1)) {
            let base = oi * pen * last;
            for (o, &e) in mat.iter_mut().zip(&t.entries[base..base + pen * last]) {
                *o += w * e as i64;
            }
        }
        // Gray code over x^(m−1) with its first sign fixed.
        let mut functional: Vec<i64> = (0..last).map(|j| (0..pen).map(|i| mat[i * last + j]).sum()).collect();
        let mut signs = vec![1i64; pen];
        let l1 = |v: &[i64]| v.iter().map(|x| x.unsigned_abs()).sum::<u64>();
        best = best.max(l1(&functional));
        for step in 1u64..(1u64 << (pen - 1)) {
            let r = step.trailing_zeros() as usize + 1;
            signs[r] = -signs[r];
            let s = 2 * signs[r];
            for (fj, &mj) in functional.iter_mut().zip(&mat[r * last..(r + 1) * last]) {
                *fj += s * mj;
            }
            best = best.max(l1(&functional));
        }
    }
    Ok(best)
}

/// Chain tensor with entries `∏_{k=2}^{m} h^(k)[i_{k−1}][i_k]`, each factor
/// read from the leading block of the k-th Hadamard matrix.
///
/// `dims[0]` must be the minimum and `dims[m−1]` the maximum dimension, and
/// the k-th matrix must have order at least `max(n_{k−1}, n_k)`.
pub fn ksz_tensor(hadamards: &[SignMatrix], dims: &[usize]) -> Result<SignTensor> {
    let m = dims.len();
    if m < 2 {
        return Err(Error::Shape(format!("need at least 2 dimensions, got {m}")));
    }
    if hadamards.len() != m - 1 {
        return Err(Error::Shape(format!(
            "{} Hadamard matrices for {m} dimensions (expected {})",
            hadamards.len(),
            m - 1
        )));
    }
    let min = *dims.iter().min().unwrap();
    let max = *dims.iter().max().unwrap();
    if min == 0 {
        return Err(Error::Shape("dimensions must be positive".into()));
    }
    if dims[0] != min || dims[m - 1] != max {
        return Err(Error::Shape(format!(
            "first dimension must be the minimum and last the maximum, got {dims:?}"
        )));
    }
    for (k, h) in hadamards.iter().enumerate() {
        if !h.is_square() || !verify_hadamard(h) {
            return Err(Error::Shape(format!("matrix {} is not a Hadamard matrix", k + 2)));
        }
        let need = dims[k].max(dims[k + 1]);
        if h.rows() < need {
            return Err(Error::Shape(format!(
                "matrix {} has order {} but dimensions need {need}",
                k + 2,
                h.rows()
            )));
        }
    }
    SignTensor::from_fn(dims.to_vec(), |ix| {
        hadamards
            .iter()
            .enumerate()
            .map(|(k, h)| h.get(ix[k], ix[k + 1]))
            .product()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::{paley, sylvester};

    #[test]
    fn spectral_examples() {
        let id = DenseMatrix::identity(3).unwrap();
        assert!((spectral_norm(&id, DEFAULT_TOL).unwrap() - 1.0).abs() < 1e-12);
        let h4 = DenseMatrix::from_signs(&sylvester(2).unwrap());
        assert!((spectral_norm(&h4, DEFAULT_TOL).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_zero_and_bad_tolerance() {
        let z = DenseMatrix::new(2, 2, vec![0.0; 4]).unwrap();
        assert_eq!(spectral_norm(&z, DEFAULT_TOL).unwrap(), 0.0);
        assert!(spectral_norm(&z, 0.0).is_err());
        assert!(DenseMatrix::new(1, 1, vec![f64::NAN]).is_err());
        assert!(DenseMatrix::new(2, 2, vec![1.0]).is_err());
    }

    #[test]
    fn spectral_start_in_null_space() {
        // All-ones start is annihilated; the restart must still find 2.
        let a = DenseMatrix::new(1, 2, vec![1.0, -1.0]).unwrap();
        let s = spectral_norm(&a, DEFAULT_TOL).unwrap();
        assert!((s - 2f64.sqrt()).abs() < 1e-9, "{s}");
    }

    #[test]
    fn truncated_bound_holds() {
        let h20 = paley(19).unwrap();
        for n in 1..=20 {
            let (norm, ceiling) = truncated_hadamard_bound(&h20, n, n).unwrap();
            assert!(norm <= ceiling + 1e-9, "n = {n}: {norm}");
        }
    }

    #[test]
    fn ksz_tensor_examples() {
        let h4 = sylvester(2).unwrap();
        let t = ksz_tensor(std::slice::from_ref(&h4), &[4, 4]).unwrap();
        assert_eq!(t, SignTensor::from_matrix(&h4));

        let h2 = sylvester(1).unwrap();
        let t = ksz_tensor(&[h2.clone(), h2.clone()], &[2, 2, 2]).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    assert_eq!(t.get(&[a, b, c]), h2.get(a, b) * h2.get(b, c));
                }
            }
        }

        let t = ksz_tensor(&[h4.clone(), h4.clone()], &[3, 4, 4]).unwrap();
        assert_eq!(t.dims(), &[3, 4, 4]);
        for a in 0..3 {
            for b in 0..4 {
                for c in 0..4 {
                    assert_eq!(t.get(&[a, b, c]), h4.get(a, b) * h4.get(b, c));
                }
            }
        }
    }

    #[test]
    fn ksz_tensor_shape_errors() {
        let h2 = sylvester(1).unwrap();
        let h4 = sylvester(2).unwrap();
        assert!(ksz_tensor(&[h2.clone()], &[2, 2, 2]).is_err());
        assert!(ksz_tensor(&[h2.clone(), h2.clone()], &[2, 4, 2]).is_err());
        assert!(ksz_tensor(&[h2.clone(), h4.clone()], &[2, 4, 4]).is_err());
        assert!(ksz_tensor(&[SignMatrix::ones(4, 4).unwrap()], &[4, 4]).is_err());
        assert!(ksz_tensor(&[h4.clone(), h4], &[4, 2, 4]).is_err());
    }

    #[test]
    fn norm_small_examples() {
        let h2 = SignTensor::from_matrix(&sylvester(1).unwrap());
        assert!((mixed_norm(&h2).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        let h4 = SignTensor::from_matrix(&sylvester(2).unwrap());
        assert_eq!(injective_inf_norm(&h4).unwrap(), 8);
        for n in 1..=5 {
            let ones = SignTensor::from_matrix(&SignMatrix::ones(n, n).unwrap());
            assert_eq!(injective_inf_norm(&ones).unwrap(), (n * n) as u64);
        }
        let cube = SignTensor::from_fn(vec![2, 2, 2], |_| 1).unwrap();
        assert_eq!(injective_inf_norm(&cube).unwrap(), 8);
    }

    #[test]
    fn tensor_validation() {
        assert!(SignTensor::new(vec![2], vec![1, 1]).is_err());
        assert!(SignTensor::new(vec![2, 2], vec![1, 1, 1]).is_err());
        assert!(SignTensor::new(vec![2, 2], vec![1, 1, 1, 0]).is_err());
        assert!(SignTensor::new(vec![2, 0], vec![]).is_err());
    }

    #[test]
    fn bit_spreading_skips_first_of_each_block() {
        assert_eq!(spread_bits(0b1_11, &[3, 2]), 0b10_110);
        assert_eq!(spread_bits(0, &[4]), 0);
    }
}
