#![allow(dead_code)]

use gb_core::norms::{DenseMatrix, SignTensor};
use gb_core::{LightGrid, SignMatrix};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_grid<R: Rng>(rng: &mut R, n: usize) -> LightGrid {
    let m = SignMatrix::from_fn(n, n, |_, _| if rng.gen::<bool>() { 1 } else { -1 }).unwrap();
    LightGrid::new(m).unwrap()
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Largest singular value from the Jacobi eigenvalues of `AᵀA`.
pub fn sigma_max_oracle(a: &DenseMatrix) -> f64 {
    let (r, c) = (a.rows(), a.cols());
    let ata: Vec<Vec<f64>> = (0..c)
        .map(|i| (0..c).map(|j| (0..r).map(|k| a.get(k, i) * a.get(k, j)).sum()).collect())
        .collect();
    jacobi_eigenvalues(ata)
        .into_iter()
        .fold(0.0f64, f64::max)
        .max(0.0)
        .sqrt()
}

/// All sign vectors of length `n`, as `i8` vectors.
pub fn sign_vectors(n: usize) -> Vec<Vec<i8>> {
    (0..1u64 << n)
        .map(|b| (0..n).map(|i| if b >> i & 1 == 1 { -1 } else { 1 }).collect())
        .collect()
}

/// Mixed norm of a 3-tensor by enumerating every middle sign vector and
/// taking the oracle spectral norm of the induced matrix.
pub fn mixed_norm_oracle_3(t: &SignTensor) -> f64 {
    let d = t.dims();
    let (n1, n2, n3) = (d[0], d[1], d[2]);
    let mut best = 0.0f64;
    for x in sign_vectors(n2) {
        let data: Vec<f64> = (0..n1)
            .flat_map(|i| {
                let x = &x;
                (0..n3).map(move |k| (0..n2).map(|j| (t.get(&[i, j, k]) * x[j]) as f64).sum::<f64>())
            })
            .collect();
        let m = DenseMatrix::new(n1, n3, data).unwrap();
        best = best.max(sigma_max_oracle(&m));
    }
    best
}

/// Injective ℓ∞ norm of a tensor by full enumeration of all m sign vectors.
pub fn injective_oracle(t: &SignTensor) -> u64 {
    let dims = t.dims().to_vec();
    let total_bits: usize = dims.iter().sum();
    let cells: usize = dims.iter().product();
    let mut best = 0i64;
    for bits in 0..1u64 << total_bits {
        let mut sum = 0i64;
        for (flat, &e) in t.entries().iter().enumerate().take(cells) {
            let mut rest = flat;
            let mut term = e as i64;
            let mut offset = total_bits;
            for &d in dims.iter().rev() {
                let i = rest % d;
                rest /= d;
                offset -= d;
                if bits >> (offset + i) & 1 == 1 {
                    term = -term;
                }
            }
            sum += term;
        }
        best = best.max(sum.abs());
    }
    best as u64
}
