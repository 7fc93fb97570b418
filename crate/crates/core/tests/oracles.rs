mod common;

use common::*;
use gb_core::hadamard::{paley, sylvester, verify_hadamard, OrderRegistry};
use gb_core::norms::{
    injective_inf_norm, ksz_tensor, mixed_norm, spectral_norm, DenseMatrix, SignTensor, DEFAULT_TOL,
};
use gb_core::switching::{brute_force_i, solve_g, solve_i, LightGrid};
use gb_core::SignMatrix;

#[test]
fn jacobi_oracle_sanity() {
    let ev = jacobi_eigenvalues(vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
    let mut ev = ev;
    ev.sort_by(f64::total_cmp);
    assert!((ev[0] - 1.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12);
}

#[test]
fn spectral_norm_matches_jacobi_on_truncations() {
    let h16 = sylvester(4).unwrap();
    let p20 = paley(19).unwrap();
    for (h, r) in [(&h16, 16usize), (&p20, 20)] {
        for n in 1..=r {
            let block = h.leading_block(n, n).unwrap();
            let d = DenseMatrix::from_signs(&block);
            let ours = spectral_norm(&d, DEFAULT_TOL).unwrap();
            let oracle = sigma_max_oracle(&d);
            assert!((ours - oracle).abs() <= 1e-8 * oracle, "order {r}, n = {n}: {ours} vs {oracle}");
            assert!(ours <= (r as f64).sqrt() + 1e-9);
        }
    }
    // Precomputed independently: the 15x15 block of H16 has norm exactly 4.
    let d = DenseMatrix::from_signs(&h16.leading_block(15, 15).unwrap());
    assert!((spectral_norm(&d, DEFAULT_TOL).unwrap() - 4.0).abs() < 1e-9);
}

#[test]
fn spectral_norm_random_rectangular() {
    let mut rng = rng(7);
    for (r, c) in [(3, 5), (7, 2), (9, 9), (12, 4)] {
        for _ in 0..20 {
            let g = SignMatrix::from_fn(r, c, |_, _| if rand::Rng::gen::<bool>(&mut rng) { 1 } else { -1 })
                .unwrap();
            let d = DenseMatrix::from_signs(&g);
            let ours = spectral_norm(&d, DEFAULT_TOL).unwrap();
            let oracle = sigma_max_oracle(&d);
            assert!((ours - oracle).abs() <= 1e-8 * oracle.max(1.0), "{r}x{c}: {ours} vs {oracle}");
        }
    }
}

#[test]
fn solve_i_matches_brute_force_everywhere_at_n3() {
    for bits in 0u32..512 {
        let m = SignMatrix::from_fn(3, 3, |i, j| if bits >> (3 * i + j) & 1 == 1 { -1 } else { 1 }).unwrap();
        let g = LightGrid::new(m).unwrap();
        assert_eq!(solve_i(&g).unwrap().value, brute_force_i(&g).unwrap(), "grid {bits}");
    }
}

#[test]
fn solve_i_matches_brute_force_on_random_grids() {
    let mut rng = rng(11);
    for n in 4..=6 {
        for _ in 0..1000 {
            let g = random_grid(&mut rng, n);
            assert_eq!(solve_i(&g).unwrap().value, brute_force_i(&g).unwrap(), "\n{}", g.to_grid_text());
        }
    }
}

#[test]
fn injective_norm_matches_solve_g() {
    let mut rng = rng(13);
    for k in 0..500 {
        let n = 1 + k % 8;
        let g = random_grid(&mut rng, n);
        let t = SignTensor::from_matrix(g.matrix());
        assert_eq!(injective_inf_norm(&t).unwrap(), solve_g(&g).unwrap().value, "\n{}", g.to_grid_text());
    }
}

#[test]
fn injective_norm_matches_full_enumeration_for_3_tensors() {
    let mut rng = rng(17);
    for dims in [vec![2usize, 2, 2], vec![2, 3, 3], vec![1, 2, 3], vec![3, 3, 3]] {
        for _ in 0..10 {
            let t = SignTensor::from_fn(dims.clone(), |_| if rand::Rng::gen::<bool>(&mut rng) { 1 } else { -1 })
                .unwrap();
            assert_eq!(injective_inf_norm(&t).unwrap(), injective_oracle(&t), "{dims:?}");
        }
    }
}

#[test]
fn mixed_norm_matches_enumeration_oracle() {
    let h2 = sylvester(1).unwrap();
    let t = ksz_tensor(&[h2.clone(), h2.clone()], &[2, 2, 2]).unwrap();
    let ours = mixed_norm(&t).unwrap();
    assert!((ours - mixed_norm_oracle_3(&t)).abs() < 1e-9);
    assert!(ours <= 2.0 * (1.0 + 1e-9));

    let ones = SignTensor::from_fn(vec![2, 2, 2], |_| 1).unwrap();
    let v = mixed_norm(&ones).unwrap();
    // Middle signs (+,+) give the all-2 matrix with norm 4.
    assert!((v - 4.0).abs() < 1e-9);
    assert!((v - mixed_norm_oracle_3(&ones)).abs() < 1e-9);

    let mut rng = rng(19);
    for dims in [vec![2usize, 3, 4], vec![3, 4, 3], vec![4, 5, 4]] {
        for _ in 0..5 {
            let t = SignTensor::from_fn(dims.clone(), |_| if rand::Rng::gen::<bool>(&mut rng) { 1 } else { -1 })
                .unwrap();
            let a = mixed_norm(&t).unwrap();
            let b = mixed_norm_oracle_3(&t);
            assert!((a - b).abs() <= 1e-8 * b.max(1.0), "{dims:?}: {a} vs {b}");
        }
    }
}

#[test]
fn hadamard_ceiling_on_full_grids() {
    // Orders above 30 need more than 2^29 row assignments.
    for r in 1..=30u64 {
        if let Ok(h) = OrderRegistry.construct(r) {
            assert!(verify_hadamard(&h));
            let g = solve_g(&LightGrid::new(h).unwrap()).unwrap().value;
            assert!((g as f64) <= (r as f64).powf(1.5) + 1e-9, "order {r}: g = {g}");
        }
    }
}

#[test]
fn truncated_paley_values() {
    // Computed independently before the build.
    let p = paley(19).unwrap();
    for (n, want) in [(17usize, 108u64), (18, 125), (19, 142)] {
        let g = LightGrid::new(p.leading_block(n, n).unwrap()).unwrap();
        assert_eq!(solve_i(&g).unwrap().value, want, "n = {n}");
    }
    let g = LightGrid::new(sylvester(4).unwrap().leading_block(15, 15).unwrap()).unwrap();
    assert_eq!(solve_i(&g).unwrap().value, 84);
}
