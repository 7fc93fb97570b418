//! Hadamard matrix generators, verification, and the order registry.
//!
//! Three generators are provided: Sylvester doubling (orders `2^t`), Paley
//! type I (`q + 1`, prime `q ≡ 3 mod 4`) and Paley type II (`2(q + 1)`, prime
//! `q ≡ 1 mod 4`). Kronecker products close these under multiplication.
//!
//! [`OrderRegistry`] keeps two tiers apart. *Known* orders are those whose
//! existence is taken as established: `{1, 2} ∪ {4k : 1 ≤ k ≤ 166}` and their
//! power-of-two multiples `2^j · b`. *Constructible* orders are the known
//! orders for which this module can actually produce a matrix.

use crate::error::{Error, Result};
use crate::sign_matrix::SignMatrix;

/// Largest Sylvester exponent accepted.
pub const MAX_SYLVESTER_EXPONENT: u32 = 20;
/// Largest order any generator in this module will materialize.
pub const MAX_ORDER: u64 = 1 << MAX_SYLVESTER_EXPONENT;

/// Sylvester matrix of order `2^t`, built by `H → [[H, H], [H, −H]]`.
pub fn sylvester(t: u32) -> Result<SignMatrix> {
    if t > MAX_SYLVESTER_EXPONENT {
        return Err(Error::SizeLimit {
            what: "sylvester exponent",
            requested: t as u64,
            limit: MAX_SYLVESTER_EXPONENT as u64,
        });
    }
    let n = 1usize << t;
    // Entry (i, j) of the 2^t Sylvester matrix is (−1)^{popcount(i & j)}.
    SignMatrix::from_fn(n, n, |i, j| if (i & j).count_ones() % 2 == 0 { 1 } else { -1 })
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q % 2 == 0 {
        return q == 2;
    }
    let mut d = 3u64;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Quadratic character table of `Z/q`: `chi[a]` ∈ {−1, 0, 1}.
fn quadratic_character(q: usize) -> Vec<i8> {
    let mut chi = vec![-1i8; q];
    chi[0] = 0;
    for x in 1..q {
        chi[(x * x) % q] = 1;
    }
    chi
}

/// Paley construction for an odd prime `q`.
///
/// `q ≡ 3 (mod 4)` gives type I of order `q + 1`; `q ≡ 1 (mod 4)` gives
/// type II of order `2(q + 1)`.
pub fn paley(q: u64) -> Result<SignMatrix> {
    if q == 2 || !is_prime(q) {
        return Err(Error::UnsupportedParameter(format!(
            "paley construction needs an odd prime, got {q}"
        )));
    }
    let order = if q % 4 == 3 { q + 1 } else { 2 * (q + 1) };
    if order > MAX_ORDER {
        return Err(Error::SizeLimit {
            what: "paley order",
            requested: order,
            limit: MAX_ORDER,
        });
    }
    let qs = q as usize;
    let chi = quadratic_character(qs);
    // Jacobsthal entry Q[a][b] = chi(b − a).
    let jac = |a: usize, b: usize| chi[(b + qs - a) % qs];

    if q % 4 == 3 {
        // H = [[1, 1ᵀ], [−1, Q + I]]
        SignMatrix::from_fn(qs + 1, qs + 1, |i, j| match (i, j) {
            (0, _) => 1,
            (_, 0) => -1,
            (i, j) if i == j => 1,
            (i, j) => jac(i - 1, j - 1),
        })
    } else {
        // Symmetric conference matrix C = [[0, 1ᵀ], [1, Q]], then
        // zero → [[1, 1], [1, −1]] and ±1 → ±[[1, −1], [−1, −1]].
        let conf = |a: usize, b: usize| -> i8 {
            match (a, b) {
                (0, 0) => 0,
                (0, _) | (_, 0) => 1,
                (a, b) => jac(a - 1, b - 1),
            }
        };
        let n = 2 * (qs + 1);
        SignMatrix::from_fn(n, n, |i, j| {
            let (bi, bj) = (i / 2, j / 2);
            let (ri, rj) = (i % 2, j % 2);
            match conf(bi, bj) {
                0 => {
                    if ri == 1 && rj == 1 {
                        -1
                    } else {
                        1
                    }
                }
                c => {
                    let block = if ri == 0 && rj == 0 { 1 } else { -1 };
                    c * block
                }
            }
        })
    }
}

/// Kronecker product `a ⊗ b` of two square matrices.
pub fn kronecker_product(a: &SignMatrix, b: &SignMatrix) -> Result<SignMatrix> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::Shape(format!(
            "kronecker product needs square factors, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let (p, q) = (a.rows(), b.rows());
    let order = (p as u64) * (q as u64);
    if order > MAX_ORDER {
        return Err(Error::SizeLimit {
            what: "kronecker order",
            requested: order,
            limit: MAX_ORDER,
        });
    }
    SignMatrix::from_fn(p * q, p * q, |i, j| a.get(i / q, j / q) * b.get(i % q, j % q))
}

/// True iff `m` is square of order n with `⟨u_i, u_j⟩ = n·δ_ij` for all rows,
/// checked in exact integer arithmetic.
pub fn verify_hadamard(m: &SignMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    for i in 0..n {
        for j in (i + 1)..n {
            if m.row_dot(i, j) != 0 {
                return false;
            }
        }
    }
    true
}

/// How an explicit matrix of a given order is produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    Trivial,
    Sylvester(u32),
    Paley(u64),
    Kronecker(Box<Recipe>, Box<Recipe>),
}

impl Recipe {
    pub fn order(&self) -> u64 {
        match self {
            Recipe::Trivial => 1,
            Recipe::Sylvester(t) => 1u64 << t,
            Recipe::Paley(q) if q % 4 == 3 => q + 1,
            Recipe::Paley(q) => 2 * (q + 1),
            Recipe::Kronecker(a, b) => a.order() * b.order(),
        }
    }

    pub fn build(&self) -> Result<SignMatrix> {
        match self {
            Recipe::Trivial => SignMatrix::ones(1, 1),
            Recipe::Sylvester(t) => sylvester(*t),
            Recipe::Paley(q) => paley(*q),
            Recipe::Kronecker(a, b) => kronecker_product(&a.build()?, &b.build()?),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Recipe::Trivial => "[[+1]]".into(),
            Recipe::Sylvester(t) => format!("sylvester({t})"),
            Recipe::Paley(q) => format!("paley({q})"),
            Recipe::Kronecker(a, b) => format!("{} ⊗ {}", a.describe(), b.describe()),
        }
    }
}

/// Two-tier registry of Hadamard orders.
#[derive(Debug, Clone, Copy, Default)]
pub struct OrderRegistry;

impl OrderRegistry {
    /// Largest `k` with `4k` in the base known set.
    pub const BASE_MAX_K: u64 = 166;
    /// Largest base order, `4 · 166`.
    pub const BASE_MAX_ORDER: u64 = 4 * Self::BASE_MAX_K;

    pub fn new() -> Self {
        OrderRegistry
    }

    pub fn is_base_known(&self, r: u64) -> bool {
        r == 1 || r == 2 || (r % 4 == 0 && r >= 4 && r <= Self::BASE_MAX_ORDER)
    }

    /// Smallest base order `≥ c`, if any.
    fn base_at_least(&self, c: u64) -> Option<u64> {
        match c {
            0 | 1 => Some(1),
            2 => Some(2),
            c if c <= Self::BASE_MAX_ORDER => Some(c.div_ceil(4) * 4),
            _ => None,
        }
    }

    /// Membership in the known closure `{2^j · b : b base, j ≥ 0}`.
    pub fn is_known(&self, r: u64) -> bool {
        if r == 0 {
            return false;
        }
        let mut r = r;
        loop {
            if self.is_base_known(r) {
                return true;
            }
            if r % 2 != 0 {
                return false;
            }
            r /= 2;
        }
    }

    /// `k_n`: the smallest known order `≥ n`.
    ///
    /// For `n ≤ 664` this is 1, 2 or `4⌈n/4⌉`; beyond that it is the minimum
    /// of `2^j · b` over base orders `b`, which always lies in `[n, 2n]`.
    pub fn known_order_at_least(&self, n: u64) -> u64 {
        let n = n.max(1);
        let mut best = u64::MAX;
        let mut j = 0u32;
        loop {
            let scale = 1u64 << j;
            let c = n.div_ceil(scale);
            if let Some(b) = self.base_at_least(c) {
                best = best.min(b * scale);
            }
            if c <= 1 {
                break;
            }
            j += 1;
        }
        best
    }

    /// Generator recipe for an explicit matrix of order `r`, or `None` when
    /// `r` is not known or no generator in this module reaches it.
    pub fn recipe(&self, r: u64) -> Option<Recipe> {
        if !self.is_known(r) || r > MAX_ORDER {
            return None;
        }
        self.recipe_unchecked(r)
    }

    fn recipe_unchecked(&self, r: u64) -> Option<Recipe> {
        if r == 1 {
            return Some(Recipe::Trivial);
        }
        if r.is_power_of_two() {
            return Some(Recipe::Sylvester(r.trailing_zeros()));
        }
        if r % 4 == 0 {
            let q = r - 1;
            if q % 4 == 3 && is_prime(q) {
                return Some(Recipe::Paley(q));
            }
            let q = r / 2 - 1;
            if q % 4 == 1 && is_prime(q) {
                return Some(Recipe::Paley(q));
            }
        }
        let mut a = 2u64;
        while a * a <= r {
            if r % a == 0 {
                if let (Some(x), Some(y)) =
                    (self.recipe_unchecked(a), self.recipe_unchecked(r / a))
                {
                    return Some(Recipe::Kronecker(Box::new(x), Box::new(y)));
                }
            }
            a += 1;
        }
        None
    }

    pub fn is_constructible(&self, r: u64) -> bool {
        self.recipe(r).is_some()
    }

    /// Explicit Hadamard matrix of order exactly `r`.
    pub fn construct(&self, r: u64) -> Result<SignMatrix> {
        match self.recipe(r) {
            Some(recipe) => recipe.build(),
            None => Err(Error::CoverageGap { n: r, cap: r }),
        }
    }

    /// Smallest constructible order `≥ n` together with its matrix.
    /// The search window is `[n, 4n]`.
    pub fn constructible_order_at_least(&self, n: u64) -> Result<(u64, SignMatrix)> {
        let n = n.max(1);
        let cap = n.saturating_mul(4);
        let start = self.known_order_at_least(n);
        for r in start..=cap.min(MAX_ORDER) {
            if let Some(recipe) = self.recipe(r) {
                return Ok((r, recipe.build()?));
            }
        }
        if start > MAX_ORDER {
            return Err(Error::SizeLimit {
                what: "hadamard order",
                requested: start,
                limit: MAX_ORDER,
            });
        }
        Err(Error::CoverageGap { n, cap })
    }
}

/// Shorthand for [`OrderRegistry::known_order_at_least`].
pub fn known_order_at_least(n: u64) -> u64 {
    OrderRegistry.known_order_at_least(n)
}

/// Shorthand for [`OrderRegistry::constructible_order_at_least`].
pub fn constructible_order_at_least(n: u64) -> Result<(u64, SignMatrix)> {
    OrderRegistry.constructible_order_at_least(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// HHᵀ computed entrywise from expanded integer rows.
    fn gram(m: &SignMatrix) -> Vec<Vec<i64>> {
        let rows = m.to_rows();
        rows.iter()
            .map(|a| {
                rows.iter()
                    .map(|b| a.iter().zip(b).map(|(x, y)| (*x as i64) * (*y as i64)).sum())
                    .collect()
            })
            .collect()
    }

    fn is_scaled_identity(g: &[Vec<i64>], n: i64) -> bool {
        g.iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == if i == j { n } else { 0 }))
    }

    #[test]
    fn sylvester_small_cases() {
        assert_eq!(sylvester(0).unwrap().to_rows(), vec![vec![1]]);
        assert_eq!(sylvester(1).unwrap().to_rows(), vec![vec![1, 1], vec![1, -1]]);
        let h16 = sylvester(4).unwrap();
        assert_eq!(h16.rows(), 16);
        assert!(is_scaled_identity(&gram(&h16), 16));
        assert!(matches!(sylvester(21), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn sylvester_matches_recursive_doubling() {
        let mut h = vec![vec![1i8]];
        for t in 1..=5 {
            let n = h.len();
            let mut next = vec![vec![0i8; 2 * n]; 2 * n];
            for i in 0..n {
                for j in 0..n {
                    next[i][j] = h[i][j];
                    next[i][j + n] = h[i][j];
                    next[i + n][j] = h[i][j];
                    next[i + n][j + n] = -h[i][j];
                }
            }
            h = next;
            assert_eq!(sylvester(t).unwrap().to_rows(), h);
        }
    }

    #[test]
    fn paley_examples() {
        let h4 = paley(3).unwrap();
        assert_eq!(h4.rows(), 4);
        assert!(is_scaled_identity(&gram(&h4), 4));
        let h20 = paley(19).unwrap();
        assert_eq!(h20.rows(), 20);
        assert!(is_scaled_identity(&gram(&h20), 20));
        let h28 = paley(13).unwrap();
        assert_eq!(h28.rows(), 28);
        assert!(is_scaled_identity(&gram(&h28), 28));
        for q in [5u64, 7, 11, 17, 23, 29, 31, 37, 41, 43] {
            assert!(verify_hadamard(&paley(q).unwrap()), "q = {q}");
        }
    }

    #[test]
    fn paley_rejects_bad_parameters() {
        for q in [0u64, 1, 2, 9, 15, 21, 25] {
            assert!(matches!(paley(q), Err(Error::UnsupportedParameter(_))), "q = {q}");
        }
    }

    #[test]
    fn kronecker_examples() {
        let one = sylvester(0).unwrap();
        let h20 = paley(19).unwrap();
        assert_eq!(kronecker_product(&one, &h20).unwrap(), h20);
        let h2 = sylvester(1).unwrap();
        let h4 = kronecker_product(&h2, &h2).unwrap();
        assert!(is_scaled_identity(&gram(&h4), 4));
        let h80 = kronecker_product(&paley(3).unwrap(), &h20).unwrap();
        assert_eq!(h80.rows(), 80);
        assert!(is_scaled_identity(&gram(&h80), 80));
        let rect = SignMatrix::ones(2, 3).unwrap();
        assert!(matches!(kronecker_product(&rect, &h2), Err(Error::Shape(_))));
    }

    #[test]
    fn verify_hadamard_rejections() {
        assert!(verify_hadamard(&sylvester(3).unwrap()));
        assert!(!verify_hadamard(&SignMatrix::ones(2, 2).unwrap()));
        let mut h = sylvester(2).unwrap();
        h.flip(1, 2);
        assert!(!verify_hadamard(&h));
        assert!(!verify_hadamard(&SignMatrix::ones(2, 4).unwrap()));
    }

    #[test]
    fn known_orders() {
        let reg = OrderRegistry::new();
        assert_eq!(reg.known_order_at_least(1), 1);
        assert_eq!(reg.known_order_at_least(2), 2);
        assert_eq!(reg.known_order_at_least(3), 4);
        assert_eq!(reg.known_order_at_least(15), 16);
        assert_eq!(reg.known_order_at_least(17), 20);
        assert_eq!(reg.known_order_at_least(664), 664);
        assert_eq!(reg.known_order_at_least(665), 672);
        for n in 3..=664u64 {
            let k = reg.known_order_at_least(n);
            assert!(n <= k && k <= n + 3, "n = {n}, k = {k}");
            assert_eq!(k, 4 * n.div_ceil(4));
        }
        assert!(reg.is_known(1328));
        assert!(!reg.is_known(668));
        assert!(!reg.is_known(12 * 167));
    }

    /// Brute-force enumeration of the closure set inside [n, 2n].
    #[test]
    fn known_order_beyond_table_matches_enumeration() {
        let reg = OrderRegistry::new();
        let mut base: Vec<u64> = vec![1, 2];
        base.extend((1..=166).map(|k| 4 * k));
        for n in (665u64..5000).step_by(7) {
            let mut best = u64::MAX;
            for &b in &base {
                let mut v = b;
                while v <= 2 * n {
                    if v >= n {
                        best = best.min(v);
                    }
                    v *= 2;
                }
            }
            assert_eq!(reg.known_order_at_least(n), best, "n = {n}");
        }
    }

    #[test]
    fn constructible_examples() {
        let (r, m) = constructible_order_at_least(15).unwrap();
        assert_eq!(r, 16);
        assert_eq!(m, sylvester(4).unwrap());
        let (r, m) = constructible_order_at_least(17).unwrap();
        assert_eq!(r, 20);
        assert_eq!(m, paley(19).unwrap());
        let (r, m) = constructible_order_at_least(1).unwrap();
        assert_eq!(r, 1);
        assert_eq!(m.to_rows(), vec![vec![1]]);
    }

    #[test]
    fn gaps_are_reported_as_coverage_gaps() {
        let reg = OrderRegistry::new();
        for gap in [52u64, 92, 100, 116] {
            assert!(reg.is_known(gap));
            assert!(!reg.is_constructible(gap), "{gap}");
            assert!(matches!(reg.construct(gap), Err(Error::CoverageGap { .. })));
        }
        // 49..52 all resolve to 56 = 2 · 28.
        assert_eq!(constructible_order_at_least(49).unwrap().0, 56);
    }

    #[test]
    fn constructible_never_below_known() {
        let reg = OrderRegistry::new();
        for n in 1..=300u64 {
            let (r, m) = reg.constructible_order_at_least(n).unwrap();
            assert!(r >= reg.known_order_at_least(n));
            assert!(reg.is_known(r));
            assert_eq!(m.rows() as u64, r);
        }
    }
}
