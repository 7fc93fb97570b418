//! Exact values of the Gale–Berlekamp switching game.
//!
//! A light grid is an `n × n` sign matrix with +1 = on and −1 = off. For a
//! row switch vector `x` let `c_j` be the number of on-lights in column `j`
//! after the row switches. The best column switch for that `x` leaves
//! `min(c_j, n − c_j)` lights on in column `j`, and produces an imbalance of
//! `|2c_j − n|`. Both per-grid solvers therefore only enumerate `x`, with
//! `x_1 = +1` fixed because `x → −x` maps `c_j → n − c_j`.
//!
//! The exhaustive searches over grids (`exact_r`, `exact_g`) work on
//! switching-orbit representatives: grids whose first row and first column
//! are all +1. Every grid can be brought to that form by switches, and the
//! game values are switch invariant, so the `2^{(n−1)²}` representatives
//! suffice.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::budget;
use crate::error::{Error, Result};
use crate::hadamard::OrderRegistry;
use crate::sign_matrix::SignMatrix;

/// Square grid of lights, +1 = on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LightGrid {
    grid: SignMatrix,
}

impl LightGrid {
    pub fn new(grid: SignMatrix) -> Result<Self> {
        if !grid.is_square() {
            return Err(Error::Shape(format!(
                "light grid must be square, got {}x{}",
                grid.rows(),
                grid.cols()
            )));
        }
        Ok(Self { grid })
    }

    pub fn all_on(n: usize) -> Result<Self> {
        Self::new(SignMatrix::ones(n, n)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(SignMatrix::parse_grid_text(text)?)
    }

    pub fn n(&self) -> usize {
        self.grid.rows()
    }

    pub fn matrix(&self) -> &SignMatrix {
        &self.grid
    }

    pub fn into_matrix(self) -> SignMatrix {
        self.grid
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.grid.get(i, j)
    }

    pub fn to_grid_text(&self) -> String {
        self.grid.to_grid_text()
    }

    /// Number of lights currently on.
    pub fn on_count(&self) -> u64 {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).filter(|&j| self.get(i, j) > 0).count() as u64)
            .sum()
    }

    /// Grid after applying row switches `x` and column switches `y`.
    pub fn switched(&self, sw: &SwitchAssignment) -> Result<Self> {
        let n = self.n();
        sw.check_len(n)?;
        let m = SignMatrix::from_fn(n, n, |i, j| {
            self.get(i, j) * sw.row_signs[i] * sw.col_signs[j]
        })?;
        Self::new(m)
    }
}

impl fmt::Debug for LightGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LightGrid n = {}", self.n())?;
        f.write_str(&self.grid.to_grid_text())
    }
}

/// Row switches `x_i` and column switches `y_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchAssignment {
    pub row_signs: Vec<i8>,
    pub col_signs: Vec<i8>,
}

impl SwitchAssignment {
    pub fn identity(n: usize) -> Self {
        Self {
            row_signs: vec![1; n],
            col_signs: vec![1; n],
        }
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.row_signs.len() != n || self.col_signs.len() != n {
            return Err(Error::Shape(format!(
                "switch assignment has {} row and {} column signs, grid is {n}x{n}",
                self.row_signs.len(),
                self.col_signs.len()
            )));
        }
        Ok(())
    }

    pub fn row_string(&self) -> String {
        sign_string(&self.row_signs)
    }

    pub fn col_string(&self) -> String {
        sign_string(&self.col_signs)
    }
}

pub fn sign_string(signs: &[i8]) -> String {
    signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// `i(Θ)`: fewest on-lights reachable by switching.
    MinOnLights,
    /// `g(Θ)`: largest reachable `|Σ a_ij x_i y_j|`.
    MaxImbalance,
}

impl Quantity {
    /// Evaluates the quantity for the given grid under a fixed assignment.
    pub fn evaluate(self, theta: &LightGrid, sw: &SwitchAssignment) -> Result<u64> {
        let n = theta.n();
        sw.check_len(n)?;
        let mut on = 0u64;
        let mut total = 0i64;
        for i in 0..n {
            for j in 0..n {
                let v = theta.get(i, j) * sw.row_signs[i] * sw.col_signs[j];
                total += v as i64;
                if v > 0 {
                    on += 1;
                }
            }
        }
        Ok(match self {
            Quantity::MinOnLights => on,
            Quantity::MaxImbalance => total.unsigned_abs(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSolution {
    pub value: u64,
    pub witness: SwitchAssignment,
    pub quantity: Quantity,
}

impl GameSolution {
    /// Recomputes the quantity from the witness; equals `value` for any
    /// solution produced by this module.
    pub fn recompute(&self, theta: &LightGrid) -> Result<u64> {
        self.quantity.evaluate(theta, &self.witness)
    }
}

/// On-light counts per column after row switches `row_signs`.
pub fn column_counts(theta: &LightGrid, row_signs: &[i8]) -> Result<Vec<u32>> {
    let n = theta.n();
    if row_signs.len() != n {
        return Err(Error::Shape(format!(
            "{} row signs for a {n}x{n} grid",
            row_signs.len()
        )));
    }
    Ok((0..n)
        .map(|j| {
            (0..n)
                .filter(|&i| theta.get(i, j) * row_signs[i] > 0)
                .count() as u32
        })
        .collect())
}

#[inline]
fn min_on(c: i32, n: i32) -> i32 {
    c.min(n - c)
}

#[inline]
fn imbalance(c: i32, n: i32) -> i32 {
    (2 * c - n).abs()
}

/// Gray-code scan over `x ∈ {±1}^n` with `x_1 = +1`, keeping the column
/// counts current with O(n) work per single-row flip. Returns the first
/// optimum met in visit order.
fn gray_scan(theta: &LightGrid, quantity: Quantity) -> Result<GameSolution> {
    let n = theta.n();
    budget::check("switch enumeration bits", (n - 1) as u64, budget::SOLVE_BITS)?;
    let ni = n as i32;
    let a: Vec<Vec<i8>> = theta.matrix().to_rows();
    let mut x = vec![1i8; n];
    let mut counts: Vec<i32> = (0..n)
        .map(|j| (0..n).filter(|&i| a[i][j] > 0).count() as i32)
        .collect();
    let column_term = |c: i32| match quantity {
        Quantity::MinOnLights => min_on(c, ni),
        Quantity::MaxImbalance => imbalance(c, ni),
    };
    let improves = |new: i64, best: i64| match quantity {
        Quantity::MinOnLights => new < best,
        Quantity::MaxImbalance => new > best,
    };

    let mut score: i64 = counts.iter().map(|&c| column_term(c) as i64).sum();
    let mut best = score;
    let mut best_x = x.clone();
    let steps: u64 = 1u64 << (n - 1);
    for t in 1..steps {
        let r = t.trailing_zeros() as usize + 1;
        x[r] = -x[r];
        let s = x[r];
        for (j, c) in counts.iter_mut().enumerate() {
            let before = column_term(*c);
            *c += (a[r][j] * s) as i32;
            score += (column_term(*c) - before) as i64;
        }
        if cfg!(debug_assertions) && t % 1024 == 0 {
            let fresh = column_counts(theta, &x)?;
            debug_assert!(fresh.iter().zip(&counts).all(|(&f, &c)| f as i32 == c));
        }
        if improves(score, best) {
            best = score;
            best_x.copy_from_slice(&x);
        }
    }

    let counts = column_counts(theta, &best_x)?;
    let col_signs = counts
        .iter()
        .map(|&c| {
            let c = c as i32;
            match quantity {
                Quantity::MinOnLights => {
                    if c <= ni - c {
                        1
                    } else {
                        -1
                    }
                }
                Quantity::MaxImbalance => {
                    if 2 * c >= ni {
                        1
                    } else {
                        -1
                    }
                }
            }
        })
        .collect();
    Ok(GameSolution {
        value: best as u64,
        witness: SwitchAssignment {
            row_signs: best_x,
            col_signs,
        },
        quantity,
    })
}

/// `i(Θ)`: the fewest on-lights reachable by row and column switches.
pub fn solve_i(theta: &LightGrid) -> Result<GameSolution> {
    gray_scan(theta, Quantity::MinOnLights)
}

/// `g(Θ)`: the largest `|Σ a_ij x_i y_j|` over switches.
pub fn solve_g(theta: &LightGrid) -> Result<GameSolution> {
    gray_scan(theta, Quantity::MaxImbalance)
}

/// Largest grid accepted by [`brute_force_i`].
pub const BRUTE_FORCE_MAX_N: usize = 6;

/// `i(Θ)` by enumerating every `(x, y)` pair and counting lights directly.
pub fn brute_force_i(theta: &LightGrid) -> Result<u64> {
    let n = theta.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::SizeLimit {
            what: "brute-force grid size",
            requested: n as u64,
            limit: BRUTE_FORCE_MAX_N as u64,
        });
    }
    let a = theta.matrix().to_rows();
    let sign = |mask: u32, i: usize| if mask >> i & 1 == 1 { -1i8 } else { 1 };
    let mut best = u64::MAX;
    for xm in 0..(1u32 << n) {
        for ym in 0..(1u32 << n) {
            let mut on = 0u64;
            for (i, row) in a.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if v * sign(xm, i) * sign(ym, j) > 0 {
                        on += 1;
                    }
                }
            }
            best = best.min(on);
        }
    }
    Ok(best)
}

/// Top-left `n × n` block of the smallest constructible Hadamard matrix of
/// order `≥ n`. Its `i(Θ)` is a lower bound for `R_n`.
pub fn hadamard_config(n: usize) -> Result<LightGrid> {
    let (_, h) = OrderRegistry.constructible_order_at_least(n as u64)?;
    LightGrid::new(h.leading_block(n, n)?)
}

// ---------------------------------------------------------------------------
// Exhaustive search over normalized grids
// ---------------------------------------------------------------------------

/// Options for the exhaustive grid searches.
#[derive(Debug, Clone, Copy)]
pub struct ExactOptions {
    /// Number of contiguous index partitions evaluated in parallel.
    pub jobs: usize,
    /// Admit n = 7 (about 2^36 grids).
    pub allow_long_running: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self {
            jobs: 1,
            allow_long_running: false,
        }
    }
}

/// Best value found on a range of grid indices, with the smallest index
/// attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeOutcome {
    pub value: u64,
    pub index: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactOutcome {
    pub n: usize,
    /// `R_n` for [`Quantity::MinOnLights`], `G_n` for [`Quantity::MaxImbalance`].
    pub value: u64,
    /// A normalized grid attaining the value (smallest index among ties).
    pub grid: LightGrid,
    pub grids_searched: u64,
}

/// Number of normalized grids of size `n`: `2^{(n−1)²}`.
pub fn search_space_size(n: usize) -> Result<u64> {
    let bits = exact_bits(n)?;
    Ok(1u64 << bits)
}

fn exact_bits(n: usize) -> Result<u32> {
    if n == 0 {
        return Err(Error::UnsupportedParameter("grid size must be positive".into()));
    }
    let k = (n - 1) as u64;
    if k * k > 62 {
        return Err(Error::SizeLimit {
            what: "normalized grid bits",
            requested: k * k,
            limit: 62,
        });
    }
    Ok((k * k) as u32)
}

fn check_exact_guard(n: usize, allow_long_running: bool) -> Result<()> {
    let bits = exact_bits(n)? as u64;
    let default = if allow_long_running {
        budget::EXACT_LONG_BITS
    } else {
        budget::EXACT_BITS
    };
    budget::check("normalized grid bits", bits, default)
}

/// Normalized grid with the given search index. Column `j ≥ 1` is digit
/// `j − 1` of the index in base `2^{n−1}`; bit `i − 1` of a digit set means
/// entry `(i, j)` is −1. Row 0 and column 0 are all +1.
pub fn grid_from_index(n: usize, index: u64) -> Result<LightGrid> {
    let bits = exact_bits(n)?;
    if bits < 64 && index >> bits != 0 {
        return Err(Error::UnsupportedParameter(format!(
            "grid index {index} out of range for n = {n}"
        )));
    }
    let k = n - 1;
    let digit = |j: usize| -> u64 {
        if k == 0 {
            0
        } else {
            (index >> (k * j)) & ((1u64 << k) - 1)
        }
    };
    let m = SignMatrix::from_fn(n, n, |i, j| {
        if i == 0 || j == 0 {
            1
        } else if digit(j - 1) >> (i - 1) & 1 == 1 {
            -1
        } else {
            1
        }
    })?;
    LightGrid::new(m)
}

/// Per-column lookup tables for the exhaustive search: entry
/// `[pattern][x]` is the column's contribution under row switches `x`.
struct ColumnTables {
    k: usize,
    width: usize,
    table: Vec<u8>,
}

impl ColumnTables {
    fn new(n: usize, quantity: Quantity) -> Self {
        let k = n - 1;
        let width = 1usize << k;
        let ni = n as i32;
        let mut table = vec![0u8; width * width];
        for p in 0..width {
            for x in 0..width {
                // Row 0 is on under x_1 = +1; rows ≥ 1 are on where the
                // pattern bit agrees with the switch bit.
                let c = 1 + k as i32 - (p ^ x).count_ones() as i32;
                table[p * width + x] = match quantity {
                    Quantity::MinOnLights => min_on(c, ni),
                    Quantity::MaxImbalance => imbalance(c, ni),
                } as u8;
            }
        }
        Self { k, width, table }
    }

    #[inline]
    fn row(&self, p: usize) -> &[u8] {
        &self.table[p * self.width..(p + 1) * self.width]
    }
}

/// Evaluates one quantity over every normalized grid with index in `range`.
///
/// This is the partition contract: disjoint ranges can run independently
/// and their outcomes combine with [`combine_outcomes`], which is
/// associative, so any split gives the same answer.
pub fn exact_search_range(n: usize, quantity: Quantity, range: Range<u64>) -> Result<Option<RangeOutcome>> {
    let total = search_space_size(n)?;
    if range.end > total || range.start > range.end {
        return Err(Error::UnsupportedParameter(format!(
            "range {range:?} outside search space of size {total}"
        )));
    }
    if range.is_empty() {
        return Ok(None);
    }
    let tables = ColumnTables::new(n, quantity);
    Ok(Some(match quantity {
        Quantity::MinOnLights => scan_range::<true>(&tables, range),
        Quantity::MaxImbalance => scan_range::<false>(&tables, range),
    }))
}

/// Odometer over grid indices with cached prefix sums. With `MAXIMIN` the
/// per-grid value is the minimum over `x` and the search keeps the largest;
/// otherwise the per-grid value is the maximum and the search keeps the
/// smallest.
fn scan_range<const MAXIMIN: bool>(t: &ColumnTables, range: Range<u64>) -> RangeOutcome {
    let k = t.k;
    let w = t.width;
    let eval = |v: &[u8]| -> u8 {
        if MAXIMIN {
            v.iter().copied().min().unwrap_or(0)
        } else {
            v.iter().copied().max().unwrap_or(0)
        }
    };
    let better = |a: u8, b: u8| if MAXIMIN { a > b } else { a < b };

    if k == 0 {
        let v = eval(t.row(0));
        return RangeOutcome {
            value: v as u64,
            index: 0,
        };
    }

    let mask = (w - 1) as u64;
    let mut digits: Vec<usize> = (0..k).map(|j| ((range.start >> (k * j)) & mask) as usize).collect();
    // acc[l] = column 0 plus columns of digits k−1 down to k−l.
    let mut acc = vec![vec![0u8; w]; k];
    acc[0].copy_from_slice(t.row(0));
    let rebuild = |acc: &mut Vec<Vec<u8>>, digits: &[usize], from_level: usize| {
        for l in from_level.max(1)..k {
            let (lo, hi) = acc.split_at_mut(l);
            let prev = &lo[l - 1];
            let col = t.row(digits[k - l]);
            for ((d, &p), &c) in hi[0].iter_mut().zip(prev).zip(col) {
                *d = p + c;
            }
        }
    };
    rebuild(&mut acc, &digits, 1);

    let mut best_value = if MAXIMIN { 0u8 } else { u8::MAX };
    let mut best_index = range.start;
    let mut have_best = false;
    let mut scratch = vec![0u8; w];
    let mut index = range.start;

    while index < range.end {
        // Innermost digit 0 runs over a contiguous block.
        let d0 = digits[0];
        let block = ((w - d0) as u64).min(range.end - index) as usize;
        let base = &acc[k - 1];
        for off in 0..block {
            let col = t.row(d0 + off);
            for ((s, &b), &c) in scratch.iter_mut().zip(base).zip(col) {
                *s = b + c;
            }
            let v = eval(&scratch);
            if !have_best || better(v, best_value) {
                best_value = v;
                best_index = index + off as u64;
                have_best = true;
            }
        }
        index += block as u64;
        if index >= range.end {
            break;
        }
        // Carry into higher digits.
        digits[0] = 0;
        let mut p = 1;
        loop {
            digits[p] += 1;
            if digits[p] < w {
                break;
            }
            digits[p] = 0;
            p += 1;
        }
        rebuild(&mut acc, &digits, k - p);
    }
    RangeOutcome {
        value: best_value as u64,
        index: best_index,
    }
}

/// Combines two range outcomes: the better value wins, ties go to the
/// smaller index.
pub fn combine_outcomes(quantity: Quantity, a: RangeOutcome, b: RangeOutcome) -> RangeOutcome {
    let a_wins = match quantity {
        Quantity::MinOnLights => a.value > b.value || (a.value == b.value && a.index <= b.index),
        Quantity::MaxImbalance => a.value < b.value || (a.value == b.value && a.index <= b.index),
    };
    if a_wins {
        a
    } else {
        b
    }
}

fn exact_search(n: usize, quantity: Quantity, opts: ExactOptions) -> Result<ExactOutcome> {
    check_exact_guard(n, opts.allow_long_running)?;
    let total = search_space_size(n)?;
    let jobs = (opts.jobs.max(1) as u64).min(total);
    let chunk = total.div_ceil(jobs);
    let ranges: Vec<Range<u64>> = (0..jobs)
        .map(|j| (j * chunk).min(total)..((j + 1) * chunk).min(total))
        .filter(|r| !r.is_empty())
        .collect();

    let outcomes: Vec<Result<Option<RangeOutcome>>> = if ranges.len() == 1 {
        vec![exact_search_range(n, quantity, ranges[0].clone())]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = ranges
                .iter()
                .cloned()
                .map(|r| s.spawn(move || exact_search_range(n, quantity, r)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    };

    let mut best: Option<RangeOutcome> = None;
    for o in outcomes {
        if let Some(o) = o? {
            best = Some(match best {
                None => o,
                Some(b) => combine_outcomes(quantity, b, o),
            });
        }
    }
    let best = best.expect("search space is never empty");
    Ok(ExactOutcome {
        n,
        value: best.value,
        grid: grid_from_index(n, best.index)?,
        grids_searched: total,
    })
}

/// `R_n`: the largest `i(Θ)` over all `n × n` grids.
pub fn exact_r(n: usize, opts: ExactOptions) -> Result<ExactOutcome> {
    exact_search(n, Quantity::MinOnLights, opts)
}

/// `G_n`: the smallest `g(Θ)` over all `n × n` grids.
pub fn exact_g(n: usize, opts: ExactOptions) -> Result<ExactOutcome> {
    exact_search(n, Quantity::MaxImbalance, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::sylvester;

    fn grid(rows: &[&str]) -> LightGrid {
        LightGrid::parse(&rows.join("\n")).unwrap()
    }

    #[test]
    fn column_counts_examples() {
        let all = LightGrid::all_on(3).unwrap();
        assert_eq!(column_counts(&all, &[1, 1, 1]).unwrap(), vec![3, 3, 3]);
        let h2 = LightGrid::new(sylvester(1).unwrap()).unwrap();
        assert_eq!(column_counts(&h2, &[1, 1]).unwrap(), vec![2, 1]);
        assert!(matches!(column_counts(&h2, &[1]), Err(Error::Shape(_))));
    }

    #[test]
    fn global_flip_keeps_imbalances() {
        let g = grid(&["+-+-", "--++", "+++-", "-+--"]);
        let x = [1i8, -1, -1, 1];
        let neg: Vec<i8> = x.iter().map(|v| -v).collect();
        let a = column_counts(&g, &x).unwrap();
        let b = column_counts(&g, &neg).unwrap();
        for (ca, cb) in a.iter().zip(&b) {
            assert_eq!((2 * *ca as i32 - 4).abs(), (2 * *cb as i32 - 4).abs());
        }
    }

    #[test]
    fn solver_examples() {
        let all10 = LightGrid::all_on(10).unwrap();
        let s = solve_i(&all10).unwrap();
        assert_eq!(s.value, 0);
        assert_eq!(s.recompute(&all10).unwrap(), 0);
        assert_eq!(solve_g(&all10).unwrap().value, 100);

        let h2 = LightGrid::new(sylvester(1).unwrap()).unwrap();
        assert_eq!(solve_i(&h2).unwrap().value, 1);
        assert_eq!(solve_g(&h2).unwrap().value, 2);

        let h4 = LightGrid::new(sylvester(2).unwrap()).unwrap();
        assert_eq!(solve_i(&h4).unwrap().value, 4);
        assert_eq!(solve_g(&h4).unwrap().value, 8);
    }

    #[test]
    fn witnesses_reproduce_values_and_are_normalized() {
        let g = grid(&["+-+--", "--++-", "+++-+", "-+--+", "++-+-"]);
        for sol in [solve_i(&g).unwrap(), solve_g(&g).unwrap()] {
            assert_eq!(sol.recompute(&g).unwrap(), sol.value);
            assert_eq!(sol.witness.row_signs[0], 1);
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_i(&LightGrid::all_on(2).unwrap()).unwrap(), 0);
        let mut one_off = SignMatrix::ones(3, 3).unwrap();
        one_off.set(1, 2, -1);
        assert_eq!(brute_force_i(&LightGrid::new(one_off).unwrap()).unwrap(), 1);
        let h2 = LightGrid::new(sylvester(1).unwrap()).unwrap();
        assert_eq!(brute_force_i(&h2).unwrap(), 1);
        assert!(matches!(
            brute_force_i(&LightGrid::all_on(7).unwrap()),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn solve_guard() {
        assert!(matches!(
            solve_i(&LightGrid::all_on(31).unwrap()),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn non_square_grid_rejected() {
        assert!(LightGrid::new(SignMatrix::ones(2, 3).unwrap()).is_err());
    }

    #[test]
    fn grid_index_layout() {
        assert_eq!(grid_from_index(1, 0).unwrap().to_grid_text(), "+\n");
        assert_eq!(grid_from_index(2, 1).unwrap().to_grid_text(), "++\n+-\n");
        // n = 3: digit 0 (column 1) = 0b10 marks row 2; digit 1 (column 2) = 0b01 marks row 1.
        let g = grid_from_index(3, 0b01_10).unwrap();
        assert_eq!(g.to_grid_text(), "+++\n++-\n+-+\n");
        assert!(grid_from_index(2, 2).is_err());
    }

    #[test]
    fn small_exact_values() {
        let o = ExactOptions::default();
        let r: Vec<u64> = (1..=4).map(|n| exact_r(n, o).unwrap().value).collect();
        assert_eq!(r, vec![0, 1, 2, 4]);
        let g: Vec<u64> = (1..=4).map(|n| exact_g(n, o).unwrap().value).collect();
        assert_eq!(g, vec![1, 2, 5, 8]);
    }

    #[test]
    fn range_scan_matches_per_grid_solver() {
        for n in 2..=4usize {
            let total = search_space_size(n).unwrap();
            let mut best_r = 0;
            let mut best_g = u64::MAX;
            for idx in 0..total {
                let g = grid_from_index(n, idx).unwrap();
                best_r = best_r.max(solve_i(&g).unwrap().value);
                best_g = best_g.min(solve_g(&g).unwrap().value);
            }
            let o = ExactOptions::default();
            assert_eq!(exact_r(n, o).unwrap().value, best_r);
            assert_eq!(exact_g(n, o).unwrap().value, best_g);
        }
    }

    #[test]
    fn partitioning_does_not_change_result() {
        let n = 4;
        let whole = exact_r(n, ExactOptions::default()).unwrap();
        for jobs in [2, 3, 5, 8, 13] {
            let split = exact_r(
                n,
                ExactOptions {
                    jobs,
                    allow_long_running: false,
                },
            )
            .unwrap();
            assert_eq!(split, whole);
        }
        let total = search_space_size(n).unwrap();
        let mut acc: Option<RangeOutcome> = None;
        for lo in (0..total).step_by(37) {
            let part = exact_search_range(n, Quantity::MinOnLights, lo..(lo + 37).min(total))
                .unwrap()
                .unwrap();
            acc = Some(match acc {
                None => part,
                Some(a) => combine_outcomes(Quantity::MinOnLights, a, part),
            });
        }
        assert_eq!(acc.unwrap().value, whole.value);
        assert_eq!(grid_from_index(n, acc.unwrap().index).unwrap(), whole.grid);
    }

    #[test]
    fn exact_guard() {
        assert!(matches!(
            exact_r(7, ExactOptions::default()),
            Err(Error::SizeLimit { .. })
        ));
        assert!(exact_r(0, ExactOptions::default()).is_err());
    }

    #[test]
    fn hadamard_config_shapes() {
        let g16 = hadamard_config(16).unwrap();
        assert_eq!(g16.matrix(), &sylvester(4).unwrap());
        let g15 = hadamard_config(15).unwrap();
        assert_eq!(g15.n(), 15);
        assert_eq!(g15.matrix(), &sylvester(4).unwrap().leading_block(15, 15).unwrap());
    }
}
