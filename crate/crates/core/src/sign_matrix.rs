//! Dense ±1 matrices with bit-packed rows.
//!
//! Row `i` occupies `words_per_row` consecutive `u64` words; bit `j % 64` of
//! word `j / 64` is 1 when entry `(i, j)` is +1 and 0 when it is −1. Bits past
//! `cols` in the last word are always zero, so whole-word XOR/popcount on two
//! rows counts exactly the disagreeing entries.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

#[inline]
fn words_for(cols: usize) -> usize {
    cols.div_ceil(64)
}

impl SignMatrix {
    /// All-plus matrix.
    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        Self::from_fn(rows, cols, |_, _| 1)
    }

    /// Builds a matrix from a closure returning the sign of each entry.
    /// Any positive value maps to +1, anything else to −1.
    pub fn from_fn<F>(rows: usize, cols: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> i8,
    {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!(
                "sign matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        let words_per_row = words_for(cols);
        let mut bits = vec![0u64; rows * words_per_row];
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) > 0 {
                    bits[i * words_per_row + j / 64] |= 1u64 << (j % 64);
                }
            }
        }
        Ok(Self {
            rows,
            cols,
            words_per_row,
            bits,
        })
    }

    /// Builds a matrix from rows of integer signs; every entry must be ±1.
    pub fn from_rows<R: AsRef<[i8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            if let Some(bad) = r.iter().find(|&&v| v != 1 && v != -1) {
                return Err(Error::Shape(format!("entry {bad} in row {i} is not a sign")));
            }
        }
        Self::from_fn(rows.len(), cols, |i, j| rows[i].as_ref()[j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        debug_assert!(i < self.rows && j < self.cols);
        if self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1 {
            1
        } else {
            -1
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, sign: i8) {
        let w = &mut self.bits[i * self.words_per_row + j / 64];
        if sign > 0 {
            *w |= 1u64 << (j % 64);
        } else {
            *w &= !(1u64 << (j % 64));
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.bits[i * self.words_per_row + j / 64] ^= 1u64 << (j % 64);
    }

    /// Packed words of row `i`.
    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// Exact inner product of rows `a` and `b`: `cols − 2·popcount(a XOR b)`.
    pub fn row_dot(&self, a: usize, b: usize) -> i64 {
        let disagree: u32 = self
            .row_words(a)
            .iter()
            .zip(self.row_words(b))
            .map(|(x, y)| (x ^ y).count_ones())
            .sum();
        self.cols as i64 - 2 * disagree as i64
    }

    /// Negates every entry of row `i`.
    pub fn negate_row(&mut self, i: usize) {
        let tail = self.tail_mask();
        let w = self.words_per_row;
        for (k, word) in self.bits[i * w..(i + 1) * w].iter_mut().enumerate() {
            *word = !*word;
            if k == w - 1 {
                *word &= tail;
            }
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self.flip(i, j);
        }
    }

    fn tail_mask(&self) -> u64 {
        match self.cols % 64 {
            0 => u64::MAX,
            r => (1u64 << r) - 1,
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i)).expect("non-empty")
    }

    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        for i in 0..out.rows {
            out.negate_row(i);
        }
        out
    }

    /// Top-left `rows × cols` block.
    pub fn leading_block(&self, rows: usize, cols: usize) -> Result<Self> {
        if rows > self.rows || cols > self.cols {
            return Err(Error::Shape(format!(
                "cannot take a {rows}x{cols} block of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Self::from_fn(rows, cols, |i, j| self.get(i, j))
    }

    /// Rows as `i8` vectors.
    pub fn to_rows(&self) -> Vec<Vec<i8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Renders in the shared grid text format: one line per row, `+`/`-`,
    /// with a trailing newline.
    pub fn to_grid_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for i in 0..self.rows {
            for j in 0..self.cols {
                s.push(if self.get(i, j) > 0 { '+' } else { '-' });
            }
            s.push('\n');
        }
        s
    }

    /// Parses the grid text format. Lines hold only `+` and `-`; all lines
    /// have equal length; a single trailing newline is optional.
    pub fn parse_grid_text(text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let body = body.strip_suffix('\r').unwrap_or(body);
        if body.is_empty() {
            return Err(Error::Parse {
                line: 1,
                detail: "empty grid".into(),
            });
        }
        let mut rows: Vec<Vec<i8>> = Vec::new();
        for (idx, line) in body.split('\n').enumerate() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            let mut row = Vec::with_capacity(line.len());
            for ch in line.chars() {
                row.push(match ch {
                    '+' => 1,
                    '-' => -1,
                    other => {
                        return Err(Error::Parse {
                            line: idx + 1,
                            detail: format!("unexpected character {other:?}"),
                        })
                    }
                });
            }
            if row.is_empty() {
                return Err(Error::Parse {
                    line: idx + 1,
                    detail: "empty row".into(),
                });
            }
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(Error::Parse {
                        line: idx + 1,
                        detail: format!("row has {} entries, expected {}", row.len(), first.len()),
                    });
                }
            }
            rows.push(row);
        }
        Self::from_rows(&rows)
    }
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SignMatrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_grid_text())
    }
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_grid_text())
    }
}
