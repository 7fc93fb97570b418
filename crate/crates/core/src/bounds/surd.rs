//! Exact values of the form `(p/q)·√r`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// `scale · √radicand` with a square-free radicand and a non-negative scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surd {
    scale: Ratio<i128>,
    radicand: u128,
}

impl Surd {
    pub fn new(scale: Ratio<i128>, radicand: u128) -> Self {
        assert!(*scale.numer() >= 0, "surd scale must be non-negative");
        let (outer, inner) = split_square(radicand);
        let scale = if inner == 0 {
            Ratio::from_integer(0)
        } else {
            scale * Ratio::from_integer(outer as i128)
        };
        Self {
            scale,
            radicand: if inner == 0 { 1 } else { inner },
        }
    }

    pub fn integer(v: u64) -> Self {
        Self::new(Ratio::from_integer(v as i128), 1)
    }

    pub fn rational(p: u64, q: u64) -> Self {
        Self::new(Ratio::new(p as i128, q as i128), 1)
    }

    /// `√(p/q) = (1/q)·√(pq)`.
    pub fn sqrt_of_ratio(p: u64, q: u64) -> Self {
        Self::new(Ratio::new(1, q as i128), p as u128 * q as u128)
    }

    pub fn scale(&self) -> Ratio<i128> {
        self.scale
    }

    pub fn radicand(&self) -> u128 {
        self.radicand
    }

    /// The exact square, a rational.
    pub fn square(&self) -> Ratio<i128> {
        self.scale * self.scale * Ratio::from_integer(self.radicand as i128)
    }

    pub fn to_f64(&self) -> f64 {
        (*self.scale.numer() as f64 / *self.scale.denom() as f64) * (self.radicand as f64).sqrt()
    }

    /// Canonical text: `p`, `p/q`, `sqrt(r)`, `p*sqrt(r)` or `p/q*sqrt(r)`.
    pub fn symbolic(&self) -> String {
        let (p, q) = (*self.scale.numer(), *self.scale.denom());
        let coeff = if q == 1 { format!("{p}") } else { format!("{p}/{q}") };
        match (self.radicand, p, q) {
            (1, _, _) => coeff,
            (r, 1, 1) => format!("sqrt({r})"),
            (r, _, _) => format!("{coeff}*sqrt({r})"),
        }
    }

    /// Decimal rendering; round-trips through `f64`.
    pub fn decimal(&self) -> String {
        format!("{}", self.to_f64())
    }

    /// Parses the canonical text produced by [`Surd::symbolic`].
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 1,
            detail: format!("not a surd: {text:?}"),
        };
        let text = text.trim();
        let (coeff, radicand) = match text.find("sqrt(") {
            Some(pos) => {
                let inner = text[pos + 5..].strip_suffix(')').ok_or_else(bad)?;
                let r: u128 = inner.parse().map_err(|_| bad())?;
                let head = text[..pos].trim_end_matches('*');
                (if head.is_empty() { "1" } else { head }, r)
            }
            None => (text, 1),
        };
        let scale = match coeff.split_once('/') {
            Some((p, q)) => {
                let p: i128 = p.parse().map_err(|_| bad())?;
                let q: i128 = q.parse().map_err(|_| bad())?;
                if q == 0 || p < 0 {
                    return Err(bad());
                }
                Ratio::new(p, q)
            }
            None => Ratio::from_integer(coeff.parse::<i128>().map_err(|_| bad())?),
        };
        if *scale.numer() < 0 {
            return Err(bad());
        }
        Ok(Self::new(scale, radicand))
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    /// Both sides are non-negative, so comparing squares is exact.
    fn cmp(&self, other: &Self) -> Ordering {
        self.square().cmp(&other.square())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbolic())
    }
}

/// Splits `r = outer² · inner` with `inner` square-free.
fn split_square(r: u128) -> (u128, u128) {
    if r == 0 {
        return (0, 0);
    }
    let mut outer = 1u128;
    let mut inner = 1u128;
    let mut rest = r;
    let mut d = 2u128;
    while d * d <= rest {
        let mut e = 0;
        while rest % d == 0 {
            rest /= d;
            e += 1;
        }
        for _ in 0..e / 2 {
            outer *= d;
        }
        if e % 2 == 1 {
            inner *= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    (outer, inner * rest)
}
