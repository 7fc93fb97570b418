//! Serializable, re-verifiable records of single inequalities.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::covering::verify_sqrt85;
use super::surd::Surd;
use super::{analytic_r_lower, c22_upper, g_ratio_upper, global_g_constant, GRatioSource};
use crate::budget;
use crate::error::{Error, Result};
use crate::hadamard::OrderRegistry;
use crate::switching::{exact_r, hadamard_config, solve_i, ExactOptions};

/// Largest `n` for which a certificate evaluates `i(Θ)` of the truncated
/// Hadamard grid.
pub const EXACT_CONFIG_MAX_N: u64 = 30;

/// Relative agreement required between `bound_decimal` and `bound_symbolic`.
const DECIMAL_AGREEMENT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    AnalyticHadamard,
    ExactSearch,
    TruncatedConfig,
    Covering,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub quantity: String,
    pub relation: Relation,
    pub bound_symbolic: String,
    pub bound_decimal: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_n: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_n: Option<u64>,
    /// Path of a grid file written alongside the certificate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_value: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analytic_value: Option<u64>,
    /// The real-valued bound before integer rounding.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analytic_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maximizer: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub claim: Claim,
    pub inputs: Inputs,
    pub method: Method,
    pub evidence: Evidence,
    pub verified: bool,
}

fn claim_surd(quantity: &str, relation: Relation, s: Surd) -> Claim {
    Claim {
        quantity: quantity.to_string(),
        relation,
        bound_symbolic: s.symbolic(),
        bound_decimal: s.decimal(),
    }
}

const Q_R: &str = "R_n";
const Q_C22: &str = "C_{2,2,n,n}";
const Q_C22_SUP: &str = "max_{n<=N} C_{2,2,n,n}";
const Q_G_RATIO: &str = "max_{n<=N} G_n/n^{3/2}";

impl BoundCertificate {
    /// The bound as an integer, when it is one.
    pub fn claimed_integer(&self) -> Option<u64> {
        self.claim.bound_symbolic.parse().ok()
    }

    /// Whether `bound_decimal` agrees with `bound_symbolic` to 12 digits.
    pub fn decimal_agrees(&self) -> bool {
        let Ok(s) = Surd::parse(&self.claim.bound_symbolic) else {
            return false;
        };
        let Ok(d) = self.claim.bound_decimal.parse::<f64>() else {
            return false;
        };
        let exact = s.to_f64();
        (d - exact).abs() <= DECIMAL_AGREEMENT * exact.abs().max(1.0)
    }

    /// Regenerates the certificate from its inputs and method.
    pub fn regenerate(&self) -> Result<BoundCertificate> {
        let need = |v: Option<u64>, what: &str| {
            v.ok_or_else(|| Error::UnsupportedParameter(format!("certificate is missing input {what}")))
        };
        let mut fresh = match (self.claim.quantity.as_str(), self.method) {
            (Q_R, Method::AnalyticHadamard | Method::TruncatedConfig) => {
                r_lower_certificate(need(self.inputs.n, "n")?)?
            }
            (Q_R, Method::ExactSearch) => exact_r_certificate(
                need(self.inputs.n, "n")? as usize,
                ExactOptions {
                    jobs: std::thread::available_parallelism().map_or(1, |p| p.get()),
                    allow_long_running: false,
                },
            )?,
            (Q_C22, Method::AnalyticHadamard) => c22_certificate(need(self.inputs.n, "n")?)?,
            (Q_C22_SUP, Method::Covering) => sqrt85_certificate(need(self.inputs.max_n, "max_n")?)?,
            (Q_G_RATIO, Method::Covering) => global_g_bound(need(self.inputs.max_n, "max_n")?)?,
            (q, m) => {
                return Err(Error::UnsupportedParameter(format!(
                    "no generator for quantity {q:?} with method {m:?}"
                )))
            }
        };
        fresh.evidence.grid_file = self.evidence.grid_file.clone();
        Ok(fresh)
    }

    /// Recomputes the certificate and checks that it reproduces this one,
    /// field for field (the grid file path excepted).
    pub fn verify(&self) -> Result<bool> {
        if !self.decimal_agrees() {
            return Ok(false);
        }
        let fresh = self.regenerate()?;
        Ok(fresh.verified
            && fresh.claim == self.claim
            && fresh.inputs == self.inputs
            && fresh.method == self.method
            && fresh.evidence == self.evidence)
    }

    fn seal(mut self) -> Self {
        self.verified = self.decimal_agrees();
        self
    }
}

/// Lower bound for `R_n` from a Hadamard matrix of order `k_n ≥ n`.
///
/// Two branches:
/// - analytic: `⌈(n² − n√k_n)/2⌉`, always available;
/// - truncated config: `i(Θ)` of the leading `n × n` block of an explicit
///   Hadamard matrix, for `n ≤ 30` within the solve budget.
///
/// The claim is the larger value.
pub fn r_lower_certificate(n: u64) -> Result<BoundCertificate> {
    if n == 0 {
        return Err(Error::UnsupportedParameter("n must be positive".into()));
    }
    let k = OrderRegistry.known_order_at_least(n);
    let analytic = analytic_r_lower(n, k);
    let real = ((n * n) as f64 - n as f64 * (k as f64).sqrt()) / 2.0;
    let mut notes = vec![format!(
        "analytic: R_n >= (n^2 - n*sqrt(k_n))/2 = {real}, rounded up to {analytic} since R_n is an integer"
    )];

    let mut exact = None;
    let within_budget = n - 1 <= budget::effective_cap(budget::SOLVE_BITS) as u64;
    if n <= EXACT_CONFIG_MAX_N && within_budget {
        match hadamard_config(n as usize) {
            Ok(theta) => {
                let r = OrderRegistry
                    .constructible_order_at_least(n)
                    .map(|(r, _)| r)
                    .unwrap_or(k);
                let recipe = OrderRegistry
                    .recipe(r)
                    .map(|x| x.describe())
                    .unwrap_or_default();
                let v = solve_i(&theta)?.value;
                notes.push(format!(
                    "truncated config: i(theta) of the leading {n}x{n} block of {recipe} (order {r}) is {v}"
                ));
                exact = Some(v);
            }
            Err(Error::CoverageGap { .. }) => {
                notes.push("truncated config: no explicit Hadamard matrix available".into());
            }
            Err(e) => return Err(e),
        }
    } else {
        notes.push("truncated config: skipped, outside the enumeration budget".into());
    }

    let (claim, method) = match exact {
        Some(v) if v >= analytic => (v, Method::TruncatedConfig),
        _ => (analytic, Method::AnalyticHadamard),
    };
    Ok(BoundCertificate {
        claim: claim_surd(Q_R, Relation::Ge, Surd::integer(claim)),
        inputs: Inputs {
            n: Some(n),
            ..Inputs::default()
        },
        method,
        evidence: Evidence {
            k_n: Some(k),
            exact_value: exact,
            analytic_value: Some(analytic),
            analytic_bound: Some(real),
            notes,
            ..Evidence::default()
        },
        verified: false,
    }
    .seal())
}

/// Exact `R_n` by exhaustive search, with the worst grid recorded in the
/// notes.
pub fn exact_r_certificate(n: usize, opts: ExactOptions) -> Result<BoundCertificate> {
    let out = exact_r(n, opts)?;
    Ok(BoundCertificate {
        claim: claim_surd(Q_R, Relation::Eq, Surd::integer(out.value)),
        inputs: Inputs {
            n: Some(n as u64),
            ..Inputs::default()
        },
        method: Method::ExactSearch,
        evidence: Evidence {
            exact_value: Some(out.value),
            notes: vec![
                format!("searched {} normalized grids", out.grids_searched),
                format!("worst grid: {}", out.grid.to_grid_text().trim_end().replace('\n', "/")),
            ],
            ..Evidence::default()
        },
        verified: false,
    }
    .seal())
}

/// `C_{2,2,n,n} ≤ √(k_n/n)`.
pub fn c22_certificate(n: u64) -> Result<BoundCertificate> {
    if n == 0 {
        return Err(Error::UnsupportedParameter("n must be positive".into()));
    }
    let c = c22_upper(n);
    Ok(BoundCertificate {
        claim: claim_surd(Q_C22, Relation::Le, c.surd()),
        inputs: Inputs {
            n: Some(n),
            ..Inputs::default()
        },
        method: Method::AnalyticHadamard,
        evidence: Evidence {
            k_n: Some(c.k_n),
            notes: vec!["leading n x n block of a Hadamard matrix of order k_n has spectral norm <= sqrt(k_n)".into()],
            ..Evidence::default()
        },
        verified: false,
    }
    .seal())
}

/// `C_{2,2,n,n} ≤ √(8/5)` for every `n ≤ max_n`.
pub fn sqrt85_certificate(max_n: u64) -> Result<BoundCertificate> {
    let report = verify_sqrt85(max_n)?;
    let (p, q) = report.max_ratio_exact;
    let mut notes = vec![format!(
        "max k_n/n = {p}/{q} attained {} time(s)",
        report.argmax_count
    )];
    if !report.cells.is_empty() {
        notes.push(format!("{} cells A_(m,k) used beyond n = 664", report.cells.len()));
    }
    Ok(BoundCertificate {
        claim: claim_surd(Q_C22_SUP, Relation::Le, Surd::sqrt_of_ratio(p, q)),
        inputs: Inputs {
            max_n: Some(max_n),
            ..Inputs::default()
        },
        method: Method::Covering,
        evidence: Evidence {
            maximizer: Some(report.argmax_n),
            notes,
            ..Evidence::default()
        },
        verified: false,
    }
    .seal())
}

/// `G_n / n^{3/2} ≤ 75√17/289` for every `n ≤ max_n`: Table 3 values up to
/// `n = 20`, `√(k_n/n)` beyond.
pub fn global_g_bound(max_n: u64) -> Result<BoundCertificate> {
    if max_n < 21 {
        return Err(Error::UnsupportedParameter(format!(
            "global G bound needs max_n >= 21, got {max_n}"
        )));
    }
    let ceiling = global_g_constant();
    let ceiling_sq = ceiling.square();
    let ceiling_f = ceiling.to_f64();
    let mut best: Option<(Ratio<i128>, u64)> = None;
    for n in 1..=max_n {
        let b = g_ratio_upper(n);
        if b.squared > ceiling_sq || b.value() > ceiling_f + 1e-12 {
            let src = match b.source {
                GRatioSource::Table { g } => format!("G_n <= {g}"),
                GRatioSource::Hadamard { k_n } => format!("k_n = {k_n}"),
            };
            return Err(Error::Counterexample {
                n,
                detail: format!("{src} gives G_n/n^(3/2) <= {} > 75*sqrt(17)/289", b.value()),
            });
        }
        if best.map_or(true, |(v, _)| b.squared > v) {
            best = Some((b.squared, n));
        }
    }
    let (best_sq, argmax) = best.expect("range is non-empty");
    let attained = best_sq == ceiling_sq;
    Ok(BoundCertificate {
        claim: claim_surd(Q_G_RATIO, Relation::Le, ceiling),
        inputs: Inputs {
            max_n: Some(max_n),
            ..Inputs::default()
        },
        method: Method::Covering,
        evidence: Evidence {
            maximizer: Some(argmax),
            notes: vec![
                "n <= 20: Table 3 bounds on G_n; n > 20: G_n/n^(3/2) <= C_{2,2,n,n} <= sqrt(k_n/n)".into(),
                format!(
                    "largest bound {}/{} (squared) at n = {argmax}{}",
                    best_sq.numer(),
                    best_sq.denom(),
                    if attained { ", equal to the claim" } else { "" }
                ),
            ],
            ..Evidence::default()
        },
        verified: false,
    }
    .seal())
}
