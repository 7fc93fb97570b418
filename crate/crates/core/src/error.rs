use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A requested enumeration or construction is over its configured budget.
    #[error("size limit exceeded for {what}: {requested} > {limit}")]
    SizeLimit {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("shape error: {0}")]
    Shape(String),

    /// No explicit Hadamard matrix could be produced for any order in the search window.
    #[error("coverage gap: no constructible Hadamard order in [{n}, {cap}]")]
    CoverageGap { n: u64, cap: u64 },

    #[error("power iteration did not converge after {iterations} iterations (last estimate {last_estimate})")]
    NumericFailure { iterations: usize, last_estimate: f64 },

    /// A claimed inequality was found to be false at `n`.
    #[error("counterexample at n = {n}: {detail}")]
    Counterexample { n: u64, detail: String },

    #[error("table regression in row n = {row}: {detail}")]
    TableRegression { row: u64, detail: String },

    #[error("parse error on line {line}: {detail}")]
    Parse { line: usize, detail: String },
}
