use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid term: quadratic coefficient must be positive (got a={a})")]
    InvalidTerm { a: u64 },

    #[error("invalid diagonal form: coefficients must be positive (got {coeffs:?})")]
    InvalidDiagonal { coeffs: [u64; 3] },

    #[error("invalid congruence class {residue} mod {modulus}")]
    InvalidClass { modulus: u64, residue: i64 },

    #[error("coordinate {index} value {value} is not {residue} mod {modulus}")]
    CongruenceViolation {
        index: usize,
        value: i64,
        modulus: u64,
        residue: i64,
    },

    #[error("neither {value} nor {neg} is congruent to {residue} mod {modulus}", neg = -value)]
    NoValidSign {
        value: i64,
        modulus: u64,
        residue: i64,
    },

    #[error("sieve limit {limit} needs {bytes} bytes, over the configured cap of {cap} bytes")]
    ResourceLimit { limit: u64, bytes: u64, cap: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{value} is not of the form {form}")]
    NotRepresentable { value: u64, form: &'static str },

    /// A representation the underlying lemma asserts should exist was not
    /// found. Any occurrence is a counterexample report.
    #[error("no representation found for {value} ({what})")]
    NotFound { value: u64, what: String },

    #[error("construction failed in clause {clause} at n={n}: {step}")]
    Construction {
        clause: &'static str,
        n: u64,
        step: String,
    },

    #[error("unsupported tuple {0}")]
    Unsupported(String),
}
