use thiserror::Error;

/// Errors surfaced by the numerical kernels and state builders.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid Fock index {0}: the spectrum contains n = 0, 3, 4, ... only")]
    InvalidFockIndex(u32),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("argument {0} outside function domain: {1}")]
    Domain(f64, &'static str),

    #[error("undeformed ladder action would divide a nonzero amplitude by f = 0 at n = {n}")]
    DegenerateDivision { n: u32 },

    #[error("state is not normalized (|norm - 1| = {0:.3e})")]
    Unnormalized(f64),

    #[error("operation requires a {expected} state, got {found}")]
    FamilyMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("quadrature failed to reach tolerance {tolerance:.3e} after {refinements} refinements (value {value:.17e}, error {error_estimate:.3e})")]
    QuadratureExhausted {
        value: f64,
        error_estimate: f64,
        tolerance: f64,
        refinements: u32,
    },

    #[error("hypergeometric series did not converge within {0} terms")]
    NonConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
