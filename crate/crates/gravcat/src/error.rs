//! Error types shared by the numeric layers of the crate.

use thiserror::Error;

/// Errors raised by matrix primitives, state construction, channels and
/// measures. Scenario-level errors (config parsing, I/O) live in
/// [`crate::scenario::ScenarioError`].
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    /// Matrix dimensions outside the supported 2x2 / 4x4 / 8x8 set.
    #[error("unsupported matrix dimensions {rows}x{cols}; only 2, 4 and 8 are supported")]
    UnsupportedDimension { rows: usize, cols: usize },

    /// Shapes incompatible for the requested operation.
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    /// Input fails the Hermiticity tolerance of the eigensolver.
    #[error("matrix is not Hermitian: defect {defect:.3e} exceeds 1e-10")]
    NotHermitian { defect: f64 },

    /// Jacobi iteration failed to reach the off-diagonal target.
    #[error("eigensolver did not converge: off-diagonal norm {off_diagonal:.3e} after {sweeps} sweeps")]
    EigNoConvergence { off_diagonal: f64, sweeps: usize },

    /// An exponential would overflow f64.
    #[error("{context}: exp argument {exponent:.6e} exceeds 700")]
    ExpOverflow { context: &'static str, exponent: f64 },

    /// Renormalization impossible: the map annihilated the state.
    #[error("state annihilated: post-map trace {trace:.3e} is not positive")]
    StateAnnihilated { trace: f64 },

    /// Candidate density matrix violates Hermiticity.
    #[error("density matrix not Hermitian: defect {defect:.3e} exceeds 1e-12")]
    DensityNotHermitian { defect: f64 },

    /// Candidate density matrix trace is not 1.
    #[error("density matrix trace {trace:.15e} differs from 1 by more than 1e-12")]
    DensityTraceNotOne { trace: f64 },

    /// Candidate density matrix has a significantly negative eigenvalue.
    #[error("density matrix not positive semidefinite: min eigenvalue {min_eigenvalue:.3e} below -1e-10")]
    DensityNotPositive { min_eigenvalue: f64 },

    /// State is not X-shaped (support off the diagonal and anti-diagonal).
    #[error("state is not X-shaped: |rho[{row}][{col}]| = {magnitude:.3e} exceeds 1e-12")]
    NotXShaped { row: usize, col: usize, magnitude: f64 },

    /// A parameter is outside its admissible range.
    #[error("invalid parameter {name} = {value}: {requirement}")]
    InvalidParam {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// Closed-form eigenvectors are undefined at omega = gamma = 0.
    #[error("degenerate basis: closed-form eigenvectors are undefined at omega = gamma = 0")]
    DegenerateBasis,

    /// An entropy weight was negative beyond roundoff.
    #[error("negative probability weight {value:.3e} beyond the -1e-12 roundoff allowance")]
    NegativeWeight { value: f64 },

    /// A closed form and its brute-force oracle disagreed beyond tolerance.
    #[error("oracle check {check} failed: worst deviation {worst:.3e} exceeds {tolerance:.1e}")]
    OracleMismatch {
        check: &'static str,
        worst: f64,
        tolerance: f64,
    },
}
