//! Crate-wide error type.

use std::fmt;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Vector or matrix dimensions do not match.
    DimensionMismatch { expected: usize, found: usize },
    /// Operation requires a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// Linear system is singular (or numerically rank-deficient).
    Singular,
    /// Eigenvalue clusters cannot be separated reliably at the configured radius.
    AmbiguousSpectrum { gap: f64, radius: f64 },
    /// Input fails the semisimplicity check (nilpotent residue above tolerance).
    NotSemisimple { residual: f64 },
    /// Input fails the elliptic classification (spectrum not purely imaginary).
    NotElliptic { residual: f64 },
    /// Input fails the hyperbolic classification (spectrum not real).
    NotHyperbolic { residual: f64 },
    /// Map is not a derivation of the given algebra.
    NotDerivation { residual: f64 },
    /// Map has a nonzero elliptic part where none is allowed.
    EllipticPartPresent { norm: f64 },
    /// Exact-mode spectral computation needs rational eigenvalues.
    IrrationalSpectrum,
    /// Eigenvalue iteration failed to converge.
    EigenFailure,
    /// Requested operation is not available on this group model.
    UnsupportedModel(String),
    /// Structurally invalid input (bad structure constants, torus matrix, ...).
    Invalid(String),
    /// Malformed input document.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix is not square ({rows}x{cols})")
            }
            Error::Singular => write!(f, "singular linear system"),
            Error::AmbiguousSpectrum { gap, radius } => write!(
                f,
                "ambiguous eigenvalue clusters: gap {gap:.3e} within a factor 10 of radius {radius:.3e}"
            ),
            Error::NotSemisimple { residual } => {
                write!(f, "matrix is not semisimple (nilpotent residue {residual:.3e})")
            }
            Error::NotElliptic { residual } => {
                write!(f, "matrix is not elliptic (real spectral residue {residual:.3e})")
            }
            Error::NotHyperbolic { residual } => {
                write!(f, "matrix is not hyperbolic (imaginary spectral residue {residual:.3e})")
            }
            Error::NotDerivation { residual } => {
                write!(f, "map is not a derivation (residual {residual:.3e})")
            }
            Error::EllipticPartPresent { norm } => {
                write!(f, "elliptic part present (norm {norm:.3e}) where none is allowed")
            }
            Error::IrrationalSpectrum => {
                write!(f, "exact mode requires rational eigenvalues; use float mode")
            }
            Error::EigenFailure => write!(f, "eigenvalue iteration failed to converge"),
            Error::UnsupportedModel(what) => write!(f, "unsupported on this model: {what}"),
            Error::Invalid(what) => write!(f, "invalid input: {what}"),
            Error::Parse(what) => write!(f, "parse error: {what}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
