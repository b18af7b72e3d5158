//! Additive decompositions of linear maps and derivations into commuting
//! elliptic, hyperbolic, and nilpotent parts, with the induced gradings,
//! flows, and recurrence analysis on a few concrete Lie group models.

pub mod cocycle;
pub mod docs;
pub mod error;
pub mod report;
pub mod matrix;
pub mod algebra;
pub mod grading;
pub mod groups;
pub mod isometry;
pub mod jordan;
pub mod poly;
pub mod scalar;
pub mod spectrum;
pub mod subspace;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{Rational, Scalar};

/// Floating-point matrix, the default working type.
pub type MatrixF = Matrix<f64>;
/// Exact rational matrix, used by the exact mode.
pub type MatrixQ = Matrix<Rational>;
