//! Hilbert functions and minimal free resolutions of fat point ideals
//! `I = P_1^{m_1} ∩ ... ∩ P_n^{m_n}` in `k[x, y, z]`.
//!
//! - [`model`]: multiplicity vectors, expected Hilbert function, predicted
//!   resolution shape.
//! - [`divisor`]: divisor classes on the blow-up and the conjectural
//!   reduction algorithm.
//! - [`oracle`]: exact measurements at explicit points over a prime field.
//! - [`pell`]: Pell equation solutions and the integer criterion for `q = 0`.
//! - [`criteria`]: rank-minimality certificates with explicit hypotheses.
//! - [`survey`]: batches of oracle-versus-prediction comparisons.

pub mod criteria;
pub mod divisor;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod pell;
pub mod survey;

pub use error::{Error, Result};
pub use exec::Execution;
pub use model::{
    expected_alpha, expected_hilbert, l_expected, predicted_resolution, q_expected, HilbertKind,
    HilbertTable, MultiplicityVector, ResolutionShape,
};
