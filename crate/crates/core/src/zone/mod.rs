//! Zones as canonical difference bound matrices, and the LU-simulation
//! tests that drive pruning.
//!
//! Everything here is generic over the integer type holding the bound
//! constants; the crate root fixes it to `i64`.

mod bound;
mod dbm;
mod lu;
mod scalar;

pub use bound::{Bound, Strictness};
pub use dbm::{ClockConstraint, Dbm, Valuation};
pub use lu::{lu_equiv, lu_le, LuBounds};
pub use scalar::BoundValue;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZoneError {
    #[error("dimension mismatch: {left} clocks vs {right} clocks")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix has {found} entries, expected {expected}")]
    MatrixShape { expected: usize, found: usize },
}
