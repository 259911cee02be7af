//! Integer scalar types usable as DBM bound constants.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{PrimInt, Signed};

/// A signed machine integer that can hold packed DBM bounds.
///
/// Bounds are stored as `2 * c + weak_bit`, and canonicalization adds two
/// bounds together, so the usable constant range is a fraction of the
/// integer's full range. [`BoundValue::max_constant`] reports it.
pub trait BoundValue: PrimInt + Signed + Hash + Debug + Display + Send + Sync + 'static {
    /// Largest absolute clock constant a zone over this scalar accepts.
    fn max_constant() -> i64;

    /// Converts a model constant, returning `None` when it does not fit.
    fn from_constant(c: i64) -> Option<Self> {
        if c.abs() > Self::max_constant() {
            return None;
        }
        Self::from(c)
    }
}

impl BoundValue for i32 {
    fn max_constant() -> i64 {
        (1 << 27) - 1
    }
}

impl BoundValue for i64 {
    fn max_constant() -> i64 {
        1 << 30
    }
}
