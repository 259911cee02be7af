use std::fmt;
use std::ops::Add;

use super::scalar::BoundValue;

/// Strict (`<`) or weak (`≤`) comparison in a difference bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strictness {
    Strict,
    Weak,
}

/// One DBM entry: `x_i - x_j ≺ c` or no bound at all.
///
/// The comparator and the constant are packed into a single integer
/// `2 * c + (1 if weak)`, so the derived integer order is exactly the bound
/// order `(<,c) < (≤,c) < (<,c+1)`. Infinity is `T::max_value()`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bound<T: BoundValue>(T);

impl<T: BoundValue> Bound<T> {
    pub fn infinity() -> Self {
        Bound(T::max_value())
    }

    pub fn new(strictness: Strictness, value: T) -> Self {
        let two = T::one() + T::one();
        let bit = match strictness {
            Strictness::Strict => T::zero(),
            Strictness::Weak => T::one(),
        };
        let raw = value
            .checked_mul(&two)
            .and_then(|v| v.checked_add(&bit))
            .expect("bound constant out of range");
        assert!(raw != T::max_value(), "bound constant out of range");
        Bound(raw)
    }

    pub fn weak(value: T) -> Self {
        Self::new(Strictness::Weak, value)
    }

    pub fn strict(value: T) -> Self {
        Self::new(Strictness::Strict, value)
    }

    /// `(≤, 0)`, the diagonal entry of every nonempty canonical DBM.
    pub fn le_zero() -> Self {
        Bound(T::one())
    }

    /// `(<, 0)`.
    pub fn lt_zero() -> Self {
        Bound(T::zero())
    }

    pub fn is_infinity(self) -> bool {
        self.0 == T::max_value()
    }

    /// The constant, or `None` for infinity.
    pub fn value(self) -> Option<T> {
        if self.is_infinity() {
            None
        } else {
            Some(self.0 >> 1)
        }
    }

    pub fn strictness(self) -> Option<Strictness> {
        if self.is_infinity() {
            None
        } else if self.0 & T::one() == T::one() {
            Some(Strictness::Weak)
        } else {
            Some(Strictness::Strict)
        }
    }

    pub fn is_weak(self) -> bool {
        self.strictness() == Some(Strictness::Weak)
    }

    /// The packed integer encoding.
    pub fn raw(self) -> T {
        self.0
    }

    /// Bound on the negated difference with the complementary comparator:
    /// `x ≺ c` fails exactly when `-x ≺' -c` holds. Infinity has no
    /// complement and is returned unchanged.
    pub fn complement(self) -> Self {
        match self.value() {
            None => self,
            Some(c) => match self.strictness() {
                Some(Strictness::Weak) => Bound::strict(-c),
                _ => Bound::weak(-c),
            },
        }
    }
}

impl<T: BoundValue> Add for Bound<T> {
    type Output = Bound<T>;

    fn add(self, rhs: Self) -> Self {
        if self.is_infinity() || rhs.is_infinity() {
            return Bound::infinity();
        }
        let one = T::one();
        let sum = (self.0 & !one)
            .checked_add(&(rhs.0 & !one))
            .expect("DBM bound overflow");
        let raw = sum | (self.0 & rhs.0 & one);
        assert!(raw != T::max_value(), "DBM bound overflow");
        Bound(raw)
    }
}

impl<T: BoundValue> fmt::Debug for Bound<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: BoundValue> fmt::Display for Bound<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.strictness(), self.value()) {
            (Some(Strictness::Weak), Some(c)) => write!(f, "≤{c}"),
            (Some(Strictness::Strict), Some(c)) => write!(f, "<{c}"),
            _ => write!(f, "∞"),
        }
    }
}
