use std::fmt;

use num_rational::Ratio;

use super::bound::Bound;
use super::scalar::BoundValue;
use super::ZoneError;

/// A single difference constraint `x_i - x_j ≺ c` over DBM indices, where
/// index 0 is the reference clock and clock `k` (0-based) has index `k + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClockConstraint<T: BoundValue> {
    pub i: usize,
    pub j: usize,
    pub bound: Bound<T>,
}

impl<T: BoundValue> ClockConstraint<T> {
    pub fn new(i: usize, j: usize, bound: Bound<T>) -> Self {
        ClockConstraint { i, j, bound }
    }

    /// `x ≤ c` / `x < c` on DBM index `x`.
    pub fn upper(x: usize, bound: Bound<T>) -> Self {
        ClockConstraint::new(x, 0, bound)
    }

    /// `x ≥ c` is `0 - x ≤ -c`; pass the already negated bound.
    pub fn lower(x: usize, negated: Bound<T>) -> Self {
        ClockConstraint::new(0, x, negated)
    }
}

/// A clock valuation with exact rational components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Valuation(pub Vec<Ratio<i64>>);

impl Valuation {
    pub fn zero(clocks: usize) -> Self {
        Valuation(vec![Ratio::from_integer(0); clocks])
    }

    pub fn clocks(&self) -> usize {
        self.0.len()
    }

    /// Value at DBM index `i` (0 is the reference clock).
    fn at(&self, i: usize) -> Ratio<i64> {
        if i == 0 {
            Ratio::from_integer(0)
        } else {
            self.0[i - 1]
        }
    }
}

/// A zone: the set of clock valuations satisfying a difference bound matrix.
///
/// Nonempty zones are always kept in canonical form, so two nonempty zones
/// denote the same set iff their matrices are equal. All empty zones of a
/// given dimension share a single representation with no cells.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dbm<T: BoundValue> {
    clocks: usize,
    cells: Box<[Bound<T>]>,
}

impl<T: BoundValue> Dbm<T> {
    pub fn empty(clocks: usize) -> Self {
        Dbm {
            clocks,
            cells: Box::new([]),
        }
    }

    /// Every nonnegative valuation.
    pub fn universe(clocks: usize) -> Self {
        let size = clocks + 1;
        let mut cells = vec![Bound::infinity(); size * size];
        for j in 0..size {
            cells[j] = Bound::le_zero();
            cells[j * size + j] = Bound::le_zero();
        }
        Dbm {
            clocks,
            cells: cells.into_boxed_slice(),
        }
    }

    /// Delay closure of the all-zeros valuation: all clocks equal and
    /// nonnegative.
    pub fn initial(clocks: usize) -> Self {
        let size = clocks + 1;
        let mut cells = vec![Bound::le_zero(); size * size];
        for i in 1..size {
            cells[i * size] = Bound::infinity();
        }
        Dbm {
            clocks,
            cells: cells.into_boxed_slice(),
        }
    }

    /// Builds a zone from an arbitrary row-major `(clocks+1)²` matrix and
    /// canonicalizes it. Clock nonnegativity is imposed on top of the given
    /// entries.
    pub fn from_matrix(clocks: usize, entries: Vec<Bound<T>>) -> Result<Self, ZoneError> {
        let size = clocks + 1;
        if entries.len() != size * size {
            return Err(ZoneError::MatrixShape {
                expected: size * size,
                found: entries.len(),
            });
        }
        let dbm = Dbm {
            clocks,
            cells: entries.into_boxed_slice(),
        };
        Ok(dbm.canonicalize())
    }

    /// Zone defined by a conjunction of constraints over all nonnegative
    /// valuations.
    pub fn from_constraints(clocks: usize, constraints: &[ClockConstraint<T>]) -> Self {
        Dbm::universe(clocks).intersect(constraints)
    }

    pub fn clocks(&self) -> usize {
        self.clocks
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    fn size(&self) -> usize {
        self.clocks + 1
    }

    /// Entry for `x_i - x_j`. Panics on an empty zone.
    pub fn get(&self, i: usize, j: usize) -> Bound<T> {
        assert!(!self.is_empty(), "entry of an empty zone");
        self.cells[i * self.size() + j]
    }

    fn set(&mut self, i: usize, j: usize, b: Bound<T>) {
        let size = self.size();
        self.cells[i * size + j] = b;
    }

    /// Row-major view of the matrix; empty for the empty zone.
    pub fn cells(&self) -> &[Bound<T>] {
        &self.cells
    }

    /// Full Floyd–Warshall tightening. Negative cycles yield the empty zone.
    pub fn canonicalize(mut self) -> Self {
        if self.is_empty() {
            return self;
        }
        let n = self.size();
        for j in 0..n {
            let b = self.get(0, j).min(Bound::le_zero());
            self.set(0, j, b);
            let d = self.get(j, j).min(Bound::le_zero());
            self.set(j, j, d);
        }
        for k in 0..n {
            for i in 0..n {
                let ik = self.get(i, k);
                if ik.is_infinity() {
                    continue;
                }
                for j in 0..n {
                    let through = ik + self.get(k, j);
                    if through < self.get(i, j) {
                        self.set(i, j, through);
                    }
                }
            }
            if (0..n).any(|i| self.get(i, i) < Bound::le_zero()) {
                return Dbm::empty(self.clocks);
            }
        }
        self
    }

    /// Conjoins one constraint and restores canonical form in O(n²).
    pub fn constrain(&mut self, c: ClockConstraint<T>) {
        if self.is_empty() {
            return;
        }
        let ClockConstraint { i, j, bound } = c;
        if bound >= self.get(i, j) {
            return;
        }
        if bound + self.get(j, i) < Bound::le_zero() {
            *self = Dbm::empty(self.clocks);
            return;
        }
        self.set(i, j, bound);
        let n = self.size();
        for k in 0..n {
            let ki = self.get(k, i);
            if ki.is_infinity() {
                continue;
            }
            let via = ki + bound;
            for l in 0..n {
                let candidate = via + self.get(j, l);
                if candidate < self.get(k, l) {
                    self.set(k, l, candidate);
                }
            }
        }
    }

    pub fn intersect(&self, constraints: &[ClockConstraint<T>]) -> Self {
        let mut out = self.clone();
        for &c in constraints {
            if out.is_empty() {
                break;
            }
            out.constrain(c);
        }
        out
    }

    /// Sets every clock in `resets` (DBM indices, ≥ 1) to zero.
    pub fn reset(&self, resets: &[usize]) -> Self {
        let mut out = self.clone();
        if out.is_empty() {
            return out;
        }
        let n = out.size();
        for &x in resets {
            debug_assert!(x >= 1 && x < n);
            for j in 0..n {
                let row = out.get(0, j);
                out.set(x, j, row);
                let col = out.get(j, 0);
                out.set(j, x, col);
            }
            out.set(x, x, Bound::le_zero());
        }
        out
    }

    /// Removes all upper bounds on clocks.
    pub fn elapse(&self) -> Self {
        let mut out = self.clone();
        if out.is_empty() {
            return out;
        }
        for i in 1..out.size() {
            out.set(i, 0, Bound::infinity());
        }
        out
    }

    /// `elapse(reset(self ∩ guard))`.
    pub fn successor(&self, guard: &[ClockConstraint<T>], resets: &[usize]) -> Self {
        let z = self.intersect(guard);
        if z.is_empty() {
            return z;
        }
        z.reset(resets).elapse()
    }

    /// Set inclusion `other ⊆ self`.
    pub fn includes(&self, other: &Dbm<T>) -> Result<bool, ZoneError> {
        check_dims(self, other)?;
        if other.is_empty() {
            return Ok(true);
        }
        if self.is_empty() {
            return Ok(false);
        }
        Ok(other
            .cells
            .iter()
            .zip(self.cells.iter())
            .all(|(a, b)| a <= b))
    }

    pub fn contains(&self, v: &Valuation) -> bool {
        if self.is_empty() || v.clocks() != self.clocks {
            return false;
        }
        if v.0.iter().any(|x| *x < Ratio::from_integer(0)) {
            return false;
        }
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                let b = self.get(i, j);
                let (Some(c), Some(s)) = (b.value(), b.strictness()) else {
                    continue;
                };
                let c = Ratio::from_integer(c.to_i64().expect("bound fits i64"));
                let diff = v.at(i) - v.at(j);
                let ok = match s {
                    super::Strictness::Weak => diff <= c,
                    super::Strictness::Strict => diff < c,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Tightness check used by tests and debug assertions.
    pub fn is_canonical(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let n = self.size();
        for i in 0..n {
            if self.get(i, i) != Bound::le_zero() || self.get(0, i) > Bound::le_zero() {
                return false;
            }
            for j in 0..n {
                for k in 0..n {
                    if self.get(i, j) > self.get(i, k) + self.get(k, j) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub(crate) fn check_dims<T: BoundValue>(a: &Dbm<T>, b: &Dbm<T>) -> Result<(), ZoneError> {
    if a.clocks != b.clocks {
        return Err(ZoneError::DimensionMismatch {
            left: a.clocks,
            right: b.clocks,
        });
    }
    Ok(())
}

impl<T: BoundValue> fmt::Debug for Dbm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prints the nontrivial constraints, e.g. `{x1≥1, x2-x1≤3}`.
impl<T: BoundValue> fmt::Display for Dbm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{empty}}");
        }
        let name = |i: usize| {
            if i == 0 {
                "0".to_string()
            } else {
                format!("x{i}")
            }
        };
        let mut parts = Vec::new();
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let b = self.get(i, j);
                if b.is_infinity() || (i == 0 && b == Bound::le_zero()) {
                    continue;
                }
                let lhs = match (i, j) {
                    (0, j) => format!("-{}", name(j)),
                    (i, 0) => name(i),
                    (i, j) => format!("{}-{}", name(i), name(j)),
                };
                parts.push(format!("{lhs}{b}"));
            }
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}
