//! LU-simulation between zones.
//!
//! For per-clock lower-bound constants `L` and upper-bound constants `U`,
//! a valuation `v` is simulated by `v'` when for every clock `x`
//!
//! * `v'(x) < v(x)` implies `v'(x) > L(x)`, and
//! * `v'(x) > v(x)` implies `v(x) > U(x)`.
//!
//! A zone `Z` is simulated by `Z'` when every valuation of `Z` is simulated
//! by some valuation of `Z'`, i.e. `Z ⊆ a_LU(Z')`. The test below is the
//! quadratic entrywise criterion: `Z ⊄ a_LU(Z')` iff there are indices `x ≠ y`
//! (0 included, with `L(0) = U(0) = 0`) such that
//! `Z[0][x] ≥ (≤,-U(x))`, `Z'[y][x] < Z[y][x]` and
//! `Z'[y][x] + (<,-L(y)) < Z[0][x]`.

use super::bound::Bound;
use super::dbm::{check_dims, Dbm};
use super::scalar::BoundValue;
use super::ZoneError;

/// Per-clock LU constants; `None` stands for −∞ (no such guard).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LuBounds {
    lower: Vec<Option<i64>>,
    upper: Vec<Option<i64>>,
}

impl LuBounds {
    /// All constants −∞.
    pub fn unbounded(clocks: usize) -> Self {
        LuBounds {
            lower: vec![None; clocks],
            upper: vec![None; clocks],
        }
    }

    pub fn new(lower: Vec<Option<i64>>, upper: Vec<Option<i64>>) -> Self {
        assert_eq!(
            lower.len(),
            upper.len(),
            "L and U must cover the same clocks"
        );
        LuBounds { lower, upper }
    }

    /// Same constant for both `L` and `U` of every clock.
    pub fn uniform(bounds: Vec<Option<i64>>) -> Self {
        LuBounds {
            lower: bounds.clone(),
            upper: bounds,
        }
    }

    pub fn clocks(&self) -> usize {
        self.lower.len()
    }

    /// `L` of clock `k` (0-based).
    pub fn lower(&self, clock: usize) -> Option<i64> {
        self.lower[clock]
    }

    pub fn upper(&self, clock: usize) -> Option<i64> {
        self.upper[clock]
    }

    pub fn raise_lower(&mut self, clock: usize, c: i64) {
        let slot = &mut self.lower[clock];
        *slot = Some(slot.map_or(c, |old| old.max(c)));
    }

    pub fn raise_upper(&mut self, clock: usize, c: i64) {
        let slot = &mut self.upper[clock];
        *slot = Some(slot.map_or(c, |old| old.max(c)));
    }

    /// `max(L(x), U(x), 0)`: the region granularity of clock `x`.
    pub fn max_bound(&self, clock: usize) -> i64 {
        self.lower[clock]
            .unwrap_or(0)
            .max(self.upper[clock].unwrap_or(0))
            .max(0)
    }

    /// Constant for DBM index `i` (0 is the reference clock with bound 0).
    fn at(bounds: &[Option<i64>], i: usize) -> Option<i64> {
        if i == 0 {
            Some(0)
        } else {
            bounds[i - 1]
        }
    }
}

/// Does `z2` LU-simulate every valuation of `z1`?
pub fn lu_le<T: BoundValue>(z1: &Dbm<T>, z2: &Dbm<T>, lu: &LuBounds) -> Result<bool, ZoneError> {
    check_dims(z1, z2)?;
    if lu.clocks() != z1.clocks() {
        return Err(ZoneError::DimensionMismatch {
            left: z1.clocks(),
            right: lu.clocks(),
        });
    }
    if z1.is_empty() {
        return Ok(true);
    }
    if z2.is_empty() {
        return Ok(false);
    }
    let n = z1.clocks() + 1;
    for x in 0..n {
        let Some(ux) = LuBounds::at(&lu.upper, x) else {
            continue;
        };
        let z1_0x = z1.get(0, x);
        if z1_0x < Bound::weak(neg::<T>(ux)) {
            continue;
        }
        for y in 0..n {
            if y == x {
                continue;
            }
            let Some(ly) = LuBounds::at(&lu.lower, y) else {
                continue;
            };
            let z2_yx = z2.get(y, x);
            if z2_yx >= z1.get(y, x) {
                continue;
            }
            if z2_yx + Bound::strict(neg::<T>(ly)) < z1_0x {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Mutual LU-simulation.
pub fn lu_equiv<T: BoundValue>(z1: &Dbm<T>, z2: &Dbm<T>, lu: &LuBounds) -> Result<bool, ZoneError> {
    Ok(lu_le(z1, z2, lu)? && lu_le(z2, z1, lu)?)
}

fn neg<T: BoundValue>(c: i64) -> T {
    T::from_constant(-c).expect("LU constant exceeds the zone scalar range")
}
