//! Zone properties shared by the property suite and the acceptance run.
//! Each check takes one generated case and fails through `prop_assert!`.

use num_rational::Ratio;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{
    brute_lu_le, grid, grid_limit, lu, nonempty_zone, points_of, raw_constraint, raw_zone, Raw,
    RawZone, DEN,
};
use pdta::zone::{Bound, ClockConstraint};
use pdta::{lu_equiv, lu_le, LuBounds, Valuation};

pub const CASES: u32 = 10_000;
pub const MAX_C: i64 = 4;

type Check = Result<(), TestCaseError>;

pub fn config() -> ProptestConfig {
    ProptestConfig {
        cases: CASES,
        max_shrink_iters: 2_000,
        ..ProptestConfig::default()
    }
}

/// Mostly nonempty zones, so that conditional properties are rarely vacuous.
pub fn mixed_zone(n: usize) -> impl Strategy<Value = RawZone> {
    prop_oneof![4 => nonempty_zone(n, MAX_C, 4), 1 => raw_zone(n, MAX_C, 4)]
}

pub fn zones<const K: usize>() -> impl Strategy<Value = ([RawZone; K], LuBounds)> {
    (1..=3usize).prop_flat_map(|n| (prop::array::uniform::<_, K>(mixed_zone(n)), lu(n, MAX_C)))
}

fn valuation(v: &[i64]) -> Valuation {
    Valuation(v.iter().map(|&x| Ratio::new(x, DEN)).collect())
}

pub fn to_constraints(raw: &[Raw]) -> Vec<ClockConstraint<i64>> {
    raw.iter()
        .map(|r| {
            let b = if r.strict {
                Bound::strict(r.c)
            } else {
                Bound::weak(r.c)
            };
            ClockConstraint::new(r.i, r.j, b)
        })
        .collect()
}

pub fn triangle_input() -> impl Strategy<Value = RawZone> {
    (1..=3usize).prop_flat_map(|n| nonempty_zone(n, MAX_C, 6))
}

pub fn triangle(z: &RawZone) -> Check {
    let d = z.dbm();
    prop_assert!(!d.is_empty());
    prop_assert!(d.is_canonical());
    let n = d.clocks() + 1;
    for i in 0..n {
        prop_assert_eq!(d.get(i, i), Bound::le_zero());
        for j in 0..n {
            for k in 0..n {
                prop_assert!(
                    d.get(i, j) <= d.get(i, k) + d.get(k, j),
                    "{} {} {}",
                    i,
                    j,
                    k
                );
            }
        }
    }
    Ok(())
}

pub fn same_points_input() -> impl Strategy<Value = RawZone> {
    (1..=2usize).prop_flat_map(|n| raw_zone(n, MAX_C, 5))
}

pub fn same_points(z: &RawZone) -> Check {
    let d = z.dbm();
    let mut any = false;
    for v in grid(z.clocks, grid_limit(z.clocks, MAX_C)) {
        let inside = z.contains(&v);
        any |= inside;
        prop_assert_eq!(d.contains(&valuation(&v)), inside, "{:?}", v);
    }
    // a nonempty zone of integer constraints has a point on the grid
    prop_assert_eq!(d.is_empty(), !any);
    prop_assert_eq!(points_of(z, grid_limit(z.clocks, MAX_C)).is_empty(), !any);
    Ok(())
}

pub fn reflexive((zs, bounds): &([RawZone; 1], LuBounds)) -> Check {
    let d = zs[0].dbm();
    prop_assert!(lu_le(&d, &d, bounds).unwrap());
    prop_assert!(lu_equiv(&d, &d, bounds).unwrap());
    Ok(())
}

pub fn transitive((zs, bounds): &([RawZone; 3], LuBounds)) -> Check {
    let [a, b, c] = zs.clone().map(|z| z.dbm());
    if lu_le(&a, &b, bounds).unwrap() && lu_le(&b, &c, bounds).unwrap() {
        prop_assert!(lu_le(&a, &c, bounds).unwrap());
    }
    Ok(())
}

pub type InclusionCase = ([RawZone; 2], LuBounds, Vec<Raw>);

pub fn inclusion_input() -> impl Strategy<Value = InclusionCase> {
    (1..=3usize).prop_flat_map(|n| {
        (
            prop::array::uniform2(raw_zone(n, MAX_C, 4)),
            lu(n, MAX_C),
            prop::collection::vec(raw_constraint(n, MAX_C), 0..=3),
        )
    })
}

pub fn inclusion((zs, bounds, extra): &InclusionCase) -> Check {
    let [a, b] = zs;
    let (da, db) = (a.dbm(), b.dbm());
    if db.includes(&da).unwrap() {
        prop_assert!(lu_le(&da, &db, bounds).unwrap());
    }
    // a subzone built by adding constraints is always included
    let sub = da.intersect(&to_constraints(extra));
    prop_assert!(da.includes(&sub).unwrap());
    prop_assert!(lu_le(&sub, &da, bounds).unwrap());
    Ok(())
}

/// Guard atoms as `(clock, is_upper, strict, constant)`.
pub type TransferCase = (
    [RawZone; 2],
    LuBounds,
    Vec<(usize, bool, bool, i64)>,
    Vec<usize>,
    Vec<Raw>,
);

pub fn transfer_input() -> impl Strategy<Value = TransferCase> {
    (1..=3usize).prop_flat_map(|n| {
        (
            prop::array::uniform2(mixed_zone(n)),
            lu(n, MAX_C),
            prop::collection::vec((1..=n, any::<bool>(), any::<bool>(), 0..=MAX_C), 0..=2),
            prop::collection::vec(1..=n, 0..=n),
            prop::collection::vec(raw_constraint(n, MAX_C), 0..=2),
        )
    })
}

pub fn transfer((zs, bounds, guard, resets, extra): &TransferCase) -> Check {
    let [a, b] = zs;
    // Guards may only use constants covered by the bounds.
    let mut bounds = bounds.clone();
    let mut g = Vec::new();
    for &(x, upper, strict, c) in guard {
        let bound = |v| {
            if strict {
                Bound::strict(v)
            } else {
                Bound::weak(v)
            }
        };
        if upper {
            bounds.raise_upper(x - 1, c);
            g.push(ClockConstraint::upper(x, bound(c)));
        } else {
            bounds.raise_lower(x - 1, c);
            g.push(ClockConstraint::lower(x, bound(-c)));
        }
    }
    let mut resets = resets.clone();
    resets.sort_unstable();
    resets.dedup();

    let (da, db) = (a.dbm().elapse(), b.dbm().elapse());
    let sub = db.intersect(&to_constraints(extra));
    for (z1, z2) in [(sub, db.clone()), (da, db)] {
        if lu_le(&z1, &z2, &bounds).unwrap() {
            let s1 = z1.successor(&g, &resets);
            let s2 = z2.successor(&g, &resets);
            if !s1.is_empty() {
                prop_assert!(
                    !s2.is_empty(),
                    "{} ≼ {} but only the first has a successor",
                    z1,
                    z2
                );
            }
            prop_assert!(
                lu_le(&s1, &s2, &bounds).unwrap(),
                "{} ≼ {} but {} ⋠ {}",
                z1,
                z2,
                s1,
                s2
            );
        }
    }
    Ok(())
}

pub fn semantic_agreement((zs, bounds): &([RawZone; 2], LuBounds)) -> Check {
    let [a, b] = zs;
    let fast = lu_le(&a.dbm(), &b.dbm(), bounds).unwrap();
    let slow = brute_lu_le(a, b, bounds, grid_limit(a.clocks, MAX_C));
    prop_assert_eq!(fast, slow);
    Ok(())
}

pub type CoarseCase = ([RawZone; 2], LuBounds, Vec<(bool, bool, i64)>);

pub fn coarse_input() -> impl Strategy<Value = CoarseCase> {
    (1..=3usize).prop_flat_map(|n| {
        (
            prop::array::uniform2(raw_zone(n, MAX_C, 4)),
            lu(n, MAX_C),
            prop::collection::vec((any::<bool>(), any::<bool>(), 0..=MAX_C), n),
        )
    })
}

/// Lowering any bound can only make the comparison coarser.
pub fn smaller_bounds((zs, bounds, drop): &CoarseCase) -> Check {
    let [a, b] = zs.clone().map(|z| z.dbm());
    let n = a.clocks();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for (x, &(dl, du, amount)) in drop.iter().enumerate().take(n) {
        let shrink = |v: Option<i64>, yes: bool| match v {
            Some(c) if yes => (c - amount >= 0).then_some(c - amount),
            other => other,
        };
        lower.push(shrink(bounds.lower(x), dl));
        upper.push(shrink(bounds.upper(x), du));
    }
    let coarse = LuBounds::new(lower, upper);
    if lu_le(&a, &b, bounds).unwrap() {
        prop_assert!(lu_le(&a, &b, &coarse).unwrap());
    }
    Ok(())
}
