//! Randomized properties of zones and the LU comparisons.

mod common;

use proptest::prelude::*;

use common::props::{self, config, zones, MAX_C};
use common::{brute_lu_le, grid_limit, Raw, RawZone};
use pdta::zone::{Bound, ClockConstraint, Dbm};
use pdta::{lu_le, LuBounds};

proptest! {
    #![proptest_config(config())]

    #[test]
    fn canonical_form_satisfies_triangle_inequality(z in props::triangle_input()) {
        props::triangle(&z)?;
    }

    #[test]
    fn canonical_form_keeps_the_same_points(z in props::same_points_input()) {
        props::same_points(&z)?;
    }

    #[test]
    fn lu_le_is_reflexive(case in zones::<1>()) {
        props::reflexive(&case)?;
    }

    #[test]
    fn lu_le_is_transitive(case in zones::<3>()) {
        props::transitive(&case)?;
    }

    #[test]
    fn inclusion_implies_lu_le(case in props::inclusion_input()) {
        props::inclusion(&case)?;
    }

    #[test]
    fn successor_transfers_simulation(case in props::transfer_input()) {
        props::transfer(&case)?;
    }

    #[test]
    fn lu_le_agrees_with_valuation_semantics(case in zones::<2>()) {
        props::semantic_agreement(&case)?;
    }

    #[test]
    fn smaller_bounds_simulate_more(case in props::coarse_input()) {
        props::smaller_bounds(&case)?;
    }
}

/// The fixed zones of the running example: the open zone `y - x ≥ 1` is
/// simulated by the band `0 ≤ y - x ≤ 3` under `L(x) = 1, U(y) = 3`, and the
/// brute-force check agrees in both directions.
#[test]
fn running_example_pair_matches_brute_force() {
    let open = RawZone {
        clocks: 2,
        cons: vec![Raw {
            i: 1,
            j: 2,
            c: -1,
            strict: false,
        }],
        elapsed: false,
    };
    let band = RawZone {
        clocks: 2,
        cons: vec![
            Raw {
                i: 2,
                j: 1,
                c: 3,
                strict: false,
            },
            Raw {
                i: 1,
                j: 2,
                c: 0,
                strict: false,
            },
        ],
        elapsed: false,
    };
    let bounds = LuBounds::new(vec![Some(1), None], vec![None, Some(3)]);
    let limit = grid_limit(2, MAX_C);
    assert!(lu_le(&open.dbm(), &band.dbm(), &bounds).unwrap());
    assert!(brute_lu_le(&open, &band, &bounds, limit));
    assert!(!lu_le(&band.dbm(), &open.dbm(), &bounds).unwrap());
    assert!(!brute_lu_le(&band, &open, &bounds, limit));
}

/// Guards against the agreement property passing vacuously: the random
/// pairs must exercise both outcomes.
#[test]
fn agreement_corpus_has_both_outcomes() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;

    let mut runner = TestRunner::deterministic();
    let strategy = zones::<2>();
    let (mut yes, mut no) = (0, 0);
    for _ in 0..2_000 {
        let ([a, b], bounds) = strategy.new_tree(&mut runner).unwrap().current();
        if lu_le(&a.dbm(), &b.dbm(), &bounds).unwrap() {
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes >= 200 && no >= 200, "yes {yes}, no {no}");
}

/// Zones are only equal up to canonical form, so `Dbm` equality must not
/// depend on how the constraints were listed.
#[test]
fn constraint_order_does_not_matter() {
    let cs = [
        ClockConstraint::upper(1, Bound::weak(3)),
        ClockConstraint::new(2, 1, Bound::strict(1)),
        ClockConstraint::lower(2, Bound::weak(-1)),
    ];
    let mut rev = cs;
    rev.reverse();
    assert_eq!(
        Dbm::<i64>::from_constraints(2, &cs),
        Dbm::from_constraints(2, &rev)
    );
}

/// The transitivity property only says something when the premise holds on
/// nonempty zones; make sure the generator produces such chains often.
#[test]
fn transitivity_premise_is_often_met() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;

    let mut runner = TestRunner::deterministic();
    let strategy = zones::<3>();
    let mut chains = 0;
    for _ in 0..2_000 {
        let (zs, bounds) = strategy.new_tree(&mut runner).unwrap().current();
        let [a, b, c] = zs.map(|z| z.dbm());
        if !a.is_empty() && lu_le(&a, &b, &bounds).unwrap() && lu_le(&b, &c, &bounds).unwrap() {
            chains += 1;
        }
    }
    assert!(chains >= 400, "only {chains} nonempty chains");
}
