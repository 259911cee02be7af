//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

pub mod props;

use proptest::prelude::*;

use pdta::model::{AtomSpec, Comparison, ModelBuilder};
use pdta::zone::{Bound, ClockConstraint, Dbm};
use pdta::{LuBounds, PdtaModel};

/// Grid resolution: every valuation tried has coordinates in `(1/DEN)·ℕ`.
/// With at most three clocks this covers every ordering of fractional parts.
pub const DEN: i64 = 4;

/// `x_i - x_j ≺ c` over DBM indices (0 is the reference clock).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Raw {
    pub i: usize,
    pub j: usize,
    pub c: i64,
    pub strict: bool,
}

/// A zone kept as the constraint list it was built from, so that the
/// oracles never look at the canonical matrix.
#[derive(Clone, Debug)]
pub struct RawZone {
    pub clocks: usize,
    pub cons: Vec<Raw>,
    /// Whether the zone was time-elapsed after the constraints were applied.
    pub elapsed: bool,
}

impl RawZone {
    pub fn dbm(&self) -> Dbm<i64> {
        let cs: Vec<ClockConstraint<i64>> = self
            .cons
            .iter()
            .map(|r| {
                let b = if r.strict {
                    Bound::strict(r.c)
                } else {
                    Bound::weak(r.c)
                };
                ClockConstraint::new(r.i, r.j, b)
            })
            .collect();
        let z = Dbm::from_constraints(self.clocks, &cs);
        if self.elapsed {
            z.elapse()
        } else {
            z
        }
    }

    /// Membership of a grid point (coordinates scaled by [`DEN`]).
    pub fn contains(&self, v: &[i64]) -> bool {
        if self.elapsed {
            elapsed_contains(self, v)
        } else {
            self.cons.iter().all(|r| holds(r, v))
        }
    }
}

fn value(v: &[i64], i: usize) -> i64 {
    if i == 0 {
        0
    } else {
        v[i - 1]
    }
}

fn holds(r: &Raw, v: &[i64]) -> bool {
    let lhs = value(v, r.i) - value(v, r.j);
    if r.strict {
        lhs < r.c * DEN
    } else {
        lhs <= r.c * DEN
    }
}

/// A scaled difference bound `(value, strict)` with `None` meaning +∞.
type Edge = Option<(i64, bool)>;

fn add(a: Edge, b: Edge) -> Edge {
    Some((a?.0 + b?.0, a?.1 || b?.1))
}

fn less(a: Edge, b: Edge) -> bool {
    match (a, b) {
        (_, None) => a.is_some(),
        (None, Some(_)) => false,
        (Some((x, sx)), Some((y, sy))) => x < y || (x == y && sx && !sy),
    }
}

/// `v` lies in the elapse of `z` iff `v - d` satisfies the constraints for
/// some delay `0 ≤ d ≤ min v`. Diagonals ignore `d`; each unary bound
/// restricts `d` to a half-line, so it is enough to intersect intervals.
fn elapsed_contains(z: &RawZone, v: &[i64]) -> bool {
    // interval of d as (value, strict) endpoints
    let mut lo: (i64, bool) = (0, false);
    let mut hi: (i64, bool) = (v.iter().copied().min().unwrap_or(0), false);
    for r in &z.cons {
        let c = r.c * DEN;
        match (r.i, r.j) {
            (0, 0) => return false,
            // x - 0 ≺ c  ⇔  d ≻ v_x - c
            (i, 0) => {
                let b = (v[i - 1] - c, r.strict);
                if b.0 > lo.0 || (b.0 == lo.0 && b.1) {
                    lo = b;
                }
            }
            // 0 - x ≺ c  ⇔  d ≺ v_x + c
            (0, j) => {
                let b = (v[j - 1] + c, r.strict);
                if b.0 < hi.0 || (b.0 == hi.0 && b.1) {
                    hi = b;
                }
            }
            _ => {
                if !holds(r, v) {
                    return false;
                }
            }
        }
    }
    lo.0 < hi.0 || (lo.0 == hi.0 && !lo.1 && !hi.1)
}

/// All grid points with integer parts `0..=max_int` and fractions in
/// steps of `1/DEN`.
pub fn grid(clocks: usize, max_int: i64) -> Vec<Vec<i64>> {
    let top = (max_int + 1) * DEN - 1;
    boxed(&vec![(0, top); clocks])
}

fn boxed(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Integer parts large enough that every nonempty zone with constants up
/// to `max_c` has a grid point, and every difference between clocks that
/// such constraints can distinguish occurs.
pub fn grid_limit(clocks: usize, max_c: i64) -> i64 {
    clocks as i64 * max_c + 1
}

/// Bounding box of the grid points of `z` with integer parts up to
/// `max_int`, from the oracle's own shortest-path closure.
fn box_of(z: &RawZone, max_int: i64) -> Option<Vec<(i64, i64)>> {
    let top = (max_int + 1) * DEN - 1;
    let n = z.clocks;
    let cons: Vec<(usize, usize, i64, bool)> = z
        .cons
        .iter()
        .map(|r| (r.i, r.j, r.c * DEN, r.strict))
        .collect();
    let d = closure(n + 1, &cons, n + 1)?;
    let ranges: Vec<(i64, i64)> = (1..=n)
        .map(|x| {
            let lo = d[0][x].map_or(0, |(c, _)| -c).max(0);
            let hi = match d[x][0] {
                Some((c, _)) if !z.elapsed => c.min(top),
                _ => top,
            };
            (lo, hi)
        })
        .collect();
    ranges.iter().all(|&(lo, hi)| lo <= hi).then_some(ranges)
}

/// Calls `f` on every grid point of `z` (integer parts up to `max_int`)
/// until it returns `false`; returns whether it never did.
pub fn all_points(z: &RawZone, max_int: i64, mut f: impl FnMut(&[i64]) -> bool) -> bool {
    let Some(ranges) = box_of(z, max_int) else {
        return true;
    };
    let mut v: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        if z.contains(&v) && !f(&v) {
            return false;
        }
        let mut k = 0;
        loop {
            if k == v.len() {
                return true;
            }
            if v[k] < ranges[k].1 {
                v[k] += 1;
                break;
            }
            v[k] = ranges[k].0;
            k += 1;
        }
    }
}

/// Grid points of `z` with integer parts up to `max_int`.
pub fn points_of(z: &RawZone, max_int: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    all_points(z, max_int, |v| {
        out.push(v.to_vec());
        true
    });
    out
}

/// Valuation-level LU simulation: every grid point `v` of `z1` must have
/// some `v'` in `z2` with `v ≼_LU v'`, where per clock `v'(x) = v(x)`, or
/// `L(x) < v'(x) < v(x)`, or `U(x) < v(x) < v'(x)`.
pub fn brute_lu_le(z1: &RawZone, z2: &RawZone, lu: &LuBounds, max_int: i64) -> bool {
    let sim = Simulator::new(z2, lu);
    all_points(z1, max_int, |v| sim.simulates(v))
}

const MAX_NODES: usize = 5;
type Matrix = [[Edge; MAX_NODES]; MAX_NODES];

/// Decides whether some point of a fixed zone simulates a given valuation.
///
/// Nodes: 0 is zero, 1..=n are the clocks of a point y of the zone, and
/// n+1 holds -delay, so that `v' = y + delay` reads `y - node(n+1)`.
pub struct Simulator<'a> {
    n: usize,
    base: Matrix,
    lu: &'a LuBounds,
}

fn tighten(m: &mut Matrix, i: usize, j: usize, e: Edge) {
    if less(e, m[i][j]) {
        m[i][j] = e;
    }
}

impl<'a> Simulator<'a> {
    pub fn new(z: &RawZone, lu: &'a LuBounds) -> Self {
        let n = z.clocks;
        assert!(n + 2 <= MAX_NODES, "at most three clocks");
        let d = n + 1;
        let mut base: Matrix = [[None; MAX_NODES]; MAX_NODES];
        for (i, row) in base.iter_mut().enumerate().take(n + 2) {
            row[i] = Some((0, false));
        }
        // clocks of y are nonnegative
        for e in &mut base[0][1..=n] {
            *e = Some((0, false));
        }
        for r in &z.cons {
            tighten(&mut base, r.i, r.j, Some((r.c * DEN, r.strict)));
        }
        // delay ≥ 0, and exactly 0 unless the zone is elapsed
        tighten(&mut base, d, 0, Some((0, false)));
        if !z.elapsed {
            tighten(&mut base, 0, d, Some((0, false)));
        }
        Simulator { n, base, lu }
    }

    pub fn simulates(&self, v: &[i64]) -> bool {
        let n = self.n;
        let d = n + 1;
        let mut m = self.base;
        for (x, &val) in v.iter().enumerate() {
            let y = x + 1;
            let (lo, lo_strict) = match self.lu.lower(x) {
                None => (0, false),
                Some(l) if val > l * DEN => (l * DEN, true),
                Some(_) => (val, false),
            };
            // v'(x) ≥ lo  ⇔  d - y ≤ -lo
            tighten(&mut m, d, y, Some((-lo, lo_strict)));
            if matches!(self.lu.upper(x), Some(u) if val <= u * DEN) {
                tighten(&mut m, y, d, Some((val, false)));
            }
        }
        let nodes = n + 2;
        for k in 0..nodes {
            for i in 0..nodes {
                if m[i][k].is_none() {
                    continue;
                }
                for j in 0..nodes {
                    let via = add(m[i][k], m[k][j]);
                    if less(via, m[i][j]) {
                        m[i][j] = via;
                    }
                }
            }
        }
        (0..nodes).all(|i| !less(m[i][i], Some((0, false))))
    }
}

/// Whether some `v'` in `z2` simulates `v`.
pub fn simulated_by(v: &[i64], z2: &RawZone, lu: &LuBounds) -> bool {
    Simulator::new(z2, lu).simulates(v)
}

/// Floyd–Warshall closure, `None` on a negative cycle. Nodes `1..nonneg`
/// are constrained to be nonnegative.
fn closure(
    nodes: usize,
    cons: &[(usize, usize, i64, bool)],
    nonneg: usize,
) -> Option<Vec<Vec<Edge>>> {
    let mut d: Vec<Vec<Edge>> = vec![vec![None; nodes]; nodes];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some((0, false));
    }
    for e in &mut d[0][1..nonneg] {
        *e = Some((0, false));
    }
    for &(i, j, c, s) in cons {
        if less(Some((c, s)), d[i][j]) {
            d[i][j] = Some((c, s));
        }
    }
    for k in 0..nodes {
        for i in 0..nodes {
            for j in 0..nodes {
                let via = add(d[i][k], d[k][j]);
                if less(via, d[i][j]) {
                    d[i][j] = via;
                }
            }
        }
    }
    (0..nodes)
        .all(|i| !less(d[i][i], Some((0, false))))
        .then_some(d)
}

/// Zones built around a random point, hence never empty.
pub fn nonempty_zone(clocks: usize, max_c: i64, max_cons: usize) -> impl Strategy<Value = RawZone> {
    (
        prop::collection::vec(0..=max_c, clocks),
        prop::collection::vec(
            (0..=clocks, 0..=clocks, 0..=2i64, any::<bool>()),
            0..=max_cons,
        ),
        any::<bool>(),
    )
        .prop_map(move |(p, raw, elapsed)| {
            let at = |i: usize| if i == 0 { 0 } else { p[i - 1] };
            let cons = raw
                .into_iter()
                .filter(|&(i, j, _, _)| i != j)
                .map(|(i, j, slack, strict)| {
                    let diff = at(i) - at(j);
                    // strict needs room: x_i - x_j < diff + slack with slack ≥ 1
                    let (c, strict) = if strict && slack > 0 {
                        (diff + slack, true)
                    } else {
                        (diff + slack, false)
                    };
                    Raw { i, j, c, strict }
                })
                .collect();
            RawZone {
                clocks,
                cons,
                elapsed,
            }
        })
}

pub fn raw_constraint(clocks: usize, max_c: i64) -> impl Strategy<Value = Raw> {
    (0..=clocks, 0..=clocks, -max_c..=max_c, any::<bool>())
        .prop_filter("distinct indices", |(i, j, _, _)| i != j)
        .prop_map(|(i, j, c, strict)| Raw { i, j, c, strict })
}

pub fn raw_zone(clocks: usize, max_c: i64, max_cons: usize) -> impl Strategy<Value = RawZone> {
    (
        prop::collection::vec(raw_constraint(clocks, max_c), 0..=max_cons),
        any::<bool>(),
    )
        .prop_map(move |(cons, elapsed)| RawZone {
            clocks,
            cons,
            elapsed,
        })
}

pub fn lu(clocks: usize, max_c: i64) -> impl Strategy<Value = LuBounds> {
    let side = prop::collection::vec(prop::option::weighted(0.8, 0..=max_c), clocks);
    (side.clone(), side).prop_map(|(l, u)| LuBounds::new(l, u))
}

/// Shape of a random model, turned into a [`PdtaModel`] by [`build`].
#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub clocks: usize,
    pub states: usize,
    pub symbols: usize,
    pub finals: Vec<bool>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Clone, Debug)]
pub struct EdgeSpec {
    pub src: usize,
    pub tgt: usize,
    pub guard: Vec<(usize, Comparison, i64)>,
    /// `x_i - x_j ⋈ c`; the engine rejects these, so only model tests set them.
    pub diagonals: Vec<(usize, usize, Comparison, i64)>,
    pub resets: Vec<usize>,
    /// 0 nop, 1 push, 2 pop
    pub op: u8,
    pub symbol: usize,
}

pub fn comparison() -> impl Strategy<Value = Comparison> {
    prop_oneof![
        Just(Comparison::Lt),
        Just(Comparison::Le),
        Just(Comparison::Ge),
        Just(Comparison::Gt),
    ]
}

pub fn model_spec(
    max_clocks: usize,
    max_states: usize,
    max_edges: usize,
    max_c: i64,
) -> impl Strategy<Value = ModelSpec> {
    (
        1..=max_clocks,
        2..=max_states,
        prop_oneof![2 => Just(1usize), 1 => Just(2usize)],
    )
        .prop_flat_map(move |(clocks, states, symbols)| {
            let edge = (
                0..states,
                0..states,
                prop_oneof![
                    2 => Just(Vec::new()),
                    3 => prop::collection::vec((0..clocks, comparison(), 0..=max_c), 1..=2),
                ],
                prop::collection::vec(0..clocks, 0..=clocks),
                prop_oneof![3 => Just(0u8), 2 => Just(1u8), 2 => Just(2u8)],
                0..symbols,
            )
                .prop_map(|(src, tgt, guard, mut resets, op, symbol)| {
                    resets.sort_unstable();
                    resets.dedup();
                    EdgeSpec {
                        src,
                        tgt,
                        guard,
                        diagonals: Vec::new(),
                        resets,
                        op,
                        symbol,
                    }
                });
            (
                prop::collection::vec(prop::bool::weighted(0.3), states),
                prop::collection::vec(edge, 1..=max_edges),
            )
                .prop_map(move |(finals, mut edges)| {
                    // Leave from a state some earlier edge enters, so most edges
                    // sit on a path from the initial state.
                    // Pops preferably leave a state a push entered, with its symbol.
                    let mut entered = vec![0];
                    let mut pushed: Vec<(usize, usize)> = Vec::new();
                    for e in &mut edges {
                        if e.op == 2 && !pushed.is_empty() {
                            (e.src, e.symbol) = pushed[e.src % pushed.len()];
                        } else {
                            e.src = entered[e.src % entered.len()];
                        }
                        if e.op == 1 {
                            pushed.push((e.tgt, e.symbol));
                        }
                        if !entered.contains(&e.tgt) {
                            entered.push(e.tgt);
                        }
                    }
                    ModelSpec {
                        clocks,
                        states,
                        symbols,
                        finals,
                        edges,
                    }
                })
        })
}

pub fn build(spec: &ModelSpec) -> PdtaModel {
    let mut b = ModelBuilder::new("rand");
    let clock_names: Vec<String> = (0..spec.clocks).map(|i| format!("x{i}")).collect();
    let state_names: Vec<String> = (0..spec.states).map(|i| format!("q{i}")).collect();
    let symbol_names: Vec<String> = (0..spec.symbols).map(|i| format!("a{i}")).collect();
    for c in &clock_names {
        b.clock(c).unwrap();
    }
    for a in &symbol_names {
        b.symbol(a).unwrap();
    }
    for (i, q) in state_names.iter().enumerate() {
        b.state(q, i == 0, spec.finals[i]).unwrap();
    }
    for (k, e) in spec.edges.iter().enumerate() {
        let mut atoms: Vec<AtomSpec> = e
            .guard
            .iter()
            .map(|&(x, cmp, c)| AtomSpec::Clock(clock_names[x].clone(), cmp, c))
            .collect();
        atoms.extend(e.diagonals.iter().map(|&(x, y, cmp, c)| {
            AtomSpec::Diagonal(clock_names[x].clone(), clock_names[y].clone(), cmp, c)
        }));
        let resets: Vec<&str> = e.resets.iter().map(|&x| clock_names[x].as_str()).collect();
        let op = match e.op {
            0 => None,
            1 => Some((true, symbol_names[e.symbol].as_str())),
            _ => Some((false, symbol_names[e.symbol].as_str())),
        };
        b.edge(
            &state_names[e.src],
            &state_names[e.tgt],
            &format!("t{k}"),
            &atoms,
            &resets,
            op,
        )
        .unwrap();
    }
    b.build().unwrap()
}
