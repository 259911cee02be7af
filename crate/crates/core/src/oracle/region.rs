//! Clock regions with per-clock bounds `M(x) = max(L(x), U(x), 0)`.

use std::fmt;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::engine::{pdta_reach, EngineConfig, EngineError, Mode, NodeDomain, ReachResult};
use crate::model::{Atom, PdtaModel, Transition};
use crate::zone::Valuation;

/// One region: integer parts (capped at `M(x) + 1`, meaning "above `M(x)`")
/// and the order of fractional parts of the clocks that are not above.
///
/// `ranks[x] == 0` means the fractional part is zero; nonzero ranks are the
/// contiguous positions `1..=k` of the distinct nonzero fractional parts in
/// increasing order. Clocks above their bound always carry rank 0, so equal
/// regions have equal encodings.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region {
    ints: Box<[i64]>,
    ranks: Box<[u32]>,
}

impl Region {
    pub fn clocks(&self) -> usize {
        self.ints.len()
    }

    /// Integer part of clock `x`, `M(x) + 1` if above the bound.
    pub fn int(&self, x: usize) -> i64 {
        self.ints[x]
    }

    pub fn rank(&self, x: usize) -> u32 {
        self.ranks[x]
    }

    /// The region of the all-zero valuation.
    pub fn zero(clocks: usize) -> Self {
        Region {
            ints: vec![0; clocks].into_boxed_slice(),
            ranks: vec![0; clocks].into_boxed_slice(),
        }
    }

    /// Region containing `v` under bounds `m`.
    pub fn of_valuation(v: &Valuation, m: &[i64]) -> Self {
        let n = v.clocks();
        let mut ints = vec![0; n];
        let mut fracs: Vec<Option<Ratio<i64>>> = vec![None; n];
        for x in 0..n {
            let val = v.0[x];
            let floor = val.floor().to_integer();
            let frac = val - val.floor();
            if floor > m[x] || (floor == m[x] && !frac.is_zero()) {
                ints[x] = m[x] + 1;
            } else {
                ints[x] = floor;
                fracs[x] = Some(frac);
            }
        }
        let mut distinct: Vec<Ratio<i64>> = fracs
            .iter()
            .flatten()
            .copied()
            .filter(|f| !f.is_zero())
            .collect();
        distinct.sort();
        distinct.dedup();
        let ranks = fracs
            .iter()
            .map(|f| match f {
                Some(f) if !f.is_zero() => distinct.binary_search(f).expect("present") as u32 + 1,
                _ => 0,
            })
            .collect();
        Region {
            ints: ints.into_boxed_slice(),
            ranks,
        }
    }

    /// A valuation inside the region: group `k` of `K` groups gets
    /// fractional part `k / (K + 1)`, clocks above their bound get `M + 1`.
    pub fn sample(&self) -> Valuation {
        let k = self.ranks.iter().copied().max().unwrap_or(0) as i64;
        Valuation(
            self.ints
                .iter()
                .zip(self.ranks.iter())
                .map(|(&i, &r)| Ratio::from_integer(i) + Ratio::new(r as i64, k + 1))
                .collect(),
        )
    }

    fn is_above(&self, x: usize, m: &[i64]) -> bool {
        self.ints[x] > m[x]
    }

    /// Renumbers nonzero ranks to `1..=k`, dropping gaps.
    fn normalize(&mut self) {
        let mut used: Vec<u32> = self.ranks.iter().copied().filter(|&r| r > 0).collect();
        used.sort_unstable();
        used.dedup();
        for r in self.ranks.iter_mut() {
            if *r > 0 {
                *r = used.binary_search(r).expect("present") as u32 + 1;
            }
        }
    }

    /// The immediate delay successor, or `None` when every clock is above
    /// its bound (the region is then closed under delay).
    pub fn delay_successor(&self, m: &[i64]) -> Option<Region> {
        let n = self.clocks();
        let bounded: Vec<usize> = (0..n).filter(|&x| !self.is_above(x, m)).collect();
        if bounded.is_empty() {
            return None;
        }
        let mut next = self.clone();
        if bounded.iter().any(|&x| self.ranks[x] == 0) {
            // Integral clocks leave their integer; they now have the smallest
            // nonzero fraction.
            for &x in &bounded {
                if self.ranks[x] == 0 {
                    if self.ints[x] == m[x] {
                        next.ints[x] = m[x] + 1;
                        next.ranks[x] = 0;
                    } else {
                        next.ranks[x] = 1;
                    }
                } else {
                    next.ranks[x] += 1;
                }
            }
        } else {
            // The largest fractions reach the next integer.
            let top = bounded
                .iter()
                .map(|&x| self.ranks[x])
                .max()
                .expect("nonempty");
            for &x in &bounded {
                if self.ranks[x] == top {
                    next.ints[x] += 1;
                    next.ranks[x] = 0;
                }
            }
        }
        next.normalize();
        Some(next)
    }

    /// The region and all of its delay successors, in time order.
    pub fn delay_chain(&self, m: &[i64]) -> Vec<Region> {
        let mut chain = vec![self.clone()];
        while let Some(next) = chain.last().expect("nonempty").delay_successor(m) {
            chain.push(next);
        }
        chain
    }

    /// Truth value of a diagonal-free atom on every valuation of the region.
    pub fn satisfies(&self, atom: &Atom, m: &[i64]) -> bool {
        let Atom::Clock {
            clock,
            cmp,
            constant,
        } = *atom
        else {
            panic!("regions only support diagonal-free guards");
        };
        let x = clock.0;
        let i = self.ints[x];
        // Represent x by twice its value, using an odd number for open intervals.
        let doubled = if self.is_above(x, m) {
            2 * (m[x] + 1).max(constant + 1)
        } else if self.ranks[x] == 0 {
            2 * i
        } else {
            2 * i + 1
        };
        cmp.holds(doubled, 2 * constant)
    }

    pub fn reset(&self, clocks: &[usize]) -> Region {
        let mut next = self.clone();
        for &x in clocks {
            next.ints[x] = 0;
            next.ranks[x] = 0;
        }
        next.normalize();
        next
    }
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for x in 0..self.clocks() {
            if x > 0 {
                f.write_str(", ")?;
            }
            let i = self.ints[x];
            match self.ranks[x] {
                0 => write!(f, "x{}={i}", x + 1)?,
                r => write!(f, "x{}∈({i},{})#{r}", x + 1, i + 1)?,
            }
        }
        f.write_str("]")
    }
}

/// Regions as engine payloads, compared by equality.
#[derive(Clone, Debug)]
pub struct RegionDomain {
    bounds: Vec<i64>,
}

impl RegionDomain {
    pub fn new(m: &PdtaModel) -> Self {
        let lu = m.lu_bounds();
        RegionDomain {
            bounds: (0..m.clock_count()).map(|x| lu.max_bound(x)).collect(),
        }
    }

    /// Per-clock bounds `M(x)`.
    pub fn bounds(&self) -> &[i64] {
        &self.bounds
    }

    /// The classical upper bound on the number of regions:
    /// `∏ (2M(x) + 2) · |X|! · 2^|X|`, saturating at `u128::MAX`.
    pub fn region_count_bound(&self) -> u128 {
        let n = self.bounds.len() as u128;
        let mut acc: u128 = 1;
        for &m in &self.bounds {
            acc = acc.saturating_mul(2 * m.to_u128().expect("nonnegative") + 2);
        }
        for k in 1..=n {
            acc = acc.saturating_mul(k);
        }
        acc.saturating_mul(1u128.checked_shl(n as u32).unwrap_or(u128::MAX))
    }
}

impl NodeDomain for RegionDomain {
    type Payload = Region;

    fn initial(&self) -> Region {
        region_initial(self.bounds.len())
    }

    fn successors(&self, r: &Region, t: &Transition, out: &mut Vec<Region>) {
        out.extend(region_successors(r, t, &self.bounds));
    }

    fn same_root(&self, candidate: &Region, existing: &Region) -> bool {
        candidate == existing
    }

    fn covered(&self, candidate: &Region, existing: &Region) -> bool {
        candidate == existing
    }

    fn is_exact(&self) -> bool {
        true
    }
}

pub fn region_initial(clocks: usize) -> Region {
    Region::zero(clocks)
}

/// Regions reachable from `r` by a delay followed by `t`: the delay chain
/// filtered by the guard, then reset. Duplicates are removed, order kept.
pub fn region_successors(r: &Region, t: &Transition, bounds: &[i64]) -> Vec<Region> {
    let resets: Vec<usize> = t.resets.iter().map(|c| c.0).collect();
    let mut out: Vec<Region> = Vec::new();
    for s in r.delay_chain(bounds) {
        if t.guard.atoms().iter().all(|a| s.satisfies(a, bounds)) {
            let next = s.reset(&resets);
            if !out.contains(&next) {
                out.push(next);
            }
        }
    }
    out
}

/// Runs the engine with region payloads.
pub fn region_reach(m: &PdtaModel) -> Result<ReachResult, EngineError> {
    pdta_reach(m, &EngineConfig::new(Mode::Region))
}
