use std::fmt::Debug;
use std::hash::Hash;

use crate::model::{PdtaModel, Transition};
use crate::zone::{lu_equiv, lu_le, BoundValue, ClockConstraint, Dbm, LuBounds};

use super::{EngineError, Mode};

/// What the rule loop needs from a node abstraction.
pub trait NodeDomain {
    type Payload: Clone + Eq + Hash + Debug;

    fn initial(&self) -> Self::Payload;

    /// Nonempty successors of `p` through `t` (delay, guard, reset).
    fn successors(&self, p: &Self::Payload, t: &Transition, out: &mut Vec<Self::Payload>);

    /// The first-level test of `isNewRoot`.
    fn same_root(&self, candidate: &Self::Payload, existing: &Self::Payload) -> bool;

    /// The second-level test of `isNewNode` and `isNewPop`.
    fn covered(&self, candidate: &Self::Payload, existing: &Self::Payload) -> bool;

    /// Both tests are plain equality, so payloads may be hashed.
    fn is_exact(&self) -> bool {
        false
    }

    /// False for variants kept only to exhibit a wrong answer.
    fn is_sound(&self) -> bool {
        true
    }
}

/// Which zone comparison each test uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZoneMode {
    /// Roots by mutual simulation, nodes and pops by simulation.
    Simulation,
    /// Mutual simulation everywhere.
    Equivalence,
    /// Simulation everywhere, roots included. Unsound.
    Naive,
}

impl TryFrom<Mode> for ZoneMode {
    type Error = Mode;

    fn try_from(m: Mode) -> Result<Self, Mode> {
        match m {
            Mode::Simulation => Ok(ZoneMode::Simulation),
            Mode::Equivalence => Ok(ZoneMode::Equivalence),
            Mode::Naive => Ok(ZoneMode::Naive),
            Mode::Region => Err(m),
        }
    }
}

/// Zones compared through LU-simulation with global bounds.
#[derive(Clone, Debug)]
pub struct ZoneDomain<T: BoundValue> {
    clocks: usize,
    lu: LuBounds,
    mode: ZoneMode,
    guards: Vec<Vec<ClockConstraint<T>>>,
    resets: Vec<Vec<usize>>,
}

impl<T: BoundValue> ZoneDomain<T> {
    pub fn new(m: &PdtaModel, mode: ZoneMode) -> Result<Self, EngineError> {
        Self::with_bounds(m, mode, m.lu_bounds())
    }

    pub fn with_bounds(m: &PdtaModel, mode: ZoneMode, lu: LuBounds) -> Result<Self, EngineError> {
        let guards = m
            .transitions()
            .iter()
            .map(|t| {
                t.guard
                    .constraints::<T>()
                    .ok_or_else(|| EngineError::ScalarRange {
                        context: format!("guard of edge #{}", t.id.0),
                        max: T::max_constant(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(x) = (0..lu.clocks()).find(|&x| lu.max_bound(x) > T::max_constant()) {
            return Err(EngineError::ScalarRange {
                context: format!("LU bound of clock #{x}"),
                max: T::max_constant(),
            });
        }
        Ok(ZoneDomain {
            clocks: m.clock_count(),
            lu,
            mode,
            guards,
            resets: m
                .transitions()
                .iter()
                .map(Transition::reset_indices)
                .collect(),
        })
    }

    pub fn lu(&self) -> &LuBounds {
        &self.lu
    }

    pub fn mode(&self) -> ZoneMode {
        self.mode
    }

    fn le(&self, a: &Dbm<T>, b: &Dbm<T>) -> bool {
        lu_le(a, b, &self.lu).expect("zones of one model share dimensions")
    }

    fn equiv(&self, a: &Dbm<T>, b: &Dbm<T>) -> bool {
        lu_equiv(a, b, &self.lu).expect("zones of one model share dimensions")
    }
}

impl<T: BoundValue> NodeDomain for ZoneDomain<T> {
    type Payload = Dbm<T>;

    fn initial(&self) -> Dbm<T> {
        Dbm::initial(self.clocks)
    }

    fn successors(&self, z: &Dbm<T>, t: &Transition, out: &mut Vec<Dbm<T>>) {
        let next = z.successor(&self.guards[t.id.0], &self.resets[t.id.0]);
        if !next.is_empty() {
            out.push(next);
        }
    }

    fn same_root(&self, candidate: &Dbm<T>, existing: &Dbm<T>) -> bool {
        match self.mode {
            ZoneMode::Naive => self.le(candidate, existing),
            ZoneMode::Simulation | ZoneMode::Equivalence => self.equiv(candidate, existing),
        }
    }

    fn covered(&self, candidate: &Dbm<T>, existing: &Dbm<T>) -> bool {
        match self.mode {
            ZoneMode::Simulation | ZoneMode::Naive => self.le(candidate, existing),
            ZoneMode::Equivalence => self.equiv(candidate, existing),
        }
    }

    fn is_sound(&self) -> bool {
        self.mode != ZoneMode::Naive
    }
}
