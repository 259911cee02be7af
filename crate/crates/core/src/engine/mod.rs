//! Well-nested reachability by saturation of the Start, Internal, Push and
//! Pop rules over a two-level store of node pairs.

mod domain;
mod explore;
mod fixpoint;
mod tlm;
mod trace;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use thiserror::Error;

use crate::model::{Diagnostic, PdtaModel, StateId, TransitionId};
use crate::oracle::RegionDomain;
use crate::Scalar;

pub use domain::{NodeDomain, ZoneDomain, ZoneMode};
pub use explore::{explore, Exploration};
pub use fixpoint::verify_fixed_point;
pub use tlm::{Node, NodeId, Origin, PopEntry, PushEntry, Root, RootId, RootOrigin, Tlm};
pub use trace::{root_access, well_nested_path, witness};

/// Node abstraction and the comparisons used by the store.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Zones; roots by LU-equivalence, nodes and pops by LU-simulation.
    #[default]
    Simulation,
    /// Zones; LU-equivalence for every test.
    Equivalence,
    /// Zones; LU-simulation even for roots. Can report unreachable states.
    Naive,
    /// Regions compared by equality.
    Region,
}

impl Mode {
    pub const ALL: [Mode; 4] = [
        Mode::Simulation,
        Mode::Equivalence,
        Mode::Naive,
        Mode::Region,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Simulation => "sim",
            Mode::Equivalence => "equiv",
            Mode::Naive => "naive",
            Mode::Region => "region",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mode `{s}` (expected sim, equiv, naive or region)"))
    }
}

/// Worklist discipline.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    /// Most recently added first.
    #[default]
    Lifo,
    Fifo,
}

impl Order {
    pub fn name(self) -> &'static str {
        match self {
            Order::Lifo => "lifo",
            Order::Fifo => "fifo",
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Order {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lifo" => Ok(Order::Lifo),
            "fifo" => Ok(Order::Fifo),
            _ => Err(format!("unknown order `{s}` (expected lifo or fifo)")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EngineConfig {
    pub mode: Mode,
    pub order: Order,
    /// Stop as soon as a final state shows up under the initial root.
    pub stop_early: bool,
    /// Check store invariants and rule provenance while exploring.
    pub check_invariants: bool,
    /// Re-apply every rule to the final store and record the outcome.
    pub verify_fixed_point: bool,
    pub timeout: Option<Duration>,
}

impl EngineConfig {
    pub fn new(mode: Mode) -> Self {
        EngineConfig {
            mode,
            ..Default::default()
        }
    }

    pub fn order(mut self, order: Order) -> Self {
        self.order = order;
        self
    }

    pub fn checked(mut self) -> Self {
        self.check_invariants = true;
        self.verify_fixed_point = true;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Successful `add` calls, i.e. node pairs discovered.
    pub pairs_added: usize,
    pub roots: usize,
    pub push_entries: usize,
    pub pop_entries: usize,
    pub iterations: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachResult {
    /// States occurring under the initial root.
    pub reachable: BTreeSet<StateId>,
    /// Some final state is reachable with an empty stack.
    pub nonempty: bool,
    pub stats: Stats,
    /// Produced by a mode that can report unreachable states.
    pub unsound: bool,
    /// Only filled when invariant checking is on.
    pub violations: Vec<String>,
    /// Only filled when fixed-point verification is on.
    pub fixed_point: Option<bool>,
    /// Exploration stopped once a final state was found.
    pub stopped_early: bool,
}

impl ReachResult {
    pub fn invariants_ok(&self) -> bool {
        self.violations.is_empty() && self.fixed_point != Some(false)
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("model is not admissible: {}", join(.0))]
    InvalidModel(Vec<Diagnostic>),
    #[error("{context} does not fit the zone scalar (max {max})")]
    ScalarRange { context: String, max: i64 },
    #[error("timed out after {elapsed:?} with {pairs_added} pairs")]
    Timeout {
        elapsed: Duration,
        pairs_added: usize,
    },
}

fn join(d: &[Diagnostic]) -> String {
    d.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Validates `m` and explores it in the configured mode.
pub fn pdta_reach(m: &PdtaModel, cfg: &EngineConfig) -> Result<ReachResult, EngineError> {
    let diags = m.validate();
    if !diags.is_empty() {
        return Err(EngineError::InvalidModel(diags));
    }
    match ZoneMode::try_from(cfg.mode) {
        Ok(zm) => run(m, &ZoneDomain::<Scalar>::new(m, zm)?, cfg),
        Err(_) => run(m, &RegionDomain::new(m), cfg),
    }
}

/// Like [`pdta_reach`], and also returns an edge sequence reaching the
/// first accepting state (in declaration order) found under the initial root.
pub fn pdta_reach_witness(
    m: &PdtaModel,
    cfg: &EngineConfig,
) -> Result<(ReachResult, Option<Vec<TransitionId>>), EngineError> {
    let diags = m.validate();
    if !diags.is_empty() {
        return Err(EngineError::InvalidModel(diags));
    }
    match ZoneMode::try_from(cfg.mode) {
        Ok(zm) => run_witness(m, &ZoneDomain::<Scalar>::new(m, zm)?, cfg),
        Err(_) => run_witness(m, &RegionDomain::new(m), cfg),
    }
}

fn run<D: NodeDomain>(
    m: &PdtaModel,
    d: &D,
    cfg: &EngineConfig,
) -> Result<ReachResult, EngineError> {
    run_witness(m, d, cfg).map(|(r, _)| r)
}

fn run_witness<D: NodeDomain>(
    m: &PdtaModel,
    d: &D,
    cfg: &EngineConfig,
) -> Result<(ReachResult, Option<Vec<TransitionId>>), EngineError> {
    let mut ex = explore(m, d, cfg)?;
    if cfg.verify_fixed_point && !ex.result.stopped_early {
        ex.result.fixed_point = Some(verify_fixed_point(m, &ex.tlm, d));
    }
    let path = m.finals().find_map(|q| witness(m, &ex.tlm, q));
    Ok((ex.result, path))
}
