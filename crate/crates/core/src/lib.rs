//! Well-nested control-state reachability for pushdown timed automata
//! using zones pruned by LU-simulation.
//!
//! The pieces:
//!
//! * [`zone`]: DBM arithmetic and the LU-simulation test, generic over the
//!   bound scalar.
//! * [`model`]: automata, the text format, validation and LU extraction.
//! * [`engine`]: the root/node store and the worklist fixed-point loop.
//! * [`oracle`]: region-based exploration and exact trace replay.
//! * [`bench`]: generators for the parametric benchmark family.

pub mod bench;
pub mod engine;
pub mod model;
pub mod oracle;
pub mod zone;

/// Scalar used for bound constants throughout the engine.
pub type Scalar = i64;
pub type Bound = zone::Bound<Scalar>;
pub type Zone = zone::Dbm<Scalar>;
pub type Constraint = zone::ClockConstraint<Scalar>;

pub use engine::{
    pdta_reach, pdta_reach_witness, EngineConfig, EngineError, Mode, Order, ReachResult,
};
pub use model::{parse_model, PdtaModel};
pub use zone::{lu_equiv, lu_le, LuBounds, Valuation};
