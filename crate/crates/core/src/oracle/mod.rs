//! Independent cross-checks for the zone engine: exploration over classical
//! regions, and exact replay of a candidate run.

mod region;
mod replay;

pub use region::{region_initial, region_reach, region_successors, Region, RegionDomain};
pub use replay::{parse_trace, replay_detailed, replay_trace, ReplayError, ReplayOutcome};
