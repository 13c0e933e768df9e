//! Finite-scale detectors for coarse invariants of Schreier graphs.
//!
//! Every result is qualified by the scale it was computed at: the ball
//! radius, inner radius, coarseness and word budget travel with the report.
//! The outermost sphere of a ball is frontier, not data: vertices there may
//! be missing edges, so "unbounded" is read as "reaches the outer sphere".

mod components;
mod cosets;
mod ends;
mod growth;
mod narrow;

use crate::action::ActionError;
use crate::schreier::SchreierError;

pub use components::coarse_components;
pub use cosets::{
    commensurator_probe, commensurator_probe_at, coset_distance_probe, double_coset_orbits,
    loop_words, CommensuratorProbe, CosetClass, CosetDistance, DoubleCosetPartition, ProbeVerdict,
};
pub use ends::{ends_profile, EndsProfile, EndsRow};
pub use growth::{linear_growth_check, LinearGrowthEvidence};
pub use narrow::{narrowness_profile, NarrownessReport, WitnessMethod};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoarseError {
    #[error("inner radius {inner} needs outer radius above {needed}, ball has radius {radius}")]
    RadiusTooSmall {
        inner: u32,
        needed: u32,
        radius: u32,
    },
    #[error("coarseness mu must be at least 1")]
    ZeroMu,
    #[error("growth table needs at least 4 entries, got {0}")]
    TableTooShort(usize),
    #[error("word budget {budget} exceeds the trusted range for radius {radius}")]
    BudgetTooLarge { budget: u32, radius: u32 },
    #[error("word of length {length} with distance bound {bound} needs radius above {needed}, ball has {radius}")]
    ProbeRadius {
        length: usize,
        bound: u32,
        needed: u32,
        radius: u32,
    },
    #[error(transparent)]
    Schreier(#[from] SchreierError),
    #[error(transparent)]
    Action(#[from] ActionError),
}
