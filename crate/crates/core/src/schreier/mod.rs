//! Finite balls in Schreier graphs of marked actions.

mod ball;
mod export;
mod growth;

pub use ball::{build_ball, BallDistance, BallEdge, BallGraph, SchreierError};
pub use export::ExportFormat;
pub use growth::{growth_table, GrowthTable};
