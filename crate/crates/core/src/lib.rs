//! Finite-scale computations around Schreier graphs and CAT(0) cube complexes.
//!
//! - [`action`]: exact Houghton-group elements acting on `X_n = {1..n} x N`.
//! - [`schreier`]: balls in Schreier graphs, growth tables, DOT/JSON export.
//! - [`coarse`]: ends, narrowness witnesses, linear growth, double cosets and
//!   coset probes, all qualified by the scale they were computed at.
//! - [`cube`]: median graphs, hyperplanes, facing triples, poc-set duals and
//!   windowed shift actions (skewering, transfer, separation index).

pub mod action;
pub mod coarse;
pub mod cube;
mod dsu;
pub mod schreier;
