//! Houghton-group elements and marked actions on the ray set `X_n`.

mod element;
mod marked;
mod point;
mod text;

pub use element::{ElementError, HoughtonElement};
pub use marked::{format_word_with, ActionError, Generator, Letter, MarkedAction, Word};
pub use point::RayPoint;
pub use text::{format_cycles, parse_cycles};
