//! Cell complexes with anchored boundary data, and cellular maps between them.
//!
//! Each cell has an anchor vertex; boundary terms and image terms carry an
//! edge path from one anchor to another. That is the data needed to read off
//! group-ring coefficients on the universal cover.

mod complex;
mod map;

pub use complex::{Cell, CellComplex, EdgePath, Face, Step};
pub(crate) use map::pad_complex;
pub use map::{CellularMap, ImageTerm};
