//! Exact fixed-point invariants of cellular maps and discrete fibrations.

pub mod bundles;
pub mod catalog;
pub mod cells;
pub mod error;
pub mod exactalg;
pub mod grouprings;
pub mod pi1;
pub mod reidemeister;
pub mod simplicial;

pub use error::{Error, Result};
