//! Finite simplicial complexes, simplicial maps and the simplicial chain functor.

mod complex;
mod map;

pub use complex::{product_complex, SimplicialComplex};
pub use map::{graph_map, induced_chain_map, lefschetz_number, SimplicialMap};
