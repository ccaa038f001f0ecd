//! Exact integer linear algebra, chain complexes and classical traces.

mod chain;
mod matrix;
mod smith;

pub use chain::{
    homology, homology_with_map, hopf_chain_trace, induced_homology_map, lefschetz_from_homology, same_on_homology,
    tensor_chain_map, tensor_complex, ChainComplex, ChainMap, HomologyDegree, HomologySummary, RatMatrix,
};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithForm};
