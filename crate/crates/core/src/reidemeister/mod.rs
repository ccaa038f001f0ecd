//! Reidemeister traces from twisted cellular traces and from fixed-point data.

mod lift;
mod trace;

pub use lift::{lift_map, lift_to_universal_cover, tree_basepath, EquivariantChainComplex, TwistedChainMap};
pub use trace::{
    component_trace, reidemeister_trace, reidemeister_trace_chain, reidemeister_trace_geometric, total_augmentation,
    vertex_witness, ComponentTrace, FixedPointRecord, ReidemeisterTrace,
};
