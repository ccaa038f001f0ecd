//! Discrete fibrations over graphs, their total spaces, and the fiberwise
//! factorizations of Lefschetz numbers and Reidemeister traces.

mod bundle;
mod pair;
mod total;
mod total_map;
mod verify;

pub use bundle::{DiscreteBundle, GraphBase};
pub use pair::{BaseClassList, BasePathClass, BundleSelfMapPair, RefinedTrace};
pub use total::TotalSpace;
pub use total_map::{automatic_total_map, check_supplied_total_map};
pub use verify::{
    nielsen_additivity, verify_lefschetz_mult, verify_reidemeister_mult, ClassRow, NielsenAdditivity, Theorem, Verdict,
    VerificationReport,
};
