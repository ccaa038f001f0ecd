//! Groups with decidable twisted conjugacy, group rings and shadow traces.

mod group;
mod ring;
mod twisted;

pub use group::{
    abelianize, invert_word, letter, letter_generator, reduce_word, FiniteGroup, GroupClass, GroupElement,
    GroupEndomorphism, GroupHom, Letter,
};
pub use ring::{GroupRingElement, GroupRingMatrix};
pub use twisted::{
    augment, classes_equal, nielsen, pushforward, shortlex_key, twisted_class, twisted_hs_trace, Certainty, Comparison,
    ShadowElement, TwistedClass, TwistedConjugacy, DEFAULT_DEPTH,
};
