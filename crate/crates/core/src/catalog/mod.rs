//! Named spaces, self-maps and fixed-point oracles used by tests and the CLI.

mod bundles;
mod maps;
mod random;
mod spaces;

pub use bundles::{
    double_cover, double_cover_degree_two, double_cover_reflection, double_cover_reflection_automatic,
    figure_eight_cover_identity, fixed_point_free_rotation, hexagon_reflection, identity_pair, point_fiber_reflection,
    triangle_base, triangle_reflection, trivial_product, trivial_product_corrupted, two_component_base, two_points,
};
pub use maps::{
    circle_degree_map, circle_degree_records, circle_reflection, circle_reflection_records, circle_rotation,
    torus_linear, torus_linear_records,
};
pub use random::{random_simplicial_map, seeded_self_map};
pub use spaces::{circle, cw_torus, figure_eight, point, rp2, torus7, two_circles};
