use std::sync::Arc;

use super::maps::{circle_degree_map, circle_rotation};
use super::spaces::{circle, point, rp2};
use crate::bundles::{BundleSelfMapPair, DiscreteBundle, GraphBase};
use crate::cells::{CellularMap, EdgePath, Step};
use crate::error::Result;
use crate::grouprings::DEFAULT_DEPTH;
use crate::simplicial::{SimplicialComplex, SimplicialMap};

pub fn two_points() -> SimplicialComplex {
    SimplicialComplex::new(vec!["p".into(), "q".into()], &[vec![0], vec![1]]).expect("two points")
}

fn step(edge: usize, forward: bool) -> Step {
    Step { edge, forward }
}

fn word(base: &GraphBase, start: usize, steps: &[(usize, bool)]) -> EdgePath {
    base.path(start, steps).expect("valid base word")
}

/// Triangle base `b0, b1, b2` with edges `e01, e12, e02`.
pub fn triangle_base() -> GraphBase {
    GraphBase::new(
        vec!["b0".into(), "b1".into(), "b2".into()],
        vec![(0, 1), (1, 2), (0, 2)],
        Some(vec!["e01".into(), "e12".into(), "e02".into()]),
    )
    .expect("triangle")
}

/// The connected double cover of the circle, fiber `{p, q}` swapped over
/// `e02`.
pub fn double_cover() -> DiscreteBundle {
    let base = triangle_base();
    let f = Arc::new(two_points());
    let id = SimplicialMap::identity(f.clone());
    let swap = SimplicialMap::endo(f.clone(), vec![1, 0]).expect("swap");
    DiscreteBundle::new(
        base,
        vec![f.clone(), f.clone(), f],
        vec![id.clone(), id.clone(), swap.clone()],
        vec![id.clone(), id, swap],
    )
    .expect("double cover")
}

/// Reflection of the triangle fixing `b0`: `e01 ↦ e02`, `e12 ↦ e12⁻¹`,
/// `e02 ↦ e01`.
pub fn triangle_reflection(base: &GraphBase) -> CellularMap {
    base.self_map(
        vec![0, 2, 1],
        vec![
            word(base, 0, &[(2, true)]),
            word(base, 2, &[(1, false)]),
            word(base, 0, &[(0, true)]),
        ],
    )
    .expect("reflection")
}

/// `z ↦ z̄` on the hexagon over the double cover, written out cell by cell.
/// Vertices are `b:x` in order `b0:p, b0:q, b1:p, b1:q, b2:p, b2:q`; the
/// vertical edges are `e01×p, e01×q, e12×p, e12×q, e02×p, e02×q`.
pub fn hexagon_reflection(total: &Arc<crate::cells::CellComplex>) -> Result<CellularMap> {
    let path = |start: usize, s: Step| EdgePath { start, steps: vec![s] };
    CellularMap::new(
        total.clone(),
        total.clone(),
        vec![0, 1, 5, 4, 3, 2],
        vec![
            path(0, step(4, true)),
            path(1, step(5, true)),
            path(5, step(3, false)),
            path(4, step(2, false)),
            path(0, step(0, true)),
            path(1, step(1, true)),
        ],
        Vec::new(),
    )
}

/// The double cover of the circle with the reflection of the
/// base, fiber maps `id, swap, swap`, and the total reflection supplied.
pub fn double_cover_reflection() -> Result<BundleSelfMapPair> {
    let bundle = Arc::new(double_cover());
    let base = bundle.base();
    let fbar = triangle_reflection(base);
    let f = bundle.fiber(0).clone();
    let id = SimplicialMap::identity(f.clone());
    let swap = SimplicialMap::endo(f, vec![1, 0])?;
    let cells = bundle.fiber_cells(0).clone();
    let fibers = vec![
        id.cellular(cells.clone(), cells.clone()),
        swap.cellular(cells.clone(), cells.clone()),
        swap.cellular(cells.clone(), cells),
    ];
    let total = crate::bundles::TotalSpace::new(bundle.clone())?;
    let supplied = hexagon_reflection(total.complex())?;
    BundleSelfMapPair::new(bundle, fbar, fibers, Some(supplied), DEFAULT_DEPTH)
}

/// Same data as [`double_cover_reflection`] with the total map built from the
/// fiber maps.
pub fn double_cover_reflection_automatic() -> Result<BundleSelfMapPair> {
    let p = double_cover_reflection()?;
    BundleSelfMapPair::new(
        p.bundle().clone(),
        p.base_map().clone(),
        p.fiber_maps().to_vec(),
        None,
        DEFAULT_DEPTH,
    )
}

fn circle_base(n: usize) -> GraphBase {
    GraphBase::from_simplicial(&circle(n)).expect("circle base")
}

/// Trivial circle bundle over the triangle with `z^{d₁}` on the base and
/// `z^{d₂}` on every fiber.
pub fn trivial_product(d1: i64, d2: i64) -> Result<BundleSelfMapPair> {
    let base = circle_base(3);
    let fbar = circle_degree_map(3, d1)?;
    let bundle = Arc::new(DiscreteBundle::trivial(base, Arc::new(circle(3)))?);
    let g = circle_degree_map(3, d2)?;
    let cells = bundle.fiber_cells(0).clone();
    let g = CellularMap::new(
        cells.clone(),
        cells,
        g.vertex_images().to_vec(),
        (0..3).map(|e| g.edge_image(e).clone()).collect(),
        Vec::new(),
    )?;
    BundleSelfMapPair::new(bundle, fbar, vec![g; 3], None, DEFAULT_DEPTH)
}

/// `trivial_product(d1, 1)` with the total map of `trivial_product(d1, 4)`
/// supplied. Degrees 1 and 4 agree on the vertices of the triangle, so every
/// input check passes while the total map does not fit the fiber maps.
pub fn trivial_product_corrupted(d1: i64) -> Result<BundleSelfMapPair> {
    let p = trivial_product(d1, 1)?;
    let wrong = trivial_product(d1, 4)?;
    BundleSelfMapPair::new(
        p.bundle().clone(),
        p.base_map().clone(),
        p.fiber_maps().to_vec(),
        Some(wrong.total_map().clone()),
        DEFAULT_DEPTH,
    )
}

/// The double cover with `f̄` of degree 2 and constant fiber maps.
pub fn double_cover_degree_two() -> Result<BundleSelfMapPair> {
    let base = circle_base(3);
    let fbar = circle_degree_map(3, 2)?;
    let f = Arc::new(two_points());
    let id = SimplicialMap::identity(f.clone());
    let swap = SimplicialMap::endo(f.clone(), vec![1, 0])?;
    let e02 = base.edge_index("02").expect("edge 02");
    let transports: Vec<SimplicialMap> = (0..3)
        .map(|e| if e == e02 { swap.clone() } else { id.clone() })
        .collect();
    let bundle = Arc::new(DiscreteBundle::new(
        base,
        vec![f.clone(); 3],
        transports.clone(),
        transports,
    )?);
    let cells = bundle.fiber_cells(0).clone();
    let constant = |x: usize| {
        SimplicialMap::endo(f.clone(), vec![x, x])
            .expect("constant")
            .cellular(cells.clone(), cells.clone())
    };
    BundleSelfMapPair::new(
        bundle.clone(),
        fbar,
        vec![constant(0), constant(0), constant(1)],
        None,
        DEFAULT_DEPTH,
    )
}

/// Rotation of the base triangle times the identity of a circle fiber: no
/// fixed points.
pub fn fixed_point_free_rotation() -> Result<BundleSelfMapPair> {
    let base = circle_base(3);
    let fbar = circle_rotation(3).to_cellular();
    let bundle = Arc::new(DiscreteBundle::trivial(base, Arc::new(circle(3)))?);
    let id = CellularMap::identity(bundle.fiber_cells(0).clone());
    BundleSelfMapPair::new(bundle, fbar, vec![id; 3], None, DEFAULT_DEPTH)
}

/// Point fiber over the triangle with the reflection: the total space is the
/// base again.
pub fn point_fiber_reflection() -> Result<BundleSelfMapPair> {
    let base = triangle_base();
    let fbar = triangle_reflection(&base);
    let bundle = Arc::new(DiscreteBundle::trivial(base, Arc::new(point()))?);
    let id = CellularMap::identity(bundle.fiber_cells(0).clone());
    BundleSelfMapPair::new(bundle, fbar, vec![id; 3], None, DEFAULT_DEPTH)
}

/// Identity pair on a bundle over the figure eight (two loops at `v`,
/// through `a` and `b`) with two-point fiber swapped along one loop.
pub fn figure_eight_cover_identity() -> Result<BundleSelfMapPair> {
    let base = GraphBase::new(
        vec!["v".into(), "a".into(), "b".into()],
        vec![(0, 1), (1, 0), (0, 2), (2, 0)],
        Some(vec!["x1".into(), "x2".into(), "y1".into(), "y2".into()]),
    )?;
    let f = Arc::new(two_points());
    let id = SimplicialMap::identity(f.clone());
    let swap = SimplicialMap::endo(f.clone(), vec![1, 0])?;
    let transports = vec![id.clone(), swap, id.clone(), id];
    let bundle = Arc::new(DiscreteBundle::new(base, vec![f; 3], transports.clone(), transports)?);
    identity_pair(bundle)
}

/// `(id, id)` on a bundle.
pub fn identity_pair(bundle: Arc<DiscreteBundle>) -> Result<BundleSelfMapPair> {
    let base = bundle.base();
    let fbar = CellularMap::identity(base.complex().clone());
    let fibers = (0..base.vertex_count())
        .map(|b| CellularMap::identity(bundle.fiber_cells(b).clone()))
        .collect();
    BundleSelfMapPair::new(bundle, fbar, fibers, None, DEFAULT_DEPTH)
}

/// Identity pairs over the two components of a disconnected base: the
/// figure-eight double cover, and a segment carrying the projective plane.
pub fn two_component_base() -> Result<Vec<BundleSelfMapPair>> {
    let segment = GraphBase::new(vec!["c".into(), "d".into()], vec![(0, 1)], Some(vec!["s".into()]))?;
    let plane = Arc::new(DiscreteBundle::trivial(segment, Arc::new(rp2()))?);
    Ok(vec![figure_eight_cover_identity()?, identity_pair(plane)?])
}
