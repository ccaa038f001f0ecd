use std::sync::Arc;

use crate::cells::{Cell, CellComplex, EdgePath, Face, Step};
use crate::simplicial::SimplicialComplex;

pub fn point() -> SimplicialComplex {
    SimplicialComplex::with_vertex_count(1, &[vec![0]]).expect("point")
}

/// Boundary of an `n`-gon, `n ≥ 3`.
pub fn circle(n: usize) -> SimplicialComplex {
    assert!(n >= 3, "a simplicial circle needs three vertices");
    let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    SimplicialComplex::with_vertex_count(n, &edges).expect("circle")
}

/// Two triangles sharing vertex 0.
pub fn figure_eight() -> SimplicialComplex {
    let edges = [[0, 1], [1, 2], [0, 2], [0, 3], [3, 4], [0, 4]];
    let edges: Vec<Vec<usize>> = edges.iter().map(|e| e.to_vec()).collect();
    SimplicialComplex::with_vertex_count(5, &edges).expect("figure eight")
}

/// Möbius' 7-vertex torus.
pub fn torus7() -> SimplicialComplex {
    let mut tri = Vec::new();
    for i in 0..7 {
        tri.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        tri.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    SimplicialComplex::with_vertex_count(7, &tri).expect("torus")
}

/// 6-vertex projective plane.
pub fn rp2() -> SimplicialComplex {
    let tri = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    let tri: Vec<Vec<usize>> = tri.iter().map(|t| t.to_vec()).collect();
    SimplicialComplex::with_vertex_count(6, &tri).expect("projective plane")
}

/// Two disjoint triangles, vertices `0..3` and `3..6`.
pub fn two_circles() -> SimplicialComplex {
    let edges = [[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]];
    let edges: Vec<Vec<usize>> = edges.iter().map(|e| e.to_vec()).collect();
    SimplicialComplex::with_vertex_count(6, &edges).expect("two circles")
}

/// Torus with one vertex, edges `x`, `y` and one square attached along
/// `x y x⁻¹ y⁻¹`.
pub fn cw_torus() -> Arc<CellComplex> {
    let step = |edge, forward| Step { edge, forward };
    let path = |steps: Vec<Step>| EdgePath { start: 0, steps };
    let square = Cell {
        anchor: 0,
        faces: vec![
            Face {
                sign: 1,
                cell: 0,
                path: path(vec![]),
            },
            Face {
                sign: 1,
                cell: 1,
                path: path(vec![step(0, true)]),
            },
            Face {
                sign: -1,
                cell: 0,
                path: path(vec![step(1, true)]),
            },
            Face {
                sign: -1,
                cell: 1,
                path: path(vec![]),
            },
        ],
        boundary_loop: Some(path(vec![step(0, true), step(1, true), step(0, false), step(1, false)])),
    };
    Arc::new(CellComplex::new(vec!["v".into()], vec![(0, 0), (0, 0)], vec![vec![square]]).expect("torus cells"))
}
