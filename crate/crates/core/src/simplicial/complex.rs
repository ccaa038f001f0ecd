use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::cells::{Cell, CellComplex, EdgePath, Face, Step};
use crate::error::{Error, Result};
use crate::exactalg::ChainComplex;

/// Finite abstract simplicial complex.
///
/// Vertex order is declaration order; every simplex is stored as a strictly
/// increasing tuple of vertex indices and all orientations derive from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Face closure of the given simplices over the declared vertex list.
    pub fn new(vertices: Vec<String>, maximal: &[Vec<usize>]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::InvalidComplex(format!("duplicate vertex id {v:?}")));
            }
        }
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![(0..vertices.len()).map(|v| vec![v]).collect()];
        for s in maximal {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            if sorted.is_empty() {
                return Err(Error::InvalidComplex("empty simplex".into()));
            }
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!("simplex {s:?} repeats a vertex")));
            }
            if let Some(&v) = sorted.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::InvalidComplex(format!("vertex {v} out of range")));
            }
            for face in all_faces(&sorted) {
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize(d + 1, BTreeSet::new());
                }
                by_dim[d].insert(face);
            }
        }
        if vertices.is_empty() {
            by_dim.clear();
        }
        let simplices: Vec<Vec<Vec<usize>>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(SimplicialComplex {
            vertices,
            simplices,
            index,
        })
    }

    /// Vertices labelled `"0"`, `"1"`, ….
    pub fn with_vertex_count(n: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), maximal)
    }

    /// Builds from vertex labels, with simplices given by label.
    pub fn from_labels(vertices: &[&str], maximal: &[&[&str]]) -> Result<Self> {
        let lookup: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let maximal = maximal
            .iter()
            .map(|s| {
                s.iter()
                    .map(|v| {
                        lookup
                            .get(v)
                            .copied()
                            .ok_or_else(|| Error::InvalidComplex(format!("unknown vertex {v:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices.iter().map(|v| v.to_string()).collect(), &maximal)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.index.get(simplex.len().checked_sub(1)?)?.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index_of(simplex).is_some()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Simplices not contained in a larger one.
    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        let mut covered: BTreeSet<Vec<usize>> = BTreeSet::new();
        for d in 1..self.simplices.len() {
            for s in &self.simplices[d] {
                for i in 0..s.len() {
                    covered.insert(drop_index(s, i));
                }
            }
        }
        self.simplices
            .iter()
            .flatten()
            .filter(|s| !covered.contains(*s))
            .cloned()
            .collect()
    }

    /// Oriented simplicial chain complex, `∂[v₀…v_n] = Σ (−1)^i [v₀…v̂_i…v_n]`.
    pub fn chain_complex(&self) -> ChainComplex {
        self.cell_complex()
            .chain_complex()
            .expect("simplicial boundaries square to zero")
    }

    /// The same complex as an anchored cell complex. Simplices anchor at their
    /// least vertex; edges run from lower to higher vertex.
    pub fn cell_complex(&self) -> CellComplex {
        let edges: Vec<(usize, usize)> = self.simplices(1).iter().map(|e| (e[0], e[1])).collect();
        let step = |a: usize, b: usize| -> Step {
            if a < b {
                Step {
                    edge: self.index_of(&[a, b]).expect("edge of a simplex"),
                    forward: true,
                }
            } else {
                Step {
                    edge: self.index_of(&[b, a]).expect("edge of a simplex"),
                    forward: false,
                }
            }
        };
        let mut higher = Vec::new();
        for d in 2..self.simplices.len() {
            let cells = self.simplices[d]
                .iter()
                .map(|s| {
                    let faces = (0..s.len())
                        .map(|i| {
                            let face = drop_index(s, i);
                            let mut path = EdgePath::constant(s[0]);
                            if i == 0 {
                                path.push(step(s[0], s[1]));
                            }
                            Face {
                                sign: if i % 2 == 0 { 1 } else { -1 },
                                cell: self.index_of(&face).expect("face closure"),
                                path,
                            }
                        })
                        .collect();
                    let boundary_loop = (d == 2).then(|| EdgePath {
                        start: s[0],
                        steps: vec![step(s[0], s[1]), step(s[1], s[2]), step(s[2], s[0])],
                    });
                    Cell {
                        anchor: s[0],
                        faces,
                        boundary_loop,
                    }
                })
                .collect();
            higher.push(cells);
        }
        CellComplex::new(self.vertices.clone(), edges, higher).expect("simplicial cell data is consistent")
    }

    pub fn cells(&self) -> Arc<CellComplex> {
        Arc::new(self.cell_complex())
    }
}

pub(crate) fn drop_index(s: &[usize], i: usize) -> Vec<usize> {
    s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect()
}

fn all_faces(s: &[usize]) -> Vec<Vec<usize>> {
    let n = s.len();
    (1u64..(1 << n))
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| s[i]).collect())
        .collect()
}

/// Staircase triangulation of `|K| × |L|`.
///
/// Vertices are pairs `(v, w)` in lexicographic order; the simplices over
/// `σ × τ` are the monotone lattice paths through the vertex grid of `σ`, `τ`.
pub fn product_complex(k: &SimplicialComplex, l: &SimplicialComplex) -> SimplicialComplex {
    let nl = l.vertex_count();
    let vertices = k
        .vertices()
        .iter()
        .flat_map(|a| l.vertices().iter().map(move |b| format!("({a},{b})")))
        .collect();
    let mut maximal = Vec::new();
    for s in k.maximal_simplices() {
        for t in l.maximal_simplices() {
            staircases(&s, &t, &mut |path| {
                maximal.push(path.iter().map(|&(i, j)| s[i] * nl + t[j]).collect());
            });
        }
    }
    SimplicialComplex::new(vertices, &maximal).expect("staircase simplices are valid")
}

fn staircases(s: &[usize], t: &[usize], emit: &mut dyn FnMut(&[(usize, usize)])) {
    fn walk(
        i: usize,
        j: usize,
        p: usize,
        q: usize,
        acc: &mut Vec<(usize, usize)>,
        emit: &mut dyn FnMut(&[(usize, usize)]),
    ) {
        acc.push((i, j));
        if i == p && j == q {
            emit(acc);
        } else {
            if i < p {
                walk(i + 1, j, p, q, acc, emit);
            }
            if j < q {
                walk(i, j + 1, p, q, acc, emit);
            }
        }
        acc.pop();
    }
    walk(0, 0, s.len() - 1, t.len() - 1, &mut Vec::new(), emit);
}
