use std::sync::Arc;

use super::bundle::DiscreteBundle;
use crate::cells::{Cell, CellComplex, EdgePath, Face, Step};
use crate::error::{Error, Result};

/// Total space of a discrete bundle: fiber cells `b × σ` and prism cells
/// `e × τ` glued along the transports.
///
/// Cells of each dimension list the fiber cells first (by base vertex), then
/// the prisms (by base edge). The prism `e × v` over a fiber vertex is the
/// vertical edge from `(src, v)` to `(dst, h_e(v))`.
#[derive(Debug, Clone)]
pub struct TotalSpace {
    bundle: Arc<DiscreteBundle>,
    complex: Arc<CellComplex>,
    /// `fiber_offset[d][b]`: index of the first `d`-cell of `b × F_b`.
    fiber_offset: Vec<Vec<usize>>,
    /// `prism_offset[d][e]`: index of the first `d`-cell `e × τ`.
    prism_offset: Vec<Vec<usize>>,
    projection: Vec<usize>,
}

fn shift(p: &EdgePath, vertex: usize, edge: usize) -> EdgePath {
    EdgePath {
        start: p.start + vertex,
        steps: p
            .steps
            .iter()
            .map(|s| Step {
                edge: s.edge + edge,
                forward: s.forward,
            })
            .collect(),
    }
}

impl TotalSpace {
    pub fn new(bundle: Arc<DiscreteBundle>) -> Result<Self> {
        let base = bundle.base();
        let nb = base.vertex_count();
        let ne = base.edge_count();
        let top = (0..nb).map(|b| bundle.fiber(b).dim().unwrap_or(0)).max().unwrap_or(0) + 1;
        let mut fiber_offset = vec![vec![0; nb]; top + 1];
        let mut prism_offset = vec![vec![0; ne]; top + 1];
        for d in 0..=top {
            let mut at = 0;
            for b in 0..nb {
                fiber_offset[d][b] = at;
                at += bundle.fiber(b).count(d);
            }
            if d > 0 {
                for e in 0..ne {
                    prism_offset[d][e] = at;
                    at += bundle.fiber(base.edge(e).0).count(d - 1);
                }
            }
        }
        let mut space = TotalSpace {
            bundle,
            complex: Arc::new(CellComplex::new(Vec::new(), Vec::new(), Vec::new())?),
            fiber_offset,
            prism_offset,
            projection: Vec::new(),
        };
        space.complex = Arc::new(space.build()?);
        Ok(space)
    }

    fn build(&mut self) -> Result<CellComplex> {
        let bundle = self.bundle.clone();
        let base = bundle.base();
        let mut labels = Vec::new();
        for b in 0..base.vertex_count() {
            for v in bundle.fiber(b).vertices() {
                labels.push(format!("{}:{}", base.vertex_label(b), v));
                self.projection.push(b);
            }
        }
        let mut edges = Vec::new();
        for b in 0..base.vertex_count() {
            for s in bundle.fiber(b).simplices(1) {
                edges.push((self.vertex(b, s[0]), self.vertex(b, s[1])));
            }
        }
        for e in 0..base.edge_count() {
            let (src, dst) = base.edge(e);
            let h = bundle.edge_transport(e);
            for v in 0..bundle.fiber(src).vertex_count() {
                edges.push((self.vertex(src, v), self.vertex(dst, h.vertex_images()[v])));
            }
        }
        let top = self.fiber_offset.len() - 1;
        let mut higher = Vec::new();
        for d in 2..=top {
            let mut cells = Vec::new();
            for b in 0..base.vertex_count() {
                let fc = bundle.fiber_cells(b);
                for i in 0..fc.count(d) {
                    let cell = &fc.cells(d)[i];
                    cells.push(Cell {
                        anchor: self.vertex(b, cell.anchor),
                        faces: cell
                            .faces
                            .iter()
                            .map(|f| Face {
                                sign: f.sign,
                                cell: self.fiber_cell(d - 1, b, f.cell),
                                path: self.embed_path(b, &f.path),
                            })
                            .collect(),
                        boundary_loop: cell.boundary_loop.as_ref().map(|l| self.embed_path(b, l)),
                    });
                }
            }
            for e in 0..base.edge_count() {
                for tau in bundle.fiber(base.edge(e).0).simplices(d - 1) {
                    cells.push(self.prism(e, tau)?);
                }
            }
            higher.push(cells);
        }
        CellComplex::new(labels, edges, higher)
    }

    /// Faces `dst × h(τ) − src × τ − e × ∂τ`, anchored at `(src, τ₀)`.
    fn prism(&self, e: usize, tau: &[usize]) -> Result<Cell> {
        let bundle = &self.bundle;
        let (src, dst) = bundle.base().edge(e);
        let h = bundle.edge_transport(e);
        let k = tau.len() - 1;
        let mut faces = Vec::new();
        let anchor = self.vertex(src, tau[0]);
        if let Some((image, sign)) = h.simplex_image(tau) {
            let mut path = EdgePath::constant(anchor);
            path.push(self.vertical(e, tau[0]));
            for s in self.fiber_path(dst, h.vertex_images()[tau[0]], image[0])?.steps {
                path.push(s);
            }
            faces.push(Face {
                sign,
                cell: self.fiber_cell(k, dst, bundle.fiber(dst).index_of(&image).expect("simplicial image")),
                path,
            });
        }
        faces.push(Face {
            sign: -1,
            cell: self.fiber_cell(k, src, bundle.fiber(src).index_of(tau).expect("simplex")),
            path: EdgePath::constant(anchor),
        });
        if k > 0 {
            for i in 0..=k {
                let face: Vec<usize> = tau
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &v)| v)
                    .collect();
                let path = if i == 0 {
                    self.fiber_path(src, tau[0], tau[1])?
                } else {
                    EdgePath::constant(anchor)
                };
                faces.push(Face {
                    sign: if i % 2 == 0 { -1 } else { 1 },
                    cell: self.prism_cell(k, e, bundle.fiber(src).index_of(&face).expect("face")),
                    path,
                });
            }
        }
        let boundary_loop = if k == 1 {
            let (u, w) = (tau[0], tau[1]);
            let hv = h.vertex_images();
            let mut l = EdgePath::constant(anchor);
            l.push(self.vertical(e, u));
            for s in self.fiber_path(dst, hv[u], hv[w])?.steps {
                l.push(s);
            }
            l.push(self.vertical(e, w).inverse());
            for s in self.fiber_path(src, w, u)?.steps {
                l.push(s);
            }
            Some(l)
        } else {
            None
        };
        Ok(Cell {
            anchor,
            faces,
            boundary_loop,
        })
    }

    pub fn bundle(&self) -> &Arc<DiscreteBundle> {
        &self.bundle
    }

    pub fn complex(&self) -> &Arc<CellComplex> {
        &self.complex
    }

    /// Base vertex under each total-space vertex.
    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn vertex(&self, b: usize, v: usize) -> usize {
        self.fiber_offset[0][b] + v
    }

    /// The `d`-cell `b × σ` where `σ` is the `i`-th `d`-simplex of `F_b`.
    pub fn fiber_cell(&self, d: usize, b: usize, i: usize) -> usize {
        self.fiber_offset[d][b] + i
    }

    /// The `d`-cell `e × τ` where `τ` is the `i`-th `(d−1)`-simplex of the
    /// fiber over the start of `e`.
    pub fn prism_cell(&self, d: usize, e: usize, i: usize) -> usize {
        self.prism_offset[d][e] + i
    }

    /// Forward step along the vertical edge `e × v`.
    pub fn vertical(&self, e: usize, v: usize) -> Step {
        Step {
            edge: self.prism_cell(1, e, v),
            forward: true,
        }
    }

    /// A path in `F_b` carried into the total space.
    pub fn embed_path(&self, b: usize, p: &EdgePath) -> EdgePath {
        shift(p, self.fiber_offset[0][b], self.fiber_offset[1][b])
    }

    /// Shortest path between two vertices of the fiber over `b`, embedded.
    pub fn fiber_path(&self, b: usize, from: usize, to: usize) -> Result<EdgePath> {
        let p = self.bundle.fiber_cells(b).shortest_path(from, to).ok_or_else(|| {
            Error::NotConstructible(format!(
                "fiber vertices {from} and {to} over {} are not joined by a path",
                self.bundle.base().vertex_label(b)
            ))
        })?;
        Ok(self.embed_path(b, &p))
    }

    /// Lift of a base path starting at fiber vertex `x` over its start:
    /// vertical edges forwards, and backwards through the designated inverse
    /// after a fiber path to `h_e(inv(x))`. Returns the path and the fiber
    /// vertex it ends at.
    pub fn track(&self, word: &EdgePath, x: usize) -> Result<(EdgePath, usize)> {
        let base = self.bundle.base();
        word.validate(base.complex())?;
        let mut at = x;
        let mut path = EdgePath::constant(self.vertex(word.start, x));
        for &s in &word.steps {
            let dst = base.edge(s.edge).1;
            if s.forward {
                path.push(self.vertical(s.edge, at));
                at = self.bundle.edge_transport(s.edge).vertex_images()[at];
            } else {
                let v = self.bundle.edge_inverse(s.edge).vertex_images()[at];
                let hv = self.bundle.edge_transport(s.edge).vertex_images()[v];
                for st in self.fiber_path(dst, at, hv)?.steps {
                    path.push(st);
                }
                path.push(self.vertical(s.edge, v).inverse());
                at = v;
            }
        }
        Ok((path, at))
    }

    /// Image of a total-space path in the base.
    pub fn project_path(&self, p: &EdgePath) -> EdgePath {
        let mut out = EdgePath::constant(self.projection[p.start]);
        for &s in &p.steps {
            if let Some((e, _)) = self.vertical_edge(s.edge) {
                out.push(Step {
                    edge: e,
                    forward: s.forward,
                });
            }
        }
        out
    }

    /// `(e, v)` when the edge is the vertical edge `e × v`.
    pub fn vertical_edge(&self, edge: usize) -> Option<(usize, usize)> {
        let offsets = &self.prism_offset[1];
        let ne = offsets.len();
        let e = (0..ne).rev().find(|&e| offsets[e] <= edge)?;
        let (src, _) = self.bundle.base().edge(e);
        let v = edge - offsets[e];
        (v < self.bundle.fiber(src).vertex_count()).then_some((e, v))
    }
}
