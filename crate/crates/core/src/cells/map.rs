use std::sync::Arc;

use num_bigint::BigInt;

use super::complex::{CellComplex, EdgePath};
use crate::error::{Error, Result};
use crate::exactalg::{ChainMap, IntMatrix};

/// One term `coeff · cell` of the image of a cell, located by a path in the
/// target from the image of the source cell's anchor to the term's anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageTerm {
    pub coeff: i64,
    pub cell: usize,
    pub path: EdgePath,
}

/// Cellular map with enough path data to lift it to universal covers.
///
/// Vertices go to vertices, every edge goes to an edge path between the
/// images of its endpoints, and each higher cell goes to an anchored chain.
#[derive(Debug, Clone)]
pub struct CellularMap {
    source: Arc<CellComplex>,
    target: Arc<CellComplex>,
    vertex_images: Vec<usize>,
    edge_images: Vec<EdgePath>,
    /// `higher[d - 2][i]` is the image of the `d`-cell `i`.
    higher: Vec<Vec<Vec<ImageTerm>>>,
}

impl PartialEq for CellularMap {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
            && self.vertex_images == other.vertex_images
            && self.edge_images == other.edge_images
            && self.higher == other.higher
    }
}

impl CellularMap {
    /// Validates every path and that the integral chain map commutes with
    /// boundaries.
    pub fn new(
        source: Arc<CellComplex>,
        target: Arc<CellComplex>,
        vertex_images: Vec<usize>,
        edge_images: Vec<EdgePath>,
        mut higher: Vec<Vec<Vec<ImageTerm>>>,
    ) -> Result<Self> {
        while higher.len() + 1 < source.dim() {
            higher.push(Vec::new());
        }
        let m = CellularMap {
            source,
            target,
            vertex_images,
            edge_images,
            higher,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        if self.vertex_images.len() != s.vertex_count() {
            return Err(Error::Shape("vertex image count".into()));
        }
        if let Some(&v) = self.vertex_images.iter().find(|&&v| v >= t.vertex_count()) {
            return Err(Error::Shape(format!("vertex image {v} out of range")));
        }
        if self.edge_images.len() != s.edge_count() {
            return Err(Error::Shape("edge image count".into()));
        }
        for (e, p) in self.edge_images.iter().enumerate() {
            let (a, b) = s.edge(e);
            if p.start != self.vertex_images[a] || p.validate(t)? != self.vertex_images[b] {
                return Err(Error::InvalidPath(format!(
                    "image of edge {e} does not join the images of its endpoints"
                )));
            }
        }
        for d in 2..=s.dim() {
            let images = self.higher.get(d - 2).map_or(&[][..], Vec::as_slice);
            if images.len() != s.count(d) {
                return Err(Error::Shape(format!("image count in dimension {d}")));
            }
            for (i, terms) in images.iter().enumerate() {
                let from = self.vertex_images[s.anchor(d, i)];
                for term in terms {
                    if term.cell >= t.count(d) {
                        return Err(Error::Shape(format!("image cell {} out of range", term.cell)));
                    }
                    if term.path.start != from || term.path.validate(t)? != t.anchor(d, term.cell) {
                        return Err(Error::InvalidPath(format!(
                            "image of {d}-cell {i}: term path does not join the anchors"
                        )));
                    }
                }
            }
        }
        self.chain_map().map(|_| ())
    }

    pub fn identity(k: Arc<CellComplex>) -> Self {
        let vertex_images = (0..k.vertex_count()).collect();
        let edge_images = (0..k.edge_count())
            .map(|e| EdgePath {
                start: k.edge(e).0,
                steps: vec![super::Step { edge: e, forward: true }],
            })
            .collect();
        let higher = (2..=k.dim())
            .map(|d| {
                (0..k.count(d))
                    .map(|i| {
                        vec![ImageTerm {
                            coeff: 1,
                            cell: i,
                            path: EdgePath::constant(k.anchor(d, i)),
                        }]
                    })
                    .collect()
            })
            .collect();
        CellularMap {
            source: k.clone(),
            target: k,
            vertex_images,
            edge_images,
            higher,
        }
    }

    pub fn source(&self) -> &Arc<CellComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CellComplex> {
        &self.target
    }

    pub fn is_self_map(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target) || self.source == self.target
    }

    pub fn vertex_image(&self, v: usize) -> usize {
        self.vertex_images[v]
    }

    pub fn vertex_images(&self) -> &[usize] {
        &self.vertex_images
    }

    pub fn edge_image(&self, e: usize) -> &EdgePath {
        &self.edge_images[e]
    }

    /// Anchored image chain of any cell.
    pub fn image_terms(&self, d: usize, i: usize) -> Vec<ImageTerm> {
        match d {
            0 => vec![ImageTerm {
                coeff: 1,
                cell: self.vertex_images[i],
                path: EdgePath::constant(self.vertex_images[i]),
            }],
            1 => {
                let image = &self.edge_images[i];
                let mut prefix = EdgePath::constant(image.start);
                let mut terms = Vec::with_capacity(image.len());
                for &step in &image.steps {
                    if step.forward {
                        terms.push(ImageTerm {
                            coeff: 1,
                            cell: step.edge,
                            path: prefix.clone(),
                        });
                        prefix.push(step);
                    } else {
                        prefix.push(step);
                        terms.push(ImageTerm {
                            coeff: -1,
                            cell: step.edge,
                            path: prefix.clone(),
                        });
                    }
                }
                terms
            }
            _ => self.higher[d - 2][i].clone(),
        }
    }

    /// Image of an edge path.
    pub fn map_path(&self, p: &EdgePath) -> EdgePath {
        let mut out = EdgePath::constant(self.vertex_images[p.start]);
        for s in &p.steps {
            let image = &self.edge_images[s.edge];
            if s.forward {
                for &t in &image.steps {
                    out.push(t);
                }
            } else {
                for &t in image.steps.iter().rev() {
                    out.push(t.inverse());
                }
            }
        }
        out
    }

    /// Integral cellular chain map.
    pub fn chain_map(&self) -> Result<ChainMap> {
        let (s, t) = (&*self.source, &*self.target);
        let dim = s.dim().max(t.dim());
        let components = (0..=dim)
            .map(|d| {
                let mut m = IntMatrix::zeros(t.count(d), s.count(d));
                for i in 0..s.count(d) {
                    for term in self.image_terms(d, i) {
                        m[(term.cell, i)] += BigInt::from(term.coeff);
                    }
                }
                m
            })
            .collect();
        let pad = |k: &CellComplex| {
            let c = k.chain_complex()?;
            pad_complex(c, dim)
        };
        ChainMap::new(pad(s)?, pad(t)?, components)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &CellularMap) -> Result<CellularMap> {
        if *first.target != *self.source {
            return Err(Error::Shape("composing cellular maps with mismatched complexes".into()));
        }
        let vertex_images = first.vertex_images.iter().map(|&v| self.vertex_images[v]).collect();
        let edge_images = first.edge_images.iter().map(|p| self.map_path(p)).collect();
        let higher = (2..=first.source.dim())
            .map(|d| {
                (0..first.source.count(d))
                    .map(|i| {
                        let mut out: Vec<ImageTerm> = Vec::new();
                        for a in first.image_terms(d, i) {
                            let moved = self.map_path(&a.path);
                            for b in self.image_terms(d, a.cell) {
                                out.push(ImageTerm {
                                    coeff: a.coeff * b.coeff,
                                    cell: b.cell,
                                    path: moved.then(&b.path),
                                });
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        CellularMap::new(
            first.source.clone(),
            self.target.clone(),
            vertex_images,
            edge_images,
            higher,
        )
    }
}

/// Extends a chain complex with zero groups up to degree `dim`.
pub(crate) fn pad_complex(c: crate::exactalg::ChainComplex, dim: usize) -> Result<crate::exactalg::ChainComplex> {
    if c.len() == dim + 1 {
        return Ok(c);
    }
    let ranks: Vec<usize> = (0..=dim).map(|i| c.rank(i)).collect();
    let boundaries = (1..=dim).map(|i| c.boundary(i)).collect();
    crate::exactalg::ChainComplex::new(ranks, boundaries)
}
