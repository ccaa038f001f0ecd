use std::sync::Arc;

use num_bigint::BigInt;

use super::complex::SimplicialComplex;
use crate::cells::{CellularMap, EdgePath, ImageTerm};
use crate::error::{Error, Result};
use crate::exactalg::{lefschetz_from_homology, ChainMap, IntMatrix};

/// Vertex assignment that carries simplices onto simplices.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    vertex_images: Vec<usize>,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.vertex_images == other.vertex_images
    }
}

impl SimplicialMap {
    pub fn new(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        vertex_images: Vec<usize>,
    ) -> Result<Self> {
        if vertex_images.len() != source.vertex_count() {
            return Err(Error::NotSimplicial(format!(
                "{} images for {} vertices",
                vertex_images.len(),
                source.vertex_count()
            )));
        }
        if let Some(&v) = vertex_images.iter().find(|&&v| v >= target.vertex_count()) {
            return Err(Error::NotSimplicial(format!("image vertex {v} out of range")));
        }
        for d in 1..=source.dim().unwrap_or(0) {
            for s in source.simplices(d) {
                let mut image: Vec<usize> = s.iter().map(|&v| vertex_images[v]).collect();
                image.sort_unstable();
                image.dedup();
                if !target.contains(&image) {
                    let labels: Vec<&str> = s.iter().map(|&v| source.vertices()[v].as_str()).collect();
                    return Err(Error::NotSimplicial(format!("image of {labels:?} is not a simplex")));
                }
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            vertex_images,
        })
    }

    /// Self-map of `k`.
    pub fn endo(k: Arc<SimplicialComplex>, vertex_images: Vec<usize>) -> Result<Self> {
        Self::new(k.clone(), k, vertex_images)
    }

    pub fn identity(k: Arc<SimplicialComplex>) -> Self {
        let n = k.vertex_count();
        SimplicialMap {
            source: k.clone(),
            target: k,
            vertex_images: (0..n).collect(),
        }
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn vertex_images(&self) -> &[usize] {
        &self.vertex_images
    }

    pub fn is_self_map(&self) -> bool {
        self.source == self.target
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &SimplicialMap) -> Result<SimplicialMap> {
        if first.target != self.source {
            return Err(Error::Shape(
                "composing simplicial maps with mismatched complexes".into(),
            ));
        }
        let images = first.vertex_images.iter().map(|&v| self.vertex_images[v]).collect();
        SimplicialMap::new(first.source.clone(), self.target.clone(), images)
    }

    /// Image of a simplex: `None` when degenerate, else the sorted image and
    /// the sign of the sorting permutation.
    pub fn simplex_image(&self, s: &[usize]) -> Option<(Vec<usize>, i64)> {
        let image: Vec<usize> = s.iter().map(|&v| self.vertex_images[v]).collect();
        let mut sign = 1;
        for i in 0..image.len() {
            for j in i + 1..image.len() {
                if image[i] == image[j] {
                    return None;
                }
                if image[i] > image[j] {
                    sign = -sign;
                }
            }
        }
        let mut sorted = image;
        sorted.sort_unstable();
        Some((sorted, sign))
    }

    /// The cellular map on the associated cell complexes.
    pub fn cellular(
        &self,
        source: Arc<crate::cells::CellComplex>,
        target: Arc<crate::cells::CellComplex>,
    ) -> CellularMap {
        let t = &*target;
        let step_path = |a: usize, b: usize| -> EdgePath {
            let mut p = EdgePath::constant(a);
            if a != b {
                p.push(t.step_between(a, b).expect("image vertices of a simplex are adjacent"));
            }
            p
        };
        let edge_images = self
            .source
            .simplices(1)
            .iter()
            .map(|e| step_path(self.vertex_images[e[0]], self.vertex_images[e[1]]))
            .collect();
        let higher = (2..=self.source.dim().unwrap_or(0))
            .map(|d| {
                self.source
                    .simplices(d)
                    .iter()
                    .map(|s| match self.simplex_image(s) {
                        None => Vec::new(),
                        Some((image, sign)) => vec![ImageTerm {
                            coeff: sign,
                            cell: self.target.index_of(&image).expect("validated simplicial map"),
                            path: step_path(self.vertex_images[s[0]], image[0]),
                        }],
                    })
                    .collect()
            })
            .collect();
        CellularMap::new(source, target, self.vertex_images.clone(), edge_images, higher)
            .expect("simplicial maps are cellular")
    }

    /// Cellular map with freshly built cell complexes.
    pub fn to_cellular(&self) -> CellularMap {
        let s = self.source.cells();
        let t = if self.is_self_map() {
            s.clone()
        } else {
            self.target.cells()
        };
        self.cellular(s, t)
    }
}

/// Chain map of a simplicial map: degenerate images vanish, others carry the
/// sign of the sorting permutation.
pub fn induced_chain_map(f: &SimplicialMap) -> ChainMap {
    let top = f.source.dim().unwrap_or(0).max(f.target.dim().unwrap_or(0));
    let components = (0..=top)
        .map(|d| {
            let mut m = IntMatrix::zeros(f.target.count(d), f.source.count(d));
            for (j, s) in f.source.simplices(d).iter().enumerate() {
                if let Some((image, sign)) = f.simplex_image(s) {
                    let i = f.target.index_of(&image).expect("validated simplicial map");
                    m[(i, j)] = BigInt::from(sign);
                }
            }
            m
        })
        .collect();
    let pad = |k: &SimplicialComplex| crate::cells::pad_complex(k.chain_complex(), top);
    ChainMap::new(
        pad(&f.source).expect("padding"),
        pad(&f.target).expect("padding"),
        components,
    )
    .expect("simplicial maps induce chain maps")
}

/// Lefschetz number of a simplicial self-map via rational homology.
pub fn lefschetz_number(f: &SimplicialMap) -> Result<BigInt> {
    if !f.is_self_map() {
        return Err(Error::Shape("Lefschetz number needs a self-map".into()));
    }
    lefschetz_from_homology(&induced_chain_map(f))
}

/// Cellular self-map of a 1-dimensional complex given by vertex images and an
/// edge path for every edge (edges are the 1-simplices in index order).
pub fn graph_map(k: &SimplicialComplex, vertex_images: Vec<usize>, edge_paths: Vec<Vec<usize>>) -> Result<CellularMap> {
    if k.dim().unwrap_or(0) > 1 {
        return Err(Error::Shape(
            "graph maps need a complex of dimension at most one".into(),
        ));
    }
    let cells = k.cells();
    let edge_images = edge_paths
        .iter()
        .map(|vs| cells.path_through(vs))
        .collect::<Result<Vec<_>>>()?;
    CellularMap::new(cells.clone(), cells, vertex_images, edge_images, Vec::new())
}
