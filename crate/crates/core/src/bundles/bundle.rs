use std::sync::Arc;

use crate::cells::{CellComplex, CellularMap, EdgePath, Step};
use crate::error::{Error, Result};
use crate::exactalg::{same_on_homology, ChainMap};
use crate::pi1::Pi1Presentation;
use crate::simplicial::{induced_chain_map, SimplicialComplex, SimplicialMap};

/// Connected graph with a basepoint and a spanning tree.
#[derive(Debug, Clone)]
pub struct GraphBase {
    complex: Arc<CellComplex>,
    edge_labels: Vec<String>,
    presentation: Pi1Presentation,
}

impl GraphBase {
    /// Oriented edges `(src, dst)`; loops and parallel edges are allowed.
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>, edge_labels: Option<Vec<String>>) -> Result<Self> {
        let edge_labels = edge_labels.unwrap_or_else(|| (0..edges.len()).map(|e| format!("e{e}")).collect());
        if edge_labels.len() != edges.len() {
            return Err(Error::InvalidBundle("one label per base edge".into()));
        }
        let complex = Arc::new(CellComplex::new(vertices, edges, Vec::new())?);
        if complex.vertex_count() == 0 || complex.component_count() != 1 {
            return Err(Error::InvalidBundle(
                "the base graph must be nonempty and connected".into(),
            ));
        }
        let presentation = Pi1Presentation::new(complex.clone(), 0)?;
        Ok(GraphBase {
            complex,
            edge_labels,
            presentation,
        })
    }

    /// The 1-skeleton of a simplicial complex of dimension at most one.
    pub fn from_simplicial(k: &SimplicialComplex) -> Result<Self> {
        if k.dim().unwrap_or(0) > 1 {
            return Err(Error::InvalidBundle("base must be a graph".into()));
        }
        let edges = k.simplices(1).iter().map(|e| (e[0], e[1])).collect();
        let labels = k
            .simplices(1)
            .iter()
            .map(|e| format!("{}{}", k.vertices()[e[0]], k.vertices()[e[1]]))
            .collect();
        Self::new(k.vertices().to_vec(), edges, Some(labels))
    }

    pub fn complex(&self) -> &Arc<CellComplex> {
        &self.complex
    }

    pub fn presentation(&self) -> &Pi1Presentation {
        &self.presentation
    }

    pub fn basepoint(&self) -> usize {
        self.presentation.basepoint()
    }

    pub fn vertex_count(&self) -> usize {
        self.complex.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.complex.edge_count()
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.complex.edge(e)
    }

    pub fn edge_label(&self, e: usize) -> &str {
        &self.edge_labels[e]
    }

    pub fn edge_labels(&self) -> &[String] {
        &self.edge_labels
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        self.complex.vertex_label(v)
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.edge_labels.iter().position(|l| l == label)
    }

    /// Path from signed edge steps starting at `start`.
    pub fn path(&self, start: usize, steps: &[(usize, bool)]) -> Result<EdgePath> {
        let p = EdgePath {
            start,
            steps: steps.iter().map(|&(edge, forward)| Step { edge, forward }).collect(),
        };
        p.validate(&self.complex)?;
        Ok(p)
    }

    /// Self-map given by vertex images and an edge path per edge.
    pub fn self_map(&self, vertex_images: Vec<usize>, edge_images: Vec<EdgePath>) -> Result<CellularMap> {
        CellularMap::new(
            self.complex.clone(),
            self.complex.clone(),
            vertex_images,
            edge_images,
            Vec::new(),
        )
    }

    /// `"e0.e2⁻¹"` style rendering of a path.
    pub fn describe(&self, p: &EdgePath) -> String {
        if p.steps.is_empty() {
            return format!("const@{}", self.vertex_label(p.start));
        }
        p.steps
            .iter()
            .map(|s| {
                if s.forward {
                    self.edge_labels[s.edge].clone()
                } else {
                    format!("{}^-1", self.edge_labels[s.edge])
                }
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Discrete fibration over a graph: a fiber over every vertex and a
/// transport with designated homotopy inverse over every edge.
#[derive(Debug, Clone)]
pub struct DiscreteBundle {
    base: GraphBase,
    fibers: Vec<Arc<SimplicialComplex>>,
    fiber_cells: Vec<Arc<CellComplex>>,
    transports: Vec<SimplicialMap>,
    inverses: Vec<SimplicialMap>,
}

fn cells_of(fibers: &[Arc<SimplicialComplex>]) -> Vec<Arc<CellComplex>> {
    let mut out: Vec<Arc<CellComplex>> = Vec::with_capacity(fibers.len());
    for (i, f) in fibers.iter().enumerate() {
        let shared = (0..i).find(|&j| Arc::ptr_eq(&fibers[j], f));
        out.push(match shared {
            Some(j) => out[j].clone(),
            None => f.cells(),
        });
    }
    out
}

impl DiscreteBundle {
    /// Checks that transports join the right fibers and that each is inverse
    /// to its designated inverse on integral homology.
    pub fn new(
        base: GraphBase,
        fibers: Vec<Arc<SimplicialComplex>>,
        transports: Vec<SimplicialMap>,
        inverses: Vec<SimplicialMap>,
    ) -> Result<Self> {
        if fibers.len() != base.vertex_count() {
            return Err(Error::InvalidBundle("one fiber per base vertex".into()));
        }
        if transports.len() != base.edge_count() || inverses.len() != base.edge_count() {
            return Err(Error::InvalidBundle(
                "one transport and one inverse per base edge".into(),
            ));
        }
        for e in 0..base.edge_count() {
            let (s, t) = base.edge(e);
            let label = base.edge_label(e);
            let (h, g) = (&transports[e], &inverses[e]);
            if **h.source() != *fibers[s] || **h.target() != *fibers[t] {
                return Err(Error::InvalidBundle(format!(
                    "transport over {label} joins the wrong fibers"
                )));
            }
            if **g.source() != *fibers[t] || **g.target() != *fibers[s] {
                return Err(Error::InvalidBundle(format!(
                    "inverse over {label} joins the wrong fibers"
                )));
            }
            for (a, b) in [(h, g), (g, h)] {
                let round = induced_chain_map(&a.compose(b)?);
                if !same_on_homology(&round, &ChainMap::identity(round.source()))? {
                    return Err(Error::InvalidBundle(format!(
                        "transport over {label} is not inverted on homology by its designated inverse"
                    )));
                }
            }
        }
        let fiber_cells = cells_of(&fibers);
        Ok(DiscreteBundle {
            base,
            fibers,
            fiber_cells,
            transports,
            inverses,
        })
    }

    /// Same fiber everywhere, identity transports.
    pub fn trivial(base: GraphBase, fiber: Arc<SimplicialComplex>) -> Result<Self> {
        let n = base.vertex_count();
        let m = base.edge_count();
        let id = SimplicialMap::identity(fiber.clone());
        Self::new(base, vec![fiber; n], vec![id.clone(); m], vec![id; m])
    }

    pub fn base(&self) -> &GraphBase {
        &self.base
    }

    pub fn fiber(&self, b: usize) -> &Arc<SimplicialComplex> {
        &self.fibers[b]
    }

    pub fn fibers(&self) -> &[Arc<SimplicialComplex>] {
        &self.fibers
    }

    pub fn fiber_cells(&self, b: usize) -> &Arc<CellComplex> {
        &self.fiber_cells[b]
    }

    pub fn edge_transport(&self, e: usize) -> &SimplicialMap {
        &self.transports[e]
    }

    pub fn edge_inverse(&self, e: usize) -> &SimplicialMap {
        &self.inverses[e]
    }

    /// Map of one step: the transport forwards, the designated inverse backwards.
    pub fn step_map(&self, s: Step) -> &SimplicialMap {
        if s.forward {
            &self.transports[s.edge]
        } else {
            &self.inverses[s.edge]
        }
    }

    /// Composite of step maps along a base path; identity on the empty path.
    pub fn transport(&self, word: &EdgePath) -> Result<SimplicialMap> {
        word.validate(self.base.complex())?;
        let mut out = SimplicialMap::identity(self.fibers[word.start].clone());
        for &s in &word.steps {
            out = self.step_map(s).compose(&out)?;
        }
        Ok(out)
    }

    /// `transport` as a cellular map between the fiber cell complexes.
    pub fn transport_cellular(&self, word: &EdgePath) -> Result<CellularMap> {
        let t = self.transport(word)?;
        let end = word.end(self.base.complex());
        Ok(t.cellular(self.fiber_cells[word.start].clone(), self.fiber_cells[end].clone()))
    }
}
