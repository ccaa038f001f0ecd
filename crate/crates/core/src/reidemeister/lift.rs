use std::sync::Arc;

use num_bigint::BigInt;

use crate::cells::{CellComplex, CellularMap, EdgePath};
use crate::error::{Error, Result};
use crate::exactalg::ChainComplex;
use crate::grouprings::{GroupClass, GroupHom, GroupRingMatrix};
use crate::pi1::{induced_endo, Pi1Presentation};

/// Cellular chains of the universal cover of one component, as free modules
/// over `ℤπ₁` on the canonical lifts of its cells.
#[derive(Debug, Clone)]
pub struct EquivariantChainComplex {
    group: GroupClass,
    /// Original cell indices per degree, in order.
    cells: Vec<Vec<usize>>,
    /// `boundaries[i - 1]` has shape `n_{i-1} × n_i`.
    boundaries: Vec<GroupRingMatrix>,
}

impl EquivariantChainComplex {
    pub fn group(&self) -> &GroupClass {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.cells.get(i).map_or(0, Vec::len)
    }

    /// Original indices of the lifted `i`-cells.
    pub fn cells(&self, i: usize) -> &[usize] {
        self.cells.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn boundary(&self, i: usize) -> GroupRingMatrix {
        if i == 0 || i > self.boundaries.len() {
            GroupRingMatrix::zeros(self.rank(i.wrapping_sub(1)), self.rank(i))
        } else {
            self.boundaries[i - 1].clone()
        }
    }

    /// The integral complex obtained by sending every group element to 1.
    pub fn augmented(&self) -> Result<ChainComplex> {
        ChainComplex::new(
            self.ranks(),
            self.boundaries.iter().map(GroupRingMatrix::augmented).collect(),
        )
    }
}

fn position(list: &[usize], i: usize) -> usize {
    list.binary_search(&i).expect("cell in the lifted component")
}

/// Lifts the component of the presentation's basepoint. Each cell's canonical
/// lift is the one whose anchor sits over the tree path from the basepoint.
pub fn lift_to_universal_cover(k: &CellComplex, p: &Pi1Presentation) -> Result<EquivariantChainComplex> {
    let group = p.group().clone();
    let cells: Vec<Vec<usize>> = (0..=k.dim())
        .map(|d| (0..k.count(d)).filter(|&i| p.contains_vertex(k.anchor(d, i))).collect())
        .collect();
    let mut boundaries = Vec::new();
    for d in 1..cells.len() {
        let mut m = GroupRingMatrix::zeros(cells[d - 1].len(), cells[d].len());
        for (col, &i) in cells[d].iter().enumerate() {
            for face in k.faces(d, i) {
                let row = position(&cells[d - 1], face.cell);
                let g = group.inv(&p.elem(&face.path));
                m.entry_mut(row, col).add_term(BigInt::from(face.sign), g);
            }
        }
        boundaries.push(m);
    }
    let l = EquivariantChainComplex {
        group,
        cells,
        boundaries,
    };
    for d in 2..l.len() {
        if !l.boundary(d - 1).mul(&l.boundary(d), &l.group)?.is_zero() {
            return Err(Error::BoundarySquare(d));
        }
    }
    Ok(l)
}

/// Lift of a self-map, semilinear over its induced endomorphism `φ`.
#[derive(Debug, Clone)]
pub struct TwistedChainMap {
    complex: Arc<EquivariantChainComplex>,
    endo: GroupHom,
    components: Vec<GroupRingMatrix>,
}

impl TwistedChainMap {
    /// Checks `∂_i · f_i = f_{i-1} · φ(∂_i)` in every degree.
    pub fn new(
        complex: Arc<EquivariantChainComplex>,
        endo: GroupHom,
        components: Vec<GroupRingMatrix>,
    ) -> Result<Self> {
        if endo.source() != complex.group() || endo.target() != complex.group() {
            return Err(Error::InvalidGroup("endomorphism of the wrong group".into()));
        }
        if components.len() != complex.len() {
            return Err(Error::Shape("one component per degree".into()));
        }
        for (i, c) in components.iter().enumerate() {
            if (c.rows(), c.cols()) != (complex.rank(i), complex.rank(i)) {
                return Err(Error::Shape(format!("component {i} has the wrong shape")));
            }
        }
        let g = complex.group();
        for i in 1..components.len() {
            let d = complex.boundary(i);
            let lhs = d.mul(&components[i], g)?;
            let rhs = components[i - 1].mul(&d.map(&endo), g)?;
            if lhs != rhs {
                return Err(Error::TwistedCommutation(i));
            }
        }
        Ok(TwistedChainMap {
            complex,
            endo,
            components,
        })
    }

    pub fn complex(&self) -> &Arc<EquivariantChainComplex> {
        &self.complex
    }

    pub fn endo(&self) -> &GroupHom {
        &self.endo
    }

    pub fn components(&self) -> &[GroupRingMatrix] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &GroupRingMatrix {
        &self.components[i]
    }
}

/// Lifts `f` through the basepath `β` from the basepoint to its image.
pub fn lift_map(
    f: &CellularMap,
    p: &Pi1Presentation,
    basepath: &EdgePath,
    l: Arc<EquivariantChainComplex>,
) -> Result<TwistedChainMap> {
    if !f.is_self_map() {
        return Err(Error::Shape("lifting needs a self-map".into()));
    }
    let k = &**f.source();
    let b = p.basepoint();
    if !p.contains_vertex(f.vertex_image(b)) {
        return Err(Error::InvalidPath("the map leaves the basepoint component".into()));
    }
    let phi = induced_endo(f, p, basepath)?;
    let g = l.group().clone();
    let components = (0..l.len())
        .map(|d| {
            let cells = l.cells(d);
            let mut m = GroupRingMatrix::zeros(cells.len(), cells.len());
            for (col, &i) in cells.iter().enumerate() {
                let to_image = basepath.then(&f.map_path(&p.tree_path(k.anchor(d, i))));
                for term in f.image_terms(d, i) {
                    let row = position(cells, term.cell);
                    let elem = g.inv(&p.elem(&to_image.then(&term.path)));
                    m.entry_mut(row, col).add_term(BigInt::from(term.coeff), elem);
                }
            }
            m
        })
        .collect();
    TwistedChainMap::new(l, phi, components)
}

/// Canonical basepath: the tree path from the basepoint to its image.
pub fn tree_basepath(f: &CellularMap, p: &Pi1Presentation) -> EdgePath {
    p.tree_path(f.vertex_image(p.basepoint()))
}
