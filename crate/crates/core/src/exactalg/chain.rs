//! Chain complexes over the integers and their rational homology.
//!
//! Homology bases are chosen reproducibly: cycles are the trailing columns of
//! `V` in the Smith form of `∂_i`, and inside the cycle lattice the boundary
//! image is split off by a second Smith form. Only traces of induced maps are
//! basis independent; the matrices themselves are reproducible, not canonical.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::smith::{smith_normal_form, SmithForm};
use crate::error::{Error, Result};

/// Graded free abelian groups `C_0 … C_D` with boundaries `∂_i : C_i → C_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    /// `boundaries[i - 1]` is `∂_i`, of shape `ranks[i-1] × ranks[i]`.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Validates shapes and `∂∂ = 0`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(Error::Shape(format!(
                "{} boundaries for {} degrees",
                boundaries.len(),
                ranks.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            let i = k + 1;
            if d.shape() != (ranks[i - 1], ranks[i]) {
                return Err(Error::Shape(format!(
                    "boundary {} has shape {:?}, expected {:?}",
                    i,
                    d.shape(),
                    (ranks[i - 1], ranks[i])
                )));
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k])?.is_zero() {
                return Err(Error::BoundarySquare(k));
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    pub fn point() -> Self {
        ChainComplex {
            ranks: vec![1],
            boundaries: vec![],
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Number of declared degrees, `D + 1`.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    /// `∂_i`; degrees outside the declared range give zero maps.
    pub fn boundary(&self, i: usize) -> IntMatrix {
        if i >= 1 && i < self.ranks.len() {
            self.boundaries[i - 1].clone()
        } else {
            let below = if i == 0 { 0 } else { self.rank(i - 1) };
            IntMatrix::zeros(below, self.rank(i))
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// Degreewise integer matrices `f_i : C_i → D_i` commuting with boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: Vec<IntMatrix>,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, components: Vec<IntMatrix>) -> Result<Self> {
        let degrees = source.len().max(target.len());
        if components.len() != degrees {
            return Err(Error::Shape(format!(
                "{} components for {} degrees",
                components.len(),
                degrees
            )));
        }
        for (i, f) in components.iter().enumerate() {
            if f.shape() != (target.rank(i), source.rank(i)) {
                return Err(Error::Shape(format!(
                    "component {} has shape {:?}, expected {:?}",
                    i,
                    f.shape(),
                    (target.rank(i), source.rank(i))
                )));
            }
        }
        for i in 1..degrees {
            let lhs = target.boundary(i).mul(&components[i])?;
            let rhs = components[i - 1].mul(&source.boundary(i))?;
            if lhs != rhs {
                return Err(Error::NotChainMap(i));
            }
        }
        Ok(ChainMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let components = c.ranks.iter().map(|&n| IntMatrix::identity(n)).collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn components(&self) -> &[IntMatrix] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &IntMatrix {
        &self.components[i]
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        if other.target != self.source {
            return Err(Error::Shape("composing chain maps with mismatched complexes".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(other.source.clone(), self.target.clone(), components)
    }

    fn require_endo(&self) -> Result<()> {
        if self.is_endomorphism() {
            Ok(())
        } else {
            Err(Error::Shape("expected a self-map of one chain complex".into()))
        }
    }
}

/// Dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    fn from_int(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m
                .entries()
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyDegree {
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologySummary {
    pub degrees: Vec<HomologyDegree>,
    /// Induced endomorphisms of `H_i(−; ℚ)`, present when computed for a chain map.
    pub induced: Option<Vec<RatMatrix>>,
}

impl HomologySummary {
    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }
}

/// Per-degree data for rational homology: cycle lattice plus a split of the
/// boundary sublattice inside it.
struct DegreeBasis {
    /// Smith form of `∂_i`.
    cycles: SmithForm,
    /// Rank of `∂_i`.
    r: usize,
    /// Smith form of `∂_{i+1}` in cycle coordinates.
    bounds: SmithForm,
    /// Rank of `∂_{i+1}`.
    s: usize,
    n: usize,
}

impl DegreeBasis {
    fn new(c: &ChainComplex, i: usize) -> Result<Self> {
        let n = c.rank(i);
        let cycles = smith_normal_form(&c.boundary(i));
        let r = cycles.rank();
        let coords = cycles.v_inv.mul(&c.boundary(i + 1))?;
        let m = coords.submatrix(r..n, 0..coords.cols());
        let bounds = smith_normal_form(&m);
        let s = bounds.rank();
        Ok(DegreeBasis {
            cycles,
            r,
            bounds,
            s,
            n,
        })
    }

    fn betti(&self) -> usize {
        self.n - self.r - self.s
    }

    fn torsion(&self) -> Vec<BigInt> {
        self.bounds
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    }

    /// Chain-level representatives of the homology basis, as columns.
    fn representatives(&self) -> Result<IntMatrix> {
        let z = self.cycles.v.submatrix(0..self.n, self.r..self.n);
        let k = self.n - self.r;
        let p_inv = &self.bounds.u_inv;
        let cols = p_inv.submatrix(0..k, self.s..k);
        z.mul(&cols)
    }

    /// Homology coordinates of a cycle (given as a column matrix batch).
    fn coordinates(&self, cycles: &IntMatrix) -> Result<IntMatrix> {
        let all = self.cycles.v_inv.mul(cycles)?;
        debug_assert!(all.submatrix(0..self.r, 0..all.cols()).is_zero());
        let z = all.submatrix(self.r..self.n, 0..all.cols());
        let p = self.bounds.u.mul(&z)?;
        let k = self.n - self.r;
        Ok(p.submatrix(self.s..k, 0..p.cols()))
    }
}

/// Betti numbers and torsion coefficients of every declared degree.
pub fn homology(c: &ChainComplex) -> Result<HomologySummary> {
    let degrees = (0..c.len())
        .map(|i| {
            let b = DegreeBasis::new(c, i)?;
            Ok(HomologyDegree {
                betti: b.betti(),
                torsion: b.torsion(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HomologySummary { degrees, induced: None })
}

/// Matrices of the induced endomorphisms on `H_i(−; ℚ)`.
pub fn induced_homology_map(m: &ChainMap) -> Result<Vec<RatMatrix>> {
    m.require_endo()?;
    let c = m.source();
    (0..c.len())
        .map(|i| {
            let b = DegreeBasis::new(c, i)?;
            let reps = b.representatives()?;
            let images = m.component(i).mul(&reps)?;
            Ok(RatMatrix::from_int(&b.coordinates(&images)?))
        })
        .collect()
}

/// Homology summary together with the induced maps of `m`.
pub fn homology_with_map(m: &ChainMap) -> Result<HomologySummary> {
    let mut h = homology(m.source())?;
    h.induced = Some(induced_homology_map(m)?);
    Ok(h)
}

/// True when `f` and `g` induce the same maps on integral homology, i.e.
/// `f − g` carries every cycle to a boundary.
pub fn same_on_homology(f: &ChainMap, g: &ChainMap) -> Result<bool> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::Shape("comparing chain maps between different complexes".into()));
    }
    let (x, y) = (f.source(), f.target());
    for i in 0..x.len() {
        let n = x.rank(i);
        let cycles = smith_normal_form(&x.boundary(i));
        let z = cycles.v.submatrix(0..n, cycles.rank()..n);
        let diff = f.component(i).sub(g.component(i))?.mul(&z)?;
        let b = smith_normal_form(&y.boundary(i + 1));
        let coords = b.u.mul(&diff)?;
        for r in 0..coords.rows() {
            let d = b.diag(r);
            for c in 0..coords.cols() {
                let v = &coords[(r, c)];
                let ok = if d.is_zero() { v.is_zero() } else { (v % &d).is_zero() };
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `Σ (−1)^i tr H_i(f; ℚ)`.
pub fn lefschetz_from_homology(m: &ChainMap) -> Result<BigInt> {
    let total = induced_homology_map(m)?
        .iter()
        .enumerate()
        .fold(BigRational::zero(), |acc, (i, h)| {
            if i % 2 == 0 {
                acc + h.trace()
            } else {
                acc - h.trace()
            }
        });
    assert!(total.is_integer(), "Lefschetz number must be integral");
    Ok(total.to_integer())
}

/// `Σ (−1)^i tr f_i` at chain level.
pub fn hopf_chain_trace(m: &ChainMap) -> Result<BigInt> {
    m.require_endo()?;
    Ok(m.components()
        .iter()
        .enumerate()
        .map(|(i, f)| if i % 2 == 0 { f.trace() } else { -f.trace() })
        .sum())
}

/// Index of the basis element `a ⊗ b` (with `a ∈ C_p`, `b ∈ D_q`) inside the
/// total degree `p + q`: blocks ordered by increasing `p`, then `a`, then `b`.
fn tensor_offsets(c: &ChainComplex, d: &ChainComplex) -> Vec<Vec<usize>> {
    let top = c.len() + d.len() - 1;
    let mut offsets = vec![vec![usize::MAX; c.len()]; top.max(1)];
    for (n, row) in offsets.iter_mut().enumerate() {
        let mut acc = 0;
        for (p, slot) in row.iter_mut().enumerate() {
            if n >= p && n - p < d.len() {
                *slot = acc;
                acc += c.rank(p) * d.rank(n - p);
            }
        }
    }
    offsets
}

/// Total complex of `C ⊗ D`, boundary `∂ ⊗ 1 + (−1)^p 1 ⊗ ∂` on bidegree `(p, q)`.
pub fn tensor_complex(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    if c.is_empty() || d.is_empty() {
        return ChainComplex::new(vec![], vec![]);
    }
    let top = c.len() + d.len() - 1;
    let offsets = tensor_offsets(c, d);
    let ranks: Vec<usize> = (0..top)
        .map(|n| {
            (0..c.len())
                .filter(|&p| n >= p && n - p < d.len())
                .map(|p| c.rank(p) * d.rank(n - p))
                .sum()
        })
        .collect();
    let mut boundaries = Vec::new();
    for n in 1..top {
        let mut m = IntMatrix::zeros(ranks[n - 1], ranks[n]);
        for p in 0..c.len() {
            if n < p || n - p >= d.len() {
                continue;
            }
            let q = n - p;
            let col0 = offsets[n][p];
            if p >= 1 {
                let block = c.boundary(p).kronecker(&IntMatrix::identity(d.rank(q)));
                m.set_block(offsets[n - 1][p - 1], col0, &block);
            }
            if q >= 1 {
                let mut block = IntMatrix::identity(c.rank(p)).kronecker(&d.boundary(q));
                if p % 2 == 1 {
                    block = block.scale(&BigInt::from(-1));
                }
                m.set_block(offsets[n - 1][p], col0, &block);
            }
        }
        boundaries.push(m);
    }
    ChainComplex::new(ranks, boundaries)
}

/// `f ⊗ g` on the total tensor complex.
pub fn tensor_chain_map(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    f.require_endo()?;
    g.require_endo()?;
    let c = f.source();
    let d = g.source();
    let total = tensor_complex(c, d)?;
    let offsets = tensor_offsets(c, d);
    let components = (0..total.len())
        .map(|n| {
            let mut m = IntMatrix::zeros(total.rank(n), total.rank(n));
            for p in 0..c.len() {
                if n >= p && n - p < d.len() {
                    let block = f.component(p).kronecker(g.component(n - p));
                    m.set_block(offsets[n][p], offsets[n][p], &block);
                }
            }
            m
        })
        .collect();
    ChainMap::new(total.clone(), total, components)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Triangle circle: vertices 0,1,2 and edges 01, 02, 12.
    fn circle3() -> ChainComplex {
        let d1 = IntMatrix::from_rows(&[[-1, -1, 0], [1, 0, -1], [0, 1, 1]]);
        ChainComplex::new(vec![3, 3], vec![d1]).unwrap()
    }

    #[test]
    fn circle_homology() {
        let h = homology(&circle3()).unwrap();
        assert_eq!(h.betti_numbers(), vec![1, 1]);
        assert!(h.degrees.iter().all(|d| d.torsion.is_empty()));
    }

    #[test]
    fn point_homology() {
        assert_eq!(homology(&ChainComplex::point()).unwrap().betti_numbers(), vec![1]);
    }

    #[test]
    fn rejects_nonzero_composite() {
        let d1 = IntMatrix::from_rows(&[[1]]);
        let d2 = IntMatrix::from_rows(&[[1]]);
        assert_eq!(
            ChainComplex::new(vec![1, 1, 1], vec![d1, d2]),
            Err(Error::BoundarySquare(1))
        );
    }

    #[test]
    fn rejects_non_chain_map() {
        let c = circle3();
        let bad = vec![IntMatrix::identity(3), IntMatrix::zeros(3, 3)];
        assert_eq!(ChainMap::new(c.clone(), c, bad), Err(Error::NotChainMap(1)));
    }

    #[test]
    fn identity_induces_identity() {
        let id = ChainMap::identity(&circle3());
        let maps = induced_homology_map(&id).unwrap();
        assert!(maps.iter().all(RatMatrix::is_identity));
        assert_eq!(lefschetz_from_homology(&id).unwrap(), BigInt::zero());
        assert_eq!(hopf_chain_trace(&id).unwrap(), BigInt::zero());
    }

    #[test]
    fn reflection_has_lefschetz_two() {
        // Fix 0, swap 1 and 2: edges 01 <-> 02, and 12 -> -12.
        let c = circle3();
        let f0 = IntMatrix::from_rows(&[[1, 0, 0], [0, 0, 1], [0, 1, 0]]);
        let f1 = IntMatrix::from_rows(&[[0, 1, 0], [1, 0, 0], [0, 0, -1]]);
        let f = ChainMap::new(c.clone(), c, vec![f0, f1]).unwrap();
        let maps = induced_homology_map(&f).unwrap();
        assert_eq!(maps[0].trace(), BigRational::from_integer(1.into()));
        assert_eq!(maps[1].trace(), BigRational::from_integer((-1).into()));
        assert_eq!(lefschetz_from_homology(&f).unwrap(), BigInt::from(2));
        assert_eq!(hopf_chain_trace(&f).unwrap(), BigInt::from(2));
    }

    #[test]
    fn degree_two_map_on_square() {
        // 4-cycle: vertices 0..3, edges e_k = (k, k+1 mod 4) oriented k -> k+1.
        let mut d1 = IntMatrix::zeros(4, 4);
        for k in 0..4 {
            d1[(k, k)] = BigInt::from(-1);
            d1[((k + 1) % 4, k)] += BigInt::from(1);
        }
        let c = ChainComplex::new(vec![4, 4], vec![d1]).unwrap();
        // v_k -> v_{2k}, e_k -> e_{2k} + e_{2k+1}
        let mut f0 = IntMatrix::zeros(4, 4);
        let mut f1 = IntMatrix::zeros(4, 4);
        for k in 0..4 {
            f0[((2 * k) % 4, k)] = BigInt::from(1);
            f1[((2 * k) % 4, k)] += BigInt::from(1);
            f1[((2 * k + 1) % 4, k)] += BigInt::from(1);
        }
        let f = ChainMap::new(c.clone(), c, vec![f0, f1]).unwrap();
        let maps = induced_homology_map(&f).unwrap();
        assert_eq!(maps[0].trace(), BigRational::from_integer(1.into()));
        assert_eq!(maps[1].trace(), BigRational::from_integer(2.into()));
        assert_eq!(lefschetz_from_homology(&f).unwrap(), BigInt::from(-1));
        assert_eq!(hopf_chain_trace(&f).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn tensor_unit_laws() {
        let p = ChainComplex::point();
        let pp = tensor_complex(&p, &p).unwrap();
        assert_eq!(pp, p);
        let cp = tensor_complex(&circle3(), &p).unwrap();
        assert_eq!(homology(&cp).unwrap().betti_numbers(), vec![1, 1]);
        let id = tensor_chain_map(&ChainMap::identity(&p), &ChainMap::identity(&p)).unwrap();
        assert_eq!(id, ChainMap::identity(&p));
    }

    #[test]
    fn torus_from_tensor() {
        let c = circle3();
        let t = tensor_complex(&c, &c).unwrap();
        assert_eq!(homology(&t).unwrap().betti_numbers(), vec![1, 2, 1]);
    }
}
