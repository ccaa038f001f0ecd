use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{GroupClass, GroupElement, GroupHom};
use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;

/// Finite formal sum `Σ c_g · g` with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<GroupElement, BigInt>,
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(g, c)| format!("{c}·{g}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: impl Into<BigInt>, g: GroupElement) -> Self {
        let mut out = Self::zero();
        out.add_term(c.into(), g);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigInt, GroupElement)>) -> Self {
        let mut out = Self::zero();
        for (c, g) in terms {
            out.add_term(c, g);
        }
        out
    }

    pub fn add_term(&mut self, c: BigInt, g: GroupElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &GroupElement) -> BigInt {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of the coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(c.clone(), g.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        GroupRingElement {
            terms: self.terms.iter().map(|(g, c)| (g.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self, group: &GroupClass) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            for (h, d) in &other.terms {
                out.add_term(c * d, group.mul(g, h));
            }
        }
        out
    }

    /// Applies a homomorphism to every group element.
    pub fn map(&self, phi: &GroupHom) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, c)| (c.clone(), phi.apply(g))))
    }
}

/// Matrix over `ℤG`, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GroupRingElement>,
}

impl fmt::Debug for GroupRingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GroupRingMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl GroupRingMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GroupRingMatrix {
            rows,
            cols,
            data: vec![GroupRingElement::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, group: &GroupClass) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GroupRingElement::monomial(1, group.identity()));
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, data: Vec<GroupRingElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(GroupRingMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: GroupRingElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut GroupRingElement {
        &mut self.data[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GroupRingElement::is_zero)
    }

    pub fn mul(&self, other: &Self, group: &GroupClass) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let sum = out.get(i, j).add(&a.mul(b, group));
                        out.set(i, j, sum);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("adding matrices of different shapes".into()));
        }
        Ok(GroupRingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        GroupRingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(GroupRingElement::neg).collect(),
        }
    }

    /// Entrywise image under a homomorphism.
    pub fn map(&self, phi: &GroupHom) -> Self {
        GroupRingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.map(phi)).collect(),
        }
    }

    /// Sum of the diagonal entries in `ℤG`.
    pub fn trace(&self) -> Result<GroupRingElement> {
        if !self.is_square() {
            return Err(Error::Shape("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).fold(GroupRingElement::zero(), |acc, i| acc.add(self.get(i, i))))
    }

    /// Image under the augmentation `ℤG → ℤ`.
    pub fn augmented(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self.get(i, j).augmentation();
            }
        }
        m
    }

    /// Lifts an integer matrix along the unit `ℤ → ℤG`.
    pub fn from_int(m: &IntMatrix, group: &GroupClass) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, GroupRingElement::monomial(m[(i, j)].clone(), group.identity()));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn one() -> BigInt {
        BigInt::one()
    }

    fn t(k: i64) -> GroupElement {
        GroupElement::Abelian(vec![k])
    }

    #[test]
    fn zero_terms_are_dropped() {
        let mut x = GroupRingElement::monomial(2, t(1));
        x.add_term(BigInt::from(-2), t(1));
        assert!(x.is_zero());
    }

    #[test]
    fn multiplication_over_z() {
        let z = GroupClass::FreeAbelian(1);
        let a = GroupRingElement::from_terms([(one(), t(0)), (one(), t(1))]);
        let sq = a.mul(&a, &z);
        assert_eq!(sq.coefficient(&t(1)), BigInt::from(2));
        assert_eq!(sq.augmentation(), BigInt::from(4));
    }

    #[test]
    fn matrix_trace_and_augmentation() {
        let z = GroupClass::FreeAbelian(1);
        let mut m = GroupRingMatrix::identity(2, &z);
        m.set(0, 1, GroupRingElement::monomial(3, t(-1)));
        assert_eq!(m.trace().unwrap().coefficient(&t(0)), BigInt::from(2));
        assert_eq!(m.augmented(), IntMatrix::from_rows(&[[1, 3], [0, 1]]));
        let sq = m.mul(&m, &z).unwrap();
        assert_eq!(sq.get(0, 1).coefficient(&t(-1)), BigInt::from(6));
    }
}
