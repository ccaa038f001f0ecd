use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;

/// A letter of a free group word: `+(g + 1)` for generator `g`, `-(g + 1)` for its inverse.
pub type Letter = i32;

pub fn letter(generator: usize, inverse: bool) -> Letter {
    let l = generator as Letter + 1;
    if inverse {
        -l
    } else {
        l
    }
}

pub fn letter_generator(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

/// Finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Checks closure, identity, inverses and associativity.
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup(
                "multiplication table must be square and nonempty".into(),
            ));
        }
        if table.iter().flatten().any(|&x| x >= n) || identity >= n {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(Error::InvalidGroup(format!("{identity} is not an identity")));
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverses,
        })
    }

    /// `ℤ/n` with element `k` the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(table, 0).expect("cyclic group table")
    }

    /// Dihedral group of order `2n`: element `r^k` is `k`, `s r^k` is `n + k`.
    pub fn dihedral(n: usize) -> Self {
        let elem = |flip: bool, k: usize| if flip { n + k % n } else { k % n };
        let decode = |x: usize| (x >= n, x % n);
        let table = (0..2 * n)
            .map(|a| {
                (0..2 * n)
                    .map(|b| {
                        let (fa, ka) = decode(a);
                        let (fb, kb) = decode(b);
                        // (s^fa r^ka)(s^fb r^kb) = s^(fa+fb) r^(±ka + kb)
                        let k = if fb { n - ka + kb } else { ka + kb };
                        elem(fa ^ fb, k)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new(table, 0).expect("dihedral group table")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// The group classes with decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupClass {
    FreeAbelian(usize),
    Free(usize),
    Finite(FiniteGroup),
}

/// Element of a supported group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Coordinates in `ℤⁿ`.
    Abelian(Vec<i64>),
    /// Freely reduced word.
    Word(Vec<Letter>),
    /// Index into a multiplication table.
    Finite(usize),
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Abelian(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElement::Word(w) if w.is_empty() => write!(f, "e"),
            GroupElement::Word(w) => {
                for &l in w {
                    let g = letter_generator(l);
                    let name = if g < 26 {
                        ((b'a' + g as u8) as char).to_string()
                    } else {
                        format!("x{g}")
                    };
                    if l > 0 {
                        write!(f, "{name}")?;
                    } else {
                        write!(f, "{}", name.to_uppercase())?;
                    }
                }
                Ok(())
            }
            GroupElement::Finite(i) => write!(f, "#{i}"),
        }
    }
}

/// Appends a letter, cancelling against the end of the word.
pub fn push_letter(word: &mut Vec<Letter>, l: Letter) {
    if word.last() == Some(&-l) {
        word.pop();
    } else {
        word.push(l);
    }
}

pub fn reduce_word(word: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(word.len());
    for &l in word {
        push_letter(&mut out, l);
    }
    out
}

pub fn invert_word(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|&l| -l).collect()
}

impl GroupClass {
    pub fn identity(&self) -> GroupElement {
        match self {
            GroupClass::FreeAbelian(n) => GroupElement::Abelian(vec![0; *n]),
            GroupClass::Free(_) => GroupElement::Word(Vec::new()),
            GroupClass::Finite(g) => GroupElement::Finite(g.identity()),
        }
    }

    /// Number of generators: rank, or the group order for finite groups,
    /// whose homomorphisms are given as total maps.
    pub fn generator_count(&self) -> usize {
        match self {
            GroupClass::FreeAbelian(n) | GroupClass::Free(n) => *n,
            GroupClass::Finite(g) => g.order(),
        }
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        match self {
            GroupClass::FreeAbelian(n) => {
                let mut v = vec![0; *n];
                v[i] = 1;
                GroupElement::Abelian(v)
            }
            GroupClass::Free(_) => GroupElement::Word(vec![letter(i, false)]),
            GroupClass::Finite(_) => GroupElement::Finite(i),
        }
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.generator_count()).map(|i| self.generator(i)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupClass::FreeAbelian(_) => true,
            GroupClass::Free(k) => *k <= 1,
            GroupClass::Finite(g) => (0..g.order()).all(|a| (0..g.order()).all(|b| g.mul(a, b) == g.mul(b, a))),
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (GroupClass::FreeAbelian(n), GroupElement::Abelian(v)) => v.len() == *n,
            (GroupClass::Free(k), GroupElement::Word(w)) => {
                w.iter().all(|&l| l != 0 && letter_generator(l) < *k) && reduce_word(w) == *w
            }
            (GroupClass::Finite(t), GroupElement::Finite(i)) => *i < t.order(),
            _ => false,
        }
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::InvalidGroup(format!("{g} is not an element of {self:?}")))
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (self, a, b) {
            (GroupClass::FreeAbelian(_), GroupElement::Abelian(x), GroupElement::Abelian(y)) => {
                GroupElement::Abelian(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (GroupClass::Free(_), GroupElement::Word(x), GroupElement::Word(y)) => {
                let mut w = x.clone();
                for &l in y {
                    push_letter(&mut w, l);
                }
                GroupElement::Word(w)
            }
            (GroupClass::Finite(t), GroupElement::Finite(x), GroupElement::Finite(y)) => {
                GroupElement::Finite(t.mul(*x, *y))
            }
            _ => panic!("group element kind does not match the group"),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        match (self, a) {
            (_, GroupElement::Abelian(x)) => GroupElement::Abelian(x.iter().map(|p| -p).collect()),
            (_, GroupElement::Word(w)) => GroupElement::Word(invert_word(w)),
            (GroupClass::Finite(t), GroupElement::Finite(x)) => GroupElement::Finite(t.inv(*x)),
            _ => panic!("group element kind does not match the group"),
        }
    }

    pub fn pow(&self, a: &GroupElement, k: i64) -> GroupElement {
        let base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut out = self.identity();
        for _ in 0..k.unsigned_abs() {
            out = self.mul(&out, &base);
        }
        out
    }

    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items.into_iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    /// Every element, for finite groups.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match self {
            GroupClass::Finite(t) => Some((0..t.order()).map(GroupElement::Finite).collect()),
            GroupClass::FreeAbelian(0) => Some(vec![self.identity()]),
            GroupClass::Free(0) => Some(vec![self.identity()]),
            _ => None,
        }
    }
}

/// Homomorphism given by the images of the source generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: GroupClass,
    target: GroupClass,
    images: Vec<GroupElement>,
}

/// Endomorphism of one group.
pub type GroupEndomorphism = GroupHom;

impl GroupHom {
    pub fn new(source: GroupClass, target: GroupClass, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != source.generator_count() {
            return Err(Error::InvalidGroup(format!(
                "{} generator images for {} generators",
                images.len(),
                source.generator_count()
            )));
        }
        for g in &images {
            target.check(g)?;
        }
        let hom = GroupHom { source, target, images };
        match &hom.source {
            GroupClass::Finite(t) => {
                for a in 0..t.order() {
                    for b in 0..t.order() {
                        let lhs = hom.images[t.mul(a, b)].clone();
                        let rhs = hom.target.mul(&hom.images[a], &hom.images[b]);
                        if lhs != rhs {
                            return Err(Error::InvalidGroup(format!("not a homomorphism at ({a},{b})")));
                        }
                    }
                }
            }
            GroupClass::FreeAbelian(_) if !hom.target.is_abelian() => {
                for a in &hom.images {
                    for b in &hom.images {
                        if hom.target.mul(a, b) != hom.target.mul(b, a) {
                            return Err(Error::InvalidGroup(
                                "images of a free abelian group must commute".into(),
                            ));
                        }
                    }
                }
            }
            _ => {}
        }
        Ok(hom)
    }

    pub fn endo(group: GroupClass, images: Vec<GroupElement>) -> Result<Self> {
        Self::new(group.clone(), group, images)
    }

    pub fn identity(group: GroupClass) -> Self {
        let images = group.generators();
        GroupHom {
            source: group.clone(),
            target: group,
            images,
        }
    }

    /// Endomorphism of `ℤⁿ` whose `j`-th column is the image of `e_j`.
    pub fn from_matrix(a: &IntMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Shape("endomorphism matrix must be square".into()));
        }
        let n = a.rows();
        let images = (0..n)
            .map(|j| {
                let col = (0..n)
                    .map(|i| {
                        i64::try_from(&a[(i, j)]).map_err(|_| Error::InvalidGroup("matrix entry too large".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupElement::Abelian(col))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::endo(GroupClass::FreeAbelian(n), images)
    }

    pub fn source(&self) -> &GroupClass {
        &self.source
    }

    pub fn target(&self) -> &GroupClass {
        &self.target
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.images == self.source.generators()
    }

    pub fn is_trivial(&self) -> bool {
        let e = self.target.identity();
        self.images.iter().all(|g| *g == e)
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        let t = &self.target;
        match g {
            GroupElement::Abelian(v) => {
                let mut out = t.identity();
                for (j, &k) in v.iter().enumerate() {
                    out = t.mul(&out, &t.pow(&self.images[j], k));
                }
                out
            }
            GroupElement::Word(w) => {
                let mut out = t.identity();
                for &l in w {
                    let img = &self.images[letter_generator(l)];
                    let img = if l > 0 { img.clone() } else { t.inv(img) };
                    out = t.mul(&out, &img);
                }
                out
            }
            GroupElement::Finite(i) => self.images[*i].clone(),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target != self.source {
            return Err(Error::InvalidGroup(
                "composing homomorphisms with mismatched groups".into(),
            ));
        }
        let images = first.images.iter().map(|g| self.apply(g)).collect();
        GroupHom::new(first.source.clone(), self.target.clone(), images)
    }

    /// Integer matrix of the map on abelianizations, for free and free
    /// abelian groups (column `j` is the image of generator `j`).
    pub fn abelianized_matrix(&self) -> Option<IntMatrix> {
        let n = match &self.target {
            GroupClass::FreeAbelian(n) | GroupClass::Free(n) => *n,
            GroupClass::Finite(_) => return None,
        };
        if matches!(self.source, GroupClass::Finite(_)) {
            return None;
        }
        let mut m = IntMatrix::zeros(n, self.images.len());
        for (j, g) in self.images.iter().enumerate() {
            for (i, x) in abelianize(g).into_iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        Some(m)
    }
}

/// Exponent-sum vector of a free word or abelian element; sized by the
/// largest generator seen, so callers pad as needed.
pub fn abelianize(g: &GroupElement) -> Vec<i64> {
    match g {
        GroupElement::Abelian(v) => v.clone(),
        GroupElement::Word(w) => {
            let n = w.iter().map(|&l| letter_generator(l) + 1).max().unwrap_or(0);
            let mut v = vec![0; n];
            for &l in w {
                v[letter_generator(l)] += l.signum() as i64;
            }
            v
        }
        GroupElement::Finite(_) => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_is_a_group() {
        let d = FiniteGroup::dihedral(3);
        assert_eq!(d.order(), 6);
        assert!(!GroupClass::Finite(d).is_abelian());
    }

    #[test]
    fn rejects_non_group_table() {
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![1, 1]], 0).is_err());
    }

    #[test]
    fn finite_hom_must_be_multiplicative() {
        let z4 = GroupClass::Finite(FiniteGroup::cyclic(4));
        let doubling = (0..4).map(|k| GroupElement::Finite((2 * k) % 4)).collect();
        assert!(GroupHom::endo(z4.clone(), doubling).is_ok());
        let bad = vec![0, 1, 1, 0].into_iter().map(GroupElement::Finite).collect();
        assert!(GroupHom::endo(z4, bad).is_err());
    }

    #[test]
    fn free_words_reduce() {
        let f2 = GroupClass::Free(2);
        let ab = GroupElement::Word(vec![1, 2]);
        let prod = f2.mul(&ab, &f2.inv(&ab));
        assert_eq!(prod, f2.identity());
        assert_eq!(format!("{}", GroupElement::Word(vec![1, -2])), "aB");
    }

    #[test]
    fn abelian_endo_applies_matrix() {
        let a = IntMatrix::from_rows(&[[2, 1], [1, 1]]);
        let phi = GroupHom::from_matrix(&a).unwrap();
        assert_eq!(
            phi.apply(&GroupElement::Abelian(vec![1, -1])),
            GroupElement::Abelian(vec![1, 0])
        );
    }
}
