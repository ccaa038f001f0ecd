use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::group::{abelianize, invert_word, letter, reduce_word, GroupClass, GroupElement, GroupHom, Letter};
use super::ring::{GroupRingElement, GroupRingMatrix};
use crate::error::{Error, Result};
use crate::exactalg::{smith_normal_form, IntMatrix, SmithForm};

pub const DEFAULT_DEPTH: usize = 8;
const ORBIT_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certainty {
    Certain,
    /// Shortlex minimum of an orbit search to the given depth.
    Heuristic(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Equal,
    Distinct,
    Unknown,
}

/// A twisted conjugacy class `[g]_φ` under `g ~ h·g·φ(h)⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistedClass {
    representative: GroupElement,
    certainty: Certainty,
}

impl TwistedClass {
    pub fn representative(&self) -> &GroupElement {
        &self.representative
    }

    pub fn certainty(&self) -> Certainty {
        self.certainty
    }
}

impl fmt::Display for TwistedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.representative {
            GroupElement::Abelian(v) if v.len() == 1 => write!(f, "[{}]", v[0]),
            g => write!(f, "[{g}]"),
        }
    }
}

/// Shortlex key: length first, then letters ordered `a < A < b < B < …`.
pub fn shortlex_key(g: &GroupElement) -> (usize, Vec<i64>) {
    match g {
        GroupElement::Abelian(v) => (0, v.clone()),
        GroupElement::Word(w) => (
            w.len(),
            w.iter()
                .map(|&l| 2 * (l.unsigned_abs() as i64 - 1) + i64::from(l < 0))
                .collect(),
        ),
        GroupElement::Finite(i) => (0, vec![*i as i64]),
    }
}

#[derive(Debug)]
enum Scheme {
    /// SNF of `I − A`; the free group of rank one is handled through `ℤ`.
    Abelian(SmithForm),
    Finite,
    Trivial,
    Conjugacy,
    Search(SmithForm),
}

/// Decision context for twisted conjugacy in one group under one endomorphism.
#[derive(Debug)]
pub struct TwistedConjugacy {
    group: GroupClass,
    endo: GroupHom,
    depth: usize,
    scheme: Scheme,
    orbits: Mutex<HashMap<Vec<Letter>, Arc<HashSet<Vec<Letter>>>>>,
}

impl TwistedConjugacy {
    pub fn new(endo: GroupHom) -> Result<Self> {
        Self::with_depth(endo, DEFAULT_DEPTH)
    }

    pub fn with_depth(endo: GroupHom, depth: usize) -> Result<Self> {
        if endo.source() != endo.target() {
            return Err(Error::InvalidGroup("twisted conjugacy needs an endomorphism".into()));
        }
        let group = endo.source().clone();
        let one_minus = |a: IntMatrix| IntMatrix::identity(a.rows()).sub(&a).expect("square matrix");
        let scheme = match &group {
            GroupClass::FreeAbelian(_) | GroupClass::Free(1) => Scheme::Abelian(smith_normal_form(&one_minus(
                endo.abelianized_matrix().expect("abelian matrix"),
            ))),
            GroupClass::Finite(_) => Scheme::Finite,
            GroupClass::Free(_) if endo.is_trivial() => Scheme::Trivial,
            GroupClass::Free(_) if endo.is_identity() => Scheme::Conjugacy,
            GroupClass::Free(_) => Scheme::Search(smith_normal_form(&one_minus(
                endo.abelianized_matrix().expect("abelian matrix"),
            ))),
        };
        Ok(TwistedConjugacy {
            group,
            endo,
            depth,
            scheme,
            orbits: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &GroupClass {
        &self.group
    }

    pub fn endo(&self) -> &GroupHom {
        &self.endo
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// True when classes are decided exactly.
    pub fn is_decisive(&self) -> bool {
        !matches!(self.scheme, Scheme::Search(_))
    }

    /// `h·g·φ(h)⁻¹`.
    pub fn act(&self, h: &GroupElement, g: &GroupElement) -> GroupElement {
        let gr = &self.group;
        gr.mul(&gr.mul(h, g), &gr.inv(&self.endo.apply(h)))
    }

    pub fn class_of(&self, g: &GroupElement) -> TwistedClass {
        let certain = |representative| TwistedClass {
            representative,
            certainty: Certainty::Certain,
        };
        match &self.scheme {
            Scheme::Abelian(snf) => {
                let v = padded(g, self.rank());
                let r = abelian_residue(snf, &v);
                let back = apply_vec(&snf.u_inv, &r);
                certain(match &self.group {
                    GroupClass::Free(_) => {
                        let k = back[0];
                        GroupElement::Word(vec![letter(0, k < 0); k.unsigned_abs() as usize])
                    }
                    _ => GroupElement::Abelian(back),
                })
            }
            Scheme::Finite => {
                let elements = self.group.elements().expect("finite group");
                let best = elements.iter().map(|h| self.act(h, g)).min().expect("nonempty group");
                certain(best)
            }
            Scheme::Trivial => certain(self.group.identity()),
            Scheme::Conjugacy => certain(min_rotation(g)),
            Scheme::Search(_) => {
                let orbit = self.orbit(word(g));
                let best = orbit
                    .iter()
                    .map(|w| GroupElement::Word(w.clone()))
                    .min_by_key(shortlex_key)
                    .expect("orbit contains its seed");
                TwistedClass {
                    representative: best,
                    certainty: Certainty::Heuristic(self.depth),
                }
            }
        }
    }

    pub fn compare(&self, g: &GroupElement, h: &GroupElement) -> Comparison {
        if let Scheme::Search(snf) = &self.scheme {
            let (a, b) = (word(g), word(h));
            if a == b {
                return Comparison::Equal;
            }
            let k = self.rank();
            if abelian_residue(snf, &padded(g, k)) != abelian_residue(snf, &padded(h, k)) {
                return Comparison::Distinct;
            }
            let (oa, ob) = (self.orbit(a), self.orbit(b));
            let (small, large) = if oa.len() <= ob.len() { (&oa, &ob) } else { (&ob, &oa) };
            if small.iter().any(|w| large.contains(w)) {
                Comparison::Equal
            } else {
                Comparison::Unknown
            }
        } else if self.class_of(g) == self.class_of(h) {
            Comparison::Equal
        } else {
            Comparison::Distinct
        }
    }

    fn rank(&self) -> usize {
        match &self.group {
            GroupClass::FreeAbelian(n) | GroupClass::Free(n) => *n,
            GroupClass::Finite(_) => 0,
        }
    }

    /// Breadth-first orbit under single-letter conjugators, up to `depth` steps.
    fn orbit(&self, seed: Vec<Letter>) -> Arc<HashSet<Vec<Letter>>> {
        if let Some(o) = self.orbits.lock().expect("orbit cache").get(&seed) {
            return o.clone();
        }
        let k = self.rank();
        let moves: Vec<(Letter, Vec<Letter>)> = (0..k)
            .flat_map(|i| [letter(i, false), letter(i, true)])
            .map(|x| {
                let img = word(&self.endo.apply(&GroupElement::Word(vec![x])));
                (x, invert_word(&img))
            })
            .collect();
        let mut seen: HashSet<Vec<Letter>> = HashSet::new();
        seen.insert(seed.clone());
        let mut queue = VecDeque::from([(seed.clone(), 0usize)]);
        while let Some((w, d)) = queue.pop_front() {
            if d == self.depth || seen.len() >= ORBIT_CAP {
                continue;
            }
            for (x, tail) in &moves {
                let mut next = Vec::with_capacity(w.len() + tail.len() + 1);
                next.push(*x);
                next.extend_from_slice(&w);
                next.extend_from_slice(tail);
                let next = reduce_word(&next);
                if seen.insert(next.clone()) {
                    queue.push_back((next, d + 1));
                }
            }
        }
        let o = Arc::new(seen);
        self.orbits.lock().expect("orbit cache").insert(seed, o.clone());
        o
    }

    /// Projects `Σ c_g g` to twisted classes, merging equal classes.
    pub fn shadow_of(&self, x: &GroupRingElement) -> ShadowElement {
        let mut s = ShadowElement::default();
        for (g, c) in x.terms() {
            s.accumulate(self, g, c.clone());
        }
        s.finish()
    }

    /// Twisted Hattori–Stallings trace of a square matrix.
    pub fn hs_trace(&self, m: &GroupRingMatrix) -> Result<ShadowElement> {
        Ok(self.shadow_of(&m.trace()?))
    }

    /// `a + b`, merging classes across the two.
    pub fn add(&self, a: &ShadowElement, b: &ShadowElement) -> ShadowElement {
        let mut s = ShadowElement {
            unresolved: a.unresolved.clone(),
            ..Default::default()
        };
        s.unresolved.extend(b.unresolved.iter().cloned());
        for (class, c) in a.terms.iter().chain(&b.terms) {
            s.accumulate(self, &class.representative, c.clone());
        }
        s.finish()
    }

    pub fn scale(&self, a: &ShadowElement, k: &BigInt) -> ShadowElement {
        let mut s = a.clone();
        for (_, c) in &mut s.terms {
            *c *= k;
        }
        s.finish()
    }

    /// Compares two shadow elements; `Unknown` when a class comparison is
    /// undecided.
    pub fn compare_shadows(&self, a: &ShadowElement, b: &ShadowElement) -> Comparison {
        let diff = self.add(a, &self.scale(b, &BigInt::from(-1)));
        let fresh = diff.unresolved.len() > a.unresolved.len() + b.unresolved.len();
        if diff.terms.is_empty() {
            Comparison::Equal
        } else if fresh {
            Comparison::Unknown
        } else {
            Comparison::Distinct
        }
    }
}

fn word(g: &GroupElement) -> Vec<Letter> {
    match g {
        GroupElement::Word(w) => w.clone(),
        _ => panic!("expected a free group element"),
    }
}

fn padded(g: &GroupElement, n: usize) -> Vec<i64> {
    let mut v = abelianize(g);
    v.resize(n, 0);
    v
}

fn apply_vec(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    (0..m.rows())
        .map(|i| {
            let s: BigInt = (0..m.cols()).map(|j| &m[(i, j)] * v[j]).sum();
            s.to_i64().expect("class coordinate fits in i64")
        })
        .collect()
}

fn abelian_residue(snf: &SmithForm, v: &[i64]) -> Vec<i64> {
    let y = apply_vec(&snf.u, v);
    y.iter()
        .enumerate()
        .map(|(j, &x)| {
            let d = snf.diag(j);
            if d.is_zero() {
                x
            } else {
                BigInt::from(x).mod_floor(&d).to_i64().expect("residue fits")
            }
        })
        .collect()
}

fn min_rotation(g: &GroupElement) -> GroupElement {
    let mut w = word(g);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    (0..w.len().max(1))
        .map(|i| {
            let mut r = w[i.min(w.len())..].to_vec();
            r.extend_from_slice(&w[..i.min(w.len())]);
            GroupElement::Word(r)
        })
        .min_by_key(shortlex_key)
        .expect("at least one rotation")
}

/// Finite sum `Σ c · [g]_φ` of pairwise distinct classes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ShadowElement {
    terms: Vec<(TwistedClass, BigInt)>,
    /// Pairs of representatives whose comparison was undecided.
    unresolved: Vec<(GroupElement, GroupElement)>,
}

impl ShadowElement {
    fn accumulate(&mut self, ctx: &TwistedConjugacy, g: &GroupElement, c: BigInt) {
        let mut pending = Vec::new();
        for (class, coeff) in &mut self.terms {
            match ctx.compare(&class.representative, g) {
                Comparison::Equal => {
                    *coeff += c;
                    return;
                }
                Comparison::Distinct => {}
                Comparison::Unknown => pending.push((class.representative.clone(), g.clone())),
            }
        }
        self.unresolved.extend(pending);
        self.terms.push((ctx.class_of(g), c));
    }

    fn finish(mut self) -> Self {
        self.terms.retain(|(_, c)| !c.is_zero());
        self.terms.sort_by_key(|t| shortlex_key(&t.0.representative));
        self
    }

    pub fn terms(&self) -> &[(TwistedClass, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn unresolved(&self) -> &[(GroupElement, GroupElement)] {
        &self.unresolved
    }

    pub fn is_determinate(&self) -> bool {
        self.unresolved.is_empty()
    }

    /// Coefficient of the term whose representative is exactly `g`.
    pub fn coefficient_of(&self, ctx: &TwistedConjugacy, g: &GroupElement) -> BigInt {
        self.terms
            .iter()
            .find(|(class, _)| ctx.compare(&class.representative, g) == Comparison::Equal)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    pub fn augment(&self) -> BigInt {
        augment(self)
    }
}

impl fmt::Display for ShadowElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("{c}·{k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn twisted_class(endo: &GroupHom, g: &GroupElement) -> Result<TwistedClass> {
    endo.source().check(g)?;
    Ok(TwistedConjugacy::new(endo.clone())?.class_of(g))
}

pub fn classes_equal(endo: &GroupHom, g: &GroupElement, h: &GroupElement) -> Result<Comparison> {
    endo.source().check(g)?;
    endo.source().check(h)?;
    Ok(TwistedConjugacy::new(endo.clone())?.compare(g, h))
}

pub fn twisted_hs_trace(m: &GroupRingMatrix, endo: &GroupHom) -> Result<ShadowElement> {
    TwistedConjugacy::new(endo.clone())?.hs_trace(m)
}

/// Pushes a shadow element along `ι: G → H` with correction `w`, sending
/// `[g]` to `[ι(g)·w]`. Requires `ι(φ_G(x)) = w·φ_H(ι(x))·w⁻¹` on generators.
pub fn pushforward(
    iota: &GroupHom,
    source: &TwistedConjugacy,
    target: &TwistedConjugacy,
    w: &GroupElement,
    s: &ShadowElement,
) -> Result<ShadowElement> {
    let h = target.group();
    if iota.source() != source.group() || iota.target() != h {
        return Err(Error::InvalidGroup(
            "pushforward homomorphism has the wrong groups".into(),
        ));
    }
    h.check(w)?;
    for (i, x) in source.group().generators().iter().enumerate() {
        let lhs = iota.apply(&source.endo().apply(x));
        let rhs = h.mul(&h.mul(w, &target.endo().apply(&iota.apply(x))), &h.inv(w));
        if lhs != rhs {
            return Err(Error::Intertwining(i));
        }
    }
    let mut out = ShadowElement {
        unresolved: s.unresolved.clone(),
        ..Default::default()
    };
    for (class, c) in &s.terms {
        out.accumulate(target, &h.mul(&iota.apply(&class.representative), w), c.clone());
    }
    Ok(out.finish())
}

/// Sum of all coefficients.
pub fn augment(s: &ShadowElement) -> BigInt {
    s.terms.iter().map(|(_, c)| c).sum()
}

/// Number of classes with nonzero coefficient.
pub fn nielsen(s: &ShadowElement) -> Result<usize> {
    if !s.is_determinate() {
        let (a, b) = &s.unresolved[0];
        return Err(Error::Indeterminate(format!(
            "could not compare classes of {a} and {b}"
        )));
    }
    Ok(s.terms.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprings::FiniteGroup;

    fn z(k: i64) -> GroupElement {
        GroupElement::Abelian(vec![k])
    }

    fn times(m: i64) -> GroupHom {
        GroupHom::endo(GroupClass::FreeAbelian(1), vec![z(m)]).unwrap()
    }

    #[test]
    fn integer_classes() {
        let id = TwistedConjugacy::new(times(1)).unwrap();
        assert_eq!(id.class_of(&z(5)).representative(), &z(5));
        let refl = TwistedConjugacy::new(times(-1)).unwrap();
        assert_eq!(refl.class_of(&z(7)).representative(), &z(1));
        assert_eq!(refl.class_of(&z(-4)).representative(), &z(0));
        assert_eq!(refl.compare(&z(0), &z(2)), Comparison::Equal);
        assert_eq!(refl.compare(&z(0), &z(1)), Comparison::Distinct);
        let dbl = TwistedConjugacy::new(times(2)).unwrap();
        assert_eq!(dbl.class_of(&z(13)).representative(), &z(0));
    }

    #[test]
    fn conjugacy_in_free_group() {
        let id = GroupHom::identity(GroupClass::Free(2));
        let ab = GroupElement::Word(vec![1, 2]);
        let ba = GroupElement::Word(vec![2, 1]);
        assert_eq!(classes_equal(&id, &ab, &ba).unwrap(), Comparison::Equal);
        let a = GroupElement::Word(vec![1]);
        assert_eq!(classes_equal(&id, &ab, &a).unwrap(), Comparison::Distinct);
    }

    #[test]
    fn heuristic_search_finds_conjugator() {
        let f2 = GroupClass::Free(2);
        let phi = GroupHom::endo(f2, vec![GroupElement::Word(vec![2]), GroupElement::Word(vec![1, 2])]).unwrap();
        let ctx = TwistedConjugacy::new(phi).unwrap();
        let g = GroupElement::Word(vec![1]);
        let h = ctx.act(&GroupElement::Word(vec![2, -1, 2]), &g);
        assert_eq!(ctx.compare(&g, &h), Comparison::Equal);
        assert!(matches!(ctx.class_of(&g).certainty(), Certainty::Heuristic(8)));
    }

    #[test]
    fn shadow_examples() {
        let dbl = times(2);
        let mut m = GroupRingMatrix::zeros(1, 1);
        m.set(
            0,
            0,
            GroupRingElement::from_terms([(BigInt::from(1), z(0)), (BigInt::from(1), z(1))]),
        );
        let s = twisted_hs_trace(&m, &dbl).unwrap();
        assert_eq!(s.terms().len(), 1);
        assert_eq!(s.terms()[0].1, BigInt::from(2));
        assert!(twisted_hs_trace(&GroupRingMatrix::zeros(2, 2), &dbl).unwrap().is_zero());
        let e = GroupRingMatrix::identity(1, &GroupClass::FreeAbelian(1));
        let s = twisted_hs_trace(&e, &times(-1)).unwrap();
        assert_eq!(augment(&s), BigInt::from(1));
        assert_eq!(nielsen(&s).unwrap(), 1);
    }

    #[test]
    fn finite_group_classes() {
        let g = GroupClass::Finite(FiniteGroup::dihedral(3));
        let ctx = TwistedConjugacy::new(GroupHom::identity(g)).unwrap();
        let reps: HashSet<GroupElement> = (0..6)
            .map(|i| ctx.class_of(&GroupElement::Finite(i)).representative().clone())
            .collect();
        assert_eq!(reps.len(), 3);
    }

    #[test]
    fn pushforward_identity() {
        let ctx = TwistedConjugacy::new(times(-1)).unwrap();
        let s = ctx.shadow_of(&GroupRingElement::from_terms([
            (BigInt::from(1), z(0)),
            (BigInt::from(1), z(3)),
        ]));
        let iota = GroupHom::identity(GroupClass::FreeAbelian(1));
        assert_eq!(pushforward(&iota, &ctx, &ctx, &z(0), &s).unwrap(), s);
        let dbl = TwistedConjugacy::new(times(2)).unwrap();
        assert!(matches!(
            pushforward(&iota, &ctx, &dbl, &z(0), &s),
            Err(Error::Intertwining(0))
        ));
    }
}
