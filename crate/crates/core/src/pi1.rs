//! Fundamental groups of cell complexes from a spanning tree and 2-cell relators.

use std::collections::VecDeque;
use std::sync::Arc;

use num_integer::Integer;

use crate::cells::{CellComplex, CellularMap, EdgePath, Step};
use crate::error::{Error, Result};
use crate::grouprings::{
    invert_word, letter, letter_generator, reduce_word, shortlex_key, FiniteGroup, GroupClass, GroupElement, GroupHom,
    Letter,
};

/// Presentation of `π₁(K, b)` for the component of `b`, with the group
/// recognised as one of the supported classes.
#[derive(Debug, Clone)]
pub struct Pi1Presentation {
    complex: Arc<CellComplex>,
    basepoint: usize,
    /// Tree step arriving at each vertex of the component.
    parent: Vec<Option<Step>>,
    in_component: Vec<bool>,
    /// Raw generator index of every non-tree edge in the component.
    edge_generator: Vec<Option<usize>>,
    raw_edges: Vec<usize>,
    raw_relators: Vec<Vec<Letter>>,
    group: GroupClass,
    /// Image of each raw generator in `group`.
    raw_images: Vec<GroupElement>,
    /// Raw generator standing for each surviving generator.
    survivors: Vec<usize>,
}

impl Pi1Presentation {
    pub fn new(complex: Arc<CellComplex>, basepoint: usize) -> Result<Self> {
        let n = complex.vertex_count();
        if basepoint >= n {
            return Err(Error::InvalidPath(format!("basepoint {basepoint} out of range")));
        }
        let adj = complex.adjacency();
        let mut parent = vec![None; n];
        let mut in_component = vec![false; n];
        let mut tree_edge = vec![false; complex.edge_count()];
        in_component[basepoint] = true;
        let mut queue = VecDeque::from([basepoint]);
        while let Some(v) = queue.pop_front() {
            for &s in &adj[v] {
                let w = complex.step_end(s);
                if !in_component[w] {
                    in_component[w] = true;
                    parent[w] = Some(s);
                    tree_edge[s.edge] = true;
                    queue.push_back(w);
                }
            }
        }
        let mut edge_generator = vec![None; complex.edge_count()];
        let mut raw_edges = Vec::new();
        for (e, &(a, _)) in complex.edges().iter().enumerate() {
            if in_component[a] && !tree_edge[e] {
                edge_generator[e] = Some(raw_edges.len());
                raw_edges.push(e);
            }
        }
        let mut p = Pi1Presentation {
            complex,
            basepoint,
            parent,
            in_component,
            edge_generator,
            raw_edges,
            raw_relators: Vec::new(),
            group: GroupClass::FreeAbelian(0),
            raw_images: Vec::new(),
            survivors: Vec::new(),
        };
        for (i, cell) in p.complex.cells(2).iter().enumerate() {
            if !p.in_component[cell.anchor] {
                continue;
            }
            let lp = cell
                .boundary_loop
                .as_ref()
                .ok_or_else(|| Error::Unsupported(format!("2-cell {i} has no attaching loop")))?;
            let r = cyclic_reduce(&p.raw_word(lp));
            if !r.is_empty() {
                p.raw_relators.push(r);
            }
        }
        p.recognise()?;
        Ok(p)
    }

    /// Word in raw generators read off the non-tree edges of a path.
    fn raw_word(&self, path: &EdgePath) -> Vec<Letter> {
        let mut w = Vec::new();
        for s in &path.steps {
            if let Some(g) = self.edge_generator[s.edge] {
                w.push(letter(g, !s.forward));
            }
        }
        reduce_word(&w)
    }

    fn recognise(&mut self) -> Result<()> {
        let m = self.raw_edges.len();
        let mut alive = vec![true; m];
        let mut images: Vec<Vec<Letter>> = (0..m).map(|g| vec![letter(g, false)]).collect();
        let mut rels = self.raw_relators.clone();
        while let Some((ri, pos)) = find_eliminable(&rels) {
            let r = &rels[ri];
            let mut rotated = r[pos..].to_vec();
            rotated.extend_from_slice(&r[..pos]);
            let g = letter_generator(rotated[0]);
            let rest = rotated[1..].to_vec();
            let solution = if rotated[0] > 0 { invert_word(&rest) } else { rest };
            rels.remove(ri);
            alive[g] = false;
            for w in images.iter_mut() {
                *w = substitute(w, g, &solution);
            }
            rels = rels
                .iter()
                .map(|w| cyclic_reduce(&substitute(w, g, &solution)))
                .filter(|w| !w.is_empty())
                .collect();
        }
        let survivors: Vec<usize> = (0..m).filter(|&g| alive[g]).collect();
        let mut renumber = vec![usize::MAX; m];
        for (i, &g) in survivors.iter().enumerate() {
            renumber[g] = i;
        }
        let relabel = |w: &[Letter]| -> Vec<Letter> {
            w.iter()
                .map(|&l| letter(renumber[letter_generator(l)], l < 0))
                .collect()
        };
        let mut rels: Vec<Vec<Letter>> = rels.iter().map(|w| canonical_relator(&relabel(w))).collect();
        rels.sort();
        rels.dedup();
        let k = survivors.len();
        let group = classify(k, &rels).ok_or_else(|| {
            let text: Vec<String> = rels.iter().map(|r| GroupElement::Word(r.clone()).to_string()).collect();
            Error::Unsupported(format!("π₁ = ⟨{k} generators | {}⟩", text.join(", ")))
        })?;
        self.raw_images = images.iter().map(|w| to_element(&group, &relabel(w))).collect();
        self.group = group;
        self.survivors = survivors;
        Ok(())
    }

    pub fn complex(&self) -> &Arc<CellComplex> {
        &self.complex
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn group(&self) -> &GroupClass {
        &self.group
    }

    pub fn raw_relators(&self) -> &[Vec<Letter>] {
        &self.raw_relators
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.in_component[v]
    }

    /// Tree path from the basepoint to `v`.
    pub fn tree_path(&self, v: usize) -> EdgePath {
        assert!(self.in_component[v], "vertex outside the basepoint component");
        let mut steps = Vec::new();
        let mut at = v;
        while let Some(s) = self.parent[at] {
            steps.push(s);
            at = self.complex.step_start(s);
        }
        steps.reverse();
        EdgePath {
            start: self.basepoint,
            steps,
        }
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.in_component[self.complex.edge(e).0] && self.edge_generator[e].is_none()
    }

    /// Group element of `T_a · path · T_b⁻¹` for a path from `a` to `b`.
    pub fn elem(&self, path: &EdgePath) -> GroupElement {
        let g = &self.group;
        let mut out = g.identity();
        for s in &path.steps {
            if let Some(r) = self.edge_generator[s.edge] {
                let x = &self.raw_images[r];
                out = g.mul(&out, &if s.forward { x.clone() } else { g.inv(x) });
            }
        }
        out
    }

    /// A loop at the basepoint representing `g`.
    pub fn loop_of(&self, g: &GroupElement) -> EdgePath {
        let gen_loop = |i: usize, inverse: bool| -> EdgePath {
            let e = self.raw_edges[self.survivors[i]];
            let (a, b) = self.complex.edge(e);
            let mut p = self.tree_path(a);
            p.push(Step { edge: e, forward: true });
            let p = p.then(&self.tree_path(b).reversed(&self.complex));
            if inverse {
                p.reversed(&self.complex)
            } else {
                p
            }
        };
        let mut out = EdgePath::constant(self.basepoint);
        let mut append = |i: usize, k: i64| {
            for _ in 0..k.unsigned_abs() {
                out = out.then(&gen_loop(i, k < 0));
            }
        };
        match g {
            GroupElement::Abelian(v) => {
                for (i, &k) in v.iter().enumerate() {
                    append(i, k);
                }
            }
            GroupElement::Word(w) => {
                for &l in w {
                    append(letter_generator(l), l.signum() as i64);
                }
            }
            GroupElement::Finite(i) => append(0, *i as i64),
        }
        out
    }

    pub fn generator_loops(&self) -> Vec<EdgePath> {
        self.group.generators().iter().map(|g| self.loop_of(g)).collect()
    }
}

/// `g ↦ elem(β · f(loop g) · β⁻¹)` for a cellular map `f` and a path `β` in
/// the target from its basepoint to the image of the source basepoint.
pub fn induced_hom(
    f: &CellularMap,
    source: &Pi1Presentation,
    target: &Pi1Presentation,
    basepath: &EdgePath,
) -> Result<GroupHom> {
    let t = &**f.target();
    if basepath.start != target.basepoint() || basepath.validate(t)? != f.vertex_image(source.basepoint()) {
        return Err(Error::InvalidPath(
            "basepath must run from the target basepoint to the image of the source basepoint".into(),
        ));
    }
    let back = basepath.reversed(t);
    let images = source
        .group()
        .generators()
        .iter()
        .map(|g| target.elem(&basepath.then(&f.map_path(&source.loop_of(g))).then(&back)))
        .collect();
    GroupHom::new(source.group().clone(), target.group().clone(), images)
}

/// Endomorphism of `π₁(K, b)` induced by a self-map.
pub fn induced_endo(f: &CellularMap, p: &Pi1Presentation, basepath: &EdgePath) -> Result<GroupHom> {
    induced_hom(f, p, p, basepath)
}

fn cyclic_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut w = reduce_word(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

fn find_eliminable(rels: &[Vec<Letter>]) -> Option<(usize, usize)> {
    for (ri, r) in rels.iter().enumerate() {
        for (pos, &l) in r.iter().enumerate() {
            let g = letter_generator(l);
            if r.iter().filter(|&&x| letter_generator(x) == g).count() == 1 {
                return Some((ri, pos));
            }
        }
    }
    None
}

fn substitute(w: &[Letter], g: usize, solution: &[Letter]) -> Vec<Letter> {
    let inverse = invert_word(solution);
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        if letter_generator(l) == g {
            out.extend_from_slice(if l > 0 { solution } else { &inverse });
        } else {
            out.push(l);
        }
    }
    reduce_word(&out)
}

/// Shortlex-least rotation of the relator or its inverse.
fn canonical_relator(w: &[Letter]) -> Vec<Letter> {
    let inv = invert_word(w);
    [w.to_vec(), inv]
        .iter()
        .flat_map(|r| {
            (0..r.len()).map(move |i| {
                let mut x = r[i..].to_vec();
                x.extend_from_slice(&r[..i]);
                x
            })
        })
        .min_by_key(|x| shortlex_key(&GroupElement::Word(x.clone())))
        .unwrap_or_default()
}

fn is_commutator(r: &[Letter]) -> Option<(usize, usize)> {
    if r.len() == 4 && r[2] == -r[0] && r[3] == -r[1] && letter_generator(r[0]) != letter_generator(r[1]) {
        let (a, b) = (letter_generator(r[0]), letter_generator(r[1]));
        Some((a.min(b), a.max(b)))
    } else {
        None
    }
}

fn classify(k: usize, rels: &[Vec<Letter>]) -> Option<GroupClass> {
    if rels.is_empty() {
        return Some(match k {
            0 | 1 => GroupClass::FreeAbelian(k),
            _ => GroupClass::Free(k),
        });
    }
    if k == 1 {
        let g = rels
            .iter()
            .map(|r| r.iter().map(|&l| l.signum() as i64).sum::<i64>())
            .fold(0i64, |acc, x| acc.gcd(&x));
        return Some(if g == 1 {
            GroupClass::FreeAbelian(0)
        } else {
            GroupClass::Finite(FiniteGroup::cyclic(g as usize))
        });
    }
    let mut pairs: Vec<(usize, usize)> = rels.iter().map(|r| is_commutator(r)).collect::<Option<_>>()?;
    pairs.sort();
    pairs.dedup();
    (pairs.len() == rels.len() && pairs.len() == k * (k - 1) / 2).then_some(GroupClass::FreeAbelian(k))
}

fn to_element(group: &GroupClass, w: &[Letter]) -> GroupElement {
    match group {
        GroupClass::Free(_) => GroupElement::Word(w.to_vec()),
        GroupClass::FreeAbelian(n) => {
            let mut v = vec![0; *n];
            for &l in w {
                v[letter_generator(l)] += l.signum() as i64;
            }
            GroupElement::Abelian(v)
        }
        GroupClass::Finite(t) => {
            let s: i64 = w.iter().map(|&l| l.signum() as i64).sum();
            GroupElement::Finite(s.mod_floor(&(t.order() as i64)) as usize)
        }
    }
}
