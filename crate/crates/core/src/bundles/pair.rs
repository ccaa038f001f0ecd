use std::sync::Arc;

use num_bigint::BigInt;

use super::bundle::DiscreteBundle;
use super::total::TotalSpace;
use super::total_map::{automatic_total_map, check_supplied_total_map};
use crate::cells::{CellularMap, EdgePath};
use crate::error::{Error, Result};
use crate::exactalg::{lefschetz_from_homology, same_on_homology};
use crate::grouprings::{
    pushforward, shortlex_key, Comparison, GroupClass, GroupElement, GroupHom, ShadowElement, TwistedClass,
    TwistedConjugacy,
};
use crate::reidemeister::{component_trace, reidemeister_trace, ComponentTrace, ReidemeisterTrace};

/// A base map `f̄` together with fiber maps `f_b: F_b → F_{f̄(b)}` and a
/// total self-map covering them.
#[derive(Debug)]
pub struct BundleSelfMapPair {
    bundle: Arc<DiscreteBundle>,
    base_map: CellularMap,
    fiber_maps: Vec<CellularMap>,
    total: TotalSpace,
    total_map: CellularMap,
    supplied: bool,
    depth: usize,
    base_trace: ComponentTrace,
}

/// A potential fixed-point class of `f̄`, represented by a base vertex and
/// a path `γ: b ⇝ f̄(b)`.
#[derive(Debug, Clone)]
pub struct BasePathClass {
    pub vertex: usize,
    pub path: EdgePath,
    pub class: TwistedClass,
}

#[derive(Debug, Clone)]
pub struct BaseClassList {
    pub classes: Vec<BasePathClass>,
    /// False when the class set was truncated at the search depth.
    pub complete: bool,
}

/// `i_C(R(f_C))` split by total-space component: the index of the component
/// in the total trace and the pushed-forward shadow.
#[derive(Debug, Clone)]
pub struct RefinedTrace {
    pub parts: Vec<(usize, ShadowElement)>,
}

impl BundleSelfMapPair {
    /// Validates the maps and homological compatibility, then builds the
    /// total map automatically unless one is supplied.
    pub fn new(
        bundle: Arc<DiscreteBundle>,
        base_map: CellularMap,
        fiber_maps: Vec<CellularMap>,
        supplied_total_map: Option<CellularMap>,
        depth: usize,
    ) -> Result<Self> {
        let base = bundle.base();
        if **base_map.source() != **base.complex() || **base_map.target() != **base.complex() {
            return Err(Error::InvalidBundle(
                "base map is not a self-map of the base graph".into(),
            ));
        }
        if fiber_maps.len() != base.vertex_count() {
            return Err(Error::InvalidBundle("one fiber map per base vertex".into()));
        }
        for (b, f) in fiber_maps.iter().enumerate() {
            let c = base_map.vertex_image(b);
            if **f.source() != **bundle.fiber_cells(b) || **f.target() != **bundle.fiber_cells(c) {
                return Err(Error::InvalidBundle(format!(
                    "fiber map over {} must go from its fiber to the fiber over {}",
                    base.vertex_label(b),
                    base.vertex_label(c)
                )));
            }
        }
        for e in 0..base.edge_count() {
            let (b, b2) = base.edge(e);
            let around = bundle
                .transport_cellular(base_map.edge_image(e))?
                .compose(&fiber_maps[b])?;
            let h = bundle
                .edge_transport(e)
                .cellular(bundle.fiber_cells(b).clone(), bundle.fiber_cells(b2).clone());
            let other = fiber_maps[b2].compose(&h)?;
            if !same_on_homology(&around.chain_map()?, &other.chain_map()?)? {
                return Err(Error::InvalidBundle(format!(
                    "fiber maps are not compatible with transport over {} on homology",
                    base.edge_label(e)
                )));
            }
        }
        let total = TotalSpace::new(bundle.clone())?;
        let supplied = supplied_total_map.is_some();
        let total_map = match supplied_total_map {
            Some(f) => {
                check_supplied_total_map(&total, &base_map, &f)?;
                for (b, fb) in fiber_maps.iter().enumerate() {
                    let c = base_map.vertex_image(b);
                    for v in 0..bundle.fiber(b).vertex_count() {
                        if f.vertex_image(total.vertex(b, v)) != total.vertex(c, fb.vertex_image(v)) {
                            return Err(Error::InvalidBundle(format!(
                                "supplied total map does not restrict to the fiber map at {}",
                                total.complex().vertex_label(total.vertex(b, v))
                            )));
                        }
                    }
                }
                f
            }
            None => automatic_total_map(&total, &base_map, &fiber_maps)?,
        };
        let p = base.presentation().clone();
        let base_trace = component_trace(&base_map, p, None, depth)?;
        Ok(BundleSelfMapPair {
            bundle,
            base_map,
            fiber_maps,
            total,
            total_map,
            supplied,
            depth,
            base_trace,
        })
    }

    pub fn bundle(&self) -> &Arc<DiscreteBundle> {
        &self.bundle
    }

    pub fn base_map(&self) -> &CellularMap {
        &self.base_map
    }

    pub fn fiber_maps(&self) -> &[CellularMap] {
        &self.fiber_maps
    }

    pub fn total_space(&self) -> &TotalSpace {
        &self.total
    }

    pub fn total_map(&self) -> &CellularMap {
        &self.total_map
    }

    pub fn total_map_supplied(&self) -> bool {
        self.supplied
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Trace data of `f̄` at the base basepoint with the tree basepath.
    pub fn base_trace(&self) -> &ComponentTrace {
        &self.base_trace
    }

    pub fn base_context(&self) -> &TwistedConjugacy {
        &self.base_trace.context
    }

    /// `R(f̄)`.
    pub fn base_reidemeister(&self) -> &ShadowElement {
        &self.base_trace.trace
    }

    /// Group element `T_b · γ · f̄(T_b)⁻¹ · β⁻¹` of a pair `(b, γ)`.
    pub fn element_of(&self, vertex: usize, path: &EdgePath) -> Result<GroupElement> {
        let k = self.bundle.base().complex();
        if path.start != vertex || path.validate(k)? != self.base_map.vertex_image(vertex) {
            return Err(Error::InvalidPath("class path must run from b to f̄(b)".into()));
        }
        let p = &self.base_trace.presentation;
        let t = p.tree_path(vertex);
        let lp = t
            .then(path)
            .then(&self.base_map.map_path(&t).reversed(k))
            .then(&self.base_trace.basepath.reversed(k));
        Ok(p.elem(&lp))
    }

    pub fn class_at(&self, vertex: usize, path: EdgePath) -> Result<BasePathClass> {
        let g = self.element_of(vertex, &path)?;
        Ok(BasePathClass {
            vertex,
            path,
            class: self.base_context().class_of(&g),
        })
    }

    /// The representative `(b₀, loop(g) · β)` of the class of `g`.
    pub fn class_of_element(&self, g: &GroupElement) -> BasePathClass {
        let p = &self.base_trace.presentation;
        let path = p.loop_of(g).then(&self.base_trace.basepath);
        let class = self.base_context().class_of(g);
        BasePathClass {
            vertex: p.basepoint(),
            path,
            class,
        }
    }

    /// Representative `(b, γ)` of the class of `g` at another vertex: `γ =
    /// T_b⁻¹ · loop(g) · β · f̄(T_b)`.
    pub fn representative_at(&self, g: &GroupElement, vertex: usize) -> Result<BasePathClass> {
        let k = self.bundle.base().complex();
        let p = &self.base_trace.presentation;
        let t = p.tree_path(vertex);
        let path = t
            .reversed(k)
            .then(&p.loop_of(g))
            .then(&self.base_trace.basepath)
            .then(&self.base_map.map_path(&t));
        self.class_at(vertex, path)
    }

    /// Potential fixed-point classes of `f̄`: exact for rank at most one
    /// when `f̄_* ≠ id`, otherwise words up to a length bound.
    pub fn base_twisted_classes(&self, depth: usize) -> BaseClassList {
        let ctx = self.base_context();
        let g = ctx.group();
        let mut complete = true;
        let candidates: Vec<GroupElement> = match g {
            GroupClass::FreeAbelian(0) => vec![g.identity()],
            GroupClass::FreeAbelian(1) => {
                let a = ctx.endo().abelianized_matrix().expect("free abelian target");
                let d: BigInt = BigInt::from(1) - &a[(0, 0)];
                let bound = i64::try_from(d.magnitude().clone()).unwrap_or(0);
                if bound > 0 {
                    (0..bound).map(|u| GroupElement::Abelian(vec![u])).collect()
                } else {
                    complete = false;
                    let depth = depth as i64;
                    (0..=2 * depth)
                        .map(|i| GroupElement::Abelian(vec![if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) }]))
                        .collect()
                }
            }
            GroupClass::Finite(_) => g.elements().expect("finite group"),
            _ => {
                complete = false;
                words_up_to(g.generator_count(), depth.min(2))
            }
        };
        let mut classes: Vec<BasePathClass> = Vec::new();
        for u in candidates {
            if classes
                .iter()
                .any(|c| ctx.compare(c.class.representative(), &u) == Comparison::Equal)
            {
                continue;
            }
            classes.push(self.class_of_element(&u));
        }
        classes.sort_by_key(|c| shortlex_key(c.class.representative()));
        BaseClassList { classes, complete }
    }

    /// `transport(γ⁻¹) ∘ f_b`, a self-map of the fiber over `b`.
    pub fn fiber_composite(&self, c: &BasePathClass) -> Result<CellularMap> {
        let k = self.bundle.base().complex();
        let back = c.path.reversed(k);
        let t = self.bundle.transport_cellular(&back)?;
        t.compose(&self.fiber_maps[c.vertex])
    }

    /// `L(f_C)`.
    pub fn refined_lefschetz(&self, c: &BasePathClass) -> Result<BigInt> {
        lefschetz_from_homology(&self.fiber_composite(c)?.chain_map()?)
    }

    pub fn refined_l(&self, classes: &[BasePathClass]) -> Result<Vec<BigInt>> {
        classes.iter().map(|c| self.refined_lefschetz(c)).collect()
    }

    /// Reidemeister trace of the total map, one part per invariant component.
    pub fn total_trace(&self) -> Result<ReidemeisterTrace> {
        reidemeister_trace(&self.total_map, self.depth)
    }

    /// `i_C(R(f_C))`: the fiber trace of each invariant fiber component,
    /// pushed into the total-space component containing it.
    pub fn refined_reidemeister(&self, c: &BasePathClass, total: &ReidemeisterTrace) -> Result<RefinedTrace> {
        let k = self.fiber_composite(c)?;
        let fiber_trace = reidemeister_trace(&k, self.depth)?;
        let kb = self.bundle.base().complex();
        let ek = self.total.complex();
        let back = c.path.reversed(kb);
        let mut parts: Vec<(usize, ShadowElement)> = Vec::new();
        for ft in &fiber_trace.components {
            let y = ft.presentation.basepoint();
            let big_y = self.total.vertex(c.vertex, y);
            let idx = total
                .components
                .iter()
                .position(|t| t.presentation.contains_vertex(big_y))
                .ok_or_else(|| Error::NotConstructible("fiber class lands in a non-invariant component".into()))?;
            let et = &total.components[idx];
            let pe = &et.presentation;
            let images = ft
                .presentation
                .generator_loops()
                .iter()
                .map(|l| pe.elem(&self.total.embed_path(c.vertex, l)))
                .collect();
            let iota = GroupHom::new(ft.presentation.group().clone(), pe.group().clone(), images)?;
            let (lambda, _) = self.total.track(&back, self.fiber_maps[c.vertex].vertex_image(y))?;
            let ty = pe.tree_path(big_y);
            let word = ty
                .then(&self.total.embed_path(c.vertex, &ft.basepath))
                .then(&lambda.reversed(ek))
                .then(&self.total_map.map_path(&ty).reversed(ek))
                .then(&et.basepath.reversed(ek));
            let w = pe.elem(&word);
            let pushed = pushforward(&iota, &ft.context, &et.context, &w, &ft.trace)?;
            match parts.iter_mut().find(|(i, _)| *i == idx) {
                Some((_, s)) => *s = et.context.add(s, &pushed),
                None => parts.push((idx, pushed)),
            }
        }
        parts.sort_by_key(|(i, _)| *i);
        Ok(RefinedTrace { parts })
    }
}

/// Reduced words in `n` free generators of length at most `len`, shortlex.
fn words_up_to(n: usize, len: usize) -> Vec<GroupElement> {
    let letters: Vec<i32> = (0..n as i32).flat_map(|g| [g + 1, -(g + 1)]).collect();
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.last().is_some_and(|&x: &i32| x == -l) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter().map(GroupElement::Word).collect()
}
