use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::lift::{lift_map, lift_to_universal_cover, tree_basepath, TwistedChainMap};
use crate::cells::{CellularMap, EdgePath};
use crate::error::{Error, Result};
use crate::grouprings::{nielsen, GroupElement, GroupRingElement, ShadowElement, TwistedConjugacy};
use crate::pi1::Pi1Presentation;

/// A fixed point with its index and the loop class `b ⇝ x ⇝ f(b) ⇝ b` it
/// determines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointRecord {
    pub label: String,
    pub index: i64,
    pub class_witness: GroupElement,
}

/// `Σ (−1)^i [tr f_i]` in the twisted classes of `φ`.
pub fn reidemeister_trace_chain(m: &TwistedChainMap, ctx: &TwistedConjugacy) -> Result<ShadowElement> {
    if ctx.endo() != m.endo() {
        return Err(Error::InvalidGroup(
            "context endomorphism differs from the lift's".into(),
        ));
    }
    let mut total = GroupRingElement::zero();
    for (i, c) in m.components().iter().enumerate() {
        let t = c.trace()?;
        total = if i % 2 == 0 { total.add(&t) } else { total.add(&t.neg()) };
    }
    Ok(ctx.shadow_of(&total))
}

/// `Σ index · [witness]`, merging equal classes.
pub fn reidemeister_trace_geometric(records: &[FixedPointRecord], ctx: &TwistedConjugacy) -> Result<ShadowElement> {
    for r in records {
        ctx.group().check(&r.class_witness)?;
    }
    let sum = GroupRingElement::from_terms(records.iter().map(|r| (BigInt::from(r.index), r.class_witness.clone())));
    let s = ctx.shadow_of(&sum);
    if !s.is_determinate() {
        let (a, b) = &s.unresolved()[0];
        return Err(Error::Indeterminate(format!(
            "could not compare classes of {a} and {b}"
        )));
    }
    Ok(s)
}

/// Class witness of a fixed vertex: `T_x · f(T_x)⁻¹ · β⁻¹`.
pub fn vertex_witness(f: &CellularMap, p: &Pi1Presentation, basepath: &EdgePath, x: usize) -> Result<GroupElement> {
    if f.vertex_image(x) != x {
        return Err(Error::InvalidPath(format!("vertex {x} is not fixed")));
    }
    let k = &**f.target();
    let t = p.tree_path(x);
    let lp = t.then(&f.map_path(&t).reversed(k)).then(&basepath.reversed(k));
    Ok(p.elem(&lp))
}

/// Trace data for one invariant component.
#[derive(Debug)]
pub struct ComponentTrace {
    pub presentation: Pi1Presentation,
    pub basepath: EdgePath,
    pub lift: TwistedChainMap,
    pub context: TwistedConjugacy,
    pub trace: ShadowElement,
}

/// Reidemeister trace of a self-map, one shadow per component carried into
/// itself; other components contribute nothing.
#[derive(Debug)]
pub struct ReidemeisterTrace {
    pub components: Vec<ComponentTrace>,
}

impl ReidemeisterTrace {
    pub fn lefschetz(&self) -> BigInt {
        self.components.iter().map(|c| c.trace.augment()).sum()
    }

    pub fn nielsen(&self) -> Result<usize> {
        self.components.iter().map(|c| nielsen(&c.trace)).sum()
    }

    pub fn is_determinate(&self) -> bool {
        self.components.iter().all(|c| c.trace.is_determinate())
    }
}

/// Builds presentations at the least vertex of each component, lifts with
/// tree basepaths and takes the chain-level trace.
pub fn reidemeister_trace(f: &CellularMap, depth: usize) -> Result<ReidemeisterTrace> {
    if !f.is_self_map() {
        return Err(Error::Shape("Reidemeister trace needs a self-map".into()));
    }
    let k = f.source().clone();
    let comp = k.vertex_components();
    let mut components = Vec::new();
    for root in k.component_roots() {
        if comp[f.vertex_image(root)] != comp[root] {
            continue;
        }
        let p = Pi1Presentation::new(k.clone(), root)?;
        components.push(component_trace(f, p, None, depth)?);
    }
    Ok(ReidemeisterTrace { components })
}

/// Trace of one component with an explicit basepath (tree path by default).
pub fn component_trace(
    f: &CellularMap,
    p: Pi1Presentation,
    basepath: Option<EdgePath>,
    depth: usize,
) -> Result<ComponentTrace> {
    let basepath = basepath.unwrap_or_else(|| tree_basepath(f, &p));
    let l = Arc::new(lift_to_universal_cover(f.source(), &p)?);
    let lift = lift_map(f, &p, &basepath, l)?;
    let context = TwistedConjugacy::with_depth(lift.endo().clone(), depth)?;
    let trace = reidemeister_trace_chain(&lift, &context)?;
    Ok(ComponentTrace {
        presentation: p,
        basepath,
        lift,
        context,
        trace,
    })
}

/// Sum of the coefficients of every component trace; zero when no
/// component is invariant.
pub fn total_augmentation(t: &ReidemeisterTrace) -> BigInt {
    t.components
        .iter()
        .fold(BigInt::zero(), |acc, c| acc + c.trace.augment())
}
