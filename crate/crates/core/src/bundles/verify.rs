use num_bigint::BigInt;
use num_traits::Zero;

use super::pair::{BasePathClass, BundleSelfMapPair, RefinedTrace};
use crate::error::{Error, Result};
use crate::exactalg::lefschetz_from_homology;
use crate::grouprings::{nielsen, Certainty, Comparison, ShadowElement};
use crate::reidemeister::ReidemeisterTrace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    Lefschetz,
    Reidemeister,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// A class comparison could not be decided at the search depth.
    Indeterminate,
}

/// One essential class of `f̄`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRow {
    pub class: String,
    pub vertex: String,
    pub path: String,
    pub index: BigInt,
    pub fiber_lefschetz: Option<BigInt>,
    pub refined_trace: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub theorem: Theorem,
    pub rows: Vec<ClassRow>,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    pub flags: Vec<String>,
}

/// Base classes with nonzero coefficient in `R(f̄)`, with their indices.
fn essential(pair: &BundleSelfMapPair) -> Result<Vec<(BasePathClass, BigInt)>> {
    let r = pair.base_reidemeister();
    if !r.is_determinate() {
        let (a, b) = &r.unresolved()[0];
        return Err(Error::Indeterminate(format!(
            "base classes of {a} and {b} could not be compared"
        )));
    }
    Ok(r.terms()
        .iter()
        .map(|(class, c)| (pair.class_of_element(class.representative()), c.clone()))
        .collect())
}

fn row(pair: &BundleSelfMapPair, c: &BasePathClass, index: &BigInt) -> ClassRow {
    let base = pair.bundle().base();
    ClassRow {
        class: c.class.to_string(),
        vertex: base.vertex_label(c.vertex).to_string(),
        path: base.describe(&c.path),
        index: index.clone(),
        fiber_lefschetz: None,
        refined_trace: None,
    }
}

fn common_flags(pair: &BundleSelfMapPair) -> Vec<String> {
    let mut flags = vec!["fiber compatibility checked on homology".to_string()];
    flags.push(if pair.total_map_supplied() {
        "total map supplied".to_string()
    } else {
        "total map constructed".to_string()
    });
    let ctx = pair.base_context();
    if !ctx.is_decisive() {
        flags.push(format!(
            "base classes compared by bounded search, depth {}",
            ctx.depth()
        ));
    }
    for (class, _) in pair.base_reidemeister().terms() {
        if let Certainty::Heuristic(d) = class.certainty() {
            flags.push(format!("base class {class} representative chosen at depth {d}"));
        }
    }
    flags
}

/// `Σ_C ind_C(f̄) · L(f_C)` against `L(f)`.
pub fn verify_lefschetz_mult(pair: &BundleSelfMapPair) -> Result<VerificationReport> {
    let mut rows = Vec::new();
    let mut lhs = BigInt::zero();
    for (c, ind) in essential(pair)? {
        let l = pair.refined_lefschetz(&c)?;
        lhs += &ind * &l;
        let mut r = row(pair, &c, &ind);
        r.fiber_lefschetz = Some(l);
        rows.push(r);
    }
    let rhs = lefschetz_from_homology(&pair.total_map().chain_map()?)?;
    Ok(VerificationReport {
        theorem: Theorem::Lefschetz,
        rows,
        verdict: if lhs == rhs { Verdict::Pass } else { Verdict::Fail },
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        flags: common_flags(pair),
    })
}

fn render(parts: &[(usize, ShadowElement)]) -> String {
    match parts {
        [] => "0".to_string(),
        [(0, s)] => s.to_string(),
        _ => parts
            .iter()
            .map(|(i, s)| format!("E{i}: {s}"))
            .collect::<Vec<_>>()
            .join("; "),
    }
}

struct Refined {
    rows: Vec<ClassRow>,
    traces: Vec<(BigInt, RefinedTrace)>,
    total: ReidemeisterTrace,
}

fn refine_all(pair: &BundleSelfMapPair) -> Result<Refined> {
    let total = pair.total_trace()?;
    let mut rows = Vec::new();
    let mut traces = Vec::new();
    for (c, ind) in essential(pair)? {
        let t = pair.refined_reidemeister(&c, &total)?;
        let mut r = row(pair, &c, &ind);
        r.fiber_lefschetz = Some(pair.refined_lefschetz(&c)?);
        r.refined_trace = Some(render(&t.parts));
        rows.push(r);
        traces.push((ind, t));
    }
    Ok(Refined { rows, traces, total })
}

/// `Σ_C ind_C(f̄) · i_C(R(f_C))` against `R(f)`, component by component of
/// the total space.
pub fn verify_reidemeister_mult(pair: &BundleSelfMapPair) -> Result<VerificationReport> {
    let mut flags = common_flags(pair);
    let Refined { rows, traces, total } = match refine_all(pair) {
        Err(Error::Intertwining(i)) => {
            flags.push(format!(
                "fiber generator {i} does not push forward: the total map disagrees with the fiber maps on fundamental groups"
            ));
            let total = pair.total_trace()?;
            let rhs: Vec<(usize, ShadowElement)> = total
                .components
                .iter()
                .enumerate()
                .map(|(i, c)| (i, c.trace.clone()))
                .collect();
            return Ok(VerificationReport {
                theorem: Theorem::Reidemeister,
                rows: Vec::new(),
                lhs: "undefined".to_string(),
                rhs: render(&rhs),
                verdict: Verdict::Fail,
                flags,
            });
        }
        other => other?,
    };
    let mut lhs_parts = Vec::new();
    let mut rhs_parts = Vec::new();
    let mut verdict = Verdict::Pass;
    for (i, comp) in total.components.iter().enumerate() {
        let ctx = &comp.context;
        let mut sum = ShadowElement::default();
        for (ind, t) in &traces {
            for (j, s) in &t.parts {
                if *j == i {
                    sum = ctx.add(&sum, &ctx.scale(s, ind));
                }
            }
        }
        if !ctx.is_decisive() {
            flags.push(format!(
                "total classes of E{i} compared by bounded search, depth {}",
                ctx.depth()
            ));
        }
        for (a, b) in sum.unresolved().iter().chain(comp.trace.unresolved()) {
            flags.push(format!("E{i}: undecided comparison of {a} and {b}"));
        }
        match ctx.compare_shadows(&sum, &comp.trace) {
            Comparison::Equal if sum.is_determinate() && comp.trace.is_determinate() => {}
            Comparison::Distinct if sum.is_determinate() && comp.trace.is_determinate() => verdict = Verdict::Fail,
            _ => {
                if verdict == Verdict::Pass {
                    verdict = Verdict::Indeterminate;
                }
            }
        }
        if !sum.is_zero() || !comp.trace.is_zero() {
            lhs_parts.push((i, sum));
            rhs_parts.push((i, comp.trace.clone()));
        }
    }
    if total.components.len() == 1 {
        lhs_parts.iter_mut().chain(rhs_parts.iter_mut()).for_each(|p| p.0 = 0);
    }
    Ok(VerificationReport {
        theorem: Theorem::Reidemeister,
        rows,
        lhs: render(&lhs_parts),
        rhs: render(&rhs_parts),
        verdict,
        flags,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NielsenAdditivity {
    pub total: usize,
    /// `c(C) = N(i_C(R(f_C)))` per essential base class.
    pub per_class: Vec<(String, usize)>,
    pub sum: usize,
    /// Whether distinct base classes were supported on disjoint total classes.
    pub disjoint: bool,
    pub holds: bool,
}

/// `N(f)` against `Σ_C c(C)`.
pub fn nielsen_additivity(pair: &BundleSelfMapPair) -> Result<NielsenAdditivity> {
    let Refined { rows, traces, total } = refine_all(pair)?;
    let n_total = total.nielsen()?;
    let mut per_class = Vec::new();
    for (r, (_, t)) in rows.iter().zip(&traces) {
        let mut c = 0;
        for (_, s) in &t.parts {
            c += nielsen(s)?;
        }
        per_class.push((r.class.clone(), c));
    }
    let mut disjoint = true;
    for (a, (_, ta)) in traces.iter().enumerate() {
        for (_, tb) in traces.iter().skip(a + 1) {
            for (i, sa) in &ta.parts {
                for (j, sb) in &tb.parts {
                    if i != j {
                        continue;
                    }
                    let ctx = &total.components[*i].context;
                    for (ca, _) in sa.terms() {
                        for (cb, _) in sb.terms() {
                            match ctx.compare(ca.representative(), cb.representative()) {
                                Comparison::Distinct => {}
                                Comparison::Equal => disjoint = false,
                                Comparison::Unknown => {
                                    return Err(Error::Indeterminate(format!(
                                        "could not separate total classes {ca} and {cb}"
                                    )))
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let sum = per_class.iter().map(|(_, c)| c).sum();
    Ok(NielsenAdditivity {
        total: n_total,
        per_class,
        sum,
        disjoint,
        holds: n_total == sum && disjoint,
    })
}
