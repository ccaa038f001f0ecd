use fixtrace::bundles::{self, BundleSelfMapPair, Theorem, VerificationReport};
use fixtrace::exactalg::{homology as homology_of, hopf_chain_trace, induced_homology_map, lefschetz_from_homology};
use fixtrace::grouprings::{Certainty, Comparison};
use fixtrace::pi1::Pi1Presentation;
use fixtrace::reidemeister::{
    component_trace, reidemeister_trace, reidemeister_trace_geometric, FixedPointRecord, ReidemeisterTrace,
};
use fixtrace::Error;

use crate::catalog;
use crate::doc::{parse, resolve, ComplexRef, Labeled, MapDoc, PairDoc};
use crate::error::{CliError, CliResult};
use crate::report::{digest, Report, Table, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremChoice {
    Lefschetz,
    Reidemeister,
    Both,
}

impl TheoremChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremChoice::Lefschetz => "lefschetz",
            TheoremChoice::Reidemeister => "reidemeister",
            TheoremChoice::Both => "both",
        }
    }
}

fn unsupported(mut report: Report, e: Error) -> Report {
    report.verdict = match e {
        Error::Indeterminate(_) => Verdict::Indeterminate,
        _ => Verdict::Unsupported,
    };
    report.flags.push(e.to_string());
    report
}

/// Betti numbers and torsion of a complex document (or catalog name).
pub fn homology(input: &str) -> CliResult<Report> {
    let mut report = Report::new("homology", digest("homology", &[], input.as_bytes()));
    let k = resolve(&parse::<ComplexRef>(input)?, &catalog::complex)?;
    let h = homology_of(&k.cells.chain_complex()?)?;
    let mut t = Table::new("homology", &["degree", "betti", "torsion"]);
    for (d, deg) in h.degrees.iter().enumerate() {
        let torsion: Vec<String> = deg.torsion.iter().map(|x| format!("Z/{x}")).collect();
        t.push(vec![d.to_string(), deg.betti.to_string(), torsion.join(" + ")]);
    }
    report.tables.push(t);
    let mut s = Table::new("summary", &["quantity", "value"]);
    s.push(vec![
        "euler characteristic".into(),
        k.cells.euler_characteristic().to_string(),
    ]);
    report.tables.push(s);
    Ok(report)
}

fn map_input(input: &str) -> CliResult<(MapDoc, Labeled, fixtrace::cells::CellularMap)> {
    let doc: MapDoc = parse(input)?;
    let k = resolve(&doc.complex, &catalog::complex).map_err(|e| e.at("complex"))?;
    let f = doc.body.to_map(&k, &k)?;
    Ok((doc, k, f))
}

/// Chain-level and homology-level Lefschetz numbers of a self-map.
pub fn lefschetz(input: &str) -> CliResult<Report> {
    let mut report = Report::new("lefschetz", digest("lefschetz", &[], input.as_bytes()));
    let (_, _, f) = map_input(input)?;
    let m = f.chain_map()?;
    let chain = hopf_chain_trace(&m)?;
    let hom = lefschetz_from_homology(&m)?;
    let induced = induced_homology_map(&m)?;
    let mut t = Table::new("traces", &["degree", "chain trace", "homology trace"]);
    for (d, h) in induced.iter().enumerate() {
        t.push(vec![
            d.to_string(),
            m.component(d).trace().to_string(),
            h.trace().to_string(),
        ]);
    }
    report.tables.push(t);
    report.lhs = Some(chain.to_string());
    report.rhs = Some(hom.to_string());
    report.verdict = if chain == hom { Verdict::Pass } else { Verdict::Fail };
    if chain != hom {
        report.flags.push(format!(
            "chain-level value {chain} differs from homology-level value {hom}"
        ));
    }
    Ok(report)
}

fn trace_flags(t: &ReidemeisterTrace, k: &Labeled, flags: &mut Vec<String>) {
    for c in &t.components {
        let at = k.id(0, c.presentation.basepoint());
        if !c.context.is_decisive() {
            flags.push(format!(
                "component at {at}: classes compared by bounded search, depth {}",
                c.context.depth()
            ));
        }
        for (class, _) in c.trace.terms() {
            if let Certainty::Heuristic(d) = class.certainty() {
                flags.push(format!(
                    "component at {at}: representative of {class} chosen at depth {d}"
                ));
            }
        }
        for (a, b) in c.trace.unresolved() {
            flags.push(format!("component at {at}: undecided comparison of [{a}] and [{b}]"));
        }
    }
}

/// Chain-route Reidemeister trace, with the geometric route when fixed-point
/// records are supplied.
pub fn reidemeister(input: &str, depth: usize) -> CliResult<Report> {
    let options = [format!("depth={depth}")];
    let mut report = Report::new("reidemeister", digest("reidemeister", &options, input.as_bytes()));
    let (doc, k, f) = map_input(input)?;
    let connected = k.cells.component_count() == 1;
    if !connected && (doc.basepath.is_some() || doc.records.is_some()) {
        return Err(CliError::input("basepath and records need a connected complex"));
    }
    let computed = if connected {
        let p = Pi1Presentation::new(k.cells.clone(), 0);
        let basepath = match &doc.basepath {
            Some(w) => {
                let b = k.word(0, w).map_err(|e| e.at("basepath"))?;
                if b.end(&k.cells) != f.vertex_image(0) {
                    return Err(CliError::input("basepath: must end at the image of the basepoint"));
                }
                Some(b)
            }
            None => None,
        };
        p.and_then(|p| component_trace(&f, p, basepath, depth))
            .map(|c| ReidemeisterTrace { components: vec![c] })
    } else {
        reidemeister_trace(&f, depth)
    };
    let t = match computed {
        Ok(t) => t,
        Err(e @ (Error::Unsupported(_) | Error::Indeterminate(_))) => return Ok(unsupported(report, e)),
        Err(e) => return Err(e.into()),
    };

    let mut classes = Table::new("classes", &["component", "class", "coefficient"]);
    let mut summary = Table::new("summary", &["quantity", "value"]);
    for c in &t.components {
        let at = k.id(0, c.presentation.basepoint()).to_string();
        for (class, coeff) in c.trace.terms() {
            classes.push(vec![at.clone(), class.to_string(), coeff.to_string()]);
        }
        summary.push(vec![format!("R at {at}"), c.trace.to_string()]);
    }
    let l = lefschetz_from_homology(&f.chain_map()?)?;
    let aug = t.lefschetz();
    let nielsen = t.nielsen();
    summary.push(vec![
        "N".into(),
        nielsen.as_ref().map_or("undetermined".into(), ToString::to_string),
    ]);
    summary.push(vec!["augmentation".into(), aug.to_string()]);
    summary.push(vec!["L".into(), l.to_string()]);
    trace_flags(&t, &k, &mut report.flags);

    let mut verdict = if aug == l { Verdict::Pass } else { Verdict::Fail };
    if aug != l {
        report.flags.push(format!("augmentation {aug} differs from L = {l}"));
    }
    if !t.is_determinate() {
        verdict = verdict.and(Verdict::Indeterminate);
    }
    if let Some(recs) = &doc.records {
        let c = &t.components[0];
        let records = recs
            .iter()
            .map(|r| {
                let w = k.word(0, &r.witness)?;
                if w.end(&k.cells) != 0 {
                    return Err(CliError::input(format!(
                        "witness of {} is not a loop at the basepoint",
                        r.label
                    )));
                }
                Ok(FixedPointRecord {
                    label: r.label.clone(),
                    index: r.index,
                    class_witness: c.presentation.elem(&w),
                })
            })
            .collect::<CliResult<Vec<_>>>()
            .map_err(|e| e.at("records"))?;
        let geo = reidemeister_trace_geometric(&records, &c.context)?;
        summary.push(vec!["geometric R".into(), geo.to_string()]);
        match c.context.compare_shadows(&c.trace, &geo) {
            Comparison::Equal => {}
            Comparison::Distinct => {
                verdict = verdict.and(Verdict::Fail);
                report
                    .flags
                    .push(format!("geometric route {geo} differs from chain route {}", c.trace));
            }
            Comparison::Unknown => verdict = verdict.and(Verdict::Indeterminate),
        }
    }
    report.tables.push(classes);
    report.tables.push(summary);
    report.lhs = Some(aug.to_string());
    report.rhs = Some(l.to_string());
    report.verdict = verdict;
    Ok(report)
}

fn verdict_of(v: bundles::Verdict) -> Verdict {
    match v {
        bundles::Verdict::Pass => Verdict::Pass,
        bundles::Verdict::Fail => Verdict::Fail,
        bundles::Verdict::Indeterminate => Verdict::Indeterminate,
    }
}

fn class_table(r: &VerificationReport) -> Table {
    match r.theorem {
        Theorem::Lefschetz => {
            let mut t = Table::new("lefschetz", &["class", "vertex", "path", "index", "fiber L"]);
            for row in &r.rows {
                let l = row.fiber_lefschetz.as_ref().map_or(String::new(), ToString::to_string);
                t.push(vec![
                    row.class.clone(),
                    row.vertex.clone(),
                    row.path.clone(),
                    row.index.to_string(),
                    l,
                ]);
            }
            t
        }
        Theorem::Reidemeister => {
            let mut t = Table::new("reidemeister", &["class", "vertex", "path", "index", "refined trace"]);
            for row in &r.rows {
                let tr = row.refined_trace.clone().unwrap_or_default();
                t.push(vec![
                    row.class.clone(),
                    row.vertex.clone(),
                    row.path.clone(),
                    row.index.to_string(),
                    tr,
                ]);
            }
            t
        }
    }
}

fn name(t: Theorem) -> &'static str {
    match t {
        Theorem::Lefschetz => "lefschetz",
        Theorem::Reidemeister => "reidemeister",
    }
}

fn run_theorem(pair: &BundleSelfMapPair, t: Theorem) -> Result<VerificationReport, Error> {
    match t {
        Theorem::Lefschetz => bundles::verify_lefschetz_mult(pair),
        Theorem::Reidemeister => bundles::verify_reidemeister_mult(pair),
    }
}

fn push_flag(flags: &mut Vec<String>, f: String) {
    if !flags.contains(&f) {
        flags.push(f);
    }
}

/// Checks the fiberwise Lefschetz and Reidemeister product formulas on a pair
/// document.
pub fn bundle_verify(input: &str, theorem: TheoremChoice, depth: usize) -> CliResult<Report> {
    let options = [format!("theorem={}", theorem.as_str()), format!("depth={depth}")];
    let mut report = Report::new("bundle-verify", digest("bundle-verify", &options, input.as_bytes()));
    let doc: PairDoc = parse(input)?;
    let parsed = match doc.to_pair(depth, &catalog::complex) {
        Ok(p) => p,
        Err(CliError::Unsupported(m)) => {
            report.verdict = Verdict::Unsupported;
            report.flags.push(m);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let pair = parsed.pair;
    let theorems = match theorem {
        TheoremChoice::Lefschetz => vec![Theorem::Lefschetz],
        TheoremChoice::Reidemeister => vec![Theorem::Reidemeister],
        TheoremChoice::Both => vec![Theorem::Lefschetz, Theorem::Reidemeister],
    };
    let mut verdict = Verdict::Pass;
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    let mut flags = parsed.notes;
    for t in theorems {
        let r = match run_theorem(&pair, t) {
            Ok(r) => r,
            Err(e @ (Error::Unsupported(_) | Error::Indeterminate(_))) => {
                let v = if matches!(e, Error::Unsupported(_)) {
                    Verdict::Unsupported
                } else {
                    Verdict::Indeterminate
                };
                verdict = verdict.and(v);
                push_flag(&mut flags, format!("{}: {e}", name(t)));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        report.tables.push(class_table(&r));
        verdict = verdict.and(verdict_of(r.verdict));
        if r.verdict == bundles::Verdict::Fail {
            push_flag(
                &mut flags,
                format!("{}: lhs {} differs from rhs {}", name(t), r.lhs, r.rhs),
            );
        }
        for f in r.flags {
            push_flag(&mut flags, f);
        }
        if t == Theorem::Reidemeister && r.verdict == bundles::Verdict::Pass {
            match bundles::nielsen_additivity(&pair) {
                Ok(n) => {
                    let mut table = Table::new("nielsen", &["class", "c"]);
                    for (class, c) in &n.per_class {
                        table.push(vec![class.clone(), c.to_string()]);
                    }
                    table.push(vec!["sum".into(), n.sum.to_string()]);
                    table.push(vec!["N(f)".into(), n.total.to_string()]);
                    report.tables.push(table);
                    if !n.holds {
                        push_flag(
                            &mut flags,
                            format!("Nielsen additivity fails: N(f) = {}, sum = {}", n.total, n.sum),
                        );
                    }
                }
                Err(e) => push_flag(&mut flags, format!("Nielsen additivity not decided: {e}")),
            }
        }
        lhs.push((name(t), r.lhs));
        rhs.push((name(t), r.rhs));
    }
    let join = |parts: &[(&str, String)]| -> Option<String> {
        match parts {
            [] => None,
            [(_, s)] if theorem != TheoremChoice::Both => Some(s.clone()),
            _ => Some(
                parts
                    .iter()
                    .map(|(n, s)| format!("{n}: {s}"))
                    .collect::<Vec<_>>()
                    .join(" | "),
            ),
        }
    };
    report.lhs = join(&lhs);
    report.rhs = join(&rhs);
    report.verdict = verdict;
    report.flags = flags;
    Ok(report)
}
