use super::total::TotalSpace;
use crate::cells::{CellularMap, EdgePath, ImageTerm};
use crate::error::{Error, Result};

fn not_constructible(e: Error) -> Error {
    match e {
        Error::NotConstructible(_) => e,
        other => Error::NotConstructible(other.to_string()),
    }
}

/// Self-map of the total space covering `base_map` and restricting to the
/// fiber maps over vertices, built by transporting fiber images along the
/// edge words of `base_map`.
///
/// Needs the square over every edge to commute on vertices, and every edge
/// crossed backwards to carry an inverse with `h(inv(x)) = x`.
pub fn automatic_total_map(
    space: &TotalSpace,
    base_map: &CellularMap,
    fiber_maps: &[CellularMap],
) -> Result<CellularMap> {
    let bundle = space.bundle();
    let base = bundle.base();
    for e in 0..base.edge_count() {
        let word = base_map.edge_image(e);
        for s in word.steps.iter().filter(|s| !s.forward) {
            let h = bundle.edge_transport(s.edge).vertex_images();
            let inv = bundle.edge_inverse(s.edge).vertex_images();
            if (0..inv.len()).any(|x| h[inv[x]] != x) {
                return Err(Error::NotConstructible(format!(
                    "edge {} is crossed backwards but its inverse is not a right inverse on vertices",
                    base.edge_label(s.edge)
                )));
            }
        }
        let (src, dst) = base.edge(e);
        let t = bundle.transport(word)?;
        let h = bundle.edge_transport(e);
        for v in 0..bundle.fiber(src).vertex_count() {
            let around = t.vertex_images()[fiber_maps[src].vertex_image(v)];
            if around != fiber_maps[dst].vertex_image(h.vertex_images()[v]) {
                return Err(Error::NotConstructible(format!(
                    "the square over {} does not commute on fiber vertex {}",
                    base.edge_label(e),
                    bundle.fiber(src).vertices()[v]
                )));
            }
        }
    }
    let k = space.complex();
    let mut vertex_images = vec![0; k.vertex_count()];
    let mut edge_images = vec![EdgePath::constant(0); k.edge_count()];
    let mut higher: Vec<Vec<Vec<ImageTerm>>> = (2..=k.dim()).map(|d| vec![Vec::new(); k.count(d)]).collect();
    for b in 0..base.vertex_count() {
        let fb = &fiber_maps[b];
        let c = base_map.vertex_image(b);
        for v in 0..bundle.fiber(b).vertex_count() {
            vertex_images[space.vertex(b, v)] = space.vertex(c, fb.vertex_image(v));
        }
        for i in 0..bundle.fiber(b).count(1) {
            edge_images[space.fiber_cell(1, b, i)] = space.embed_path(c, fb.edge_image(i));
        }
        for d in 2..=bundle.fiber(b).dim().unwrap_or(0) {
            for i in 0..bundle.fiber(b).count(d) {
                higher[d - 2][space.fiber_cell(d, b, i)] = fb
                    .image_terms(d, i)
                    .into_iter()
                    .map(|t| ImageTerm {
                        coeff: t.coeff,
                        cell: space.fiber_cell(d, c, t.cell),
                        path: space.embed_path(c, &t.path),
                    })
                    .collect();
            }
        }
    }
    for e in 0..base.edge_count() {
        let src = base.edge(e).0;
        let word = base_map.edge_image(e);
        let fs = &fiber_maps[src];
        for v in 0..bundle.fiber(src).vertex_count() {
            edge_images[space.prism_cell(1, e, v)] = space.track(word, fs.vertex_image(v))?.0;
        }
        for d in 2..=bundle.fiber(src).dim().unwrap_or(0) + 1 {
            for (j, _) in bundle.fiber(src).simplices(d - 1).iter().enumerate() {
                let mut terms = Vec::new();
                for t in fs.image_terms(d - 1, j) {
                    transport_term(space, word, d, &t, &mut terms)?;
                }
                higher[d - 2][space.prism_cell(d, e, j)] = terms;
            }
        }
    }
    CellularMap::new(k.clone(), k.clone(), vertex_images, edge_images, higher).map_err(not_constructible)
}

/// Sweeps one fiber image term along `word`, emitting a prism term per step.
fn transport_term(
    space: &TotalSpace,
    word: &EdgePath,
    d: usize,
    t: &ImageTerm,
    out: &mut Vec<ImageTerm>,
) -> Result<()> {
    let bundle = space.bundle();
    let base = bundle.base();
    let mut fiber = word.start;
    let mut sigma = bundle.fiber(fiber).simplices(d - 1)[t.cell].clone();
    let mut coeff = t.coeff;
    let mut x = sigma[0];
    let mut path = space.embed_path(fiber, &t.path);
    for &s in &word.steps {
        let (src, dst) = base.edge(s.edge);
        let h = bundle.edge_transport(s.edge);
        if s.forward {
            let cell = bundle.fiber(src).index_of(&sigma).expect("simplex of the fiber");
            out.push(ImageTerm {
                coeff,
                cell: space.prism_cell(d, s.edge, cell),
                path: path.then(&space.fiber_path(src, x, sigma[0])?),
            });
            path.push(space.vertical(s.edge, x));
            x = h.vertex_images()[x];
            fiber = dst;
            match h.simplex_image(&sigma) {
                Some((image, sign)) => {
                    sigma = image;
                    coeff *= sign;
                }
                None => return Ok(()),
            }
        } else {
            let inv = bundle.edge_inverse(s.edge);
            let Some((pre, sign)) = inv.simplex_image(&sigma) else {
                return Ok(());
            };
            let y = inv.vertex_images()[x];
            path.push(space.vertical(s.edge, y).inverse());
            let cell = bundle.fiber(src).index_of(&pre).expect("simplex of the fiber");
            out.push(ImageTerm {
                coeff: -coeff * sign,
                cell: space.prism_cell(d, s.edge, cell),
                path: path.then(&space.fiber_path(src, y, pre[0])?),
            });
            x = y;
            fiber = src;
            sigma = pre;
            coeff *= sign;
        }
    }
    debug_assert_eq!(fiber, word.end(base.complex()));
    Ok(())
}

fn reduced(p: &EdgePath) -> EdgePath {
    let mut out = EdgePath::constant(p.start);
    for &s in &p.steps {
        out.push(s);
    }
    out
}

/// Checks a supplied total self-map: it must be a cellular self-map of the
/// total space covering `base_map` on vertices and on edges.
pub fn check_supplied_total_map(space: &TotalSpace, base_map: &CellularMap, f: &CellularMap) -> Result<()> {
    let k = space.complex();
    if **f.source() != **k || **f.target() != **k {
        return Err(Error::InvalidBundle(
            "supplied total map is not a self-map of the total space".into(),
        ));
    }
    let p = space.projection();
    for v in 0..k.vertex_count() {
        if p[f.vertex_image(v)] != base_map.vertex_image(p[v]) {
            return Err(Error::InvalidBundle(format!(
                "supplied total map does not cover the base map at {}",
                k.vertex_label(v)
            )));
        }
    }
    for e in 0..k.edge_count() {
        let down = space.project_path(f.edge_image(e));
        let expected = match space.vertical_edge(e) {
            Some((be, _)) => reduced(base_map.edge_image(be)),
            None => EdgePath::constant(base_map.vertex_image(p[k.edge(e).0])),
        };
        if down != expected {
            return Err(Error::InvalidBundle(format!(
                "supplied total map image of edge {}→{} projects to {} instead of {}",
                k.vertex_label(k.edge(e).0),
                k.vertex_label(k.edge(e).1),
                space.bundle().base().describe(&down),
                space.bundle().base().describe(&expected)
            )));
        }
    }
    Ok(())
}
