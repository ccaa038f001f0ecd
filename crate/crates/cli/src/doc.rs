//! JSON documents for complexes, maps, bundles and pairs, and their
//! conversion to and from the library types.
//!
//! Paths are written as lists of edge ids, `"x^-1"` traversing `x`
//! backwards; their start is implied by context. Simplices are named by
//! their vertex ids joined with `-` in vertex order.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use fixtrace::bundles::{BundleSelfMapPair, DiscreteBundle, GraphBase, TotalSpace};
use fixtrace::cells::{Cell, CellComplex, CellularMap, EdgePath, Face, ImageTerm, Step};
use fixtrace::simplicial::{SimplicialComplex, SimplicialMap};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

const INVERSE: &str = "^-1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDoc {
    pub sign: i64,
    pub cell: String,
    pub path: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    pub id: String,
    pub dim: usize,
    pub anchor: String,
    pub faces: Vec<FaceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<String>>,
}

/// A simplicial complex (`simplices`, maximal ones suffice) or an anchored
/// cell complex (`edges` and `cells`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplices: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<CellDoc>>,
}

/// A complex given inline or by catalog name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexRef {
    Named(String),
    Inline(ComplexDoc),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: i64,
    pub cell: String,
    pub path: Vec<String>,
}

/// Images of cells. Without `edge_images` the map is simplicial and given by
/// its vertex images alone.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MapBody {
    pub vertex_images: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_images: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell_images: Option<BTreeMap<String, Vec<TermDoc>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordDoc {
    pub label: String,
    pub index: i64,
    /// Loop at the basepoint representing the class of the fixed point.
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub complex: ComplexRef,
    #[serde(flatten)]
    pub body: MapBody,
    /// Path from the basepoint to its image.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepath: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub records: Option<Vec<RecordDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
    pub tree: Vec<String>,
    pub basepoint: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportDoc {
    pub map: BTreeMap<String, String>,
    pub inverse: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleDoc {
    pub base: BaseDoc,
    pub fibers: BTreeMap<String, ComplexRef>,
    pub transports: BTreeMap<String, TransportDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseMapDoc {
    pub vertex_images: BTreeMap<String, String>,
    pub edge_words: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDoc {
    pub bundle: BundleDoc,
    pub base_map: BaseMapDoc,
    pub fiber_maps: BTreeMap<String, MapBody>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_map: Option<MapBody>,
}

/// Parses a document, reporting the line and column of syntax and shape
/// errors.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> CliResult<T> {
    Ok(serde_json::from_str(text)?)
}

/// Pretty JSON with a trailing newline.
pub fn render<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// A cell complex with an id for every cell.
#[derive(Debug, Clone)]
pub struct Labeled {
    pub cells: Arc<CellComplex>,
    pub simplicial: Option<Arc<SimplicialComplex>>,
    ids: Vec<Vec<String>>,
    lookup: Vec<HashMap<String, usize>>,
}

fn simplex_id(k: &SimplicialComplex, s: &[usize]) -> String {
    s.iter()
        .map(|&v| k.vertices()[v].as_str())
        .collect::<Vec<_>>()
        .join("-")
}

fn kind(d: usize) -> String {
    match d {
        0 => "vertex".into(),
        1 => "edge".into(),
        d => format!("{d}-cell"),
    }
}

impl Labeled {
    pub fn from_cells(cells: Arc<CellComplex>, ids: Vec<Vec<String>>) -> CliResult<Self> {
        let mut seen = HashSet::new();
        let mut lookup = Vec::new();
        for (d, level) in ids.iter().enumerate() {
            if level.len() != cells.count(d) {
                return Err(CliError::input(format!("expected {} {} ids", cells.count(d), kind(d))));
            }
            let mut m = HashMap::new();
            for (i, id) in level.iter().enumerate() {
                if id.is_empty() || id.ends_with(INVERSE) {
                    return Err(CliError::input(format!("'{id}' is not a usable cell id")));
                }
                if !seen.insert(id.clone()) {
                    return Err(CliError::input(format!("cell id '{id}' is used twice")));
                }
                m.insert(id.clone(), i);
            }
            lookup.push(m);
        }
        Ok(Labeled {
            cells,
            simplicial: None,
            ids,
            lookup,
        })
    }

    pub fn simplicial(k: Arc<SimplicialComplex>) -> CliResult<Self> {
        let cells = k.cells();
        Self::simplicial_with_cells(k, cells)
    }

    /// `cells` must be the cell structure of `k`.
    pub fn simplicial_with_cells(k: Arc<SimplicialComplex>, cells: Arc<CellComplex>) -> CliResult<Self> {
        let top = k.dim().unwrap_or(0);
        let ids = (0..=top)
            .map(|d| k.simplices(d).iter().map(|s| simplex_id(&k, s)).collect())
            .collect();
        let mut out = Self::from_cells(cells, ids)?;
        out.simplicial = Some(k);
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.ids.len().saturating_sub(1)
    }

    pub fn id(&self, d: usize, i: usize) -> &str {
        &self.ids[d][i]
    }

    pub fn index(&self, d: usize, id: &str) -> CliResult<usize> {
        self.lookup
            .get(d)
            .and_then(|m| m.get(id))
            .copied()
            .ok_or_else(|| CliError::input(format!("unknown {} '{id}'", kind(d))))
    }

    /// Reads a path starting at `start`.
    pub fn word(&self, start: usize, refs: &[String]) -> CliResult<EdgePath> {
        let mut p = EdgePath::constant(start);
        for r in refs {
            let (id, forward) = match r.strip_suffix(INVERSE) {
                Some(id) => (id, false),
                None => (r.as_str(), true),
            };
            p.steps.push(Step {
                edge: self.index(1, id)?,
                forward,
            });
        }
        p.validate(&self.cells)?;
        Ok(p)
    }

    pub fn refs(&self, p: &EdgePath) -> Vec<String> {
        p.steps
            .iter()
            .map(|s| {
                let id = self.id(1, s.edge);
                if s.forward {
                    id.to_string()
                } else {
                    format!("{id}{INVERSE}")
                }
            })
            .collect()
    }

    pub fn to_doc(&self) -> ComplexDoc {
        if let Some(k) = &self.simplicial {
            return ComplexDoc {
                vertices: k.vertices().to_vec(),
                simplices: Some(
                    k.maximal_simplices()
                        .iter()
                        .map(|s| s.iter().map(|&v| k.vertices()[v].clone()).collect())
                        .collect(),
                ),
                edges: None,
                cells: None,
            };
        }
        let k = &self.cells;
        let edges = (0..k.edge_count())
            .map(|e| {
                let (s, t) = k.edge(e);
                EdgeDoc {
                    id: self.id(1, e).into(),
                    src: self.id(0, s).into(),
                    dst: self.id(0, t).into(),
                }
            })
            .collect();
        let mut cells = Vec::new();
        for d in 2..=k.dim() {
            for (i, c) in k.cells(d).iter().enumerate() {
                cells.push(CellDoc {
                    id: self.id(d, i).into(),
                    dim: d,
                    anchor: self.id(0, c.anchor).into(),
                    faces: c
                        .faces
                        .iter()
                        .map(|f| FaceDoc {
                            sign: f.sign,
                            cell: self.id(d - 1, f.cell).into(),
                            path: self.refs(&f.path),
                        })
                        .collect(),
                    boundary: c.boundary_loop.as_ref().map(|p| self.refs(p)),
                });
            }
        }
        ComplexDoc {
            vertices: self.ids[0].clone(),
            simplices: None,
            edges: Some(edges),
            cells: (!cells.is_empty()).then_some(cells),
        }
    }
}

fn vertex_lookup(vertices: &[String]) -> CliResult<HashMap<&str, usize>> {
    let mut m = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        if m.insert(v.as_str(), i).is_some() {
            return Err(CliError::input(format!("vertex '{v}' is listed twice")));
        }
    }
    Ok(m)
}

fn lookup_vertex(m: &HashMap<&str, usize>, v: &str) -> CliResult<usize> {
    m.get(v)
        .copied()
        .ok_or_else(|| CliError::input(format!("unknown vertex '{v}'")))
}

impl ComplexDoc {
    pub fn to_labeled(&self) -> CliResult<Labeled> {
        match (&self.simplices, &self.edges, &self.cells) {
            (Some(simplices), None, None) => {
                let m = vertex_lookup(&self.vertices)?;
                let maximal = simplices
                    .iter()
                    .map(|s| s.iter().map(|v| lookup_vertex(&m, v)).collect::<CliResult<Vec<_>>>())
                    .collect::<CliResult<Vec<_>>>()
                    .map_err(|e| e.at("simplices"))?;
                let k = SimplicialComplex::new(self.vertices.clone(), &maximal)?;
                Labeled::simplicial(Arc::new(k))
            }
            (None, Some(edges), _) => self.cell_complex(edges),
            (Some(_), _, _) => Err(CliError::input("give either simplices or edges and cells, not both")),
            (None, None, _) => Err(CliError::input("a complex needs simplices, or edges and cells")),
        }
    }

    fn cell_complex(&self, edges: &[EdgeDoc]) -> CliResult<Labeled> {
        let m = vertex_lookup(&self.vertices)?;
        let pairs = edges
            .iter()
            .map(|e| Ok((lookup_vertex(&m, &e.src)?, lookup_vertex(&m, &e.dst)?)))
            .collect::<CliResult<Vec<_>>>()
            .map_err(|e| e.at("edges"))?;
        let cells = self.cells.clone().unwrap_or_default();
        let top = cells.iter().map(|c| c.dim).max().unwrap_or(1);
        let mut ids: Vec<Vec<String>> = vec![self.vertices.clone(), edges.iter().map(|e| e.id.clone()).collect()];
        for d in 2..=top {
            ids.push(cells.iter().filter(|c| c.dim == d).map(|c| c.id.clone()).collect());
        }
        if let Some(c) = cells.iter().find(|c| c.dim < 2) {
            return Err(CliError::input(format!("cells: '{}' has dimension below 2", c.id)));
        }
        // a skeleton carries the ids and paths while higher cells are read
        let skeleton = Arc::new(CellComplex::new(self.vertices.clone(), pairs.clone(), Vec::new())?);
        let names = Labeled::from_cells(skeleton, ids[..2].to_vec())?;
        let mut higher: Vec<Vec<Cell>> = vec![Vec::new(); top.saturating_sub(1)];
        let mut index: Vec<HashMap<&str, usize>> = vec![HashMap::new(); top + 1];
        for c in &cells {
            let next = index[c.dim].len();
            index[c.dim].insert(c.id.as_str(), next);
        }
        for c in &cells {
            let at = |e: CliError| e.at(&format!("cells.{}", c.id));
            let anchor = lookup_vertex(&m, &c.anchor).map_err(at)?;
            let faces = c
                .faces
                .iter()
                .map(|f| {
                    let cell = if c.dim == 2 {
                        names.index(1, &f.cell)?
                    } else {
                        *index[c.dim - 1]
                            .get(f.cell.as_str())
                            .ok_or_else(|| CliError::input(format!("unknown face '{}'", f.cell)))?
                    };
                    Ok(Face {
                        sign: f.sign,
                        cell,
                        path: names.word(anchor, &f.path)?,
                    })
                })
                .collect::<CliResult<Vec<_>>>()
                .map_err(at)?;
            let boundary_loop = match &c.boundary {
                Some(w) => Some(names.word(anchor, w).map_err(at)?),
                None => None,
            };
            higher[c.dim - 2].push(Cell {
                anchor,
                faces,
                boundary_loop,
            });
        }
        let k = Arc::new(CellComplex::new(self.vertices.clone(), pairs, higher)?);
        ids.truncate(k.dim().max(1) + 1);
        Labeled::from_cells(k, ids)
    }
}

/// Resolves a complex reference through `named`.
pub fn resolve(r: &ComplexRef, named: &dyn Fn(&str) -> CliResult<Labeled>) -> CliResult<Labeled> {
    match r {
        ComplexRef::Named(n) => named(n),
        ComplexRef::Inline(d) => d.to_labeled(),
    }
}

fn vertex_images(src: &Labeled, tgt: &Labeled, images: &BTreeMap<String, String>) -> CliResult<Vec<usize>> {
    for v in images.keys() {
        src.index(0, v)?;
    }
    (0..src.cells.vertex_count())
        .map(|v| {
            let id = src.id(0, v);
            let image = images
                .get(id)
                .ok_or_else(|| CliError::input(format!("no image for vertex '{id}'")))?;
            tgt.index(0, image)
        })
        .collect()
}

impl MapBody {
    pub fn to_map(&self, src: &Labeled, tgt: &Labeled) -> CliResult<CellularMap> {
        let vs = vertex_images(src, tgt, &self.vertex_images).map_err(|e| e.at("vertex_images"))?;
        let Some(edge_images) = &self.edge_images else {
            let (Some(s), Some(t)) = (&src.simplicial, &tgt.simplicial) else {
                return Err(CliError::input("edge_images are required between cell complexes"));
            };
            let f = SimplicialMap::new(s.clone(), t.clone(), vs)?;
            return Ok(f.cellular(src.cells.clone(), tgt.cells.clone()));
        };
        let k = &src.cells;
        for e in edge_images.keys() {
            src.index(1, e).map_err(|e| e.at("edge_images"))?;
        }
        let edges = (0..k.edge_count())
            .map(|e| {
                let id = src.id(1, e);
                let w = edge_images
                    .get(id)
                    .ok_or_else(|| CliError::input(format!("no image for edge '{id}'")))?;
                tgt.word(vs[k.edge(e).0], w).map_err(|err| err.at(id))
            })
            .collect::<CliResult<Vec<_>>>()
            .map_err(|e| e.at("edge_images"))?;
        let empty = BTreeMap::new();
        let cell_images = self.cell_images.as_ref().unwrap_or(&empty);
        for c in cell_images.keys() {
            if !(2..=src.dim()).any(|d| src.index(d, c).is_ok()) {
                return Err(CliError::input(format!("cell_images: unknown cell '{c}'")));
            }
        }
        let mut higher = Vec::new();
        for d in 2..=k.dim() {
            let level = (0..k.count(d))
                .map(|i| {
                    let id = src.id(d, i);
                    let terms = cell_images
                        .get(id)
                        .ok_or_else(|| CliError::input(format!("no image for cell '{id}'")))?;
                    terms
                        .iter()
                        .map(|t| {
                            Ok(ImageTerm {
                                coeff: t.coeff,
                                cell: tgt.index(d, &t.cell)?,
                                path: tgt.word(vs[k.anchor(d, i)], &t.path)?,
                            })
                        })
                        .collect::<CliResult<Vec<_>>>()
                        .map_err(|e| e.at(id))
                })
                .collect::<CliResult<Vec<_>>>()
                .map_err(|e| e.at("cell_images"))?;
            higher.push(level);
        }
        Ok(CellularMap::new(
            src.cells.clone(),
            tgt.cells.clone(),
            vs,
            edges,
            higher,
        )?)
    }

    /// Writes vertex images only when the map is the simplicial map they
    /// determine.
    pub fn from_map(src: &Labeled, tgt: &Labeled, f: &CellularMap) -> MapBody {
        let vertex_images = (0..src.cells.vertex_count())
            .map(|v| (src.id(0, v).to_string(), tgt.id(0, f.vertex_image(v)).to_string()))
            .collect();
        if let (Some(s), Some(t)) = (&src.simplicial, &tgt.simplicial) {
            if let Ok(g) = SimplicialMap::new(s.clone(), t.clone(), f.vertex_images().to_vec()) {
                if g.cellular(src.cells.clone(), tgt.cells.clone()) == *f {
                    return MapBody {
                        vertex_images,
                        edge_images: None,
                        cell_images: None,
                    };
                }
            }
        }
        let k = &src.cells;
        let edge_images = (0..k.edge_count())
            .map(|e| (src.id(1, e).to_string(), tgt.refs(f.edge_image(e))))
            .collect();
        let mut cells = BTreeMap::new();
        for d in 2..=k.dim() {
            for i in 0..k.count(d) {
                let terms = f
                    .image_terms(d, i)
                    .iter()
                    .map(|t| TermDoc {
                        coeff: t.coeff,
                        cell: tgt.id(d, t.cell).to_string(),
                        path: tgt.refs(&t.path),
                    })
                    .collect();
                cells.insert(src.id(d, i).to_string(), terms);
            }
        }
        MapBody {
            vertex_images,
            edge_images: Some(edge_images),
            cell_images: (k.dim() >= 2).then_some(cells),
        }
    }
}

/// A bundle with ids for the cells of its base and fibers.
#[derive(Debug, Clone)]
pub struct ParsedBundle {
    pub bundle: Arc<DiscreteBundle>,
    pub base: Labeled,
    pub fibers: Vec<Labeled>,
    pub notes: Vec<String>,
}

fn base_labels(base: &GraphBase) -> CliResult<Labeled> {
    let k = base.complex();
    let vertices = (0..k.vertex_count())
        .map(|v| base.vertex_label(v).to_string())
        .collect();
    Labeled::from_cells(k.clone(), vec![vertices, base.edge_labels().to_vec()])
}

fn fiber_labels(bundle: &DiscreteBundle) -> CliResult<Vec<Labeled>> {
    (0..bundle.base().vertex_count())
        .map(|b| Labeled::simplicial_with_cells(bundle.fiber(b).clone(), bundle.fiber_cells(b).clone()))
        .collect()
}

fn spanning_tree(k: &CellComplex, tree: &[usize]) -> bool {
    let mut parent: Vec<usize> = (0..k.vertex_count()).collect();
    fn root(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for &e in tree {
        let (a, b) = k.edge(e);
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    tree.len() + 1 == k.vertex_count()
}

fn transport(src: &Labeled, tgt: &Labeled, images: &BTreeMap<String, String>) -> CliResult<SimplicialMap> {
    let vs = vertex_images(src, tgt, images)?;
    let (s, t) = (src.simplicial.clone(), tgt.simplicial.clone());
    Ok(SimplicialMap::new(
        s.expect("fibers are simplicial"),
        t.expect("fibers are simplicial"),
        vs,
    )?)
}

impl BundleDoc {
    pub fn to_bundle(&self, named: &dyn Fn(&str) -> CliResult<Labeled>) -> CliResult<ParsedBundle> {
        let b = &self.base;
        if b.vertices.first() != Some(&b.basepoint) {
            return Err(CliError::input(
                "base.basepoint: the basepoint must be the first vertex",
            ));
        }
        let m = vertex_lookup(&b.vertices).map_err(|e| e.at("base.vertices"))?;
        let edges = b
            .edges
            .iter()
            .map(|e| Ok((lookup_vertex(&m, &e.src)?, lookup_vertex(&m, &e.dst)?)))
            .collect::<CliResult<Vec<_>>>()
            .map_err(|e| e.at("base.edges"))?;
        let labels = b.edges.iter().map(|e| e.id.clone()).collect();
        let base = GraphBase::new(b.vertices.clone(), edges, Some(labels))?;
        let base_ids = base_labels(&base).map_err(|e| e.at("base"))?;
        let tree = b
            .tree
            .iter()
            .map(|e| base_ids.index(1, e))
            .collect::<CliResult<Vec<_>>>()
            .map_err(|e| e.at("base.tree"))?;
        if !spanning_tree(base.complex(), &tree) {
            return Err(CliError::input("base.tree: not a spanning tree of the base"));
        }
        let mut notes = Vec::new();
        let canonical: Vec<usize> = (0..base.edge_count())
            .filter(|&e| base.presentation().is_tree_edge(e))
            .collect();
        let mut sorted = tree.clone();
        sorted.sort_unstable();
        if sorted != canonical {
            let ids: Vec<&str> = canonical.iter().map(|&e| base.edge_label(e)).collect();
            notes.push(format!("class paths are written with the breadth-first tree {ids:?}"));
        }

        for v in self.fibers.keys() {
            base_ids.index(0, v).map_err(|e| e.at("fibers"))?;
        }
        let mut distinct: Vec<(&ComplexRef, Labeled)> = Vec::new();
        let mut fibers = Vec::new();
        for v in 0..base.vertex_count() {
            let id = base.vertex_label(v);
            let r = self
                .fibers
                .get(id)
                .ok_or_else(|| CliError::input(format!("fibers: no fiber over '{id}'")))?;
            let l = match distinct.iter().find(|(d, _)| *d == r) {
                Some((_, l)) => l.clone(),
                None => {
                    let l = resolve(r, named).map_err(|e| e.at(&format!("fibers.{id}")))?;
                    if l.simplicial.is_none() {
                        return Err(CliError::input(format!("fibers.{id}: fibers must be simplicial")));
                    }
                    distinct.push((r, l.clone()));
                    l
                }
            };
            fibers.push(l);
        }

        for e in self.transports.keys() {
            base_ids.index(1, e).map_err(|e| e.at("transports"))?;
        }
        let mut maps = Vec::new();
        let mut inverses = Vec::new();
        for e in 0..base.edge_count() {
            let id = base.edge_label(e);
            let at = |err: CliError| err.at(&format!("transports.{id}"));
            let t = self
                .transports
                .get(id)
                .ok_or_else(|| CliError::input(format!("no transport over '{id}'")))
                .map_err(at)?;
            let (s, d) = base.edge(e);
            maps.push(
                transport(&fibers[s], &fibers[d], &t.map)
                    .map_err(|e| e.at("map"))
                    .map_err(at)?,
            );
            inverses.push(
                transport(&fibers[d], &fibers[s], &t.inverse)
                    .map_err(|e| e.at("inverse"))
                    .map_err(at)?,
            );
        }
        let spaces = fibers
            .iter()
            .map(|l| l.simplicial.clone().expect("simplicial"))
            .collect();
        let bundle = Arc::new(DiscreteBundle::new(base, spaces, maps, inverses)?);
        let fibers = fiber_labels(&bundle)?;
        Ok(ParsedBundle {
            base: base_ids,
            bundle,
            fibers,
            notes,
        })
    }

    pub fn from_bundle(bundle: &DiscreteBundle) -> BundleDoc {
        let base = bundle.base();
        let k = base.complex();
        let fibers = fiber_labels(bundle).expect("fiber ids");
        let map = |f: &SimplicialMap, s: &Labeled, t: &Labeled| {
            f.vertex_images()
                .iter()
                .enumerate()
                .map(|(v, &w)| (s.id(0, v).to_string(), t.id(0, w).to_string()))
                .collect()
        };
        BundleDoc {
            base: BaseDoc {
                vertices: (0..k.vertex_count())
                    .map(|v| base.vertex_label(v).to_string())
                    .collect(),
                edges: (0..k.edge_count())
                    .map(|e| {
                        let (s, t) = k.edge(e);
                        EdgeDoc {
                            id: base.edge_label(e).into(),
                            src: base.vertex_label(s).into(),
                            dst: base.vertex_label(t).into(),
                        }
                    })
                    .collect(),
                tree: (0..k.edge_count())
                    .filter(|&e| base.presentation().is_tree_edge(e))
                    .map(|e| base.edge_label(e).to_string())
                    .collect(),
                basepoint: base.vertex_label(base.basepoint()).into(),
            },
            fibers: (0..k.vertex_count())
                .map(|b| (base.vertex_label(b).to_string(), ComplexRef::Inline(fibers[b].to_doc())))
                .collect(),
            transports: (0..k.edge_count())
                .map(|e| {
                    let (s, t) = k.edge(e);
                    let doc = TransportDoc {
                        map: map(bundle.edge_transport(e), &fibers[s], &fibers[t]),
                        inverse: map(bundle.edge_inverse(e), &fibers[t], &fibers[s]),
                    };
                    (base.edge_label(e).to_string(), doc)
                })
                .collect(),
        }
    }
}

/// Ids for the total space: `b/σ` for fiber cells and `e/τ` for prisms.
pub fn total_labels(space: &TotalSpace, base: &Labeled, fibers: &[Labeled]) -> CliResult<Labeled> {
    let k = space.complex();
    let bundle = space.bundle();
    let g = bundle.base();
    let mut ids = vec![Vec::new(); k.dim() + 1];
    for (d, level) in ids.iter_mut().enumerate() {
        *level = vec![String::new(); k.count(d)];
        for b in 0..g.vertex_count() {
            for i in 0..bundle.fiber(b).count(d) {
                level[space.fiber_cell(d, b, i)] = format!("{}/{}", base.id(0, b), fibers[b].id(d, i));
            }
        }
        if d > 0 {
            for e in 0..g.edge_count() {
                let s = g.edge(e).0;
                for i in 0..bundle.fiber(s).count(d - 1) {
                    level[space.prism_cell(d, e, i)] = format!("{}/{}", base.id(1, e), fibers[s].id(d - 1, i));
                }
            }
        }
    }
    Labeled::from_cells(k.clone(), ids)
}

#[derive(Debug)]
pub struct ParsedPair {
    pub pair: BundleSelfMapPair,
    pub notes: Vec<String>,
}

impl PairDoc {
    pub fn to_pair(&self, depth: usize, named: &dyn Fn(&str) -> CliResult<Labeled>) -> CliResult<ParsedPair> {
        let parsed = self.bundle.to_bundle(named).map_err(|e| e.at("bundle"))?;
        let ParsedBundle {
            bundle,
            base,
            fibers,
            notes,
        } = parsed;
        let body = MapBody {
            vertex_images: self.base_map.vertex_images.clone(),
            edge_images: Some(self.base_map.edge_words.clone()),
            cell_images: None,
        };
        let fbar = body.to_map(&base, &base).map_err(|e| e.at("base_map"))?;
        for v in self.fiber_maps.keys() {
            base.index(0, v).map_err(|e| e.at("fiber_maps"))?;
        }
        let fiber_maps = (0..base.cells.vertex_count())
            .map(|b| {
                let id = base.id(0, b);
                let body = self
                    .fiber_maps
                    .get(id)
                    .ok_or_else(|| CliError::input(format!("no fiber map over '{id}'")))?;
                body.to_map(&fibers[b], &fibers[fbar.vertex_image(b)])
                    .map_err(|e| e.at(id))
            })
            .collect::<CliResult<Vec<_>>>()
            .map_err(|e| e.at("fiber_maps"))?;
        let total = match &self.total_map {
            Some(body) => {
                let space = TotalSpace::new(bundle.clone())?;
                let ids = total_labels(&space, &base, &fibers)?;
                Some(body.to_map(&ids, &ids).map_err(|e| e.at("total_map"))?)
            }
            None => None,
        };
        let pair = BundleSelfMapPair::new(bundle, fbar, fiber_maps, total, depth)?;
        Ok(ParsedPair { pair, notes })
    }

    pub fn from_pair(pair: &BundleSelfMapPair) -> PairDoc {
        let bundle = pair.bundle();
        let base = base_labels(bundle.base()).expect("base ids");
        let fibers = fiber_labels(bundle).expect("fiber ids");
        let fbar = pair.base_map();
        let body = MapBody::from_map(&base, &base, fbar);
        let edge_words = body.edge_images.expect("base maps carry edge words");
        let fiber_maps = pair
            .fiber_maps()
            .iter()
            .enumerate()
            .map(|(b, f)| {
                let t = fbar.vertex_image(b);
                (base.id(0, b).to_string(), MapBody::from_map(&fibers[b], &fibers[t], f))
            })
            .collect();
        let total_map = pair.total_map_supplied().then(|| {
            let ids = total_labels(pair.total_space(), &base, &fibers).expect("total ids");
            MapBody::from_map(&ids, &ids, pair.total_map())
        });
        PairDoc {
            bundle: BundleDoc::from_bundle(bundle),
            base_map: BaseMapDoc {
                vertex_images: body.vertex_images,
                edge_words,
            },
            fiber_maps,
            total_map,
        }
    }
}
