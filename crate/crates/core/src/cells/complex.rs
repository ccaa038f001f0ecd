use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::{ChainComplex, IntMatrix};

/// One traversal of an edge, forward meaning from its start to its end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub edge: usize,
    pub forward: bool,
}

impl Step {
    pub fn inverse(self) -> Step {
        Step {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

/// Edge path in the 1-skeleton, kept freely reduced (no `e e⁻¹` pairs).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgePath {
    pub start: usize,
    pub steps: Vec<Step>,
}

impl EdgePath {
    pub fn constant(v: usize) -> Self {
        EdgePath {
            start: v,
            steps: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn push(&mut self, step: Step) {
        if self.steps.last().is_some_and(|&last| last == step.inverse()) {
            self.steps.pop();
        } else {
            self.steps.push(step);
        }
    }

    pub fn end(&self, k: &CellComplex) -> usize {
        self.steps.iter().fold(self.start, |_, s| k.step_end(*s))
    }

    /// Concatenation `self · other`; `other` must start where `self` ends.
    pub fn then(&self, other: &EdgePath) -> EdgePath {
        let mut out = self.clone();
        for &s in &other.steps {
            out.push(s);
        }
        out
    }

    pub fn reversed(&self, k: &CellComplex) -> EdgePath {
        EdgePath {
            start: self.end(k),
            steps: self.steps.iter().rev().map(|s| s.inverse()).collect(),
        }
    }

    /// Checks that consecutive steps chain and returns the end vertex.
    pub fn validate(&self, k: &CellComplex) -> Result<usize> {
        if self.start >= k.vertex_count() {
            return Err(Error::InvalidPath(format!("start vertex {} out of range", self.start)));
        }
        let mut at = self.start;
        for (i, s) in self.steps.iter().enumerate() {
            if s.edge >= k.edge_count() {
                return Err(Error::InvalidPath(format!("edge {} out of range", s.edge)));
            }
            if k.step_start(*s) != at {
                return Err(Error::InvalidPath(format!(
                    "step {} leaves from {} but the path is at {}",
                    i,
                    k.vertex_label(k.step_start(*s)),
                    k.vertex_label(at)
                )));
            }
            at = k.step_end(*s);
        }
        Ok(at)
    }
}

/// Boundary term of a cell: `sign · face`, located by a path from the cell's
/// anchor vertex to the face's anchor vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub sign: i64,
    pub cell: usize,
    pub path: EdgePath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub anchor: usize,
    pub faces: Vec<Face>,
    /// Boundary loop from the anchor, required for 2-cells.
    pub boundary_loop: Option<EdgePath>,
}

/// Finite cell complex whose cells carry anchor vertices and anchored boundary
/// paths, enough to lift cellular chains to the universal cover.
///
/// Edges have a start and an end (possibly equal); cells of dimension two and
/// up are listed explicitly.
#[derive(Clone, PartialEq, Eq)]
pub struct CellComplex {
    vertex_labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    /// `higher[d - 2]` holds the `d`-cells.
    higher: Vec<Vec<Cell>>,
}

impl fmt::Debug for CellComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<usize> = (0..=self.dim()).map(|d| self.count(d)).collect();
        write!(f, "CellComplex(cells per dimension: {counts:?})")
    }
}

impl CellComplex {
    /// Validates endpoints, anchored paths, loops and `∂∂ = 0`.
    pub fn new(vertex_labels: Vec<String>, edges: Vec<(usize, usize)>, mut higher: Vec<Vec<Cell>>) -> Result<Self> {
        while higher.last().is_some_and(Vec::is_empty) {
            higher.pop();
        }
        let k = CellComplex {
            vertex_labels,
            edges,
            higher,
        };
        k.validate()?;
        Ok(k)
    }

    fn validate(&self) -> Result<()> {
        let n = self.vertex_count();
        for (i, &(s, t)) in self.edges.iter().enumerate() {
            if s >= n || t >= n {
                return Err(Error::InvalidComplex(format!("edge {i} has an endpoint out of range")));
            }
        }
        for d in 2..=self.dim() {
            for (i, cell) in self.cells(d).iter().enumerate() {
                if cell.anchor >= n {
                    return Err(Error::InvalidComplex(format!("{d}-cell {i} anchor out of range")));
                }
                for face in &cell.faces {
                    if face.cell >= self.count(d - 1) {
                        return Err(Error::InvalidComplex(format!("{d}-cell {i} has a face out of range")));
                    }
                    if face.path.start != cell.anchor || face.path.validate(self)? != self.anchor(d - 1, face.cell) {
                        return Err(Error::InvalidComplex(format!(
                            "{d}-cell {i}: face path does not join the anchors"
                        )));
                    }
                }
                if d == 2 {
                    self.validate_loop(i, cell)?;
                }
            }
        }
        self.chain_complex().map(|_| ())
    }

    fn validate_loop(&self, i: usize, cell: &Cell) -> Result<()> {
        let lp = cell
            .boundary_loop
            .as_ref()
            .ok_or_else(|| Error::InvalidComplex(format!("2-cell {i} has no boundary loop")))?;
        if lp.start != cell.anchor || lp.validate(self)? != cell.anchor {
            return Err(Error::InvalidComplex(format!(
                "2-cell {i}: boundary loop is not closed at the anchor"
            )));
        }
        let mut from_loop = vec![0i64; self.edge_count()];
        for s in &lp.steps {
            from_loop[s.edge] += if s.forward { 1 } else { -1 };
        }
        let mut from_faces = vec![0i64; self.edge_count()];
        for f in &cell.faces {
            from_faces[f.cell] += f.sign;
        }
        if from_loop != from_faces {
            return Err(Error::InvalidComplex(format!(
                "2-cell {i}: boundary loop disagrees with faces"
            )));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertex_labels[v]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertex_labels.iter().position(|l| l == label)
    }

    pub fn dim(&self) -> usize {
        if !self.higher.is_empty() {
            self.higher.len() + 1
        } else if !self.edges.is_empty() {
            1
        } else {
            0
        }
    }

    pub fn count(&self, d: usize) -> usize {
        match d {
            0 => self.vertex_count(),
            1 => self.edge_count(),
            _ => self.higher.get(d - 2).map_or(0, Vec::len),
        }
    }

    /// Cells of dimension `d ≥ 2`.
    pub fn cells(&self, d: usize) -> &[Cell] {
        assert!(d >= 2);
        self.higher.get(d - 2).map_or(&[], Vec::as_slice)
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn step_start(&self, s: Step) -> usize {
        let (a, b) = self.edges[s.edge];
        if s.forward {
            a
        } else {
            b
        }
    }

    pub fn step_end(&self, s: Step) -> usize {
        let (a, b) = self.edges[s.edge];
        if s.forward {
            b
        } else {
            a
        }
    }

    /// Anchor vertex of a cell: the vertex itself, the start of an edge, or the
    /// declared anchor of a higher cell.
    pub fn anchor(&self, d: usize, i: usize) -> usize {
        match d {
            0 => i,
            1 => self.edges[i].0,
            _ => self.cells(d)[i].anchor,
        }
    }

    /// Anchored boundary terms of any cell.
    pub fn faces(&self, d: usize, i: usize) -> Vec<Face> {
        match d {
            0 => Vec::new(),
            1 => {
                let (s, t) = self.edges[i];
                vec![
                    Face {
                        sign: 1,
                        cell: t,
                        path: EdgePath {
                            start: s,
                            steps: vec![Step { edge: i, forward: true }],
                        },
                    },
                    Face {
                        sign: -1,
                        cell: s,
                        path: EdgePath::constant(s),
                    },
                ]
            }
            _ => self.cells(d)[i].faces.clone(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim())
            .map(|d| {
                if d % 2 == 0 {
                    self.count(d) as i64
                } else {
                    -(self.count(d) as i64)
                }
            })
            .sum()
    }

    /// Integral cellular chain complex.
    pub fn chain_complex(&self) -> Result<ChainComplex> {
        let dim = self.dim();
        let ranks: Vec<usize> = (0..=dim).map(|d| self.count(d)).collect();
        let boundaries = (1..=dim)
            .map(|d| {
                let mut m = IntMatrix::zeros(self.count(d - 1), self.count(d));
                for j in 0..self.count(d) {
                    for f in self.faces(d, j) {
                        m[(f.cell, j)] += BigInt::from(f.sign);
                    }
                }
                m
            })
            .collect();
        ChainComplex::new(ranks, boundaries)
    }

    /// Edges incident to `v` as outgoing steps, in edge order (forward before
    /// backward for each edge).
    pub fn steps_from(&self, v: usize) -> Vec<Step> {
        let mut out = Vec::new();
        for (e, &(s, t)) in self.edges.iter().enumerate() {
            if s == v {
                out.push(Step { edge: e, forward: true });
            }
            if t == v {
                out.push(Step {
                    edge: e,
                    forward: false,
                });
            }
        }
        out
    }

    /// Connected component label of each vertex, numbered by least vertex.
    pub fn vertex_components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        let adj = self.adjacency();
        for root in 0..n {
            if comp[root] != usize::MAX {
                continue;
            }
            comp[root] = next;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for s in &adj[v] {
                    let w = self.step_end(*s);
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.vertex_components().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Least vertex of every component.
    pub fn component_roots(&self) -> Vec<usize> {
        let comp = self.vertex_components();
        let mut roots = Vec::new();
        for (v, &c) in comp.iter().enumerate() {
            if c == roots.len() {
                roots.push(v);
            }
        }
        roots
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<Step>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (e, &(s, t)) in self.edges.iter().enumerate() {
            adj[s].push(Step { edge: e, forward: true });
            adj[t].push(Step {
                edge: e,
                forward: false,
            });
        }
        adj
    }

    /// Breadth-first path between two vertices, or `None` if disconnected.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<EdgePath> {
        let adj = self.adjacency();
        let mut prev: Vec<Option<Step>> = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &s in &adj[v] {
                let w = self.step_end(s);
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some(s);
                    queue.push_back(w);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut steps = Vec::new();
        let mut at = to;
        while at != from {
            let s = prev[at].expect("reached vertex has a predecessor");
            steps.push(s);
            at = self.step_start(s);
        }
        steps.reverse();
        Some(EdgePath { start: from, steps })
    }

    /// Finds the edge joining `a` to `b` as a step.
    pub fn step_between(&self, a: usize, b: usize) -> Option<Step> {
        self.edges.iter().enumerate().find_map(|(e, &(s, t))| {
            if s == a && t == b {
                Some(Step { edge: e, forward: true })
            } else if s == b && t == a {
                Some(Step {
                    edge: e,
                    forward: false,
                })
            } else {
                None
            }
        })
    }

    /// Path through a sequence of vertices, each consecutive pair adjacent or equal.
    pub fn path_through(&self, vertices: &[usize]) -> Result<EdgePath> {
        let Some(&first) = vertices.first() else {
            return Err(Error::InvalidPath("empty vertex sequence".into()));
        };
        let mut path = EdgePath::constant(first);
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                continue;
            }
            let s = self.step_between(w[0], w[1]).ok_or_else(|| {
                Error::InvalidPath(format!(
                    "{} and {} are not adjacent",
                    self.vertex_label(w[0]),
                    self.vertex_label(w[1])
                ))
            })?;
            path.push(s);
        }
        Ok(path)
    }
}
