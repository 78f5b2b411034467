//! Labeled Reeb graphs of maps into the line or the circle.
//!
//! Vertices sit at singular values and carry an exact rational height;
//! edges carry the fiber class sweeping between their endpoints. On the
//! circle an edge runs from its bottom vertex counterclockwise (heights
//! increasing mod 1) to its top vertex, and a vertexless cycle models a
//! bundle with no singular values. Heights are authoritative on the line;
//! on the circle they are advisory and the bottom/top orientation of each
//! edge is what counts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Rational64;

use crate::exactlin::{CoefficientRing, Element, Presentation};
use crate::symbols::{ManifoldClass, SymbolTable};
use crate::{Error, Result};

pub type Height = Rational64;

pub fn height(numer: i64, denom: i64) -> Height {
    Height::new(numer, denom)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Line,
    Circle,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Line => write!(f, "line"),
            Target::Circle => write!(f, "circle"),
        }
    }
}

/// How a singular value sits over its critical set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Singularity {
    Morse,
    MorseBott,
    GenericFinite,
}

impl Singularity {
    pub fn parse(text: &str) -> Option<Singularity> {
        match text {
            "morse" => Some(Singularity::Morse),
            "morse-bott" => Some(Singularity::MorseBott),
            "generic" => Some(Singularity::GenericFinite),
            _ => None,
        }
    }
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Singularity::Morse => write!(f, "morse"),
            Singularity::MorseBott => write!(f, "morse-bott"),
            Singularity::GenericFinite => write!(f, "generic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub height: Height,
    pub sing: Singularity,
}

/// Edge endpoints: two vertices, or a vertexless cycle over the circle.
/// A half-open edge is not representable; an edge that names a missing
/// vertex id is caught by [`ReebGraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeEnds {
    Between { bottom: String, top: String },
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub ends: EdgeEnds,
    pub label: ManifoldClass,
}

impl Edge {
    pub fn bottom(&self) -> Option<&str> {
        match &self.ends {
            EdgeEnds::Between { bottom, .. } => Some(bottom),
            EdgeEnds::Cycle => None,
        }
    }

    pub fn top(&self) -> Option<&str> {
        match &self.ends {
            EdgeEnds::Between { top, .. } => Some(top),
            EdgeEnds::Cycle => None,
        }
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self.ends, EdgeEnds::Cycle)
    }
}

/// A single validation finding, attached to the entity that caused it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub locus: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.locus, self.message)
    }
}

pub fn render_diagnostics(list: &[Diagnostic]) -> String {
    list.iter()
        .map(|d| format!("  - {d}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Connected-component structure: `vertex_comp[i]` is the component of
/// vertex `i`, `edge_comp[j]` of edge `j`. Every vertexless cycle is its
/// own component.
#[derive(Clone, Debug)]
pub struct Components {
    pub count: usize,
    pub vertex_comp: Vec<usize>,
    pub edge_comp: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReebGraph {
    pub target: Target,
    symbols: SymbolTable,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    /// Permit several components (products are built piecewise).
    pub allow_disconnected: bool,
    /// Stable maps have pairwise distinct singular values.
    pub stable: bool,
}

impl ReebGraph {
    pub fn new(target: Target, symbols: SymbolTable) -> Self {
        ReebGraph {
            target,
            symbols,
            vertices: Vec::new(),
            edges: Vec::new(),
            allow_disconnected: false,
            stable: false,
        }
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn add_vertex(&mut self, id: &str, height: Height, sing: Singularity) -> Result<()> {
        if self.vertex(id).is_some() {
            return Err(Error::DuplicateVertex(id.to_string()));
        }
        self.vertices.push(Vertex {
            id: id.to_string(),
            height,
            sing,
        });
        Ok(())
    }

    pub fn add_edge(&mut self, id: &str, bottom: &str, top: &str, label: ManifoldClass) -> Result<()> {
        if self.edge(id).is_some() {
            return Err(Error::DuplicateEdge(id.to_string()));
        }
        self.edges.push(Edge {
            id: id.to_string(),
            ends: EdgeEnds::Between {
                bottom: bottom.to_string(),
                top: top.to_string(),
            },
            label,
        });
        Ok(())
    }

    pub fn add_cycle_edge(&mut self, id: &str, label: ManifoldClass) -> Result<()> {
        if self.edge(id).is_some() {
            return Err(Error::DuplicateEdge(id.to_string()));
        }
        self.edges.push(Edge {
            id: id.to_string(),
            ends: EdgeEnds::Cycle,
            label,
        });
        Ok(())
    }

    pub(crate) fn edges_mut(&mut self) -> &mut Vec<Edge> {
        &mut self.edges
    }

    /// Edges arriving at `v` from below (their top end is `v`).
    pub fn edges_below(&self, v: &str) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.top() == Some(v)).collect()
    }

    /// Edges leaving `v` upward (their bottom end is `v`).
    pub fn edges_above(&self, v: &str) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.bottom() == Some(v)).collect()
    }

    /// Distinct fiber classes appearing on edges, sorted.
    pub fn fiber_labels(&self) -> BTreeSet<ManifoldClass> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }

    /// Common dimension of the fiber classes, when there is an edge.
    pub fn fiber_dimension(&self) -> Option<u32> {
        self.edges.first().map(|e| self.symbols.dimension(&e.label))
    }

    /// All invariant checks. An empty list means the graph is valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        self.validate_inner(true)
    }

    fn validate_inner(&self, check_connectivity: bool) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut push = |locus: &str, message: String| {
            out.push(Diagnostic {
                locus: locus.to_string(),
                message,
            });
        };
        let mut dim: Option<(u32, &str)> = None;
        for e in &self.edges {
            let locus = format!("edge {}", e.id);
            for name in e.label.factors() {
                if self.symbols.atom(name).is_none() {
                    push(&locus, format!("label uses unknown atom `{name}`"));
                }
            }
            match self.symbols.recanonicalize(&e.label) {
                Ok(c) if c == e.label => {}
                Ok(_) => push(&locus, "label not in canonical form".to_string()),
                Err(_) => {}
            }
            if e.label.factors().iter().all(|n| self.symbols.atom(n).is_some()) {
                let d = self.symbols.dimension(&e.label);
                match dim {
                    None => dim = Some((d, e.id.as_str())),
                    Some((d0, first)) if d0 != d => push(
                        &locus,
                        format!("inhomogeneous fiber dimension ({d} vs {d0} on edge {first})"),
                    ),
                    _ => {}
                }
            }
            match (&self.target, &e.ends) {
                (Target::Line, EdgeEnds::Cycle) => {
                    push(&locus, "cyclic edge on line target".to_string());
                }
                (Target::Line, EdgeEnds::Between { bottom, top }) => {
                    let b = self.vertex(bottom);
                    let t = self.vertex(top);
                    if b.is_none() || t.is_none() {
                        push(&locus, format!("open edge {} on line target", e.id));
                    } else if let (Some(b), Some(t)) = (b, t) {
                        if b.height >= t.height {
                            push(
                                &locus,
                                format!(
                                    "bottom height {} is not below top height {}",
                                    b.height, t.height
                                ),
                            );
                        }
                    }
                }
                (Target::Circle, EdgeEnds::Between { bottom, top }) => {
                    if self.vertex(bottom).is_none() || self.vertex(top).is_none() {
                        push(&locus, format!("open edge {} on circle target", e.id));
                    }
                }
                (Target::Circle, EdgeEnds::Cycle) => {}
            }
        }
        if self.target == Target::Line && self.vertices.is_empty() {
            push("graph", "line target needs at least one vertex".to_string());
        }
        if self.target == Target::Circle {
            for v in &self.vertices {
                if v.height < Height::from_integer(0) || v.height >= Height::from_integer(1) {
                    push(
                        &format!("vertex {}", v.id),
                        format!("height {} outside [0, 1)", v.height),
                    );
                }
            }
        }
        for v in &self.vertices {
            let touched = self
                .edges
                .iter()
                .any(|e| e.bottom() == Some(v.id.as_str()) || e.top() == Some(v.id.as_str()));
            if !touched {
                push(
                    &format!("vertex {}", v.id),
                    "isolated vertex (no incident edges)".to_string(),
                );
            }
        }
        if self.stable {
            let mut seen: BTreeMap<Height, &str> = BTreeMap::new();
            for v in &self.vertices {
                if let Some(first) = seen.get(&v.height) {
                    push(
                        &format!("vertex {}", v.id),
                        format!("shares height {} with vertex {first} but the graph is flagged stable", v.height),
                    );
                } else {
                    seen.insert(v.height, &v.id);
                }
            }
        }
        if check_connectivity && !self.allow_disconnected {
            let comps = self.components();
            if comps.count > 1 {
                push(
                    "graph",
                    format!("graph is disconnected ({} components)", comps.count),
                );
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn require_valid(&self) -> Result<()> {
        let d = self.validate();
        if d.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(d))
        }
    }

    /// Like [`Self::require_valid`] but indifferent to connectivity;
    /// homology and component-wise operations accept disconnected input.
    pub fn require_valid_shape(&self) -> Result<()> {
        let d = self.validate_inner(false);
        if d.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(d))
        }
    }

    /// Lower-side fibers minus upper-side fibers at a vertex: the sum of
    /// labels of edges arriving from below minus the sum for edges
    /// leaving upward. A self-loop contributes to both sides and cancels.
    pub fn vertex_relation(&self, v: &str) -> Result<Element> {
        if self.vertex(v).is_none() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let mut e = Element::zero();
        for edge in self.edges_below(v) {
            e.add_term(&edge.label, &crate::exactlin::rat(1));
        }
        for edge in self.edges_above(v) {
            e.add_term(&edge.label, &crate::exactlin::rat(-1));
        }
        Ok(e)
    }

    /// All vertex relations in vertex order, including zero ones.
    pub fn vertex_relations(&self) -> Vec<(String, Element)> {
        self.vertices
            .iter()
            .map(|v| (v.id.clone(), self.vertex_relation(&v.id).unwrap()))
            .collect()
    }

    /// Multiset of edge labels over the regular height `t`, sorted.
    pub fn level_set(&self, t: Height) -> Result<Vec<ManifoldClass>> {
        self.require_valid_shape()?;
        if self.target == Target::Circle
            && (t < Height::from_integer(0) || t >= Height::from_integer(1))
        {
            return Err(Error::HeightOutsideCircle(t.to_string()));
        }
        if self.vertices.iter().any(|v| v.height == t) {
            return Err(Error::NotRegularValue(t.to_string()));
        }
        let mut fibers = Vec::new();
        for e in &self.edges {
            let hit = match &e.ends {
                EdgeEnds::Cycle => true,
                EdgeEnds::Between { bottom, top } => {
                    let b = self.vertex(bottom).unwrap().height;
                    let tt = self.vertex(top).unwrap().height;
                    match self.target {
                        Target::Line => b < t && t < tt,
                        // Cyclic open interval from b counterclockwise to tt;
                        // equal endpoints wrap the whole way around.
                        Target::Circle => {
                            if b < tt {
                                b < t && t < tt
                            } else if b > tt {
                                t > b || t < tt
                            } else {
                                t != b
                            }
                        }
                    }
                }
            };
            if hit {
                fibers.push(e.label.clone());
            }
        }
        fibers.sort();
        Ok(fibers)
    }

    pub fn components(&self) -> Components {
        let n = self.vertices.len();
        let index: BTreeMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            if let (Some(b), Some(t)) = (e.bottom(), e.top()) {
                if let (Some(&bi), Some(&ti)) = (index.get(b), index.get(t)) {
                    let rb = find(&mut parent, bi);
                    let rt = find(&mut parent, ti);
                    parent[rb] = rt;
                }
            }
        }
        let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
        let mut vertex_comp = vec![0usize; n];
        for i in 0..n {
            let root = find(&mut parent, i);
            let next = renumber.len();
            let id = *renumber.entry(root).or_insert(next);
            vertex_comp[i] = id;
        }
        let mut count = renumber.len();
        let mut edge_comp = vec![0usize; self.edges.len()];
        for (j, e) in self.edges.iter().enumerate() {
            match e.bottom().or(e.top()) {
                Some(end) => {
                    if let Some(&i) = index.get(end) {
                        edge_comp[j] = vertex_comp[i];
                    }
                }
                None => {
                    // A vertexless cycle is a component of its own.
                    edge_comp[j] = count;
                    count += 1;
                }
            }
        }
        Components {
            count,
            vertex_comp,
            edge_comp,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.components().count <= 1
    }

    /// First homology of the underlying graph: free of rank
    /// `E - V + C` per ordinary component bookkeeping, with each
    /// vertexless cycle contributing exactly one. Graph homology has no
    /// torsion over any coefficients, so the rank is ring-independent.
    pub fn h1(&self, ring: CoefficientRing) -> Result<Presentation> {
        self.require_valid_shape()?;
        let comps = self.components();
        let mut vertex_count = vec![0usize; comps.count];
        let mut edge_count = vec![0usize; comps.count];
        for &c in &comps.vertex_comp {
            vertex_count[c] += 1;
        }
        let mut cycle_rank = 0usize;
        for (j, e) in self.edges.iter().enumerate() {
            if e.is_cycle() {
                cycle_rank += 1;
            } else {
                edge_count[comps.edge_comp[j]] += 1;
            }
        }
        let mut rank = cycle_rank;
        for c in 0..comps.count {
            if vertex_count[c] > 0 {
                rank += 1 + edge_count[c] - vertex_count[c];
            }
        }
        Ok(Presentation::free(ring, rank))
    }

    /// Splits an edge at a new flat vertex carrying the same label on
    /// both halves. Subdividing a vertexless cycle yields a self-loop.
    pub fn subdivide_edge(&self, edge_id: &str, new_vertex: &str, h: Height) -> Result<ReebGraph> {
        let Some(e) = self.edge(edge_id) else {
            return Err(Error::UnknownEdge(edge_id.to_string()));
        };
        let e = e.clone();
        let mut out = self.clone();
        out.add_vertex(new_vertex, h, Singularity::GenericFinite)?;
        let pos = out.edges.iter().position(|x| x.id == edge_id).unwrap();
        out.edges.remove(pos);
        let (first, second) = (format!("{edge_id}a"), format!("{edge_id}b"));
        match &e.ends {
            EdgeEnds::Between { bottom, top } => {
                out.add_edge(&first, bottom, new_vertex, e.label.clone())?;
                out.add_edge(&second, new_vertex, top, e.label.clone())?;
            }
            EdgeEnds::Cycle => {
                out.add_edge(&first, new_vertex, new_vertex, e.label.clone())?;
            }
        }
        Ok(out)
    }
}
