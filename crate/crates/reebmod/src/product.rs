//! Product graphs for pairs of maps.
//!
//! Given maps f and f' with Reeb graphs over one-dimensional targets,
//! a product map on the product manifold can be arranged so that its
//! fiber classes are exactly the pairwise products of fiber classes and
//! its effective part is spanned by a concrete generator set. Two
//! constructions cover all inputs:
//!
//! * when one factor is a bundle (no vertex carries a nonzero relation
//!   and the regular level is a single fiber strand), the product is the
//!   other graph with every label multiplied by the bundle fiber;
//! * otherwise every span generator is realized by its own closed
//!   two-vertex component over the circle, and label-matching strand
//!   surgery then merges the components into one connected graph without
//!   touching any vertex relation.
//!
//! The surgery step is the only connector in this model that provably
//! has zero module effect, which is why it is used instead of
//! handle-attachment vertices (those would inject new relations).

use std::collections::BTreeSet;

use crate::exactlin::Element;
use crate::reeb::{height, ReebGraph, Singularity, Target};
use crate::symbols::{ManifoldClass, SymbolTable};
use crate::{Error, Result};

/// Which pairing produced a span generator: a fiber class of f against
/// a vertex of f', or a vertex of f against a fiber class of f'.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    FiberTimesVertex { fiber: ManifoldClass, vertex: String },
    VertexTimesFiber { vertex: String, fiber: ManifoldClass },
}

impl GadgetKind {
    fn describe(&self) -> String {
        match self {
            GadgetKind::FiberTimesVertex { fiber, vertex } => {
                format!("[{fiber}] x vertex {vertex} of f'")
            }
            GadgetKind::VertexTimesFiber { vertex, fiber } => {
                format!("vertex {vertex} of f x [{fiber}]")
            }
        }
    }
}

/// One span generator together with the edge multisets of the closed
/// component that realizes it: the element equals (sum over `lower`)
/// minus (sum over `upper`).
#[derive(Clone, Debug, PartialEq)]
pub struct GadgetSpec {
    pub kind: GadgetKind,
    pub lower: Vec<ManifoldClass>,
    pub upper: Vec<ManifoldClass>,
    pub element: Element,
}

impl GadgetSpec {
    pub fn describe(&self) -> String {
        format!("{} gives {}", self.kind.describe(), self.element)
    }
}

/// The generator set of the product's effective span: every fiber class
/// of one factor paired with every nonzero vertex relation of the other.
#[derive(Clone, Debug)]
pub struct SGeneratorSet {
    pub generators: Vec<GadgetSpec>,
    /// Merged symbol table in which the product labels live.
    pub symbols: SymbolTable,
}

impl SGeneratorSet {
    pub fn elements(&self) -> Vec<&Element> {
        self.generators.iter().map(|g| &g.element).collect()
    }
}

/// Enumerates the span generators for a pair of validated graphs:
/// first each fiber class of f against each f'-vertex with nonzero
/// relation (in vertex order), then each f-vertex against each fiber
/// class of f'. Generators whose element cancels to zero under rewrite
/// identification are kept; their components still contribute labels.
pub fn generator_set(f: &ReebGraph, fp: &ReebGraph) -> Result<SGeneratorSet> {
    f.require_valid()?;
    fp.require_valid()?;
    let table = f.symbols().merge(fp.symbols())?;
    let mut generators = Vec::new();

    let mut emit = |kind: GadgetKind,
                    fiber: &ManifoldClass,
                    graph: &ReebGraph,
                    vertex: &str,
                    relation: &Element|
     -> Result<()> {
        let mut lower = Vec::new();
        for e in graph.edges_below(vertex) {
            lower.push(table.product(fiber, &e.label)?);
        }
        let mut upper = Vec::new();
        for e in graph.edges_above(vertex) {
            upper.push(table.product(fiber, &e.label)?);
        }
        lower.sort();
        upper.sort();
        let element = relation.times_class(fiber, &table)?;
        debug_assert_eq!(
            {
                let mut acc = Element::zero();
                for c in &lower {
                    acc.add_term(c, &crate::exactlin::rat(1));
                }
                for c in &upper {
                    acc.add_term(c, &crate::exactlin::rat(-1));
                }
                acc
            },
            element,
            "gadget multisets must realize the generator"
        );
        generators.push(GadgetSpec {
            kind,
            lower,
            upper,
            element,
        });
        Ok(())
    };

    for fm in f.fiber_labels() {
        for v in fp.vertices() {
            let r = fp.vertex_relation(&v.id)?;
            if r.is_zero() {
                continue;
            }
            emit(
                GadgetKind::FiberTimesVertex {
                    fiber: fm.clone(),
                    vertex: v.id.clone(),
                },
                &fm,
                fp,
                &v.id,
                &r,
            )?;
        }
    }
    for v in f.vertices() {
        let r = f.vertex_relation(&v.id)?;
        if r.is_zero() {
            continue;
        }
        for fnn in fp.fiber_labels() {
            emit(
                GadgetKind::VertexTimesFiber {
                    vertex: v.id.clone(),
                    fiber: fnn.clone(),
                },
                &fnn,
                f,
                &v.id,
                &r,
            )?;
        }
    }
    Ok(SGeneratorSet {
        generators,
        symbols: table,
    })
}

/// Multiplies every edge label of `g` by the bundle fiber `fiber`,
/// keeping the graph shape. Morse vertices become Morse-Bott: their
/// critical points turn into copies of the fiber.
pub fn product_with_bundle(
    g: &ReebGraph,
    fiber: &ManifoldClass,
    fiber_symbols: &SymbolTable,
) -> Result<ReebGraph> {
    g.require_valid()?;
    let table = g.symbols().merge(fiber_symbols)?;
    let mut out = ReebGraph::new(g.target, table.clone());
    out.allow_disconnected = g.allow_disconnected;
    out.stable = g.stable;
    for v in g.vertices() {
        let sing = match v.sing {
            Singularity::Morse | Singularity::MorseBott => Singularity::MorseBott,
            Singularity::GenericFinite => Singularity::GenericFinite,
        };
        out.add_vertex(&v.id, v.height, sing)?;
    }
    for e in g.edges() {
        let label = table.product(&e.label, fiber)?;
        match (e.bottom(), e.top()) {
            (Some(b), Some(t)) => out.add_edge(&e.id, b, t, label)?,
            _ => out.add_cycle_edge(&e.id, label)?,
        }
    }
    Ok(out)
}

fn nonzero_relation_exists(g: &ReebGraph) -> bool {
    g.vertices()
        .iter()
        .any(|v| !g.vertex_relation(&v.id).unwrap().is_zero())
}

/// Builds one closed two-vertex component over the circle per span
/// generator: the lower multiset runs bottom to top on one arc, the
/// upper multiset wraps back on the other, so the two vertex relations
/// are exactly the generator and its negation. A generator living on
/// one arc only (an extremum paired with a fiber class) gets a closing
/// strand pair: the smallest occupied class is added to both arcs.
/// That keeps the relations at +-generator, since the extra class
/// cancels between the sides, and it turns every component into a
/// closed cycle of parallel strands. Bare single-strand components
/// would be unmendable later: a swap preserves each vertex's per-side
/// degree, so no surgery could ever join two of them. The result is
/// deliberately disconnected; see [`connect_all`].
pub fn case2(f: &ReebGraph, fp: &ReebGraph) -> Result<ReebGraph> {
    if !nonzero_relation_exists(f) {
        return Err(Error::NoUsableCase("f".to_string()));
    }
    if !nonzero_relation_exists(fp) {
        return Err(Error::NoUsableCase("f'".to_string()));
    }
    let s = generator_set(f, fp)?;
    let mut g = ReebGraph::new(Target::Circle, s.symbols.clone());
    g.allow_disconnected = true;
    for (i, spec) in s.generators.iter().enumerate() {
        let n = i + 1;
        let lo = format!("g{n}lo");
        let hi = format!("g{n}hi");
        let source = match &spec.kind {
            GadgetKind::FiberTimesVertex { vertex, .. } => fp.vertex(vertex).unwrap().sing,
            GadgetKind::VertexTimesFiber { vertex, .. } => f.vertex(vertex).unwrap().sing,
        };
        let sing = match source {
            Singularity::Morse | Singularity::MorseBott => Singularity::MorseBott,
            Singularity::GenericFinite => Singularity::GenericFinite,
        };
        g.add_vertex(&lo, height(1, 4), sing)?;
        g.add_vertex(&hi, height(3, 4), sing)?;
        let mut lower = spec.lower.clone();
        let mut upper = spec.upper.clone();
        if lower.is_empty() && !upper.is_empty() {
            lower.push(upper[0].clone());
            upper.push(upper[0].clone());
            upper.sort();
        } else if upper.is_empty() && !lower.is_empty() {
            upper.push(lower[0].clone());
            lower.push(lower[0].clone());
            lower.sort();
        }
        for (j, c) in lower.iter().enumerate() {
            g.add_edge(&format!("g{n}l{}", j + 1), &lo, &hi, c.clone())?;
        }
        for (j, c) in upper.iter().enumerate() {
            g.add_edge(&format!("g{n}u{}", j + 1), &hi, &lo, c.clone())?;
        }
    }
    Ok(g)
}

/// Replaces edges (u1 -> v1), (u2 -> v2) carrying the same label by
/// (u1 -> v2), (u2 -> v1). Every vertex keeps its incident labels per
/// side, so every vertex relation is untouched; when the edges lay in
/// different components the swap joins them. On a line target the two
/// height intervals must overlap, otherwise a crossed edge would run
/// downhill; on the circle any pair works, the crossed edge wraps.
pub fn strand_swap(g: &ReebGraph, e1: &str, e2: &str) -> Result<ReebGraph> {
    if e1 == e2 {
        return Err(Error::SwapSameEdge);
    }
    let a = g
        .edge(e1)
        .ok_or_else(|| Error::UnknownEdge(e1.to_string()))?;
    let b = g
        .edge(e2)
        .ok_or_else(|| Error::UnknownEdge(e2.to_string()))?;
    for e in [a, b] {
        if e.is_cycle() {
            return Err(Error::SwapCyclicEdge(e.id.clone()));
        }
    }
    if a.label != b.label {
        return Err(Error::LabelMismatch(e1.to_string(), e2.to_string()));
    }
    let (b1, t1) = (a.bottom().unwrap().to_string(), a.top().unwrap().to_string());
    let (b2, t2) = (b.bottom().unwrap().to_string(), b.top().unwrap().to_string());
    if g.target == Target::Line {
        let h = |v: &str| g.vertex(v).unwrap().height;
        if h(&b1) >= h(&t2) || h(&b2) >= h(&t1) {
            return Err(Error::SwapHeightOrder(e1.to_string(), e2.to_string()));
        }
    }
    let mut out = g.clone();
    for e in out.edges_mut() {
        if e.id == e1 {
            e.ends = crate::reeb::EdgeEnds::Between {
                bottom: b1.clone(),
                top: t2.clone(),
            };
        } else if e.id == e2 {
            e.ends = crate::reeb::EdgeEnds::Between {
                bottom: b2.clone(),
                top: t1.clone(),
            };
        }
    }
    Ok(out)
}

fn component_name(g: &ReebGraph, comp: usize) -> String {
    let comps = g.components();
    for (i, v) in g.vertices().iter().enumerate() {
        if comps.vertex_comp[i] == comp {
            return v.id.clone();
        }
    }
    for (j, e) in g.edges().iter().enumerate() {
        if comps.edge_comp[j] == comp {
            return e.id.clone();
        }
    }
    format!("component {comp}")
}

fn comp_label_sets(g: &ReebGraph) -> Vec<BTreeSet<ManifoldClass>> {
    let comps = g.components();
    let mut sets = vec![BTreeSet::new(); comps.count];
    for (j, e) in g.edges().iter().enumerate() {
        sets[comps.edge_comp[j]].insert(e.label.clone());
    }
    sets
}

/// Merges all components into one by greedy label-matching surgery.
/// Each round connects the first component to another one sharing an
/// edge label: candidate partners, labels and edge pairs are tried in
/// ascending order and the first swap that actually lowers the
/// component count is kept. The trial step matters because a swap only
/// merges two components when at least one swapped edge sits on a cycle
/// of its component; swapping two bridges trades endpoints without
/// joining anything. A vertexless cycle is absorbed by deleting its
/// edge (its strand is identified with the partner edge), which also
/// leaves every vertex relation untouched. Fails up front if the
/// label-sharing relation does not link all components, and mid-way if
/// no remaining swap can make progress.
pub fn connect_all(g: &ReebGraph) -> Result<ReebGraph> {
    let mut out = g.clone();
    let start = out.components();
    if start.count > 1 {
        // Static solvability check on the label-sharing meta-graph.
        let sets = comp_label_sets(&out);
        let mut parent: Vec<usize> = (0..start.count).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let all_labels: BTreeSet<ManifoldClass> =
            sets.iter().flat_map(|s| s.iter().cloned()).collect();
        for label in &all_labels {
            let mut first: Option<usize> = None;
            for (c, set) in sets.iter().enumerate() {
                if set.contains(label) {
                    match first {
                        None => first = Some(c),
                        Some(f) => {
                            let (a, b) = (find(&mut parent, f), find(&mut parent, c));
                            parent[a] = b;
                        }
                    }
                }
            }
        }
        let root0 = find(&mut parent, 0);
        for c in 1..start.count {
            if find(&mut parent, c) != root0 {
                return Err(Error::IsolatedComponent(component_name(&out, c)));
            }
        }
    }
    loop {
        let comps = out.components();
        if comps.count <= 1 {
            break;
        }
        let sets = comp_label_sets(&out);
        let count = comps.count;
        let edges_of = |comp: usize, label: &ManifoldClass| -> Vec<usize> {
            out.edges()
                .iter()
                .enumerate()
                .filter(|(j, e)| comps.edge_comp[*j] == comp && e.label == *label)
                .map(|(j, _)| j)
                .collect()
        };
        let mut next = None;
        'search: for partner in 1..count {
            for label in sets[0].intersection(&sets[partner]) {
                for ia in edges_of(0, label) {
                    for ib in edges_of(partner, label) {
                        if out.edges()[ia].is_cycle() {
                            next = Some((ia, None));
                            break 'search;
                        }
                        if out.edges()[ib].is_cycle() {
                            next = Some((ib, None));
                            break 'search;
                        }
                        let trial = strand_swap(
                            &out,
                            &out.edges()[ia].id.clone(),
                            &out.edges()[ib].id.clone(),
                        )?;
                        if trial.components().count < count {
                            next = Some((ia, Some(trial)));
                            break 'search;
                        }
                    }
                }
            }
        }
        match next {
            Some((_, Some(trial))) => out = trial,
            Some((cyc, None)) => {
                out.edges_mut().remove(cyc);
            }
            None => return Err(Error::UnconnectableComponent(component_name(&out, 0))),
        }
    }
    out.allow_disconnected = false;
    Ok(out)
}

fn bundle_fiber(g: &ReebGraph, role: &str) -> Result<Option<ManifoldClass>> {
    if g.vertices().is_empty() {
        return match g.edges() {
            [] => Err(Error::NoUsableCase(role.to_string())),
            [only] => Ok(Some(only.label.clone())),
            _ => Err(Error::AmbiguousBundleFiber(role.to_string())),
        };
    }
    if nonzero_relation_exists(g) {
        return Ok(None);
    }
    // Every relation cancels; the map is a bundle. It has a single
    // fiber class only if the level set is one strand all the way
    // around: a connected cycle of degree-two vertices, one label.
    let single_strand = g.target == Target::Circle
        && g.is_connected()
        && g.edges().iter().all(|e| !e.is_cycle())
        && g.vertices()
            .iter()
            .all(|v| g.edges_below(&v.id).len() == 1 && g.edges_above(&v.id).len() == 1)
        && g.edges().iter().all(|e| e.label == g.edges()[0].label);
    if single_strand {
        Ok(Some(g.edges()[0].label.clone()))
    } else {
        Err(Error::AmbiguousBundleFiber(role.to_string()))
    }
}

/// The product graph for a pair of validated maps. When either factor
/// is a bundle the other graph is relabeled with the fiber; otherwise
/// every span generator gets its own closed component and the result is
/// made connected by surgery. Either way the fiber classes of the
/// output are exactly the pairwise products and its effective span is
/// the span of [`generator_set`].
pub fn cf(f: &ReebGraph, fp: &ReebGraph) -> Result<ReebGraph> {
    let out = cf_unconnected(f, fp)?;
    if out.allow_disconnected {
        connect_all(&out)
    } else {
        Ok(out)
    }
}

/// [`cf`] without the final surgery. The bundle cases come back as is,
/// since relabeling keeps the factor's shape; the gadget case comes
/// back as the disconnected union of its components, recognizable by
/// its `allow_disconnected` flag.
pub fn cf_unconnected(f: &ReebGraph, fp: &ReebGraph) -> Result<ReebGraph> {
    f.require_valid()?;
    fp.require_valid()?;
    if let Some(fiber) = bundle_fiber(fp, "f'")? {
        return product_with_bundle(f, &fiber, fp.symbols());
    }
    if let Some(fiber) = bundle_fiber(f, "f")? {
        return product_with_bundle(fp, &fiber, f.symbols());
    }
    case2(f, fp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccmod::quotient;
    use crate::exactlin::CoefficientRing;
    use crate::reeb::Height;

    fn surface_table() -> SymbolTable {
        let mut t = SymbolTable::new();
        t.declare_atom("S2", 2, true, true).unwrap();
        t.declare_atom("T2", 2, true, true).unwrap();
        t.declare_atom("N3", 2, false, false).unwrap();
        t.declare_atom("K", 2, false, false).unwrap();
        t
    }

    fn bundle_graph() -> ReebGraph {
        let t = surface_table();
        let c = |n: &str| t.class(&[n]).unwrap();
        let mut g = ReebGraph::new(Target::Line, t.clone());
        for (id, h) in [("v1", 0), ("v2", 1), ("v3", 2), ("v4", 3), ("v5", 4)] {
            g.add_vertex(id, Height::from_integer(h), Singularity::Morse)
                .unwrap();
        }
        g.add_edge("e1", "v1", "v2", c("S2")).unwrap();
        g.add_edge("e2", "v2", "v3", c("T2")).unwrap();
        g.add_edge("e3", "v3", "v4", c("N3")).unwrap();
        g.add_edge("e4", "v4", "v5", c("K")).unwrap();
        g.add_edge("e5", "v4", "v5", c("K")).unwrap();
        g
    }

    fn sphere_graph() -> ReebGraph {
        let mut t = SymbolTable::new();
        t.declare_atom("S3", 3, true, true).unwrap();
        let c = t.class(&["S3"]).unwrap();
        let mut g = ReebGraph::new(Target::Line, t);
        g.add_vertex("min", Height::from_integer(0), Singularity::Morse)
            .unwrap();
        g.add_vertex("max", Height::from_integer(1), Singularity::Morse)
            .unwrap();
        g.add_edge("e1", "min", "max", c).unwrap();
        g
    }

    fn circle_bundle(atom: &str, dim: u32) -> ReebGraph {
        let mut t = SymbolTable::new();
        t.declare_atom(atom, dim, true, true).unwrap();
        let c = t.class(&[atom]).unwrap();
        let mut g = ReebGraph::new(Target::Circle, t);
        g.add_cycle_edge("c1", c).unwrap();
        g
    }

    #[test]
    fn generator_set_pairs_labels_with_relations() {
        let s = generator_set(&bundle_graph(), &sphere_graph()).unwrap();
        assert_eq!(s.generators.len(), 13);
        let pattern1 = s
            .generators
            .iter()
            .filter(|g| matches!(g.kind, GadgetKind::FiberTimesVertex { .. }))
            .count();
        assert_eq!(pattern1, 8);
        // Fiber K of f against the minimum of the sphere map.
        let k_min = s
            .generators
            .iter()
            .find(|g| {
                g.kind
                    == GadgetKind::FiberTimesVertex {
                        fiber: surface_table().class(&["K"]).unwrap(),
                        vertex: "min".to_string(),
                    }
            })
            .unwrap();
        assert_eq!(k_min.element.to_string(), "-[K*S3]");
        assert!(k_min.lower.is_empty());
        assert_eq!(k_min.upper.len(), 1);
        // Vertex v4 of f against the sphere fiber.
        let v4 = s
            .generators
            .iter()
            .find(|g| matches!(&g.kind, GadgetKind::VertexTimesFiber { vertex, .. } if vertex == "v4"))
            .unwrap();
        assert_eq!(v4.element.to_string(), "-2[K*S3] + [N3*S3]");
    }

    #[test]
    fn generator_set_against_a_bundle_uses_one_pattern() {
        let s = generator_set(&bundle_graph(), &circle_bundle("S1", 1)).unwrap();
        assert_eq!(s.generators.len(), 5);
        assert!(s
            .generators
            .iter()
            .all(|g| matches!(g.kind, GadgetKind::VertexTimesFiber { .. })));
    }

    #[test]
    fn generator_set_of_the_self_pair() {
        let f = bundle_graph();
        let s = generator_set(&f, &f).unwrap();
        assert_eq!(s.generators.len(), 40);
        let t = &s.symbols;
        let expected = Element::integral_combination(&[
            (t.parse_label("K*N3").unwrap(), 1),
            (t.parse_label("K*K").unwrap(), -2),
        ]);
        assert!(
            s.generators.iter().any(|g| g.element == expected),
            "missing the K x v4 generator"
        );
        for g in &s.generators {
            let mut acc = Element::zero();
            for c in &g.lower {
                acc.add_term(c, &crate::exactlin::rat(1));
            }
            for c in &g.upper {
                acc.add_term(c, &crate::exactlin::rat(-1));
            }
            assert_eq!(acc, g.element, "multisets must realize {}", g.describe());
        }
    }

    #[test]
    fn case2_components_carry_generator_relations() {
        let f = bundle_graph();
        let fp = sphere_graph();
        let s = generator_set(&f, &fp).unwrap();
        let g = case2(&f, &fp).unwrap();
        assert_eq!(g.validate(), vec![]);
        assert_eq!(g.components().count, 13);
        assert_eq!(g.vertices().len(), 26);
        for (i, spec) in s.generators.iter().enumerate() {
            let n = i + 1;
            let hi = g.vertex_relation(&format!("g{n}hi")).unwrap();
            let lo = g.vertex_relation(&format!("g{n}lo")).unwrap();
            assert_eq!(hi, spec.element);
            assert_eq!(lo, spec.element.neg());
        }
        // All sources are Morse, so every product vertex is Morse-Bott.
        assert!(g
            .vertices()
            .iter()
            .all(|v| v.sing == Singularity::MorseBott));
        // Label coverage: all pairwise products appear as fibers.
        let labels: Vec<String> = g.fiber_labels().iter().map(|c| c.to_string()).collect();
        assert_eq!(labels, vec!["K*S3", "N3*S3", "S2*S3", "S3*T2"]);
    }

    #[test]
    fn case2_requires_nonzero_relations_on_both_sides() {
        assert!(matches!(
            case2(&bundle_graph(), &circle_bundle("S1", 1)),
            Err(Error::NoUsableCase(_))
        ));
    }

    #[test]
    fn bundle_product_relabels_in_place() {
        let f = bundle_graph();
        let s1 = circle_bundle("S1", 1);
        let fiber = s1.symbols().class(&["S1"]).unwrap();
        let p = product_with_bundle(&f, &fiber, s1.symbols()).unwrap();
        assert_eq!(p.validate(), vec![]);
        assert_eq!(p.vertices().len(), 5);
        assert_eq!(p.edges().len(), 5);
        let labels: Vec<String> = p.fiber_labels().iter().map(|c| c.to_string()).collect();
        assert_eq!(labels, vec!["K*S1", "N3*S1", "S1*S2", "S1*T2"]);
        assert!(p
            .vertices()
            .iter()
            .all(|v| v.sing == Singularity::MorseBott));

        let two_bundles = product_with_bundle(
            &circle_bundle("F1", 2),
            &circle_bundle("F2", 2).symbols().class(&["F2"]).unwrap(),
            circle_bundle("F2", 2).symbols(),
        )
        .unwrap();
        assert_eq!(two_bundles.edges().len(), 1);
        assert!(two_bundles.edges()[0].is_cycle());
        assert_eq!(two_bundles.edges()[0].label.to_string(), "F1*F2");
    }

    #[test]
    fn strand_swap_preserves_every_vertex_relation() {
        let g = bundle_graph();
        let before = g.vertex_relations();
        let swapped = strand_swap(&g, "e4", "e5").unwrap();
        assert_eq!(swapped.validate(), vec![]);
        assert_eq!(swapped.vertex_relations(), before);

        assert!(matches!(
            strand_swap(&g, "e1", "e2"),
            Err(Error::LabelMismatch(_, _))
        ));
        assert!(matches!(strand_swap(&g, "e1", "e1"), Err(Error::SwapSameEdge)));
        let c = circle_bundle("S1", 1);
        let mut with_strand = c.clone();
        with_strand.allow_disconnected = true;
        with_strand
            .add_vertex("p", height(1, 4), Singularity::Morse)
            .unwrap();
        with_strand
            .add_vertex("q", height(3, 4), Singularity::Morse)
            .unwrap();
        let l = c.symbols().class(&["S1"]).unwrap();
        with_strand.add_edge("e", "p", "q", l.clone()).unwrap();
        with_strand.add_edge("back", "q", "p", l).unwrap();
        assert!(matches!(
            strand_swap(&with_strand, "c1", "e"),
            Err(Error::SwapCyclicEdge(_))
        ));
    }

    #[test]
    fn connecting_leaves_relations_and_quotient_alone() {
        let f = bundle_graph();
        let fp = sphere_graph();
        let parts = case2(&f, &fp).unwrap();
        let whole = connect_all(&parts).unwrap();
        assert!(whole.is_connected());
        assert_eq!(whole.validate(), vec![]);
        assert_eq!(whole.vertex_relations(), parts.vertex_relations());
        assert_eq!(
            quotient(&whole, CoefficientRing::Integers).unwrap(),
            quotient(&parts, CoefficientRing::Integers).unwrap()
        );
        assert!(quotient(&whole, CoefficientRing::Integers)
            .unwrap()
            .is_trivial());
        // Deterministic: running it again changes nothing.
        assert_eq!(connect_all(&whole).unwrap(), whole);
        assert_eq!(connect_all(&parts).unwrap(), whole);
    }

    #[test]
    fn connecting_an_already_connected_graph_is_identity() {
        let g = bundle_graph();
        assert_eq!(connect_all(&g).unwrap(), g);
    }

    #[test]
    fn unlinked_components_are_rejected() {
        let t = surface_table();
        let c = |n: &str| t.class(&[n]).unwrap();
        let mut g = ReebGraph::new(Target::Circle, t.clone());
        g.allow_disconnected = true;
        g.add_vertex("a1", height(1, 4), Singularity::Morse).unwrap();
        g.add_vertex("a2", height(3, 4), Singularity::Morse).unwrap();
        g.add_edge("e1", "a1", "a2", c("S2")).unwrap();
        g.add_edge("e2", "a2", "a1", c("S2")).unwrap();
        g.add_vertex("b1", height(1, 4), Singularity::Morse).unwrap();
        g.add_vertex("b2", height(3, 4), Singularity::Morse).unwrap();
        g.add_edge("f1", "b1", "b2", c("T2")).unwrap();
        g.add_edge("f2", "b2", "b1", c("T2")).unwrap();
        assert!(matches!(
            connect_all(&g),
            Err(Error::IsolatedComponent(name)) if name == "b1"
        ));
    }

    #[test]
    fn cyclic_components_are_absorbed() {
        let t = surface_table();
        let c = |n: &str| t.class(&[n]).unwrap();
        let mut g = ReebGraph::new(Target::Circle, t.clone());
        g.allow_disconnected = true;
        g.add_vertex("p", height(1, 4), Singularity::Morse).unwrap();
        g.add_vertex("q", height(3, 4), Singularity::Morse).unwrap();
        g.add_edge("e1", "p", "q", c("S2")).unwrap();
        g.add_edge("e2", "q", "p", c("S2")).unwrap();
        g.add_cycle_edge("loop", c("S2")).unwrap();
        let before = g.vertex_relations();
        let out = connect_all(&g).unwrap();
        assert!(out.is_connected());
        assert_eq!(out.vertex_relations(), before);
        assert!(out.edge("loop").is_none());
        assert_eq!(out.fiber_labels(), g.fiber_labels());
    }

    #[test]
    fn cf_dispatches_on_bundle_factors() {
        let f = bundle_graph();
        let s1 = circle_bundle("S1", 1);
        let fiber = s1.symbols().class(&["S1"]).unwrap();
        let expected = product_with_bundle(&f, &fiber, s1.symbols()).unwrap();
        assert_eq!(cf(&f, &s1).unwrap(), expected);
        assert_eq!(cf(&s1, &f).unwrap(), expected);

        // A subdivided bundle counts: all relations cancel around the cycle.
        let t = s1.symbols().clone();
        let l = t.class(&["S1"]).unwrap();
        let mut sub = ReebGraph::new(Target::Circle, t);
        sub.add_vertex("w1", height(1, 4), Singularity::GenericFinite)
            .unwrap();
        sub.add_vertex("w2", height(3, 4), Singularity::GenericFinite)
            .unwrap();
        sub.add_edge("e1", "w1", "w2", l.clone()).unwrap();
        sub.add_edge("e2", "w2", "w1", l).unwrap();
        let p = cf(&sub, &f).unwrap();
        assert_eq!(p, product_with_bundle(&f, &fiber, s1.symbols()).unwrap());
    }

    #[test]
    fn cf_of_two_singular_maps_is_connected_and_verified_elsewhere() {
        let f = bundle_graph();
        let fp = sphere_graph();
        let g = cf(&f, &fp).unwrap();
        assert!(g.is_connected());
        assert_eq!(g.validate(), vec![]);
        assert_eq!(g.target, Target::Circle);
        assert!(quotient(&g, CoefficientRing::Integers).unwrap().is_trivial());

        let self_product = cf(&f, &f).unwrap();
        let p = quotient(&self_product, CoefficientRing::Integers).unwrap();
        assert_eq!(p.describe(), "Z/2");
        assert_eq!(p.generators()[0].element.to_string(), "[K*K]");
    }

    #[test]
    fn cf_rejects_ambiguous_bundles_and_empty_graphs() {
        let f = bundle_graph();
        let t = surface_table();
        let a = t.class(&["S2"]).unwrap();
        // Two parallel strands, all relations cancel: a bundle with a
        // disconnected fiber, which has no single fiber class.
        let mut multi = ReebGraph::new(Target::Circle, t.clone());
        multi.add_vertex("w1", height(1, 4), Singularity::GenericFinite)
            .unwrap();
        multi.add_vertex("w2", height(3, 4), Singularity::GenericFinite)
            .unwrap();
        for (id, b, tp) in [("u1", "w1", "w2"), ("u2", "w1", "w2"), ("d1", "w2", "w1"), ("d2", "w2", "w1")] {
            multi.add_edge(id, b, tp, a.clone()).unwrap();
        }
        assert!(matches!(
            cf(&f, &multi),
            Err(Error::AmbiguousBundleFiber(_))
        ));

        let empty = ReebGraph::new(Target::Circle, t);
        assert!(matches!(cf(&f, &empty), Err(Error::NoUsableCase(_))));
    }
}
