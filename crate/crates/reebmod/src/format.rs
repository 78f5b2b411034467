//! Plain-text graph files and Graphviz export.
//!
//! A graph file is line-oriented; blank lines and lines starting with
//! `#` are ignored. Directives, in any order:
//!
//! ```text
//! target    line|circle
//! atom      NAME dim=INT orientable=BOOL [oriented=BOOL]
//! rewrite   LABEL => LABEL
//! universe  LABEL, LABEL, ...
//! vertex    ID height=RATIONAL [sing=morse|morse-bott|generic]
//! edge      ID BOTTOM TOP label=LABEL
//! cycle-edge ID label=LABEL
//! ```
//!
//! Labels are `*`-separated atom products and are canonicalized on
//! parse, so `K*S1` and `S1*K` denote the same class. Heights are exact
//! rationals (`3` or `-1/4`); no floating point appears anywhere.
//! Symbols must be declared before use, but declaration lines may appear
//! anywhere in the file: parsing resolves symbols first, then builds the
//! graph. All errors carry the offending line number.

use std::fmt::Write as _;

use crate::reeb::{Height, ReebGraph, Singularity, Target};
use crate::symbols::{ManifoldClass, SymbolTable};
use crate::{Error, Result};

/// A parsed graph file: the graph itself plus the optional universe of
/// admissible classes for the outer part.
#[derive(Clone, Debug)]
pub struct ParsedFile {
    pub graph: ReebGraph,
    pub universe: Option<Vec<ManifoldClass>>,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_bool(line: usize, text: &str) -> Result<bool> {
    match text {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(err(line, format!("expected true or false, got `{other}`"))),
    }
}

fn parse_height(line: usize, text: &str) -> Result<Height> {
    let bad = || err(line, format!("bad rational `{text}`"));
    match text.split_once('/') {
        None => text
            .parse::<i64>()
            .map(Height::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p: i64 = p.parse().map_err(|_| bad())?;
            let q: i64 = q.parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(err(line, "zero denominator"));
            }
            Ok(Height::new(p, q))
        }
    }
}

fn parse_sing(line: usize, text: &str) -> Result<Singularity> {
    // Accept the hyphen-free spelling as well.
    let text = if text == "morsebott" { "morse-bott" } else { text };
    Singularity::parse(text).ok_or_else(|| err(line, format!("unknown singularity `{text}`")))
}

/// Numbered, trimmed, non-comment lines of a file.
fn directives(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

/// Reads a graph file. The result is not validated: callers decide
/// whether to run [`ReebGraph::validate`] and how to present the
/// diagnostics. Structural impossibilities (unknown atoms, duplicate
/// ids, missing endpoints) are parse errors with line numbers.
pub fn parse(text: &str) -> Result<ParsedFile> {
    let mut table = SymbolTable::new();
    let mut target: Option<Target> = None;
    for (lineno, line) in directives(text) {
        let mut tok = line.split_whitespace();
        match tok.next().unwrap() {
            "target" => {
                let t = match tok.next() {
                    Some("line") => Target::Line,
                    Some("circle") => Target::Circle,
                    Some(other) => return Err(err(lineno, format!("unknown target `{other}`"))),
                    None => return Err(err(lineno, "target needs `line` or `circle`")),
                };
                if target.replace(t).is_some() {
                    return Err(err(lineno, "target declared twice"));
                }
            }
            "atom" => {
                let name = tok
                    .next()
                    .ok_or_else(|| err(lineno, "atom needs a name"))?;
                let mut dim: Option<u32> = None;
                let mut orientable: Option<bool> = None;
                let mut oriented: Option<bool> = None;
                for t in tok {
                    if let Some(v) = t.strip_prefix("dim=") {
                        dim = Some(
                            v.parse()
                                .map_err(|_| err(lineno, format!("bad dimension `{v}`")))?,
                        );
                    } else if let Some(v) = t.strip_prefix("orientable=") {
                        orientable = Some(parse_bool(lineno, v)?);
                    } else if let Some(v) = t.strip_prefix("oriented=") {
                        oriented = Some(parse_bool(lineno, v)?);
                    } else {
                        return Err(err(lineno, format!("unknown atom field `{t}`")));
                    }
                }
                let dim = dim.ok_or_else(|| err(lineno, "atom needs dim="))?;
                let orientable = orientable.ok_or_else(|| err(lineno, "atom needs orientable="))?;
                table
                    .declare_atom(name, dim, orientable, oriented.unwrap_or(false))
                    .map_err(|e| err(lineno, e.to_string()))?;
            }
            "rewrite" => {
                let lhs = tok
                    .next()
                    .ok_or_else(|| err(lineno, "rewrite needs `LABEL => LABEL`"))?;
                if tok.next() != Some("=>") {
                    return Err(err(lineno, "rewrite needs `=>` between the labels"));
                }
                let rhs = tok
                    .next()
                    .ok_or_else(|| err(lineno, "rewrite needs a right-hand label"))?;
                let lhs: Vec<&str> = lhs.split('*').collect();
                let rhs: Vec<&str> = rhs.split('*').collect();
                table
                    .add_rule(&lhs, &rhs)
                    .map_err(|e| err(lineno, e.to_string()))?;
            }
            "universe" | "vertex" | "edge" | "cycle-edge" => {}
            other => return Err(err(lineno, format!("unknown directive `{other}`"))),
        }
    }

    let mut graph = ReebGraph::new(target.unwrap_or(Target::Line), table);
    let mut universe: Option<Vec<ManifoldClass>> = None;
    for (lineno, line) in directives(text) {
        let mut tok = line.split_whitespace();
        match tok.next().unwrap() {
            "vertex" => {
                let id = tok
                    .next()
                    .ok_or_else(|| err(lineno, "vertex needs an id"))?;
                let mut h: Option<Height> = None;
                let mut sing = Singularity::Morse;
                for t in tok {
                    if let Some(v) = t.strip_prefix("height=") {
                        h = Some(parse_height(lineno, v)?);
                    } else if let Some(v) = t.strip_prefix("sing=") {
                        sing = parse_sing(lineno, v)?;
                    } else {
                        return Err(err(lineno, format!("unknown vertex field `{t}`")));
                    }
                }
                let h = h.ok_or_else(|| err(lineno, "vertex needs height="))?;
                graph
                    .add_vertex(id, h, sing)
                    .map_err(|e| err(lineno, e.to_string()))?;
            }
            "edge" => {
                let mut next = |what: &str| {
                    tok.next()
                        .ok_or_else(|| err(lineno, format!("edge needs {what}")))
                };
                let id = next("an id")?;
                let bottom = next("a bottom vertex")?;
                let top = next("a top vertex")?;
                let label = next("label=")?;
                let label = label
                    .strip_prefix("label=")
                    .ok_or_else(|| err(lineno, "edge needs label="))?;
                let class = graph
                    .symbols()
                    .parse_label(label)
                    .map_err(|e| err(lineno, e.to_string()))?;
                graph
                    .add_edge(id, bottom, top, class)
                    .map_err(|e| err(lineno, e.to_string()))?;
            }
            "cycle-edge" => {
                let id = tok
                    .next()
                    .ok_or_else(|| err(lineno, "cycle-edge needs an id"))?;
                let label = tok
                    .next()
                    .and_then(|t| t.strip_prefix("label="))
                    .ok_or_else(|| err(lineno, "cycle-edge needs label="))?;
                let class = graph
                    .symbols()
                    .parse_label(label)
                    .map_err(|e| err(lineno, e.to_string()))?;
                graph
                    .add_cycle_edge(id, class)
                    .map_err(|e| err(lineno, e.to_string()))?;
            }
            "universe" => {
                if universe.is_some() {
                    return Err(err(lineno, "universe declared twice"));
                }
                let rest = line.strip_prefix("universe").unwrap().trim();
                if rest.is_empty() {
                    return Err(err(lineno, "universe needs at least one label"));
                }
                let mut list = Vec::new();
                for part in rest.split(',') {
                    let class = graph
                        .symbols()
                        .parse_label(part.trim())
                        .map_err(|e| err(lineno, e.to_string()))?;
                    list.push(class);
                }
                universe = Some(list);
            }
            _ => {}
        }
    }
    Ok(ParsedFile { graph, universe })
}

/// Writes a graph back to the file format, preceded by the given
/// comment lines. Atoms are emitted sorted by name, so serializing is
/// canonicalizing: reparsing the output and serializing again is the
/// identity on the text.
pub fn serialize_with_comments(
    g: &ReebGraph,
    universe: Option<&[ManifoldClass]>,
    comments: &[String],
) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "# {c}").unwrap();
    }
    writeln!(
        out,
        "target {}",
        match g.target {
            Target::Line => "line",
            Target::Circle => "circle",
        }
    )
    .unwrap();
    let mut atoms: Vec<_> = g.symbols().atoms().iter().collect();
    atoms.sort_by(|a, b| a.name.cmp(&b.name));
    for a in atoms {
        writeln!(
            out,
            "atom {} dim={} orientable={} oriented={}",
            a.name, a.dim, a.orientable, a.oriented
        )
        .unwrap();
    }
    for r in g.symbols().rules() {
        writeln!(out, "rewrite {} => {}", r.lhs().join("*"), r.rhs().join("*")).unwrap();
    }
    if let Some(u) = universe {
        let labels: Vec<String> = u.iter().map(|c| c.to_string()).collect();
        writeln!(out, "universe {}", labels.join(", ")).unwrap();
    }
    for v in g.vertices() {
        writeln!(out, "vertex {} height={} sing={}", v.id, v.height, v.sing).unwrap();
    }
    for e in g.edges() {
        match (e.bottom(), e.top()) {
            (Some(b), Some(t)) => {
                writeln!(out, "edge {} {b} {t} label={}", e.id, e.label).unwrap()
            }
            _ => writeln!(out, "cycle-edge {} label={}", e.id, e.label).unwrap(),
        }
    }
    out
}

/// [`serialize_with_comments`] without a comment header.
pub fn serialize(g: &ReebGraph, universe: Option<&[ManifoldClass]>) -> String {
    serialize_with_comments(g, universe, &[])
}

/// Graphviz rendering: vertices annotated `id@height: relation`, edges
/// annotated with their labels, vertexless cycles drawn as self-loops
/// on a point node.
pub fn to_dot(g: &ReebGraph) -> String {
    let mut out = String::from("digraph reeb {\n  rankdir=BT;\n");
    for v in g.vertices() {
        let rel = g
            .vertex_relation(&v.id)
            .map(|e| e.to_string())
            .unwrap_or_else(|_| "?".to_string());
        writeln!(
            out,
            "  \"{}\" [label=\"{}@{}: {}\"];",
            v.id, v.id, v.height, rel
        )
        .unwrap();
    }
    for e in g.edges() {
        match (e.bottom(), e.top()) {
            (Some(b), Some(t)) => {
                writeln!(out, "  \"{b}\" -> \"{t}\" [label=\"{}\"];", e.label).unwrap();
            }
            _ => {
                writeln!(out, "  \"{}\" [shape=point];", e.id).unwrap();
                writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", e.id, e.id, e.label).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccmod::quotient;
    use crate::exactlin::CoefficientRing;
    use crate::fixtures::{circle_bundle, fig2, sigma_line, sphere};

    fn roundtrip(g: &ReebGraph) {
        let s1 = serialize(g, None);
        let p1 = parse(&s1).unwrap();
        let s2 = serialize(&p1.graph, None);
        assert_eq!(s1, s2);
        let p2 = parse(&s2).unwrap();
        assert_eq!(p1.graph, p2.graph);
        assert_eq!(p1.graph.validate(), g.validate());
        assert_eq!(p1.graph.fiber_labels(), g.fiber_labels());
        assert_eq!(p1.graph.vertex_relations(), g.vertex_relations());
    }

    #[test]
    fn fixtures_round_trip_through_text() {
        roundtrip(&fig2());
        roundtrip(&sphere());
        roundtrip(&circle_bundle("S1", 1));
        roundtrip(&sigma_line(true));
    }

    #[test]
    fn quotients_survive_the_round_trip() {
        let g = fig2();
        let back = parse(&serialize(&g, None)).unwrap().graph;
        assert_eq!(
            quotient(&g, CoefficientRing::Integers).unwrap(),
            quotient(&back, CoefficientRing::Integers).unwrap()
        );
    }

    #[test]
    fn universe_and_comments_are_preserved_or_dropped_as_documented() {
        let g = sphere();
        let u = vec![
            g.symbols().class(&["S3"]).unwrap(),
        ];
        let text = serialize_with_comments(&g, Some(&u), &["made for a test".to_string()]);
        assert!(text.starts_with("# made for a test\n"));
        let p = parse(&text).unwrap();
        assert_eq!(p.universe, Some(u));
    }

    #[test]
    fn labels_are_canonicalized_on_parse() {
        let text = "\
target line
atom S2 dim=2 orientable=true
atom T2 dim=2 orientable=true
vertex a height=0
vertex b height=1
edge e a b label=T2*S2
";
        let p = parse(text).unwrap();
        assert_eq!(p.graph.edges()[0].label.to_string(), "S2*T2");
        // The edge label product is a disconnected-fiber stand-in, but
        // that is a validation concern, not a parse concern.
    }

    #[test]
    fn heights_parse_as_exact_rationals() {
        let text = "\
target circle
atom F dim=1 orientable=true
vertex a height=1/4 sing=generic
vertex b height=3/4 sing=morse-bott
edge e a b label=F
edge back b a label=F
";
        let p = parse(text).unwrap();
        assert_eq!(p.graph.vertex("a").unwrap().height, Height::new(1, 4));
        assert_eq!(p.graph.vertex("b").unwrap().sing, Singularity::MorseBott);
        assert_eq!(p.graph.validate(), vec![]);
        // The spelling without the hyphen is accepted too.
        let alt = text.replace("morse-bott", "morsebott");
        assert_eq!(parse(&alt).unwrap().graph, p.graph);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "target line\nnonsense here\n";
        match parse(bad) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("nonsense"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
        let unknown_atom = "target line\nvertex a height=0\nvertex b height=1\nedge e a b label=X\n";
        match parse(unknown_atom) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_edges_parse_but_fail_validation() {
        let text = "\
target line
atom S2 dim=2 orientable=true
vertex v1 height=0
edge e1 v1 v1 label=S2
";
        let p = parse(text).unwrap();
        assert!(!p.graph.validate().is_empty());
    }

    #[test]
    fn checked_in_graph_files_match_the_builders() {
        let pairs = [
            (include_str!("../graphs/fig2.reeb"), serialize(&fig2(), None)),
            (include_str!("../graphs/sphere.reeb"), serialize(&sphere(), None)),
            (
                include_str!("../graphs/circle_s1.reeb"),
                serialize(&circle_bundle("S1", 1), None),
            ),
            (
                include_str!("../graphs/sigma_rule.reeb"),
                serialize(&sigma_line(true), None),
            ),
            (
                include_str!("../graphs/sigma_plain.reeb"),
                serialize(&sigma_line(false), None),
            ),
        ];
        for (on_disk, built) in pairs {
            assert_eq!(on_disk, built);
        }
    }

    #[test]
    fn dot_export_annotates_vertices_and_cycles() {
        let dot = to_dot(&fig2());
        assert!(dot.contains("\"v1\" [label=\"v1@0: -[S2]\"];"));
        assert!(dot.contains("\"v4\" -> \"v5\" [label=\"K\"];"));
        let cycle = to_dot(&circle_bundle("S1", 1));
        assert!(cycle.contains("\"c1\" -> \"c1\" [label=\"S1\"];"));
    }
}
