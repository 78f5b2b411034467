//! Canonical example graphs shared by tests, examples and the docs.
//!
//! [`fig2`] is the workhorse: a Morse function on a closed surface bundle
//! whose fiber classes are the sphere, the torus, the Klein bottle and a
//! nonorientable genus-3 surface, with a `Z/2` quotient generated by the
//! Klein bottle class. [`sphere`] is the smallest singular map (two
//! critical points, one spherical fiber), [`circle_bundle`] the smallest
//! bundle (no vertices at all), and [`sigma_line`] a two-point map whose
//! exotic-looking fiber can optionally be standardized by a rewrite rule
//! when multiplied with a circle.

use crate::reeb::{Height, ReebGraph, Singularity, Target};
use crate::symbols::SymbolTable;

/// Symbol table for the surface-fibered examples: sphere `S2`, torus
/// `T2`, nonorientable genus-3 surface `N3` and Klein bottle `K`, all of
/// dimension two.
pub fn surface_table() -> SymbolTable {
    let mut t = SymbolTable::new();
    t.declare_atom("S2", 2, true, true).unwrap();
    t.declare_atom("T2", 2, true, true).unwrap();
    t.declare_atom("N3", 2, false, false).unwrap();
    t.declare_atom("K", 2, false, false).unwrap();
    t
}

/// A Morse function on a closed 3-manifold, drawn as a line graph with
/// five vertices. Going up: a sphere splits off a torus, the torus turns
/// into `N3`, and `N3` splits into two Klein bottles that die together at
/// the top. The vertex relations force `2[K] = 0` while `[K]` itself
/// survives, so the quotient over the integers is `Z/2` generated by the
/// Klein bottle class.
pub fn fig2() -> ReebGraph {
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

/// A Morse function with exactly two singular points: one minimum, one
/// maximum, one spherical fiber class `S3` in between. Its graph is a
/// tree, so its quotient is trivial.
pub fn sphere() -> ReebGraph {
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

/// A fiber bundle over the circle with the given fiber atom: a single
/// vertexless cyclic edge and no singular values at all.
pub fn circle_bundle(atom: &str, dim: u32) -> ReebGraph {
    let mut t = SymbolTable::new();
    t.declare_atom(atom, dim, true, true).unwrap();
    let c = t.class(&[atom]).unwrap();
    let mut g = ReebGraph::new(Target::Circle, t);
    g.add_cycle_edge("c1", c).unwrap();
    g
}

/// A two-point Morse function whose regular fiber `Sigma` is a homotopy
/// 10-sphere. The table also declares the standard sphere `S10` and the
/// circle `S1`; with `with_rule` set, the pair rule `S1*Sigma => S1*S10`
/// is installed, standardizing any product label that contains both a
/// circle factor and the exotic fiber while leaving `Sigma` itself
/// untouched.
pub fn sigma_line(with_rule: bool) -> ReebGraph {
    let mut t = SymbolTable::new();
    t.declare_atom("Sigma", 10, true, true).unwrap();
    t.declare_atom("S10", 10, true, true).unwrap();
    t.declare_atom("S1", 1, true, true).unwrap();
    if with_rule {
        t.add_rule(&["Sigma", "S1"], &["S10", "S1"]).unwrap();
    }
    let c = t.class(&["Sigma"]).unwrap();
    let mut g = ReebGraph::new(Target::Line, t);
    g.add_vertex("min", Height::from_integer(0), Singularity::Morse)
        .unwrap();
    g.add_vertex("max", Height::from_integer(1), Singularity::Morse)
        .unwrap();
    g.add_edge("e1", "min", "max", c).unwrap();
    g
}
