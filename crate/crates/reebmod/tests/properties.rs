//! Randomized invariants, checked with shrinking.
//!
//! Graph-shaped properties draw a seed and derive a graph from it, so
//! every failure reduces to a single reproducible seed. Matrix and
//! element properties draw their data directly.

use proptest::prelude::*;

use reebmod::ccmod::{cc, direct_sum_check, quotient};
use reebmod::exactlin::{
    bilinear_product, exhaustive_membership, membership, smith_normal_form, CoefficientRing,
    Element, IntMat,
};
use reebmod::format::{parse, serialize};
use reebmod::reeb::{Height, ReebGraph, Target};
use reebmod::verify::{random_reeb_graph, RandomGraphParams};

const Z: CoefficientRing = CoefficientRing::Integers;

fn graph_from(seed: u64, line: bool, vertices: usize, labels: usize) -> ReebGraph {
    let params = RandomGraphParams {
        target: if line { Target::Line } else { Target::Circle },
        vertices,
        labels,
        ..RandomGraphParams::default()
    };
    random_reeb_graph(seed, &params).expect("parameters are in range")
}

fn arb_graph() -> impl Strategy<Value = ReebGraph> {
    (any::<u64>(), any::<bool>(), 4..10usize, 2..5usize)
        .prop_map(|(seed, line, v, l)| graph_from(seed, line, v, l))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialization_round_trips_to_the_same_graph(g in arb_graph()) {
        let text = serialize(&g, None);
        let back = parse(&text).unwrap().graph;
        prop_assert_eq!(&back, &parse(&serialize(&back, None)).unwrap().graph);
        prop_assert_eq!(back.fiber_labels(), g.fiber_labels());
        prop_assert_eq!(back.vertex_relations(), g.vertex_relations());
        prop_assert_eq!(serialize(&back, None), text);
    }

    #[test]
    fn vertex_relations_always_telescope_to_zero(g in arb_graph()) {
        let sum = g
            .vertex_relations()
            .into_iter()
            .fold(Element::zero(), |acc, (_, r)| acc.add(&r));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn compatible_submodule_splits_as_a_direct_sum(g in arb_graph()) {
        let data = cc(&g, None, false).unwrap();
        prop_assert!(direct_sum_check(&data));
    }

    #[test]
    fn quotient_is_identical_over_any_enclosing_universe(g in arb_graph()) {
        // The universe feeds the outer part only; the effective part and
        // hence the quotient presentation never move.
        let plain = cc(&g, None, false).unwrap();
        let labels: Vec<_> = g.fiber_labels().into_iter().collect();
        let widened = cc(&g, Some(&labels), false).unwrap();
        prop_assert_eq!(plain.effective, widened.effective);
        prop_assert_eq!(quotient(&g, Z).unwrap(), quotient(&g, Z).unwrap());
    }

    #[test]
    fn subdividing_an_edge_changes_no_invariant(g in arb_graph(), pick in any::<prop::sample::Index>()) {
        let with_ends: Vec<_> = g.edges().iter().filter(|e| !e.is_cycle()).collect();
        prop_assume!(!with_ends.is_empty());
        let e = with_ends[pick.index(with_ends.len())];
        let (b, t) = (e.bottom().unwrap(), e.top().unwrap());
        let (hb, ht) = (g.vertex(b).unwrap().height, g.vertex(t).unwrap().height);
        // Midpoint of the interval; for a wrapping circle edge any fresh
        // regular height in between does not exist, so skip those.
        prop_assume!(hb < ht);
        let mid = (hb + ht) / 2;
        prop_assume!(g.vertices().iter().all(|v| v.height != mid));
        let cut = g.subdivide_edge(&e.id.clone(), "cutpoint", mid).unwrap();
        prop_assert_eq!(
            cut.h1(Z).unwrap().quotient_rank(),
            g.h1(Z).unwrap().quotient_rank()
        );
        prop_assert!(quotient(&cut, Z).unwrap().same_shape(&quotient(&g, Z).unwrap()));
    }

    #[test]
    fn pairing_of_elements_is_bilinear(
        coeffs in prop::collection::vec(-4i64..=4, 4),
        scale in -3i64..=3,
    ) {
        let g = reebmod::fixtures::fig2();
        let labels: Vec<_> = g.fiber_labels().into_iter().collect();
        let pairs: Vec<_> = labels.iter().cloned().zip(coeffs.iter().copied()).collect();
        let a = Element::integral_combination(&pairs);
        let b = Element::from_class(&labels[0]);
        let c = Element::from_class(&labels[1]);
        let s = g.symbols();

        let left = bilinear_product(&a.scale_int(scale), &b.add(&c), s).unwrap();
        let right = bilinear_product(&a, &b, s)
            .unwrap()
            .add(&bilinear_product(&a, &c, s).unwrap())
            .scale_int(scale);
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_form_certificates_always_verify(
        rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 1..=4), 1..=4),
    ) {
        let width = rows[0].len();
        prop_assume!(rows.iter().all(|r| r.len() == width));
        let a = IntMat::from_rows(&rows);
        let s = smith_normal_form(&a);
        prop_assert!(s.verify(&a));
        prop_assert!(s.u.is_unimodular());
        prop_assert!(s.v.is_unimodular());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert_eq!((&w[1] % &w[0]).to_string(), "0");
        }
    }

    #[test]
    fn constructed_members_are_always_recognized(
        cols in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=4),
        mix in prop::collection::vec(-2i64..=2, 4),
    ) {
        let mut table = reebmod::symbols::SymbolTable::new();
        for name in ["A", "B", "C"] {
            table.declare_atom(name, 2, true, false).unwrap();
        }
        let basis: Vec<_> = ["A", "B", "C"].iter().map(|n| table.class(&[n]).unwrap()).collect();
        let gens: Vec<Element> = cols
            .iter()
            .map(|col| {
                Element::integral_combination(
                    &basis.iter().cloned().zip(col.iter().copied()).collect::<Vec<_>>(),
                )
            })
            .collect();
        let x = gens
            .iter()
            .zip(mix.iter())
            .fold(Element::zero(), |acc, (g, m)| acc.add(&g.scale_int(*m)));

        let solved = membership(&x, &gens, Z).unwrap();
        prop_assert!(solved.contained);
        prop_assert!(exhaustive_membership(&x, &gens, Z, 3).is_some()
            || mix.iter().any(|m| m.abs() > 3));
    }
}

#[test]
fn subdivision_height_is_exact_not_floating() {
    // A spot check that the midpoint above stays rational: 1/2 of an
    // odd interval is a true fraction, and the file format keeps it.
    let g = reebmod::fixtures::fig2();
    let cut = g.subdivide_edge("e1", "m", Height::new(1, 2)).unwrap();
    let text = serialize(&cut, None);
    assert!(text.contains("vertex m height=1/2"));
    let back = parse(&text).unwrap().graph;
    assert_eq!(back.vertex("m").unwrap().height, Height::new(1, 2));
    assert_eq!(back.vertex_relations(), cut.vertex_relations());
}
