//! Surviving fiber classes force cycles in the graph.
//!
//! Whenever a fiber class is nonzero in the quotient module, the graph
//! cannot be a tree: the relations of a tree eliminate every class by
//! telescoping from the leaves inward. So first graph homology of rank
//! at least one is a necessary condition for a surviving class. This
//! example checks the bound on three graphs and shows that it is about
//! the shape of the graph, not about how finely the edges are split.

use reebmod::exactlin::CoefficientRing;
use reebmod::fixtures::{circle_bundle, fig2, sphere};
use reebmod::verify::check_thm1;

fn main() -> reebmod::Result<()> {
    let z2 = CoefficientRing::integers_mod(2)?;

    for (name, g) in [
        ("doubled-edge path", fig2()),
        ("two-vertex sphere graph", sphere()),
        ("vertexless circle bundle", circle_bundle("S1", 1)),
    ] {
        let report = check_thm1(&g, z2)?;
        println!("{name}:");
        println!("  h1 over {}: rank {}", report.ring, report.h1_rank);
        if report.vacuous {
            println!("  no class survives, nothing to check");
        } else {
            let survivors: Vec<String> =
                report.surviving.iter().map(|c| c.to_string()).collect();
            println!("  surviving classes: {}", survivors.join(", "));
            println!(
                "  bound h1 >= 1: {}",
                if report.ok { "holds" } else { "violated" }
            );
        }
        println!();
    }

    let g = fig2();
    let refined = g.subdivide_edge("e4", "mid", reebmod::reeb::Height::new(7, 2))?;
    let before = g.h1(CoefficientRing::Integers)?.quotient_rank();
    let after = refined.h1(CoefficientRing::Integers)?.quotient_rank();
    println!("subdividing the doubled edge: h1 rank {before} -> {after}");
    assert_eq!(before, after);
    Ok(())
}
