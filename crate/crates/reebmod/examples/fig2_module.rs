//! The module of a Morse function on a surface bundle over the circle.
//!
//! The running fixture is a height function whose Reeb graph is a path
//! with a doubled top edge: the regular fibers sweep through a sphere,
//! a torus, a genus-3 nonorientable surface, and finally two Klein
//! bottle components meeting at a saddle. Each singular vertex imposes
//! one relation among the fiber classes, and the quotient of the free
//! module on all fiber classes by those relations is a finite group:
//! `Z/2`, generated by the Klein bottle class.

use reebmod::ccmod::{cc, quotient};
use reebmod::exactlin::CoefficientRing;
use reebmod::fixtures::fig2;
use reebmod::format::serialize;

fn main() -> reebmod::Result<()> {
    let g = fig2();
    println!("the graph, in file syntax:\n");
    print!("{}", serialize(&g, None));

    println!("\neach vertex relates the fibers below it to the fibers above:");
    for (vertex, relation) in g.vertex_relations() {
        println!("  {vertex}: {relation}");
    }

    let data = cc(&g, None, false)?;
    println!("\nfiber labels: {:?}", data.fiber_labels.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    println!("outer part: {}", data.outer_description());
    println!("effective generators (nonzero relations): {}", data.effective.len());

    for ring in [
        CoefficientRing::Integers,
        CoefficientRing::integers_mod(2)?,
        CoefficientRing::Rationals,
    ] {
        let p = quotient(&g, ring)?;
        print!("\nquotient over {ring}: {}", p.describe());
        for gen in p.generators() {
            match gen.order {
                Some(order) => print!("  (generator {} of order {order})", gen.element),
                None => print!("  (free generator {})", gen.element),
            }
        }
        println!();
    }

    println!("\nthe doubled Klein-bottle edge is what makes the torsion:");
    println!("the saddle below it forces [N3] = 2[K], and the maximum");
    println!("above kills 2[K], so [K] survives with order two.");
    Ok(())
}
