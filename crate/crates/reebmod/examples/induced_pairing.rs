//! The pairing induced on quotient modules by taking products.
//!
//! Sending a pair of fiber classes to the class of their product
//! descends to the quotients: every relation of either factor maps into
//! the span of the product's relations, which is exactly the forward
//! span inclusion of the product structure. The induced map is always
//! surjective, but it can be far from injective. Both extremes appear
//! below: the self-pairing of the `Z/2` example hits a `Z/2` target
//! nontrivially, while pairing against a two-point Morse function on a
//! sphere lands in the trivial module, so the map is the zero map.

use reebmod::exactlin::CoefficientRing;
use reebmod::fixtures::{fig2, sphere};
use reebmod::product::cf;
use reebmod::verify::induced_hom;

fn main() -> reebmod::Result<()> {
    let ring = CoefficientRing::Integers;
    let f = fig2();

    let self_product = cf(&f, &f)?;
    let rep = induced_hom(&f, &f, &self_product, ring)?;
    println!("self-pairing of the doubled-edge graph:");
    println!("  {} x {} -> {}", rep.left.describe(), rep.right.describe(), rep.target.describe());
    println!("  well defined: {}, surjective: {}", rep.well_defined_ok, rep.surjective_ok);
    for entry in &rep.image_table {
        let coords: Vec<String> = entry.image.iter().map(|c| c.to_string()).collect();
        println!(
            "  ({}, {}) -> {} with coordinates [{}]",
            entry.left, entry.right, entry.product, coords.join(", ")
        );
    }
    println!("  zero map: {}", rep.zero_map);
    assert!(!rep.zero_map);

    let fp = sphere();
    let mixed_product = cf(&f, &fp)?;
    let rep = induced_hom(&f, &fp, &mixed_product, ring)?;
    println!("\npairing against a two-point Morse function:");
    println!("  {} x {} -> {}", rep.left.describe(), rep.right.describe(), rep.target.describe());
    println!("  well defined: {}, surjective: {}", rep.well_defined_ok, rep.surjective_ok);
    println!("  zero map: {}", rep.zero_map);
    println!("  the target is trivial, so surjectivity is free and the");
    println!("  pairing forgets everything the factors knew.");
    assert!(rep.zero_map && rep.surjective_ok);
    Ok(())
}
