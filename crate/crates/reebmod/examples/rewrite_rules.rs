//! Rewrite rules identify product labels that name the same manifold.
//!
//! Distinct atoms can have diffeomorphic products: the motivating case
//! is an exotic 10-sphere `Sigma`, where `Sigma x S1` is diffeomorphic
//! to `S10 x S1` even though `Sigma` and `S10` differ. Declaring the
//! rule `Sigma*S1 => S10*S1` makes label canonicalization perform that
//! identification, so product graphs built with the rule carry the
//! standard name. The rule only fires on the full product: the bare
//! `Sigma` class is untouched. Quotients are computed under both symbol
//! tables and reported separately; each run is deterministic.

use reebmod::ccmod::quotient;
use reebmod::exactlin::{CoefficientRing, Element};
use reebmod::fixtures::{circle_bundle, sigma_line};
use reebmod::product::cf;

fn main() -> reebmod::Result<()> {
    let bundle = circle_bundle("S1", 1);

    for (mode, with_rule) in [("without the rule", false), ("with the rule", true)] {
        let f = sigma_line(with_rule);
        println!("{mode}:");

        let sigma = f.symbols().class(&["Sigma"])?;
        let s1 = f.symbols().class(&["S1"])?;
        println!("  bare class stays itself: [{sigma}]");
        println!(
            "  [Sigma] * [S1] = {}",
            Element::from_class(&sigma).times_class(&s1, f.symbols())?
        );

        let product = cf(&f, &bundle)?;
        let labels: Vec<String> = product.fiber_labels().iter().map(|c| c.to_string()).collect();
        println!("  product graph fiber labels: {}", labels.join(", "));

        let p = quotient(&product, CoefficientRing::Integers)?;
        println!("  product quotient: {}", p.describe());
        println!();
    }

    let plain = cf(&sigma_line(false), &bundle)?;
    let ruled = cf(&sigma_line(true), &bundle)?;
    assert_eq!(plain.fiber_labels().iter().next().unwrap().to_string(), "S1*Sigma");
    assert_eq!(ruled.fiber_labels().iter().next().unwrap().to_string(), "S1*S10");
    println!("same geometry, two spellings; the rule picks the standard one.");
    Ok(())
}
