//! Prints both classifications and instantiates a parametric family.
//!
//!     cargo run --example classify_families

use foliation_genus::classify::{classify_lv, classify_reversible, ClassifyOptions};
use foliation_genus::cli::render;

fn main() -> Result<(), foliation_genus::Error> {
    let rev = classify_reversible(ClassifyOptions::default());
    let lv = classify_lv();
    print!("{}", render::classification(&rev));
    print!("{}", render::classification(&lv));

    let family = &rev.case("3").expect("a=c=0 case").integrals[0];
    println!("{}:", family.display);
    for u in 0..4 {
        match family.tuple_at(u, 0) {
            Some(t) => println!("  u={u}: (p,q) = ({}, {}), genus {:?}", t[0], t[1], family.closed_form_at(u, 0)?),
            None => println!("  u={u}: outside the family's domain"),
        }
    }
    Ok(())
}
