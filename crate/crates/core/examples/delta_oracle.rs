//! Geometric genus of a plane curve from its delta invariants.
//!
//!     cargo run --example delta_oracle -- "y^2 z - x^3 - x^2 z"

use foliation_genus::exact::{int, ProjPoint, TriPoly};
use foliation_genus::oracle::genus_oracle;

fn main() -> Result<(), foliation_genus::Error> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "y^4 - x^3 z".to_string());
    let curve = TriPoly::parse(&text)?;
    let candidates = [
        ProjPoint::new(int(0), int(0), int(1))?,
        ProjPoint::new(int(0), int(1), int(0))?,
        ProjPoint::new(int(1), int(0), int(0))?,
    ];
    let report = genus_oracle(&curve, &candidates)?;
    println!("{text}: degree {}", report.degree);
    for d in &report.deltas {
        println!("  {}: multiplicities {:?}, delta {}", d.point, d.multiplicities, d.delta);
    }
    println!("genus {}", report.genus);
    Ok(())
}
