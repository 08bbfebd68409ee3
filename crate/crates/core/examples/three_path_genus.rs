//! Genus of a few family members by the closed form, the CL index
//! equation and the delta-invariant oracle.
//!
//!     cargo run --example three_path_genus

use foliation_genus::foliation::{build_lv_form, build_reversible_form, LotkaVolterraParams, ReversibleParams};
use foliation_genus::genus::{closed_form_genus, genus_cl};
use foliation_genus::oracle::oracle_for_spec;

fn main() -> Result<(), foliation_genus::Error> {
    let specs = [
        ("reversible (-1,2)", build_reversible_form(&ReversibleParams::instance(-1, 2, false, false)?)?),
        ("reversible (-1,3)", build_reversible_form(&ReversibleParams::instance(-1, 3, false, false)?)?),
        ("reversible (-5,4), c=0", build_reversible_form(&ReversibleParams::instance(-5, 4, false, true)?)?),
        ("lotka-volterra (1,2,3)", build_lv_form(&LotkaVolterraParams::instance(1, 2, 3, None)?)?),
        ("lotka-volterra (1,1,4)", build_lv_form(&LotkaVolterraParams::instance(1, 1, 4, None)?)?),
    ];
    for (name, spec) in &specs {
        let cl = genus_cl(spec)?;
        let oracle = oracle_for_spec(spec)?;
        println!(
            "{name:26} closed form {}  CL {} (degree {}, chi {})  oracle {}",
            closed_form_genus(spec)?,
            cl.genus,
            cl.curve_degree,
            cl.chi,
            oracle.genus
        );
        for p in &cl.points {
            let idx: Vec<u32> = p.branches.iter().map(|b| b.i).collect();
            println!("    {} indices {idx:?}", p.point);
        }
    }
    Ok(())
}
