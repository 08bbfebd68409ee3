//! Multiplicity of the foliation along the branches through [0:0:1] for the
//! reversible c = 0 members, by power series and through one blow-up.
//!
//!     cargo run --example series_multiplicity

use foliation_genus::exact::{int, ProjPoint};
use foliation_genus::foliation::{build_reversible_form, ReversibleParams};
use foliation_genus::genus::fiber_at;
use foliation_genus::local::{eigenvalues, multiplicity_blowup_relation, multiplicity_series_from, AffineGerm};

fn main() -> Result<(), foliation_genus::Error> {
    let origin = ProjPoint::new(int(0), int(0), int(1))?;
    for (p, q) in [(-1, 2), (-2, 3), (-4, 3), (-5, 3), (-5, 4), (-7, 4)] {
        let spec = build_reversible_form(&ReversibleParams::instance(p, q, false, true)?)?;
        let (form, _) = spec.saturated();
        for t in [1, -1] {
            let germ = AffineGerm::at_point(&form, &fiber_at(&spec, &int(t))?, &origin);
            // some fiber values need irrational Puiseux coefficients
            let Ok(branches) = multiplicity_series_from(&germ, 8) else { continue };
            let linear = match eigenvalues(&germ) {
                Ok(e) => format!("eigenvalues {e:?}"),
                Err(e) => e.to_string(),
            };
            println!("({p},{q}) fiber t={t}, {linear}");
            for (b, i) in &branches {
                let (link, _, _) = multiplicity_blowup_relation(&germ, b, b.u.order())?;
                println!(
                    "  branch of multiplicity {}: i = {i}, after blow-up i' = {}, nu = {}{}",
                    b.multiplicity(),
                    link.i_after,
                    link.nu,
                    if link.dicritical { " (dicritical)" } else { "" }
                );
            }
            break;
        }
    }
    Ok(())
}
