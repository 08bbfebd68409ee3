//! Tangency divisors of the built-in pencils and which components stay
//! invariant.
//!
//!     cargo run --example pencil_tangency

use foliation_genus::pencil::{builtin, example_first_integral, example_symbolic, BUILTIN_IDS};
use foliation_genus::exact::form::is_first_integral;

fn main() -> Result<(), foliation_genus::Error> {
    for id in BUILTIN_IDS {
        let report = builtin(id)?.analyze()?;
        println!("{id}: degree {}, tangency degree {}", report.degree, report.tangency_degree);
        for c in &report.components {
            println!("  ({})^{}  {:?}", c.factor, c.multiplicity, c.invariance);
        }
    }
    // α kept as an indeterminate
    let (member, _) = example_symbolic();
    let (n, d) = example_first_integral();
    println!("H_alpha is a first integral of every member: {}", is_first_integral(&member, &n, &d));
    Ok(())
}
