//! Exhaustive solutions of the gcd equations behind the elliptic cases.
//!
//!     cargo run --example solve_tables -- 40

use foliation_genus::cli::render;
use foliation_genus::diophantine::{solve, Equation};

fn main() -> Result<(), foliation_genus::Error> {
    let bound = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    for eq in Equation::ALL {
        print!("{}", render::solution(&solve(eq, bound)?));
        println!();
    }
    Ok(())
}
