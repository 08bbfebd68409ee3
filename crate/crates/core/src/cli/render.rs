//! Markdown tables for the CLI.

use std::fmt::Write;

use crate::classify::{Classification, FirstIntegral, Origin};
use crate::diophantine::{Solution, SolutionFamily};
use crate::pencil::{Invariance, PencilReport};

fn tuple_text(f: &FirstIntegral) -> String {
    match &f.origin {
        Some(Origin::Reversible { p, q, .. }) => format!("({p}, {q})"),
        Some(Origin::LotkaVolterra { p, q, r, .. }) | Some(Origin::LvDerived { p, q, r }) => {
            format!("({p}, {q}, {r})")
        }
        None => String::new(),
    }
}

fn markers_text(f: &FirstIntegral) -> String {
    f.markers
        .iter()
        .map(|m| if m == "dagger" { "†".to_string() } else { m.clone() })
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn classification(doc: &Classification) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Elliptic first integrals: {}\n", doc.family.name());
    for case in &doc.cases {
        let _ = write!(out, "## Case {}: {}", case.id, case.conditions);
        if !case.parameters.is_empty() {
            let _ = write!(out, " ({} ≥ 0)", case.parameters.join(", "));
        }
        out.push_str("\n\n| # | first integral | exponents | markers |\n|---|---|---|---|\n");
        for (i, f) in case.integrals.iter().enumerate() {
            let _ = writeln!(out, "| {} | `{}` | {} | {} |", i + 1, f.display, tuple_text(f), markers_text(f));
        }
        out.push('\n');
    }
    out
}

/// `base + u·step₁ + v·step₂` written coordinatewise.
pub fn family_text(f: &SolutionFamily) -> String {
    let params = ["u", "v"];
    let coords: Vec<String> = (0..f.base.len())
        .map(|i| {
            let mut s = f.base[i].to_string();
            for (k, step) in f.steps.iter().enumerate() {
                match step[i] {
                    0 => {}
                    c if c > 0 => {
                        let _ = write!(s, "+{c}{}", params[k]);
                    }
                    c => {
                        let _ = write!(s, "{c}{}", params[k]);
                    }
                }
            }
            s
        })
        .collect();
    format!("({})", coords.join(", "))
}

pub fn solution(sol: &Solution) -> String {
    let names = sol.equation.names();
    let mut out = String::new();
    let _ = writeln!(out, "# Solutions of {}\n", sol.equation.id());
    if !sol.tuples.is_empty() || sol.families.is_empty() {
        let _ = writeln!(out, "| # | {} |", names.join(" | "));
        let _ = writeln!(out, "|---|{}", "---|".repeat(names.len()));
        for (i, t) in sol.tuples.iter().enumerate() {
            let cells: Vec<String> = t.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "| {} | {} |", i + 1, cells.join(" | "));
        }
    }
    if !sol.families.is_empty() {
        let _ = writeln!(out, "| # | ({}) | step | modulus |", names.join(", "));
        out.push_str("|---|---|---|---|\n");
        for (i, f) in sol.families.iter().enumerate() {
            let steps: Vec<String> = f.steps.iter().map(|s| format!("{s:?}")).collect();
            let _ = writeln!(out, "| {} | {} | {} | {} |", i + 1, family_text(f), steps.join(" "), f.modulus);
        }
    }
    let _ = writeln!(out, "\nexhaustive within bound {} ({} solutions in the box)", sol.bound, sol.box_count);
    out
}

pub fn pencil(r: &PencilReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Pencil {}\n", r.id);
    let _ = writeln!(out, "degree {}, tangency degree {}\n", r.degree, r.tangency_degree);
    let _ = writeln!(out, "Δ = {}\n", r.tangency);
    let factored: Vec<String> = r
        .components
        .iter()
        .map(|c| if c.multiplicity == 1 { format!("({})", c.factor) } else { format!("({})^{}", c.factor, c.multiplicity) })
        .collect();
    let _ = writeln!(out, "Δ = {} · {}\n", r.constant, factored.join(" "));
    out.push_str("| component | multiplicity | invariance |\n|---|---|---|\n");
    for c in &r.components {
        let inv = match &c.invariance {
            Invariance::InvariantAll => "invariant".to_string(),
            Invariance::NonInvariant => "non-invariant".to_string(),
            Invariance::InvariantSome(g) => format!("invariant for {}", g.join(", ")),
        };
        let _ = writeln!(out, "| {} | {} | {} |", c.factor, c.multiplicity, inv);
    }
    out
}
