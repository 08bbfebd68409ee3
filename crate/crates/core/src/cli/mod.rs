//! Command-line front end: `classify`, `genus`, `solve`, `pencil`, `sweep`.
//!
//! Exit codes: 0 when every requested check passes, 1 on a mathematical
//! disagreement, 2 on bad input.

pub mod render;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::classify::{classify, ClassFamily, ClassifyOptions};
use crate::diophantine::{solve, Equation};
use crate::error::{Error, Result};
use crate::exact::rational::parse_rational;
use crate::exact::{OneForm, Rational, TriPoly};
use crate::foliation::{build_lv_form, build_reversible_form, FoliationSpec, LotkaVolterraParams, ReversibleParams};
use crate::genus::{closed_form_genus, genus_cl, lv_case, LvCase, RevCase};
use crate::oracle::oracle_for_spec;
use crate::pencil::{builtin, Pencil};
use sweep::{sweep_case, SweepCase, SweepConfig};

pub const JOBS_ENV: &str = "FOLIATION_GENUS_JOBS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Debug, Parser)]
#[command(name = "foliation-genus", version, about = "Genus of generic fibers of Reversible and Lotka-Volterra foliations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for the random tuple samples.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for sweeps; FOLIATION_GENUS_JOBS overrides.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Markdown)]
    pub format: Format,
    /// Write to a file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full list of elliptic first integrals of a family.
    Classify {
        /// reversible | lotka-volterra
        family: String,
        /// Also emit the literal c≠0 reading of the second case-5 integral.
        #[arg(long)]
        literal_case5: bool,
    },
    /// Genus of one member from the closed form, CL and optionally the oracle.
    #[command(allow_negative_numbers = true)]
    Genus {
        family: String,
        /// p q (reversible) or p q r (lotka-volterra)
        #[arg(num_args = 2..=3, required = true)]
        params: Vec<i64>,
        /// ac | a | 00 | neg-c | neg-0 (reversible), I | II | III (lotka-volterra)
        #[arg(long)]
        case: Option<String>,
        /// Shorthand for --case ac.
        #[arg(long)]
        ac: bool,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        c: Option<String>,
        /// Also run the delta-invariant oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Solutions of one of the gcd equations within a box.
    Solve {
        /// lv-i | lv-ii | lv-iii | rev-ac | rev-a | rev-00-pos | rev-00-neg | rev-neg-c | rev-neg-0
        equation: String,
        bound: i64,
    },
    /// Tangency and invariance report of a built-in pencil or of two form files.
    Pencil {
        /// reversible-pencil | lins-neto-p2 | lins-neto-p3 | lins-neto-p4 | lins-neto-p3-prime
        id: Option<String>,
        /// Two files with dx:/dy:/dz: blocks.
        #[arg(long, num_args = 2, conflicts_with = "id")]
        forms: Option<Vec<PathBuf>>,
        /// One candidate factor per line.
        #[arg(long)]
        candidates: Option<PathBuf>,
    },
    /// Closed form vs CL over a box, with oracle checks on a seeded sample.
    Sweep {
        /// reversible | lotka-volterra | all
        #[arg(default_value = "all")]
        family: String,
        #[arg(long, default_value_t = 15)]
        bound: i64,
        #[arg(long, default_value_t = 50)]
        random: usize,
        #[arg(long)]
        no_oracle: bool,
    },
}

/// Effective job count: the environment wins over the flag.
pub fn jobs_from(flag: usize) -> usize {
    std::env::var(JOBS_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(flag).max(1)
}

struct Output {
    text: String,
    code: i32,
}

fn emit_json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn input_error(e: Error) -> bool {
    matches!(e, Error::Parameter(_) | Error::Parse(_) | Error::ProportionalForms | Error::DegreeMismatch(..) | Error::RadialContraction)
}

/// Runs the CLI on `args`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = dispatch(&cli);
    match result {
        Ok(o) => {
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &o.text) {
                    let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                    return 2;
                }
            } else {
                let _ = write!(out, "{}", o.text);
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if input_error(e) {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Classify { family, literal_case5 } => {
            let doc = classify(ClassFamily::parse(family)?, ClassifyOptions { literal_case5: *literal_case5 });
            let text = match cli.format {
                Format::Json => emit_json(&serde_json::to_value(&doc).expect("serializable")),
                Format::Markdown => render::classification(&doc),
            };
            Ok(Output { text, code: 0 })
        }
        Command::Genus { family, params, case, ac, a, b, c, oracle } => {
            let case = if *ac { Some("ac".to_string()) } else { case.clone() };
            let coeffs = [a, b, c].map(|s| s.as_deref().map(parse_rational).transpose());
            let [a, b, c] = coeffs;
            let spec = member_spec(ClassFamily::parse(family)?, params, case.as_deref(), [a?, b?, c?])?;
            genus_command(&spec, params, *oracle, cli.format)
        }
        Command::Solve { equation, bound } => {
            let eq = Equation::parse(equation)?;
            let sol = solve(eq, *bound)?;
            let text = match cli.format {
                Format::Json => emit_json(&json!({
                    "equation": eq.id(),
                    "variables": eq.names(),
                    "bound": sol.bound,
                    "tuples": sol.tuples,
                    "families": sol.families.iter().map(|f| json!({
                        "base": f.base, "steps": f.steps, "modulus": f.modulus,
                        "text": render::family_text(f),
                    })).collect::<Vec<_>>(),
                    "box_count": sol.box_count,
                    "exhaustive_within_bound": sol.bound,
                })),
                Format::Markdown => render::solution(&sol),
            };
            Ok(Output { text, code: 0 })
        }
        Command::Pencil { id, forms, candidates } => {
            let mut pencil = match (id, forms) {
                (Some(id), None) => builtin(id)?,
                (None, Some(files)) => {
                    let read = |p: &PathBuf| -> Result<OneForm> {
                        let text = std::fs::read_to_string(p)
                            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display())))?;
                        OneForm::parse(&text)
                    };
                    Pencil::new("custom", read(&files[0])?, read(&files[1])?)?
                }
                _ => return Err(Error::Parse("give a pencil id or --forms FILE FILE".into())),
            };
            if let Some(path) = candidates {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
                for line in text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()) {
                    pencil.candidates.push(TriPoly::parse(line)?);
                }
            }
            let report = pencil.analyze()?;
            let text = match cli.format {
                Format::Json => emit_json(&serde_json::to_value(&report).expect("serializable")),
                Format::Markdown => render::pencil(&report),
            };
            Ok(Output { text, code: 0 })
        }
        Command::Sweep { family, bound, random, no_oracle } => {
            if *bound < 1 {
                return Err(Error::Parameter("bound must be at least 1".into()));
            }
            let cases: Vec<SweepCase> = SweepCase::all()
                .into_iter()
                .filter(|c| match family.as_str() {
                    "all" => true,
                    f => matches!(
                        (ClassFamily::parse(f), c),
                        (Ok(ClassFamily::Reversible), SweepCase::Rev(_)) | (Ok(ClassFamily::LotkaVolterra), SweepCase::Lv(_))
                    ),
                })
                .collect();
            if cases.is_empty() {
                return Err(Error::Parse(format!("unknown family {family}")));
            }
            let cfg = SweepConfig { bound: *bound, random: *random, seed: cli.seed, jobs: jobs_from(cli.jobs), oracle: !no_oracle };
            let summaries: Vec<_> = cases.iter().map(|&c| sweep_case(c, &cfg)).collect();
            let ok = summaries.iter().all(|s| s.failures.is_empty());
            let text = match cli.format {
                Format::Json => emit_json(&json!({ "bound": bound, "seed": cli.seed, "cases": summaries, "agree": ok })),
                Format::Markdown => {
                    let mut s = String::from("| case | members | oracle checks | disagreements |\n|---|---|---|---|\n");
                    for c in &summaries {
                        s.push_str(&format!("| {} | {} | {} | {} |\n", c.case, c.grid, c.oracle_checked, c.failures.len()));
                    }
                    for c in &summaries {
                        for f in &c.failures {
                            s.push_str(&format!("\n{}: closed form {:?}, CL {:?}, oracle {:?} {}", f.member.label(), f.closed_form, f.cl, f.oracle, f.error.clone().unwrap_or_default()));
                        }
                    }
                    s
                }
            };
            Ok(Output { text, code: if ok { 0 } else { 1 } })
        }
    }
}

/// Builds a member from the command line. Coefficients default to the
/// instance of the case (`a = c = −1, b = 1` reversible, `a = b = c = 1`
/// Lotka-Volterra), flags override individual coefficients.
pub fn member_spec(
    family: ClassFamily,
    params: &[i64],
    case: Option<&str>,
    coeffs: [Option<Rational>; 3],
) -> Result<FoliationSpec> {
    let pick = |base: Rational, i: usize| coeffs[i].clone().unwrap_or(base);
    match family {
        ClassFamily::Reversible => {
            let [p, q] = params else {
                return Err(Error::Parameter("reversible members take p q".into()));
            };
            let rc = case.map(RevCase::parse).transpose()?;
            let (a0, c0) = rc.map(|c| c.zeros()).unwrap_or((false, false));
            let base = ReversibleParams::instance(*p, *q, a0, c0)?;
            let params = ReversibleParams::new(*p, *q, pick(base.a, 0), pick(base.b, 1), pick(base.c, 2))?;
            if let Some(c) = rc {
                if !c.admits(*p, *q) {
                    return Err(Error::Parameter(format!("(p,q) = ({p},{q}) outside case {}", c.name())));
                }
            }
            build_reversible_form(&params)
        }
        ClassFamily::LotkaVolterra => {
            let [p, q, r] = params else {
                return Err(Error::Parameter("lotka-volterra members take p q r".into()));
            };
            let lc = case.map(LvCase::parse).transpose()?;
            let zero = lc.and_then(|c| c.zero());
            let base = LotkaVolterraParams::instance(*p, *q, *r, zero)?;
            let params = LotkaVolterraParams::new(*p, *q, *r, pick(base.a, 0), pick(base.b, 1), pick(base.c, 2))?;
            let found = lv_case(&params)?;
            if let Some(c) = lc {
                if c != found {
                    return Err(Error::Parameter(format!("coefficients put the member in case {}, not {}", found.name(), c.name())));
                }
            }
            build_lv_form(&params)
        }
    }
}

fn genus_command(spec: &FoliationSpec, params: &[i64], with_oracle: bool, format: Format) -> Result<Output> {
    let closed = closed_form_genus(spec)?;
    let cl = genus_cl(spec).map(|r| r.genus);
    let oracle = with_oracle.then(|| oracle_for_spec(spec).map(|r| r.genus));
    let cl_ok = cl.as_ref().ok() == Some(&closed);
    let oracle_ok = oracle.as_ref().map(|o| o.as_ref().ok() == Some(&closed)).unwrap_or(true);
    let agree = cl_ok && oracle_ok;
    let show = |r: &Result<u32>| match r {
        Ok(g) => g.to_string(),
        Err(e) => format!("error: {e}"),
    };
    let text = match format {
        Format::Json => emit_json(&json!({
            "params": params,
            "closed_form": closed,
            "cl": cl.as_ref().ok(),
            "cl_error": cl.as_ref().err().map(|e| e.to_string()),
            "oracle": oracle.as_ref().and_then(|o| o.as_ref().ok()),
            "oracle_error": oracle.as_ref().and_then(|o| o.as_ref().err()).map(|e| e.to_string()),
            "agree": agree,
        })),
        Format::Markdown => {
            let mut s = format!("closed form: {closed}\nCL: {}\n", show(&cl));
            if let Some(o) = &oracle {
                s.push_str(&format!("oracle: {}\n", show(o)));
            }
            s.push_str(if agree { "agree\n" } else { "DISAGREE\n" });
            s
        }
    };
    Ok(Output { text, code: if agree { 0 } else { 1 } })
}

/// Entry point for the binary.
pub fn main() -> ! {
    let code = run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code)
}
