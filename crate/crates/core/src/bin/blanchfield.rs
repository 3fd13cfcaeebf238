use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use blanchfield::forms::{decompose, JumpMap, LinkingForm};
use blanchfield::pipeline::{selftest, torus_blanchfield, torus_decomposition};
use blanchfield::satellite::{sliceness_obstruction, torus_decomposition_oracle, KnotExpr, ObstructionReport};
use blanchfield::Result;

/// Twisted Blanchfield forms: computation, classification and sliceness
/// obstructions.
#[derive(Parser, Debug)]
#[command(name = "blanchfield", version)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Metabelian Blanchfield form of T(2, 2k+1) from the full pipeline.
    TorusBlanchfield {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        theta: i64,
        /// Print the linking form itself rather than its decomposition.
        #[arg(long)]
        form: bool,
    },
    /// Decompose a linking form read from a JSON file ("-" for stdin).
    Decompose { form_file: PathBuf },
    /// Signature jumps of a linking form read from a JSON file.
    Jumps { form_file: PathBuf },
    /// Closed-form decomposition for T(2, 2k+1), 1 ≤ θ ≤ k.
    Oracle {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        theta: i64,
    },
    /// Sliceness obstruction for a connected sum of (2, q) torus knots and cables.
    Obstruct {
        /// Knot expression, e.g. "T(2,3;2,13) # -T(2,15)".
        expr: String,
        /// Odd primes ℓ to test (default: all dividing |H₁(Σ₂)|).
        #[arg(long, value_delimiter = ',')]
        ell: Vec<u64>,
    },
    /// Golden comparisons of the pipeline against closed forms.
    Selftest {
        #[arg(long, default_value_t = 6)]
        max_k: u32,
    },
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: String,
}

fn read_form(path: &PathBuf) -> Result<LinkingForm> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s)?;
    } else {
        s = std::fs::read_to_string(path)?;
    }
    LinkingForm::from_json(&s)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn jumps_text(j: &JumpMap) -> String {
    if j.is_zero() {
        return "no jumps\n".into();
    }
    let mut out = String::from("root        jump\n");
    for (xi, v) in j.iter() {
        out += &format!("{:<11} {v:+}\n", xi.to_string());
    }
    out
}

fn report_text(r: &ObstructionReport) -> String {
    let mut out = format!("knot: {}\nH1(Σ2) = ", r.knot);
    let groups: Vec<String> = r.cover.orders.iter().map(|o| format!("Z{o}")).collect();
    out += &groups.join(" ⊕ ");
    out += &format!("\nmetabolisers: {}\n", r.metabolisers.len());
    for t in &r.tables {
        out += &format!("\nℓ = {}\ncharacter        metabolic  jumps\n", t.ell);
        for row in &t.rows {
            let c: Vec<String> = row.character.iter().map(|v| v.to_string()).collect();
            out += &format!("({:<14} {:<10} {}\n", c.join(",") + ")", row.metabolic, row.jumps);
        }
    }
    out += "\nwitnesses:\n";
    for w in &r.witnesses {
        out += &format!(
            "  P{} ℓ={} χ={:?} jump {:+} at {}\n",
            w.metaboliser, w.ell, w.character, w.jump, w.location
        );
    }
    out += &format!("\nverdict: {}\n", to_json(&r.verdict).trim_matches('"'));
    out
}

fn run(cli: Cli) -> Result<(String, bool)> {
    let text = cli.text;
    Ok(match cli.command {
        Command::TorusBlanchfield { k, theta, form } => {
            if form {
                (torus_blanchfield(k, theta)?.to_json(), true)
            } else {
                (torus_decomposition(k, theta)?.to_json(), true)
            }
        }
        Command::Decompose { form_file } => (decompose(&read_form(&form_file)?)?.to_json(), true),
        Command::Jumps { form_file } => {
            let j = JumpMap::from_decomposition(&decompose(&read_form(&form_file)?)?);
            (if text { jumps_text(&j) } else { to_json(&j) }, true)
        }
        Command::Oracle { k, theta } => (torus_decomposition_oracle(k, theta)?.to_json(), true),
        Command::Obstruct { expr, ell } => {
            let e = KnotExpr::parse(&expr)?;
            let r = sliceness_obstruction(&e, (!ell.is_empty()).then_some(ell.as_slice()))?;
            (if text { report_text(&r) } else { r.to_json() }, true)
        }
        Command::Selftest { max_k } => {
            let checks = selftest(max_k)?;
            let ok = checks.iter().all(|c| c.passed);
            let out = if text {
                checks
                    .iter()
                    .map(|c| format!("{} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name))
                    .collect()
            } else {
                to_json(&serde_json::json!({ "passed": ok, "checks": checks }))
            };
            (out, ok)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            let report = ErrorReport {
                error: e.code(),
                message: e.to_string(),
            };
            eprintln!("{}", to_json(&report));
            ExitCode::from(if e.is_usage() { 1 } else { 2 })
        }
    }
}

