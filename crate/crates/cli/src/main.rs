//! Command-line front end: evaluate sum/value specifications, run the
//! verification suites, print the height-one generating-function table, and
//! export the identity catalog.
//!
//! Exit codes: 0 all checks pass, 1 at least one identity fails,
//! 2 usage/parse errors.

mod report;
mod spec_text;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use eulerium_core::identities::{catalog_from_json, catalog_json};
use eulerium_core::{genfunc, sums, Accel, EvalConfig};

use report::{ConfigOut, Item, Report};
use spec_text::{parse_spec, Parsed};

#[derive(Parser)]
#[command(name = "eulerium", version, about = "High-precision Euler-type sums, multiple R-values and their identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct EvalFlags {
    /// Decimal digits of working precision.
    #[arg(long, default_value_t = 40, env = "EULERIUM_DIGITS")]
    digits: u32,
    /// Series term budget.
    #[arg(long = "terms", default_value_t = 1_000_000)]
    terms: u64,
    /// Target absolute error.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Plain summation with a tail bound instead of extrapolation.
    #[arg(long)]
    direct: bool,
    /// Machine-readable JSON on stdout.
    #[arg(long)]
    json: bool,
}

impl EvalFlags {
    fn config(&self) -> Result<EvalConfig, String> {
        let cfg = EvalConfig {
            digits: self.digits,
            max_terms: self.terms,
            checkpoints: 8,
            tol: self.tol,
            accel: if self.direct { Accel::DirectTailBound } else { Accel::Extrapolated },
        };
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a sum or multiple R-value given in the mini-grammar,
    /// e.g. `R{~2;~2}`, `S{1;2}` or `MRV(2,1,1)`.
    Eval {
        spec: String,
        #[command(flatten)]
        flags: EvalFlags,
    },
    /// Run a verification suite (examples, linear-corollary, thm31, thm33,
    /// thm34, quasi-shuffle, genfunc, triple, all) or a single catalog
    /// record by name.
    Verify {
        name: String,
        #[command(flatten)]
        flags: EvalFlags,
        /// Re-verify against a serialized catalog file.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Print the height-one R-value table for all x^m y^n with m+n <= D.
    Gf {
        /// Truncation degree (2..=8).
        degree: u32,
        #[command(flatten)]
        flags: EvalFlags,
    },
    /// Print (or write) the identity catalog as JSON.
    Catalog {
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Eval { spec, flags } => cmd_eval(&spec, &flags),
        Command::Verify { name, flags, catalog } => cmd_verify(&name, &flags, catalog.as_deref()),
        Command::Gf { degree, flags } => cmd_gf(degree, &flags),
        Command::Catalog { out } => {
            let json = catalog_json();
            match out {
                Some(path) => std::fs::write(&path, json)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => println!("{json}"),
            }
            Ok(true)
        }
    }
}

fn cmd_eval(spec: &str, flags: &EvalFlags) -> Result<bool, String> {
    let cfg = flags.config()?;
    let parsed = parse_spec(spec).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let result = match &parsed {
        Parsed::Sum(s) => sums::euler_sum(s, &cfg),
        Parsed::Mrv(idx) => sums::mrv(idx, &cfg),
    }
    .map_err(|e| e.to_string())?;
    let item = Item {
        name: parsed.to_string(),
        lhs: result.value.to_decimal(cfg.digits),
        rhs: None,
        abs_err: result.err_estimate.to_decimal(3),
        digits: cfg.digits,
        terms_used: result.terms_used,
        tol: cfg.tol,
        pass: true,
        runtime_ms: start.elapsed().as_millis() as u64,
    };
    let report = Report {
        suite: "eval".into(),
        config: ConfigOut::from(&cfg),
        note: None,
        items: vec![item],
    };
    if flags.json {
        report.print_json();
    } else {
        report.print_human();
    }
    Ok(true)
}

fn cmd_verify(name: &str, flags: &EvalFlags, catalog: Option<&std::path::Path>) -> Result<bool, String> {
    let cfg = flags.config()?;
    let file_entries = match catalog {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            Some(catalog_from_json(&text).map_err(|e| e.to_string())?)
        }
        None => None,
    };
    let report = suites::run_suite(name, &cfg)
        .or_else(|| suites::run_record(name, &cfg, file_entries.as_deref()))
        .ok_or_else(|| format!("unknown suite or identity '{name}' (suites: {})", suites::SUITES.join(", ")))?;
    if flags.json {
        report.print_json();
    } else {
        report.print_human();
    }
    Ok(report.all_pass())
}

fn cmd_gf(degree: u32, flags: &EvalFlags) -> Result<bool, String> {
    if !(2..=8).contains(&degree) {
        return Err(format!("degree {degree} out of range (2..=8)"));
    }
    let cfg = flags.config()?;
    let mut items = Vec::new();
    for total in 2..=degree {
        for m in 1..total {
            let n = total - m;
            let start = Instant::now();
            let sym = genfunc::height_one_mrv_with_degree(m, n, degree)
                .map_err(|e| e.to_string())?
                .normalize_even_zeta();
            let value = sym.eval(&cfg).map_err(|e| e.to_string())?;
            let ones = if n > 1 {
                format!(",{}", vec!["1"; (n - 1) as usize].join(","))
            } else {
                String::new()
            };
            items.push(Item {
                name: format!("x^{m} y^{n} = R({}{ones})", m + 1),
                lhs: value.to_decimal(cfg.digits),
                rhs: Some(sym.to_string()),
                abs_err: "0".into(),
                digits: cfg.digits,
                terms_used: 0,
                tol: cfg.tol,
                pass: true,
                runtime_ms: start.elapsed().as_millis() as u64,
            });
        }
    }
    let report = Report {
        suite: format!("gf degree {degree}"),
        config: ConfigOut::from(&cfg),
        note: None,
        items,
    };
    if flags.json {
        report.print_json();
    } else {
        report.print_human();
    }
    Ok(true)
}
