//! The `mvlaguerre` command line: `eval`, `check`, `suite`, `list`.
//!
//! Exit codes: 0 success, 1 a check failed or a series did not converge,
//! 2 invalid input (domain, pole, parse or unsupported regime), 3 budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::eval::{evaluate_function, format_complex, FUNCTIONS};
use super::params::{complex_json, Params};
use super::registry::{self, QuadratureOverride, RunOptions, SeriesOverride, IDENTITIES};
use super::suite::{run_suite, validate_suite, SuiteConfig, SuiteError, SuiteOptions};
use crate::error::Error;
use crate::series::SeriesControl;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mvlaguerre", version, about = "Evaluate multivariate Laguerre polynomials and verify their generating functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one function value, e.g. `eval laguerre_multi n=1,1 alpha=0 x=1,1`.
    Eval {
        function: String,
        /// `key=value`; vectors as `a,b`, complex numbers as `0.3-0.1i`.
        params: Vec<String>,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate both sides of an identity; missing parameters are drawn at random.
    Check {
        identity: String,
        params: Vec<String>,
        /// Pass threshold on the relative residual.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        nodes: Option<usize>,
        #[arg(long)]
        per_axis: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a JSON suite file and write a report.
    Suite {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        jobs: Option<usize>,
        /// Replaces every entry's threshold.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        max_order: Option<usize>,
        /// Overrides the seed in the file.
        #[arg(long)]
        seed: Option<u64>,
        /// Only check the file; evaluate nothing.
        #[arg(long)]
        validate_only: bool,
    },
    /// List identities and functions with their parameters.
    List,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonConvergence { .. } => EXIT_FAIL,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Pole(_) | Error::Domain(_) | Error::Unsupported(_) => EXIT_INPUT,
    }
}

fn fail(e: &Error) -> i32 {
    eprintln!("error: {e}");
    exit_code(e)
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Eval { function, params, max_order, tol, format } => eval(&function, &params, max_order, tol, format),
        Command::Check { identity, params, tol, max_order, budget, nodes, per_axis, seed, format } => {
            let opts = RunOptions {
                series: SeriesOverride { max_order, budget, ..Default::default() },
                quadrature: QuadratureOverride { nodes, per_axis },
            };
            check(&identity, &params, tol, opts, seed, format)
        }
        Command::Suite { config, out, format, jobs, tol, max_order, seed, validate_only } => {
            let opts = SuiteOptions { tol, max_order, jobs };
            suite(&config, out, format, opts, seed, validate_only)
        }
        Command::List => {
            println!("identities (mvlaguerre check <id> key=value ...):");
            for i in IDENTITIES {
                println!("  {:<26} {:<40} {}", i.id, i.params.join(" "), i.summary);
            }
            println!("functions (mvlaguerre eval <name> key=value ...):");
            for f in FUNCTIONS {
                println!("  {:<26} {:<40} {}", f.name, f.params.join(" "), f.summary);
            }
            EXIT_OK
        }
    }
}

fn eval(function: &str, args: &[String], max_order: Option<usize>, tol: Option<f64>, format: Format) -> i32 {
    let ctl = SeriesOverride { max_order, rel_tol: tol, ..Default::default() }.apply(SeriesControl::inner());
    let result = ctl.and_then(|ctl| Params::from_args(args).and_then(|p| evaluate_function(function, &p, &ctl)));
    match result {
        Ok(z) => {
            match format {
                Format::Json => println!("{}", json!({ "function": function, "value": complex_json(z) })),
                _ => println!("{}", format_complex(z)),
            }
            EXIT_OK
        }
        Err(e) => fail(&e),
    }
}

fn check(id: &str, args: &[String], tol: Option<f64>, opts: RunOptions, seed: u64, format: Format) -> i32 {
    let prepared = (|| {
        let given = Params::from_args(args)?;
        let params = registry::complete(id, &given, &mut ChaCha8Rng::seed_from_u64(seed))?;
        let report = registry::evaluate(id, &params, &opts)?;
        Ok::<_, Error>((params, report))
    })();
    let (params, report) = match prepared {
        Ok(v) => v,
        Err(e) => return fail(&e),
    };
    let tol = tol.unwrap_or_else(|| registry::default_tolerance(id, &params));
    let pass = report.passes(tol);
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("reports serialize");
            v["params"] = serde_json::to_value(&params).expect("params serialize");
            v["tolerance"] = json!(tol);
            v["status"] = json!(if pass { "pass" } else { "fail" });
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        }
        _ => {
            println!("identity      {}", report.identity_id);
            println!("params        {}", serde_json::to_string(&params).expect("params serialize"));
            println!("lhs           {}", format_complex(report.lhs));
            println!("rhs           {}", format_complex(report.rhs));
            println!("abs residual  {:.3e}", report.abs_residual);
            println!("rel residual  {:.3e}  (threshold {tol:.1e})", report.rel_residual);
            let tail = if report.converged { "converged" } else { "NOT converged" };
            println!("order         {}  ({} shells, {tail})", report.truncation_order, report.shells_used);
            for (name, value) in &report.channels {
                println!("{name:<13} {value:.3e}");
            }
            if let Some(note) = &report.note {
                println!("note          {note}");
            }
            println!("time          {:.3}s", report.wall_time);
            println!("result        {}", if pass { "PASS" } else { "FAIL" });
        }
    }
    if pass {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn suite(
    path: &PathBuf,
    out: Option<PathBuf>,
    format: Format,
    opts: SuiteOptions,
    seed: Option<u64>,
    validate_only: bool,
) -> i32 {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return EXIT_INPUT;
        }
    };
    let suite_fail = |e: &SuiteError| {
        eprintln!("error: {e}");
        e.source_error().map(exit_code).unwrap_or(EXIT_INPUT)
    };
    let mut config = match SuiteConfig::from_json(&text) {
        Ok(c) => c,
        Err(e) => return suite_fail(&e),
    };
    if let Some(seed) = seed {
        config.seed = seed;
    }
    if validate_only {
        return match validate_suite(&config, &opts) {
            Ok(n) => {
                println!("{n} checks valid");
                EXIT_OK
            }
            Err(e) => suite_fail(&e),
        };
    }
    let report = match run_suite(&config, &opts) {
        Ok(r) => r,
        Err(e) => return suite_fail(&e),
    };
    let body = match format {
        Format::Csv => {
            let mut buf = Vec::new();
            if let Err(e) = report.write_csv(&mut buf) {
                eprintln!("error: {e}");
                return EXIT_INPUT;
            }
            String::from_utf8(buf).expect("csv is utf-8")
        }
        _ => report.to_json() + "\n",
    };
    match out {
        Some(p) => {
            if let Err(e) = fs::write(&p, body) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return EXIT_INPUT;
            }
            println!("{}", report.summary);
        }
        None => {
            print!("{body}");
            eprintln!("{}", report.summary);
        }
    }
    if report.summary.failed == 0 {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}
