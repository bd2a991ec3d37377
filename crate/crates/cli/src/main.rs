//! Command-line front end.
//!
//! Exit codes are machine-friendly so the tool composes in shell pipelines
//! scanning arrangement families:
//!
//! * `analyze`: 0 = Barrier, 3 = Inconclusive, 1 = input error;
//! * `verify`: 0 = all checks passed, 2 = a tolerance was exceeded,
//!   1 = input error;
//! * `lattice`, `examples`: 0 on success, 1 on input error.
//!
//! `BARRIER_GAUGE_COLOR=never|auto` controls ANSI color in text output
//! (auto means: only when stdout is a terminal).

use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use barrier_gauge_core::invariants::{sigma_crit, stratum_invariants, CoefficientSystem};
use barrier_gauge_core::lattice::build_lattice;
use barrier_gauge_core::rational::{format_rational, parse_rational};
use barrier_gauge_core::report::{analyze_arrangement, AnalyzeOptions, Verdict};
use barrier_gauge_core::{named, parse_arrangement, Arrangement, Rat};
use barrier_gauge_lab::{run_verification, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "barrier-gauge",
    version,
    about = "Barrier verdicts and Gromov-width bounds for hyperplane-arrangement skeleta"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the invariants and the barrier verdict for an arrangement
    Analyze(AnalyzeArgs),
    /// Print the intersection lattice with per-flat invariants
    Lattice(LatticeArgs),
    /// Run the moment-map verification suite on an arrangement
    Verify(VerifyArgs),
    /// List the built-in example arrangements
    Examples {
        /// Emit the catalog as JSON
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Arrangement JSON document (exactly one of this or --example)
    input: Option<PathBuf>,
    /// Built-in example name (see `examples`)
    #[arg(long)]
    example: Option<String>,
    /// Ambient dimension parameter for parametric examples
    #[arg(long)]
    n: Option<i64>,
    /// Hyperplane count parameter for parametric examples
    #[arg(long)]
    l: Option<i64>,
}

impl InputArgs {
    fn load(&self) -> anyhow::Result<Arrangement> {
        match (&self.input, &self.example) {
            (Some(_), Some(_)) => anyhow::bail!("give either an input file or --example, not both"),
            (None, None) => anyhow::bail!("an input file or --example is required"),
            (Some(path), None) => {
                if self.n.is_some() || self.l.is_some() {
                    anyhow::bail!("--n/--l only apply to --example inputs");
                }
                let text = std::fs::read_to_string(path)
                    .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
                Ok(parse_arrangement(&text)?)
            }
            (None, Some(name)) => Ok(named::generate(name, self.n, self.l)?),
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
    /// Override the divisor multiplicities, comma-separated rationals
    #[arg(long, value_name = "p/q,...")]
    multiplicities: Option<String>,
    /// Explicit symplectic lift (positive, degree-weighted sum one)
    #[arg(long, value_name = "p/q,...")]
    kappa: Option<String>,
    /// Explicit Chern lift (positive, degree-weighted sum 2(n+1))
    #[arg(long, value_name = "p/q,...")]
    lambda: Option<String>,
    /// Search the coefficient cone for an admissible Chern lift when the
    /// canonical one fails the criterion
    #[arg(long)]
    optimize_lambda: bool,
    /// Also bound the sublevel region {rho > sigma}; sigma in [0, 1)
    #[arg(long, value_name = "p/q")]
    sigma: Option<String>,
}

#[derive(Args)]
struct LatticeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Emit flats and order relations as JSON
    #[arg(long)]
    json: bool,
    /// Emit the Hasse diagram as a DOT digraph
    #[arg(long)]
    dot: bool,
    /// Override the divisor multiplicities, comma-separated rationals
    #[arg(long, value_name = "p/q,...")]
    multiplicities: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Emit the verification report as JSON
    #[arg(long)]
    json: bool,
    /// Samples per check
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// PRNG seed for reproducible sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override every numeric tolerance with one value
    #[arg(long)]
    tol: Option<f64>,
    /// Run even for n > 4 (the suite is cubic-ish in the flat count)
    #[arg(long)]
    force: bool,
}

fn parse_rat_list(text: &str) -> anyhow::Result<Vec<Rat>> {
    text.split(',')
        .map(|s| Ok(parse_rational(s.trim())?))
        .collect()
}

fn color_enabled() -> bool {
    match std::env::var("BARRIER_GAUGE_COLOR").as_deref() {
        Ok("never") => false,
        Ok("auto") | Err(_) => std::io::stdout().is_terminal(),
        Ok(_) => std::io::stdout().is_terminal(),
    }
}

fn cmd_analyze(args: &AnalyzeArgs) -> anyhow::Result<ExitCode> {
    let arr = args.input.load()?;
    let opts = AnalyzeOptions {
        multiplicities: args
            .multiplicities
            .as_deref()
            .map(parse_rat_list)
            .transpose()?,
        kappa: args.kappa.as_deref().map(parse_rat_list).transpose()?,
        lambda: args.lambda.as_deref().map(parse_rat_list).transpose()?,
        optimize_lambda: args.optimize_lambda,
        sigma: args
            .sigma
            .as_deref()
            .map(|s| Ok::<_, anyhow::Error>(parse_rational(s)?))
            .transpose()?,
    };
    if let Some(m) = &opts.multiplicities {
        if m.len() != arr.len() {
            anyhow::bail!(
                "--multiplicities has {} entries, arrangement has {}",
                m.len(),
                arr.len()
            );
        }
    }
    let report = analyze_arrangement(&arr, &opts)?;
    if args.json {
        println!("{}", report.to_json_string());
    } else {
        print!("{}", report.render_text(color_enabled()));
    }
    Ok(match report.verdict {
        Verdict::Barrier => ExitCode::SUCCESS,
        Verdict::Inconclusive => ExitCode::from(3),
    })
}

fn cmd_lattice(args: &LatticeArgs) -> anyhow::Result<ExitCode> {
    let mut arr = args.input.load()?;
    if let Some(m) = &args.multiplicities {
        let m = parse_rat_list(m)?;
        if m.len() != arr.len() {
            anyhow::bail!(
                "--multiplicities has {} entries, arrangement has {}",
                m.len(),
                arr.len()
            );
        }
        arr = arr.with_multiplicities(m)?;
    }
    let lat = build_lattice(&arr);
    if args.dot {
        print!("{}", lat.to_dot());
        return Ok(ExitCode::SUCCESS);
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&lat.to_json())?);
        return Ok(ExitCode::SUCCESS);
    }
    let coeffs = CoefficientSystem::normalize_arrangement(&arr)?;
    let strata = stratum_invariants(&lat, &coeffs);
    let (sc, _) = sigma_crit(&lat, &coeffs)?;
    println!(
        "Intersection lattice: CP^{}, {} hyperplane(s), {} flat(s)",
        arr.n,
        arr.len(),
        lat.len()
    );
    println!(
        "{:>6} {:>18} {:>6} {:>10} {:>5} {:>10}",
        "flat", "support", "codim", "lambda_v", "w_v", "ratio"
    );
    for (i, f) in lat.flats.iter().enumerate() {
        let sup: Vec<String> = f.support.iter().map(|s| s.to_string()).collect();
        println!(
            "{:>6} {:>18} {:>6} {:>10} {:>5} {:>10}",
            i,
            format!("{{{}}}", sup.join(",")),
            f.codim,
            format_rational(&strata[i].lambda_v),
            strata[i].weight,
            format_rational(&strata[i].ratio),
        );
    }
    println!("sigma_crit = {}", format_rational(&sc));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let arr = args.input.load()?;
    if arr.n > 4 && !args.force {
        anyhow::bail!(
            "n = {} is large; the suite may be slow — pass --force to run anyway",
            arr.n
        );
    }
    let mut cfg = VerifyConfig {
        samples: args.samples,
        seed: args.seed,
        ..Default::default()
    };
    if let Some(tol) = args.tol {
        cfg = cfg.with_uniform_tolerance(tol);
    }
    let report = run_verification(&arr, &cfg)?;
    if args.json {
        println!("{}", report.to_json_string());
    } else {
        print!("{}", report.render_text());
    }
    if report.all_pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        for failure in report.failures() {
            eprintln!(
                "tolerance exceeded: {} on flats {:?}: residual {:.3e} > {:.1e}",
                failure.check, failure.subject, failure.max_residual, failure.tolerance
            );
        }
        Ok(ExitCode::from(2))
    }
}

fn cmd_examples(json: bool) -> ExitCode {
    let catalog = named::catalog();
    if json {
        let v: Vec<serde_json::Value> = catalog
            .iter()
            .map(|e| {
                serde_json::json!({
                    "name": e.name,
                    "params": e.params,
                    "description": e.description,
                    "incidence": e.incidence.map(|(n, l, k)| {
                        serde_json::json!({"n": n, "l": l, "k": k})
                    }),
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::Value::Array(v)).expect("valid JSON")
        );
        return ExitCode::SUCCESS;
    }
    println!("Built-in arrangements:");
    for e in catalog {
        match e.incidence {
            Some((n, l, k)) => println!(
                "  {:<12} (n, l, k) = ({n}, {l}, {k})  {}",
                e.name, e.description
            ),
            None => println!("  {:<12} {:<16} {}", e.name, e.params, e.description),
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Lattice(args) => cmd_lattice(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Examples { json } => Ok(cmd_examples(*json)),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
