use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use catlaw::config::{parse_config, preset, ExperimentPreset, PRESET_NAMES};
use catlaw::output::{emit_convergence_table, emit_solution_csv, emit_stability_csv, format_report};
use catlaw::{centered_coeffs, offgrid_coeffs, Offset, Rational, Real, RunConfig, SchemeKind};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "catlaw", version, about = "Compact approximate Taylor solvers for 1D conservation laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a preset (every scheme it compares) or a single config file.
    Run(RunArgs),
    /// Mesh-refinement study of a preset, one table per scheme.
    Convergence(ConvergenceArgs),
    /// Print finite-difference weights as decimals and exact fractions.
    Coeffs(CoeffsArgs),
    /// Sample the stability polynomial h2 on [0, 1].
    Stability(StabilityArgs),
    /// List the built-in presets.
    Presets,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    preset: Option<String>,
    /// JSON configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Override the scheme (lw, at, cat, fl_cat, weno_cat, weno_rk3).
    #[arg(long)]
    scheme: Option<SchemeKind>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t_end: Option<f64>,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[arg(long)]
    preset: String,
    /// Directory for one CSV per scheme; tables are printed either way.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CoeffsArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    k: usize,
    /// Off-grid evaluation point: an integer node or `1/2`. Centered weights when absent.
    #[arg(long)]
    q: Option<Offset>,
}

#[derive(Args)]
struct StabilityArgs {
    #[arg(long, default_value_t = 4)]
    pmax: usize,
    #[arg(long, default_value_t = 201)]
    samples: usize,
    /// CSV destination; printed to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn lookup(name: &str) -> Result<ExperimentPreset> {
    match preset(name) {
        Some(p) => Ok(p),
        None => bail!("unknown preset `{name}` (known: {})", PRESET_NAMES.join(", ")),
    }
}

fn apply_overrides(mut cfg: RunConfig, a: &RunArgs) -> Result<RunConfig> {
    if let Some(s) = a.scheme {
        cfg.scheme.scheme = s;
    }
    if let Some(p) = a.p {
        cfg.scheme.p = p;
    }
    if let Some(c) = a.cfl {
        cfg.scheme.cfl = c;
    }
    if let Some(n) = a.n {
        cfg.grid.n = n;
    }
    if let Some(t) = a.t_end {
        cfg.run.t_end = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run_one(cfg: &RunConfig, out: &Path, stem: &str) -> Result<()> {
    let traj = catlaw::run(cfg).with_context(|| format!("{stem} failed"))?;
    let paths = emit_solution_csv(&traj, out, stem)?;
    println!(
        "{}: {} steps, {:.3e} s/step, {} file(s) in {}",
        traj.label,
        traj.metrics.steps,
        traj.metrics.seconds_per_step,
        paths.len(),
        out.display()
    );
    Ok(())
}

fn run(a: &RunArgs) -> Result<()> {
    match (&a.preset, &a.config) {
        (Some(name), _) => {
            let p = lookup(name)?;
            let mut failed = Vec::new();
            for cfg in p.configs() {
                let cfg = apply_overrides(cfg, a)?;
                let stem = format!("{}_{}", p.name, cfg.scheme.label());
                if let Err(e) = run_one(&cfg, &a.out, &stem) {
                    println!("{}: failed: {}", cfg.scheme.label(), one_line(&e));
                    failed.push(cfg.scheme.label());
                }
            }
            if !failed.is_empty() {
                bail!("{} of {} schemes failed: {}", failed.len(), p.variants.len(), failed.join(", "));
            }
        }
        (None, Some(path)) => {
            let source = path.to_str().context("config path is not valid UTF-8")?;
            let cfg = apply_overrides(parse_config(source)?, a)?;
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("run");
            run_one(&cfg, &a.out, stem)?;
        }
        (None, None) => bail!("pass --preset or --config"),
    }
    Ok(())
}

fn convergence(a: &ConvergenceArgs) -> Result<()> {
    let p = lookup(&a.preset)?;
    let Some(reference) = &p.reference else {
        bail!("preset `{}` has no convergence study", p.name);
    };
    if p.meshes.is_empty() {
        bail!("preset `{}` has no convergence study", p.name);
    }
    for cfg in p.configs() {
        let report = catlaw::convergence_study::<f64>(&cfg, &p.meshes, reference)
            .with_context(|| format!("{} failed", cfg.scheme.label()))?;
        print!("{}", format_report(&report));
        if let Some(dir) = &a.out {
            std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            let path = dir.join(format!("{}_{}.csv", p.name, report.label));
            emit_convergence_table(&report, &path)?;
        }
    }
    Ok(())
}

fn coeffs(a: &CoeffsArgs) -> Result<()> {
    let (first, weights, title) = match a.q {
        None => {
            let w = centered_coeffs::<Rational>(a.p, a.k)?;
            (-(a.p as i32), w.weights, format!("centered delta, p = {}, k = {}", a.p, a.k))
        }
        Some(q) => {
            let w = offgrid_coeffs::<Rational>(a.p, a.k, q)?;
            (1 - a.p as i32, w.weights, format!("off-grid gamma, p = {}, k = {}, q = {q}", a.p, a.k))
        }
    };
    println!("{title}");
    for (i, w) in weights.iter().enumerate() {
        let j = first + i as i32;
        println!("{j:>4} {:>24.16e}  {w}", f64::from_rational(w));
    }
    Ok(())
}

fn stability(a: &StabilityArgs) -> Result<()> {
    if a.pmax == 0 || a.samples == 0 {
        bail!("--pmax and --samples must be positive");
    }
    let rows = catlaw::stability::h2_samples(a.pmax, 0.0, 1.0, a.samples);
    match &a.out {
        Some(path) => {
            emit_stability_csv(&rows, a.pmax, path)?;
            println!("{} samples written to {}", rows.len(), path.display());
        }
        None => {
            let header: Vec<String> = std::iter::once("c".to_string()).chain((1..=a.pmax).map(|p| format!("h2_p{p}"))).collect();
            println!("{}", header.join(","));
            for r in rows {
                let cells: Vec<String> = r.iter().map(|v| catlaw::output::full(*v)).collect();
                println!("{}", cells.join(","));
            }
        }
    }
    Ok(())
}

/// The error chain on one line, skipping causes already quoted by their parent.
fn one_line(e: &anyhow::Error) -> String {
    let mut msg = String::new();
    for cause in e.chain() {
        let s = cause.to_string();
        if msg.contains(&s) {
            continue;
        }
        if !msg.is_empty() {
            msg.push_str(": ");
        }
        msg.push_str(&s);
    }
    msg.replace('\n', " ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => run(a),
        Command::Convergence(a) => convergence(a),
        Command::Coeffs(a) => coeffs(a),
        Command::Stability(a) => stability(a),
        Command::Presets => {
            for name in PRESET_NAMES {
                println!("{name:<32} {}", lookup(name).map(|p| p.description).unwrap_or_default());
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", one_line(&e));
            ExitCode::FAILURE
        }
    }
}
