use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use linest::harness::Experiment;
use linest::{
    compute_moments, discriminative_estimator, fit_ml_from_moments, generative_estimator, DMatrix, GainForm,
    KnownStatistics, Seed,
};
use serde_json::json;

mod config;
mod matrix_io;
mod plot;

use config::ConfigError;

#[derive(Parser)]
#[command(
    name = "linest",
    version,
    about = "Generative vs discriminative linear estimation experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo sweep and write results.csv, manifest.json and plot_results.py.
    Run {
        /// Config file, or a bundled config name (paper_fig2, paper_fig3).
        config: String,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Override mc_trials.
        #[arg(long)]
        trials: Option<usize>,
        /// Override the master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads (0 = all cores).
        #[arg(long, env = "LINEST_THREADS")]
        threads: Option<usize>,
    },
    /// Fit an estimator to a dataset file and print its coefficients.
    Estimate {
        #[arg(long)]
        data: PathBuf,
        /// Prior file; required by the generative method.
        #[arg(long)]
        prior: Option<PathBuf>,
        #[arg(long, value_enum)]
        method: Method,
        /// Diagonal loading added before each covariance inversion.
        #[arg(long, default_value_t = 0.0)]
        ridge: f64,
    },
    /// Check a config and print it with defaults filled in.
    Validate { config: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Generative,
    Discriminative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            config,
            out,
            trials,
            seed,
            threads,
        } => run(&config, &out, trials, seed, threads),
        Command::Estimate {
            data,
            prior,
            method,
            ridge,
        } => estimate(&data, prior.as_deref(), method, ridge),
        Command::Validate { config } => validate(&config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}

type CmdResult = Result<(), (i32, String)>;

fn config_err(e: ConfigError) -> (i32, String) {
    (e.exit_code(), e.to_string())
}

fn validate(source: &str) -> CmdResult {
    let cfg = config::load(source).map_err(config_err)?;
    let text = serde_json::to_string_pretty(&cfg).expect("config serializes");
    match cfg.validate() {
        Ok(()) => {
            println!("{text}");
            println!("config OK");
            Ok(())
        }
        Err(problems) => Err(config_err(ConfigError::Invalid(problems))),
    }
}

fn run(source: &str, out: &Path, trials: Option<usize>, seed: Option<u64>, threads: Option<usize>) -> CmdResult {
    let mut cfg = config::load(source).map_err(config_err)?;
    if let Some(t) = trials {
        cfg.mc_trials = t;
    }
    if let Some(s) = seed {
        cfg.seed = Seed(s);
    }
    cfg.validate().map_err(|p| config_err(ConfigError::Invalid(p)))?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| (1, format!("thread pool: {e}")))?;
    let experiment = Experiment::new(cfg.clone()).map_err(|e| (1, e.to_string()))?;

    let started = Instant::now();
    let report = pool.install(|| experiment.run()).map_err(|e| (1, e.to_string()))?;
    let elapsed = started.elapsed().as_secs_f64();

    fs::create_dir_all(out).map_err(|e| (1, format!("{}: {e}", out.display())))?;
    let results = out.join("results.csv");
    let manifest = out.join("manifest.json");
    let plot_script = out.join("plot_results.py");
    write_atomic(&results, report.to_csv().as_bytes())?;
    write_atomic(&plot_script, plot::SCRIPT.as_bytes())?;

    let doc = json!({
        "tool": "linest",
        "version": env!("CARGO_PKG_VERSION"),
        "config_source": source,
        "config": cfg,
        "master_seed": cfg.seed.0,
        "threads": pool.current_num_threads(),
        "duration_secs": elapsed,
        "warnings": report.metadata.warnings,
        "outputs": {
            "results": results.file_name().and_then(|n| n.to_str()),
            "plot_script": plot_script.file_name().and_then(|n| n.to_str()),
        },
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("manifest serializes");
    text.push('\n');
    write_atomic(&manifest, text.as_bytes())?;

    for w in &report.metadata.warnings {
        eprintln!(
            "warning: {}={} {}: {} ill-conditioned (max cond {:.3e}), {} failed{}",
            cfg.sweep.name(),
            w.sweep_value,
            w.estimator.label(),
            w.ill_conditioned,
            w.max_condition,
            w.failed,
            w.first_failure.as_deref().map(|f| format!(": {f}")).unwrap_or_default()
        );
    }
    println!(
        "{} points x {} trials in {elapsed:.1}s -> {}",
        cfg.points().len(),
        cfg.mc_trials,
        out.display()
    );
    Ok(())
}

/// Write to a sibling temp file, then rename over the target.
fn write_atomic(path: &Path, bytes: &[u8]) -> CmdResult {
    let io = |e: std::io::Error| (1, format!("{}: {e}", path.display()));
    let mut tmp_name = path.file_name().unwrap_or_default().to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(bytes).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

fn estimate(data: &Path, prior: Option<&Path>, method: Method, ridge: f64) -> CmdResult {
    let usage = |msg: String| (3, msg);
    if !(ridge >= 0.0 && ridge.is_finite()) {
        return Err(usage(format!("ridge must be a finite value >= 0, got {ridge}")));
    }
    let dataset = matrix_io::read_dataset(data).map_err(usage)?;
    let moments = compute_moments(&dataset).map_err(|e| usage(e.to_string()))?;
    println!(
        "n_t = {}, n_x = {}, n_y = {}",
        moments.n_t,
        moments.n_x(),
        moments.n_y()
    );

    let estimator = match method {
        Method::Discriminative => {
            println!("method: discriminative");
            discriminative_estimator(&moments, ridge).map_err(|e| (1, e.to_string()))?
        }
        Method::Generative => {
            let path = prior.ok_or_else(|| usage("the generative method needs --prior".into()))?;
            let (prior, sigma2) = matrix_io::read_prior(path).map_err(usage)?;
            if prior.dim() != moments.n_y() {
                return Err(usage(format!(
                    "prior n_y={} does not match data n_y={}",
                    prior.dim(),
                    moments.n_y()
                )));
            }
            let known = KnownStatistics::new(prior, sigma2).map_err(|e| usage(e.to_string()))?;
            let fit = fit_ml_from_moments(&moments, ridge).map_err(|e| (1, e.to_string()))?;
            println!("method: generative");
            print_matrix("H_hat", &fit.h_hat);
            print_matrix(
                "mu_hat",
                &DMatrix::from_column_slice(fit.mu_hat.len(), 1, fit.mu_hat.as_slice()),
            );
            generative_estimator(&fit, &known, &moments, GainForm::Auto).map_err(|e| (1, e.to_string()))?
        }
    };
    print_matrix("A", &estimator.a);
    print_matrix(
        "b",
        &DMatrix::from_column_slice(estimator.b.len(), 1, estimator.b.as_slice()),
    );
    if estimator.condition > linest::linalg::CONDITION_WARNING {
        eprintln!("warning: condition estimate {:.3e}", estimator.condition);
    }
    Ok(())
}

fn print_matrix(name: &str, m: &DMatrix<f64>) {
    println!("{name} =");
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|c| fmt_num(m[(r, c)])).collect();
        println!("  {}", row.join(", "));
    }
}

/// Twelve decimals with trailing zeros removed.
fn fmt_num(v: f64) -> String {
    let s = format!("{v:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    match s {
        "-0" => "0".to_string(),
        _ => s.to_string(),
    }
}
