use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use hybridcool::presets;
use hybridcool::SystemParams;
use hybridcool_cli::config::{resolve, ConfigError, Overrides, RunConfig};
use hybridcool_cli::engine::{cool, run_sweep, spectrum_rows};
use hybridcool_cli::output::{fmt_f64, spectrum_csv, sweep_csv};
use serde_json::json;

const EXIT_CONFIG: u8 = 2;
const EXIT_UNSTABLE: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

#[derive(Parser)]
#[command(
    name = "hybridcool",
    version,
    about = "Ancilla-assisted ground-state cooling simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Named parameter set (see `presets`).
    #[arg(long, global = true)]
    preset: Option<String>,
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override a parameter, e.g. `--set delta=0.377`. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Relative tolerance of the frequency integral.
    #[arg(long = "quad-tol", global = true)]
    quad_tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Write g0^2 S_nn and its parts on a frequency grid as CSV.
    Spectrum {
        /// Frequency grid `min:max:count`.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Exact n0 at one point, with covariance cross-check and golden-rule estimate.
    Cool,
    /// n0 over a 1D or 2D parameter grid as CSV, plus a `.meta.json` sidecar.
    Sweep {
        /// Axis `param:min:max:count[:log]`; give once or twice.
        #[arg(long = "axis")]
        axes: Vec<String>,
    },
    /// List the built-in parameter sets.
    Presets,
}

enum Failure {
    Config(ConfigError),
    Unstable(String),
    Numeric(hybridcool::Error),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn params_json(p: &SystemParams) -> serde_json::Value {
    SystemParams::FIELDS
        .iter()
        .map(|&k| (k.to_string(), json!(p.get(k).unwrap())))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn overrides(common: &Common, axes: Vec<String>, grid: Option<String>) -> Overrides {
    Overrides {
        preset: common.preset.clone(),
        config: common.config.clone(),
        set: common.set.clone(),
        quad_tol: common.quad_tol,
        axes,
        grid,
    }
}

fn load(ov: &Overrides) -> std::result::Result<RunConfig, Failure> {
    resolve(ov).map_err(Failure::Config)
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    let common = cli.common;
    match cli.command {
        Command::Presets => {
            let mut text = String::new();
            for p in presets::all() {
                text.push_str(p.name);
                text.push('\n');
                for k in SystemParams::FIELDS {
                    text.push_str(&format!("  {k} = {}\n", fmt_f64(p.params.get(k).unwrap())));
                }
                for a in &p.axes {
                    text.push_str(&format!(
                        "  axis {}:{}:{}:{}{}\n",
                        a.param,
                        fmt_f64(a.min),
                        fmt_f64(a.max),
                        a.count,
                        if a.log { ":log" } else { "" }
                    ));
                }
                text.push_str(&format!(
                    "  # {}\n",
                    p.notes.split_whitespace().collect::<Vec<_>>().join(" ")
                ));
            }
            emit(&common.out, &text)?;
        }
        Command::Spectrum { grid } => {
            let cfg = load(&overrides(&common, vec![], grid))?;
            let rows = spectrum_rows(&cfg.params, &cfg.grid);
            if rows.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Failure::Numeric(hybridcool::Error::InvalidParams(vec![
                    "spectrum is not finite on the grid".into(),
                ])));
            }
            emit(&common.out, &spectrum_csv(&rows))?;
        }
        Command::Cool => {
            let cfg = load(&overrides(&common, vec![], None))?;
            let report = cool(&cfg.params, &cfg.quad).map_err(Failure::Numeric)?;
            let record = json!({
                "preset": cfg.preset,
                "params": params_json(&cfg.params),
                "report": report,
            });
            let text = serde_json::to_string_pretty(&record).context("serialising report")? + "\n";
            emit(&common.out, &text)?;
            if report.verdict == "unstable" {
                return Err(Failure::Unstable(format!(
                    "unstable: max Re(eigenvalue) = {:e}",
                    -report.stability_margin
                )));
            }
        }
        Command::Sweep { axes } => {
            let cfg = load(&overrides(&common, axes, None))?;
            let spec = cfg.sweep.clone().ok_or_else(|| {
                Failure::Config(ConfigError::Invalid(
                    "no sweep axis: use --axis, [sweep] in the config, or a preset with axes"
                        .into(),
                ))
            })?;
            let start = Instant::now();
            let records = run_sweep(&cfg.params, &spec, &cfg.quad, common.jobs)
                .map_err(|e| anyhow::anyhow!("thread pool: {e}"))?;
            let total = start.elapsed().as_secs_f64();
            emit(&common.out, &sweep_csv(&records))?;
            if let Some(out) = &common.out {
                let meta = json!({
                    "tool": "hybridcool",
                    "version": env!("CARGO_PKG_VERSION"),
                    "preset": cfg.preset,
                    "base": params_json(&cfg.params),
                    "sweep": spec,
                    "quadrature": {
                        "rel_tol": cfg.quad.rel_tol,
                        "window_factor": cfg.quad.window_factor,
                        "max_panels": cfg.quad.max_panels,
                    },
                    "jobs": common.jobs,
                    "points": records.len(),
                    "wall_time_total_s": total,
                    "wall_time_per_point_s": records.iter().map(|r| r.wall_seconds).collect::<Vec<_>>(),
                });
                let path = sidecar_path(out);
                std::fs::write(
                    &path,
                    serde_json::to_string_pretty(&meta).context("meta")? + "\n",
                )
                .with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("config error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Unstable(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_UNSTABLE)
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("numerical failure: {e}");
            ExitCode::from(EXIT_NUMERIC)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
