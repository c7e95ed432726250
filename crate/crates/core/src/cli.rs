//! Command-line front end. Every subcommand resolves a [`Config`], calls one
//! library function and prints the result as CSV preceded by `#` lines
//! echoing the resolved parameters.
//!
//! Exit status: 0 success, 1 usage, 2 configuration, 3 numeric failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::analytic::{dressed_states, lambda_threshold};
use crate::error::{Error, Result};
use crate::observables::{
    auto_zero_bracket, default_step, dispersion_slope, find_absorption_zero, find_gain_threshold,
    Method,
};
use crate::sweep::{
    compare_methods, format_number, param_metadata, run_sweep, run_sweep_with_jobs, with_jobs,
    Config, SweepSpec, SweepTable,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Pump-rate interval searched by `threshold` unless start/stop are set.
pub const DEFAULT_THRESHOLD_RANGE: (f64, f64) = (1e-9, 1e-3);

#[derive(Debug, Parser)]
#[command(name = "darkres", version, about = "Four-level dark-resonance optics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// key = value configuration file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// How rho_23 is computed
    #[arg(long, global = true, value_parser = parse_method)]
    pub method: Option<Method>,

    /// Worker threads
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Override a config key (repeatable)
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// chi versus probe detuning
    Spectrum,
    /// Generic one-axis sweep
    Sweep,
    /// Zero-absorption detunings and the dispersion slope there
    Zero,
    /// Pump rate at which resonant absorption turns into gain
    Threshold,
    /// Dressed energies and bare-state amplitudes of the drive fields
    Dressed,
    /// Numeric chi next to an analytic method
    Compare,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse()
}

/// Config file, then `--method`, then `--set` overrides in order.
pub fn resolve_config(cli: &Cli) -> Result<Config> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Config::parse(&text)?
        }
        None => Config::default(),
    };
    if let Some(m) = cli.method {
        cfg.method = m;
    }
    for pair in &cli.overrides {
        cfg.set_override(pair)?;
    }
    Ok(cfg)
}

fn sweep(spec: &SweepSpec, jobs: Option<usize>) -> Result<SweepTable> {
    match jobs {
        Some(n) => run_sweep_with_jobs(spec, n),
        None => run_sweep(spec),
    }
}

fn header(cfg: &Config, command: &str) -> Result<Vec<(String, String)>> {
    let (p, m) = cfg.base()?;
    let mut meta = vec![
        (
            "tool".to_string(),
            format!("darkres {}", env!("CARGO_PKG_VERSION")),
        ),
        ("command".to_string(), command.to_string()),
    ];
    meta.extend(param_metadata(&p, &m));
    Ok(meta)
}

/// The table a subcommand prints.
pub fn execute(command: Command, cfg: &Config, jobs: Option<usize>) -> Result<SweepTable> {
    match command {
        Command::Spectrum => sweep(&cfg.spectrum_spec()?, jobs),
        Command::Sweep => sweep(&cfg.sweep_spec()?, jobs),
        Command::Compare => {
            let mut spec = cfg.spectrum_spec()?;
            if spec.method == Method::Numeric {
                spec.method = Method::AnalyticFull;
            }
            match jobs {
                Some(n) => with_jobs(n, || compare_methods(&spec)),
                None => compare_methods(&spec),
            }
        }
        Command::Zero => {
            let (p, m) = cfg.base()?;
            let (lo, hi) = auto_zero_bracket(&p);
            let h = default_step(&p);
            let mut rows = Vec::new();
            for bracket in [(-hi, -lo), (lo, hi)] {
                let z = find_absorption_zero(&p, &m, bracket)?;
                rows.push(vec![z, dispersion_slope(&p, &m, z, h)?.slope]);
            }
            let mut meta = header(cfg, "zero")?;
            meta.push(("bracket".into(), format!("{lo:e} .. {hi:e}")));
            Ok(SweepTable {
                columns: vec!["delta0".into(), "slope".into()],
                rows,
                metadata: meta,
                failed: Vec::new(),
            })
        }
        Command::Threshold => {
            let (p, m) = cfg.base()?;
            let range = (
                cfg.start.unwrap_or(DEFAULT_THRESHOLD_RANGE.0),
                cfg.stop.unwrap_or(DEFAULT_THRESHOLD_RANGE.1),
            );
            let found = find_gain_threshold(&p, &m, range)?;
            let mut meta = header(cfg, "threshold")?;
            meta.push(("range".into(), format!("{:e} .. {:e}", range.0, range.1)));
            Ok(SweepTable {
                columns: vec!["lambda_star".into(), "lambda_estimate".into()],
                rows: vec![vec![found, lambda_threshold(&p)]],
                metadata: meta,
                failed: Vec::new(),
            })
        }
        Command::Dressed => {
            let (p, _) = cfg.base()?;
            let d = dressed_states(p.g41, p.g42)?;
            let row = |e: f64, v: [f64; 3]| vec![e, v[0], v[1], v[2]];
            let mut meta = header(cfg, "dressed")?;
            meta.push(("rows".into(), "|0>, |+>, |->".into()));
            Ok(SweepTable {
                columns: ["energy", "c1", "c2", "c4"].map(str::to_string).to_vec(),
                rows: vec![
                    row(d.lambda_zero, d.zero),
                    row(d.lambda_plus, d.plus),
                    row(d.lambda_minus, d.minus),
                ],
                metadata: meta,
                failed: Vec::new(),
            })
        }
    }
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_numeric() {
        EXIT_NUMERIC
    } else {
        EXIT_CONFIG
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = resolve_config(&cli)
        .and_then(|cfg| execute(cli.command, &cfg, cli.jobs))
        .and_then(|table| {
            let text = table.to_csv();
            match &cli.out {
                Some(path) => std::fs::write(path, text)?,
                None => stdout.write_all(text.as_bytes())?,
            }
            Ok(table)
        });
    match result {
        Ok(table) => {
            for f in &table.failed {
                let _ = writeln!(
                    stderr,
                    "warning: point {} failed: {}",
                    format_number(f.axis_value),
                    f.code
                );
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
