//! One-axis parameter scans.

mod config;
mod table;

use std::fmt;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{MediumParams, SystemParams};
use crate::numeric::central_slope;
use crate::observables::{
    auto_zero_bracket, chi, default_step, find_absorption_zero, group_index_from, Method,
};
use crate::steady_state::steady_state;

pub use config::{parse_config, Config, DEFAULT_SPECTRUM, KEYS};
pub use table::{format_number, write_csv, FailedPoint, SweepTable};

/// The swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    DeltaP,
    Lambda,
    G42,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::DeltaP => "DELTA_P",
            Axis::Lambda => "LAMBDA",
            Axis::G42 => "G42",
        }
    }

    /// CSV column name.
    pub fn column(self) -> &'static str {
        match self {
            Axis::DeltaP => "delta_p",
            Axis::Lambda => "lambda",
            Axis::G42 => "g42",
        }
    }

    pub fn apply(self, p: SystemParams, value: f64) -> SystemParams {
        match self {
            Axis::DeltaP => p.with_delta_p(value),
            Axis::Lambda => p.with_lambda(value),
            Axis::G42 => p.with_g42(value),
        }
    }
}

impl FromStr for Axis {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "DELTA_P" => Ok(Axis::DeltaP),
            "LAMBDA" => Ok(Axis::Lambda),
            "G42" => Ok(Axis::G42),
            _ => Err(format!("unknown axis `{s}` (DELTA_P, LAMBDA or G42)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

impl FromStr for Spacing {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "LINEAR" => Ok(Spacing::Linear),
            "LOG" => Ok(Spacing::Log),
            _ => Err(format!("unknown spacing `{s}` (LINEAR or LOG)")),
        }
    }
}

impl fmt::Display for Spacing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spacing::Linear => "LINEAR",
            Spacing::Log => "LOG",
        })
    }
}

/// Quantities a sweep can record per grid point. The declaration order is
/// the column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Output {
    /// Zero-absorption detuning on the positive side; the remaining outputs
    /// are then evaluated at this detuning instead of the base one.
    Delta0,
    ChiRe,
    ChiIm,
    /// d(chi')/d(delta_p) per gamma.
    Slope,
    /// Group index; needs `gamma_SI`.
    Ng,
    /// rho_11..rho_44 from the full steady state.
    Populations,
}

impl Output {
    pub fn name(self) -> &'static str {
        match self {
            Output::Delta0 => "DELTA0",
            Output::ChiRe => "CHI_RE",
            Output::ChiIm => "CHI_IM",
            Output::Slope => "SLOPE",
            Output::Ng => "NG",
            Output::Populations => "POPULATIONS",
        }
    }

    fn columns(self) -> &'static [&'static str] {
        match self {
            Output::Delta0 => &["delta0"],
            Output::ChiRe => &["chi_re"],
            Output::ChiIm => &["chi_im"],
            Output::Slope => &["slope"],
            Output::Ng => &["n_g"],
            Output::Populations => &["rho11", "rho22", "rho33", "rho44"],
        }
    }
}

impl FromStr for Output {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let all = [
            Output::Delta0,
            Output::ChiRe,
            Output::ChiIm,
            Output::Slope,
            Output::Ng,
            Output::Populations,
        ];
        let up = s.trim().to_ascii_uppercase();
        all.into_iter()
            .find(|o| o.name() == up)
            .ok_or_else(|| format!("unknown output `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: SystemParams,
    pub medium: MediumParams,
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub method: Method,
    pub outputs: Vec<Output>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::Range(format!(
                "points = {}, need at least 2",
                self.points
            )));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(Error::Range(format!(
                "need start < stop, got {} .. {}",
                self.start, self.stop
            )));
        }
        if self.spacing == Spacing::Log && self.start <= 0.0 {
            return Err(Error::Range(format!(
                "LOG spacing needs start > 0, got {}",
                self.start
            )));
        }
        if self.outputs.is_empty() {
            return Err(Error::Range("no outputs requested".into()));
        }
        if self.axis == Axis::DeltaP && self.outputs.contains(&Output::Delta0) {
            return Err(Error::Range("DELTA0 cannot be swept along DELTA_P".into()));
        }
        if self.outputs.contains(&Output::Ng) && self.medium.gamma_si.is_none() {
            return Err(Error::MissingGammaSi);
        }
        for v in [self.start, self.stop] {
            self.axis
                .apply(self.base, v)
                .check()
                .map_err(|e| Error::Range(format!("{} = {v}: {e}", self.axis.name())))?;
        }
        self.base.check()?;
        self.medium.check()
    }

    /// Axis values, ascending.
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                let k = k as f64;
                match self.spacing {
                    Spacing::Linear => self.start + k * (self.stop - self.start) / last,
                    Spacing::Log => {
                        let (a, b) = (self.start.log10(), self.stop.log10());
                        10f64.powf(a + k * (b - a) / last)
                    }
                }
            })
            .collect()
    }

    fn outputs_sorted(&self) -> Vec<Output> {
        let mut o = self.outputs.clone();
        o.sort();
        o.dedup();
        o
    }

    pub fn columns(&self) -> Vec<String> {
        std::iter::once(self.axis.column())
            .chain(
                self.outputs_sorted()
                    .iter()
                    .flat_map(|o| o.columns().iter().copied()),
            )
            .map(str::to_string)
            .collect()
    }

    /// Self-describing `(key, value)` pairs excluding the timestamp.
    pub fn describe(&self) -> Vec<(String, String)> {
        let p = &self.base;
        let m = &self.medium;
        let mut meta: Vec<(String, String)> = vec![
            (
                "tool".into(),
                format!("darkres {}", env!("CARGO_PKG_VERSION")),
            ),
            ("method".into(), self.method.name().into()),
            ("axis".into(), self.axis.name().into()),
            ("spacing".into(), self.spacing.to_string()),
            ("start".into(), self.start.to_string()),
            ("stop".into(), self.stop.to_string()),
            ("points".into(), self.points.to_string()),
            (
                "outputs".into(),
                self.outputs_sorted()
                    .iter()
                    .map(|o| o.name())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
        ];
        meta.extend(param_metadata(p, m));
        meta
    }
}

/// Resolved parameters as `(config key, value)` pairs.
pub fn param_metadata(p: &SystemParams, m: &MediumParams) -> Vec<(String, String)> {
    let mut meta: Vec<(String, String)> = [
        ("g41", p.g41),
        ("g42", p.g42),
        ("gp", p.g_p),
        ("d41", p.delta41),
        ("d42", p.delta42),
        ("dp", p.delta_p),
        ("gamma41", p.gamma41),
        ("gamma42", p.gamma42),
        ("gamma23", p.gamma23),
        ("gamma13", p.gamma13),
        ("lambda", p.lambda_pump),
        ("N_per_cm3", m.number_density * 1e-6),
        ("wavelength_nm", m.probe_wavelength * 1e9),
        ("gamma23_over_gamma", m.gamma23_over_gamma),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect();
    if let Some(g) = m.gamma_si {
        meta.push(("gamma_SI".into(), g.to_string()));
    }
    meta
}

fn evaluate_point(spec: &SweepSpec, outputs: &[Output], x: f64) -> Result<Vec<f64>> {
    let p = spec.axis.apply(spec.base, x);
    let m = &spec.medium;
    let mut row = vec![x];
    let mut at = p.delta_p;
    if outputs.contains(&Output::Delta0) {
        at = find_absorption_zero(&p, m, auto_zero_bracket(&p))?;
        row.push(at);
    }
    let q = p.with_delta_p(at);
    let wants = |o: Output| outputs.contains(&o);

    let chi_here = if wants(Output::ChiRe) || wants(Output::ChiIm) || wants(Output::Ng) {
        Some(chi(&q, m, spec.method)?)
    } else {
        None
    };
    let slope = if wants(Output::Slope) || wants(Output::Ng) {
        let s = central_slope(
            |d| Ok(chi(&p.with_delta_p(d), m, spec.method)?.re),
            at,
            default_step(&p),
        )?;
        Some(s.slope)
    } else {
        None
    };

    for o in outputs {
        match o {
            Output::Delta0 => {}
            Output::ChiRe => row.push(chi_here.unwrap().re),
            Output::ChiIm => row.push(chi_here.unwrap().im),
            Output::Slope => row.push(slope.unwrap()),
            Output::Ng => row.push(group_index_from(chi_here.unwrap().re, slope.unwrap(), m)?),
            Output::Populations => row.extend(steady_state(&q)?.populations()),
        }
    }
    Ok(row)
}

fn failed_point(x: f64, e: &Error) -> FailedPoint {
    let text = e.to_string();
    let message = text
        .strip_prefix(e.code())
        .and_then(|t| t.strip_prefix(": "))
        .unwrap_or(&text)
        .to_string();
    FailedPoint {
        axis_value: x,
        code: e.code().to_string(),
        message,
    }
}

/// Runs the sweep on the global thread pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let outputs = spec.outputs_sorted();
    let results: Vec<(f64, Result<Vec<f64>>)> = spec
        .grid()
        .into_par_iter()
        .map(|x| (x, evaluate_point(spec, &outputs, x)))
        .collect();

    let mut table = SweepTable {
        columns: spec.columns(),
        metadata: spec.describe(),
        ..Default::default()
    };
    let stamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    table
        .metadata
        .push(("timestamp_unix".into(), stamp.to_string()));
    for (x, r) in results {
        match r {
            Ok(row) => table.rows.push(row),
            Err(e) => table.failed.push(failed_point(x, &e)),
        }
    }
    Ok(table)
}

/// Runs `f` on a dedicated pool of `jobs` worker threads.
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Io(format!("cannot start worker pool: {e}")))?;
    pool.install(f)
}

/// Runs the sweep on a dedicated pool of `jobs` worker threads.
pub fn run_sweep_with_jobs(spec: &SweepSpec, jobs: usize) -> Result<SweepTable> {
    with_jobs(jobs, || run_sweep(spec))
}

/// Numeric chi next to `spec.method` on the sweep grid, with
/// rel_diff = |chi_numeric - chi_method| / |chi_numeric|. The largest
/// rel_diff is recorded in the metadata as `max_rel_diff`.
pub fn compare_methods(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let m = &spec.medium;
    let results: Vec<(f64, Result<Vec<f64>>)> = spec
        .grid()
        .into_par_iter()
        .map(|x| {
            let p = spec.axis.apply(spec.base, x);
            let row = chi(&p, m, Method::Numeric).and_then(|n| {
                let a = chi(&p, m, spec.method)?;
                Ok(vec![x, n.re, n.im, a.re, a.im, (n - a).norm() / n.norm()])
            });
            (x, row)
        })
        .collect();

    let mut table = SweepTable {
        columns: [
            spec.axis.column(),
            "chi_re_numeric",
            "chi_im_numeric",
            "chi_re_method",
            "chi_im_method",
            "rel_diff",
        ]
        .map(str::to_string)
        .to_vec(),
        metadata: spec.describe(),
        ..Default::default()
    };
    table.metadata.retain(|(k, _)| k != "outputs");
    let mut worst = 0.0f64;
    for (x, r) in results {
        match r {
            Ok(row) => {
                worst = worst.max(row[5]);
                table.rows.push(row);
            }
            Err(e) => table.failed.push(failed_point(x, &e)),
        }
    }
    table
        .metadata
        .push(("max_rel_diff".into(), format_number(worst)));
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(axis: Axis, start: f64, stop: f64, points: usize) -> SweepSpec {
        SweepSpec {
            base: SystemParams::spike(),
            medium: MediumParams::mercury(),
            axis,
            start,
            stop,
            points,
            spacing: Spacing::Linear,
            method: Method::Numeric,
            outputs: vec![Output::ChiRe, Output::ChiIm],
        }
    }

    #[test]
    fn two_point_sweep() {
        let t = run_sweep(&spec(Axis::DeltaP, -1.0, 1.0, 2)).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.columns, vec!["delta_p", "chi_re", "chi_im"]);
    }

    #[test]
    fn linear_grid_exact() {
        let s = spec(Axis::DeltaP, -10.0, 10.0, 7);
        for (k, x) in s.grid().into_iter().enumerate() {
            assert_eq!(x, -10.0 + k as f64 * 20.0 / 6.0);
        }
    }

    #[test]
    fn log_grid() {
        let s = SweepSpec {
            spacing: Spacing::Log,
            ..spec(Axis::Lambda, 1e-7, 1e-3, 5)
        };
        let g = s.grid();
        for (k, want) in [1e-7, 1e-6, 1e-5, 1e-4, 1e-3].into_iter().enumerate() {
            assert!(
                (g[k] - want).abs() <= 4.0 * f64::EPSILON * want,
                "{} {}",
                g[k],
                want
            );
        }
    }

    #[test]
    fn failed_points_are_logged() {
        // without g41, gamma13 or pump the population is trapped in |3>
        let mut s = spec(Axis::Lambda, 0.0, 1e-4, 3);
        s.base.g41 = 0.0;
        s.outputs = vec![Output::ChiIm];
        let t = run_sweep(&s).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.failed.len(), 1);
        assert_eq!(
            (t.failed[0].axis_value, t.failed[0].code.as_str()),
            (0.0, "TRAPPED")
        );
    }

    #[test]
    fn ng_requires_gamma_si() {
        let mut s = spec(Axis::DeltaP, -1.0, 1.0, 3);
        s.outputs = vec![Output::Ng];
        assert_eq!(run_sweep(&s).unwrap_err(), Error::MissingGammaSi);
        s.medium = s.medium.with_gamma_si(1e7);
        assert_eq!(run_sweep(&s).unwrap().columns, vec!["delta_p", "n_g"]);
    }

    #[test]
    fn negative_axis_values_rejected() {
        let s = spec(Axis::Lambda, -1e-5, 1e-5, 3);
        assert_eq!(run_sweep(&s).unwrap_err().code(), "RANGE_ERROR");
        let s = SweepSpec {
            outputs: vec![Output::Delta0],
            ..spec(Axis::DeltaP, -1.0, 1.0, 3)
        };
        assert_eq!(run_sweep(&s).unwrap_err().code(), "RANGE_ERROR");
    }

    #[test]
    fn compare_against_itself_is_zero() {
        let t = compare_methods(&spec(Axis::DeltaP, -1.0, 1.0, 5)).unwrap();
        assert_eq!(t.meta("max_rel_diff"), Some(format_number(0.0).as_str()));
        assert_eq!(t.columns.len(), 6);
        assert_eq!(t.rows.len(), 5);
    }

    #[test]
    fn failed_message_has_no_code_prefix() {
        let f = failed_point(1.0, &Error::Trapped);
        assert_eq!(f.code, "TRAPPED");
        assert!(!f.message.starts_with("TRAPPED"));
    }

    #[test]
    fn column_order_is_canonical() {
        let mut s = spec(Axis::G42, 4.0, 5.0, 2);
        s.outputs = vec![
            Output::Populations,
            Output::ChiIm,
            Output::Slope,
            Output::ChiIm,
        ];
        assert_eq!(
            s.columns(),
            vec!["g42", "chi_im", "slope", "rho11", "rho22", "rho33", "rho44"]
        );
        let t = run_sweep(&s).unwrap();
        for row in &t.rows {
            let pops: f64 = row[3..].iter().sum();
            assert!((pops - 1.0).abs() < 1e-10);
        }
    }
}
