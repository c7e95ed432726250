//! `key = value` configuration files.
//!
//! One pair per line, `#` starts a comment. All rates are in units of gamma.
//!
//! ```text
//! # absorption at resonance versus pump rate
//! axis = LAMBDA
//! spacing = LOG
//! start = 1e-7
//! stop = 1e-3
//! points = 200
//! outputs = CHI_IM
//! ```

use crate::error::{Error, Result};
use crate::model::{MediumParams, SystemParams};
use crate::observables::Method;

use super::{Axis, Output, Spacing, SweepSpec};

/// Every key accepted in a config file or as a `--set` override.
pub const KEYS: &[&str] = &[
    "g41",
    "g42",
    "gp",
    "d41",
    "d42",
    "dp",
    "gamma41",
    "gamma42",
    "gamma23",
    "gamma13",
    "lambda",
    "N_per_cm3",
    "wavelength_nm",
    "gamma23_over_gamma",
    "gamma_SI",
    "axis",
    "start",
    "stop",
    "points",
    "spacing",
    "method",
    "outputs",
];

/// A parsed but not yet validated configuration. Parameters not given keep
/// the [`SystemParams::spike`] defaults (mercury decay ratios, g41 = 0.04, g42 = 4,
/// g_p = 1e-4, no pump); sweep fields stay unset until required.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub params: SystemParams,
    pub medium: MediumParams,
    pub axis: Option<Axis>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub points: Option<usize>,
    pub spacing: Spacing,
    pub method: Method,
    pub outputs: Option<Vec<Output>>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            params: SystemParams::spike(),
            medium: MediumParams::mercury(),
            axis: None,
            start: None,
            stop: None,
            points: None,
            spacing: Spacing::Linear,
            method: Method::Numeric,
            outputs: None,
        }
    }
}

fn parse_f64(key: &str, value: &str, line: usize) -> Result<f64> {
    value.parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("`{key}` expects a number, got `{value}`"),
    })
}

impl Config {
    /// Parses config text. Keys may repeat; the last occurrence wins.
    pub fn parse(text: &str) -> Result<Config> {
        let mut cfg = Config::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
                line,
                message: format!("expected `key = value`, got `{content}`"),
            })?;
            cfg.set(key.trim(), value.trim(), line)?;
        }
        Ok(cfg)
    }

    /// Applies one `key = value` pair; `line` is only used in error messages
    /// (0 for command-line overrides).
    pub fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        let p = &mut self.params;
        let m = &mut self.medium;
        match key {
            "g41" => p.g41 = parse_f64(key, value, line)?,
            "g42" => p.g42 = parse_f64(key, value, line)?,
            "gp" => p.g_p = parse_f64(key, value, line)?,
            "d41" => p.delta41 = parse_f64(key, value, line)?,
            "d42" => p.delta42 = parse_f64(key, value, line)?,
            "dp" => p.delta_p = parse_f64(key, value, line)?,
            "gamma41" => p.gamma41 = parse_f64(key, value, line)?,
            "gamma42" => p.gamma42 = parse_f64(key, value, line)?,
            "gamma23" => p.gamma23 = parse_f64(key, value, line)?,
            "gamma13" => p.gamma13 = parse_f64(key, value, line)?,
            "lambda" => p.lambda_pump = parse_f64(key, value, line)?,
            "N_per_cm3" => m.number_density = parse_f64(key, value, line)? * 1e6,
            "wavelength_nm" => m.probe_wavelength = parse_f64(key, value, line)? * 1e-9,
            "gamma23_over_gamma" => m.gamma23_over_gamma = parse_f64(key, value, line)?,
            "gamma_SI" => m.gamma_si = Some(parse_f64(key, value, line)?),
            "axis" => {
                self.axis = Some(
                    value
                        .parse()
                        .map_err(|message| Error::Parse { line, message })?,
                )
            }
            "start" => self.start = Some(parse_f64(key, value, line)?),
            "stop" => self.stop = Some(parse_f64(key, value, line)?),
            "points" => {
                let n: i64 = value.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("`points` expects an integer, got `{value}`"),
                })?;
                if n < 2 {
                    return Err(Error::Range(format!("points = {n}, need at least 2")));
                }
                self.points = Some(n as usize);
            }
            "spacing" => {
                self.spacing = value
                    .parse()
                    .map_err(|message| Error::Parse { line, message })?
            }
            "method" => {
                self.method = value
                    .parse()
                    .map_err(|message| Error::Parse { line, message })?
            }
            "outputs" => {
                let list = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<Output>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|message| Error::Parse { line, message })?;
                if list.is_empty() {
                    return Err(Error::Parse {
                        line,
                        message: "`outputs` is empty".into(),
                    });
                }
                self.outputs = Some(list);
            }
            _ => {
                return Err(Error::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
        Ok(())
    }

    /// Applies a `key=value` override as given on the command line.
    pub fn set_override(&mut self, pair: &str) -> Result<()> {
        let (key, value) = pair.split_once('=').ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("override `{pair}` is not `key=value`"),
        })?;
        self.set(key.trim(), value.trim(), 0)
    }

    /// Validated system and medium parameters.
    pub fn base(&self) -> Result<(SystemParams, MediumParams)> {
        self.params.check()?;
        self.medium.check()?;
        Ok((self.params, self.medium))
    }

    /// The full sweep specification; axis, start, stop and points are required.
    pub fn sweep_spec(&self) -> Result<SweepSpec> {
        let (base, medium) = self.base()?;
        let missing = |k: &str| Error::Range(format!("missing required key `{k}`"));
        let spec = SweepSpec {
            base,
            medium,
            axis: self.axis.ok_or_else(|| missing("axis"))?,
            start: self.start.ok_or_else(|| missing("start"))?,
            stop: self.stop.ok_or_else(|| missing("stop"))?,
            points: self.points.ok_or_else(|| missing("points"))?,
            spacing: self.spacing,
            method: self.method,
            outputs: self
                .outputs
                .clone()
                .unwrap_or_else(|| vec![Output::ChiRe, Output::ChiIm]),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Probe-detuning grid used by spectra when the config leaves it open.
pub const DEFAULT_SPECTRUM: (f64, f64, usize) = (-10.0, 10.0, 2000);

impl Config {
    /// A probe-detuning scan: `axis` must be DELTA_P or absent, and missing
    /// start/stop/points fall back to [`DEFAULT_SPECTRUM`].
    pub fn spectrum_spec(&self) -> Result<SweepSpec> {
        if let Some(axis) = self.axis {
            if axis != Axis::DeltaP {
                return Err(Error::Range(format!(
                    "a spectrum scans DELTA_P, config asks for {}",
                    axis.name()
                )));
            }
        }
        let (start, stop, points) = DEFAULT_SPECTRUM;
        Config {
            axis: Some(Axis::DeltaP),
            start: self.start.or(Some(start)),
            stop: self.stop.or(Some(stop)),
            points: self.points.or(Some(points)),
            ..self.clone()
        }
        .sweep_spec()
    }
}

/// Parses and validates a sweep configuration.
pub fn parse_config(text: &str) -> Result<SweepSpec> {
    Config::parse(text)?.sweep_spec()
}
