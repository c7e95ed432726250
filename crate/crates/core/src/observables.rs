//! Probe susceptibility, dispersion slope, group index and spectral features.
//!
//! Detunings and rates are in units of gamma, so slopes of chi are per gamma.
//! The SI group index converts with the user-supplied `gamma_si`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analytic;
use crate::error::{Error, Result};
use crate::model::{MediumParams, SystemParams};
use crate::numeric::{self, SlopeEstimate};
use crate::steady_state::steady_state;

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Bisection tolerance on the zero-absorption detuning.
pub const ZERO_REL_TOL: f64 = 1e-6;

/// Bisection tolerance on the gain threshold.
pub const THRESHOLD_REL_TOL: f64 = 1e-3;

/// Step used when neither the pump nor the spike sets a narrower scale.
pub const FALLBACK_STEP: f64 = 1e-3;

/// How rho_23 is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Full steady-state solve.
    Numeric,
    /// Leading-order weak-probe closed form, arbitrary detunings.
    AnalyticFull,
    /// Resonant-drive small-detuning limit of the closed form.
    AnalyticLimit,
    /// Closed form with incoherent pump.
    AnalyticPump,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Numeric,
        Method::AnalyticFull,
        Method::AnalyticLimit,
        Method::AnalyticPump,
    ];

    /// Upper-case name used in config files and CSV metadata.
    pub fn name(self) -> &'static str {
        match self {
            Method::Numeric => "NUMERIC",
            Method::AnalyticFull => "ANALYTIC_FULL",
            Method::AnalyticLimit => "ANALYTIC_LIMIT",
            Method::AnalyticPump => "ANALYTIC_PUMP",
        }
    }

    /// Lower-case name used on the command line.
    pub fn flag(self) -> &'static str {
        match self {
            Method::Numeric => "numeric",
            Method::AnalyticFull => "analytic-full",
            Method::AnalyticLimit => "analytic-limit",
            Method::AnalyticPump => "analytic-pump",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    /// Accepts both `ANALYTIC_FULL` and `analytic-full` spellings.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        Method::ALL
            .into_iter()
            .find(|m| m.name() == norm)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// rho_23 at `p.delta_p` by the chosen method.
pub fn rho23(p: &SystemParams, method: Method) -> Result<Complex64> {
    match method {
        Method::Numeric => Ok(steady_state(p)?.rho23()),
        Method::AnalyticFull => analytic::rho23_weak_probe(p),
        Method::AnalyticLimit => analytic::rho23_limit(p),
        Method::AnalyticPump => analytic::rho23_incoherent(p),
    }
}

/// K = 3 N lambda_p^3 / (4 pi^2) * gamma23/gamma, with chi = K rho23 / g_p.
pub fn susceptibility_prefactor(m: &MediumParams) -> f64 {
    3.0 * m.number_density * m.probe_wavelength.powi(3) / (4.0 * PI * PI) * m.gamma23_over_gamma
}

/// Linear probe susceptibility for a coherence obtained at probe Rabi
/// frequency `g_p` (units of gamma).
pub fn susceptibility(rho23: Complex64, m: &MediumParams, g_p: f64) -> Complex64 {
    susceptibility_prefactor(m) * rho23 / g_p
}

/// chi at `p.delta_p`.
pub fn chi(p: &SystemParams, m: &MediumParams, method: Method) -> Result<Complex64> {
    Ok(susceptibility(rho23(p, method)?, m, p.g_p))
}

/// One point of a susceptibility spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiPoint {
    pub delta_p: f64,
    pub chi: Complex64,
    pub method: Method,
}

/// chi over a probe-detuning grid, evaluated in parallel. Each entry is the
/// point or the error that prevented computing it; order matches `grid`.
pub fn chi_spectrum(
    p: &SystemParams,
    m: &MediumParams,
    grid: &[f64],
    method: Method,
) -> Vec<Result<ChiPoint>> {
    grid.par_iter()
        .map(|&delta_p| {
            let chi = chi(&p.with_delta_p(delta_p), m, method)?;
            if !(chi.re.is_finite() && chi.im.is_finite()) {
                return Err(Error::DivisionDegenerate(0.0));
            }
            Ok(ChiPoint {
                delta_p,
                chi,
                method,
            })
        })
        .collect()
}

/// Default finite-difference step: 1% of the narrowest of the pump rate and
/// the spike half-width, or [`FALLBACK_STEP`] when neither is positive.
pub fn default_step(p: &SystemParams) -> f64 {
    let w = if p.g42 > 0.0 {
        analytic::spike_half_width(p)
    } else {
        0.0
    };
    [p.lambda_pump, w]
        .into_iter()
        .filter(|s| *s > 0.0)
        .fold(None, |acc: Option<f64>, s| {
            Some(acc.map_or(s, |a| a.min(s)))
        })
        .map_or(FALLBACK_STEP, |s| 1e-2 * s)
}

/// d(chi')/d(delta_p) of the numeric spectrum at `delta_p`, in units of 1/gamma.
pub fn dispersion_slope(
    p: &SystemParams,
    m: &MediumParams,
    delta_p: f64,
    h: f64,
) -> Result<SlopeEstimate> {
    numeric::central_slope(
        |d| Ok(chi(&p.with_delta_p(d), m, Method::Numeric)?.re),
        delta_p,
        h,
    )
}

/// n_g = 1 + 2 pi chi' + 2 pi omega_p d(chi')/d(omega_p), where the slope is
/// given per unit of gamma and converted with `m.gamma_si`.
pub fn group_index_from(chi_re: f64, slope_per_gamma: f64, m: &MediumParams) -> Result<f64> {
    let gamma_si = m.gamma_si.ok_or(Error::MissingGammaSi)?;
    let omega_p = 2.0 * PI * SPEED_OF_LIGHT / m.probe_wavelength;
    Ok(1.0 + 2.0 * PI * chi_re + 2.0 * PI * omega_p * slope_per_gamma / gamma_si)
}

/// Group index of the numeric spectrum at `delta_p`; negative values mean a
/// negative group velocity.
pub fn group_index(p: &SystemParams, m: &MediumParams, delta_p: f64) -> Result<f64> {
    if m.gamma_si.is_none() {
        return Err(Error::MissingGammaSi);
    }
    let q = p.with_delta_p(delta_p);
    let chi_re = chi(&q, m, Method::Numeric)?.re;
    let slope = dispersion_slope(p, m, delta_p, default_step(p))?;
    group_index_from(chi_re, slope.slope, m)
}

/// Probe detuning inside `bracket` where Im chi of the numeric spectrum
/// vanishes. Fails with [`Error::NoSignChange`] if absorption keeps its sign
/// across the bracket.
pub fn find_absorption_zero(
    p: &SystemParams,
    m: &MediumParams,
    bracket: (f64, f64),
) -> Result<f64> {
    numeric::find_root(
        |d| Ok(chi(&p.with_delta_p(d), m, Method::Numeric)?.im),
        bracket.0,
        bracket.1,
        ZERO_REL_TOL,
    )
}

/// Pump rate in `lambda_range` at which Im chi(delta_p = 0) changes sign.
pub fn find_gain_threshold(
    p: &SystemParams,
    m: &MediumParams,
    lambda_range: (f64, f64),
) -> Result<f64> {
    let base = p.with_delta_p(0.0);
    numeric::find_root(
        |lam| Ok(chi(&base.with_lambda(lam), m, Method::Numeric)?.im),
        lambda_range.0,
        lambda_range.1,
        THRESHOLD_REL_TOL,
    )
}

/// Search interval used when no bracket is given for the zero-absorption
/// detuning: [1e-3 s, 100 s] with s the larger of the pump rate and the
/// spike half-width.
pub fn auto_zero_bracket(p: &SystemParams) -> (f64, f64) {
    let w = if p.g42 > 0.0 {
        analytic::spike_half_width(p)
    } else {
        0.0
    };
    let scale = p.lambda_pump.max(w).max(1e-12);
    (1e-3 * scale, 100.0 * scale)
}

/// Spectral features of a pumped configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureReport {
    /// Zero-absorption detunings, ascending.
    pub zero_crossings: Vec<f64>,
    /// d(chi')/d(delta_p) at each zero crossing.
    pub slope_at: BTreeMap<OrderedDetuning, f64>,
    pub gain_threshold: Option<f64>,
}

/// Detuning usable as a map key (total order on finite values).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderedDetuning(pub f64);

impl Eq for OrderedDetuning {}

impl PartialOrd for OrderedDetuning {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderedDetuning {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Finds the zero-absorption detunings on both sides of resonance (the
/// bracket is mirrored), the dispersion slope at each, and, if
/// `lambda_range` is given, the gain threshold.
pub fn feature_report(
    p: &SystemParams,
    m: &MediumParams,
    bracket: (f64, f64),
    lambda_range: Option<(f64, f64)>,
) -> Result<FeatureReport> {
    let mut zero_crossings = Vec::new();
    for b in [(-bracket.1, -bracket.0), bracket] {
        match find_absorption_zero(p, m, b) {
            Ok(z) => zero_crossings.push(z),
            Err(Error::NoSignChange { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    zero_crossings.sort_by(f64::total_cmp);
    let h = default_step(p);
    let mut slope_at = BTreeMap::new();
    for &z in &zero_crossings {
        slope_at.insert(OrderedDetuning(z), dispersion_slope(p, m, z, h)?.slope);
    }
    let gain_threshold = match lambda_range {
        Some(r) => match find_gain_threshold(p, m, r) {
            Ok(t) => Some(t),
            Err(Error::NoSignChange { .. }) => None,
            Err(e) => return Err(e),
        },
        None => None,
    };
    Ok(FeatureReport {
        zero_crossings,
        slope_at,
        gain_threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mercury_prefactor() {
        let k = susceptibility_prefactor(&MediumParams::mercury());
        assert!((k - 1.74e-4).abs() < 0.005e-4, "{k}");
    }

    #[test]
    fn susceptibility_scaling() {
        let m = MediumParams::mercury();
        assert_eq!(
            susceptibility(Complex64::new(0.0, 0.0), &m, 1e-4),
            Complex64::new(0.0, 0.0)
        );
        let chi = susceptibility(Complex64::new(0.0, -2.50e-4), &m, 1e-4);
        assert!((chi.im + 4.35e-4).abs() < 0.01e-4, "{chi}");
        assert_eq!(chi.re, 0.0);
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
            assert_eq!(m.flag().parse::<Method>().unwrap(), m);
        }
        assert!("fast".parse::<Method>().is_err());
    }

    #[test]
    fn vacuum_group_index() {
        let m = MediumParams::mercury().with_gamma_si(1e7);
        assert_eq!(group_index_from(0.0, 0.0, &m).unwrap(), 1.0);
        assert_eq!(
            group_index_from(0.0, 0.0, &MediumParams::mercury()).unwrap_err(),
            Error::MissingGammaSi
        );
    }

    #[test]
    fn step_defaults() {
        assert!((default_step(&SystemParams::spike()) - 1.4e-7).abs() < 1e-20);
        assert!((default_step(&SystemParams::pumped_spike()) - 1.4e-7).abs() < 1e-20);
        assert_eq!(default_step(&SystemParams::doublet()), FALLBACK_STEP);
        let pumped = SystemParams::doublet().with_lambda(5e-4);
        assert!((default_step(&pumped) - 5e-6).abs() < 1e-20);
    }

    #[test]
    fn spectrum_marks_failed_points() {
        let trapped = SystemParams {
            gamma13: 0.0,
            ..SystemParams::doublet()
        };
        let out = chi_spectrum(
            &trapped,
            &MediumParams::mercury(),
            &[-1.0, 0.0, 1.0],
            Method::Numeric,
        );
        assert_eq!(out.len(), 3);
        assert!(out.iter().all(|r| matches!(r, Err(Error::Trapped))));
        let out = chi_spectrum(
            &SystemParams::spike(),
            &MediumParams::mercury(),
            &[-1.0, 0.5],
            Method::AnalyticFull,
        );
        assert_eq!(out[0].as_ref().unwrap().delta_p, -1.0);
        assert_eq!(out[1].as_ref().unwrap().method, Method::AnalyticFull);
    }
}
