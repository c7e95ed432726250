//! Closed-form weak-probe coherences and the dressed states of the drive.
//!
//! None of these functions enforce their validity conditions; use
//! [`crate::model::validate_params`] to see which regime applies.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{damping_table, SystemParams};

/// Denominators smaller than this are reported as degenerate.
pub const DENOMINATOR_FLOOR: f64 = 1e-30;

fn checked_div(num: Complex64, den: Complex64) -> Result<Complex64> {
    if den.norm() < DENOMINATOR_FLOOR {
        return Err(Error::DivisionDegenerate(den.norm()));
    }
    Ok(num / den)
}

/// Leading-order rho_23 without incoherent pump, for arbitrary detunings.
///
/// The pump rate is ignored.
pub fn rho23_weak_probe(p: &SystemParams) -> Result<Complex64> {
    let d = damping_table(p);
    let i = Complex64::i();
    let c13 = p.delta_p - p.delta41 + p.delta42 + i * d.gamma(1, 3);
    let c34 = p.delta_p + p.delta42 + i * d.gamma(3, 4);
    let c23 = p.delta_p + i * d.gamma(2, 3);
    let g41sq = p.g41 * p.g41;
    let g42sq = p.g42 * p.g42;

    let num = -p.g_p * (g41sq - c13 * c34);
    let den = g41sq * c23 + c13 * (g42sq - c23 * c34);
    checked_div(num, den)
}

/// rho_23 for resonant drives, gamma13 = 0 and a small probe detuning.
pub fn rho23_limit(p: &SystemParams) -> Result<Complex64> {
    let d = damping_table(p);
    let i = Complex64::i();
    let (g23, g34) = (d.gamma(2, 3), d.gamma(3, 4));
    let dp = p.delta_p;
    let g41sq = p.g41 * p.g41;

    let num = -p.g_p * (g41sq - i * dp * g34);
    let den = p.g42 * p.g42 * dp + i * (g41sq * g23 - dp * dp * (g34 + g23));
    checked_div(num, den)
}

/// Amplitude g41^2 g_p gamma23 / (g42^2 gamma23 + 2 Lambda Gamma24 gamma42)
/// shared by the pumped coherence and the pumped group index.
fn pump_amplitude(p: &SystemParams) -> Result<f64> {
    let d = damping_table(p);
    let den = p.g42 * p.g42 * p.gamma23 + 2.0 * p.lambda_pump * d.gamma(2, 4) * p.gamma42;
    if den.abs() < DENOMINATOR_FLOOR {
        return Err(Error::DivisionDegenerate(den.abs()));
    }
    Ok(p.g41 * p.g41 * p.g_p * p.gamma23 / den)
}

/// rho_23 with the incoherent pump in the regime Lambda0 << Lambda << gamma41, gamma42.
///
/// A Lorentzian of half-width Lambda whose imaginary part is negative (gain).
pub fn rho23_incoherent(p: &SystemParams) -> Result<Complex64> {
    let amp = pump_amplitude(p)?;
    let (dp, lam) = (p.delta_p, p.lambda_pump);
    let den = dp * dp + lam * lam;
    if den < DENOMINATOR_FLOOR {
        return Err(Error::DivisionDegenerate(den));
    }
    Ok(amp * Complex64::new(dp, -lam) / den)
}

/// Half-width of the narrow absorption spike at zero probe detuning.
pub fn spike_half_width(p: &SystemParams) -> f64 {
    (p.g41 / p.g42).powi(2) * p.gamma23
}

/// Pump rate Lambda0 at which the central absorption spike turns into gain.
///
/// This is the leading-order form (g41/g42)^2 gamma23.
pub fn lambda_threshold(p: &SystemParams) -> f64 {
    (p.g41 / p.g42).powi(2) * p.gamma23
}

/// n_g - 1 from the pumped Lorentzian. It carries a leftover factor of the
/// probe Rabi frequency, so only its sign and shape are meaningful; the
/// quantitative index is [`crate::observables::group_index`].
pub fn group_index_analytic(p: &SystemParams) -> Result<f64> {
    let amp = pump_amplitude(p)?;
    let (dp2, lam2) = (p.delta_p * p.delta_p, p.lambda_pump * p.lambda_pump);
    let den = (dp2 + lam2).powi(2);
    if den < DENOMINATOR_FLOOR {
        return Err(Error::DivisionDegenerate(den));
    }
    Ok(amp * (dp2 - lam2) / den)
}

/// Eigenstates of the two coherent drives acting on |1>, |2>, |4>.
///
/// Vectors hold amplitudes on the bare states in the order (|1>, |2>, |4>).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedStates {
    pub lambda_zero: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// The dark state; no |4> component.
    pub zero: [f64; 3],
    pub plus: [f64; 3],
    pub minus: [f64; 3],
}

pub fn dressed_states(g41: f64, g42: f64) -> Result<DressedStates> {
    let sum_sq = g41 * g41 + g42 * g42;
    if sum_sq <= 0.0 {
        return Err(Error::Degenerate);
    }
    let norm = sum_sq.sqrt();
    let half = (2.0 * sum_sq).sqrt();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok(DressedStates {
        lambda_zero: 0.0,
        lambda_plus: norm,
        lambda_minus: -norm,
        zero: [-g42 / norm, g41 / norm, 0.0],
        plus: [g41 / half, g42 / half, -s],
        minus: [g41 / half, g42 / half, s],
    })
}

/// Rotating-frame drive Hamiltonian on (|1>, |2>, |4>) at zero detunings, in
/// the sign convention of the equations of motion: H = -(g41|4><1| + g42|4><2| + h.c.).
pub fn drive_hamiltonian(g41: f64, g42: f64) -> [[f64; 3]; 3] {
    [[0.0, 0.0, -g41], [0.0, 0.0, -g42], [-g41, -g42, 0.0]]
}
