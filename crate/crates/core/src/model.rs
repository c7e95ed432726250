//! Physical parameters of the four-level scheme.
//!
//! Level layout: the strong drive couples |2> <-> |4>, the weak perturbing
//! field couples |1> <-> |4>, and the probe plus the incoherent pump act on
//! |2> <-> |3>. Every rate, Rabi frequency and detuning is dimensionless, in
//! units of the reference rate gamma (= gamma41 for the mercury presets).

use crate::error::{Error, Result};

/// All frequencies and rates of the driven atom, in units of gamma.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Coupling field Rabi frequency on |1> <-> |4>.
    pub g41: f64,
    /// Strong drive Rabi frequency on |2> <-> |4>.
    pub g42: f64,
    /// Probe Rabi frequency on |2> <-> |3>.
    pub g_p: f64,
    pub delta41: f64,
    pub delta42: f64,
    pub delta_p: f64,
    pub gamma41: f64,
    pub gamma42: f64,
    pub gamma23: f64,
    pub gamma13: f64,
    /// Incoherent pump strength on the probe transition.
    pub lambda_pump: f64,
}

impl SystemParams {
    /// Autler-Townes configuration: perturbing field off, weak 1->3 decay.
    pub fn doublet() -> Self {
        SystemParams {
            g41: 0.0,
            g42: 4.0,
            g_p: 1e-4,
            delta41: 0.0,
            delta42: 0.0,
            delta_p: 0.0,
            gamma41: 1.0,
            gamma42: 0.79,
            gamma23: 0.14,
            gamma13: 0.01,
            lambda_pump: 0.0,
        }
    }

    /// Interacting dark resonances: g41 = 0.04, no 1->3 decay.
    pub fn spike() -> Self {
        SystemParams {
            g41: 0.04,
            gamma13: 0.0,
            ..Self::doublet()
        }
    }

    /// Dark resonances plus incoherent pump, lambda = 4e-5.
    pub fn pumped_spike() -> Self {
        SystemParams {
            lambda_pump: 4e-5,
            ..Self::spike()
        }
    }

    pub fn with_delta_p(self, delta_p: f64) -> Self {
        SystemParams { delta_p, ..self }
    }

    pub fn with_lambda(self, lambda_pump: f64) -> Self {
        SystemParams {
            lambda_pump,
            ..self
        }
    }

    pub fn with_g42(self, g42: f64) -> Self {
        SystemParams { g42, ..self }
    }

    /// Structural checks only: finiteness and sign of rates and Rabi frequencies.
    pub fn check(&self) -> Result<()> {
        let all = [
            ("g41", self.g41),
            ("g42", self.g42),
            ("g_p", self.g_p),
            ("delta41", self.delta41),
            ("delta42", self.delta42),
            ("delta_p", self.delta_p),
            ("gamma41", self.gamma41),
            ("gamma42", self.gamma42),
            ("gamma23", self.gamma23),
            ("gamma13", self.gamma13),
            ("lambda", self.lambda_pump),
        ];
        for (name, value) in all {
            if !value.is_finite() {
                return Err(Error::NonFinite { name });
            }
        }
        for (name, value) in [("g41", self.g41), ("g42", self.g42), ("g_p", self.g_p)] {
            if value < 0.0 {
                return Err(Error::NegativeRabi { name, value });
            }
        }
        for (name, value) in [
            ("gamma41", self.gamma41),
            ("gamma42", self.gamma42),
            ("gamma23", self.gamma23),
            ("gamma13", self.gamma13),
            ("lambda", self.lambda_pump),
        ] {
            if value < 0.0 {
                return Err(Error::NegativeRate { name, value });
            }
        }
        Ok(())
    }
}

/// Total decay rates out of each level and the coherence damping rates
/// Gamma_ij = gamma_i + gamma_j. The incoherent pump is not included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingTable {
    gamma_total: [f64; 4],
}

impl DampingTable {
    /// Total decay rate out of level `i` (1-based).
    pub fn gamma_total(&self, i: usize) -> f64 {
        self.gamma_total[i - 1]
    }

    /// Coherence damping rate for the pair (`i`, `j`), 1-based and symmetric.
    pub fn gamma(&self, i: usize, j: usize) -> f64 {
        self.gamma_total[i - 1] + self.gamma_total[j - 1]
    }
}

pub fn damping_table(p: &SystemParams) -> DampingTable {
    DampingTable {
        gamma_total: [p.gamma13, p.gamma23, 0.0, p.gamma41 + p.gamma42],
    }
}

/// Bulk properties needed to turn a coherence into a susceptibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    /// Atom number density in m^-3.
    pub number_density: f64,
    /// Probe wavelength in m.
    pub probe_wavelength: f64,
    pub gamma23_over_gamma: f64,
    /// Reference rate gamma in rad/s; only needed for the SI group index.
    pub gamma_si: Option<f64>,
}

impl MediumParams {
    /// Mercury 253.7 nm line at N = 1e12 cm^-3.
    pub fn mercury() -> Self {
        MediumParams {
            number_density: 1e18,
            probe_wavelength: 253.7e-9,
            gamma23_over_gamma: 0.14,
            gamma_si: None,
        }
    }

    pub fn with_gamma_si(self, gamma_si: f64) -> Self {
        MediumParams {
            gamma_si: Some(gamma_si),
            ..self
        }
    }

    pub fn check(&self) -> Result<()> {
        if !(self.number_density > 0.0 && self.number_density.is_finite()) {
            return Err(Error::InvalidMedium(format!(
                "number density {} must be > 0",
                self.number_density
            )));
        }
        if !(self.probe_wavelength > 0.0 && self.probe_wavelength.is_finite()) {
            return Err(Error::InvalidMedium(format!(
                "probe wavelength {} must be > 0",
                self.probe_wavelength
            )));
        }
        if !(self.gamma23_over_gamma > 0.0 && self.gamma23_over_gamma <= 1.0) {
            return Err(Error::InvalidMedium(format!(
                "gamma23/gamma = {} must lie in (0, 1]",
                self.gamma23_over_gamma
            )));
        }
        if let Some(g) = self.gamma_si {
            if !(g > 0.0 && g.is_finite()) {
                return Err(Error::InvalidMedium(format!("gamma_SI = {g} must be > 0")));
            }
        }
        Ok(())
    }
}

impl Default for MediumParams {
    fn default() -> Self {
        Self::mercury()
    }
}

/// Probe must be this much weaker than gamma23 to count as a weak probe.
pub const WEAK_PROBE_RATIO: f64 = 1e-2;
/// Ratio used for every "much less than" in the regime conditions.
pub const MUCH_LESS: f64 = 0.1;

/// Analytic regimes whose validity conditions hold for a parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// g_p <= 1e-2 gamma23: the closed forms are first order in the probe.
    WeakProbe,
    /// Resonant drives, g41 << g42, gamma13 = 0 and small probe detuning.
    Limit,
    /// Lambda0 < Lambda << gamma41, gamma42. `margin` is Lambda / Lambda0;
    /// values near one mean the condition holds only marginally.
    Pump { margin: f64 },
}

/// Reports which analytic approximations apply to `p`.
pub fn validate_params(p: &SystemParams) -> Result<Vec<Regime>> {
    p.check()?;
    let mut flags = Vec::new();

    if p.g_p <= WEAK_PROBE_RATIO * p.gamma23 {
        flags.push(Regime::WeakProbe);
    }

    let slowest = p.gamma41.min(p.gamma42);
    let limit = p.delta41 == 0.0
        && p.delta42 == 0.0
        && p.g42 > 0.0
        && p.g41 <= MUCH_LESS * p.g42
        && p.gamma13 == 0.0
        && p.delta_p.abs() <= MUCH_LESS * slowest;
    if limit {
        flags.push(Regime::Limit);
    }

    if p.g42 > 0.0 && p.lambda_pump > 0.0 {
        let lambda0 = (p.g41 / p.g42).powi(2) * p.gamma23;
        let margin = if lambda0 > 0.0 {
            p.lambda_pump / lambda0
        } else {
            f64::INFINITY
        };
        if margin > 1.0 && p.lambda_pump <= MUCH_LESS * slowest {
            flags.push(Regime::Pump { margin });
        }
    }

    Ok(flags)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn spike_is_weak_probe_limit() {
        let flags = validate_params(&SystemParams::spike()).unwrap();
        assert_eq!(flags, vec![Regime::WeakProbe, Regime::Limit]);
    }

    #[test]
    fn pump_regime_is_marginal() {
        let flags = validate_params(&SystemParams::pumped_spike()).unwrap();
        let margin = flags
            .iter()
            .find_map(|f| match f {
                Regime::Pump { margin } => Some(*margin),
                _ => None,
            })
            .expect("pump regime flagged");
        // lambda0 = (0.04/4)^2 * 0.14 = 1.4e-5
        assert!((margin - 4e-5 / 1.4e-5).abs() < 1e-9);
        assert!(margin < 3.0);
    }

    #[test]
    fn negative_rabi_rejected() {
        let p = SystemParams {
            g41: -1.0,
            ..SystemParams::spike()
        };
        assert!(matches!(
            validate_params(&p),
            Err(Error::NegativeRabi { name: "g41", .. })
        ));
    }

    #[test]
    fn negative_rate_and_nan_rejected() {
        let p = SystemParams::spike().with_lambda(-1e-5);
        assert_eq!(validate_params(&p).unwrap_err().code(), "NEGATIVE_RATE");
        let p = SystemParams::spike().with_delta_p(f64::NAN);
        assert_eq!(validate_params(&p).unwrap_err().code(), "NON_FINITE");
    }

    #[test]
    fn validate_is_pure() {
        let p = SystemParams::pumped_spike().with_delta_p(3e-4);
        assert_eq!(validate_params(&p).unwrap(), validate_params(&p).unwrap());
    }

    #[test]
    fn mercury_damping() {
        let d = damping_table(&SystemParams::doublet());
        assert!(close(d.gamma(2, 3), 0.14));
        assert!(close(d.gamma(3, 4), 1.79));
        assert!(close(d.gamma(2, 4), 1.93));
        assert!(close(d.gamma(1, 3), 0.01));
        assert!(close(d.gamma(1, 4), 1.80));
        assert!(close(d.gamma(1, 2), 0.15));
        assert_eq!(d.gamma(2, 4), d.gamma(4, 2));
    }

    #[test]
    fn spike_damping_and_zero_rates() {
        let d = damping_table(&SystemParams::spike());
        assert_eq!(d.gamma(1, 3), 0.0);
        assert!(close(d.gamma(1, 2), 0.14));

        let p = SystemParams {
            gamma41: 0.0,
            gamma42: 0.0,
            gamma23: 0.0,
            gamma13: 0.0,
            ..SystemParams::spike()
        };
        let d = damping_table(&p);
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(d.gamma(i, j), 0.0);
            }
        }
    }

    #[test]
    fn pump_does_not_enter_damping() {
        let a = damping_table(&SystemParams::spike());
        let b = damping_table(&SystemParams::spike().with_lambda(0.3));
        assert_eq!(a, b);
    }

    #[test]
    fn medium_checks() {
        assert!(MediumParams::mercury().check().is_ok());
        let bad = MediumParams {
            gamma23_over_gamma: 1.5,
            ..MediumParams::mercury()
        };
        assert_eq!(bad.check().unwrap_err().code(), "INVALID_MEDIUM");
    }
}
