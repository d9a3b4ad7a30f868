//! Steady-state linear response of the four-level atom.
//!
//! Level scheme: the probe `g` drives |1> <-> |4>, the control `G` drives
//! |3> <-> |4>, the microwave `Omega` drives |2> <-> |3>, and an incoherent
//! pump `r` acts on |1> <-> |4>. The excited state decays to each ground
//! state at the branch rate `gamma`.
//!
//! All rates, detunings and Rabi frequencies are expressed in units of the
//! branch rate `gamma`; the absolute value of `gamma` only matters when
//! converting to physical time.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{self, OracleModel};

/// Below this magnitude the closed-form population denominator is treated as zero.
pub const DEFAULT_DEGENERACY_FLOOR: f64 = 1e-30;

/// Medium parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AtomicParams {
    /// Branch decay rate |4> -> |i> in rad/s.
    pub gamma: f64,
    /// Ground-state dephasing rate, in units of `gamma`.
    pub gamma_c: f64,
    /// Incoherent pump rate on |1> <-> |4>, in units of `gamma`.
    pub pump_rate: f64,
    /// Atomic density in cm^-3.
    pub density: f64,
    /// Probe wavelength in cm.
    pub lambda_probe: f64,
    /// Control wavelength in cm.
    pub lambda_control: f64,
    /// Overrides the dimensionless prefactor `N |d41|^2 / (hbar gamma)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coupling: Option<f64>,
}

impl Default for AtomicParams {
    fn default() -> Self {
        AtomicParams {
            gamma: 3.0 * PI * 1e6,
            gamma_c: 1e-4,
            pump_rate: 0.0,
            density: 5e11,
            lambda_probe: 780e-7,
            lambda_control: 780e-7,
            coupling: None,
        }
    }
}

impl AtomicParams {
    pub fn validate(&self) -> Result<()> {
        check(self.gamma > 0.0 && self.gamma.is_finite(), "gamma", "must be positive")?;
        check(
            self.gamma_c >= 0.0 && self.gamma_c.is_finite(),
            "gamma_c",
            "must be non-negative",
        )?;
        check(
            self.pump_rate >= 0.0 && self.pump_rate.is_finite(),
            "pump_rate",
            "must be non-negative",
        )?;
        check(
            self.density > 0.0 && self.density.is_finite(),
            "density",
            "must be positive",
        )?;
        check(
            self.lambda_probe > 0.0 && self.lambda_probe.is_finite(),
            "lambda_probe",
            "must be positive",
        )?;
        check(
            self.lambda_control > 0.0 && self.lambda_control.is_finite(),
            "lambda_control",
            "must be positive",
        )?;
        if let Some(c) = self.coupling {
            check(c > 0.0 && c.is_finite(), "coupling", "must be positive")?;
        }
        Ok(())
    }

    /// `N |d41|^2 / (hbar gamma)` with the dipole taken from the Einstein-A
    /// relation `d^2 = 3 hbar gamma lambda^3 / (32 pi^3)` (Gaussian units).
    pub fn derived_coupling(&self) -> f64 {
        3.0 * self.density * self.lambda_probe.powi(3) / (32.0 * PI.powi(3))
    }

    pub fn coupling(&self) -> f64 {
        self.coupling.unwrap_or_else(|| self.derived_coupling())
    }

    /// Probe wavenumber in cm^-1.
    pub fn k_probe(&self) -> f64 {
        2.0 * PI / self.lambda_probe
    }

    /// Control wavenumber in cm^-1.
    pub fn k_control(&self) -> f64 {
        2.0 * PI / self.lambda_control
    }
}

fn check(ok: bool, name: &'static str, reason: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(name, reason))
    }
}

/// Optical driving at one point of the medium.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DriveConfig {
    /// Control Rabi frequency `G`.
    pub control: Complex64,
    /// Microwave Rabi frequency `Omega`.
    pub microwave: Complex64,
    /// Probe detuning `Delta1`.
    pub delta_probe: f64,
    /// Control detuning `Delta2`.
    pub delta_control: f64,
    /// Microwave detuning `Delta3`.
    pub delta_microwave: f64,
}

impl Default for DriveConfig {
    fn default() -> Self {
        DriveConfig {
            control: Complex64::new(1.0, 0.0),
            microwave: Complex64::new(0.0, 0.0),
            delta_probe: 0.0,
            delta_control: 0.0,
            delta_microwave: 0.0,
        }
    }
}

impl DriveConfig {
    pub fn validate(&self) -> Result<()> {
        let finite = |z: Complex64| z.re.is_finite() && z.im.is_finite();
        check(finite(self.control), "control", "must be finite")?;
        check(finite(self.microwave), "microwave", "must be finite")?;
        check(self.delta_probe.is_finite(), "delta_probe", "must be finite")?;
        check(self.delta_control.is_finite(), "delta_control", "must be finite")?;
        check(self.delta_microwave.is_finite(), "delta_microwave", "must be finite")?;
        Ok(())
    }

    pub fn with_control(self, control: Complex64) -> Self {
        DriveConfig { control, ..self }
    }

    pub fn with_probe_detuning(self, delta_probe: f64) -> Self {
        DriveConfig { delta_probe, ..self }
    }
}

/// Complex relaxation rates of the coherences entering the linear response.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexRates {
    pub g21: Complex64,
    pub g23: Complex64,
    pub g24: Complex64,
    pub g31: Complex64,
    pub g34: Complex64,
    pub g41: Complex64,
}

/// Zeroth-order (probe-free) populations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Populations0 {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    /// Common denominator of the closed form; `NaN` when the populations
    /// came from the steady-state solver instead.
    pub denominator: f64,
}

impl Populations0 {
    pub fn sum(&self) -> f64 {
        self.rho11 + self.rho22 + self.rho33 + self.rho44
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Susceptibility {
    /// Dimensionless probe susceptibility.
    pub chi: Complex64,
    /// First-order probe coherence per unit probe Rabi frequency (units of 1/gamma).
    pub rho41: Complex64,
}

/// Coherence relaxation rates with gamma41 = gamma24 = gamma34 = gamma and
/// gamma21 = gamma31 = gamma23 = gamma_c.
pub fn complex_rates(params: &AtomicParams, drive: &DriveConfig) -> ComplexRates {
    let gamma = 1.0;
    let gc = params.gamma_c;
    let half_r = 0.5 * params.pump_rate;
    let (d1, d2, d3) = (drive.delta_probe, drive.delta_control, drive.delta_microwave);
    let c = Complex64::new;
    ComplexRates {
        g21: c(half_r + gc, -(d1 - d2 - d3)),
        g23: c(gc, d3),
        g24: c(gamma, d2 + d3),
        g31: c(half_r + gc, d2 - d1),
        // +i*Delta2 follows from the Hamiltonian; see the oracle.
        g34: c(gamma, d2),
        g41: c(half_r + gamma, -d1),
    }
}

/// Closed-form probe-free populations using the default degeneracy floor.
pub fn zeroth_order_populations(params: &AtomicParams, drive: &DriveConfig) -> Result<Populations0> {
    zeroth_order_populations_with_floor(params, drive, DEFAULT_DEGENERACY_FLOOR)
}

pub fn zeroth_order_populations_with_floor(
    params: &AtomicParams,
    drive: &DriveConfig,
    floor: f64,
) -> Result<Populations0> {
    let y = 1.0; // branch rate gamma
    let y2 = y * y;
    let gc = params.gamma_c;
    let r = params.pump_rate;
    let g2 = drive.control.norm_sqr();
    let g4 = g2 * g2;
    let g6 = g4 * g2;
    let o2 = drive.microwave.norm_sqr();
    let o4 = o2 * o2;
    let d2 = drive.delta_control;
    let d3 = drive.delta_microwave;
    let d23 = d2 + d3;

    let bracket = (y2 + d2 * d2) * (y2 + d23 * d23) + 2.0 * (y2 - d2 * d23) * o2 + o4;

    let denominator = r * y * g6
        + g4 * (2.0 * r * y * (gc * y - d3 * d23) + (2.0 * y2 + r * (gc + 4.0 * y)) * o2)
        + 4.0 * r * gc * o2 * bracket
        + g2 * (r * y * (gc * gc + d3 * d3) * (y2 + d23 * d23)
            + (y * (2.0 * gc * y2 + r * (gc + 2.0 * y).powi(2))
                + 2.0 * (gc * y + 2.0 * r * (3.0 * gc + y)) * d2 * d2
                + 4.0 * (5.0 * r * gc + 2.0 * r * y + gc * y) * d2 * d3
                + (8.0 * r * gc + 5.0 * r * y + 2.0 * gc * y) * d3 * d3)
                * o2
            + 2.0 * (gc * y + 2.0 * r * (y + gc)) * o4);

    if !(denominator.abs() >= floor) {
        return Err(Error::DegenerateParameters { denominator, floor });
    }

    let shared = 2.0 * g2 * o2 * (y * (gc * y + g2) + gc * (d23 * d23 + o2));
    let rho11 = (r + y) * shared / denominator;
    let rho44 = r * shared / denominator;

    let rho22 = r
        * (g6
            + g4 * (2.0 * gc * y2 - 2.0 * y * d2 * d3 - 2.0 * y * d3 * d3 + gc * o2 - y * o2)
            + 2.0
                * gc
                * o2
                * (d2.powi(4)
                    + 2.0 * d2.powi(3) * d3
                    + y2 * d3 * d3
                    + d2 * d2 * (2.0 * y2 + d3 * d3 - 2.0 * o2)
                    + 2.0 * d2 * d3 * (y2 - o2)
                    + (y2 + o2).powi(2))
            + g2 * (y * d3.powi(4)
                + (y2 + o2) * (gc * gc * y - (gc - 2.0 * y) * o2)
                + d3 * d3 * (y * (gc * gc + y2) + 2.0 * (gc + 2.0 * y) * o2)
                + d2 * d2 * (gc * gc * y + y * d3 * d3 + (5.0 * gc + 2.0 * y) * o2)
                + d2 * d3 * (2.0 * gc * gc * y + 2.0 * y * d3 * d3 + (7.0 * gc + 6.0 * y) * o2)))
        / denominator;

    let rho33 = r
        * o2
        * (2.0 * gc * d2.powi(4)
            + 4.0 * gc * d2.powi(3) * d3
            + d3 * d3 * (2.0 * gc * y2 + (2.0 * gc + y) * g2)
            + d2 * d2 * (2.0 * gc * d3 * d3 + (3.0 * gc + 2.0 * y) * g2 + 4.0 * gc * (y2 - o2))
            + d2 * d3 * ((5.0 * gc + 2.0 * y) * g2 + 4.0 * gc * (y2 - o2))
            + (g2 + 2.0 * (y2 + o2)) * (y * g2 + gc * (y2 + o2)))
        / denominator;

    Ok(Populations0 {
        rho11,
        rho22,
        rho33,
        rho44,
        denominator,
    })
}

/// Populations from the steady-state solver at zero probe, with ground-state
/// exchange so that the degenerate cases have a unique steady state.
pub fn fallback_populations(params: &AtomicParams, drive: &DriveConfig) -> Result<Populations0> {
    let rho = oracle::steady_state_oracle_with(params, drive, Complex64::new(0.0, 0.0), OracleModel::GroundExchange)?;
    Ok(Populations0 {
        rho11: rho.get(1, 1).re,
        rho22: rho.get(2, 2).re,
        rho33: rho.get(3, 3).re,
        rho44: rho.get(4, 4).re,
        denominator: f64::NAN,
    })
}

/// First-order probe coherence given the zeroth-order populations.
pub fn rho41_from_populations(rates: &ComplexRates, drive: &DriveConfig, pops: &Populations0) -> Complex64 {
    let i = Complex64::i();
    let g2 = drive.control.norm_sqr();
    let o2 = drive.microwave.norm_sqr();
    let ComplexRates {
        g21,
        g23,
        g24,
        g31,
        g34,
        g41,
    } = *rates;

    let b = g21 * (g23 * g24 + g2) - g23 * o2;
    let c = (g21 + g34) * o2;
    let a = (b * (pops.rho44 - pops.rho33) + c * (pops.rho33 - pops.rho22)) / (g23 * (g24 * g34 + o2) + g34 * g2);

    let dark = g21 * g31 + o2;
    i * (dark * (pops.rho11 - pops.rho44) + a * g2) / (g41 * dark + g21 * g2)
}

/// Closed-form first-order coherence; errors on degenerate populations.
pub fn rho41_plus(params: &AtomicParams, drive: &DriveConfig) -> Result<Complex64> {
    let pops = zeroth_order_populations(params, drive)?;
    Ok(rho41_from_populations(&complex_rates(params, drive), drive, &pops))
}

/// Closed-form susceptibility; errors on degenerate populations.
pub fn chi41(params: &AtomicParams, drive: &DriveConfig) -> Result<Susceptibility> {
    let rho41 = rho41_plus(params, drive)?;
    Ok(Susceptibility {
        chi: params.coupling() * rho41,
        rho41,
    })
}

/// Like [`chi41`], but degenerate points take their populations from the
/// steady-state solver.
pub fn chi41_with_fallback(params: &AtomicParams, drive: &DriveConfig) -> Result<Susceptibility> {
    let pops = match zeroth_order_populations(params, drive) {
        Ok(p) => p,
        Err(Error::DegenerateParameters { .. }) => fallback_populations(params, drive)?,
        Err(e) => return Err(e),
    };
    let rho41 = rho41_from_populations(&complex_rates(params, drive), drive, &pops);
    Ok(Susceptibility {
        chi: params.coupling() * rho41,
        rho41,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(gamma_c: f64, pump_rate: f64) -> AtomicParams {
        AtomicParams {
            gamma_c,
            pump_rate,
            ..AtomicParams::default()
        }
    }

    fn drive(control: f64, microwave: f64, d1: f64) -> DriveConfig {
        DriveConfig {
            control: Complex64::new(control, 0.0),
            microwave: Complex64::new(microwave, 0.0),
            delta_probe: d1,
            ..DriveConfig::default()
        }
    }

    #[test]
    fn rates_at_zero_detuning() {
        let rates = complex_rates(&params(0.0, 0.0), &drive(1.0, 0.0, 0.0));
        assert_eq!(rates.g41, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn rates_direct_substitution() {
        let rates = complex_rates(&params(1e-4, 0.0), &drive(1.0, 0.0, 0.5));
        assert_relative_eq!(rates.g21.re, 1e-4);
        assert_relative_eq!(rates.g21.im, -0.5);

        let rates = complex_rates(&params(1e-4, 5e-4), &drive(1.0, 0.0, 0.0));
        assert_relative_eq!(rates.g31.re, 3.5e-4, max_relative = 1e-14);
        assert_eq!(rates.g31.im, 0.0);
    }

    #[test]
    fn populations_sum_to_one() {
        let p = zeroth_order_populations(&params(1e-4, 5e-4), &drive(1.0, 0.01, 0.0)).unwrap();
        assert!((p.sum() - 1.0).abs() < 1e-10, "sum = {}", p.sum());
        for v in [p.rho11, p.rho22, p.rho33, p.rho44] {
            assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn no_microwave_no_pump_is_degenerate() {
        let err = zeroth_order_populations(&params(1e-4, 0.0), &drive(1.0, 0.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::DegenerateParameters { .. }));
        assert!(matches!(
            rho41_plus(&params(1e-4, 0.0), &drive(1.0, 0.0, 0.0)),
            Err(Error::DegenerateParameters { .. })
        ));
    }

    #[test]
    fn no_pump_leaves_excited_state_empty() {
        let p = zeroth_order_populations(&params(1e-4, 0.0), &drive(1.0, 0.01, 0.0)).unwrap();
        assert_eq!(p.rho44, 0.0);
        assert_relative_eq!(p.rho11, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn conjugation_symmetry_in_probe_detuning() {
        let p = params(1e-4, 5e-4);
        let plus = rho41_plus(&p, &drive(1.0, 0.01, 0.3)).unwrap();
        let minus = rho41_plus(&p, &drive(1.0, 0.01, -0.3)).unwrap();
        assert!((plus.re + minus.re).abs() < 1e-12);
        assert!((plus.im - minus.im).abs() < 1e-12);
    }

    #[test]
    fn microwave_induced_absorption_and_gain() {
        let mia = rho41_plus(&params(1e-4, 0.0), &drive(1.0, 0.01, 0.0)).unwrap();
        assert!(mia.im > 0.0);
        let lwi = rho41_plus(&params(1e-4, 5e-4), &drive(1.0, 0.01, 0.0)).unwrap();
        assert!(lwi.im < 0.0);
    }

    #[test]
    fn derived_coupling_for_rubidium_vapour() {
        let p = AtomicParams::default();
        let c0 = p.derived_coupling();
        let expected = 3.0 * 5e11 * (780e-7f64).powi(3) / (32.0 * PI.powi(3));
        assert_relative_eq!(c0, expected, max_relative = 1e-12);
        assert!((c0 - 7.2e-4).abs() < 0.05e-4);
        // resonant two-level absorption length 1 / (2 pi k1 Im chi) with Im(gamma rho41) = 1
        let length = 1.0 / (2.0 * PI * p.k_probe() * c0);
        assert!(length < 0.1, "absorption length {length} cm");
        assert_eq!(p.coupling(), c0);
        let overridden = AtomicParams {
            coupling: Some(1e-5),
            ..p
        };
        assert_eq!(overridden.coupling(), 1e-5);
    }

    #[test]
    fn chi_is_coupling_times_coherence() {
        let p = params(1e-4, 5e-4);
        let s = chi41(&p, &drive(1.0, 0.01, 0.2)).unwrap();
        assert_eq!(s.chi, p.coupling() * s.rho41);
    }

    #[test]
    fn eit_transparency_through_fallback() {
        let p = params(1e-4, 0.0);
        let centre = chi41_with_fallback(&p, &drive(1.0, 0.0, 0.0)).unwrap();
        let peak = (-300..=300)
            .map(|k| {
                chi41_with_fallback(&p, &drive(1.0, 0.0, k as f64 * 0.01))
                    .unwrap()
                    .chi
                    .im
            })
            .fold(f64::MIN, f64::max);
        assert!(centre.chi.im.abs() < 1e-2 * peak);
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(params(-1.0, 0.0).validate().is_err());
        assert!(AtomicParams {
            density: 0.0,
            ..AtomicParams::default()
        }
        .validate()
        .is_err());
        assert!(DriveConfig {
            delta_probe: f64::NAN,
            ..DriveConfig::default()
        }
        .validate()
        .is_err());
    }
}
