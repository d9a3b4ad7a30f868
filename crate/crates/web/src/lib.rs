//! wasm-bindgen surface for the static demo page in `www/`.
//!
//! All rates are in units of the excited-state decay rate, lengths in cm.
//! Arrays come back flat with a fixed stride so the page can plot them
//! without copying into objects.

use ddr_core::propagator::{propagate, Boundary, PropagationConfig};
use ddr_core::scenario::run::spectrum as chi_spectrum;
use ddr_core::{
    sample_control_profile, susceptibility_map, AtomicParams, Complex64, ControlProfile, Cut, DriveConfig,
    GaussianPeak, TransverseGrid,
};
use wasm_bindgen::prelude::*;

const CONTROL_WAIST: f64 = 100e-4;
const PROBE_WAIST: f64 = 250e-4;
const PROBE_AMPLITUDE: f64 = 0.01;
const EXTENT: f64 = 0.06;

/// Medium and drive shared by every operation.
#[wasm_bindgen]
#[derive(Clone, Copy, Debug)]
pub struct Medium {
    pub pump_rate: f64,
    pub microwave: f64,
    pub control: f64,
    pub delta_probe: f64,
    pub delta_control: f64,
    pub delta_microwave: f64,
}

#[wasm_bindgen]
impl Medium {
    #[wasm_bindgen(constructor)]
    pub fn new(pump_rate: f64, microwave: f64, control: f64, delta_probe: f64) -> Medium {
        Medium {
            pump_rate,
            microwave,
            control,
            delta_probe,
            delta_control: 0.0,
            delta_microwave: 0.0,
        }
    }
}

impl Medium {
    fn atomic(&self) -> AtomicParams {
        AtomicParams {
            pump_rate: self.pump_rate,
            ..AtomicParams::default()
        }
    }

    fn drive(&self) -> DriveConfig {
        DriveConfig {
            control: Complex64::new(self.control, 0.0),
            microwave: Complex64::new(self.microwave, 0.0),
            delta_probe: self.delta_probe,
            delta_control: self.delta_control,
            delta_microwave: self.delta_microwave,
        }
    }

    fn checked(&self) -> ddr_core::Result<(AtomicParams, DriveConfig)> {
        let (a, d) = (self.atomic(), self.drive());
        a.validate()?;
        d.validate()?;
        Ok((a, d))
    }
}

fn doublet(separation: f64, amplitude: f64) -> ControlProfile {
    ControlProfile::row(amplitude, CONTROL_WAIST, &[-0.5 * separation, 0.5 * separation])
}

fn check_points(points: usize) -> ddr_core::Result<()> {
    if !(2..=1 << 16).contains(&points) {
        return Err(ddr_core::Error::invalid("points", "expected 2..=65536 samples"));
    }
    Ok(())
}

/// Probe-detuning sweep: triples (delta1, Re chi, Im chi).
pub fn spectrum_values(medium: &Medium, start: f64, stop: f64, points: usize) -> ddr_core::Result<Vec<f64>> {
    check_points(points)?;
    let (atomic, drive) = medium.checked()?;
    let step = (stop - start) / (points - 1) as f64;
    let detunings: Vec<f64> = (0..points).map(|i| start + step * i as f64).collect();
    let chi = chi_spectrum(&atomic, &drive, &detunings)?;
    Ok(detunings.iter().zip(&chi).flat_map(|(&d, c)| [d, c.re, c.im]).collect())
}

/// Susceptibility across a Gaussian control doublet with the given centre
/// separation: quadruples (x, |G|, Re chi, Im chi).
pub fn chi_cut_values(medium: &Medium, separation: f64, points: usize) -> ddr_core::Result<Vec<f64>> {
    check_points(points)?;
    let (atomic, drive) = medium.checked()?;
    let grid = TransverseGrid::new_1d(points, EXTENT);
    grid.validate()?;
    let control = sample_control_profile(&doublet(separation, medium.control), &grid);
    let chi = susceptibility_map(&control, &atomic, &drive)?;
    Ok((0..grid.nx)
        .flat_map(|i| [grid.x(i), control.values[i].norm(), chi.values[i].re, chi.values[i].im])
        .collect())
}

/// Result of a 1D propagation through the doublet.
#[wasm_bindgen]
pub struct Propagation {
    values: Vec<f64>,
    transmission: f64,
}

#[wasm_bindgen]
impl Propagation {
    /// Quadruples (x, input probe intensity, output probe intensity, output
    /// control intensity), intensities as |field|^2 in units of gamma^2.
    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn transmission(&self) -> f64 {
        self.transmission
    }
}

pub fn propagate_values(medium: &Medium, separation: f64, length: f64, points: usize) -> ddr_core::Result<Propagation> {
    check_points(points)?;
    let (atomic, drive) = medium.checked()?;
    let grid = TransverseGrid::new_1d(points, EXTENT);
    grid.validate()?;
    let control = sample_control_profile(&doublet(separation, 1.0), &grid);
    let probe = sample_control_profile(
        &ControlProfile::new(vec![GaussianPeak::new(PROBE_AMPLITUDE, 0.0, 0.0, PROBE_WAIST)]),
        &grid,
    );
    let config = PropagationConfig {
        length,
        boundary: Boundary::absorbing(),
        ..PropagationConfig::default()
    };
    config.validate()?;
    // the doublet carries its own amplitude; the medium's control value is ignored here
    let drive = drive.with_control(Complex64::new(1.0, 0.0));
    let record = propagate(&probe, &control, &atomic, &drive, &config, &[length])?;
    let last = record.last();
    let out_control = last.control.as_ref().expect("controlled propagation keeps the control");
    let (xs, p_in) = probe.intensity_cut(Cut::AlongX { y: 0.0 });
    let (_, p_out) = last.probe.intensity_cut(Cut::AlongX { y: 0.0 });
    let (_, c_out) = out_control.intensity_cut(Cut::AlongX { y: 0.0 });
    let values = (0..xs.len())
        .flat_map(|i| [xs[i], p_in[i], p_out[i], c_out[i]])
        .collect();
    Ok(Propagation {
        values,
        transmission: ddr_core::integrated_transmission(&probe, &last.probe)?,
    })
}

fn js<T>(r: ddr_core::Result<T>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn spectrum(medium: &Medium, start: f64, stop: f64, points: usize) -> Result<Vec<f64>, JsError> {
    js(spectrum_values(medium, start, stop, points))
}

#[wasm_bindgen(js_name = chiCut)]
pub fn chi_cut(medium: &Medium, separation: f64, points: usize) -> Result<Vec<f64>, JsError> {
    js(chi_cut_values(medium, separation, points))
}

#[wasm_bindgen(js_name = propagateCut)]
pub fn propagate_cut(medium: &Medium, separation: f64, length: f64, points: usize) -> Result<Propagation, JsError> {
    js(propagate_values(medium, separation, length, points))
}
