//! Split-step spectral propagation of the probe and control envelopes.
//!
//! Both envelopes obey the paraxial equation; the control only diffracts,
//! the probe additionally picks up `exp(2 pi i k1 chi dz)` from the medium.
//! Diffraction is applied exactly in the spatial-frequency domain.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::atomic::{AtomicParams, DriveConfig};
use crate::error::{Error, Result};
use crate::geometry::{susceptibility_map, ComplexField2D, TransverseGrid};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Half diffraction, full medium, half diffraction.
    #[default]
    Strang2,
    /// Triple-jump composition of three Strang steps.
    Yoshida4,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Boundary {
    #[default]
    Periodic,
    /// Quartic absorbing frame `strength * ((|x| - (extent - w)) / w)^4`
    /// (cm^-1) inside the outer `w = width_fraction * extent` of each axis.
    Absorbing {
        width_fraction: f64,
        strength: f64,
    },
}

impl Boundary {
    pub fn absorbing() -> Self {
        Boundary::Absorbing {
            width_fraction: 0.1,
            strength: 100.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PropagationConfig {
    /// Step length in cm.
    pub dz: f64,
    /// Cell length in cm.
    pub length: f64,
    pub scheme: Scheme,
    pub boundary: Boundary,
    /// Rebuild the susceptibility map every this many steps.
    pub chi_update_interval: usize,
    /// Largest probe amplitude (units of gamma) tolerated before aborting.
    pub amplitude_ceiling: f64,
    /// Largest relative power growth per step tolerated in a medium without gain.
    pub unstable_threshold: f64,
}

impl Default for PropagationConfig {
    fn default() -> Self {
        PropagationConfig {
            dz: 25e-4,
            length: 2.5,
            scheme: Scheme::Strang2,
            boundary: Boundary::Periodic,
            chi_update_interval: 1,
            amplitude_ceiling: 1e6,
            unstable_threshold: 1e-8,
        }
    }
}

impl PropagationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dz > 0.0 && self.dz.is_finite()) {
            return Err(Error::invalid("dz", "must be positive"));
        }
        if !(self.length >= self.dz && self.length.is_finite()) {
            return Err(Error::invalid(
                "length",
                format!("{} is shorter than dz = {}", self.length, self.dz),
            ));
        }
        if self.chi_update_interval == 0 {
            return Err(Error::invalid("chi_update_interval", "must be at least 1"));
        }
        if !(self.amplitude_ceiling > 0.0) {
            return Err(Error::invalid("amplitude_ceiling", "must be positive"));
        }
        if !(self.unstable_threshold > 0.0) {
            return Err(Error::invalid("unstable_threshold", "must be positive"));
        }
        if let Boundary::Absorbing {
            width_fraction,
            strength,
        } = self.boundary
        {
            if !(width_fraction > 0.0 && width_fraction < 0.5) {
                return Err(Error::invalid("width_fraction", "must lie in (0, 0.5)"));
            }
            if !(strength >= 0.0 && strength.is_finite()) {
                return Err(Error::invalid("strength", "must be non-negative"));
            }
        }
        Ok(())
    }
}

/// Angular frequencies in FFT order for `n` samples at spacing `d`.
pub fn fft_frequencies(n: usize, d: f64) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let f = if i < n / 2 { i as f64 } else { i as f64 - n as f64 };
            2.0 * PI * f / (n as f64 * d)
        })
        .collect()
}

type FftPair = (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>);

/// Planned transforms for one grid. In the x-only mode only rows are transformed.
#[derive(Clone)]
pub struct Spectral {
    grid: TransverseGrid,
    fwd_x: Arc<dyn Fft<f64>>,
    inv_x: Arc<dyn Fft<f64>>,
    fwd_y: Option<FftPair>,
    kx: Vec<f64>,
    ky: Vec<f64>,
}

impl std::fmt::Debug for Spectral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Spectral").field("grid", &self.grid).finish()
    }
}

impl Spectral {
    pub fn new(grid: TransverseGrid) -> Result<Self> {
        grid.validate()?;
        let mut planner = FftPlanner::new();
        let fwd_y = (!grid.is_1d()).then(|| (planner.plan_fft_forward(grid.ny), planner.plan_fft_inverse(grid.ny)));
        Ok(Spectral {
            grid,
            fwd_x: planner.plan_fft_forward(grid.nx),
            inv_x: planner.plan_fft_inverse(grid.nx),
            fwd_y,
            kx: fft_frequencies(grid.nx, grid.dx()),
            ky: if grid.is_1d() {
                vec![0.0]
            } else {
                fft_frequencies(grid.ny, grid.dy())
            },
        })
    }

    pub fn grid(&self) -> TransverseGrid {
        self.grid
    }

    fn rows(fft: &Arc<dyn Fft<f64>>, data: &mut [Complex64], n: usize) {
        #[cfg(feature = "parallel")]
        data.par_chunks_mut(n * 16).for_each(|c| fft.process(c));
        #[cfg(not(feature = "parallel"))]
        {
            let _ = n;
            fft.process(data);
        }
    }

    fn transpose(src: &[Complex64], dst: &mut [Complex64], rows: usize, cols: usize) {
        for r in 0..rows {
            for c in 0..cols {
                dst[c * rows + r] = src[r * cols + c];
            }
        }
    }

    fn transform(&self, data: &mut [Complex64], forward: bool) {
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        let fx = if forward { &self.fwd_x } else { &self.inv_x };
        Self::rows(fx, data, nx);
        if let Some((fwd, inv)) = &self.fwd_y {
            let fy = if forward { fwd } else { inv };
            let mut t = vec![Complex64::new(0.0, 0.0); data.len()];
            Self::transpose(data, &mut t, ny, nx);
            Self::rows(fy, &mut t, ny);
            Self::transpose(&t, data, nx, ny);
        }
    }

    /// Free-space propagation over `dz` for wavenumber `k`: each spectral
    /// amplitude is multiplied by `exp(-i (kx^2 + ky^2) dz / (2k))`.
    pub fn diffract(&self, data: &mut [Complex64], k: f64, dz: f64) {
        if dz == 0.0 {
            return;
        }
        let nx = self.grid.nx;
        let norm = 1.0 / data.len() as f64;
        let phase = |q: &f64| Complex64::from_polar(1.0, -q * q * dz / (2.0 * k));
        let px: Vec<Complex64> = self.kx.iter().map(phase).collect();
        let py: Vec<Complex64> = self.ky.iter().map(|q| phase(q) * norm).collect();
        self.transform(data, true);
        for (iy, row) in data.chunks_mut(nx).enumerate() {
            for (v, p) in row.iter_mut().zip(&px) {
                *v *= p * py[iy];
            }
        }
        self.transform(data, false);
    }
}

/// Absorption coefficient (cm^-1) of the boundary frame at every sample.
pub fn boundary_profile(grid: &TransverseGrid, boundary: Boundary) -> Option<Vec<f64>> {
    let Boundary::Absorbing {
        width_fraction,
        strength,
    } = boundary
    else {
        return None;
    };
    let ramp = |u: f64, extent: f64| {
        let w = width_fraction * extent;
        let d = u.abs() - (extent - w);
        if d > 0.0 {
            strength * (d / w).powi(4)
        } else {
            0.0
        }
    };
    let mut sigma = Vec::with_capacity(grid.len());
    for iy in 0..grid.ny {
        let sy = if grid.is_1d() {
            0.0
        } else {
            ramp(grid.y(iy), grid.extent_y)
        };
        for ix in 0..grid.nx {
            sigma.push(ramp(grid.x(ix), grid.extent_x) + sy);
        }
    }
    Some(sigma)
}

/// Free-space step of a whole field; `z` advances by `dz`.
pub fn diffraction_step(field: &ComplexField2D, k: f64, dz: f64) -> Result<ComplexField2D> {
    if !(k > 0.0) {
        return Err(Error::invalid("k", "wavenumber must be positive"));
    }
    let spectral = Spectral::new(field.grid)?;
    let mut values = field.values.clone();
    spectral.diffract(&mut values, k, dz);
    Ok(ComplexField2D {
        grid: field.grid,
        values,
        z: field.z + dz,
    })
}

/// Pointwise medium step `exp(2 pi i k1 chi dz)`; `z` advances by `dz`.
pub fn medium_step(
    probe: &ComplexField2D,
    chi: &ComplexField2D,
    k1: f64,
    dz: f64,
    ceiling: f64,
) -> Result<ComplexField2D> {
    probe.same_grid(chi)?;
    let mut values = probe.values.clone();
    apply_medium(&mut values, &chi.values, None, k1, dz);
    let out = ComplexField2D {
        grid: probe.grid,
        values,
        z: probe.z + dz,
    };
    check_ceiling(&out.values, ceiling, out.z)?;
    Ok(out)
}

fn apply_medium(values: &mut [Complex64], chi: &[Complex64], sigma: Option<&[f64]>, k1: f64, dz: f64) {
    let c = Complex64::new(0.0, 2.0 * PI * k1 * dz);
    match sigma {
        Some(s) => {
            for ((v, x), s) in values.iter_mut().zip(chi).zip(s) {
                *v *= (c * x - s * dz).exp();
            }
        }
        None => {
            for (v, x) in values.iter_mut().zip(chi) {
                *v *= (c * x).exp();
            }
        }
    }
}

fn apply_mask(values: &mut [Complex64], sigma: &[f64], dz: f64) {
    for (v, s) in values.iter_mut().zip(sigma) {
        *v *= (-s * dz).exp();
    }
}

fn check_ceiling(values: &[Complex64], ceiling: f64, z: f64) -> Result<()> {
    let amplitude = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if amplitude > ceiling || !amplitude.is_finite() {
        return Err(Error::AmplificationOverflow { amplitude, ceiling, z });
    }
    Ok(())
}

/// Source of the susceptibility seen by the probe.
pub trait Medium {
    /// Susceptibility on the probe grid at distance `z`, with `z` inside the
    /// step that started at the last call to [`Medium::begin_step`].
    fn chi_at(&mut self, z: f64) -> Result<Arc<Vec<Complex64>>>;

    /// Called before each step of length `h` starting at `z`.
    fn begin_step(&mut self, z: f64, h: f64) -> Result<()>;
}

/// Susceptibility fixed along z.
#[derive(Clone, Debug)]
pub struct StaticMedium(Arc<Vec<Complex64>>);

impl StaticMedium {
    pub fn new(chi: Vec<Complex64>) -> Self {
        StaticMedium(Arc::new(chi))
    }

    pub fn uniform(grid: &TransverseGrid, chi: Complex64) -> Self {
        StaticMedium::new(vec![chi; grid.len()])
    }
}

impl Medium for StaticMedium {
    fn chi_at(&mut self, _z: f64) -> Result<Arc<Vec<Complex64>>> {
        Ok(self.0.clone())
    }

    fn begin_step(&mut self, _z: f64, _h: f64) -> Result<()> {
        Ok(())
    }
}

/// Control field that diffracts along z, with the susceptibility rebuilt
/// from it. Within a step the control is diffracted exactly from the step
/// start to wherever the probe scheme samples the medium.
pub struct ControlledMedium {
    params: AtomicParams,
    drive: DriveConfig,
    spectral: Spectral,
    k2: f64,
    sigma: Option<Vec<f64>>,
    control: ComplexField2D,
    step_start: f64,
    pending: f64,
    interval: usize,
    steps: usize,
    held: Option<Arc<Vec<Complex64>>>,
    fresh: bool,
}

impl ControlledMedium {
    pub fn new(
        control: ComplexField2D,
        params: AtomicParams,
        drive: DriveConfig,
        config: &PropagationConfig,
    ) -> Result<Self> {
        Ok(ControlledMedium {
            spectral: Spectral::new(control.grid)?,
            k2: params.k_control(),
            sigma: boundary_profile(&control.grid, config.boundary),
            step_start: control.z,
            params,
            drive,
            control,
            pending: 0.0,
            interval: config.chi_update_interval,
            steps: 0,
            held: None,
            fresh: false,
        })
    }

    pub fn control(&self) -> &ComplexField2D {
        &self.control
    }

    /// Moves the control to the end of the pending step.
    fn finish_step(&mut self) {
        if self.pending > 0.0 {
            let h = self.pending;
            self.spectral.diffract(&mut self.control.values, self.k2, h);
            if let Some(s) = &self.sigma {
                apply_mask(&mut self.control.values, s, h);
            }
            self.step_start += h;
            self.control.z = self.step_start;
            self.pending = 0.0;
        }
    }

    /// Advances the control alone by `h`.
    pub fn advance(&mut self, h: f64) {
        self.finish_step();
        self.pending = h;
        self.finish_step();
    }
}

impl Medium for ControlledMedium {
    fn begin_step(&mut self, z: f64, h: f64) -> Result<()> {
        self.finish_step();
        debug_assert!((z - self.step_start).abs() <= 1e-9 * z.abs().max(1.0));
        self.pending = h;
        self.fresh = self.steps.is_multiple_of(self.interval) || self.held.is_none();
        self.steps += 1;
        Ok(())
    }

    fn chi_at(&mut self, z: f64) -> Result<Arc<Vec<Complex64>>> {
        if !self.fresh {
            if let Some(chi) = &self.held {
                return Ok(chi.clone());
            }
        }
        let mut local = self.control.clone();
        self.spectral.diffract(&mut local.values, self.k2, z - self.step_start);
        local.z = z;
        let chi = Arc::new(susceptibility_map(&local, &self.params, &self.drive)?.values);
        if self.interval > 1 {
            // held for the remainder of the update interval
            self.fresh = false;
        }
        self.held = Some(chi.clone());
        Ok(chi)
    }
}

const YOSHIDA_W1: f64 = 1.351_207_191_959_657_8; // 1 / (2 - 2^(1/3))
const YOSHIDA_W0: f64 = -1.702_414_383_919_315_3; // -2^(1/3) / (2 - 2^(1/3))

/// Probe stepper for one grid, wavenumber and boundary.
pub struct SplitStepper {
    spectral: Spectral,
    k: f64,
    scheme: Scheme,
    sigma: Option<Vec<f64>>,
}

impl SplitStepper {
    pub fn new(grid: TransverseGrid, k: f64, scheme: Scheme, boundary: Boundary) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::invalid("k", "wavenumber must be positive"));
        }
        Ok(SplitStepper {
            spectral: Spectral::new(grid)?,
            k,
            scheme,
            sigma: boundary_profile(&grid, boundary),
        })
    }

    fn strang<M: Medium + ?Sized>(&self, values: &mut [Complex64], medium: &mut M, z: f64, h: f64) -> Result<bool> {
        self.spectral.diffract(values, self.k, 0.5 * h);
        let chi = medium.chi_at(z + 0.5 * h)?;
        apply_medium(values, &chi, self.sigma.as_deref(), self.k, h);
        self.spectral.diffract(values, self.k, 0.5 * h);
        Ok(chi.iter().any(|c| c.im < 0.0))
    }

    /// Advances `values` from `z` to `z + h`; returns whether the medium had gain.
    pub fn step<M: Medium + ?Sized>(&self, values: &mut [Complex64], medium: &mut M, z: f64, h: f64) -> Result<bool> {
        medium.begin_step(z, h)?;
        match self.scheme {
            Scheme::Strang2 => self.strang(values, medium, z, h),
            Scheme::Yoshida4 => {
                let (a, b) = (YOSHIDA_W1 * h, YOSHIDA_W0 * h);
                let g1 = self.strang(values, medium, z, a)?;
                let g2 = self.strang(values, medium, z + a, b)?;
                let g3 = self.strang(values, medium, z + a + b, a)?;
                Ok(g1 || g2 || g3)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Snapshot {
    pub z: f64,
    pub probe: ComplexField2D,
    pub control: Option<ComplexField2D>,
}

#[derive(Clone, Debug, Default)]
pub struct PropagationRecord {
    /// Ordered by strictly increasing z, starting at z = 0.
    pub snapshots: Vec<Snapshot>,
    /// Probe power after every step, as `(z, power)`; the first entry is the input.
    pub power: Vec<(f64, f64)>,
    pub steps: usize,
}

impl PropagationRecord {
    pub fn last(&self) -> &Snapshot {
        self.snapshots.last().expect("record holds the input snapshot")
    }

    pub fn at(&self, z: f64) -> Option<&Snapshot> {
        self.snapshots.iter().find(|s| (s.z - z).abs() < 1e-9)
    }
}

/// Sorted snapshot positions inside `[0, length]`, always including both ends.
fn snapshot_plan(length: f64, requested: &[f64]) -> Result<Vec<f64>> {
    let mut zs = vec![0.0, length];
    for &z in requested {
        if !(z >= 0.0 && z <= length * (1.0 + 1e-12)) {
            return Err(Error::invalid("snapshots", format!("z = {z} outside [0, {length}]")));
        }
        zs.push(z.min(length));
    }
    zs.sort_by(f64::total_cmp);
    zs.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    Ok(zs)
}

/// Step boundaries: regular `dz` spacing, shortened to land on every snapshot.
fn step_plan(dz: f64, stops: &[f64]) -> Vec<(f64, f64)> {
    let mut steps = Vec::new();
    let mut z = 0.0;
    for &stop in &stops[1..] {
        while stop - z > 1e-9 {
            let n = ((z + 1e-9) / dz).floor() + 1.0;
            let next = (n * dz).min(stop);
            let next = if stop - next < 1e-9 { stop } else { next };
            steps.push((z, next - z));
            z = next;
        }
        z = stop;
    }
    steps
}

/// Propagates a probe through an arbitrary medium.
pub fn propagate_in_medium(
    probe0: &ComplexField2D,
    k: f64,
    medium: &mut dyn Medium,
    config: &PropagationConfig,
    snapshots: &[f64],
) -> Result<PropagationRecord> {
    propagate_inner(probe0, k, medium, config, snapshots, |_| None)
}

fn propagate_inner<M: Medium + ?Sized>(
    probe0: &ComplexField2D,
    k: f64,
    medium: &mut M,
    config: &PropagationConfig,
    snapshots: &[f64],
    control_of: impl Fn(&M) -> Option<ComplexField2D>,
) -> Result<PropagationRecord> {
    config.validate()?;
    let stops = snapshot_plan(config.length, snapshots)?;
    let stepper = SplitStepper::new(probe0.grid, k, config.scheme, config.boundary)?;
    let area = probe0.grid.dx() * probe0.grid.dy();
    let power = |v: &[Complex64]| v.iter().map(|c| c.norm_sqr()).sum::<f64>() * area;

    let mut values = probe0.values.clone();
    let mut record = PropagationRecord::default();
    let field_at = |values: &[Complex64], z: f64| ComplexField2D {
        grid: probe0.grid,
        values: values.to_vec(),
        z,
    };
    record.snapshots.push(Snapshot {
        z: 0.0,
        probe: field_at(&values, 0.0),
        control: control_of(medium),
    });
    let mut p = power(&values);
    record.power.push((0.0, p));
    let mut next_stop = 1;

    for (z, h) in step_plan(config.dz, &stops) {
        let gain = stepper.step(&mut values, medium, z, h)?;
        let z1 = z + h;
        check_ceiling(&values, config.amplitude_ceiling, z1)?;
        let p1 = power(&values);
        if !gain && p > 0.0 && (p1 - p) / p > config.unstable_threshold {
            return Err(Error::StepUnstable {
                z: z1,
                change: (p1 - p) / p,
            });
        }
        p = p1;
        record.power.push((z1, p));
        record.steps += 1;
        if next_stop < stops.len() && (z1 - stops[next_stop]).abs() < 1e-9 {
            let z_snap = stops[next_stop];
            let control = control_of(medium).map(|mut c| {
                c.z = z_snap;
                c
            });
            record.snapshots.push(Snapshot {
                z: z_snap,
                probe: field_at(&values, z_snap),
                control,
            });
            next_stop += 1;
        }
    }
    Ok(record)
}

impl ControlledMedium {
    fn settled_control(&self) -> ComplexField2D {
        let mut c = self.control.clone();
        if self.pending > 0.0 {
            self.spectral.diffract(&mut c.values, self.k2, self.pending);
            if let Some(s) = &self.sigma {
                apply_mask(&mut c.values, s, self.pending);
            }
            c.z = self.step_start + self.pending;
        }
        c
    }
}

/// Co-propagates probe and control; the susceptibility follows the
/// diffracting control.
pub fn propagate(
    probe0: &ComplexField2D,
    control0: &ComplexField2D,
    params: &AtomicParams,
    drive: &DriveConfig,
    config: &PropagationConfig,
    snapshots: &[f64],
) -> Result<PropagationRecord> {
    params.validate()?;
    drive.validate()?;
    probe0.same_grid(control0)?;
    let mut control = control0.clone();
    control.z = 0.0;
    let mut medium = ControlledMedium::new(control, *params, *drive, config)?;
    propagate_inner(probe0, params.k_probe(), &mut medium, config, snapshots, |m| {
        Some(m.settled_control())
    })
}

/// Control evolution alone, sampled at the same positions as [`propagate`].
pub fn propagate_control_only(
    control0: &ComplexField2D,
    params: &AtomicParams,
    config: &PropagationConfig,
    snapshots: &[f64],
) -> Result<Vec<ComplexField2D>> {
    config.validate()?;
    let stops = snapshot_plan(config.length, snapshots)?;
    let mut control = control0.clone();
    control.z = 0.0;
    let mut medium = ControlledMedium::new(control, *params, DriveConfig::default(), config)?;
    let mut out = vec![medium.control().clone()];
    let mut next_stop = 1;
    for (z, h) in step_plan(config.dz, &stops) {
        medium.advance(h);
        let z1 = z + h;
        if next_stop < stops.len() && (z1 - stops[next_stop]).abs() < 1e-9 {
            let mut c = medium.control().clone();
            c.z = stops[next_stop];
            out.push(c);
            next_stop += 1;
        }
    }
    Ok(out)
}

/// Amplitude radius of a free-space Gaussian `exp(-r^2/w0^2)` after `z`:
/// `w0 sqrt(1 + (z/zR)^2)` with `zR = k w0^2 / 2`.
pub fn gaussian_waist(w0: f64, k: f64, z: f64) -> f64 {
    let zr = 0.5 * k * w0 * w0;
    w0 * (1.0 + (z / zr).powi(2)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{sample_control_profile, ControlProfile, GaussianPeak};

    fn gaussian(grid: TransverseGrid, w: f64) -> ComplexField2D {
        sample_control_profile(&ControlProfile::new(vec![GaussianPeak::new(1.0, 0.0, 0.0, w)]), &grid)
    }

    /// RMS width `sqrt(<x^2>)` of the intensity along x.
    fn rms_x(f: &ComplexField2D) -> f64 {
        let (xs, i) = f.intensity_cut(crate::geometry::Cut::default());
        let s: f64 = i.iter().sum();
        (xs.iter().zip(&i).map(|(x, v)| x * x * v).sum::<f64>() / s).sqrt()
    }

    #[test]
    fn step_plan_lands_on_snapshots() {
        let steps = step_plan(0.3, &[0.0, 0.5, 1.0]);
        let ends: Vec<f64> = steps.iter().map(|(z, h)| z + h).collect();
        assert_eq!(ends.len(), 5);
        assert!((ends[1] - 0.5).abs() < 1e-12 && (ends[4] - 1.0).abs() < 1e-12);
        assert!((ends[2] - 0.6).abs() < 1e-12);
    }

    #[test]
    fn zero_step_is_identity() {
        let f = gaussian(TransverseGrid::new_1d(256, 0.06), 0.01);
        let g = diffraction_step(&f, 8e4, 0.0).unwrap();
        assert_eq!(f.values, g.values);
    }

    #[test]
    fn plane_wave_is_unchanged() {
        let grid = TransverseGrid::new_2d(32, 32, 0.06, 0.06);
        let f = ComplexField2D::from_fn(grid, |_, _| Complex64::new(0.3, -0.2));
        let g = diffraction_step(&f, 8e4, 7.0).unwrap();
        for (a, b) in f.values.iter().zip(&g.values) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn rayleigh_length_in_one_and_two_dimensions() {
        let params = AtomicParams::default();
        let k = params.k_probe();
        let w0 = 100e-4;
        for grid in [
            TransverseGrid::new_1d(1024, 0.12),
            TransverseGrid::new_2d(256, 256, 0.12, 0.12),
        ] {
            let f = gaussian(grid, w0);
            let g = diffraction_step(&f, k, 4.0).unwrap();
            let ratio = rms_x(&g) / rms_x(&f);
            let expect = gaussian_waist(w0, k, 4.0) / w0;
            assert!((expect - 2f64.sqrt()).abs() < 0.01, "{expect}");
            assert!((ratio - expect).abs() < 1e-3 * expect, "{ratio} vs {expect}");
            assert!((g.power() - f.power()).abs() < 1e-12 * f.power());
        }
    }

    #[test]
    fn uniform_loss_matches_exponential() {
        let grid = TransverseGrid::new_1d(128, 0.06);
        let f = gaussian(grid, 0.01);
        let chi = Complex64::new(1e-7, 2e-6);
        let k = 8e4;
        let config = PropagationConfig {
            dz: 0.01,
            length: 0.5,
            ..PropagationConfig::default()
        };
        let mut medium = StaticMedium::uniform(&grid, chi);
        let rec = propagate_in_medium(&f, k, &mut medium, &config, &[]).unwrap();
        let t = rec.last().probe.power() / f.power();
        let expect = (-4.0 * PI * k * chi.im * 0.5).exp();
        assert!((t - expect).abs() < 1e-10 * expect, "{t} vs {expect}");
    }

    #[test]
    fn unitary_without_medium() {
        let grid = TransverseGrid::new_1d(256, 0.06);
        let f = gaussian(grid, 0.004);
        let config = PropagationConfig {
            dz: 1e-3,
            length: 1.0,
            ..PropagationConfig::default()
        };
        let mut medium = StaticMedium::uniform(&grid, Complex64::new(0.0, 0.0));
        let rec = propagate_in_medium(&f, 8e4, &mut medium, &config, &[]).unwrap();
        assert_eq!(rec.steps, 1000);
        let p = rec.last().probe.power();
        assert!((p - f.power()).abs() < 1e-10 * f.power());
    }

    #[test]
    fn gain_without_ceiling_overflows() {
        let grid = TransverseGrid::new_1d(64, 0.06);
        let f = gaussian(grid, 0.01);
        let chi = ComplexField2D::from_fn(grid, |_, _| Complex64::new(0.0, -1e-3));
        let err = medium_step(&f, &chi, 8e4, 1.0, 10.0).unwrap_err();
        assert!(matches!(err, Error::AmplificationOverflow { .. }));
    }

    #[test]
    fn control_does_not_depend_on_probe() {
        let grid = TransverseGrid::new_1d(256, 0.06);
        let params = AtomicParams {
            pump_rate: 7.5e-4,
            ..AtomicParams::default()
        };
        let drive = DriveConfig {
            microwave: Complex64::new(0.018, 0.0),
            delta_probe: 1e-3,
            ..DriveConfig::default()
        };
        let control = sample_control_profile(&ControlProfile::row(1.0, 0.01, &[-0.01, 0.01]), &grid);
        let probe = gaussian(grid, 0.025).scaled(Complex64::new(0.01, 0.0));
        let config = PropagationConfig {
            length: 0.2,
            boundary: Boundary::absorbing(),
            ..PropagationConfig::default()
        };
        let rec = propagate(&probe, &control, &params, &drive, &config, &[0.1]).unwrap();
        let alone = propagate_control_only(&control, &params, &config, &[0.1]).unwrap();
        assert_eq!(rec.snapshots.len(), alone.len());
        for (s, c) in rec.snapshots.iter().zip(&alone) {
            assert_eq!(s.control.as_ref().unwrap().values, c.values);
        }
    }
}
