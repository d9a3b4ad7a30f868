//! Transverse grids, sampled fields, Gaussian control images and
//! pointwise susceptibility maps.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis;
use crate::atomic::{self, AtomicParams, DriveConfig};
use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Uniform grid centred on the origin. `ny == 1` selects the x-only mode
/// used for y = 0 cut simulations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TransverseGrid {
    pub nx: usize,
    pub ny: usize,
    /// Half-width along x in cm.
    pub extent_x: f64,
    /// Half-width along y in cm; ignored when `ny == 1`.
    pub extent_y: f64,
}

impl Default for TransverseGrid {
    fn default() -> Self {
        TransverseGrid::new_1d(1024, 0.06)
    }
}

impl TransverseGrid {
    pub fn new_1d(nx: usize, extent_x: f64) -> Self {
        TransverseGrid {
            nx,
            ny: 1,
            extent_x,
            extent_y: extent_x,
        }
    }

    pub fn new_2d(nx: usize, ny: usize, extent_x: f64, extent_y: f64) -> Self {
        TransverseGrid {
            nx,
            ny,
            extent_x,
            extent_y,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 4 || !self.nx.is_power_of_two() {
            return Err(Error::invalid("nx", format!("{} is not a power of two >= 4", self.nx)));
        }
        if self.ny != 1 && (self.ny < 4 || !self.ny.is_power_of_two()) {
            return Err(Error::invalid(
                "ny",
                format!("{} is neither 1 nor a power of two >= 4", self.ny),
            ));
        }
        if !(self.extent_x > 0.0 && self.extent_x.is_finite()) {
            return Err(Error::invalid("extent_x", "must be positive"));
        }
        if self.ny > 1 && !(self.extent_y > 0.0 && self.extent_y.is_finite()) {
            return Err(Error::invalid("extent_y", "must be positive"));
        }
        Ok(())
    }

    pub fn is_1d(&self) -> bool {
        self.ny == 1
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.extent_x / self.nx as f64
    }

    /// Spacing along y; unity in the x-only mode so that sums over the grid
    /// are line integrals.
    pub fn dy(&self) -> f64 {
        if self.is_1d() {
            1.0
        } else {
            2.0 * self.extent_y / self.ny as f64
        }
    }

    pub fn x(&self, ix: usize) -> f64 {
        (ix as f64 - (self.nx / 2) as f64) * self.dx()
    }

    pub fn y(&self, iy: usize) -> f64 {
        if self.is_1d() {
            0.0
        } else {
            (iy as f64 - (self.ny / 2) as f64) * self.dy()
        }
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.nx).map(|i| self.x(i)).collect()
    }

    pub fn ys(&self) -> Vec<f64> {
        (0..self.ny).map(|j| self.y(j)).collect()
    }

    /// Index of the sample nearest to `x` (clamped).
    pub fn nearest_ix(&self, x: f64) -> usize {
        let i = (x / self.dx() + (self.nx / 2) as f64).round();
        i.clamp(0.0, (self.nx - 1) as f64) as usize
    }

    pub fn nearest_iy(&self, y: f64) -> usize {
        if self.is_1d() {
            return 0;
        }
        let j = (y / self.dy() + (self.ny / 2) as f64).round();
        j.clamp(0.0, (self.ny - 1) as f64) as usize
    }

    pub fn position(&self, flat: usize) -> (f64, f64) {
        (self.x(flat % self.nx), self.y(flat / self.nx))
    }
}

/// One Gaussian term `amplitude * exp(-((x-cx)^2 + (y-cy)^2) / waist^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianPeak {
    /// Peak amplitude (Rabi frequency in units of gamma).
    pub amplitude: f64,
    #[serde(default)]
    pub center_x: f64,
    #[serde(default)]
    pub center_y: f64,
    /// 1/e amplitude radius in cm.
    pub waist: f64,
}

impl GaussianPeak {
    pub fn new(amplitude: f64, center_x: f64, center_y: f64, waist: f64) -> Self {
        GaussianPeak {
            amplitude,
            center_x,
            center_y,
            waist,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.waist > 0.0 && self.waist.is_finite()) {
            return Err(Error::invalid("waist", format!("{} must be positive", self.waist)));
        }
        if !(self.amplitude.is_finite() && self.center_x.is_finite() && self.center_y.is_finite()) {
            return Err(Error::invalid("amplitude", "peak parameters must be finite"));
        }
        Ok(())
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        let dx = x - self.center_x;
        let dy = y - self.center_y;
        self.amplitude * (-(dx * dx + dy * dy) / (self.waist * self.waist)).exp()
    }

    /// Intensity full width at half maximum, `sqrt(2 ln 2) * waist`.
    pub fn intensity_fwhm(&self) -> f64 {
        (2.0 * std::f64::consts::LN_2).sqrt() * self.waist
    }
}

/// Superposition of Gaussian peaks forming the control image.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlProfile {
    pub peaks: Vec<GaussianPeak>,
}

impl ControlProfile {
    pub fn new(peaks: Vec<GaussianPeak>) -> Self {
        ControlProfile { peaks }
    }

    /// Equal-amplitude peaks on the x axis.
    pub fn row(amplitude: f64, waist: f64, centers: &[f64]) -> Self {
        ControlProfile {
            peaks: centers
                .iter()
                .map(|&c| GaussianPeak::new(amplitude, c, 0.0, waist))
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.peaks.is_empty() {
            return Err(Error::invalid("peaks", "control profile needs at least one peak"));
        }
        self.peaks.iter().try_for_each(GaussianPeak::validate)
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        self.peaks.iter().map(|p| p.value(x, y)).sum()
    }

    /// True when every peak centre lies inside the grid.
    pub fn fits(&self, grid: &TransverseGrid) -> bool {
        self.peaks
            .iter()
            .all(|p| p.center_x.abs() < grid.extent_x && (grid.is_1d() || p.center_y.abs() < grid.extent_y))
    }
}

/// Sampled complex envelope on a transverse grid at distance `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexField2D {
    pub grid: TransverseGrid,
    /// Row-major samples, index `iy * nx + ix`.
    pub values: Vec<Complex64>,
    pub z: f64,
}

impl ComplexField2D {
    pub fn new(grid: TransverseGrid, values: Vec<Complex64>, z: f64) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} samples for a {}x{} grid",
                values.len(),
                grid.nx,
                grid.ny
            )));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::invalid("values", "field samples must be finite"));
        }
        Ok(ComplexField2D { grid, values, z })
    }

    pub fn zeros(grid: TransverseGrid) -> Self {
        ComplexField2D {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
            z: 0.0,
        }
    }

    pub fn from_fn(grid: TransverseGrid, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for iy in 0..grid.ny {
            let y = grid.y(iy);
            for ix in 0..grid.nx {
                values.push(f(grid.x(ix), y));
            }
        }
        ComplexField2D { grid, values, z: 0.0 }
    }

    pub fn get(&self, ix: usize, iy: usize) -> Complex64 {
        self.values[iy * self.grid.nx + ix]
    }

    /// `sum |v|^2 dx dy`.
    pub fn power(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dx() * self.grid.dy()
    }

    pub fn max_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn intensity(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        ComplexField2D {
            grid: self.grid,
            values: self.values.iter().map(|v| v * factor).collect(),
            z: self.z,
        }
    }

    pub fn same_grid(&self, other: &ComplexField2D) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(format!("{:?} vs {:?}", self.grid, other.grid)));
        }
        Ok(())
    }

    /// Coordinates and intensities along a cut.
    pub fn intensity_cut(&self, cut: Cut) -> (Vec<f64>, Vec<f64>) {
        let g = &self.grid;
        match cut {
            Cut::AlongX { y } => {
                let iy = g.nearest_iy(y);
                let row = &self.values[iy * g.nx..(iy + 1) * g.nx];
                (g.xs(), row.iter().map(|v| v.norm_sqr()).collect())
            }
            Cut::AlongY { x } => {
                let ix = g.nearest_ix(x);
                (g.ys(), (0..g.ny).map(|iy| self.get(ix, iy).norm_sqr()).collect())
            }
        }
    }

    /// Complex samples along a cut.
    pub fn values_cut(&self, cut: Cut) -> (Vec<f64>, Vec<Complex64>) {
        let g = &self.grid;
        match cut {
            Cut::AlongX { y } => {
                let iy = g.nearest_iy(y);
                (g.xs(), self.values[iy * g.nx..(iy + 1) * g.nx].to_vec())
            }
            Cut::AlongY { x } => {
                let ix = g.nearest_ix(x);
                (g.ys(), (0..g.ny).map(|iy| self.get(ix, iy)).collect())
            }
        }
    }
}

/// A 1D line through a field, taken at the nearest grid row or column.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "axis", rename_all = "snake_case", deny_unknown_fields)]
pub enum Cut {
    AlongX { y: f64 },
    AlongY { x: f64 },
}

impl Default for Cut {
    fn default() -> Self {
        Cut::AlongX { y: 0.0 }
    }
}

/// Resolvability bands on the peak-normalised central minimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    Resolved,
    RayleighLimited,
    SparrowLimited,
    Unresolved,
}

impl Resolution {
    pub fn from_ratio(ratio: f64) -> Self {
        if ratio < 0.4 {
            Resolution::Resolved
        } else if ratio < 0.6 {
            Resolution::RayleighLimited
        } else if ratio < 0.8 {
            Resolution::SparrowLimited
        } else {
            Resolution::Unresolved
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolutionClass {
    pub kind: Resolution,
    /// Central minimum over the weaker of the two dominant peaks.
    pub central_min_ratio: f64,
}

pub fn sample_control_profile(profile: &ControlProfile, grid: &TransverseGrid) -> ComplexField2D {
    ComplexField2D::from_fn(*grid, |x, y| Complex64::new(profile.value(x, y), 0.0))
}

/// Classifies the two dominant intensity maxima along `cut`.
pub fn classify_resolution(field: &ComplexField2D, cut: Cut) -> Result<ResolutionClass> {
    let (_, intensity) = field.intensity_cut(cut);
    let peaks = analysis::find_peaks(&intensity, analysis::DEFAULT_NOISE_FLOOR);
    if peaks.len() < 2 {
        return Err(Error::NoStructure(format!(
            "{} intensity maximum along the cut; a doublet needs two",
            peaks.len()
        )));
    }
    let ratio = analysis::dominant_pair_ratio(&intensity, &peaks).expect("two peaks present");
    Ok(ResolutionClass {
        kind: Resolution::from_ratio(ratio),
        central_min_ratio: ratio,
    })
}

/// Pointwise susceptibility with `G` taken from the control field at each sample.
pub fn susceptibility_map(
    control: &ComplexField2D,
    params: &AtomicParams,
    drive: &DriveConfig,
) -> Result<ComplexField2D> {
    let grid = control.grid;
    let eval = |(flat, g): (usize, &Complex64)| -> Result<Complex64> {
        atomic::chi41_with_fallback(params, &drive.with_control(*g))
            .map(|s| s.chi)
            .map_err(|e| {
                let (x, y) = grid.position(flat);
                Error::Sample {
                    x,
                    y,
                    source: Box::new(e),
                }
            })
    };
    #[cfg(feature = "parallel")]
    let values: Result<Vec<Complex64>> = control.values.par_iter().enumerate().map(eval).collect();
    #[cfg(not(feature = "parallel"))]
    let values: Result<Vec<Complex64>> = control.values.iter().enumerate().map(eval).collect();
    Ok(ComplexField2D {
        grid,
        values: values?,
        z: control.z,
    })
}
