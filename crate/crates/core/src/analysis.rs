//! Beam observables: peak inventories, widths, finesse, central minima and
//! integrated transmission.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ComplexField2D, Cut};

/// Peaks below this fraction of the maximum intensity on a cut are ignored.
pub const DEFAULT_NOISE_FLOOR: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    /// Position along the cut in cm.
    pub position: f64,
    pub height: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BeamMetrics {
    pub peaks: Vec<Peak>,
    /// Intensity FWHM of each peak in cm, same order as `peaks`.
    pub fwhm: Vec<f64>,
    /// Mean adjacent peak spacing over mean FWHM; present with two or more peaks.
    pub finesse: Option<f64>,
    /// Minimum between the two highest peaks over the weaker of the two.
    pub central_min_ratio: Option<f64>,
    /// The same ratio for every adjacent pair of peaks.
    pub saddle_ratios: Vec<f64>,
    /// Output power over input power; filled in by callers that know the input.
    pub integrated_transmission: Option<f64>,
}

impl BeamMetrics {
    pub fn mean_fwhm(&self) -> f64 {
        self.fwhm.iter().sum::<f64>() / self.fwhm.len() as f64
    }
}

/// `sum |output|^2 dx dy / sum |input|^2 dx dy`.
pub fn integrated_transmission(input: &ComplexField2D, output: &ComplexField2D) -> Result<f64> {
    input.same_grid(output)?;
    let p_in = input.power();
    if p_in == 0.0 {
        return Err(Error::ZeroInput);
    }
    Ok(output.power() / p_in)
}

/// Local maxima above `floor` times the global maximum. A sample counts when
/// it is strictly above its left neighbour and not below its right one, so a
/// two-sample flat top yields one peak. Endpoints are never peaks.
pub fn find_peaks(intensity: &[f64], floor: f64) -> Vec<usize> {
    let max = intensity.iter().copied().fold(0.0, f64::max);
    if !(max > 0.0) {
        return Vec::new();
    }
    let threshold = floor * max;
    (1..intensity.len().saturating_sub(1))
        .filter(|&i| {
            let v = intensity[i];
            v > threshold && v > intensity[i - 1] && v >= intensity[i + 1]
        })
        .collect()
}

/// Vertex of the parabola through the peak sample and its two neighbours:
/// (position, height). Falls back to the sample itself at the data edges or
/// when the three samples are collinear.
pub fn refine_peak(coords: &[f64], intensity: &[f64], peak: usize) -> (f64, f64) {
    let at = (coords[peak], intensity[peak]);
    if peak == 0 || peak + 1 >= intensity.len() {
        return at;
    }
    let (a, b, c) = (intensity[peak - 1], intensity[peak], intensity[peak + 1]);
    let curv = a - 2.0 * b + c;
    if !(curv < 0.0) {
        return at;
    }
    let t = (0.5 * (a - c) / curv).clamp(-0.5, 0.5);
    let h = 0.5 * (coords[peak + 1] - coords[peak - 1]);
    (coords[peak] + t * h, b - 0.25 * (a - c) * t)
}

/// Walks from `peak` in `step` direction to the half-maximum crossing.
/// Returns the interpolated distance from `centre`, or `None` if the walk
/// meets a local minimum above half maximum or the end of the data first.
fn half_width(coords: &[f64], intensity: &[f64], peak: usize, centre: (f64, f64), step: isize) -> Option<f64> {
    let half = 0.5 * centre.1;
    let mut prev = peak;
    loop {
        let next = prev as isize + step;
        if next < 0 || next as usize >= intensity.len() {
            return None;
        }
        let next = next as usize;
        if intensity[next] <= half {
            let (a, b) = (intensity[prev], intensity[next]);
            let t = (a - half) / (a - b);
            let x = coords[prev] + t * (coords[next] - coords[prev]);
            return Some((x - centre.0).abs());
        }
        if intensity[next] > intensity[prev] {
            return None;
        }
        prev = next;
    }
}

/// Index of the lowest sample walking from `peak` in `step` direction until
/// the intensity rises again (or the data ends).
fn valley(intensity: &[f64], peak: usize, step: isize) -> usize {
    let mut i = peak;
    loop {
        let next = i as isize + step;
        if next < 0 || next as usize >= intensity.len() || intensity[next as usize] > intensity[i] {
            return i;
        }
        i = next as usize;
    }
}

/// Intensity FWHM of one peak. When one side never reaches half maximum
/// before a neighbouring peak, the other side's half-width is mirrored; when
/// neither side does, the distance between the bounding minima is used.
pub fn peak_fwhm(coords: &[f64], intensity: &[f64], peak: usize) -> f64 {
    let centre = refine_peak(coords, intensity, peak);
    match (
        half_width(coords, intensity, peak, centre, -1),
        half_width(coords, intensity, peak, centre, 1),
    ) {
        (Some(l), Some(r)) => l + r,
        (Some(w), None) | (None, Some(w)) => 2.0 * w,
        (None, None) => (coords[valley(intensity, peak, 1)] - coords[valley(intensity, peak, -1)]).abs(),
    }
}

fn pair_ratio(intensity: &[f64], a: usize, b: usize) -> f64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let min = intensity[lo..=hi].iter().copied().fold(f64::INFINITY, f64::min);
    min / intensity[a].min(intensity[b])
}

/// Central-minimum ratio of the two highest peaks in `peaks`.
pub fn dominant_pair_ratio(intensity: &[f64], peaks: &[usize]) -> Option<f64> {
    if peaks.len() < 2 {
        return None;
    }
    let mut ranked = peaks.to_vec();
    ranked.sort_by(|&a, &b| intensity[b].total_cmp(&intensity[a]));
    Some(pair_ratio(intensity, ranked[0], ranked[1]))
}

/// Metrics of an intensity profile sampled at `coords`.
pub fn profile_metrics(coords: &[f64], intensity: &[f64], floor: f64) -> Result<BeamMetrics> {
    let idx = find_peaks(intensity, floor);
    if idx.is_empty() {
        return Err(Error::NoStructure("no intensity peak above the noise floor".into()));
    }
    let peaks: Vec<Peak> = idx
        .iter()
        .map(|&i| {
            let (position, height) = refine_peak(coords, intensity, i);
            Peak { position, height }
        })
        .collect();
    let fwhm: Vec<f64> = idx.iter().map(|&i| peak_fwhm(coords, intensity, i)).collect();
    let saddle_ratios: Vec<f64> = idx.windows(2).map(|w| pair_ratio(intensity, w[0], w[1])).collect();
    let finesse = (idx.len() >= 2).then(|| {
        let spacing = (peaks[peaks.len() - 1].position - peaks[0].position) / (peaks.len() - 1) as f64;
        let width = fwhm.iter().sum::<f64>() / fwhm.len() as f64;
        spacing / width
    });
    Ok(BeamMetrics {
        central_min_ratio: dominant_pair_ratio(intensity, &idx),
        peaks,
        fwhm,
        finesse,
        saddle_ratios,
        integrated_transmission: None,
    })
}

pub fn beam_metrics(field: &ComplexField2D, cut: Cut) -> Result<BeamMetrics> {
    let (coords, intensity) = field.intensity_cut(cut);
    profile_metrics(&coords, &intensity, DEFAULT_NOISE_FLOOR)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Peak2D {
    pub x: f64,
    pub y: f64,
    pub height: f64,
    pub ix: usize,
    pub iy: usize,
}

/// Local maxima over the 8-neighbourhood above `floor` times the maximum,
/// highest first. Border samples are skipped.
pub fn find_peaks_2d(field: &ComplexField2D, floor: f64) -> Vec<Peak2D> {
    let g = field.grid;
    let intensity = field.intensity();
    let max = intensity.iter().copied().fold(0.0, f64::max);
    let at = |ix: usize, iy: usize| intensity[iy * g.nx + ix];
    let mut out = Vec::new();
    if g.is_1d() || !(max > 0.0) {
        return out;
    }
    for iy in 1..g.ny - 1 {
        for ix in 1..g.nx - 1 {
            let v = at(ix, iy);
            if v <= floor * max {
                continue;
            }
            let mut is_peak = true;
            'n: for dy in -1isize..=1 {
                for dx in -1isize..=1 {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let w = at((ix as isize + dx) as usize, (iy as isize + dy) as usize);
                    // strict towards earlier samples, non-strict towards later ones
                    let earlier = dy < 0 || (dy == 0 && dx < 0);
                    if (earlier && w >= v) || (!earlier && w > v) {
                        is_peak = false;
                        break 'n;
                    }
                }
            }
            if is_peak {
                out.push(Peak2D {
                    x: g.x(ix),
                    y: g.y(iy),
                    height: v,
                    ix,
                    iy,
                });
            }
        }
    }
    out.sort_by(|a, b| b.height.total_cmp(&a.height));
    out
}

fn bilinear(field: &ComplexField2D, intensity: &[f64], x: f64, y: f64) -> f64 {
    let g = field.grid;
    let fx = (x / g.dx() + (g.nx / 2) as f64).clamp(0.0, (g.nx - 1) as f64);
    let fy = (y / g.dy() + (g.ny / 2) as f64).clamp(0.0, (g.ny - 1) as f64);
    let (ix, iy) = (fx.floor() as usize, fy.floor() as usize);
    let (ix1, iy1) = ((ix + 1).min(g.nx - 1), (iy + 1).min(g.ny - 1));
    let (tx, ty) = (fx - ix as f64, fy - iy as f64);
    let at = |i: usize, j: usize| intensity[j * g.nx + i];
    (1.0 - ty) * ((1.0 - tx) * at(ix, iy) + tx * at(ix1, iy)) + ty * ((1.0 - tx) * at(ix, iy1) + tx * at(ix1, iy1))
}

/// Minimum intensity on the straight segment joining two peaks, over the
/// weaker peak.
pub fn saddle_ratio_2d(field: &ComplexField2D, a: &Peak2D, b: &Peak2D) -> f64 {
    let intensity = field.intensity();
    let g = field.grid;
    let span = ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt();
    let samples = ((span / g.dx().min(g.dy())) * 4.0).ceil().max(2.0) as usize;
    let min = (0..=samples)
        .map(|s| {
            let t = s as f64 / samples as f64;
            bilinear(field, &intensity, a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
        })
        .fold(f64::INFINITY, f64::min);
    min / a.height.min(b.height)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{sample_control_profile, ControlProfile, GaussianPeak, TransverseGrid};
    use num_complex::Complex64;

    #[test]
    fn transmission_of_identity_and_half_amplitude() {
        let grid = TransverseGrid::new_1d(64, 0.06);
        let f = sample_control_profile(&ControlProfile::row(1.0, 0.01, &[0.0]), &grid);
        assert_eq!(integrated_transmission(&f, &f).unwrap(), 1.0);
        let half = f.scaled(Complex64::new(0.5, 0.0));
        assert!((integrated_transmission(&f, &half).unwrap() - 0.25).abs() < 1e-15);
        let zero = ComplexField2D::zeros(grid);
        assert!(matches!(integrated_transmission(&zero, &f), Err(Error::ZeroInput)));
    }

    #[test]
    fn flat_top_counts_once() {
        assert_eq!(find_peaks(&[0.0, 1.0, 1.0, 0.0], 0.01), vec![1]);
        assert!(find_peaks(&[0.0; 5], 0.01).is_empty());
    }

    #[test]
    fn doublet_metrics() {
        let grid = TransverseGrid::new_1d(2048, 0.06);
        let f = sample_control_profile(&ControlProfile::row(1.0, 0.005, &[-0.02, 0.02]), &grid);
        let m = beam_metrics(&f, Cut::default()).unwrap();
        assert_eq!(m.peaks.len(), 2);
        let w = GaussianPeak::new(1.0, 0.0, 0.0, 0.005).intensity_fwhm();
        for fw in &m.fwhm {
            assert!((fw - w).abs() < grid.dx());
        }
        assert!((m.finesse.unwrap() - 0.04 / w).abs() < 0.05);
        assert!(m.central_min_ratio.unwrap() < 1e-6);
    }

    #[test]
    fn blocked_side_is_mirrored() {
        // Rayleigh doublet: the dip never reaches half maximum
        let grid = TransverseGrid::new_1d(1024, 0.06);
        let f = sample_control_profile(&ControlProfile::row(1.0, 0.01, &[-0.01, 0.01]), &grid);
        let m = beam_metrics(&f, Cut::default()).unwrap();
        assert_eq!(m.peaks.len(), 2);
        assert!((m.fwhm[0] - m.fwhm[1]).abs() < 1e-12);
        assert!(m.fwhm[0] > 0.0 && m.fwhm[0].is_finite());
    }

    #[test]
    fn no_structure_on_empty_field() {
        let grid = TransverseGrid::new_1d(64, 0.06);
        assert!(matches!(
            beam_metrics(&ComplexField2D::zeros(grid), Cut::default()),
            Err(Error::NoStructure(_))
        ));
    }

    #[test]
    fn three_peaks_in_two_dimensions() {
        let grid = TransverseGrid::new_2d(128, 128, 0.06, 0.06);
        let profile = ControlProfile::new(vec![
            GaussianPeak::new(1.0, -0.02, -0.02, 0.005),
            GaussianPeak::new(1.0, 0.02, -0.02, 0.005),
            GaussianPeak::new(1.0, 0.0, 0.015, 0.005),
        ]);
        let f = sample_control_profile(&profile, &grid);
        let peaks = find_peaks_2d(&f, DEFAULT_NOISE_FLOOR);
        assert_eq!(peaks.len(), 3);
        for p in &peaks {
            assert!(saddle_ratio_2d(&f, p, &peaks[0]) < 0.8 || p == &peaks[0]);
        }
    }
}
