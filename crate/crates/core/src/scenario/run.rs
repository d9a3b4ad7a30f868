use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::config::{Mode, ScenarioConfig};
use super::export::{write_grid, write_json, write_table, Column};
use crate::analysis::{self, BeamMetrics, Peak2D, DEFAULT_NOISE_FLOOR};
use crate::atomic::{chi41_with_fallback, AtomicParams, DriveConfig};
use crate::error::{Error, Result};
use crate::geometry::{self, sample_control_profile, ComplexField2D, ControlProfile, Cut, ResolutionClass};
use crate::propagator::{self, PropagationRecord};

pub const TRANSMISSION_NORMALIZATION: &str =
    "integrated transmission = probe power at z / probe power at z = 0 (input beam, not a free-space reference)";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub points: usize,
    pub im_chi_at_zero: Option<f64>,
    /// Whether Delta1 = 0 is a strict local maximum of Im chi on the sweep.
    pub center_is_local_max: Option<bool>,
    pub max_im_chi: f64,
    pub min_im_chi: f64,
    /// Detunings of the local minima of Im chi (transparency windows or gain dips).
    pub im_chi_minima: Vec<f64>,
    /// Detunings of the local maxima of Im chi.
    pub im_chi_maxima: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiMapSummary {
    pub im_chi_at_origin: f64,
    pub re_chi_at_origin: f64,
    pub min_im_chi: f64,
    pub min_im_chi_at: f64,
    pub max_im_chi: f64,
    pub max_im_chi_at: f64,
    /// Fraction of samples on the cut with Im chi < 0.
    pub gain_fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnapshotSummary {
    pub z: f64,
    pub probe_power: f64,
    pub transmission: f64,
    pub probe: Option<BeamMetrics>,
    pub probe_resolution: Option<ResolutionClass>,
    pub control: Option<BeamMetrics>,
    pub control_resolution: Option<ResolutionClass>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub probe_peaks_2d: Vec<Peak2D>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub probe_saddle_ratios_2d: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Convergence {
    pub steps: usize,
    pub dz: f64,
    /// Narrowest control waist over the grid spacing.
    pub samples_per_control_waist: f64,
    /// Share of the final probe power in the outer 10% of each axis.
    pub edge_power_fraction: f64,
    /// Share of the final probe spectral power in the upper quarter of |kx|.
    pub spectral_edge_fraction: f64,
    pub max_probe_amplitude: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseSummary {
    pub name: String,
    pub pump_rate: f64,
    pub drive: DriveConfig,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spectrum: Option<SpectrumSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub chi_map: Option<ChiMapSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub snapshots: Vec<SnapshotSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub convergence: Option<Convergence>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub scenario: String,
    pub mode: Mode,
    /// Every setting used, defaults included; re-runnable as a config.
    pub resolved_config: ScenarioConfig,
    /// Settings the scenario did not specify and that took module defaults.
    pub defaulted: Vec<String>,
    pub coupling: f64,
    pub k_probe: f64,
    pub k_control: f64,
    pub transmission_normalization: String,
    pub cases: Vec<CaseSummary>,
    pub files: Vec<String>,
    pub wall_clock_seconds: f64,
}

impl RunSummary {
    pub fn case(&self, name: &str) -> Option<&CaseSummary> {
        self.cases.iter().find(|c| c.name == name)
    }
}

/// Probe and control at the entrance face.
pub fn initial_fields(cfg: &ScenarioConfig) -> Result<(ComplexField2D, ComplexField2D)> {
    let control = cfg.control.as_ref().ok_or_else(|| Error::ConfigInvalid {
        path: "control".into(),
        message: "missing control profile".into(),
    })?;
    let probe = sample_control_profile(&ControlProfile::new(vec![cfg.probe.peak()]), &cfg.grid);
    Ok((probe, sample_control_profile(control, &cfg.grid)))
}

/// One propagation case of a scenario, snapshots as configured.
pub fn propagate_case(cfg: &ScenarioConfig, atomic: &AtomicParams, drive: &DriveConfig) -> Result<PropagationRecord> {
    let (probe, control) = initial_fields(cfg)?;
    propagator::propagate(
        &probe,
        &control,
        atomic,
        drive,
        &cfg.propagation,
        &cfg.outputs.snapshots,
    )
}

fn local_extrema(xs: &[f64], ys: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let (mut minima, mut maxima) = (Vec::new(), Vec::new());
    for i in 1..ys.len().saturating_sub(1) {
        if ys[i] < ys[i - 1] && ys[i] <= ys[i + 1] {
            minima.push(xs[i]);
        }
        if ys[i] > ys[i - 1] && ys[i] >= ys[i + 1] {
            maxima.push(xs[i]);
        }
    }
    (minima, maxima)
}

/// chi over the sweep; returns detunings and susceptibilities.
pub fn spectrum(atomic: &AtomicParams, drive: &DriveConfig, detunings: &[f64]) -> Result<Vec<Complex64>> {
    detunings
        .iter()
        .map(|&d| chi41_with_fallback(atomic, &drive.with_probe_detuning(d)).map(|s| s.chi))
        .collect()
}

fn summarize_spectrum(d: &[f64], chi: &[Complex64]) -> SpectrumSummary {
    let im: Vec<f64> = chi.iter().map(|c| c.im).collect();
    let zero = d.iter().position(|&x| x.abs() < 1e-12);
    let (minima, maxima) = local_extrema(d, &im);
    SpectrumSummary {
        points: d.len(),
        im_chi_at_zero: zero.map(|i| im[i]),
        center_is_local_max: zero
            .filter(|&i| i > 0 && i + 1 < im.len())
            .map(|i| im[i] > im[i - 1] && im[i] > im[i + 1]),
        max_im_chi: im.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        min_im_chi: im.iter().copied().fold(f64::INFINITY, f64::min),
        im_chi_minima: minima,
        im_chi_maxima: maxima,
    }
}

fn summarize_chi_cut(xs: &[f64], chi: &[Complex64]) -> ChiMapSummary {
    let origin = xs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let (mut lo, mut hi) = (0, 0);
    for (i, c) in chi.iter().enumerate() {
        if c.im < chi[lo].im {
            lo = i;
        }
        if c.im > chi[hi].im {
            hi = i;
        }
    }
    ChiMapSummary {
        im_chi_at_origin: chi[origin].im,
        re_chi_at_origin: chi[origin].re,
        min_im_chi: chi[lo].im,
        min_im_chi_at: xs[lo],
        max_im_chi: chi[hi].im,
        max_im_chi_at: xs[hi],
        gain_fraction: chi.iter().filter(|c| c.im < 0.0).count() as f64 / chi.len() as f64,
    }
}

fn metrics_or_none(field: &ComplexField2D, cut: Cut) -> Result<Option<BeamMetrics>> {
    match analysis::beam_metrics(field, cut) {
        Ok(m) => Ok(Some(m)),
        Err(Error::NoStructure(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn resolution_or_none(field: &ComplexField2D, cut: Cut) -> Result<Option<ResolutionClass>> {
    match geometry::classify_resolution(field, cut) {
        Ok(c) => Ok(Some(c)),
        Err(Error::NoStructure(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Metrics of one snapshot relative to the input probe.
pub fn summarize_snapshot(
    input: &ComplexField2D,
    probe: &ComplexField2D,
    control: Option<&ComplexField2D>,
    z: f64,
    cut: Cut,
) -> Result<SnapshotSummary> {
    let transmission = analysis::integrated_transmission(input, probe)?;
    let mut probe_metrics = metrics_or_none(probe, cut)?;
    if let Some(m) = probe_metrics.as_mut() {
        m.integrated_transmission = Some(transmission);
    }
    let (peaks_2d, saddles) = if probe.grid.is_1d() {
        (Vec::new(), Vec::new())
    } else {
        let peaks = analysis::find_peaks_2d(probe, DEFAULT_NOISE_FLOOR);
        let mut s = Vec::new();
        for i in 0..peaks.len() {
            for j in i + 1..peaks.len() {
                s.push(analysis::saddle_ratio_2d(probe, &peaks[i], &peaks[j]));
            }
        }
        (peaks, s)
    };
    Ok(SnapshotSummary {
        z,
        probe_power: probe.power(),
        transmission,
        probe: probe_metrics,
        probe_resolution: resolution_or_none(probe, cut)?,
        control: control.map(|c| metrics_or_none(c, cut)).transpose()?.flatten(),
        control_resolution: control.map(|c| resolution_or_none(c, cut)).transpose()?.flatten(),
        probe_peaks_2d: peaks_2d,
        probe_saddle_ratios_2d: saddles,
    })
}

fn convergence(cfg: &ScenarioConfig, record: &PropagationRecord) -> Convergence {
    let probe = &record.last().probe;
    let g = probe.grid;
    let waist = cfg
        .control
        .as_ref()
        .map(|c| c.peaks.iter().map(|p| p.waist).fold(f64::INFINITY, f64::min))
        .unwrap_or(f64::NAN);
    let outer = |u: f64, extent: f64| u.abs() > 0.9 * extent;
    let total: f64 = probe.values.iter().map(|v| v.norm_sqr()).sum();
    let edge: f64 = probe
        .values
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            let (x, y) = g.position(*i);
            outer(x, g.extent_x) || (!g.is_1d() && outer(y, g.extent_y))
        })
        .map(|(_, v)| v.norm_sqr())
        .sum();
    let spectral = {
        use rustfft::FftPlanner;
        let fft = FftPlanner::new().plan_fft_forward(g.nx);
        let mut hi = 0.0;
        let mut all = 0.0;
        for row in probe.values.chunks(g.nx) {
            let mut buf = row.to_vec();
            fft.process(&mut buf);
            for (i, v) in buf.iter().enumerate() {
                let f = if i < g.nx / 2 { i } else { g.nx - i };
                all += v.norm_sqr();
                if f >= 3 * g.nx / 8 {
                    hi += v.norm_sqr();
                }
            }
        }
        if all > 0.0 {
            hi / all
        } else {
            0.0
        }
    };
    Convergence {
        steps: record.steps,
        dz: cfg.propagation.dz,
        samples_per_control_waist: waist / g.dx(),
        edge_power_fraction: if total > 0.0 { edge / total } else { 0.0 },
        spectral_edge_fraction: spectral,
        max_probe_amplitude: record.snapshots.iter().map(|s| s.probe.max_norm()).fold(0.0, f64::max),
    }
}

struct Writer {
    dir: Option<PathBuf>,
    files: Vec<String>,
}

impl Writer {
    fn path(&mut self, name: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        self.files.push(name.to_string());
        Some(dir.join(name))
    }
}

fn z_tag(z: f64) -> String {
    format!("z{z:.3}")
}

fn cut_label(cut: Cut) -> (&'static str, String) {
    match cut {
        Cut::AlongX { y } => ("x_cm", format!("cut along x at y = {y} cm")),
        Cut::AlongY { x } => ("y_cm", format!("cut along y at x = {x} cm")),
    }
}

fn run_case(
    cfg: &ScenarioConfig,
    name: &str,
    atomic: &AtomicParams,
    drive: &DriveConfig,
    tag: &str,
    out: &mut Writer,
) -> Result<CaseSummary> {
    let mut summary = CaseSummary {
        name: name.to_string(),
        pump_rate: atomic.pump_rate,
        drive: *drive,
        spectrum: None,
        chi_map: None,
        snapshots: Vec::new(),
        convergence: None,
    };
    let cut = cfg.outputs.cut;
    let (axis, cut_note) = cut_label(cut);
    match cfg.mode {
        Mode::Spectrum => {
            let d = cfg.sweep.unwrap_or_default().detunings();
            let chi = spectrum(atomic, drive, &d)?;
            if let Some(p) = out.path(&format!("spectrum{tag}.dat")) {
                write_table(
                    &p,
                    &[format!("{}: chi41 versus probe detuning", cfg.name)],
                    &[
                        Column {
                            name: "delta1_over_gamma",
                            unit: "gamma",
                            values: d.clone(),
                        },
                        Column {
                            name: "re_chi",
                            unit: "1",
                            values: chi.iter().map(|c| c.re).collect(),
                        },
                        Column {
                            name: "im_chi",
                            unit: "1",
                            values: chi.iter().map(|c| c.im).collect(),
                        },
                    ],
                )?;
            }
            summary.spectrum = Some(summarize_spectrum(&d, &chi));
        }
        Mode::ChiMap => {
            let (_, control) = initial_fields(cfg)?;
            let chi = geometry::susceptibility_map(&control, atomic, drive)?;
            let (xs, chi_cut) = chi.values_cut(cut);
            let (_, g_cut) = control.values_cut(cut);
            if let Some(p) = out.path(&format!("chi{tag}.dat")) {
                write_table(
                    &p,
                    &[format!("{}: susceptibility of the control image, {cut_note}", cfg.name)],
                    &[
                        Column {
                            name: axis,
                            unit: "cm",
                            values: xs.clone(),
                        },
                        Column {
                            name: "control_abs",
                            unit: "gamma",
                            values: g_cut.iter().map(|c| c.norm()).collect(),
                        },
                        Column {
                            name: "re_chi",
                            unit: "1",
                            values: chi_cut.iter().map(|c| c.re).collect(),
                        },
                        Column {
                            name: "im_chi",
                            unit: "1",
                            values: chi_cut.iter().map(|c| c.im).collect(),
                        },
                    ],
                )?;
            }
            if !chi.grid.is_1d() && cfg.outputs.grids {
                if let Some(p) = out.path(&format!("chi{tag}.bin")) {
                    write_grid(&p, &chi, "chi41", "dimensionless")?;
                    out.files.push(format!("chi{tag}.json"));
                }
            }
            summary.chi_map = Some(summarize_chi_cut(&xs, &chi_cut));
        }
        Mode::Propagation => {
            let record = propagate_case(cfg, atomic, drive)?;
            let input = &record.snapshots[0].probe;
            for snap in &record.snapshots {
                let s = summarize_snapshot(input, &snap.probe, snap.control.as_ref(), snap.z, cut)?;
                summary.snapshots.push(s);
                let zt = z_tag(snap.z);
                if cfg.outputs.cuts {
                    if let Some(p) = out.path(&format!("cut{tag}_{zt}.dat")) {
                        let (xs, pv) = snap.probe.values_cut(cut);
                        let control_i = snap
                            .control
                            .as_ref()
                            .map(|c| c.intensity_cut(cut).1)
                            .unwrap_or_else(|| vec![0.0; xs.len()]);
                        write_table(
                            &p,
                            &[format!(
                                "{}: probe and control at z = {} cm, {cut_note}",
                                cfg.name, snap.z
                            )],
                            &[
                                Column {
                                    name: axis,
                                    unit: "cm",
                                    values: xs,
                                },
                                Column {
                                    name: "probe_re",
                                    unit: "gamma",
                                    values: pv.iter().map(|c| c.re).collect(),
                                },
                                Column {
                                    name: "probe_im",
                                    unit: "gamma",
                                    values: pv.iter().map(|c| c.im).collect(),
                                },
                                Column {
                                    name: "probe_intensity",
                                    unit: "gamma^2",
                                    values: pv.iter().map(|c| c.norm_sqr()).collect(),
                                },
                                Column {
                                    name: "control_intensity",
                                    unit: "gamma^2",
                                    values: control_i,
                                },
                            ],
                        )?;
                    }
                }
                if cfg.outputs.grids && !snap.probe.grid.is_1d() {
                    if let Some(p) = out.path(&format!("probe{tag}_{zt}.bin")) {
                        write_grid(&p, &snap.probe, "probe", "gamma")?;
                        out.files.push(format!("probe{tag}_{zt}.json"));
                    }
                    if let Some(c) = &snap.control {
                        if let Some(p) = out.path(&format!("control{tag}_{zt}.bin")) {
                            write_grid(&p, c, "control", "gamma")?;
                            out.files.push(format!("control{tag}_{zt}.json"));
                        }
                    }
                }
            }
            if let Some(p) = out.path(&format!("power{tag}.dat")) {
                let p0 = record.power[0].1;
                write_table(
                    &p,
                    &[format!(
                        "{}: probe power along the cell; {TRANSMISSION_NORMALIZATION}",
                        cfg.name
                    )],
                    &[
                        Column {
                            name: "z_cm",
                            unit: "cm",
                            values: record.power.iter().map(|x| x.0).collect(),
                        },
                        Column {
                            name: "probe_power",
                            unit: "gamma^2 cm^2",
                            values: record.power.iter().map(|x| x.1).collect(),
                        },
                        Column {
                            name: "transmission",
                            unit: "1",
                            values: record.power.iter().map(|x| x.1 / p0).collect(),
                        },
                    ],
                )?;
            }
            summary.convergence = Some(convergence(cfg, &record));
        }
    }
    Ok(summary)
}

/// Runs every case of the scenario. With `out_dir` set, writes the data
/// files, `summary.json` and `resolved_config.toml` there.
pub fn run_scenario(cfg: &ScenarioConfig, defaulted: &[&str], out_dir: Option<&Path>) -> Result<RunSummary> {
    let wrap = |e: Error| match e {
        e @ Error::ConfigInvalid { .. } => e,
        e => Error::Scenario {
            scenario: cfg.name.clone(),
            source: Box::new(e),
        },
    };
    cfg.validate()?;
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let start = Instant::now();
    let mut out = Writer {
        dir: out_dir.map(Path::to_path_buf),
        files: Vec::new(),
    };
    let cases = cfg.cases();
    let single = cases.len() == 1;
    let mut summaries = Vec::new();
    for (name, atomic, drive) in &cases {
        let tag = if single { String::new() } else { format!("_{name}") };
        summaries.push(run_case(cfg, name, atomic, drive, &tag, &mut out).map_err(wrap)?);
    }
    if let Some(p) = out.path("resolved_config.toml") {
        std::fs::write(&p, cfg.to_toml_string()).map_err(|e| Error::io(&p, e))?;
    }
    let mut summary = RunSummary {
        scenario: cfg.name.clone(),
        mode: cfg.mode,
        resolved_config: cfg.clone(),
        defaulted: defaulted.iter().map(|s| s.to_string()).collect(),
        coupling: cfg.atomic.coupling(),
        k_probe: cfg.atomic.k_probe(),
        k_control: cfg.atomic.k_control(),
        transmission_normalization: TRANSMISSION_NORMALIZATION.into(),
        cases: summaries,
        files: Vec::new(),
        wall_clock_seconds: 0.0,
    };
    let summary_path = out.path("summary.json");
    summary.files = out.files.clone();
    summary.wall_clock_seconds = start.elapsed().as_secs_f64();
    if let Some(p) = summary_path {
        write_json(&p, &summary)?;
    }
    Ok(summary)
}
