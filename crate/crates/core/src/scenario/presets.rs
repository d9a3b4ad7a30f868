//! Built-in named scenarios.

use num_complex::Complex64;

use super::config::{Mode, Outputs, ScenarioConfig, Sweep, Variant};
use crate::atomic::{AtomicParams, DriveConfig};
use crate::error::{Error, Result};
use crate::geometry::{ControlProfile, GaussianPeak, TransverseGrid};
use crate::propagator::{Boundary, PropagationConfig};

pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub config: ScenarioConfig,
    /// Settings the scenario leaves open, filled from module defaults.
    pub defaulted: Vec<&'static str>,
}

pub const PRESET_NAMES: [&str; 8] = [
    "fig2_eit",
    "fig2_mia",
    "fig2_lwi",
    "fig4_chi_map",
    "fig5_rayleigh_clone",
    "fig6_eit_vs_ddr",
    "fig7_sparrow_3peak",
    "fig8_switching",
];

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn base(name: &str, mode: Mode) -> ScenarioConfig {
    ScenarioConfig {
        name: name.into(),
        mode,
        atomic: AtomicParams::default(),
        drive: DriveConfig::default(),
        control: None,
        probe: Default::default(),
        grid: TransverseGrid::default(),
        propagation: PropagationConfig::default(),
        sweep: None,
        outputs: Outputs::default(),
        variants: Vec::new(),
    }
}

fn spectrum(name: &str, microwave: f64, pump: f64) -> ScenarioConfig {
    let mut c = base(name, Mode::Spectrum);
    c.atomic.pump_rate = pump;
    c.drive.microwave = re(microwave);
    c.sweep = Some(Sweep {
        start: -3.0,
        stop: 3.0,
        points: 6001,
    });
    c
}

fn doublet(a: f64) -> ControlProfile {
    ControlProfile::row(1.0, 100e-4, &[-a, a])
}

fn variant(name: &str, microwave: f64, pump: f64, delta_probe: f64) -> Variant {
    Variant {
        name: name.into(),
        pump_rate: Some(pump),
        microwave: Some(re(microwave)),
        delta_probe: Some(delta_probe),
        ..Variant::default()
    }
}

fn fig4_cases() -> Vec<Variant> {
    vec![
        variant("mia", 0.015, 0.0, 1e-3),
        variant("lwi", 0.015, 5e-4, 1e-3),
        variant("eit", 0.0, 0.0, -1e-3),
    ]
}

fn propagation(name: &str, length: f64, snapshots: Vec<f64>) -> ScenarioConfig {
    let mut c = base(name, Mode::Propagation);
    c.propagation = PropagationConfig {
        length,
        boundary: Boundary::absorbing(),
        ..PropagationConfig::default()
    };
    c.outputs.snapshots = snapshots;
    c
}

const SPECTRUM_DEFAULTS: [&str; 3] = ["atomic.density", "atomic.lambda_probe", "sweep.points"];
const PROPAGATION_DEFAULTS: [&str; 9] = [
    "atomic.density",
    "atomic.lambda_probe",
    "atomic.lambda_control",
    "probe.amplitude",
    "probe.waist",
    "grid.nx",
    "grid.extent_x",
    "propagation.dz",
    "propagation.boundary",
];

pub fn preset(name: &str) -> Result<Preset> {
    let p = match name {
        "fig2_eit" => Preset {
            name: "fig2_eit",
            summary: "EIT spectrum: G = 1, no microwave, no pump",
            config: spectrum(name, 0.0, 0.0),
            defaulted: SPECTRUM_DEFAULTS.to_vec(),
        },
        "fig2_mia" => Preset {
            name: "fig2_mia",
            summary: "Double dark resonance with microwave-induced absorption peak",
            config: spectrum(name, 0.01, 0.0),
            defaulted: SPECTRUM_DEFAULTS.to_vec(),
        },
        "fig2_lwi" => Preset {
            name: "fig2_lwi",
            summary: "Incoherent pump turns the central absorption peak into gain",
            config: spectrum(name, 0.01, 5e-4),
            defaulted: SPECTRUM_DEFAULTS.to_vec(),
        },
        "fig4_chi_map" => {
            let mut c = base(name, Mode::ChiMap);
            c.control = Some(doublet(0.012));
            c.variants = fig4_cases();
            Preset {
                name: "fig4_chi_map",
                summary: "Susceptibility across a doublet control image (MIA, LWI, EIT)",
                config: c,
                defaulted: vec!["atomic.density", "atomic.lambda_probe", "grid.nx", "grid.extent_x"],
            }
        }
        "fig5_rayleigh_clone" => {
            let mut c = propagation(name, 2.5, vec![0.0, 0.5, 1.0, 1.5, 2.0, 2.5]);
            c.control = Some(doublet(0.01));
            c.atomic.pump_rate = 7.5e-4;
            c.drive.microwave = re(0.018);
            c.drive.delta_probe = 1e-3;
            Preset {
                name: "fig5_rayleigh_clone",
                summary: "Cloning a Rayleigh-limited doublet onto the probe over 2.5 cm",
                config: c,
                defaulted: PROPAGATION_DEFAULTS.to_vec(),
            }
        }
        "fig6_eit_vs_ddr" => {
            let mut c = propagation(name, 2.5, vec![0.0, 2.5]);
            c.control = Some(doublet(0.01));
            c.variants = vec![variant("eit", 0.0, 0.0, -1e-3), variant("ddr", 0.015, 5e-4, 1e-3)];
            Preset {
                name: "fig6_eit_vs_ddr",
                summary: "Rayleigh-limited doublet cloned with EIT and with the pumped double dark resonance",
                config: c,
                defaulted: PROPAGATION_DEFAULTS.to_vec(),
            }
        }
        "fig7_sparrow_3peak" => {
            let mut c = propagation(name, 1.0, vec![0.0, 1.0]);
            c.grid = TransverseGrid::new_2d(512, 512, 0.06, 0.06);
            c.control = Some(ControlProfile::new(vec![
                GaussianPeak::new(1.0, -0.009, -0.009, 100e-4),
                GaussianPeak::new(1.0, 0.009, -0.009, 100e-4),
                GaussianPeak::new(1.0, 0.0, 0.0066, 100e-4),
            ]));
            c.atomic.pump_rate = 7.3e-4;
            c.drive.microwave = re(0.02);
            c.drive.delta_probe = 1e-3;
            c.outputs.cut = crate::geometry::Cut::AlongX { y: -0.009 };
            c.outputs.grids = true;
            Preset {
                name: "fig7_sparrow_3peak",
                summary: "Three-peak Sparrow-limited image cloned in two transverse dimensions",
                config: c,
                defaulted: vec![
                    "atomic.density",
                    "atomic.lambda_probe",
                    "atomic.lambda_control",
                    "probe.amplitude",
                    "probe.waist",
                    "grid.extent_y",
                    "propagation.dz",
                    "propagation.boundary",
                ],
            }
        }
        "fig8_switching" => {
            let mut c = propagation(name, 3.0, vec![0.0, 1.0, 2.0, 3.0]);
            c.control = Some(doublet(0.02));
            c.variants = vec![
                variant("eit", 0.0, 0.0, -5e-3),
                variant("lwi", 0.01, 1e-4, 1e-4),
                variant("mia", 0.01, 0.0, 1e-4),
            ];
            Preset {
                name: "fig8_switching",
                summary: "Spatial switching of the probe: EIT and LWI on, MIA off",
                config: c,
                defaulted: PROPAGATION_DEFAULTS.to_vec(),
            }
        }
        other => {
            return Err(Error::ConfigInvalid {
                path: "preset".into(),
                message: format!("unknown preset `{other}`; known: {}", PRESET_NAMES.join(", ")),
            })
        }
    };
    Ok(p)
}

pub fn all_presets() -> Vec<Preset> {
    PRESET_NAMES.iter().map(|n| preset(n).expect("listed preset")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_validates() {
        for p in all_presets() {
            p.config.validate().unwrap_or_else(|e| panic!("{}: {e}", p.name));
            assert_eq!(p.config.name, p.name);
        }
    }

    #[test]
    fn caption_values() {
        let c = preset("fig5_rayleigh_clone").unwrap().config;
        assert_eq!(c.drive.microwave, re(0.018));
        assert_eq!(c.atomic.pump_rate, 0.00075);
        assert_eq!(c.drive.delta_probe, 0.001);
        assert_eq!(c.control.unwrap().peaks[1].center_x, 0.01);

        let c = preset("fig7_sparrow_3peak").unwrap().config;
        let centres: Vec<(f64, f64)> = c
            .control
            .unwrap()
            .peaks
            .iter()
            .map(|p| (p.center_x, p.center_y))
            .collect();
        assert_eq!(centres, vec![(-0.009, -0.009), (0.009, -0.009), (0.0, 0.0066)]);
        assert_eq!((c.grid.nx, c.grid.ny), (512, 512));

        let c = preset("fig8_switching").unwrap().config;
        let lwi = &c.variants[1];
        assert_eq!(
            (lwi.microwave, lwi.pump_rate, lwi.delta_probe),
            (Some(re(0.01)), Some(1e-4), Some(1e-4))
        );
    }

    #[test]
    fn unknown_preset_is_config_error() {
        assert!(matches!(preset("fig9"), Err(Error::ConfigInvalid { .. })));
    }
}
