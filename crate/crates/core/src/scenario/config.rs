use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::atomic::{AtomicParams, DriveConfig};
use crate::error::{Error, Result};
use crate::geometry::{ControlProfile, Cut, GaussianPeak, TransverseGrid};
use crate::propagator::PropagationConfig;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// chi41 over a probe-detuning sweep at uniform drive.
    Spectrum,
    /// Susceptibility map of the control image at z = 0.
    ChiMap,
    /// Probe and control co-propagation.
    #[default]
    Propagation,
}

/// Input probe beam; a single Gaussian in the same form as a control peak.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProbeBeam {
    pub amplitude: f64,
    pub center_x: f64,
    pub center_y: f64,
    /// 1/e amplitude radius in cm.
    pub waist: f64,
}

impl Default for ProbeBeam {
    fn default() -> Self {
        ProbeBeam {
            amplitude: 0.01,
            center_x: 0.0,
            center_y: 0.0,
            waist: 250e-4,
        }
    }
}

impl ProbeBeam {
    pub fn peak(&self) -> GaussianPeak {
        GaussianPeak::new(self.amplitude, self.center_x, self.center_y, self.waist)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Sweep {
    /// First probe detuning, units of gamma.
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep {
            start: -3.0,
            stop: 3.0,
            points: 1201,
        }
    }
}

impl Sweep {
    pub fn detunings(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points).map(|i| self.start + i as f64 * step).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Outputs {
    /// Propagation distances (cm) at which fields are recorded.
    pub snapshots: Vec<f64>,
    /// Line along which cuts are written and metrics are taken.
    pub cut: Cut,
    /// Write delimited 1D cuts of every snapshot.
    pub cuts: bool,
    /// Write binary 2D grids (2D runs only).
    pub grids: bool,
}

impl Default for Outputs {
    fn default() -> Self {
        Outputs {
            snapshots: Vec::new(),
            cut: Cut::default(),
            cuts: true,
            grids: false,
        }
    }
}

/// One case of a multi-case scenario; unset fields keep the base values.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Variant {
    pub name: String,
    pub pump_rate: Option<f64>,
    pub microwave: Option<Complex64>,
    pub delta_probe: Option<f64>,
    pub delta_control: Option<f64>,
    pub delta_microwave: Option<f64>,
}

impl Variant {
    pub fn apply(&self, atomic: &AtomicParams, drive: &DriveConfig) -> (AtomicParams, DriveConfig) {
        let mut a = *atomic;
        let mut d = *drive;
        if let Some(r) = self.pump_rate {
            a.pump_rate = r;
        }
        if let Some(m) = self.microwave {
            d.microwave = m;
        }
        if let Some(v) = self.delta_probe {
            d.delta_probe = v;
        }
        if let Some(v) = self.delta_control {
            d.delta_control = v;
        }
        if let Some(v) = self.delta_microwave {
            d.delta_microwave = v;
        }
        (a, d)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub atomic: AtomicParams,
    #[serde(default)]
    pub drive: DriveConfig,
    /// Control image; required for chi_map and propagation runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub control: Option<ControlProfile>,
    #[serde(default)]
    pub probe: ProbeBeam,
    #[serde(default)]
    pub grid: TransverseGrid,
    #[serde(default)]
    pub propagation: PropagationConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
    #[serde(default)]
    pub outputs: Outputs,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub variants: Vec<Variant>,
}

fn at(path: impl Into<String>, e: Error) -> Error {
    let path = path.into();
    match e {
        Error::InvalidParameter { name, reason } => Error::ConfigInvalid {
            path: if path.is_empty() {
                name.to_string()
            } else {
                format!("{path}.{name}")
            },
            message: reason,
        },
        other => Error::ConfigInvalid {
            path,
            message: other.to_string(),
        },
    }
}

fn config_err(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::ConfigInvalid {
        path: path.into(),
        message: message.into(),
    }
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let message = e.message().to_string();
            let path = e
                .span()
                .map(|s| {
                    let line = text[..s.start].matches('\n').count() + 1;
                    format!("line {line}")
                })
                .unwrap_or_else(|| "<document>".into());
            config_err(path, message)
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| config_err(format!("line {}", e.line()), e.to_string()))
    }

    /// Reads a `.toml` or `.json` scenario file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg = if path.extension().is_some_and(|e| e == "json") {
            Self::from_json_str(&text)?
        } else {
            Self::from_toml_str(&text)?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("scenario config serialises to TOML")
    }

    /// Checks every block; errors name the offending path.
    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(config_err("name", "must not be empty"));
        }
        self.atomic.validate().map_err(|e| at("atomic", e))?;
        self.drive.validate().map_err(|e| at("drive", e))?;
        self.grid.validate().map_err(|e| at("grid", e))?;
        self.propagation.validate().map_err(|e| at("propagation", e))?;
        self.probe.peak().validate().map_err(|e| at("probe", e))?;
        if !(self.probe.amplitude > 0.0) {
            return Err(config_err("probe.amplitude", "must be positive"));
        }
        match &self.control {
            Some(c) => {
                if c.peaks.is_empty() {
                    return Err(config_err("control.peaks", "control profile needs at least one peak"));
                }
                for (i, p) in c.peaks.iter().enumerate() {
                    p.validate().map_err(|e| at(format!("control.peaks[{i}]"), e))?;
                }
            }
            None if self.mode != Mode::Spectrum => {
                return Err(config_err("control", "required for chi_map and propagation runs"));
            }
            None => {}
        }
        if let Some(s) = &self.sweep {
            if s.points == 0 {
                return Err(config_err("sweep.points", "must be at least 1"));
            }
            if !(s.start.is_finite() && s.stop.is_finite()) {
                return Err(config_err("sweep", "bounds must be finite"));
            }
        }
        for (i, &z) in self.outputs.snapshots.iter().enumerate() {
            if !(z >= 0.0 && z <= self.propagation.length) {
                return Err(config_err(
                    format!("outputs.snapshots[{i}]"),
                    format!("z = {z} outside [0, {}]", self.propagation.length),
                ));
            }
        }
        let mut names = std::collections::HashSet::new();
        for (i, v) in self.variants.iter().enumerate() {
            if v.name.is_empty()
                || !v
                    .name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
            {
                return Err(config_err(
                    format!("variants[{i}].name"),
                    "use letters, digits, '_' or '-'",
                ));
            }
            if !names.insert(&v.name) {
                return Err(config_err(
                    format!("variants[{i}].name"),
                    format!("duplicate variant `{}`", v.name),
                ));
            }
            let (a, d) = v.apply(&self.atomic, &self.drive);
            a.validate().map_err(|e| at(format!("variants[{i}]"), e))?;
            d.validate().map_err(|e| at(format!("variants[{i}]"), e))?;
        }
        Ok(())
    }

    /// The cases to run: the variants, or the base configuration alone.
    pub fn cases(&self) -> Vec<(String, AtomicParams, DriveConfig)> {
        if self.variants.is_empty() {
            return vec![("base".into(), self.atomic, self.drive)];
        }
        self.variants
            .iter()
            .map(|v| {
                let (a, d) = v.apply(&self.atomic, &self.drive);
                (v.name.clone(), a, d)
            })
            .collect()
    }
}
