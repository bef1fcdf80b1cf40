//! Experiment configuration: a single flat TOML file, fully seeded, echoed
//! verbatim into every report so a run can be reproduced from its output.

use crate::error::{CliError, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use topocount_core::{PhaseProfile, ProfileKind};

pub const CONFIG_SCHEMA_VERSION: u32 = 1;

/// Frequency law of one source, tagged by `kind` in the TOML table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SourceLaw {
    ConstantTone {
        f_hz: f64,
    },
    LinearChirp {
        f_start_hz: f64,
        f_end_hz: f64,
    },
    SinusoidalSweep {
        f_center_hz: f64,
        f_dev_hz: f64,
        sweep_rate_hz: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceSpec {
    #[serde(flatten)]
    pub law: SourceLaw,
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
    #[serde(default)]
    pub initial_phase_rad: f64,
}

impl SourceSpec {
    pub fn to_profile(&self, duration_s: f64) -> PhaseProfile {
        let kind = match self.law {
            SourceLaw::ConstantTone { f_hz } => ProfileKind::ConstantTone { f_hz },
            SourceLaw::LinearChirp {
                f_start_hz,
                f_end_hz,
            } => ProfileKind::LinearChirp {
                f_start_hz,
                f_end_hz,
            },
            SourceLaw::SinusoidalSweep {
                f_center_hz,
                f_dev_hz,
                sweep_rate_hz,
            } => ProfileKind::SinusoidalSweep {
                f_center_hz,
                f_dev_hz,
                sweep_rate_hz,
            },
        };
        PhaseProfile {
            kind,
            initial_phase_rad: self.initial_phase_rad,
            duration_s,
        }
    }

    /// Extremes of the frequency law, for Nyquist validation.
    pub fn freq_bounds_hz(&self) -> (f64, f64) {
        match self.law {
            SourceLaw::ConstantTone { f_hz } => (f_hz, f_hz),
            SourceLaw::LinearChirp {
                f_start_hz,
                f_end_hz,
            } => (f_start_hz.min(f_end_hz), f_start_hz.max(f_end_hz)),
            SourceLaw::SinusoidalSweep {
                f_center_hz,
                f_dev_hz,
                ..
            } => (f_center_hz - f_dev_hz.abs(), f_center_hz + f_dev_hz.abs()),
        }
    }
}

fn default_amplitude() -> f64 {
    1.0
}

fn default_stride() -> usize {
    1
}

fn default_nu() -> usize {
    1
}

fn default_persistence_fraction() -> f64 {
    0.5
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

/// One experiment, fully specified. All randomness (mixing draw, per-channel
/// SNRs, noise) derives from `seed`, so the file pins the run exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub sources: Vec<SourceSpec>,
    pub m_observations: usize,
    /// Mixing magnitudes are drawn uniformly from [r_range[0], r_range[1]].
    pub r_range: [f64; 2],
    /// Per-channel SNR drawn uniformly from this range; omit for noise-free.
    #[serde(default)]
    pub snr_db_range: Option<[f64; 2]>,
    pub sample_rate_hz: f64,
    pub n_samples: usize,
    pub trim_fraction: f64,
    #[serde(default = "default_stride")]
    pub decimation_stride: usize,
    pub landmarks: usize,
    #[serde(default = "default_nu")]
    pub nu: usize,
    pub max_filtration: f64,
    /// Filtration grid resolution; omit for exact (ungridded) values.
    #[serde(default)]
    pub filtration_divisions: Option<usize>,
    /// Highest homology dimension reported. Defaults to m_observations, the
    /// largest count the array could resolve; clique enumeration grows
    /// steeply with this, so bound it when the source count is known small.
    #[serde(default)]
    pub max_dimension: Option<usize>,
    #[serde(default = "default_persistence_fraction")]
    pub persistence_fraction: f64,
    /// Rescale each (y_i, y~_i) pair to unit RMS radius before the witness
    /// stage; max_filtration then lives on the normalized scale.
    #[serde(default)]
    pub normalize: bool,
    pub seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn n_sources(&self) -> usize {
        self.sources.len()
    }

    pub fn duration_s(&self) -> f64 {
        self.n_samples as f64 / self.sample_rate_hz
    }

    pub fn resolved_max_dimension(&self) -> usize {
        self.max_dimension.unwrap_or(self.m_observations)
    }

    /// Point count that reaches the witness stage.
    pub fn embedded_points(&self) -> usize {
        let trimmed = self.n_samples - 2 * (self.trim_fraction * self.n_samples as f64) as usize;
        trimmed.div_ceil(self.decimation_stride.max(1))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Config(format!(
            "cannot read {}: {source}",
            path.display()
        )))?;
        let config: ExperimentConfig = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(CliError::Config(msg));
        if self.schema_version != CONFIG_SCHEMA_VERSION {
            return fail(format!(
                "schema_version {} unsupported (expected {CONFIG_SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        if self.sources.is_empty() {
            return fail("at least one source is required".into());
        }
        if !(self.sample_rate_hz > 0.0) || !self.sample_rate_hz.is_finite() {
            return fail(format!("sample_rate_hz {} must be positive", self.sample_rate_hz));
        }
        if self.n_samples < 16 {
            return fail(format!("n_samples {} too short to analyze", self.n_samples));
        }
        let nyquist = self.sample_rate_hz / 2.0;
        for (i, src) in self.sources.iter().enumerate() {
            if !(src.amplitude > 0.0) || !src.amplitude.is_finite() {
                return fail(format!("source {i}: amplitude {} must be positive", src.amplitude));
            }
            if !(-std::f64::consts::PI..=std::f64::consts::PI).contains(&src.initial_phase_rad) {
                return fail(format!(
                    "source {i}: initial_phase_rad {} outside [-pi, pi]",
                    src.initial_phase_rad
                ));
            }
            let (lo, hi) = src.freq_bounds_hz();
            if !lo.is_finite() || !hi.is_finite() || lo <= 0.0 || hi >= nyquist {
                return fail(format!(
                    "source {i}: frequency range [{lo}, {hi}] Hz must stay inside (0, {nyquist}) Hz"
                ));
            }
        }
        if self.m_observations == 0 {
            return fail("m_observations must be at least 1".into());
        }
        let [r_lo, r_hi] = self.r_range;
        if !(r_lo > 0.0) || !(r_lo <= r_hi) || !r_hi.is_finite() {
            return fail(format!("r_range [{r_lo}, {r_hi}] must satisfy 0 < lo <= hi"));
        }
        if let Some([s_lo, s_hi]) = self.snr_db_range {
            if !(s_lo <= s_hi) || !s_lo.is_finite() || !s_hi.is_finite() {
                return fail(format!("snr_db_range [{s_lo}, {s_hi}] must satisfy lo <= hi"));
            }
        }
        if !(0.0..0.5).contains(&self.trim_fraction) {
            return fail(format!("trim_fraction {} outside [0, 0.5)", self.trim_fraction));
        }
        if self.decimation_stride == 0 {
            return fail("decimation_stride must be at least 1".into());
        }
        if self.landmarks == 0 {
            return fail("landmarks must be at least 1".into());
        }
        let points = self.embedded_points();
        if points < self.landmarks {
            return fail(format!(
                "landmarks {} exceed the {points} points left after trimming and decimation",
                self.landmarks
            ));
        }
        if !(self.max_filtration > 0.0) || !self.max_filtration.is_finite() {
            return fail(format!("max_filtration {} must be positive", self.max_filtration));
        }
        if self.filtration_divisions == Some(0) {
            return fail("filtration_divisions must be at least 1 when present".into());
        }
        if !(self.persistence_fraction > 0.0 && self.persistence_fraction <= 1.0) {
            return fail(format!(
                "persistence_fraction {} outside (0, 1]",
                self.persistence_fraction
            ));
        }
        Ok(())
    }
}
