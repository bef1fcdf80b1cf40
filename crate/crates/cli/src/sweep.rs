//! Parameter sweeps: repeat a template experiment across values of one
//! numeric config field and aggregate per-value success rates for the
//! topological estimator and the MDL/AIC baselines.

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::run::evaluate;
use rayon::prelude::*;
use std::fmt::Write as _;
use topocount_core::EstimateStatus;

pub const SWEEP_SCHEMA_VERSION: u32 = 1;

/// Numeric config fields a sweep can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    SnrDb,
    MObservations,
    NSamples,
    TrimFraction,
    DecimationStride,
    Landmarks,
    Nu,
    MaxFiltration,
    MaxDimension,
    PersistenceFraction,
}

impl SweepAxis {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "snr_db" => Self::SnrDb,
            "m_observations" => Self::MObservations,
            "n_samples" => Self::NSamples,
            "trim_fraction" => Self::TrimFraction,
            "decimation_stride" => Self::DecimationStride,
            "landmarks" => Self::Landmarks,
            "nu" => Self::Nu,
            "max_filtration" => Self::MaxFiltration,
            "max_dimension" => Self::MaxDimension,
            "persistence_fraction" => Self::PersistenceFraction,
            _ => return Err(CliError::UnknownAxis(name.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::SnrDb => "snr_db",
            Self::MObservations => "m_observations",
            Self::NSamples => "n_samples",
            Self::TrimFraction => "trim_fraction",
            Self::DecimationStride => "decimation_stride",
            Self::Landmarks => "landmarks",
            Self::Nu => "nu",
            Self::MaxFiltration => "max_filtration",
            Self::MaxDimension => "max_dimension",
            Self::PersistenceFraction => "persistence_fraction",
        }
    }

    /// Writes `value` into the field this axis names. Integer-valued fields
    /// reject fractional input instead of silently rounding.
    pub fn apply(&self, config: &mut ExperimentConfig, value: f64) -> Result<()> {
        let as_count = |value: f64| -> Result<usize> {
            if value.fract() != 0.0 || value < 0.0 || value > u32::MAX as f64 {
                return Err(CliError::Config(format!(
                    "axis {} needs a non-negative integer, got {value}",
                    self.name()
                )));
            }
            Ok(value as usize)
        };
        match self {
            Self::SnrDb => config.snr_db_range = Some([value, value]),
            Self::MObservations => config.m_observations = as_count(value)?,
            Self::NSamples => config.n_samples = as_count(value)?,
            Self::TrimFraction => config.trim_fraction = value,
            Self::DecimationStride => config.decimation_stride = as_count(value)?,
            Self::Landmarks => config.landmarks = as_count(value)?,
            Self::Nu => config.nu = as_count(value)?,
            Self::MaxFiltration => config.max_filtration = value,
            Self::MaxDimension => config.max_dimension = Some(as_count(value)?),
            Self::PersistenceFraction => config.persistence_fraction = value,
        }
        Ok(())
    }
}

/// Aggregated results for one axis value: the fraction of repetitions on
/// which each estimator returned exactly the configured source count.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub axis_value: f64,
    pub topological_rate: f64,
    pub mdl_rate: f64,
    pub aic_rate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub axis: &'static str,
    pub repetitions: usize,
    pub n_sources: usize,
    pub cells: Vec<SweepCell>,
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# sweep schema_version={SWEEP_SCHEMA_VERSION} axis={} reps={} n_sources={}",
            self.axis, self.repetitions, self.n_sources
        );
        out.push_str("axis_value,topological_rate,mdl_rate,aic_rate\n");
        for cell in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                cell.axis_value, cell.topological_rate, cell.mdl_rate, cell.aic_rate
            );
        }
        out
    }
}

/// SplitMix64 finalizer; decorrelates per-cell seeds drawn from the
/// template seed and the cell coordinates.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn cell_seed(template_seed: u64, value_index: usize, repetition: usize) -> u64 {
    splitmix64(
        template_seed
            ^ splitmix64(((value_index as u64) << 32) | repetition as u64),
    )
}

/// Runs `repetitions` seeded experiments per axis value. Cells execute
/// concurrently; the table rows follow the input value order, repetitions
/// aggregate in index order, so output is independent of scheduling.
pub fn sweep(
    template: &ExperimentConfig,
    axis_name: &str,
    values: &[f64],
    repetitions: usize,
) -> Result<SweepTable> {
    let axis = SweepAxis::parse(axis_name)?;
    if repetitions == 0 {
        return Err(CliError::Config("reps must be at least 1".into()));
    }

    let jobs: Vec<(usize, usize)> = (0..values.len())
        .flat_map(|vi| (0..repetitions).map(move |rep| (vi, rep)))
        .collect();

    let outcomes: Vec<Result<(bool, bool, bool)>> = jobs
        .par_iter()
        .map(|&(vi, rep)| {
            let mut config = template.clone();
            axis.apply(&mut config, values[vi])?;
            config.seed = cell_seed(template.seed, vi, rep);
            let eval = evaluate(&config)?;
            let n_true = config.n_sources();
            Ok((
                eval.estimate.status == EstimateStatus::Match(n_true),
                eval.mdl == Some(n_true),
                eval.aic == Some(n_true),
            ))
        })
        .collect();

    let mut flat = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        flat.push(outcome?);
    }

    let cells = values
        .iter()
        .enumerate()
        .map(|(vi, &axis_value)| {
            let block = &flat[vi * repetitions..(vi + 1) * repetitions];
            let rate = |f: fn(&(bool, bool, bool)) -> bool| {
                block.iter().filter(|c| f(c)).count() as f64 / repetitions as f64
            };
            SweepCell {
                axis_value,
                topological_rate: rate(|c| c.0),
                mdl_rate: rate(|c| c.1),
                aic_rate: rate(|c| c.2),
            }
        })
        .collect();

    Ok(SweepTable {
        axis: axis.name(),
        repetitions,
        n_sources: template.n_sources(),
        cells,
    })
}
