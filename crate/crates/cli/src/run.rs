//! End-to-end experiment: synthesize sources, mix into an array observation,
//! add noise, embed the phase portrait, estimate the source count
//! topologically and with the eigenvalue baselines, and write artifacts.

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fs::File;
use std::io::{BufWriter, Write as _};
use std::path::{Path, PathBuf};
use std::time::Instant;
use topocount_core as core;
use topocount_core::{
    EstimateDiagnostics, EstimateRecord, IndependenceReport, ObservationSet, SourceCountEstimate,
    TdaConfig,
};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Serialized run outcome. Everything here is a pure function of the config,
/// so a fixed seed reproduces the file byte for byte; wall-clock timings are
/// reported on the console instead to keep that property.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub config: ExperimentConfig,
    pub estimate: EstimateRecord,
    /// `None` (JSON `null`) on single-channel runs, where a signal/noise
    /// subspace split is undefined.
    pub mdl: Option<usize>,
    pub aic: Option<usize>,
    pub independence: IndependenceReport,
    /// Artifact file names, relative to the report's directory.
    pub barcode_csv: String,
    pub barcode_svg: String,
}

/// In-memory results of one experiment, before any file is written.
pub struct Evaluation {
    pub estimate: SourceCountEstimate,
    pub diagnostics: EstimateDiagnostics,
    /// `None` on single-channel runs; see [`RunReport::mdl`].
    pub mdl: Option<usize>,
    pub aic: Option<usize>,
    pub independence: IndependenceReport,
    pub timings: Vec<(&'static str, f64)>,
}

pub struct RunOutcome {
    pub report: RunReport,
    pub report_path: PathBuf,
    pub timings: Vec<(&'static str, f64)>,
}

fn stage<T>(name: &'static str, r: core::Result<T>) -> Result<T> {
    r.map_err(|source| CliError::Stage {
        stage: name,
        source,
    })
}

/// Runs the full pipeline without touching the filesystem.
///
/// Seed discipline: one master stream seeded by `config.seed` supplies, in
/// this order, the mixing-system seed, then (when noise is enabled) one SNR
/// per channel, then one noise seed per channel. Nothing else draws from it.
pub fn evaluate(config: &ExperimentConfig) -> Result<Evaluation> {
    config.validate()?;
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |timings: &mut Vec<(&'static str, f64)>, name: &'static str| {
        let now = Instant::now();
        timings.push((name, (now - clock).as_secs_f64()));
        clock = now;
    };

    let duration = config.duration_s();
    let sources = config
        .sources
        .iter()
        .map(|source| {
            let signal = stage(
                "synthesize",
                core::synthesize(
                    &source.to_profile(duration),
                    source.amplitude,
                    config.sample_rate_hz,
                    config.n_samples,
                ),
            )?;
            stage("source analytic pair", core::analytic_pair(&signal))
        })
        .collect::<Result<Vec<_>>>()?;
    lap(&mut timings, "synthesize");

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mixing_seed: u64 = rng.random();
    let system = stage(
        "mixing",
        core::random_mixing(
            config.n_sources(),
            config.m_observations,
            (config.r_range[0], config.r_range[1]),
            mixing_seed,
        ),
    )?;
    let clean = stage("mixing", core::mix(&system, &sources))?;
    lap(&mut timings, "mix");

    let observed = match config.snr_db_range {
        Some([lo, hi]) => {
            let snrs: Vec<f64> = (0..config.m_observations)
                .map(|_| rng.random_range(lo..=hi))
                .collect();
            let noise_seeds: Vec<u64> =
                (0..config.m_observations).map(|_| rng.random()).collect();
            let channels = clean
                .channels()
                .iter()
                .zip(snrs.iter().zip(&noise_seeds))
                .map(|(ch, (&snr, &seed))| stage("noise", core::add_awgn(ch, snr, seed)))
                .collect::<Result<Vec<_>>>()?;
            stage("noise", ObservationSet::new(channels))?
        }
        None => clean,
    };
    lap(&mut timings, "noise");

    let mut cloud = stage("embed", core::embed(&observed, config.trim_fraction))?;
    if config.normalize {
        cloud = stage("normalize", core::normalize_unit_rms(&cloud))?;
    }
    let cloud = stage("decimate", core::decimate(&cloud, config.decimation_stride))?;
    lap(&mut timings, "embed");

    let tda = TdaConfig {
        landmarks: config.landmarks,
        first_landmark: 0,
        nu: config.nu,
        max_filtration: config.max_filtration,
        filtration_divisions: config.filtration_divisions,
        max_dimension: config.resolved_max_dimension(),
        persistence_fraction: config.persistence_fraction,
    };
    let (estimate, diagnostics) = stage("persistence", core::estimate_sources(&cloud, &tda))?;
    lap(&mut timings, "persistence");

    // A single channel has a 1x1 autocorrelation: no signal/noise subspace
    // split exists, so the eigenvalue baselines are reported as absent.
    let (mdl, aic) = if config.m_observations >= 2 {
        let (_, spectrum) = stage("baselines", core::sample_autocorrelation(&observed, true))?;
        (
            Some(stage("baselines", core::mdl_estimate(&spectrum))?),
            Some(stage("baselines", core::aic_estimate(&spectrum))?),
        )
    } else {
        (None, None)
    };
    lap(&mut timings, "baselines");

    let independence = core::independence_report(&system);

    Ok(Evaluation {
        estimate,
        diagnostics,
        mdl,
        aic,
        independence,
        timings,
    })
}

/// Runs the experiment and writes report.json, barcode.csv, and barcode.svg
/// into the output directory (`output_dir_override`, or the config's
/// `output_dir`).
pub fn run_experiment(
    config: &ExperimentConfig,
    output_dir_override: Option<&Path>,
) -> Result<RunOutcome> {
    let evaluation = evaluate(config)?;
    let out_dir = output_dir_override.unwrap_or(&config.output_dir);
    std::fs::create_dir_all(out_dir).map_err(|source| CliError::Io {
        action: "create",
        path: out_dir.to_path_buf(),
        source,
    })?;

    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io {
            action: "write",
            path,
            source,
        }
    };
    let write = |name: &str, contents: &str| -> Result<PathBuf> {
        let path = out_dir.join(name);
        std::fs::write(&path, contents).map_err(io_err(&path))?;
        Ok(path)
    };
    // barcodes can run to millions of intervals, so stream them to disk
    // instead of materializing the serialized form in memory
    let stream = |name: &str,
                  emit: &dyn Fn(&mut BufWriter<File>) -> std::io::Result<()>|
     -> Result<()> {
        let path = out_dir.join(name);
        let file = File::create(&path).map_err(io_err(&path))?;
        let mut w = BufWriter::new(file);
        emit(&mut w).and_then(|()| w.flush()).map_err(io_err(&path))
    };

    let barcode = &evaluation.diagnostics.barcode;
    stream("barcode.csv", &|w| barcode.write_csv(w))?;
    stream("barcode.svg", &|w| {
        barcode.write_svg(config.persistence_fraction, w)
    })?;

    let report = RunReport {
        schema_version: REPORT_SCHEMA_VERSION,
        config: config.clone(),
        estimate: evaluation.estimate.to_record(
            config.persistence_fraction,
            evaluation.diagnostics.landmark_count,
            config.seed,
        ),
        mdl: evaluation.mdl,
        aic: evaluation.aic,
        independence: evaluation.independence,
        barcode_csv: "barcode.csv".into(),
        barcode_svg: "barcode.svg".into(),
    };
    let mut json = serde_json::to_string_pretty(&report)
        .expect("report serialization cannot fail");
    json.push('\n');
    let report_path = write("report.json", &json)?;

    Ok(RunOutcome {
        report,
        report_path,
        timings: evaluation.timings,
    })
}
