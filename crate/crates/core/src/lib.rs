//! Topological source counting for linear mixtures of constant-amplitude
//! monocomponent signals.
//!
//! The pipeline: synthesize or ingest per-channel observations, pair each
//! channel with its quadrature via the discrete Hilbert transform, embed the
//! channels as a phase portrait in R^(2m), and read off how many sources are
//! present from the persistent homology of that portrait. A mixture of n
//! well-separated monocomponents traces a dense path on an n-torus, so the
//! persistent Betti numbers match the coefficients of (1+q)^n; the matched n
//! is the estimate. MDL and AIC eigenvalue estimators are included for
//! comparison.
//!
//! ```
//! use topocount_core::{
//!     embed, estimate_sources, synthesize, EstimateStatus, ObservationSet,
//!     PhaseProfile, ProfileKind, TdaConfig,
//! };
//!
//! let profile = PhaseProfile {
//!     kind: ProfileKind::ConstantTone { f_hz: 50.0 },
//!     initial_phase_rad: 0.0,
//!     duration_s: 1.0,
//! };
//! let tone = synthesize(&profile, 1.0, 2000.0, 2000).unwrap();
//! let obs = ObservationSet::new(vec![tone]).unwrap();
//! let cloud = embed(&obs, 0.1).unwrap();
//! let config = TdaConfig {
//!     landmarks: 40,
//!     max_filtration: 1.2,
//!     max_dimension: 2,
//!     ..TdaConfig::default()
//! };
//! let (estimate, _) = estimate_sources(&cloud, &config).unwrap();
//! assert_eq!(estimate.status, EstimateStatus::Match(1));
//! ```

pub mod baselines;
pub mod embedding;
pub mod error;
pub mod estimation;
pub mod mixing;
pub mod persistence;
pub mod signals;

pub use baselines::{
    aic_estimate, autocorrelation_from_snapshots, mdl_estimate, sample_autocorrelation,
    EigenSpectrum,
};
pub use embedding::{decimate, embed, normalize_unit_rms, PointCloud};
pub use error::{Error, Result};
pub use estimation::{
    binomial_row, estimate_sources, extract_betti, match_binomial, BettiSequence,
    EstimateDiagnostics, EstimateRecord, EstimateStatus, SourceCountEstimate, StageTimings,
    TdaConfig,
};
pub use mixing::{
    independence_report, mix, random_mixing, ComplexDual, IndependenceReport, MixingSystem,
    ObservationSet,
};
pub use persistence::{
    lazy_witness_complex, maxmin_landmarks, reduce_and_extract, Barcode, FilteredComplex,
    Interval, LandmarkSet, Simplex, WitnessConfig,
};
pub use signals::{
    add_awgn, analytic_pair, synthesize, trim_fraction, AnalyticPair, PhaseProfile, ProfileKind,
    SampledSignal,
};
