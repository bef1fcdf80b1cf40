//! Array observation model: per-element magnitude/phase mixing of analytic
//! sources, the real realization matrix, its complex dual, and numerical
//! rank diagnostics.

use crate::error::{Error, Result};
use crate::signals::{AnalyticPair, SampledSignal};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use serde::Serialize;

/// The complex m-by-n dual of a mixing system's realization matrix, with
/// entries `R * exp(i*phi)`.
pub type ComplexDual = DMatrix<Complex64>;

/// Relative singular values below `max_dim * sigma_max * RANK_EPS` count as
/// zero when computing numerical ranks.
const RANK_EPS: f64 = 1e-10;

/// Mixing model for an m-element array observing n sources: each source
/// arrives at each element scaled by a magnitude `R` and rotated by a
/// phase `phi`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingSystem {
    magnitudes: DMatrix<f64>,
    phases: DMatrix<f64>,
}

impl MixingSystem {
    /// Build from m-by-n magnitude and phase matrices. Magnitudes must be
    /// positive, phases within `[-pi, pi]`.
    pub fn new(magnitudes: DMatrix<f64>, phases: DMatrix<f64>) -> Result<Self> {
        if magnitudes.shape() != phases.shape() {
            return Err(Error::DimensionMismatch(format!(
                "magnitude matrix is {:?} but phase matrix is {:?}",
                magnitudes.shape(),
                phases.shape()
            )));
        }
        if magnitudes.nrows() == 0 || magnitudes.ncols() == 0 {
            return Err(Error::InvalidParam(
                "mixing system needs at least one source and one observation".into(),
            ));
        }
        if magnitudes.iter().any(|&r| !(r > 0.0) || !r.is_finite()) {
            return Err(Error::InvalidParam(
                "all mixing magnitudes must be positive and finite".into(),
            ));
        }
        if phases
            .iter()
            .any(|&p| !(-std::f64::consts::PI..=std::f64::consts::PI).contains(&p))
        {
            return Err(Error::InvalidParam(
                "all mixing phases must lie in [-pi, pi]".into(),
            ));
        }
        Ok(Self { magnitudes, phases })
    }

    pub fn n_sources(&self) -> usize {
        self.magnitudes.ncols()
    }

    pub fn m_observations(&self) -> usize {
        self.magnitudes.nrows()
    }

    pub fn magnitudes(&self) -> &DMatrix<f64> {
        &self.magnitudes
    }

    pub fn phases(&self) -> &DMatrix<f64> {
        &self.phases
    }

    /// The 2m-by-2n real matrix mapping interleaved source pairs
    /// `(x_j, x~_j)` to interleaved observation pairs `(y_i, y~_i)`.
    /// Block (i, j) is `[[R cos phi, -R sin phi], [R sin phi, R cos phi]]`.
    pub fn realization_matrix(&self) -> DMatrix<f64> {
        let (m, n) = self.magnitudes.shape();
        let mut t = DMatrix::zeros(2 * m, 2 * n);
        for i in 0..m {
            for j in 0..n {
                let r = self.magnitudes[(i, j)];
                let (sin, cos) = self.phases[(i, j)].sin_cos();
                t[(2 * i, 2 * j)] = r * cos;
                t[(2 * i, 2 * j + 1)] = -r * sin;
                t[(2 * i + 1, 2 * j)] = r * sin;
                t[(2 * i + 1, 2 * j + 1)] = r * cos;
            }
        }
        t
    }

    /// The m-by-n complex matrix with the 2x2 rotation-scaling blocks of the
    /// realization matrix collapsed to `R * exp(i*phi)` entries.
    pub fn complex_dual(&self) -> ComplexDual {
        let (m, n) = self.magnitudes.shape();
        DMatrix::from_fn(m, n, |i, j| {
            Complex64::from_polar(self.magnitudes[(i, j)], self.phases[(i, j)])
        })
    }
}

/// Set of m simultaneously observed channels with shared length and rate.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationSet {
    channels: Vec<SampledSignal>,
}

impl ObservationSet {
    pub fn new(channels: Vec<SampledSignal>) -> Result<Self> {
        let first = channels
            .first()
            .ok_or_else(|| Error::InvalidParam("observation set must be non-empty".into()))?;
        let (len, rate) = (first.len(), first.sample_rate_hz());
        for ch in &channels {
            if ch.len() != len || ch.sample_rate_hz() != rate {
                return Err(Error::DimensionMismatch(
                    "all observation channels must share length and sample rate".into(),
                ));
            }
        }
        Ok(Self { channels })
    }

    pub fn channels(&self) -> &[SampledSignal] {
        &self.channels
    }

    pub fn n_channels(&self) -> usize {
        self.channels.len()
    }

    pub fn n_samples(&self) -> usize {
        self.channels[0].len()
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.channels[0].sample_rate_hz()
    }
}

/// Numerical rank diagnostics for a mixing system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndependenceReport {
    /// Numerical rank of the complex dual matrix.
    pub dual_rank: usize,
    /// Numerical rank of the real realization matrix.
    pub t_rank: usize,
    /// Ratio of largest to smallest singular value of the dual
    /// (infinite when rank deficient).
    pub condition_number: f64,
    /// Whether the dual has full column rank, i.e. the embedding preserves
    /// the source topology.
    pub full_column_rank: bool,
}

/// Draw a mixing system with magnitudes uniform in `[lo, hi]` and phases
/// uniform in `[-pi, pi]`, deterministic for a fixed seed.
pub fn random_mixing(
    n_sources: usize,
    m_observations: usize,
    r_range: (f64, f64),
    rng_seed: u64,
) -> Result<MixingSystem> {
    let (lo, hi) = r_range;
    if !(lo > 0.0) || !(lo <= hi) || !hi.is_finite() {
        return Err(Error::InvalidRange { lo, hi });
    }
    if n_sources == 0 || m_observations == 0 {
        return Err(Error::InvalidParam(
            "source and observation counts must be positive".into(),
        ));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(rng_seed);
    let mut magnitudes = DMatrix::zeros(m_observations, n_sources);
    let mut phases = DMatrix::zeros(m_observations, n_sources);
    for i in 0..m_observations {
        for j in 0..n_sources {
            magnitudes[(i, j)] = rng.random_range(lo..=hi);
            phases[(i, j)] = rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI);
        }
    }
    MixingSystem::new(magnitudes, phases)
}

/// Produce the m observation channels from n analytic source pairs via the
/// angle-sum expansion: channel i is
/// `sum_j R_ij cos(phi_ij) x_j - R_ij sin(phi_ij) x~_j`.
pub fn mix(system: &MixingSystem, sources: &[AnalyticPair]) -> Result<ObservationSet> {
    if sources.len() != system.n_sources() {
        return Err(Error::DimensionMismatch(format!(
            "system mixes {} sources but {} were supplied",
            system.n_sources(),
            sources.len()
        )));
    }
    let len = sources[0].len();
    let rate = sources[0].in_phase().sample_rate_hz();
    if sources
        .iter()
        .any(|s| s.len() != len || s.in_phase().sample_rate_hz() != rate)
    {
        return Err(Error::DimensionMismatch(
            "all sources must share length and sample rate".into(),
        ));
    }

    let mut channels = Vec::with_capacity(system.m_observations());
    for i in 0..system.m_observations() {
        let mut acc = vec![0.0; len];
        for (j, source) in sources.iter().enumerate() {
            let r = system.magnitudes[(i, j)];
            let (sin, cos) = system.phases[(i, j)].sin_cos();
            let x = source.in_phase().samples();
            let xq = source.quadrature().samples();
            for k in 0..len {
                acc[k] += r * cos * x[k] - r * sin * xq[k];
            }
        }
        channels.push(SampledSignal::new(acc, rate)?);
    }
    ObservationSet::new(channels)
}

fn numerical_rank(singular_values: &[f64], max_dim: usize) -> usize {
    let sigma_max = singular_values.iter().cloned().fold(0.0, f64::max);
    if sigma_max <= 0.0 {
        return 0;
    }
    let threshold = max_dim as f64 * sigma_max * RANK_EPS;
    singular_values.iter().filter(|&&s| s > threshold).count()
}

/// Rank diagnostics over the realization matrix and its complex dual,
/// computed from singular values with a relative machine-precision cutoff.
pub fn independence_report(system: &MixingSystem) -> IndependenceReport {
    let dual = system.complex_dual();
    let t = system.realization_matrix();

    let dual_svals: Vec<f64> = dual.singular_values().iter().cloned().collect();
    let t_svals: Vec<f64> = t.singular_values().iter().cloned().collect();

    let dual_rank = numerical_rank(&dual_svals, dual.nrows().max(dual.ncols()));
    let t_rank = numerical_rank(&t_svals, t.nrows().max(t.ncols()));

    let sigma_max = dual_svals.iter().cloned().fold(0.0, f64::max);
    let sigma_min = dual_svals.iter().cloned().fold(f64::INFINITY, f64::min);
    let threshold = dual.nrows().max(dual.ncols()) as f64 * sigma_max * RANK_EPS;
    let condition_number = if sigma_min > threshold && sigma_min > 0.0 {
        sigma_max / sigma_min
    } else {
        f64::INFINITY
    };

    IndependenceReport {
        dual_rank,
        t_rank,
        condition_number,
        full_column_rank: dual_rank == system.n_sources(),
    }
}
