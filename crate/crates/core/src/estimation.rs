//! Betti number extraction from barcodes and matching against binomial
//! sequences. A mixture of n constant-amplitude monocomponents embeds onto
//! an n-torus, whose Betti numbers are the coefficients of (1+q)^n; the
//! matched n is the source count estimate.

use crate::embedding::PointCloud;
use crate::error::{Error, Result};
use crate::persistence::{
    lazy_witness_complex, maxmin_landmarks, reduce_and_extract, Barcode, WitnessConfig,
};
use serde::Serialize;
use std::time::Instant;

/// Betti numbers read off a barcode, index d counting the dominant
/// dimension-d features. Carries the filtration ceiling for context.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BettiSequence {
    pub betti: Vec<usize>,
    pub max_filtration: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EstimateStatus {
    /// Betti sequence matched (1+q)^n exactly.
    Match(usize),
    /// Plausible start (betti_0 = 1) but no binomial row fits.
    NoMatch,
    /// betti_0 != 1: the portrait is disconnected or empty, so the
    /// torus model does not apply at all.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SourceCountEstimate {
    pub status: EstimateStatus,
    pub betti_observed: BettiSequence,
    /// The binomial row the observation was compared against, when one
    /// could be determined.
    pub betti_expected: Option<Vec<usize>>,
}

impl SourceCountEstimate {
    pub fn matched_count(&self) -> Option<usize> {
        match self.status {
            EstimateStatus::Match(n) => Some(n),
            _ => None,
        }
    }

    /// Flat serialization record for reports.
    pub fn to_record(
        &self,
        persistence_fraction: f64,
        landmarks: usize,
        seed: u64,
    ) -> EstimateRecord {
        EstimateRecord {
            status: match self.status {
                EstimateStatus::Match(_) => "match",
                EstimateStatus::NoMatch => "no_match",
                EstimateStatus::Degenerate => "degenerate",
            },
            n: self.matched_count(),
            betti_observed: self.betti_observed.betti.clone(),
            betti_expected: self.betti_expected.clone(),
            persistence_fraction,
            landmarks,
            max_filtration: self.betti_observed.max_filtration,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateRecord {
    pub status: &'static str,
    pub n: Option<usize>,
    pub betti_observed: Vec<usize>,
    pub betti_expected: Option<Vec<usize>>,
    pub persistence_fraction: f64,
    pub landmarks: usize,
    pub max_filtration: f64,
    pub seed: u64,
}

/// Counts, per dimension, the intervals whose length reaches
/// `persistence_fraction` of the filtration ceiling. Infinite intervals
/// count with death equal to the ceiling.
pub fn extract_betti(barcode: &Barcode, persistence_fraction: f64) -> Result<BettiSequence> {
    if !(persistence_fraction > 0.0 && persistence_fraction <= 1.0) {
        return Err(Error::InvalidFraction(persistence_fraction));
    }
    let threshold = persistence_fraction * barcode.max_filtration();
    let betti = barcode
        .dims()
        .iter()
        .map(|intervals| {
            intervals.iter().filter(|iv| iv.length() >= threshold).count()
        })
        .collect();
    Ok(BettiSequence {
        betti,
        max_filtration: barcode.max_filtration(),
    })
}

/// Largest n whose binomial row still fits in usize arithmetic; observed
/// Betti numbers far below this in any workable configuration.
const MAX_MATCHABLE_N: usize = 64;

pub fn binomial_row(n: usize) -> Vec<usize> {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(1);
        for w in row.windows(2) {
            next.push(w[0] + w[1]);
        }
        next.push(1);
        row = next;
    }
    row
}

/// Matches a Betti sequence to a row of Pascal's triangle. Trailing zeros
/// are ignored; betti_1 pins the only candidate n, so the check is exact.
/// A bare {1} is a contractible portrait: zero sources.
pub fn match_binomial(seq: &BettiSequence) -> SourceCountEstimate {
    let stripped: &[usize] = {
        let mut end = seq.betti.len();
        while end > 0 && seq.betti[end - 1] == 0 {
            end -= 1;
        }
        &seq.betti[..end]
    };

    let (status, expected) = if stripped.is_empty() || stripped[0] != 1 {
        (EstimateStatus::Degenerate, None)
    } else if stripped == [1] {
        (EstimateStatus::Match(0), Some(vec![1]))
    } else {
        let n = stripped[1];
        if n > MAX_MATCHABLE_N {
            (EstimateStatus::NoMatch, None)
        } else {
            let row = binomial_row(n);
            if stripped == row.as_slice() {
                (EstimateStatus::Match(n), Some(row))
            } else {
                (EstimateStatus::NoMatch, Some(row))
            }
        }
    };
    SourceCountEstimate {
        status,
        betti_observed: seq.clone(),
        betti_expected: expected,
    }
}

/// Pipeline parameters for the topological estimate.
///
/// `max_dimension` is the highest homology dimension reported; the witness
/// complex is built one dimension higher so that boundaries of top simplices
/// are available and the top reported rank is trustworthy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TdaConfig {
    pub landmarks: usize,
    pub first_landmark: usize,
    pub nu: usize,
    pub max_filtration: f64,
    pub filtration_divisions: Option<usize>,
    pub max_dimension: usize,
    pub persistence_fraction: f64,
}

impl Default for TdaConfig {
    fn default() -> Self {
        Self {
            landmarks: 100,
            first_landmark: 0,
            nu: 1,
            max_filtration: 0.24,
            filtration_divisions: Some(100),
            max_dimension: 4,
            persistence_fraction: 0.5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EstimateDiagnostics {
    pub barcode: Barcode,
    pub cover_radius: f64,
    pub landmark_count: usize,
    /// Wall-clock stage durations in seconds. Informational only; excluded
    /// from deterministic reports.
    pub timings: StageTimings,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct StageTimings {
    pub landmarks_s: f64,
    pub complex_s: f64,
    pub reduction_s: f64,
}

/// Full topological pipeline: landmark selection, witness complex,
/// reduction, Betti extraction, binomial matching.
pub fn estimate_sources(
    cloud: &PointCloud,
    config: &TdaConfig,
) -> Result<(SourceCountEstimate, EstimateDiagnostics)> {
    if !(config.persistence_fraction > 0.0 && config.persistence_fraction <= 1.0) {
        return Err(Error::InvalidFraction(config.persistence_fraction));
    }
    let mut timings = StageTimings::default();

    let t0 = Instant::now();
    let landmarks = maxmin_landmarks(cloud, config.landmarks, config.first_landmark)?;
    timings.landmarks_s = t0.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let complex = lazy_witness_complex(
        cloud,
        &landmarks,
        &WitnessConfig {
            nu: config.nu,
            max_filtration: config.max_filtration,
            max_dimension: config.max_dimension + 1,
            divisions: config.filtration_divisions,
        },
    )?;
    timings.complex_s = t1.elapsed().as_secs_f64();

    let t2 = Instant::now();
    let barcode = reduce_and_extract(&complex)?;
    timings.reduction_s = t2.elapsed().as_secs_f64();

    let mut seq = extract_betti(&barcode, config.persistence_fraction)?;
    seq.betti.truncate(config.max_dimension + 1);
    let estimate = match_binomial(&seq);

    Ok((
        estimate,
        EstimateDiagnostics {
            barcode,
            cover_radius: landmarks.cover_radius(),
            landmark_count: landmarks.len(),
            timings,
        },
    ))
}
