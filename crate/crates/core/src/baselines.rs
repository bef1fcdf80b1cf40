//! Information-theoretic source-count baselines. Both estimators follow
//! Wax & Kailath, "Detection of signals by information theoretic criteria",
//! IEEE Trans. ASSP 33(2), 1985: the log-likelihood term measures how far
//! the m-k smallest autocorrelation eigenvalues are from being equal, and a
//! model-complexity penalty picks the subspace dimension.

use crate::error::{Error, Result};
use crate::mixing::ObservationSet;
use crate::signals::analytic_pair;
use nalgebra::{Complex, DMatrix};

type Complex64 = Complex<f64>;

/// Eigenvalues of a sample autocorrelation matrix, descending, with the
/// snapshot count that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpectrum {
    eigenvalues: Vec<f64>,
    n_snapshots: usize,
}

impl EigenSpectrum {
    /// Sorts descending. Small negative values (roundoff from an almost
    /// rank-deficient matrix) clamp to zero; genuinely negative input is
    /// rejected.
    pub fn new(mut eigenvalues: Vec<f64>, n_snapshots: usize) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::InvalidParam("empty eigenvalue list".into()));
        }
        if n_snapshots == 0 {
            return Err(Error::InvalidParam("snapshot count must be positive".into()));
        }
        if eigenvalues.iter().any(|l| !l.is_finite()) {
            return Err(Error::InvalidParam("non-finite eigenvalue".into()));
        }
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        let scale = eigenvalues[0].max(0.0);
        for l in &mut eigenvalues {
            if *l < 0.0 {
                if *l < -scale * 1e-8 {
                    return Err(Error::InvalidParam(format!(
                        "eigenvalue {l} negative beyond roundoff"
                    )));
                }
                *l = 0.0;
            }
        }
        Ok(Self {
            eigenvalues,
            n_snapshots,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn n_snapshots(&self) -> usize {
        self.n_snapshots
    }
}

/// Sample autocorrelation R = (1/N) sum v[k] v[k]^H from snapshot columns,
/// plus its eigenvalue spectrum.
pub fn autocorrelation_from_snapshots(
    snapshots: &DMatrix<Complex64>,
) -> Result<(DMatrix<Complex64>, EigenSpectrum)> {
    let m = snapshots.nrows();
    let n = snapshots.ncols();
    if m == 0 {
        return Err(Error::InvalidParam("no channels".into()));
    }
    if n < m {
        return Err(Error::TooFewSnapshots { got: n, min: m });
    }
    let mut r = snapshots * snapshots.adjoint();
    r /= Complex64::new(n as f64, 0.0);
    let eig = r.clone().symmetric_eigen();
    let spectrum = EigenSpectrum::new(eig.eigenvalues.iter().copied().collect(), n)?;
    Ok((r, spectrum))
}

/// Builds snapshots from an observation set and computes the sample
/// autocorrelation. With `use_analytic`, each snapshot is the complex
/// vector y + j*y_quadrature over the full record; otherwise snapshots are
/// the real samples. The analytic form is the default consumer: it keeps a
/// constant-amplitude source rank one instead of rank two.
pub fn sample_autocorrelation(
    observations: &ObservationSet,
    use_analytic: bool,
) -> Result<(DMatrix<Complex64>, EigenSpectrum)> {
    let m = observations.n_channels();
    let n = observations.n_samples();
    if n < m {
        return Err(Error::TooFewSnapshots { got: n, min: m });
    }
    let mut v = DMatrix::zeros(m, n);
    for (i, channel) in observations.channels().iter().enumerate() {
        if use_analytic {
            let pair = analytic_pair(channel)?;
            for k in 0..n {
                v[(i, k)] =
                    Complex64::new(pair.in_phase().samples()[k], pair.quadrature().samples()[k]);
            }
        } else {
            for k in 0..n {
                v[(i, k)] = Complex64::new(channel.samples()[k], 0.0);
            }
        }
    }
    autocorrelation_from_snapshots(&v)
}

/// Relative floor applied inside the likelihood logs so a rank-deficient
/// spectrum stays finite.
const EIGEN_CLAMP: f64 = 1e-12;

fn clamped(spectrum: &EigenSpectrum) -> Result<Vec<f64>> {
    let lmax = spectrum.eigenvalues()[0];
    if lmax <= 0.0 {
        return Err(Error::DegenerateSpectrum);
    }
    let floor = lmax * EIGEN_CLAMP;
    Ok(spectrum.eigenvalues().iter().map(|&l| l.max(floor)).collect())
}

/// -N(m-k) log(GM/AM) over the m-k smallest eigenvalues: zero when they are
/// all equal, growing as the tail spreads out.
fn log_likelihood(eigs: &[f64], n_snapshots: usize, k: usize) -> f64 {
    let tail = &eigs[k..];
    let p = tail.len() as f64;
    let log_gm = tail.iter().map(|l| l.ln()).sum::<f64>() / p;
    let am = tail.iter().sum::<f64>() / p;
    -(n_snapshots as f64) * p * (log_gm - am.ln())
}

fn argmin_criterion(spectrum: &EigenSpectrum, penalty: impl Fn(usize) -> f64) -> Result<usize> {
    let m = spectrum.eigenvalues().len();
    if m < 2 {
        return Err(Error::InvalidParam(
            "criterion needs at least two eigenvalues".into(),
        ));
    }
    let eigs = clamped(spectrum)?;
    let mut best = (0usize, f64::INFINITY);
    for k in 0..m {
        let value = log_likelihood(&eigs, spectrum.n_snapshots(), k) + penalty(k);
        if value < best.1 {
            best = (k, value);
        }
    }
    Ok(best.0)
}

/// Minimum description length estimate of the signal subspace dimension.
pub fn mdl_estimate(spectrum: &EigenSpectrum) -> Result<usize> {
    let m = spectrum.eigenvalues().len() as f64;
    let n = spectrum.n_snapshots() as f64;
    argmin_criterion(spectrum, |k| {
        let k = k as f64;
        0.5 * k * (2.0 * m - k) * n.ln()
    })
}

/// Akaike information criterion estimate of the signal subspace dimension.
/// AIC(k) = 2L(k) + 2k(2m-k); halving the whole criterion keeps the argmin,
/// so the penalty passed down is k(2m-k) against a single L(k).
pub fn aic_estimate(spectrum: &EigenSpectrum) -> Result<usize> {
    let m = spectrum.eigenvalues().len() as f64;
    argmin_criterion(spectrum, |k| {
        let k = k as f64;
        k * (2.0 * m - k)
    })
}
