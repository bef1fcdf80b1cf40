//! Constant-amplitude monocomponent synthesis, discrete Hilbert transforms
//! and edge trimming.

use crate::error::{Error, Result};
use rand::SeedableRng;
use rand_distr::{Distribution, Normal};
use rustfft::{num_complex::Complex, FftPlanner};

/// Real discrete-time signal together with its sample rate.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    samples: Vec<f64>,
    sample_rate_hz: f64,
}

impl SampledSignal {
    pub fn new(samples: Vec<f64>, sample_rate_hz: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidParam("signal must be non-empty".into()));
        }
        if !(sample_rate_hz > 0.0) || !sample_rate_hz.is_finite() {
            return Err(Error::InvalidParam(format!(
                "sample rate must be positive, got {sample_rate_hz}"
            )));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParam("samples must be finite".into()));
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Mean square of the samples.
    pub fn power(&self) -> f64 {
        self.samples.iter().map(|v| v * v).sum::<f64>() / self.samples.len() as f64
    }
}

/// Instantaneous-frequency trajectory of a monocomponent source.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind {
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

/// Phase trajectory for synthesis: a frequency law over `[0, duration_s]`
/// plus an initial phase. The induced phase function is continuous because
/// it is accumulated by trapezoidal integration of the frequency law.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile {
    pub kind: ProfileKind,
    pub initial_phase_rad: f64,
    pub duration_s: f64,
}

impl PhaseProfile {
    /// Frequency law at time `t` (seconds). Times beyond `duration_s` hold the
    /// final frequency rather than extrapolating.
    pub fn instantaneous_freq_hz(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, self.duration_s);
        match self.kind {
            ProfileKind::ConstantTone { f_hz } => f_hz,
            ProfileKind::LinearChirp {
                f_start_hz,
                f_end_hz,
            } => {
                if self.duration_s > 0.0 {
                    f_start_hz + (f_end_hz - f_start_hz) * t / self.duration_s
                } else {
                    f_start_hz
                }
            }
            ProfileKind::SinusoidalSweep {
                f_center_hz,
                f_dev_hz,
                sweep_rate_hz,
            } => f_center_hz + f_dev_hz * (2.0 * std::f64::consts::PI * sweep_rate_hz * t).sin(),
        }
    }
}

/// A signal paired with its quadrature (Hilbert-transformed) companion.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticPair {
    in_phase: SampledSignal,
    quadrature: SampledSignal,
}

impl AnalyticPair {
    pub fn new(in_phase: SampledSignal, quadrature: SampledSignal) -> Result<Self> {
        if in_phase.len() != quadrature.len() {
            return Err(Error::DimensionMismatch(format!(
                "analytic pair components differ in length: {} vs {}",
                in_phase.len(),
                quadrature.len()
            )));
        }
        if in_phase.sample_rate_hz() != quadrature.sample_rate_hz() {
            return Err(Error::DimensionMismatch(
                "analytic pair components differ in sample rate".into(),
            ));
        }
        Ok(Self {
            in_phase,
            quadrature,
        })
    }

    pub fn in_phase(&self) -> &SampledSignal {
        &self.in_phase
    }

    pub fn quadrature(&self) -> &SampledSignal {
        &self.quadrature
    }

    pub fn len(&self) -> usize {
        self.in_phase.len()
    }

    pub fn is_empty(&self) -> bool {
        self.in_phase.is_empty()
    }
}

/// Synthesize `amplitude * cos(alpha[k])` where `alpha` is the cumulative
/// phase of the profile's frequency law, starting at `initial_phase_rad`.
///
/// The frequency law must stay inside the open band `(0, sample_rate/2)` at
/// every sample instant.
pub fn synthesize(
    profile: &PhaseProfile,
    amplitude: f64,
    sample_rate_hz: f64,
    n_samples: usize,
) -> Result<SampledSignal> {
    if !(amplitude > 0.0) || !amplitude.is_finite() {
        return Err(Error::InvalidParam(format!(
            "amplitude must be positive, got {amplitude}"
        )));
    }
    if !(sample_rate_hz > 0.0) || !sample_rate_hz.is_finite() {
        return Err(Error::InvalidParam(format!(
            "sample rate must be positive, got {sample_rate_hz}"
        )));
    }
    if n_samples == 0 {
        return Err(Error::InvalidParam("n_samples must be positive".into()));
    }

    let dt = 1.0 / sample_rate_hz;
    let nyquist = sample_rate_hz / 2.0;
    let freqs: Vec<f64> = (0..n_samples)
        .map(|k| profile.instantaneous_freq_hz(k as f64 * dt))
        .collect();
    for &f in &freqs {
        if !(f > 0.0) || f >= nyquist {
            return Err(Error::NyquistViolation {
                freq_hz: f,
                nyquist_hz: nyquist,
            });
        }
    }

    // alpha[k] = alpha[k-1] + 2*pi*dt*(f[k-1]+f[k])/2, trapezoidal rule.
    let mut samples = Vec::with_capacity(n_samples);
    let mut alpha = profile.initial_phase_rad;
    samples.push(amplitude * alpha.cos());
    for k in 1..n_samples {
        alpha += std::f64::consts::PI * dt * (freqs[k - 1] + freqs[k]);
        samples.push(amplitude * alpha.cos());
    }
    SampledSignal::new(samples, sample_rate_hz)
}

/// Pair `x` with its discrete Hilbert transform.
///
/// The quadrature component is built in the frequency domain over the full
/// signal length: forward transform, one-sided spectrum doubling (DC and
/// Nyquist bins untouched, negative frequencies zeroed), inverse transform.
/// The imaginary part of the resulting analytic signal is the transform.
pub fn analytic_pair(x: &SampledSignal) -> Result<AnalyticPair> {
    let n = x.len();
    if n < 8 {
        return Err(Error::SignalTooShort { len: n, min: 8 });
    }

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    let ifft = planner.plan_fft_inverse(n);

    let mut buf: Vec<Complex<f64>> = x
        .samples()
        .iter()
        .map(|&v| Complex::new(v, 0.0))
        .collect();
    fft.process(&mut buf);

    let half = n / 2;
    for (k, value) in buf.iter_mut().enumerate() {
        if k == 0 || (n % 2 == 0 && k == half) {
            // DC and Nyquist stay
        } else if k < half || (n % 2 == 1 && k == half) {
            *value *= 2.0;
        } else {
            *value = Complex::new(0.0, 0.0);
        }
    }

    ifft.process(&mut buf);
    let scale = 1.0 / n as f64;
    let quadrature: Vec<f64> = buf.iter().map(|c| c.im * scale).collect();

    AnalyticPair::new(
        x.clone(),
        SampledSignal::new(quadrature, x.sample_rate_hz())?,
    )
}

/// Drop `floor(fraction * N)` samples from each end of both components.
pub fn trim_fraction(pair: &AnalyticPair, fraction: f64) -> Result<AnalyticPair> {
    if !(0.0..0.5).contains(&fraction) {
        return Err(Error::InvalidFraction(fraction));
    }
    let n = pair.len();
    let cut = (fraction * n as f64).floor() as usize;
    if n < 2 * cut + 2 {
        return Err(Error::ResultEmpty);
    }
    let slice = |s: &SampledSignal| {
        SampledSignal::new(s.samples()[cut..n - cut].to_vec(), s.sample_rate_hz())
    };
    AnalyticPair::new(slice(pair.in_phase())?, slice(pair.quadrature())?)
}

/// Add zero-mean white Gaussian noise scaled so that
/// `signal_power / noise_variance = 10^(snr_db/10)`, measured against the
/// empirical power of `x`. An infinite `snr_db` disables the noise entirely.
/// The same seed always produces the same noise.
pub fn add_awgn(x: &SampledSignal, snr_db: f64, rng_seed: u64) -> Result<SampledSignal> {
    if snr_db.is_infinite() && snr_db > 0.0 {
        return Ok(x.clone());
    }
    let power = x.power();
    if power <= 0.0 {
        return Err(Error::ZeroPowerSignal);
    }
    let variance = power / 10f64.powf(snr_db / 10.0);
    let normal = Normal::new(0.0, variance.sqrt())
        .map_err(|e| Error::InvalidParam(format!("bad noise distribution: {e}")))?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(rng_seed);
    let samples = x
        .samples()
        .iter()
        .map(|&v| v + normal.sample(&mut rng))
        .collect();
    SampledSignal::new(samples, x.sample_rate_hz())
}
