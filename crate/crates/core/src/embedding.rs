//! Phase-portrait embedding: interleave each observation channel with its
//! Hilbert transform into a 2m-dimensional point cloud.

use crate::error::{Error, Result};
use crate::mixing::ObservationSet;
use crate::signals::{analytic_pair, trim_fraction};
use rayon::prelude::*;

/// Finite set of points in `R^D`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    data: Vec<f64>,
    dim: usize,
    provenance: String,
}

impl PointCloud {
    pub fn new(data: Vec<f64>, dim: usize, provenance: impl Into<String>) -> Result<Self> {
        if dim < 2 || dim % 2 != 0 {
            return Err(Error::DimensionMismatch(format!(
                "point dimension must be even and >= 2, got {dim}"
            )));
        }
        if data.is_empty() || data.len() % dim != 0 {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates do not form whole points of dimension {dim}",
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParam("coordinates must be finite".into()));
        }
        Ok(Self {
            data,
            dim,
            provenance: provenance.into(),
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(
                "all rows must have the same dimension".into(),
            ));
        }
        Self::new(rows.concat(), dim, "rows")
    }

    pub fn n_points(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Squared Euclidean distance between points `a` and `b`.
    pub fn dist_sq(&self, a: usize, b: usize) -> f64 {
        self.point(a)
            .iter()
            .zip(self.point(b))
            .map(|(x, y)| (x - y) * (x - y))
            .sum()
    }

    pub fn dist(&self, a: usize, b: usize) -> f64 {
        self.dist_sq(a, b).sqrt()
    }

    /// One point per row, full-precision coordinates, no header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for p in self.points() {
            let row: Vec<String> = p.iter().map(|v| format!("{v}")).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Embed m observation channels as the 2m-dimensional trajectory
/// `(y_1[k], y~_1[k], ..., y_m[k], y~_m[k])`: per channel, compute the
/// analytic pair, trim both components, then interleave in channel order.
pub fn embed(observations: &ObservationSet, trim: f64) -> Result<PointCloud> {
    let pairs: Vec<_> = observations
        .channels()
        .par_iter()
        .map(|ch| analytic_pair(ch).and_then(|p| trim_fraction(&p, trim)))
        .collect::<Result<_>>()?;

    let n = pairs[0].len();
    if n < 2 {
        return Err(Error::ResultEmpty);
    }
    let m = pairs.len();
    let dim = 2 * m;
    let mut data = vec![0.0; n * dim];
    for (i, pair) in pairs.iter().enumerate() {
        let x = pair.in_phase().samples();
        let xq = pair.quadrature().samples();
        for k in 0..n {
            data[k * dim + 2 * i] = x[k];
            data[k * dim + 2 * i + 1] = xq[k];
        }
    }
    PointCloud::new(
        data,
        dim,
        format!("embedded {} channels, trim {trim}", m),
    )
}

/// Keep every `stride`-th point, preserving order.
pub fn decimate(cloud: &PointCloud, stride: usize) -> Result<PointCloud> {
    if stride == 0 {
        return Err(Error::InvalidStride);
    }
    if stride == 1 {
        return Ok(cloud.clone());
    }
    let mut data = Vec::with_capacity((cloud.n_points() / stride + 1) * cloud.dim());
    for i in (0..cloud.n_points()).step_by(stride) {
        data.extend_from_slice(cloud.point(i));
    }
    PointCloud::new(
        data,
        cloud.dim(),
        format!("{} | stride {stride}", cloud.provenance()),
    )
}

/// Rescale each coordinate pair `(2t, 2t+1)` so the root-mean-square radius
/// of that pair over all points is 1. Pairs with zero radius are left alone.
pub fn normalize_unit_rms(cloud: &PointCloud) -> Result<PointCloud> {
    let n = cloud.n_points();
    let dim = cloud.dim();
    let mut scales = vec![1.0; dim / 2];
    for (t, scale) in scales.iter_mut().enumerate() {
        let mean_sq: f64 = cloud
            .points()
            .map(|p| p[2 * t] * p[2 * t] + p[2 * t + 1] * p[2 * t + 1])
            .sum::<f64>()
            / n as f64;
        if mean_sq > 0.0 {
            *scale = 1.0 / mean_sq.sqrt();
        }
    }
    let mut data = Vec::with_capacity(n * dim);
    for p in cloud.points() {
        for (c, &v) in p.iter().enumerate() {
            data.push(v * scales[c / 2]);
        }
    }
    PointCloud::new(
        data,
        dim,
        format!("{} | unit-rms", cloud.provenance()),
    )
}
