use crate::embedding::PointCloud;
use crate::error::{Error, Result};

/// Landmark indices into a point cloud, plus the cover radius they achieve
/// (the largest distance from any point to its nearest landmark).
#[derive(Debug, Clone, PartialEq)]
pub struct LandmarkSet {
    indices: Vec<usize>,
    cover_radius: f64,
}

impl LandmarkSet {
    /// Adopts an explicit landmark choice, computing the cover radius it
    /// achieves over the cloud. Indices must be distinct and in range.
    pub fn from_indices(cloud: &PointCloud, indices: Vec<usize>) -> Result<Self> {
        let n = cloud.n_points();
        if indices.is_empty() {
            return Err(Error::InvalidParam("landmark set is empty".into()));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidParam(format!(
                "landmark index {bad} out of range for {n} points"
            )));
        }
        let mut seen = indices.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParam("duplicate landmark index".into()));
        }
        let mut worst_sq = 0.0f64;
        for i in 0..n {
            let near = indices
                .iter()
                .map(|&l| cloud.dist_sq(i, l))
                .fold(f64::INFINITY, f64::min);
            worst_sq = worst_sq.max(near);
        }
        Ok(Self {
            indices,
            cover_radius: worst_sq.sqrt(),
        })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn cover_radius(&self) -> f64 {
        self.cover_radius
    }
}

/// Greedy farthest-point landmark selection. Starting from `first_index`,
/// each round adds the point farthest from the landmarks chosen so far.
/// Distance ties pick the lowest point index, so the result depends only on
/// the cloud and the seed index.
pub fn maxmin_landmarks(
    cloud: &PointCloud,
    count: usize,
    first_index: usize,
) -> Result<LandmarkSet> {
    let n = cloud.n_points();
    if count == 0 {
        return Err(Error::InvalidParam("landmark count must be positive".into()));
    }
    if count > n {
        return Err(Error::TooManyLandmarks {
            requested: count,
            available: n,
        });
    }
    if first_index >= n {
        return Err(Error::InvalidParam(format!(
            "first landmark index {first_index} out of range for {n} points"
        )));
    }

    let mut indices = Vec::with_capacity(count);
    indices.push(first_index);
    // Squared distance from each point to its nearest chosen landmark.
    let mut nearest_sq: Vec<f64> = (0..n).map(|i| cloud.dist_sq(i, first_index)).collect();

    while indices.len() < count {
        let mut best = 0usize;
        let mut best_sq = f64::NEG_INFINITY;
        for (i, &d) in nearest_sq.iter().enumerate() {
            if d > best_sq {
                best_sq = d;
                best = i;
            }
        }
        indices.push(best);
        for (i, d) in nearest_sq.iter_mut().enumerate() {
            let cand = cloud.dist_sq(i, best);
            if cand < *d {
                *d = cand;
            }
        }
    }

    let cover_radius = nearest_sq.iter().fold(0.0f64, |a, &b| a.max(b)).sqrt();
    Ok(LandmarkSet {
        indices,
        cover_radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_cloud(xs: &[f64]) -> PointCloud {
        let rows: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x, 0.0]).collect();
        PointCloud::from_rows(&rows).unwrap()
    }

    #[test]
    fn second_landmark_is_farthest_point() {
        let cloud = line_cloud(&[0.0, 1.0, 10.0]);
        let lm = maxmin_landmarks(&cloud, 2, 0).unwrap();
        assert_eq!(lm.indices(), &[0, 2]);
        // remaining point at x=1 sits distance 1 from landmark 0
        assert!((lm.cover_radius() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ties_resolve_to_lowest_index() {
        // points at -1 and +1 are equidistant from the seed at 0
        let cloud = line_cloud(&[0.0, -1.0, 1.0]);
        let lm = maxmin_landmarks(&cloud, 2, 0).unwrap();
        assert_eq!(lm.indices(), &[0, 1]);
    }

    #[test]
    fn all_points_selected_gives_zero_cover() {
        let cloud = line_cloud(&[0.0, 2.0, 5.0]);
        let lm = maxmin_landmarks(&cloud, 3, 1).unwrap();
        assert_eq!(lm.len(), 3);
        assert_eq!(lm.cover_radius(), 0.0);
        let mut sorted = lm.indices().to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2]);
    }

    #[test]
    fn rejects_bad_counts_and_seeds() {
        let cloud = line_cloud(&[0.0, 1.0]);
        assert!(matches!(
            maxmin_landmarks(&cloud, 3, 0),
            Err(Error::TooManyLandmarks { .. })
        ));
        assert!(maxmin_landmarks(&cloud, 0, 0).is_err());
        assert!(maxmin_landmarks(&cloud, 1, 5).is_err());
    }

    #[test]
    fn cover_radius_matches_exhaustive_recomputation() {
        let rows: Vec<Vec<f64>> = (0..200)
            .map(|i| {
                let t = i as f64 * 0.37;
                vec![t.cos() * (1.0 + 0.01 * (i as f64)), t.sin()]
            })
            .collect();
        let cloud = PointCloud::from_rows(&rows).unwrap();
        let lm = maxmin_landmarks(&cloud, 15, 3).unwrap();
        let mut worst = 0.0f64;
        for i in 0..cloud.n_points() {
            let near = lm
                .indices()
                .iter()
                .map(|&l| cloud.dist(i, l))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(near);
        }
        assert!((worst - lm.cover_radius()).abs() < 1e-12);
    }
}
