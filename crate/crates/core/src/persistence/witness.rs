use super::{FilteredComplex, LandmarkSet, Simplex, VertexList};
use crate::embedding::PointCloud;
use crate::error::{Error, Result};
use rayon::prelude::*;

/// Parameters for lazy witness complex construction.
///
/// `nu` selects the witness relaxation: a witness contributes slack equal to
/// the distance to its `nu`-th nearest landmark (zero when `nu` is 0).
/// `max_dimension` caps the dimension of simplices built by clique
/// expansion. `divisions`, when set, snaps every filtration value up to the
/// next multiple of `max_filtration / divisions`; `None` keeps exact values.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessConfig {
    pub nu: usize,
    pub max_filtration: f64,
    pub max_dimension: usize,
    pub divisions: Option<usize>,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        Self {
            nu: 1,
            max_filtration: 1.0,
            max_dimension: 2,
            divisions: Some(100),
        }
    }
}

/// Builds the lazy witness complex of a point cloud over the given
/// landmarks. Every point of the cloud acts as a witness. An edge {a, b}
/// enters the filtration at the smallest t such that some witness x
/// satisfies max(d(x,a), d(x,b)) <= t + m(x), where m(x) is the witness
/// slack; higher simplices enter when all their edges are present.
pub fn lazy_witness_complex(
    cloud: &PointCloud,
    landmarks: &LandmarkSet,
    config: &WitnessConfig,
) -> Result<FilteredComplex> {
    let n = cloud.n_points();
    let l = landmarks.len();
    if l == 0 {
        return Err(Error::InvalidParam("landmark set is empty".into()));
    }
    if config.nu > l {
        return Err(Error::InvalidParam(format!(
            "witness relaxation {} exceeds landmark count {l}",
            config.nu
        )));
    }
    if !(config.max_filtration > 0.0) || !config.max_filtration.is_finite() {
        return Err(Error::InvalidParam(format!(
            "max filtration must be positive and finite, got {}",
            config.max_filtration
        )));
    }
    if config.divisions == Some(0) {
        return Err(Error::InvalidParam(
            "filtration divisions must be positive".into(),
        ));
    }
    if let Some(&bad) = landmarks.indices().iter().find(|&&i| i >= n) {
        return Err(Error::InvalidParam(format!(
            "landmark index {bad} out of range for {n} points"
        )));
    }

    // Witness-to-landmark distances, landmark-major for the edge sweep.
    let dist: Vec<f64> = (0..l)
        .into_par_iter()
        .flat_map_iter(|a| {
            let li = landmarks.indices()[a];
            (0..n).map(move |x| cloud.dist(x, li))
        })
        .collect();

    // Slack per witness: distance to its nu-th nearest landmark.
    let slack: Vec<f64> = if config.nu == 0 {
        vec![0.0; n]
    } else {
        (0..n)
            .into_par_iter()
            .map(|x| {
                let mut row: Vec<f64> = (0..l).map(|a| dist[a * n + x]).collect();
                let k = config.nu - 1;
                *row.select_nth_unstable_by(k, f64::total_cmp).1
            })
            .collect()
    };

    let snap = |v: f64| -> f64 {
        match config.divisions {
            None => v,
            Some(divs) => {
                let step = config.max_filtration / divs as f64;
                let ratio = v / step;
                let mut idx = ratio.ceil();
                // Guard against ratios that land a hair above a grid line.
                if idx - ratio >= 1.0 - 1e-9 {
                    idx -= 1.0;
                }
                let idx = (idx.max(0.0) as usize).min(divs);
                // The top grid line can land above max_filtration by one
                // rounding step; the ceiling is authoritative.
                (idx as f64 * step).min(config.max_filtration)
            }
        }
    };

    // Edge entry values, dense upper triangle; infinity marks absence.
    let mut edge = vec![f64::INFINITY; l * l];
    let rows: Vec<Vec<(usize, f64)>> = (0..l)
        .into_par_iter()
        .map(|a| {
            let da = &dist[a * n..(a + 1) * n];
            let mut out = Vec::new();
            for b in (a + 1)..l {
                let db = &dist[b * n..(b + 1) * n];
                let mut best = f64::INFINITY;
                for x in 0..n {
                    let reach = da[x].max(db[x]) - slack[x];
                    if reach < best {
                        best = reach;
                        if best <= 0.0 {
                            break;
                        }
                    }
                }
                let t = best.max(0.0);
                if t <= config.max_filtration {
                    out.push((b, snap(t)));
                }
            }
            out
        })
        .collect();
    for (a, row) in rows.iter().enumerate() {
        for &(b, t) in row {
            edge[a * l + b] = t;
            edge[b * l + a] = t;
        }
    }

    // Ascending adjacency lists drive the clique expansion.
    let adj_gt: Vec<Vec<u32>> = (0..l)
        .map(|a| {
            ((a + 1)..l)
                .filter(|&b| edge[a * l + b].is_finite())
                .map(|b| b as u32)
                .collect()
        })
        .collect();

    let per_root: Vec<Vec<Simplex>> = (0..l)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            let mut prefix = VertexList::new();
            prefix.push(a as u32);
            expand_cliques(
                &mut prefix,
                &adj_gt[a],
                0.0,
                &edge,
                l,
                &adj_gt,
                config.max_dimension,
                &mut out,
            );
            out
        })
        .collect();

    let mut simplices: Vec<Simplex> = Vec::with_capacity(
        l + per_root.iter().map(Vec::len).sum::<usize>(),
    );
    simplices.extend((0..l).map(|a| Simplex::new(vec![a as u32], 0.0)));
    for root in per_root {
        simplices.extend(root);
    }

    FilteredComplex::new(simplices, config.max_dimension, config.max_filtration)
}

/// Depth-first clique enumeration with ascending vertices. `candidates`
/// holds the vertices greater than the prefix tail that are adjacent to the
/// whole prefix; `value` is the prefix simplex's filtration value.
#[allow(clippy::too_many_arguments)]
fn expand_cliques(
    prefix: &mut VertexList,
    candidates: &[u32],
    value: f64,
    edge: &[f64],
    l: usize,
    adj_gt: &[Vec<u32>],
    max_dimension: usize,
    out: &mut Vec<Simplex>,
) {
    for (pos, &u) in candidates.iter().enumerate() {
        let mut v = value;
        for &w in prefix.iter() {
            v = v.max(edge[w as usize * l + u as usize]);
        }
        prefix.push(u);
        out.push(Simplex::from_sorted(prefix.clone(), v));
        if prefix.len() <= max_dimension {
            let next: Vec<u32> = intersect_sorted(&candidates[pos + 1..], &adj_gt[u as usize]);
            if !next.is_empty() {
                expand_cliques(prefix, &next, v, edge, l, adj_gt, max_dimension, out);
            }
        }
        prefix.pop();
    }
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
