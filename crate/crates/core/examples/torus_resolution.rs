//! Diagnostic: how well a lazy witness complex resolves a flat 3-torus.
//!
//! Generates n points on the product of three unit circles in R^6 (optionally
//! jittered by Gaussian noise), builds the complex over maxmin landmarks, and
//! prints the dominant intervals per dimension. Usage:
//!
//!   cargo run --release -p topocount-core --example torus_resolution -- \
//!       [n_points] [landmarks] [nu] [max_filtration] [noise_sigma] [seed] [max_dim]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use topocount_core::{
    lazy_witness_complex, maxmin_landmarks, reduce_and_extract, PointCloud, WitnessConfig,
};

fn main() {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let n = *args.first().unwrap_or(&4000.0) as usize;
    let l = *args.get(1).unwrap_or(&150.0) as usize;
    let nu = *args.get(2).unwrap_or(&1.0) as usize;
    let max_filtration = *args.get(3).unwrap_or(&0.7);
    let sigma = *args.get(4).unwrap_or(&0.0);
    let seed = *args.get(5).unwrap_or(&1.0) as u64;
    let max_dim = *args.get(6).unwrap_or(&4.0) as usize;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let mut row = Vec::with_capacity(6);
            for _ in 0..3 {
                let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                row.push(theta.cos() + sigma * rng.sample::<f64, _>(StandardNormal));
                row.push(theta.sin() + sigma * rng.sample::<f64, _>(StandardNormal));
            }
            row
        })
        .collect();
    let cloud = PointCloud::from_rows(&rows).unwrap();

    let t0 = std::time::Instant::now();
    let landmarks = maxmin_landmarks(&cloud, l, 0).unwrap();
    let complex = lazy_witness_complex(
        &cloud,
        &landmarks,
        &WitnessConfig {
            nu,
            max_filtration,
            max_dimension: max_dim,
            divisions: None,
        },
    )
    .unwrap();
    let n_simplices = complex.len();
    let barcode = reduce_and_extract(&complex).unwrap();
    let elapsed = t0.elapsed().as_secs_f64();

    println!(
        "n={n} L={l} nu={nu} maxfilt={max_filtration} sigma={sigma} seed={seed} \
         cover_radius={:.3} simplices={n_simplices} elapsed={elapsed:.1}s",
        landmarks.cover_radius()
    );
    for d in 0..=max_dim.min(4) {
        let mut intervals: Vec<_> = barcode.intervals(d).to_vec();
        intervals.sort_by(|a, b| b.length().total_cmp(&a.length()));
        let shown = intervals.iter().take(6);
        print!("H{d} ({:5} bars):", intervals.len());
        for iv in shown {
            print!(
                " [{:.3},{:.3}{}]",
                iv.birth,
                iv.death,
                if iv.infinite { "+" } else { "" }
            );
        }
        println!();
    }

    // Feasibility map for the target {1,3,3,1} (zeros above): a complex capped
    // at ceiling c is the truncation of this one, so at ceiling c a bar [b, d)
    // has observable length min(d, c) - b when b <= c. For each c, the rule
    // yields the target iff the threshold T lands strictly above the first
    // excluded bar and at or below the last included bar in every dimension.
    println!("ceiling-scan: feasible threshold window for {{1,3,3,1}}:");
    let target = [1usize, 3, 3, 1, 0];
    let steps = 40;
    for k in 1..=steps {
        let c = max_filtration * k as f64 / steps as f64;
        let mut t_low = 0.0f64;
        let mut t_high = c;
        for (d, &want) in target.iter().enumerate().take(max_dim.min(4) + 1) {
            let mut lens: Vec<f64> = barcode
                .intervals(d)
                .iter()
                .filter(|iv| iv.birth <= c)
                .map(|iv| iv.death.min(c) - iv.birth)
                .collect();
            lens.sort_by(|a, b| b.total_cmp(a));
            if want > 0 {
                match lens.get(want - 1) {
                    Some(&len) => t_high = t_high.min(len),
                    None => t_high = -1.0,
                }
            }
            if let Some(&len) = lens.get(want) {
                t_low = t_low.max(len);
            }
        }
        if t_low < t_high {
            println!(
                "  c={c:.3}  T in ({t_low:.3}, {t_high:.3}]  f in ({:.3}, {:.3}]",
                t_low / c,
                t_high / c
            );
        } else if k % 4 == 0 {
            println!("  c={c:.3}  infeasible (T_low={t_low:.3} >= T_high={t_high:.3})");
        }
    }
}
