//! Property-based checks: binomial matching against an independent
//! coefficient computation, persistence-threshold monotonicity, and barcode
//! serialization round-trips.

use proptest::prelude::*;
use topocount_core::{extract_betti, match_binomial, Barcode, BettiSequence, EstimateStatus, Interval};

/// Independent binomial coefficient via the multiplicative formula in u128.
fn choose(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..=k {
        num *= (n - k + i) as u128;
        den *= i as u128;
    }
    num / den
}

fn is_pascal_row(seq: &[usize]) -> Option<usize> {
    if seq.is_empty() || seq[0] != 1 {
        return None;
    }
    let n = seq.len() - 1;
    let matches = (0..=n).all(|k| seq[k] as u128 == choose(n, k));
    matches.then_some(if n == 0 { 0 } else { seq[1] })
}

proptest! {
    #[test]
    fn matching_agrees_with_direct_coefficients(betti in prop::collection::vec(0usize..70, 0..9)) {
        let seq = BettiSequence { betti: betti.clone(), max_filtration: 1.0 };
        let est = match_binomial(&seq);

        let mut stripped = betti.clone();
        while stripped.last() == Some(&0) {
            stripped.pop();
        }
        match is_pascal_row(&stripped) {
            Some(n) => prop_assert_eq!(est.status, EstimateStatus::Match(n)),
            None => prop_assert_ne!(
                std::mem::discriminant(&est.status),
                std::mem::discriminant(&EstimateStatus::Match(0))
            ),
        }
    }

    #[test]
    fn matched_n_is_pinned_by_the_second_entry(n in 0usize..12) {
        // uniqueness: the row for n matches exactly n, nothing else
        let row: Vec<usize> = (0..=n).map(|k| choose(n, k) as usize).collect();
        let est = match_binomial(&BettiSequence { betti: row.clone(), max_filtration: 1.0 });
        prop_assert_eq!(est.status, EstimateStatus::Match(n));
        for other in 0..12usize {
            if other != n {
                let other_row: Vec<usize> = (0..=other).map(|k| choose(other, k) as usize).collect();
                prop_assert_ne!(&row, &other_row);
            }
        }
    }

    #[test]
    fn betti_counts_shrink_as_the_threshold_grows(
        intervals in prop::collection::vec((0.0f64..0.8, 0.0f64..1.0, prop::bool::ANY), 0..40),
        f_lo in 0.05f64..1.0,
        f_hi in 0.05f64..1.0,
    ) {
        let max_filtration = 1.0;
        let dims = vec![intervals
            .iter()
            .map(|&(birth, len_frac, infinite)| {
                let death = if infinite {
                    max_filtration
                } else {
                    birth + len_frac * (max_filtration - birth)
                };
                Interval { birth, death, infinite }
            })
            .collect::<Vec<_>>()];
        let barcode = Barcode::new(max_filtration, dims);
        let (lo, hi) = if f_lo <= f_hi { (f_lo, f_hi) } else { (f_hi, f_lo) };
        let loose = extract_betti(&barcode, lo).unwrap();
        let strict = extract_betti(&barcode, hi).unwrap();
        for (a, b) in loose.betti.iter().zip(&strict.betti) {
            prop_assert!(a >= b, "fraction {lo} gave {a}, {hi} gave {b}");
        }
    }

    #[test]
    fn barcode_csv_round_trips(
        per_dim in prop::collection::vec(
            prop::collection::vec((0.0f64..0.9, 0.0f64..1.0, prop::bool::ANY), 0..12),
            0..4,
        ),
        max_filtration in 0.1f64..10.0,
    ) {
        let dims: Vec<Vec<Interval>> = per_dim
            .iter()
            .map(|intervals| {
                intervals
                    .iter()
                    .map(|&(bf, lf, infinite)| {
                        let birth = bf * max_filtration;
                        let death = if infinite {
                            max_filtration
                        } else {
                            birth + lf * (max_filtration - birth)
                        };
                        Interval { birth, death, infinite }
                    })
                    .collect()
            })
            .collect();
        let barcode = Barcode::new(max_filtration, dims);
        let csv = barcode.to_csv();
        let back = Barcode::from_csv(&csv).unwrap();
        prop_assert_eq!(&back, &barcode);
        prop_assert_eq!(back.to_csv(), csv);
    }
}

#[test]
fn empty_barcode_serializes_to_header_only() {
    let barcode = Barcode::new(0.5, Vec::new());
    let csv = barcode.to_csv();
    assert_eq!(csv.lines().count(), 2);
    assert_eq!(Barcode::from_csv(&csv).unwrap(), barcode);
}

#[test]
fn single_interval_row_shape() {
    let barcode = Barcode::new(
        0.24,
        vec![
            Vec::new(),
            vec![Interval { birth: 0.05, death: 0.2, infinite: false }],
        ],
    );
    let csv = barcode.to_csv();
    let row = csv.lines().nth(2).unwrap();
    assert_eq!(row, "1,0.05,0.2,false");
}
