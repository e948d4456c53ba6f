//! Comparison screeners: Pearson-correlation SIS and rank-based SIRS.
//!
//! Both are defined for a univariate response over singleton predictor
//! blocks and refuse anything else — adapting them to grouped predictors or
//! multivariate responses silently would misrepresent what they compute.

use rayon::prelude::*;

use crate::dataset::Dataset;
use crate::error::{Error, Result};

fn check_applicable(data: &Dataset) -> Result<()> {
    if data.q() != 1 {
        return Err(Error::UnsupportedResponse { q: data.q() });
    }
    if !data.all_singletons() {
        return Err(Error::UnsupportedGrouping);
    }
    Ok(())
}

/// SIS utilities: |sample Pearson correlation(X_k, Y)| per column.
/// Zero-variance columns score 0.
pub fn sis_utilities(data: &Dataset) -> Result<Vec<f64>> {
    check_applicable(data)?;
    let y = data.response_column(0);
    let n = data.n() as f64;
    let y_mean = y.iter().sum::<f64>() / n;
    let y_dev: Vec<f64> = y.iter().map(|&v| v - y_mean).collect();
    let y_ss: f64 = y_dev.iter().map(|d| d * d).sum();

    let utilities = (0..data.p())
        .into_par_iter()
        .map(|j| {
            let col = data.predictor_column(j);
            let mean = col.iter().sum::<f64>() / n;
            let mut cov = 0.0;
            let mut ss = 0.0;
            for (&v, &dy) in col.iter().zip(&y_dev) {
                let dx = v - mean;
                cov += dx * dy;
                ss += dx * dx;
            }
            if ss <= 0.0 || y_ss <= 0.0 {
                0.0
            } else {
                (cov / (ss * y_ss).sqrt()).abs()
            }
        })
        .collect();
    Ok(utilities)
}

/// SIRS utilities:
///
/// ```text
/// ω̂_k = (1/n) Σ_j [ (1/n) Σ_i x̃_ik · 1(Y_i < Y_j) ]²
/// ```
///
/// with x̃ the standardized column and a strict `<` so ties contribute
/// nothing. Only the rank order of Y enters, which makes the statistic
/// invariant under strictly increasing response transforms.
pub fn sirs_utilities(data: &Dataset) -> Result<Vec<f64>> {
    check_applicable(data)?;
    let n = data.n();
    let y = data.response_column(0);

    // Indices in increasing Y order; equal-Y runs share one prefix sum.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| y[a].total_cmp(&y[b]).then(a.cmp(&b)));

    let (standardized, _) = data.standardize_columns();
    let inv_n = 1.0 / n as f64;

    let utilities = (0..data.p())
        .into_par_iter()
        .map(|j| {
            let col = standardized.predictor_column(j);
            let mut total = 0.0;
            let mut prefix = 0.0;
            let mut start = 0;
            while start < n {
                let mut stop = start + 1;
                while stop < n && y[order[stop]] == y[order[start]] {
                    stop += 1;
                }
                // Every j in this tie group sees the same strictly-smaller set.
                let inner = prefix * inv_n;
                total += inner * inner * (stop - start) as f64;
                for &i in &order[start..stop] {
                    prefix += col[i];
                }
                start = stop;
            }
            total * inv_n
        })
        .collect();
    Ok(utilities)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn normal_matrix(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Array2<f64> {
        Array2::from_shape_fn((n, d), |_| rng.sample::<f64, _>(StandardNormal))
    }

    /// Literal double-loop SIRS, used as the oracle for the prefix-sum path.
    fn sirs_naive(data: &Dataset) -> Vec<f64> {
        let n = data.n();
        let y = data.response_column(0);
        let (std, _) = data.standardize_columns();
        (0..data.p())
            .map(|k| {
                let col = std.predictor_column(k);
                let mut total = 0.0;
                for j in 0..n {
                    let mut inner = 0.0;
                    for i in 0..n {
                        if y[i] < y[j] {
                            inner += col[i];
                        }
                    }
                    inner /= n as f64;
                    total += inner * inner;
                }
                total / n as f64
            })
            .collect()
    }

    #[test]
    fn sis_perfect_correlation_and_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let y = normal_matrix(&mut rng, 30, 1);
        let mut x = Array2::zeros((30, 3));
        x.column_mut(0).assign(&y.column(0));
        for i in 0..30 {
            x[[i, 1]] = -y[[i, 0]];
            x[[i, 2]] = 4.0; // constant
        }
        let data = Dataset::new(x, y, None).unwrap();
        let u = sis_utilities(&data).unwrap();
        assert!((u[0] - 1.0).abs() < 1e-12);
        assert!((u[1] - 1.0).abs() < 1e-12);
        assert_eq!(u[2], 0.0);
    }

    #[test]
    fn sis_is_affine_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = normal_matrix(&mut rng, 50, 2);
        let y = normal_matrix(&mut rng, 50, 1);
        let base = sis_utilities(&Dataset::new(x.clone(), y.clone(), None).unwrap()).unwrap();
        let mut shifted = x.clone();
        shifted.column_mut(0).mapv_inplace(|v| -3.5 * v + 11.0);
        let after = sis_utilities(&Dataset::new(shifted, y, None).unwrap()).unwrap();
        assert!((base[0] - after[0]).abs() < 1e-12);
        assert!((base[1] - after[1]).abs() < 1e-12);
    }

    #[test]
    fn baselines_refuse_multivariate_and_grouped() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = normal_matrix(&mut rng, 20, 4);
        let y2 = normal_matrix(&mut rng, 20, 2);
        let data = Dataset::new(x.clone(), y2, None).unwrap();
        assert!(matches!(
            sis_utilities(&data),
            Err(Error::UnsupportedResponse { q: 2 })
        ));
        assert!(matches!(
            sirs_utilities(&data),
            Err(Error::UnsupportedResponse { q: 2 })
        ));

        let y1 = normal_matrix(&mut rng, 20, 1);
        let grouped = Dataset::new(x, y1, Some(vec![vec![0, 1], vec![2], vec![3]])).unwrap();
        assert!(matches!(
            sis_utilities(&grouped),
            Err(Error::UnsupportedGrouping)
        ));
        assert!(matches!(
            sirs_utilities(&grouped),
            Err(Error::UnsupportedGrouping)
        ));
    }

    #[test]
    fn sirs_matches_naive_double_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut x = normal_matrix(&mut rng, 40, 3);
        // Inject ties in Y and a constant column.
        x.column_mut(2).fill(1.25);
        let mut y = normal_matrix(&mut rng, 40, 1);
        for i in 0..10 {
            y[[2 * i, 0]] = y[[2 * i + 1, 0]];
        }
        let data = Dataset::new(x, y, None).unwrap();
        let fast = sirs_utilities(&data).unwrap();
        let naive = sirs_naive(&data);
        for (a, b) in fast.iter().zip(&naive) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        assert_eq!(fast[2], 0.0, "constant column should score 0");
    }

    #[test]
    fn sirs_noiseless_monotone_signal_wins_every_trial() {
        let n = 200;
        for trial in 0..20u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(500 + trial);
            let x = normal_matrix(&mut rng, n, 5);
            let mut y = Array2::zeros((n, 1));
            for i in 0..n {
                y[[i, 0]] = (x[[i, 0]]).exp(); // strictly increasing in X1
            }
            let data = Dataset::new(x, y, None).unwrap();
            let u = sirs_utilities(&data).unwrap();
            let best = (0..5).max_by(|&a, &b| u[a].total_cmp(&u[b])).unwrap();
            assert_eq!(best, 0, "trial {trial}: utilities {u:?}");
        }
    }

    #[test]
    fn sirs_ranks_dependent_above_independent() {
        let n = 1000;
        let mut wins = 0;
        for trial in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(7_000 + trial);
            let x = normal_matrix(&mut rng, n, 2);
            let mut y = Array2::zeros((n, 1));
            for i in 0..n {
                y[[i, 0]] = x[[i, 0]] + 0.5 * rng.sample::<f64, _>(StandardNormal);
            }
            let data = Dataset::new(x, y, None).unwrap();
            let u = sirs_utilities(&data).unwrap();
            if u[0] > u[1] {
                wins += 1;
            }
        }
        assert!(wins >= 95, "dependent column won {wins}/100 trials");
    }

    #[test]
    fn sirs_invariant_under_increasing_response_transform() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = normal_matrix(&mut rng, 60, 3);
        let y = normal_matrix(&mut rng, 60, 1);
        let base = sirs_utilities(&Dataset::new(x.clone(), y.clone(), None).unwrap()).unwrap();
        // exp preserves order and tie structure exactly.
        let transformed = y.mapv(f64::exp);
        let after = sirs_utilities(&Dataset::new(x, transformed, None).unwrap()).unwrap();
        assert_eq!(base, after, "bit-exact invariance expected");
    }

    #[test]
    fn utilities_are_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = normal_matrix(&mut rng, 80, 6);
        let y = normal_matrix(&mut rng, 80, 1);
        let data = Dataset::new(x, y, None).unwrap();
        for u in sis_utilities(&data).unwrap() {
            assert!((0.0..=1.0).contains(&u));
        }
        for u in sirs_utilities(&data).unwrap() {
            assert!(u >= 0.0);
        }
    }
}
