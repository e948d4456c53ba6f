//! DC-SIS: marginal utilities, ranking, and selection.
//!
//! Each feature block gets the squared sample distance correlation between
//! the block (as a multivariate sample of its full width) and the complete
//! response matrix. Blocks are then ranked by utility and a selection rule
//! keeps either the top d of them or everything above a threshold c·n^(−κ).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::dcov::{dcov2_with_summary, marginal_summary, ColumnSample};
use crate::error::{Error, Result};

/// How the ranked blocks are cut down to a selected set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SelectionRule {
    /// Keep the d top-ranked blocks.
    TopD { d: usize },
    /// Keep every block with utility at least `c·n^(−kappa)`.
    Threshold { c: f64, kappa: f64 },
}

/// Per-block utilities plus the blocks whose distance correlation was
/// undefined (degenerate marginal, mapped to utility 0).
#[derive(Debug, Clone, PartialEq)]
pub struct BlockUtilities {
    pub values: Vec<f64>,
    /// 1-based ids of degenerate blocks.
    pub degenerate: Vec<usize>,
}

/// Outcome of ranking and selection. Block ids are 1-based throughout.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScreeningResult {
    pub utilities: Vec<f64>,
    /// Permutation of 1..=G, utilities non-increasing, ties broken by
    /// lower block id.
    pub ranking: Vec<usize>,
    /// Selected block ids, a prefix of `ranking`.
    pub selected: Vec<usize>,
    pub rule: SelectionRule,
    /// Blocks whose utility was forced to 0 because their distance
    /// correlation is undefined.
    pub degenerate: Vec<usize>,
}

impl ScreeningResult {
    pub fn utility_of(&self, block_id: usize) -> f64 {
        self.utilities[block_id - 1]
    }
}

/// DC-SIS marginal utilities: ω̂_g = squared sample distance correlation of
/// block g against the full response. Degenerate blocks map to 0.
///
/// Data-parallel over blocks; the response-side distance summary is built
/// once and shared read-only, so results do not depend on worker count.
pub fn dcsis_utilities(data: &Dataset) -> BlockUtilities {
    let response = ColumnSample::new(data.response_columns());
    let vsum = marginal_summary(&response);
    let per_block: Vec<Option<f64>> = data
        .blocks()
        .par_iter()
        .map(|block| {
            let u = ColumnSample::new(data.block_columns(block));
            dcov2_with_summary(&u, &response, &vsum).dcorr_sq
        })
        .collect();
    let values = per_block.iter().map(|w| w.unwrap_or(0.0)).collect();
    let degenerate = per_block
        .iter()
        .enumerate()
        .filter_map(|(g, w)| w.is_none().then_some(g + 1))
        .collect();
    BlockUtilities { values, degenerate }
}

/// Ranks block ids by utility, largest first, ties broken by lower id.
pub fn rank_blocks(utilities: &[f64]) -> Vec<usize> {
    let mut ids: Vec<usize> = (1..=utilities.len()).collect();
    ids.sort_by(|&a, &b| {
        utilities[b - 1]
            .total_cmp(&utilities[a - 1])
            .then(a.cmp(&b))
    });
    ids
}

/// Applies a selection rule to utilities. `sample_size` is the n behind the
/// utilities; the threshold rule compares against `c·n^(−kappa)`.
pub fn rank_and_select(
    utilities: &[f64],
    sample_size: usize,
    rule: SelectionRule,
) -> Result<ScreeningResult> {
    if utilities.is_empty() {
        return Err(Error::EmptyUtilities);
    }
    if let Some(bad) = utilities.iter().find(|u| !u.is_finite() || **u < 0.0) {
        return Err(Error::InvalidUtilities(format!(
            "utilities must be finite and non-negative, got {bad}"
        )));
    }
    let g = utilities.len();
    let ranking = rank_blocks(utilities);
    let selected = match rule {
        SelectionRule::TopD { d } => {
            if d == 0 {
                return Err(Error::InvalidRule("top-d requires d >= 1".into()));
            }
            if d > g {
                return Err(Error::CutoffTooLarge { d, blocks: g });
            }
            ranking[..d].to_vec()
        }
        SelectionRule::Threshold { c, kappa } => {
            if c <= 0.0 {
                return Err(Error::InvalidRule(format!("threshold needs c > 0, got {c}")));
            }
            if !(0.0..0.5).contains(&kappa) {
                return Err(Error::InvalidRule(format!(
                    "threshold needs 0 <= kappa < 1/2, got {kappa}"
                )));
            }
            let cut = c * (sample_size as f64).powf(-kappa);
            ranking
                .iter()
                .copied()
                .take_while(|&id| utilities[id - 1] >= cut)
                .collect()
        }
    };
    Ok(ScreeningResult {
        utilities: utilities.to_vec(),
        ranking,
        selected,
        rule,
        degenerate: Vec::new(),
    })
}

/// Full DC-SIS pass over a dataset: utilities, ranking, selection, and the
/// degenerate-block warnings in one result.
pub fn screen_dataset(data: &Dataset, rule: SelectionRule) -> Result<ScreeningResult> {
    let utilities = dcsis_utilities(data);
    let mut result = rank_and_select(&utilities.values, data.n(), rule)?;
    result.degenerate = utilities.degenerate;
    Ok(result)
}

/// The model-size cutoff `multiplier·[n/log n]` with the natural log and
/// the integer part taken before multiplying (so n = 200 gives 37, 74, 111).
pub fn cutoff_d(n: usize, multiplier: usize) -> usize {
    assert!(n >= 2, "cutoff_d needs n >= 2");
    let base = (n as f64 / (n as f64).ln()).floor() as usize;
    multiplier * base
}

/// Population distance correlation of a bivariate normal pair with Pearson
/// correlation `rho`:
///
/// ```text
/// T0(ρ) = sqrt{ (ρ·asin ρ + √(1−ρ²) − ρ·asin(ρ/2) − √(4−ρ²) + 1)
///             / (1 + π/3 − √3) }
/// ```
///
/// Strictly increasing in |ρ|, with T0(0) = 0 and T0(1) = 1. Used as a
/// closed-form oracle for the sample estimator.
pub fn t0_of_rho(rho: f64) -> Result<f64> {
    if !(rho.is_finite() && rho.abs() <= 1.0) {
        return Err(Error::InvalidRho(rho));
    }
    let numerator = rho * rho.asin() + (1.0 - rho * rho).sqrt()
        - rho * (rho / 2.0).asin()
        - (4.0 - rho * rho).sqrt()
        + 1.0;
    let denominator = 1.0 + std::f64::consts::FRAC_PI_3 - 3.0f64.sqrt();
    Ok((numerator / denominator).max(0.0).sqrt())
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

    #[test]
    fn duplicated_response_block_has_utility_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 60;
        let y = normal_matrix(&mut rng, n, 1);
        let noise = normal_matrix(&mut rng, n, 1);
        let mut x = Array2::zeros((n, 2));
        x.column_mut(0).assign(&y.column(0));
        x.column_mut(1).assign(&noise.column(0));
        let data = Dataset::new(x, y, None).unwrap();
        let utilities = dcsis_utilities(&data);
        assert!((utilities.values[0] - 1.0).abs() < 1e-10);
        assert!(utilities.values[1] < utilities.values[0]);
    }

    #[test]
    fn constant_predictor_maps_to_zero_with_warning() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let n = 40;
        let y = normal_matrix(&mut rng, n, 1);
        let mut x = normal_matrix(&mut rng, n, 2);
        x.column_mut(1).fill(7.0);
        let data = Dataset::new(x, y, None).unwrap();
        let utilities = dcsis_utilities(&data);
        assert_eq!(utilities.values[1], 0.0);
        assert_eq!(utilities.degenerate, vec![2]);
    }

    #[test]
    fn signal_beats_noise_in_seeded_trials() {
        // X1 = y + small noise vs X2 pure noise at n = 500.
        let n = 500;
        let mut wins = 0;
        for trial in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(9_000 + trial);
            let y = normal_matrix(&mut rng, n, 1);
            let mut x = Array2::zeros((n, 2));
            for i in 0..n {
                x[[i, 0]] = y[[i, 0]] + 0.2 * rng.sample::<f64, _>(StandardNormal);
                x[[i, 1]] = rng.sample::<f64, _>(StandardNormal);
            }
            let data = Dataset::new(x, y, None).unwrap();
            let utilities = dcsis_utilities(&data);
            if utilities.values[0] > utilities.values[1] {
                wins += 1;
            }
        }
        assert!(wins >= 99, "signal ranked first in only {wins}/100 trials");
    }

    #[test]
    fn top_d_selection_and_ties() {
        let result = rank_and_select(&[0.9, 0.1, 0.5], 100, SelectionRule::TopD { d: 2 }).unwrap();
        assert_eq!(result.ranking, vec![1, 3, 2]);
        assert_eq!(result.selected, vec![1, 3]);

        let tied = rank_and_select(&[0.3, 0.3], 100, SelectionRule::TopD { d: 1 }).unwrap();
        assert_eq!(tied.selected, vec![1]);
    }

    #[test]
    fn threshold_selection() {
        // c·n^{-kappa} = 0.1 with kappa = 0 and c = 0.1.
        let rule = SelectionRule::Threshold { c: 0.1, kappa: 0.0 };
        let result = rank_and_select(&[0.5, 0.01], 100, rule).unwrap();
        assert_eq!(result.selected, vec![1]);
    }

    #[test]
    fn selection_errors() {
        assert!(matches!(
            rank_and_select(&[0.5], 10, SelectionRule::TopD { d: 2 }),
            Err(Error::CutoffTooLarge { d: 2, blocks: 1 })
        ));
        assert!(matches!(
            rank_and_select(&[], 10, SelectionRule::TopD { d: 1 }),
            Err(Error::EmptyUtilities)
        ));
        assert!(matches!(
            rank_and_select(&[0.5], 10, SelectionRule::Threshold { c: -1.0, kappa: 0.0 }),
            Err(Error::InvalidRule(_))
        ));
        assert!(matches!(
            rank_and_select(&[0.5], 10, SelectionRule::Threshold { c: 1.0, kappa: 0.7 }),
            Err(Error::InvalidRule(_))
        ));
    }

    #[test]
    fn cutoff_examples() {
        assert_eq!(cutoff_d(200, 1), 37);
        assert_eq!(cutoff_d(200, 2), 74);
        assert_eq!(cutoff_d(200, 3), 111);
        assert_eq!(cutoff_d(3, 1), 2);
    }

    #[test]
    fn t0_endpoints_and_bounds() {
        assert!(t0_of_rho(0.0).unwrap().abs() < 1e-12);
        assert!((t0_of_rho(1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(t0_of_rho(1.5).is_err());
        assert!(t0_of_rho(f64::NAN).is_err());
    }

    #[test]
    fn t0_is_symmetric_and_strictly_increasing() {
        let mut prev = -1.0;
        for k in 0..=100 {
            let rho = k as f64 / 100.0;
            let t = t0_of_rho(rho).unwrap();
            assert!(t > prev, "not strictly increasing at rho = {rho}");
            prev = t;
            let neg = t0_of_rho(-rho).unwrap();
            assert!((t - neg).abs() < 1e-15);
        }
    }

    #[test]
    fn ranking_survives_monotone_response_transform() {
        // Y = X1 + eps; the top-ranked feature under y and exp(y) should
        // agree in at least 95 of 100 seeded trials at n = 300.
        let n = 300;
        let p = 5;
        let mut agreements = 0;
        for trial in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(40_000 + trial);
            let x = normal_matrix(&mut rng, n, p);
            let mut y = Array2::zeros((n, 1));
            for i in 0..n {
                y[[i, 0]] = x[[i, 0]] + 0.5 * rng.sample::<f64, _>(StandardNormal);
            }
            let y_exp = y.mapv(f64::exp);
            let top = |resp: Array2<f64>| {
                let data = Dataset::new(x.clone(), resp, None).unwrap();
                rank_blocks(&dcsis_utilities(&data).values)[0]
            };
            if top(y.clone()) == top(y_exp) {
                agreements += 1;
            }
        }
        assert!(agreements >= 95, "top block agreed in {agreements}/100 trials");
    }

    #[test]
    fn scaling_a_predictor_keeps_the_ranking() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let n = 80;
        let p = 6;
        let x = normal_matrix(&mut rng, n, p);
        let mut y = Array2::zeros((n, 1));
        for i in 0..n {
            y[[i, 0]] = x[[i, 2]] + 0.3 * rng.sample::<f64, _>(StandardNormal);
        }
        let base = {
            let data = Dataset::new(x.clone(), y.clone(), None).unwrap();
            rank_blocks(&dcsis_utilities(&data).values)
        };
        let mut scaled = x.clone();
        scaled.column_mut(3).mapv_inplace(|v| v * 2.0);
        let after = {
            let data = Dataset::new(scaled, y, None).unwrap();
            rank_blocks(&dcsis_utilities(&data).values)
        };
        assert_eq!(base, after);
    }

    #[test]
    fn screening_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let x = normal_matrix(&mut rng, 50, 8);
        let y = normal_matrix(&mut rng, 50, 1);
        let data = Dataset::new(x, y, None).unwrap();
        let a = screen_dataset(&data, SelectionRule::TopD { d: 3 }).unwrap();
        let b = screen_dataset(&data, SelectionRule::TopD { d: 3 }).unwrap();
        assert_eq!(a, b);
    }
}
