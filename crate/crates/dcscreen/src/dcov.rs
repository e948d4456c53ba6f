//! Sample distance covariance and distance correlation.
//!
//! Everything here computes the V-statistic estimators built from the three
//! pairwise-distance moments
//!
//! ```text
//! S1 = (1/n²) Σij a_ij b_ij
//! S2 = (1/n²) Σij a_ij · (1/n²) Σij b_ij
//! S3 = (1/n³) Σl (Σi a_il)(Σj b_jl)
//! dcov²(u, v) = S1 + S2 − 2 S3
//! ```
//!
//! where `a`, `b` are the Euclidean distance matrices of the two samples.
//! The row-sum factorization of S3 makes the fast path O(n²) in time and
//! O(n) in memory — the n×n matrices are never materialized, which is what
//! lets single calls run at n = 20000. [`dcov2_sample_naive`] keeps the
//! literal double/triple loops as an independent oracle for testing.

use ndarray::{Array2, ArrayView2};

use crate::error::{Error, Result};

/// Marginal dcov² below this threshold is treated as degenerate: the
/// distance correlation is undefined (a constant sample carries no
/// dependence information).
pub const EPS_VAR: f64 = 1e-14;

/// The distance moments and derived quantities for one pair of samples.
///
/// `dcorr_sq` is the squared sample distance correlation
/// `dcov²(u,v) / sqrt(dcov²(u,u)·dcov²(v,v))`, i.e. the marginal utility
/// used by DC-SIS; `None` when either marginal is degenerate. Call
/// [`DistanceStats::dcorr`] for the unsquared correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceStats {
    pub s1_hat: f64,
    pub s2_hat: f64,
    pub s3_hat: f64,
    /// `s1_hat + s2_hat − 2·s3_hat`, exactly as computed (not clamped).
    pub dcov2_uv: f64,
    /// Marginal squared distance covariances, clamped to 0 when rounding
    /// produces a tiny negative value.
    pub dcov2_uu: f64,
    pub dcov2_vv: f64,
    pub dcorr_sq: Option<f64>,
}

impl DistanceStats {
    /// Sample distance correlation (the square root of `dcorr_sq`).
    pub fn dcorr(&self) -> Option<f64> {
        self.dcorr_sq.map(f64::sqrt)
    }
}

/// A multivariate sample seen as column slices of equal length.
#[derive(Debug, Clone)]
pub(crate) struct ColumnSample<'a> {
    pub cols: Vec<&'a [f64]>,
    pub n: usize,
}

impl<'a> ColumnSample<'a> {
    pub fn new(cols: Vec<&'a [f64]>) -> Self {
        let n = cols.first().map_or(0, |c| c.len());
        debug_assert!(cols.iter().all(|c| c.len() == n));
        ColumnSample { cols, n }
    }
}

/// Precomputed distance structure of one sample, shared across many pairings
/// against it (the response side of screening): row sums and total of its
/// distance matrix plus its own marginal dcov². O(n) memory.
#[derive(Debug, Clone)]
pub(crate) struct MarginalSummary {
    pub row_sums: Vec<f64>,
    /// (1/n²) Σij b_ij
    pub mean_dist: f64,
    pub dcov2: f64,
}

/// One triangle pass over the sample's distance pairs.
pub(crate) fn marginal_summary(v: &ColumnSample) -> MarginalSummary {
    let n = v.n;
    let mut row_sums = vec![0.0; n];
    let mut buf = vec![0.0; n];
    let mut total = 0.0;
    let mut sq_total = 0.0;
    for l in 1..n {
        fill_distance_row(&v.cols, l, &mut buf);
        let row = &buf[..l];
        let mut row_l = 0.0;
        for (slot, &d) in row_sums[..l].iter_mut().zip(row) {
            *slot += d;
            row_l += d;
            total += d;
            sq_total += d * d;
        }
        row_sums[l] += row_l;
    }
    let n2 = (n * n) as f64;
    let n3 = n2 * n as f64;
    let s1 = 2.0 * sq_total / n2;
    let mean_dist = 2.0 * total / n2;
    let s2 = mean_dist * mean_dist;
    let s3 = row_sums.iter().map(|&r| r * r).sum::<f64>() / n3;
    MarginalSummary {
        row_sums,
        mean_dist,
        dcov2: clamp_roundoff(s1 + s2 - 2.0 * s3),
    }
}

/// Distance moments of `u` against `v`, where `v`'s own structure has
/// already been summarized. This is the screening hot path: one O(n²)
/// triangle pass per feature block, O(n) scratch.
pub(crate) fn dcov2_with_summary(
    u: &ColumnSample,
    v: &ColumnSample,
    vsum: &MarginalSummary,
) -> DistanceStats {
    let n = u.n;
    let mut row_a = vec![0.0; n];
    let mut buf_a = vec![0.0; n];
    let mut buf_b = vec![0.0; n];
    let mut s1_acc = 0.0;
    let mut sum_a = 0.0;
    let mut sq_a = 0.0;
    for l in 1..n {
        fill_distance_row(&u.cols, l, &mut buf_a);
        fill_distance_row(&v.cols, l, &mut buf_b);
        let mut row_l = 0.0;
        for ((slot, &a), &b) in row_a[..l].iter_mut().zip(&buf_a[..l]).zip(&buf_b[..l]) {
            s1_acc += a * b;
            sum_a += a;
            sq_a += a * a;
            *slot += a;
            row_l += a;
        }
        row_a[l] += row_l;
    }

    let n2 = (n * n) as f64;
    let n3 = n2 * n as f64;
    let s1_hat = 2.0 * s1_acc / n2;
    let mean_a = 2.0 * sum_a / n2;
    let s2_hat = mean_a * vsum.mean_dist;
    let s3_hat = row_a
        .iter()
        .zip(&vsum.row_sums)
        .map(|(&a, &b)| a * b)
        .sum::<f64>()
        / n3;
    let dcov2_uv = s1_hat + s2_hat - 2.0 * s3_hat;

    let s1_uu = 2.0 * sq_a / n2;
    let s2_uu = mean_a * mean_a;
    let s3_uu = row_a.iter().map(|&a| a * a).sum::<f64>() / n3;
    let dcov2_uu = clamp_roundoff(s1_uu + s2_uu - 2.0 * s3_uu);

    finish_stats(s1_hat, s2_hat, s3_hat, dcov2_uv, dcov2_uu, vsum.dcov2)
}

/// Distances from row `l` to rows `0..l`, written into `buf[..l]`.
#[inline]
fn fill_distance_row(cols: &[&[f64]], l: usize, buf: &mut [f64]) {
    if let [c] = cols {
        let cl = c[l];
        for (slot, &ci) in buf[..l].iter_mut().zip(&c[..l]) {
            *slot = (ci - cl).abs();
        }
        return;
    }
    buf[..l].fill(0.0);
    for c in cols {
        let cl = c[l];
        for (slot, &ci) in buf[..l].iter_mut().zip(&c[..l]) {
            let d = ci - cl;
            *slot += d * d;
        }
    }
    for slot in buf[..l].iter_mut() {
        *slot = slot.sqrt();
    }
}

fn finish_stats(
    s1_hat: f64,
    s2_hat: f64,
    s3_hat: f64,
    dcov2_uv: f64,
    dcov2_uu: f64,
    dcov2_vv: f64,
) -> DistanceStats {
    let dcorr_sq = if dcov2_uu > EPS_VAR && dcov2_vv > EPS_VAR {
        Some((dcov2_uv / (dcov2_uu * dcov2_vv).sqrt()).max(0.0))
    } else {
        None
    };
    DistanceStats {
        s1_hat,
        s2_hat,
        s3_hat,
        dcov2_uv,
        dcov2_uu,
        dcov2_vv,
        dcorr_sq,
    }
}

fn clamp_roundoff(v: f64) -> f64 {
    debug_assert!(v > -1e-12, "marginal dcov² more negative than round-off: {v}");
    v.max(0.0)
}

/// Symmetric matrix of Euclidean distances between the rows of `sample`.
pub fn pairwise_distances(sample: ArrayView2<f64>) -> Array2<f64> {
    let n = sample.nrows();
    let mut out = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..i {
            let mut acc = 0.0;
            for c in 0..sample.ncols() {
                let d = sample[[i, c]] - sample[[j, c]];
                acc += d * d;
            }
            let d = acc.sqrt();
            out[[i, j]] = d;
            out[[j, i]] = d;
        }
    }
    out
}

fn check_pair(u: &ArrayView2<f64>, v: &ArrayView2<f64>) -> Result<usize> {
    let n = u.nrows();
    if v.nrows() != n {
        return Err(Error::RowCountMismatch {
            left: n,
            right: v.nrows(),
        });
    }
    if n < 2 {
        return Err(Error::TooFewRows { min: 2, got: n });
    }
    Ok(n)
}

/// Sample distance covariance and correlation between two samples with
/// equal row counts (rows are observations). O(n²) time, O(n·d) memory.
pub fn dcov2_sample(u: ArrayView2<f64>, v: ArrayView2<f64>) -> Result<DistanceStats> {
    check_pair(&u, &v)?;
    let u_cols = columns_of(&u);
    let v_cols = columns_of(&v);
    let u_sample = ColumnSample::new(u_cols.iter().map(Vec::as_slice).collect());
    let v_sample = ColumnSample::new(v_cols.iter().map(Vec::as_slice).collect());
    let vsum = marginal_summary(&v_sample);
    Ok(dcov2_with_summary(&u_sample, &v_sample, &vsum))
}

/// Same contract as [`dcov2_sample`], computed with the literal double and
/// triple loops over materialized distance matrices. O(n³) time; this is
/// the testing oracle and is intended for n up to a few hundred.
pub fn dcov2_sample_naive(u: ArrayView2<f64>, v: ArrayView2<f64>) -> Result<DistanceStats> {
    check_pair(&u, &v)?;
    let a = pairwise_distances(u);
    let b = pairwise_distances(v);
    let (s1_hat, s2_hat, s3_hat) = naive_moments(&a, &b);
    let dcov2_uv = s1_hat + s2_hat - 2.0 * s3_hat;
    let (s1u, s2u, s3u) = naive_moments(&a, &a);
    let dcov2_uu = clamp_roundoff(s1u + s2u - 2.0 * s3u);
    let (s1v, s2v, s3v) = naive_moments(&b, &b);
    let dcov2_vv = clamp_roundoff(s1v + s2v - 2.0 * s3v);
    Ok(finish_stats(
        s1_hat, s2_hat, s3_hat, dcov2_uv, dcov2_uu, dcov2_vv,
    ))
}

fn naive_moments(a: &Array2<f64>, b: &Array2<f64>) -> (f64, f64, f64) {
    let n = a.nrows();
    let n2 = (n * n) as f64;
    let n3 = n2 * n as f64;

    let mut s1 = 0.0;
    for i in 0..n {
        for j in 0..n {
            s1 += a[[i, j]] * b[[i, j]];
        }
    }
    s1 /= n2;

    let sum_a: f64 = a.iter().sum();
    let sum_b: f64 = b.iter().sum();
    let s2 = (sum_a / n2) * (sum_b / n2);

    let mut s3 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                s3 += a[[i, l]] * b[[j, l]];
            }
        }
    }
    s3 /= n3;

    (s1, s2, s3)
}

fn columns_of(a: &ArrayView2<f64>) -> Vec<Vec<f64>> {
    (0..a.ncols()).map(|c| a.column(c).to_vec()).collect()
}
