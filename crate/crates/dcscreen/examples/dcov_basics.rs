//! Distance covariance and correlation on small samples.
//!
//! ```bash
//! cargo run --release -p dcscreen --example dcov_basics
//! ```

use dcscreen::{dcov2_sample, dcov2_sample_naive};
use ndarray::array;

fn main() {
    // Two points with distances a = 1, b = 2: the moments are S1 = ab/2,
    // S2 = ab/4, S3 = ab/4, so dcov² = 0.5 and the correlation is exactly 1.
    let u = array![[0.0], [1.0]];
    let v = array![[0.0], [2.0]];
    let stats = dcov2_sample(u.view(), v.view()).unwrap();
    println!("two-point sample:");
    println!("  S1 = {}, S2 = {}, S3 = {}", stats.s1_hat, stats.s2_hat, stats.s3_hat);
    println!("  dcov²(u,v) = {}", stats.dcov2_uv);
    println!("  dcorr²     = {:?}", stats.dcorr_sq);

    // A nonlinear, uncorrelated relationship: y = x² on a symmetric grid has
    // zero Pearson correlation but a clearly positive distance correlation.
    let x: Vec<f64> = (-20..=20).map(|i| i as f64 / 10.0).collect();
    let y: Vec<f64> = x.iter().map(|v| v * v).collect();
    let n = x.len();
    let u = ndarray::Array2::from_shape_vec((n, 1), x).unwrap();
    let v = ndarray::Array2::from_shape_vec((n, 1), y).unwrap();
    let stats = dcov2_sample(u.view(), v.view()).unwrap();
    println!("\ny = x² on a symmetric grid (Pearson correlation is 0):");
    println!("  dcorr = {:.4}", stats.dcorr().unwrap());

    // The fast streaming path and the literal triple-loop estimator compute
    // the same statistic.
    let naive = dcov2_sample_naive(u.view(), v.view()).unwrap();
    println!(
        "  fast vs naive dcov²: {} vs {} (diff {:.2e})",
        stats.dcov2_uv,
        naive.dcov2_uv,
        (stats.dcov2_uv - naive.dcov2_uv).abs()
    );

    // A constant sample has no dependence information: the correlation is
    // undefined rather than silently zero or one.
    let constant = array![[3.0], [3.0], [3.0]];
    let other = array![[1.0], [2.0], [5.0]];
    let degenerate = dcov2_sample(constant.view(), other.view()).unwrap();
    println!("\nconstant sample: dcorr = {:?}", degenerate.dcorr());
}
