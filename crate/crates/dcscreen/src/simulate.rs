//! Monte Carlo benchmark harness: correlated Gaussian designs, the seven
//! generative response models, and the S / Ps / Pa evaluation metrics over
//! seeded, order-independent replications.

use ndarray::{Array2, ShapeBuilder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{sirs_utilities, sis_utilities};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::screen::{dcsis_utilities, rank_blocks};

/// Population quartiles of the standard normal, used as the cut points of
/// the grouped dummy model (the grouped column is marginally N(0,1)).
pub const NORMAL_Q1: f64 = -0.674_489_750_196_081_7;
pub const NORMAL_Q2: f64 = 0.0;
pub const NORMAL_Q3: f64 = 0.674_489_750_196_081_7;

/// Generative models for the benchmark study. The `1a`–`1d` family is a
/// univariate response with four active columns {1, 2, 12, 22}; `2` replaces
/// column 12 by a three-dummy group; `3a`/`3b` drive the correlation of a
/// bivariate normal response; `noise` is the null model (no active blocks),
/// kept for convergence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelId {
    #[serde(rename = "1a")]
    M1a,
    #[serde(rename = "1b")]
    M1b,
    #[serde(rename = "1c")]
    M1c,
    #[serde(rename = "1d")]
    M1d,
    #[serde(rename = "2")]
    M2,
    #[serde(rename = "3a")]
    M3a,
    #[serde(rename = "3b")]
    M3b,
    #[serde(rename = "noise")]
    Noise,
}

impl ModelId {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "1a" => Ok(ModelId::M1a),
            "1b" => Ok(ModelId::M1b),
            "1c" => Ok(ModelId::M1c),
            "1d" => Ok(ModelId::M1d),
            "2" => Ok(ModelId::M2),
            "3a" => Ok(ModelId::M3a),
            "3b" => Ok(ModelId::M3b),
            "noise" => Ok(ModelId::Noise),
            other => Err(Error::InvalidModelSpec(format!("unknown model `{other}`"))),
        }
    }

    /// Number of response columns the model generates.
    pub fn response_dim(&self) -> usize {
        match self {
            ModelId::M3a | ModelId::M3b => 2,
            _ => 1,
        }
    }

    /// Ground-truth active block ids (1-based).
    pub fn true_active(&self) -> Vec<usize> {
        match self {
            ModelId::M1a | ModelId::M1b | ModelId::M1c | ModelId::M1d | ModelId::M2 => {
                vec![1, 2, 12, 22]
            }
            ModelId::M3a => vec![1, 2],
            ModelId::M3b => vec![1, 2, 3, 4],
            ModelId::Noise => vec![],
        }
    }

    pub fn uses_grouping(&self) -> bool {
        matches!(self, ModelId::M2)
    }

    fn min_p(&self) -> usize {
        match self {
            ModelId::Noise => 1,
            _ => 25,
        }
    }
}

impl std::fmt::Display for ModelId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ModelId::M1a => "1a",
            ModelId::M1b => "1b",
            ModelId::M1c => "1c",
            ModelId::M1d => "1d",
            ModelId::M2 => "2",
            ModelId::M3a => "3a",
            ModelId::M3b => "3b",
            ModelId::Noise => "noise",
        };
        f.write_str(s)
    }
}

/// Screening procedures the harness can benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScreeningMethod {
    DcSis,
    Sis,
    Sirs,
}

impl ScreeningMethod {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "dcsis" | "dc-sis" => Ok(ScreeningMethod::DcSis),
            "sis" => Ok(ScreeningMethod::Sis),
            "sirs" => Ok(ScreeningMethod::Sirs),
            other => Err(Error::InvalidConfig(format!(
                "unknown method `{other}` (expected dcsis, sis, or sirs)"
            ))),
        }
    }
}

impl std::fmt::Display for ScreeningMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScreeningMethod::DcSis => "dcsis",
            ScreeningMethod::Sis => "sis",
            ScreeningMethod::Sirs => "sirs",
        })
    }
}

/// One benchmark configuration: model, dimensions, design correlation and
/// the master seed all replications derive from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model: ModelId,
    pub n: usize,
    pub p: usize,
    /// AR decay of the design covariance sigma_ij = rho^|i-j|.
    pub rho: f64,
    pub c_coeffs: [f64; 4],
    pub seed: u64,
}

impl ModelSpec {
    pub const DEFAULT_C: [f64; 4] = [2.0, 0.5, 3.0, 2.0];

    pub fn new(model: ModelId, n: usize, p: usize, rho: f64, seed: u64) -> Result<Self> {
        let spec = ModelSpec {
            model,
            n,
            p,
            rho,
            c_coeffs: Self::DEFAULT_C,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::InvalidModelSpec(format!("n must be >= 3, got {}", self.n)));
        }
        let min_p = self.model.min_p();
        if self.p < min_p {
            return Err(Error::InvalidModelSpec(format!(
                "model {} needs p >= {min_p}, got {}",
                self.model, self.p
            )));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::InvalidModelSpec(format!(
                "rho must lie in (0, 1), got {}",
                self.rho
            )));
        }
        Ok(())
    }
}

/// The stochastic regression coefficients `beta_j = (-1)^U (a + |Z|)` with
/// `a = 4 log(n)/sqrt(n)`, `U ~ Bernoulli(0.4)`, `Z ~ N(0,1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffDraw {
    pub beta: [f64; 4],
    pub a: f64,
    pub u_flags: [bool; 4],
    pub z: [f64; 4],
}

impl CoeffDraw {
    pub fn draw(n: usize, rng: &mut ChaCha8Rng) -> Self {
        let a = 4.0 * (n as f64).ln() / (n as f64).sqrt();
        let mut u_flags = [false; 4];
        let mut z = [0.0f64; 4];
        let mut beta = [0.0f64; 4];
        for flag in &mut u_flags {
            *flag = rng.random_bool(0.4);
        }
        for draw in &mut z {
            *draw = rng.sample(StandardNormal);
        }
        for j in 0..4 {
            let sign = if u_flags[j] { -1.0 } else { 1.0 };
            beta[j] = sign * (a + z[j].abs());
        }
        CoeffDraw { beta, a, u_flags, z }
    }
}

/// The stochastic model parameters: the coefficient draw plus the uniform
/// draws behind the `3b` correlation slope (2 − U_i). Drawing both
/// unconditionally keeps the stream layout identical across models.
///
/// One draw is shared by every replication of an experiment (see
/// [`experiment_params`]): the signs are random, so per-replication
/// redraws would zero out X2's marginal association against the correlated
/// X1 term in a sizable fraction of replications, and no marginal screener
/// can recover a predictor that a draw has made conditionally independent
/// of the response.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub coeffs: CoeffDraw,
    pub tanh_betas: [f64; 4],
}

impl ModelParams {
    pub fn draw(n: usize, rng: &mut ChaCha8Rng) -> Self {
        let coeffs = CoeffDraw::draw(n, rng);
        let mut tanh_betas = [0.0; 4];
        for b in &mut tanh_betas {
            *b = 2.0 - rng.random::<f64>();
        }
        ModelParams { coeffs, tanh_betas }
    }
}

/// Reserved stream index for the experiment-wide parameter draw;
/// replication streams count up from 0.
pub const PARAM_STREAM: u64 = u64::MAX;

/// The parameter draw shared by all replications of the experiment
/// described by `spec`, derived from the master seed's reserved stream.
pub fn experiment_params(spec: &ModelSpec) -> ModelParams {
    let mut rng = ChaCha8Rng::seed_from_u64(child_seed(spec.seed, PARAM_STREAM));
    ModelParams::draw(spec.n, &mut rng)
}

/// Deterministic seed for one work item, derived from the master seed with
/// a SplitMix64-style mix so replications are order-independent.
pub fn child_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Samples n i.i.d. rows from N(0, Sigma) with sigma_ij = rho^|i-j| via the
/// AR(1) recursion X_1 = Z_1, X_j = rho·X_{j-1} + sqrt(1-rho²)·Z_j, which is
/// exact for this covariance. Returns a column-major n×p matrix.
pub fn sample_ar1_normal(n: usize, p: usize, rho: f64, rng: &mut ChaCha8Rng) -> Array2<f64> {
    let innovation = (1.0 - rho * rho).sqrt();
    let mut x = Array2::zeros((n, p).f());
    for i in 0..n {
        let mut prev: f64 = rng.sample(StandardNormal);
        x[[i, 0]] = prev;
        for j in 1..p {
            let z: f64 = rng.sample(StandardNormal);
            prev = rho * prev + innovation * z;
            x[[i, j]] = prev;
        }
    }
    x
}

/// Dummy encoding of the grouped column against the three quartile cut
/// points: (1(v<q1), 1(q1<=v<q2), 1(q2<=v<q3)); values at or above q3 map
/// to the all-zero baseline.
fn dummy_triple(v: f64) -> [f64; 3] {
    if v < NORMAL_Q1 {
        [1.0, 0.0, 0.0]
    } else if v < NORMAL_Q2 {
        [0.0, 1.0, 0.0]
    } else if v < NORMAL_Q3 {
        [0.0, 0.0, 1.0]
    } else {
        [0.0, 0.0, 0.0]
    }
}

/// Mean and noise scale of the univariate models at one design row, so that
/// Y = mean + scale·eps. Split out from the sampling so the deterministic
/// part can be checked exactly.
pub(crate) fn univariate_parts(
    model: ModelId,
    c: &[f64; 4],
    x: &Array2<f64>,
    params: &ModelParams,
    row: usize,
) -> (f64, f64) {
    if model == ModelId::Noise {
        return (0.0, 1.0);
    }
    let b = &params.coeffs.beta;
    let x1 = x[[row, 0]];
    let x2 = x[[row, 1]];
    let x12 = x[[row, 11]];
    let x22 = x[[row, 21]];
    let ind = if x12 < 0.0 { 1.0 } else { 0.0 };
    match model {
        ModelId::M1a => (
            c[0] * b[0] * x1 + c[1] * b[1] * x2 + c[2] * b[2] * ind + c[3] * b[3] * x22,
            1.0,
        ),
        ModelId::M1b => (
            c[0] * b[0] * x1 * x2 + c[2] * b[1] * ind + c[3] * b[2] * x22,
            1.0,
        ),
        ModelId::M1c => (c[0] * b[0] * x1 * x2 + c[2] * b[1] * ind * x22, 1.0),
        ModelId::M1d => (
            c[0] * b[0] * x1 + c[1] * b[1] * x2 + c[2] * b[2] * ind,
            (c[3] * x22.abs()).exp(),
        ),
        ModelId::M2 => {
            let d = dummy_triple(x12);
            let level = d[0] + 1.5 * d[1] + 2.0 * d[2];
            (
                c[0] * b[0] * x1 + c[1] * b[1] * x2 + c[2] * b[2] * level + c[3] * b[3] * x22,
                1.0,
            )
        }
        ModelId::Noise => unreachable!("handled above"),
        ModelId::M3a | ModelId::M3b => unreachable!("bivariate models have no univariate parts"),
    }
}

/// Conditional correlation of the bivariate response at one design row.
pub(crate) fn response_correlation(
    model: ModelId,
    x: &Array2<f64>,
    params: &ModelParams,
    row: usize,
) -> f64 {
    match model {
        ModelId::M3a => (0.8 * x[[row, 0]] + 0.6 * x[[row, 1]]).sin(),
        ModelId::M3b => {
            let t: f64 = (0..4).map(|k| params.tanh_betas[k] * x[[row, k]]).sum();
            if t > 700.0 {
                1.0
            } else if t < -700.0 {
                -1.0
            } else {
                let e = t.exp();
                (e - 1.0) / (e + 1.0)
            }
        }
        _ => unreachable!("univariate models have no response correlation"),
    }
}

/// Draws the response matrix for one design. Univariate models add N(0,1)
/// noise (scaled for the heteroscedastic model); the bivariate models draw
/// each row from N(0, [[1, s], [s, 1]]) via its 2×2 Cholesky factor with
/// s the row's conditional correlation.
pub fn gen_response(
    spec: &ModelSpec,
    x: &Array2<f64>,
    params: &ModelParams,
    rng: &mut ChaCha8Rng,
) -> Result<Array2<f64>> {
    let n = x.nrows();
    let needed = match spec.model {
        ModelId::Noise => 0,
        ModelId::M3a => 2,
        ModelId::M3b => 4,
        _ => 22,
    };
    if x.ncols() < needed {
        return Err(Error::InvalidModelSpec(format!(
            "model {} references column {needed} but the design has p = {}",
            spec.model,
            x.ncols()
        )));
    }
    match spec.model {
        ModelId::M3a | ModelId::M3b => {
            let mut y = Array2::zeros((n, 2).f());
            for i in 0..n {
                let s = response_correlation(spec.model, x, params, i);
                debug_assert!(s.abs() <= 1.0);
                let z1: f64 = rng.sample(StandardNormal);
                let z2: f64 = rng.sample(StandardNormal);
                y[[i, 0]] = z1;
                y[[i, 1]] = s * z1 + (1.0 - s * s).max(0.0).sqrt() * z2;
            }
            Ok(y)
        }
        model => {
            let mut y = Array2::zeros((n, 1).f());
            for i in 0..n {
                let (mean, scale) = univariate_parts(model, &spec.c_coeffs, x, params, i);
                let eps: f64 = rng.sample(StandardNormal);
                y[[i, 0]] = mean + scale * eps;
            }
            Ok(y)
        }
    }
}

/// Packs a generated design/response pair into a screening-ready dataset,
/// expanding the grouped model's column 12 into its three-dummy block (the
/// block count stays p: blocks 1..11 and 13..p are singletons). Returns the
/// dataset and the ground-truth active block ids.
pub fn assemble_dataset(spec: &ModelSpec, x: Array2<f64>, y: Array2<f64>) -> Result<(Dataset, Vec<usize>)> {
    let active = spec.model.true_active();
    if !spec.model.uses_grouping() {
        return Ok((Dataset::new(x, y, None)?, active));
    }

    let n = x.nrows();
    let p = x.ncols();
    let mut expanded = Array2::zeros((n, p + 2).f());
    for j in 0..11 {
        expanded.column_mut(j).assign(&x.column(j));
    }
    for i in 0..n {
        let d = dummy_triple(x[[i, 11]]);
        expanded[[i, 11]] = d[0];
        expanded[[i, 12]] = d[1];
        expanded[[i, 13]] = d[2];
    }
    for j in 12..p {
        expanded.column_mut(j + 2).assign(&x.column(j));
    }
    let mut groups: Vec<Vec<usize>> = (0..11).map(|j| vec![j]).collect();
    groups.push(vec![11, 12, 13]);
    groups.extend((14..p + 2).map(|j| vec![j]));
    Ok((Dataset::new(expanded, y, Some(groups))?, active))
}

/// Ranking and truth for a single replication.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationOutcome {
    pub ranking: Vec<usize>,
    pub true_active: Vec<usize>,
    /// Smallest ranking prefix containing every active block.
    pub min_model_size: usize,
    /// `selected_at[c][a]`: active block `a` ranked within cutoff `c`.
    pub selected_at: Vec<Vec<bool>>,
}

/// Aggregated evaluation: quantiles of the minimum model size S plus the
/// per-block (Ps) and all-block (Pa) selection proportions at each cutoff.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub replications: usize,
    pub cutoffs: Vec<usize>,
    /// 5%, 25%, 50%, 75%, 95% quantiles of S.
    pub s_quantiles: Vec<f64>,
    pub ps_table: Vec<PsRow>,
    /// One Pa value per cutoff.
    pub pa_table: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsRow {
    pub block: usize,
    /// One selection proportion per cutoff.
    pub props: Vec<f64>,
}

impl EvalReport {
    pub fn median_s(&self) -> f64 {
        self.s_quantiles[2]
    }

    pub fn pa_at(&self, cutoff_index: usize) -> f64 {
        self.pa_table[cutoff_index]
    }

    /// CSV rendering that mirrors the benchmark tables: one row of S
    /// quantiles, then a Ps/Pa block with one row per cutoff.
    pub fn to_table_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(",5%,25%,50%,75%,95%\n");
        out.push('S');
        for q in &self.s_quantiles {
            out.push(',');
            out.push_str(&q.to_string());
        }
        out.push('\n');
        out.push_str("size");
        for row in &self.ps_table {
            out.push_str(&format!(",X{}", row.block));
        }
        out.push_str(",ALL\n");
        for (ci, &d) in self.cutoffs.iter().enumerate() {
            out.push_str(&format!("d{}={}", ci + 1, d));
            for row in &self.ps_table {
                out.push(',');
                out.push_str(&row.props[ci].to_string());
            }
            out.push(',');
            out.push_str(&self.pa_table[ci].to_string());
            out.push('\n');
        }
        out
    }
}

/// The smallest prefix of `ranking` containing every id in `true_active`
/// (0 when there are none). Errors if an active id is missing.
pub fn min_model_size(ranking: &[usize], true_active: &[usize]) -> Result<usize> {
    let mut worst = 0;
    for &block in true_active {
        let pos = ranking
            .iter()
            .position(|&r| r == block)
            .ok_or(Error::ActiveBlockMissing { block })?;
        worst = worst.max(pos + 1);
    }
    Ok(worst)
}

/// Empirical quantiles by linear interpolation of order statistics
/// (h = (n−1)p + 1, the R type-7 convention).
pub fn quantiles(values: &[f64], probs: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::EmptyInput("quantiles of an empty sample".into()));
    }
    if let Some(bad) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::InvalidConfig(format!(
            "quantile probability {bad} outside [0, 1]"
        )));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    Ok(probs
        .iter()
        .map(|&p| {
            let h = (n - 1) as f64 * p;
            let lo = h.floor() as usize;
            let hi = (lo + 1).min(n - 1);
            let frac = h - lo as f64;
            sorted[lo] + frac * (sorted[hi] - sorted[lo])
        })
        .collect())
}

fn check_method_model(method: ScreeningMethod, model: ModelId) -> Result<()> {
    if method == ScreeningMethod::DcSis {
        return Ok(());
    }
    let reason = if model.response_dim() > 1 {
        "multivariate response"
    } else if model.uses_grouping() {
        "grouped predictors"
    } else {
        return Ok(());
    };
    Err(Error::IncompatibleMethod {
        method: method.to_string(),
        model: model.to_string(),
        reason: reason.into(),
    })
}

/// Runs one replication: derive the replication rng from (master seed,
/// rep index), draw a fresh design and response, screen, and score the
/// ranking against the ground truth. The data depend only on the seed pair
/// and the shared parameters, so all methods see identical data at the
/// same replication index.
pub fn run_one_replication(
    spec: &ModelSpec,
    method: ScreeningMethod,
    cutoffs: &[usize],
    params: &ModelParams,
    rep: u64,
) -> Result<ReplicationOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(child_seed(spec.seed, rep));
    let x = sample_ar1_normal(spec.n, spec.p, spec.rho, &mut rng);
    let y = gen_response(spec, &x, params, &mut rng)?;
    let (data, true_active) = assemble_dataset(spec, x, y)?;
    let utilities = match method {
        ScreeningMethod::DcSis => dcsis_utilities(&data).values,
        ScreeningMethod::Sis => sis_utilities(&data)?,
        ScreeningMethod::Sirs => sirs_utilities(&data)?,
    };
    let ranking = rank_blocks(&utilities);
    let min_size = min_model_size(&ranking, &true_active)?;

    let mut position = vec![usize::MAX; utilities.len() + 1];
    for (idx, &block) in ranking.iter().enumerate() {
        position[block] = idx + 1;
    }
    let selected_at = cutoffs
        .iter()
        .map(|&d| true_active.iter().map(|&a| position[a] <= d).collect())
        .collect();

    Ok(ReplicationOutcome {
        ranking,
        true_active,
        min_model_size: min_size,
        selected_at,
    })
}

/// Runs `reps` replications in parallel and aggregates them. Fully
/// reproducible from the spec's master seed; the outcome is identical for
/// any worker count because each replication is a pure function of
/// (seed, rep index) and aggregation runs in rep order.
pub fn run_replications(
    spec: &ModelSpec,
    method: ScreeningMethod,
    reps: usize,
    cutoffs: &[usize],
) -> Result<EvalReport> {
    spec.validate()?;
    check_method_model(method, spec.model)?;
    if reps == 0 {
        return Err(Error::EmptyInput("need at least one replication".into()));
    }
    if cutoffs.is_empty() {
        return Err(Error::EmptyInput("need at least one cutoff".into()));
    }

    let params = experiment_params(spec);
    let outcomes = (0..reps as u64)
        .into_par_iter()
        .map(|rep| run_one_replication(spec, method, cutoffs, &params, rep))
        .collect::<Result<Vec<_>>>()?;

    let s_values: Vec<f64> = outcomes.iter().map(|o| o.min_model_size as f64).collect();
    let s_quantiles = quantiles(&s_values, &[0.05, 0.25, 0.5, 0.75, 0.95])?;

    let active = spec.model.true_active();
    let ps_table = active
        .iter()
        .enumerate()
        .map(|(ai, &block)| {
            let props = (0..cutoffs.len())
                .map(|ci| {
                    let hits = outcomes.iter().filter(|o| o.selected_at[ci][ai]).count();
                    hits as f64 / reps as f64
                })
                .collect();
            PsRow { block, props }
        })
        .collect();
    let pa_table = (0..cutoffs.len())
        .map(|ci| {
            let hits = outcomes
                .iter()
                .filter(|o| o.selected_at[ci].iter().all(|&s| s))
                .count();
            hits as f64 / reps as f64
        })
        .collect();

    Ok(EvalReport {
        replications: reps,
        cutoffs: cutoffs.to_vec(),
        s_quantiles,
        ps_table,
        pa_table,
    })
}

/// A named benchmark configuration. Paper-scale cases use n = 200 with 500
/// replications at p = 2000 (cases 1–2) or p = 5000 (cases 3–4); the `-desk`
/// variants shrink to p = 500 and 100 replications for quick runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationPreset {
    pub name: String,
    pub model: ModelId,
    pub n: usize,
    pub p: usize,
    pub rho: f64,
    pub reps: usize,
}

pub fn all_presets() -> Vec<SimulationPreset> {
    let models = [
        ModelId::M1a,
        ModelId::M1b,
        ModelId::M1c,
        ModelId::M1d,
        ModelId::M2,
        ModelId::M3a,
        ModelId::M3b,
    ];
    let cases = [(1, 2000, 0.5), (2, 2000, 0.8), (3, 5000, 0.5), (4, 5000, 0.8)];
    let mut presets = Vec::new();
    for model in models {
        for (case, p, rho) in cases {
            presets.push(SimulationPreset {
                name: format!("{model}-case{case}"),
                model,
                n: 200,
                p,
                rho,
                reps: 500,
            });
        }
        for (case, rho) in [(1, 0.5), (2, 0.8)] {
            presets.push(SimulationPreset {
                name: format!("{model}-case{case}-desk"),
                model,
                n: 200,
                p: 500,
                rho,
                reps: 100,
            });
        }
    }
    presets
}

pub fn find_preset(name: &str) -> Result<SimulationPreset> {
    let presets = all_presets();
    presets
        .iter()
        .find(|p| p.name == name)
        .cloned()
        .ok_or_else(|| Error::UnknownPreset {
            name: name.to_string(),
            valid: presets
                .iter()
                .map(|p| format!("  {}", p.name))
                .collect::<Vec<_>>()
                .join("\n"),
        })
}
