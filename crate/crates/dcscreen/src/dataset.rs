//! In-memory data representation, feature grouping, and CSV ingestion.
//!
//! Predictors are stored column-major so that per-feature screening reads
//! contiguous memory; the hot loops iterate features, not rows.

use std::path::Path;

use ndarray::{Array2, ArrayView2, ShapeBuilder};

use crate::error::{Error, Result};

/// One feature block: a unit of screening. Singleton blocks are ordinary
/// predictors; wider blocks are screened as one multivariate sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureBlock {
    /// 1-based block id, matching the order blocks were declared in.
    pub block_id: usize,
    /// 0-based predictor column indices, strictly increasing.
    pub columns: Vec<usize>,
}

impl FeatureBlock {
    pub fn width(&self) -> usize {
        self.columns.len()
    }
}

/// A validated sample: an n×p predictor matrix, an n×q response matrix and
/// an ordered partition of the predictor columns into feature blocks.
///
/// Immutable after construction; safe to share across worker threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    x: Array2<f64>,
    y: Array2<f64>,
    blocks: Vec<FeatureBlock>,
    feature_names: Option<Vec<String>>,
    x_names: Vec<String>,
    y_names: Vec<String>,
}

impl Dataset {
    /// Builds a dataset from matrices, defaulting to one singleton block per
    /// predictor column. `groups`, when given, must partition `0..p`.
    pub fn new(x: Array2<f64>, y: Array2<f64>, groups: Option<Vec<Vec<usize>>>) -> Result<Self> {
        let p = x.ncols();
        let x_names = (1..=p).map(|j| format!("x{j}")).collect();
        let y_names = (1..=y.ncols()).map(|j| format!("y{j}")).collect();
        Self::with_names(x, y, groups, x_names, y_names)
    }

    /// As [`Dataset::new`] but with explicit column names (used by CSV I/O).
    pub fn with_names(
        x: Array2<f64>,
        y: Array2<f64>,
        groups: Option<Vec<Vec<usize>>>,
        x_names: Vec<String>,
        y_names: Vec<String>,
    ) -> Result<Self> {
        let n = x.nrows();
        let p = x.ncols();
        if p == 0 {
            return Err(Error::EmptyPredictors);
        }
        if y.nrows() != n {
            return Err(Error::RowCountMismatch {
                left: n,
                right: y.nrows(),
            });
        }
        if n < 2 {
            return Err(Error::TooFewRows { min: 2, got: n });
        }
        if y.ncols() == 0 {
            return Err(Error::EmptyInput("response matrix has no columns".into()));
        }
        check_finite(&x.view(), "x")?;
        check_finite(&y.view(), "y")?;
        if x_names.len() != p || y_names.len() != y.ncols() {
            return Err(Error::InvalidConfig(
                "column name count does not match matrix shape".into(),
            ));
        }

        let blocks = match groups {
            None => (0..p)
                .map(|j| FeatureBlock {
                    block_id: j + 1,
                    columns: vec![j],
                })
                .collect(),
            Some(groups) => validate_groups(groups, p)?,
        };

        Ok(Dataset {
            x: to_col_major(x),
            y: to_col_major(y),
            blocks,
            feature_names: None,
            x_names,
            y_names,
        })
    }

    /// Attaches one label per feature block.
    pub fn with_feature_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.blocks.len() {
            return Err(Error::InvalidConfig(format!(
                "expected {} feature names, got {}",
                self.blocks.len(),
                names.len()
            )));
        }
        self.feature_names = Some(names);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.x.nrows()
    }

    pub fn p(&self) -> usize {
        self.x.ncols()
    }

    pub fn q(&self) -> usize {
        self.y.ncols()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn x(&self) -> &Array2<f64> {
        &self.x
    }

    pub fn y(&self) -> &Array2<f64> {
        &self.y
    }

    pub fn blocks(&self) -> &[FeatureBlock] {
        &self.blocks
    }

    /// True when every block is a single column.
    pub fn all_singletons(&self) -> bool {
        self.blocks.iter().all(|b| b.width() == 1)
    }

    /// Label for a block: the explicit feature name if set, the column name
    /// for singletons, `group<id>` otherwise.
    pub fn block_name(&self, block_id: usize) -> String {
        if let Some(names) = &self.feature_names {
            return names[block_id - 1].clone();
        }
        let block = &self.blocks[block_id - 1];
        if block.width() == 1 {
            self.x_names[block.columns[0]].clone()
        } else {
            format!("group{block_id}")
        }
    }

    /// Contiguous view of one predictor column (0-based).
    pub fn predictor_column(&self, col: usize) -> &[f64] {
        self.x
            .column(col)
            .to_slice()
            .expect("predictor matrix is column-major")
    }

    /// Contiguous view of one response column (0-based).
    pub fn response_column(&self, col: usize) -> &[f64] {
        self.y
            .column(col)
            .to_slice()
            .expect("response matrix is column-major")
    }

    pub(crate) fn block_columns(&self, block: &FeatureBlock) -> Vec<&[f64]> {
        block
            .columns
            .iter()
            .map(|&c| self.predictor_column(c))
            .collect()
    }

    pub(crate) fn response_columns(&self) -> Vec<&[f64]> {
        (0..self.q()).map(|c| self.response_column(c)).collect()
    }

    /// Loads a CSV file with one header row. `response_spec` selects the
    /// response columns out of all CSV columns using the 1-based range
    /// grammar (`"6"`, `"5-6"`, `"1;3"`); the remaining columns become
    /// predictors in file order. `group_spec`, when given, partitions the
    /// *predictor* columns with the same grammar (`"1-3;4;5-6"`).
    ///
    /// Any unparseable or non-finite cell fails the whole file.
    pub fn load_csv(
        path: impl AsRef<Path>,
        response_spec: &str,
        group_spec: Option<&str>,
    ) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .from_path(path.as_ref())?;
        let headers: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
        let ncols = headers.len();
        if ncols == 0 {
            return Err(Error::EmptyInput("CSV file has no columns".into()));
        }

        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (idx, record) in reader.records().enumerate() {
            let record = record?;
            let row_no = idx + 1;
            if record.len() != ncols {
                return Err(Error::RaggedRow {
                    row: row_no,
                    expected: ncols,
                    got: record.len(),
                });
            }
            let mut row = Vec::with_capacity(ncols);
            for (col_idx, cell) in record.iter().enumerate() {
                let value: f64 = cell.trim().parse().map_err(|_| Error::NonNumericCell {
                    row: row_no,
                    col: col_idx + 1,
                })?;
                if !value.is_finite() {
                    return Err(Error::NonNumericCell {
                        row: row_no,
                        col: col_idx + 1,
                    });
                }
                row.push(value);
            }
            rows.push(row);
        }

        let n = rows.len();
        if n < 2 {
            return Err(Error::TooFewRows { min: 2, got: n });
        }

        let response_cols = parse_index_spec(response_spec, ncols)?;
        if response_cols.is_empty() {
            return Err(Error::InvalidColumnSpec {
                spec: response_spec.to_string(),
                reason: "response spec selects no columns".into(),
            });
        }
        let is_response = {
            let mut mask = vec![false; ncols];
            for &c in &response_cols {
                mask[c] = true;
            }
            mask
        };
        let predictor_cols: Vec<usize> = (0..ncols).filter(|&c| !is_response[c]).collect();
        if predictor_cols.is_empty() {
            return Err(Error::EmptyPredictors);
        }

        let p = predictor_cols.len();
        let q = response_cols.len();
        let mut x = Array2::zeros((n, p).f());
        let mut y = Array2::zeros((n, q).f());
        for (i, row) in rows.iter().enumerate() {
            for (j, &c) in predictor_cols.iter().enumerate() {
                x[[i, j]] = row[c];
            }
            for (j, &c) in response_cols.iter().enumerate() {
                y[[i, j]] = row[c];
            }
        }

        let x_names = predictor_cols.iter().map(|&c| headers[c].clone()).collect();
        let y_names = response_cols.iter().map(|&c| headers[c].clone()).collect();
        let groups = group_spec.map(|s| parse_group_spec(s, p)).transpose()?;
        Self::with_names(x, y, groups, x_names, y_names)
    }

    /// Writes the dataset as CSV: predictor columns first, then response
    /// columns, with the stored header names. Values use the shortest
    /// round-trip float representation, so a reload reproduces them exactly.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut writer = csv::Writer::from_path(path.as_ref())?;
        let header: Vec<&str> = self
            .x_names
            .iter()
            .chain(self.y_names.iter())
            .map(String::as_str)
            .collect();
        writer.write_record(&header)?;
        for i in 0..self.n() {
            let mut record = Vec::with_capacity(self.p() + self.q());
            for j in 0..self.p() {
                record.push(self.x[[i, j]].to_string());
            }
            for j in 0..self.q() {
                record.push(self.y[[i, j]].to_string());
            }
            writer.write_record(&record)?;
        }
        writer.flush()?;
        Ok(())
    }

    /// Centers and scales each predictor column to mean 0 and sample
    /// standard deviation 1 (n−1 denominator). Constant columns are left
    /// centered at exactly zero and their 0-based indices are returned as
    /// the zero-variance flags.
    pub fn standardize_columns(&self) -> (Dataset, Vec<usize>) {
        let n = self.n();
        let mut x = self.x.clone();
        let mut zero_variance = Vec::new();
        for j in 0..self.p() {
            let col = self.predictor_column(j);
            let (min, max) = col
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                    (lo.min(v), hi.max(v))
                });
            if min == max {
                // Constant column: subtract the constant itself so the
                // result is exactly zero, not mean-rounding noise.
                for i in 0..n {
                    x[[i, j]] = 0.0;
                }
                zero_variance.push(j);
                continue;
            }
            let mean = col.iter().sum::<f64>() / n as f64;
            let var = col.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
            let sd = var.sqrt();
            for i in 0..n {
                x[[i, j]] = (col[i] - mean) / sd;
            }
        }
        let standardized = Dataset {
            x,
            y: self.y.clone(),
            blocks: self.blocks.clone(),
            feature_names: self.feature_names.clone(),
            x_names: self.x_names.clone(),
            y_names: self.y_names.clone(),
        };
        (standardized, zero_variance)
    }
}

fn check_finite(m: &ArrayView2<f64>, name: &'static str) -> Result<()> {
    for ((row, col), &v) in m.indexed_iter() {
        if !v.is_finite() {
            return Err(Error::NonFiniteValue {
                matrix: name,
                row,
                col,
            });
        }
    }
    Ok(())
}

fn to_col_major(a: Array2<f64>) -> Array2<f64> {
    if a.t().is_standard_layout() {
        return a;
    }
    let mut out = Array2::zeros(a.raw_dim().f());
    out.assign(&a);
    out
}

fn validate_groups(groups: Vec<Vec<usize>>, p: usize) -> Result<Vec<FeatureBlock>> {
    let mut seen = vec![false; p];
    let mut blocks = Vec::with_capacity(groups.len());
    for (g, columns) in groups.into_iter().enumerate() {
        if columns.is_empty() {
            return Err(Error::InvalidGroupSpec {
                spec: format!("block {}", g + 1),
                reason: "empty block".into(),
            });
        }
        for pair in columns.windows(2) {
            if pair[1] <= pair[0] {
                return Err(Error::InvalidGroupSpec {
                    spec: format!("block {}", g + 1),
                    reason: "columns must be strictly increasing".into(),
                });
            }
        }
        for &c in &columns {
            if c >= p {
                return Err(Error::InvalidGroupSpec {
                    spec: format!("block {}", g + 1),
                    reason: format!("column index {c} out of range for p = {p}"),
                });
            }
            if seen[c] {
                return Err(Error::InvalidGroupSpec {
                    spec: format!("block {}", g + 1),
                    reason: format!("column {c} assigned to more than one block"),
                });
            }
            seen[c] = true;
        }
        blocks.push(FeatureBlock {
            block_id: g + 1,
            columns,
        });
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(Error::InvalidGroupSpec {
            spec: "group partition".into(),
            reason: format!("column {missing} not covered by any block"),
        });
    }
    Ok(blocks)
}

/// Parses the 1-based range grammar (`"1-3;4;7"`) into sorted, 0-based
/// column indices. Duplicate selections are rejected.
pub fn parse_index_spec(spec: &str, ncols: usize) -> Result<Vec<usize>> {
    let err = |reason: String| Error::InvalidColumnSpec {
        spec: spec.to_string(),
        reason,
    };
    let mut out = Vec::new();
    for token in spec.split(';') {
        let token = token.trim();
        if token.is_empty() {
            return Err(err("empty segment".into()));
        }
        let (lo, hi) = match token.split_once('-') {
            Some((a, b)) => (
                parse_one_based(a).ok_or_else(|| err(format!("bad index `{a}`")))?,
                parse_one_based(b).ok_or_else(|| err(format!("bad index `{b}`")))?,
            ),
            None => {
                let v = parse_one_based(token).ok_or_else(|| err(format!("bad index `{token}`")))?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(err(format!("descending range `{token}`")));
        }
        if hi > ncols {
            return Err(err(format!("index {hi} exceeds column count {ncols}")));
        }
        for v in lo..=hi {
            out.push(v - 1);
        }
    }
    out.sort_unstable();
    if out.windows(2).any(|w| w[0] == w[1]) {
        return Err(err("duplicate column selection".into()));
    }
    Ok(out)
}

/// Parses a group spec (`"1-3;4;5-6"`) over `p` predictor columns into an
/// ordered partition. Every column must be covered exactly once.
pub fn parse_group_spec(spec: &str, p: usize) -> Result<Vec<Vec<usize>>> {
    let err = |reason: String| Error::InvalidGroupSpec {
        spec: spec.to_string(),
        reason,
    };
    let mut groups = Vec::new();
    let mut seen = vec![false; p];
    for token in spec.split(';') {
        let token = token.trim();
        if token.is_empty() {
            return Err(err("empty segment".into()));
        }
        let (lo, hi) = match token.split_once('-') {
            Some((a, b)) => (
                parse_one_based(a).ok_or_else(|| err(format!("bad index `{a}`")))?,
                parse_one_based(b).ok_or_else(|| err(format!("bad index `{b}`")))?,
            ),
            None => {
                let v = parse_one_based(token).ok_or_else(|| err(format!("bad index `{token}`")))?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(err(format!("descending range `{token}`")));
        }
        if hi > p {
            return Err(err(format!("index {hi} exceeds predictor count {p}")));
        }
        let block: Vec<usize> = (lo - 1..hi).collect();
        for &c in &block {
            if seen[c] {
                return Err(err(format!("column {} assigned twice", c + 1)));
            }
            seen[c] = true;
        }
        groups.push(block);
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(err(format!("column {} not covered", missing + 1)));
    }
    Ok(groups)
}

fn parse_one_based(s: &str) -> Option<usize> {
    let v: usize = s.trim().parse().ok()?;
    (v >= 1).then_some(v)
}
