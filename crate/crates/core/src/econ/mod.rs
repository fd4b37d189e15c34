//! Econometric evaluation: autoregressive OLS with Newey-West errors,
//! logistic recession models, ROC/AUC and paired AUC tests.

mod decompose;
mod design;
mod linalg;
mod logit;
mod ols;
mod roc;
mod series;
mod table;

pub use decompose::{delta_ep_decomposition, Decomposition};
pub use design::{build_design, DesignMatrix, DesignSpec, SeriesSet};
pub use logit::{logit_gradient, logit_log_likelihood, logit_mle, LogitOptions};
pub use ols::{auto_bandwidth, ols_newey_west, white_covariance, Bandwidth};
pub use roc::{auc_compare, auc_compare_bootstrap, roc_auc, AucComparison, RocResult};
pub use series::{parse_series_csv, write_series_csv};
pub use table::render_fit_table;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EconError {
    #[error("series {0:?} not found")]
    MissingSeries(String),
    #[error("no usable rows after applying lags and horizon")]
    EmptyDesign,
    #[error("need more observations than coefficients (n = {n}, k = {k})")]
    TooFewObservations { n: usize, k: usize },
    #[error("design matrix is rank deficient (column {column:?})")]
    RankDeficient { column: String },
    #[error("target must be binary 0/1, found {0}")]
    NonBinaryTarget(f64),
    #[error("both classes must be present")]
    SingleClass,
    #[error("logistic fit did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("input lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("non-finite value in input")]
    NonFinite,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FitKind {
    Ols,
    Logit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub name: String,
    pub estimate: f64,
    pub std_error: f64,
    /// Estimate divided by its standard error.
    pub statistic: f64,
    /// Two-sided normal p-value.
    pub p_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub kind: FitKind,
    pub coefficients: Vec<Coefficient>,
    pub covariance: Vec<Vec<f64>>,
    pub log_likelihood: f64,
    pub aic: f64,
    pub n_obs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adj_r2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bandwidth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl FitResult {
    pub fn coefficient(&self, name: &str) -> Option<&Coefficient> {
        self.coefficients.iter().find(|c| c.name == name)
    }

    pub fn estimates(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.estimate).collect()
    }

    pub fn std_errors(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.std_error).collect()
    }
}

pub(crate) fn normal_cdf(z: f64) -> f64 {
    if z == f64::INFINITY {
        return 1.0;
    }
    if z == f64::NEG_INFINITY {
        return 0.0;
    }
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

pub(crate) fn coefficients_from(names: &[String], beta: &[f64], cov: &[Vec<f64>]) -> Vec<Coefficient> {
    names
        .iter()
        .zip(beta)
        .enumerate()
        .map(|(i, (name, &b))| {
            let se = cov[i][i].max(0.0).sqrt();
            let stat = b / se;
            Coefficient {
                name: name.clone(),
                estimate: b,
                std_error: se,
                statistic: stat,
                p_value: if stat.is_finite() { 2.0 * (1.0 - normal_cdf(stat.abs())) } else { f64::NAN },
            }
        })
        .collect()
}
