use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::linalg::{qr_least_squares, to_matrix, to_nested};
use super::{coefficients_from, DesignMatrix, EconError, FitKind, FitResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bandwidth {
    /// floor(4·(n/100)^(2/9)).
    #[default]
    Auto,
    Fixed(usize),
}

pub fn auto_bandwidth(n: usize) -> usize {
    (4.0 * (n as f64 / 100.0).powf(2.0 / 9.0)).floor() as usize
}

/// OLS with Newey-West (Bartlett kernel) HAC covariance.
pub fn ols_newey_west(design: &DesignMatrix, bandwidth: Bandwidth) -> Result<FitResult, EconError> {
    let (x, y) = to_matrix(design);
    let (n, k) = x.shape();
    let (beta, bread) = qr_least_squares(&x, &y, &design.column_names)?;
    let resid = &y - &x * &beta;
    let lags = match bandwidth {
        Bandwidth::Auto => auto_bandwidth(n),
        Bandwidth::Fixed(l) => l,
    };

    // scores u_t = x_t·e_t, one row per observation
    let u = DMatrix::from_fn(n, k, |t, j| x[(t, j)] * resid[t]);
    let mut meat = u.transpose() * &u;
    for lag in 1..=lags.min(n - 1) {
        let w = 1.0 - lag as f64 / (lags as f64 + 1.0);
        let lead = u.rows(lag, n - lag);
        let back = u.rows(0, n - lag);
        let gamma = lead.transpose() * back;
        meat += (&gamma + gamma.transpose()) * w;
    }
    let cov = &bread * meat * &bread;

    let mut fit = finish(design, &x, &y, &beta, &resid, &cov);
    fit.bandwidth = Some(lags);
    Ok(fit)
}

/// Heteroskedasticity-robust (HC0) covariance, computed as (XᵀX)⁻¹ Xᵀ diag(e²) X (XᵀX)⁻¹.
pub fn white_covariance(design: &DesignMatrix) -> Result<Vec<Vec<f64>>, EconError> {
    let (x, y) = to_matrix(design);
    let (beta, bread) = qr_least_squares(&x, &y, &design.column_names)?;
    let resid = &y - &x * &beta;
    let e2 = DMatrix::from_diagonal(&resid.map(|e| e * e));
    let meat = x.transpose() * e2 * &x;
    Ok(to_nested(&(&bread * meat * &bread)))
}

fn finish(
    design: &DesignMatrix,
    x: &DMatrix<f64>,
    y: &DVector<f64>,
    beta: &DVector<f64>,
    resid: &DVector<f64>,
    cov: &DMatrix<f64>,
) -> FitResult {
    let (n, k) = x.shape();
    let nf = n as f64;
    let ssr = resid.norm_squared();
    let intercept = design.has_intercept();
    let sst = if intercept {
        let mean = y.mean();
        y.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
    } else {
        y.norm_squared()
    };
    let r2 = 1.0 - ssr / sst;
    let df_total = if intercept { nf - 1.0 } else { nf };
    let adj = 1.0 - (1.0 - r2) * df_total / (nf - k as f64);
    let ll = -nf / 2.0 * ((2.0 * std::f64::consts::PI).ln() + (ssr / nf).ln() + 1.0);
    let cov = to_nested(cov);
    FitResult {
        kind: FitKind::Ols,
        coefficients: coefficients_from(&design.column_names, beta.as_slice(), &cov),
        covariance: cov,
        log_likelihood: ll,
        aic: 2.0 * k as f64 - 2.0 * ll,
        n_obs: n,
        r2: Some(r2),
        adj_r2: Some(adj),
        bandwidth: None,
        iterations: None,
        converged: true,
        warnings: Vec::new(),
    }
}
