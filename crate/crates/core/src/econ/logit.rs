use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::linalg::{to_matrix, to_nested};
use super::{coefficients_from, DesignMatrix, EconError, FitKind, FitResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogitOptions {
    pub max_iter: usize,
    /// Stop when max |∇ℓ| falls below this.
    pub grad_tol: f64,
    /// Or when the relative change in ℓ falls below this.
    pub ll_tol: f64,
}

impl Default for LogitOptions {
    fn default() -> Self {
        LogitOptions {
            max_iter: 100,
            grad_tol: 1e-8,
            ll_tol: 1e-12,
        }
    }
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// log(1 + e^z) without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

fn ll_of(x: &DMatrix<f64>, y: &DVector<f64>, beta: &DVector<f64>) -> f64 {
    let eta = x * beta;
    eta.iter().zip(y.iter()).map(|(&e, &yi)| yi * e - softplus(e)).sum()
}

fn grad_of(x: &DMatrix<f64>, y: &DVector<f64>, beta: &DVector<f64>) -> DVector<f64> {
    let eta = x * beta;
    let r = DVector::from_fn(y.len(), |i, _| y[i] - sigmoid(eta[i]));
    x.transpose() * r
}

fn hessian_of(x: &DMatrix<f64>, beta: &DVector<f64>) -> DMatrix<f64> {
    let eta = x * beta;
    let w = DMatrix::from_fn(x.nrows(), x.ncols(), |i, j| {
        let p = sigmoid(eta[i]);
        x[(i, j)] * p * (1.0 - p)
    });
    x.transpose() * w
}

/// Bernoulli log-likelihood of `beta` on the design.
pub fn logit_log_likelihood(design: &DesignMatrix, beta: &[f64]) -> f64 {
    let (x, y) = to_matrix(design);
    ll_of(&x, &y, &DVector::from_column_slice(beta))
}

/// Analytic score vector Xᵀ(y − p).
pub fn logit_gradient(design: &DesignMatrix, beta: &[f64]) -> Vec<f64> {
    let (x, y) = to_matrix(design);
    grad_of(&x, &y, &DVector::from_column_slice(beta)).as_slice().to_vec()
}

/// Maximum likelihood logit by damped Newton-Raphson. Separation is reported
/// as a warning on the result; failure to converge otherwise is an error.
pub fn logit_mle(design: &DesignMatrix, opts: LogitOptions) -> Result<FitResult, EconError> {
    let (x, y) = to_matrix(design);
    let (n, k) = x.shape();
    if n <= k {
        return Err(EconError::TooFewObservations { n, k });
    }
    if let Some(&bad) = y.iter().find(|&&v| v != 0.0 && v != 1.0) {
        return Err(EconError::NonBinaryTarget(bad));
    }
    let ones = y.iter().filter(|&&v| v == 1.0).count();
    if ones == 0 || ones == n {
        return Err(EconError::SingleClass);
    }

    let mut beta = DVector::zeros(k);
    let mut ll = ll_of(&x, &y, &beta);
    let mut converged = false;
    let mut singular = false;
    let mut iterations = 0;
    while iterations < opts.max_iter {
        let g = grad_of(&x, &y, &beta);
        if g.amax() < opts.grad_tol {
            converged = true;
            break;
        }
        iterations += 1;
        let Some(chol) = hessian_of(&x, &beta).cholesky() else {
            singular = true;
            break;
        };
        let step = chol.solve(&g);
        let mut t = 1.0;
        let mut next = &beta + &step;
        let mut next_ll = ll_of(&x, &y, &next);
        for _ in 0..40 {
            if next_ll >= ll {
                break;
            }
            t *= 0.5;
            next = &beta + &step * t;
            next_ll = ll_of(&x, &y, &next);
        }
        if next_ll < ll {
            // ll differences are below its resolution here; let the gradient decide
            let full = &beta + &step;
            if grad_of(&x, &y, &full).amax() < g.amax() {
                ll = ll_of(&x, &y, &full);
                beta = full;
                continue;
            }
            converged = g.amax() < opts.grad_tol.sqrt();
            break;
        }
        let rel = (next_ll - ll) / ll.abs().max(f64::MIN_POSITIVE);
        beta = next;
        ll = next_ll;
        if rel < opts.ll_tol {
            // ll has flattened out; one more full step sharpens the estimate
            if let Some(chol) = hessian_of(&x, &beta).cholesky() {
                let g = grad_of(&x, &y, &beta);
                let polished = &beta + chol.solve(&g);
                if grad_of(&x, &y, &polished).amax() < g.amax() {
                    ll = ll_of(&x, &y, &polished);
                    beta = polished;
                }
            }
            converged = true;
            break;
        }
    }

    let eta = &x * &beta;
    let p: Vec<f64> = eta.iter().map(|&e| sigmoid(e)).collect();
    let fitted_exactly = p.iter().zip(y.iter()).all(|(pi, yi)| (pi - yi).abs() < 1e-6);
    let diverging = eta.amax() > 30.0 && !converged;
    let separated = fitted_exactly || diverging || singular;

    let mut warnings = Vec::new();
    if separated {
        warnings.push("possible separation: estimates and standard errors are unreliable".to_string());
    } else if !converged {
        return Err(EconError::NonConvergence { iterations });
    }

    let cov = hessian_of(&x, &beta)
        .try_inverse()
        .map(|m| to_nested(&m))
        .unwrap_or_else(|| vec![vec![f64::NAN; k]; k]);
    Ok(FitResult {
        kind: FitKind::Logit,
        coefficients: coefficients_from(&design.column_names, beta.as_slice(), &cov),
        covariance: cov,
        log_likelihood: ll,
        aic: 2.0 * k as f64 - 2.0 * ll,
        n_obs: n,
        r2: None,
        adj_r2: None,
        bandwidth: None,
        iterations: Some(iterations),
        converged: converged && !separated,
        warnings,
    })
}
