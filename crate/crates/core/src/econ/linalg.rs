use nalgebra::{DMatrix, DVector};

use super::{DesignMatrix, EconError};

pub(crate) fn to_matrix(d: &DesignMatrix) -> (DMatrix<f64>, DVector<f64>) {
    let (n, k) = (d.n_obs(), d.n_cols());
    let x = DMatrix::from_fn(n, k, |i, j| d.rows[i][j]);
    let y = DVector::from_column_slice(&d.target);
    (x, y)
}

/// Least squares through a thin QR. Returns β and (XᵀX)⁻¹ = R⁻¹R⁻ᵀ.
/// A column whose |R_jj| falls below n·ε·max‖x_j‖ is reported as rank deficient.
pub(crate) fn qr_least_squares(
    x: &DMatrix<f64>,
    y: &DVector<f64>,
    names: &[String],
) -> Result<(DVector<f64>, DMatrix<f64>), EconError> {
    let (n, k) = x.shape();
    if n <= k {
        return Err(EconError::TooFewObservations { n, k });
    }
    let max_norm = x.column_iter().map(|c| c.norm()).fold(0.0, f64::max);
    let tol = n as f64 * f64::EPSILON * max_norm;
    let qr = x.clone().qr();
    let r = qr.r();
    for j in 0..k {
        if r[(j, j)].abs() <= tol {
            return Err(EconError::RankDeficient {
                column: names.get(j).cloned().unwrap_or_default(),
            });
        }
    }
    let qty = qr.q().transpose() * y;
    let beta = r.solve_upper_triangular(&qty).ok_or(EconError::RankDeficient { column: String::new() })?;
    let r_inv = r
        .solve_upper_triangular(&DMatrix::identity(k, k))
        .ok_or(EconError::RankDeficient { column: String::new() })?;
    let bread = &r_inv * r_inv.transpose();
    Ok((beta, bread))
}

pub(crate) fn to_nested(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}
