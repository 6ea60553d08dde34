//! Classical regression: least squares and its risk, the cosine-basis
//! bias–variance experiment, Haar wavelets and thresholding on orthogonal
//! designs.

mod haar;

pub use haar::{haar_forward, haar_inverse, WaveletCoeffs};

use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Error, Result};
use crate::model_gen::{normal_vec, seeded_rng, DesignKind, DesignMatrix};
use crate::shrinkage::ShrinkageRule;

/// Numerical rank of `x` from the column-pivoted QR diagonal.
fn numerical_rank(x: &DMatrix<f64>) -> usize {
    let qr = x.clone().col_piv_qr();
    let r = qr.r();
    let diag: Vec<f64> = (0..r.nrows().min(r.ncols())).map(|i| r[(i, i)].abs()).collect();
    let top = diag.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    let tol = top * f64::EPSILON * x.nrows().max(x.ncols()) as f64 * 10.0;
    diag.iter().filter(|d| **d > tol).count()
}

fn full_rank_r(x: &DesignMatrix) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let p = x.p();
    let rank = if x.n() < p { x.n() } else { numerical_rank(x.entries()) };
    if rank < p {
        return Err(Error::SingularDesign { deficient: p - rank, columns: p });
    }
    let qr = x.entries().clone().qr();
    Ok((qr.q(), qr.r()))
}

/// The residual-sum-of-squares minimizer `(X^T X)^{-1} X^T y`, via QR.
pub fn least_squares(x: &DesignMatrix, y: &DVector<f64>) -> Result<DVector<f64>> {
    if y.len() != x.n() {
        return Err(invalid(format!("least_squares: y has length {} but n = {}", y.len(), x.n())));
    }
    let (q, r) = full_rank_r(x)?;
    let qty = q.tr_mul(y);
    r.solve_upper_triangular(&qty)
        .ok_or(Error::SingularDesign { deficient: 1, columns: x.p() })
}

/// `sigma^2 tr((X^T X)^{-1})`, the risk `E ||theta_hat - theta||^2` of least squares.
pub fn ls_risk_formula(x: &DesignMatrix, sigma: f64) -> Result<f64> {
    let (_, r) = full_rank_r(x)?;
    let p = x.p();
    let rinv = r
        .solve_upper_triangular(&DMatrix::identity(p, p))
        .ok_or(Error::SingularDesign { deficient: 1, columns: p })?;
    Ok(sigma * sigma * rinv.norm_squared())
}

/// Cosine design `X_ij = phi_j(i/n)`, `i = 1..n`, with `phi_1 = 1` and
/// `phi_j(t) = sqrt2 cos((j-1) pi t)`.
pub fn fourier_design(n: usize, j_cols: usize) -> Result<DesignMatrix> {
    if n == 0 || j_cols == 0 || j_cols > n {
        return Err(invalid(format!("fourier_design needs 1 <= J <= n (J={j_cols}, n={n})")));
    }
    let x = DMatrix::from_fn(n, j_cols, |i, j| {
        if j == 0 {
            1.0
        } else {
            let t = (i + 1) as f64 / n as f64;
            std::f64::consts::SQRT_2 * (j as f64 * std::f64::consts::PI * t).cos()
        }
    });
    DesignMatrix::new(x, DesignKind::Fourier)
}

/// Monte Carlo prediction risk against the number of basis functions.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskCurve {
    /// `(J, risk)` for `J = 1..=J_max`.
    pub grid: Vec<(usize, f64)>,
    /// Smallest `J` attaining the minimum risk.
    pub argmin_j: usize,
}

impl RiskCurve {
    pub fn min_risk(&self) -> f64 {
        self.grid[self.argmin_j - 1].1
    }
}

/// Prediction risk `(1/n) E ||X theta_hat - f||^2` of least squares on the
/// first `J` cosine columns, for every `J <= j_max`.
///
/// The `j_max` columns are orthonormalized once; the nested least-squares
/// fits are then prefixes of the projection. Replicate `r` draws its noise
/// from seed `seed + r` and reuses it for every `J`.
pub fn bias_variance_curve(
    f: impl Fn(f64) -> f64,
    n: usize,
    sigma: f64,
    j_max: usize,
    replicates: usize,
    seed: u64,
) -> Result<RiskCurve> {
    if replicates == 0 {
        return Err(invalid("bias_variance_curve needs at least one replicate"));
    }
    if !(sigma >= 0.0) {
        return Err(invalid(format!("sigma must be >= 0 (got {sigma})")));
    }
    let x = fourier_design(n, j_max)?;
    let (q, _) = full_rank_r(&x)?;
    let truth = DVector::from_fn(n, |i, _| f((i + 1) as f64 / n as f64));
    if truth.iter().any(|v| !v.is_finite()) {
        return Err(invalid("f must be finite on the grid i/n"));
    }
    let mut totals = vec![0.0; j_max];
    for r in 0..replicates {
        let mut y = truth.clone();
        if sigma > 0.0 {
            let mut rng = seeded_rng(seed.wrapping_add(r as u64));
            for (yi, z) in y.iter_mut().zip(normal_vec(&mut rng, n)) {
                *yi += sigma * z;
            }
        }
        let coef = q.tr_mul(&y);
        let mut fitted = DVector::zeros(n);
        for j in 0..j_max {
            fitted.axpy(coef[j], &q.column(j), 1.0);
            totals[j] += (&fitted - &truth).norm_squared() / n as f64;
        }
    }
    let grid: Vec<(usize, f64)> = totals
        .iter()
        .enumerate()
        .map(|(j, t)| (j + 1, t / replicates as f64))
        .collect();
    let mut argmin_j = 1;
    for &(j, risk) in &grid {
        if risk < grid[argmin_j - 1].1 {
            argmin_j = j;
        }
    }
    Ok(RiskCurve { grid, argmin_j })
}

/// `sigma sqrt(2 log p / n)`
pub fn universal_threshold(sigma: f64, n: usize, p: usize) -> Result<f64> {
    if p < 2 {
        return Err(invalid(format!("universal_threshold needs p >= 2 (got {p})")));
    }
    if n == 0 {
        return Err(invalid("universal_threshold needs n >= 1"));
    }
    if !(sigma >= 0.0) {
        return Err(invalid(format!("sigma must be >= 0 (got {sigma})")));
    }
    Ok(sigma * (2.0 * (p as f64).ln() / n as f64).sqrt())
}

/// `X^T y / n`, the coordinatewise noisy observation under an orthogonal design.
pub fn orthogonal_statistic(x: &DesignMatrix, y: &DVector<f64>) -> Result<DVector<f64>> {
    if x.kind() != DesignKind::Orthogonal {
        return Err(invalid("design is not tagged orthogonal"));
    }
    if y.len() != x.n() {
        return Err(invalid(format!("y has length {} but n = {}", y.len(), x.n())));
    }
    Ok(x.apply_t(y) / x.n() as f64)
}

/// Threshold `X^T y / n` coordinatewise.
pub fn ortho_denoise(x: &DesignMatrix, y: &DVector<f64>, rule: ShrinkageRule) -> Result<DVector<f64>> {
    let stat = orthogonal_statistic(x, y)?;
    Ok(stat.map(|v| rule.apply(v)))
}
