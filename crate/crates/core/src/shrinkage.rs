//! Scalar shrinkage: soft and hard thresholding, Gaussian risks of soft
//! thresholding, and the minimax threshold over the sparse class `F_eps`.

use libm::erfc;

use crate::error::{invalid, Error, Result};

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda >= 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("threshold must be finite and >= 0 (got {lambda})")))
    }
}

#[inline]
pub(crate) fn soft(x: f64, lambda: f64) -> f64 {
    if x > lambda {
        x - lambda
    } else if x < -lambda {
        x + lambda
    } else {
        0.0
    }
}

#[inline]
pub(crate) fn hard(x: f64, lambda: f64) -> f64 {
    if x.abs() >= lambda {
        x
    } else {
        0.0
    }
}

/// `eta(x; lambda)`: zero on `[-lambda, lambda]`, shifted identity outside.
pub fn soft_threshold(x: f64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(soft(x, lambda))
}

/// Keeps `x` when `|x| >= lambda`.
pub fn hard_threshold(x: f64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(hard(x, lambda))
}

/// Derivative of soft thresholding in `x`; 0 at the kinks `|x| = lambda`.
#[inline]
pub fn soft_threshold_derivative(x: f64, lambda: f64) -> f64 {
    if x.abs() > lambda {
        1.0
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShrinkageKind {
    Soft,
    Hard,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShrinkageRule {
    kind: ShrinkageKind,
    lambda: f64,
}

impl ShrinkageRule {
    pub fn new(kind: ShrinkageKind, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(Self { kind, lambda })
    }

    pub fn soft(lambda: f64) -> Result<Self> {
        Self::new(ShrinkageKind::Soft, lambda)
    }

    pub fn hard(lambda: f64) -> Result<Self> {
        Self::new(ShrinkageKind::Hard, lambda)
    }

    pub fn kind(&self) -> ShrinkageKind {
        self.kind
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    #[inline]
    pub fn apply(&self, x: f64) -> f64 {
        match self.kind {
            ShrinkageKind::Soft => soft(x, self.lambda),
            ShrinkageKind::Hard => hard(x, self.lambda),
        }
    }

    pub fn apply_all<'a>(&self, xs: impl IntoIterator<Item = &'a f64>) -> Vec<f64> {
        xs.into_iter().map(|&x| self.apply(x)).collect()
    }
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// `E eta(Z; lambda)^2 = 2 (1 + lambda^2) Phi(-lambda) - 2 lambda phi(lambda)`.
pub fn soft_null_risk(lambda: f64) -> f64 {
    2.0 * ((1.0 + lambda * lambda) * normal_cdf(-lambda) - lambda * normal_pdf(lambda))
}

/// `E (eta(theta + tau Z; lambda) - theta)^2`, in closed form.
///
/// Splitting on the three branches of `eta` with `a = (lambda - theta)/tau`,
/// `b = (-lambda - theta)/tau`:
/// `E[(tau Z - lambda)^2; Z > a] + E[(tau Z + lambda)^2; Z < b] + theta^2 P(b <= Z <= a)`.
pub fn soft_risk(theta: f64, tau: f64, lambda: f64) -> f64 {
    if tau == 0.0 {
        let e = soft(theta, lambda) - theta;
        return e * e;
    }
    let a = (lambda - theta) / tau;
    let b = (-lambda - theta) / tau;
    let (pa, pb) = (normal_pdf(a), normal_pdf(b));
    let upper_tail = normal_cdf(-a);
    let lower_tail = normal_cdf(b);
    // Mass of the dead zone computed from whichever tail pair is smaller.
    let middle = if a <= 0.0 {
        normal_cdf(a) - normal_cdf(b)
    } else if b >= 0.0 {
        normal_cdf(-b) - normal_cdf(-a)
    } else {
        1.0 - upper_tail - lower_tail
    };
    let t2 = tau * tau;
    let up = t2 * (a * pa + upper_tail) - 2.0 * tau * lambda * pa + lambda * lambda * upper_tail;
    let low = t2 * (lower_tail - b * pb) - 2.0 * tau * lambda * pb + lambda * lambda * lower_tail;
    up + low + theta * theta * middle.max(0.0)
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("eps must lie in (0, 1) (got {eps})")))
    }
}

/// Worst-case Bayes risk of soft thresholding over `F_eps` at unit noise,
/// attained by the two-point prior `(1 - eps) delta_0 + eps delta_inf`:
/// `(1 - eps) E eta(Z; lambda)^2 + eps (1 + lambda^2)`.
pub fn worstcase_soft_risk(eps: f64, lambda: f64) -> Result<f64> {
    check_eps(eps)?;
    check_lambda(lambda)?;
    Ok(worstcase(eps, lambda))
}

fn worstcase(eps: f64, lambda: f64) -> f64 {
    (1.0 - eps) * soft_null_risk(lambda) + eps * (1.0 + lambda * lambda)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimaxResult {
    pub eps: f64,
    /// Minimax risk `M(eps)` at unit noise.
    pub m: f64,
    /// Minimax threshold `ell(eps)`.
    pub ell: f64,
    /// Bound on `|m - M(eps)|` from the final golden-section bracket.
    pub error_bound: f64,
}

const GOLDEN_MAX_ITER: usize = 10_000;

/// Minimize [`worstcase_soft_risk`] over the threshold by golden-section
/// search on `[0, 10 + sqrt(2 log(1/eps))]` down to bracket width `tol`.
pub fn minimax_soft(eps: f64, tol: f64) -> Result<MinimaxResult> {
    check_eps(eps)?;
    if !(tol > 0.0) {
        return Err(invalid(format!("tol must be > 0 (got {tol})")));
    }
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0, 10.0 + (2.0 * (1.0 / eps).ln()).sqrt());
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (worstcase(eps, c), worstcase(eps, d));
    let mut it = 0;
    while hi - lo > tol {
        if it == GOLDEN_MAX_ITER {
            return Err(Error::NumericFailure(format!(
                "golden-section search for eps={eps} stalled at width {} > tol {tol}",
                hi - lo
            )));
        }
        it += 1;
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = worstcase(eps, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = worstcase(eps, d);
        }
    }
    let ell = 0.5 * (lo + hi);
    let m = worstcase(eps, ell);
    let error_bound = (worstcase(eps, lo) - m).abs().max((worstcase(eps, hi) - m).abs());
    Ok(MinimaxResult { eps, m, ell, error_bound })
}
