//! Numerical estimate of the order of a function on a ray,
//! `lim ln|psi(r e^{i phi})| / ln r` as `r -> 0` or `r -> infinity`.
//!
//! Samples are taken on a geometric radius sequence, so successive slopes of
//! `ln|psi|` against `ln r` are exact for pure powers and converge to the
//! order otherwise.

pub mod expr;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

pub use crate::truncation::Regime;
pub use expr::{Expr, ExprError};

pub const DEFAULT_TOLERANCE: f64 = 1e-3;
pub const DEFAULT_COUNT: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrderError {
    #[error("invalid ray: {0}")]
    InvalidRay(String),
    #[error("|psi| is zero or not finite at r = {r:e}; zero or pole on the ray")]
    ZeroOrPole { r: f64 },
    #[error("slopes oscillate (residual {residual:e}); the order may not exist on this ray")]
    OrderMayNotExist { residual: f64, slopes: Vec<f64> },
}

/// Ray direction and geometric sample radii `r0 * ratio^j`, `j < count`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RaySpec {
    pub phi: f64,
    pub regime: Regime,
    pub r0: f64,
    pub ratio: f64,
    pub count: usize,
}

impl RaySpec {
    pub fn new(phi: f64, regime: Regime) -> Self {
        match regime {
            Regime::ToZero => Self { phi, regime, r0: 1e-1, ratio: 10f64.powf(-0.5), count: DEFAULT_COUNT },
            Regime::ToInfinity => Self { phi, regime, r0: 1e1, ratio: 10f64.powf(0.5), count: DEFAULT_COUNT },
        }
    }

    pub fn validate(&self) -> Result<(), OrderError> {
        let bad = |m: &str| Err(OrderError::InvalidRay(m.to_string()));
        if !(self.r0 > 0.0 && self.r0.is_finite()) {
            return bad("r0 must be positive and finite");
        }
        if self.count < 4 {
            return bad("count must be at least 4");
        }
        match self.regime {
            Regime::ToZero if !(self.ratio > 0.0 && self.ratio < 1.0) => bad("ratio must lie in (0, 1) for r -> 0"),
            Regime::ToInfinity if !(self.ratio > 1.0 && self.ratio.is_finite()) => {
                bad("ratio must exceed 1 for r -> infinity")
            }
            _ => Ok(()),
        }
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..self.count).map(|j| self.r0 * self.ratio.powi(j as i32)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderEstimate {
    pub value: f64,
    /// Largest change between successive slopes over the second half of
    /// the sequence.
    pub residual: f64,
    pub converged: bool,
    pub slopes: Vec<f64>,
}

fn slopes<F: Fn(Complex64) -> Complex64>(psi: F, ray: &RaySpec) -> Result<Vec<f64>, OrderError> {
    let dir = Complex64::from_polar(1.0, ray.phi);
    let radii = ray.radii();
    let mut logs = Vec::with_capacity(radii.len());
    for &r in &radii {
        let m = psi(dir * r).norm();
        if !(m > 0.0 && m.is_finite()) {
            return Err(OrderError::ZeroOrPole { r });
        }
        logs.push(m.ln());
    }
    Ok(logs.windows(2).zip(radii.windows(2)).map(|(l, r)| (l[1] - l[0]) / (r[1].ln() - r[0].ln())).collect())
}

/// Aitken extrapolation of the last three slopes when they contract
/// geometrically, otherwise the last slope.
fn extrapolate(s: &[f64]) -> f64 {
    let n = s.len();
    let last = s[n - 1];
    if n < 3 {
        return last;
    }
    let d1 = s[n - 2] - s[n - 3];
    let d2 = last - s[n - 2];
    if d1 == 0.0 || d2 == 0.0 {
        return last;
    }
    let q = d2 / d1;
    if q > 0.0 && q <= 0.9 {
        last - d2 * d2 / (d2 - d1)
    } else {
        last
    }
}

pub fn estimate_order<F: Fn(Complex64) -> Complex64>(
    psi: F,
    ray: &RaySpec,
    tol: f64,
) -> Result<OrderEstimate, OrderError> {
    ray.validate()?;
    let s = slopes(psi, ray)?;
    let tail = &s[s.len() / 2..];
    let diffs: Vec<f64> = tail.windows(2).map(|w| w[1] - w[0]).collect();
    let residual = diffs.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let converged = residual <= tol;
    if !converged {
        let sign_changes = diffs.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
        if sign_changes >= 1 {
            return Err(OrderError::OrderMayNotExist { residual, slopes: s });
        }
    }
    Ok(OrderEstimate { value: extrapolate(&s), residual, converged, slopes: s })
}

/// Order estimates for each direction in `phis`.
pub fn sweep<F: Fn(Complex64) -> Complex64>(
    psi: F,
    phis: &[f64],
    regime: Regime,
    tol: f64,
) -> Vec<(f64, Result<OrderEstimate, OrderError>)> {
    phis.iter().map(|&phi| (phi, estimate_order(&psi, &RaySpec::new(phi, regime), tol))).collect()
}

/// Which exponent geometry the derivative gaps are consistent with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapClass {
    /// `gamma1 = gamma2 = 1`.
    TwoDimAdequate,
    /// `gamma1 = gamma2`.
    ThreeDimAdequate,
    /// `gamma1 != gamma2`.
    FourDimNecessary,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapReport {
    pub orders: [OrderEstimate; 3],
    /// `p(psi) - p(psi')`.
    pub gamma1: f64,
    /// `p(psi') - p(psi'')`.
    pub gamma2: f64,
    pub class: GapClass,
}

/// Compares the orders of `psi`, `psi'` and `psi''`, all supplied
/// explicitly.
pub fn derivative_order_gaps<F0, F1, F2>(
    psi: F0,
    dpsi: F1,
    d2psi: F2,
    ray: &RaySpec,
    tol: f64,
) -> Result<GapReport, OrderError>
where
    F0: Fn(Complex64) -> Complex64,
    F1: Fn(Complex64) -> Complex64,
    F2: Fn(Complex64) -> Complex64,
{
    let o0 = estimate_order(psi, ray, tol)?;
    let o1 = estimate_order(dpsi, ray, tol)?;
    let o2 = estimate_order(d2psi, ray, tol)?;
    let gamma1 = o0.value - o1.value;
    let gamma2 = o1.value - o2.value;
    let band = 2.0 * tol;
    let class = if (gamma1 - 1.0).abs() <= band && (gamma2 - 1.0).abs() <= band {
        GapClass::TwoDimAdequate
    } else if (gamma1 - gamma2).abs() <= band {
        GapClass::ThreeDimAdequate
    } else {
        GapClass::FourDimNecessary
    };
    Ok(GapReport { orders: [o0, o1, o2], gamma1, gamma2, class })
}
