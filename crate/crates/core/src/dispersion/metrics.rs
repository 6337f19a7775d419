//! Angle-swept wavenumber error metrics.

use rayon::prelude::*;

use super::solve::ContinuationPlan;
use super::stencil::DispersionMethod;
use crate::{Error, Result};

/// Worst-case errors of the discrete wavenumber over the angle sweep
/// (h = 1 normalization, so the exact wavenumber is `kh`):
/// dispersive `max |Re k^h - k|`, dissipative `max |Im k^h|`, total
/// `max |k^h - k|`.
#[derive(Debug, Clone, Copy)]
pub struct ErrorMetrics {
    pub eps_disp: f64,
    pub eps_dissip: f64,
    pub eps_total: f64,
}

/// Uniform angles over [0, pi/2], endpoints included.
pub fn angle_set(n_angles: usize) -> Vec<f64> {
    let step = std::f64::consts::FRAC_PI_2 / (n_angles - 1) as f64;
    (0..n_angles).map(|i| i as f64 * step).collect()
}

/// Metrics with a caller-provided continuation plan (reused across `tau`
/// scans by the optimal-parameter search).
pub fn error_metrics_with(plan: &ContinuationPlan, n_angles: usize) -> Result<ErrorMetrics> {
    if n_angles < 2 {
        return Err(Error::InvalidArgument(
            "need at least 2 propagation angles".into(),
        ));
    }
    let k = plan.kh;
    let results: Result<Vec<_>> = angle_set(n_angles)
        .into_par_iter()
        .map(|theta| plan.solve(theta))
        .collect();
    let mut eps_disp = 0.0f64;
    let mut eps_dissip = 0.0f64;
    let mut eps_total = 0.0f64;
    for r in results? {
        eps_disp = eps_disp.max((r.k_h.re - k).abs());
        eps_dissip = eps_dissip.max(r.k_h.im.abs());
        eps_total = eps_total.max((r.k_h - num_complex::Complex64::new(k, 0.0)).norm());
    }
    Ok(ErrorMetrics {
        eps_disp,
        eps_dissip,
        eps_total,
    })
}

pub fn error_metrics(
    method: DispersionMethod,
    p: u32,
    kh: f64,
    n_angles: usize,
) -> Result<ErrorMetrics> {
    error_metrics_with(&ContinuationPlan::new(method, p, kh)?, n_angles)
}
