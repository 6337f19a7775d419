//! Search for the stabilization parameter minimizing the total wavenumber
//! error over all propagation angles.

use rayon::prelude::*;

use super::metrics::error_metrics_with;
use super::solve::ContinuationPlan;
use super::stencil::DispersionMethod;
use crate::{C64, Error, Result};

/// Which half plane of `Im(tau)` to search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    ImPos,
    ImNeg,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Coarse grid spacing over Re in [-1, 1] and |Im| in (0, 1.5].
    pub coarse_step: f64,
    /// Target bracket width of the coordinate-wise refinement.
    pub refine_tol: f64,
    pub n_angles: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            coarse_step: 0.05,
            refine_tol: 1e-3,
            n_angles: 181,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OptimalTau {
    pub tau: C64,
    pub eps_total: f64,
}

fn eps_total_at(p: u32, kh: f64, tau: C64, n_angles: usize) -> f64 {
    // failed solves disqualify the candidate
    ContinuationPlan::new(DispersionMethod::Hdg { tau }, p, kh)
        .and_then(|plan| error_metrics_with(&plan, n_angles))
        .map(|m| m.eps_total)
        .unwrap_or(f64::INFINITY)
}

fn golden_min(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let gr = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - gr * (b - a);
    let mut d = a + gr * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}

/// Coarse complex-grid scan followed by coordinate-wise golden-section
/// refinement of `eps_total` as a function of `tau`, restricted to one
/// imaginary half plane.
pub fn optimal_tau_search(
    p: u32,
    kh: f64,
    branch: Branch,
    opts: &SearchOptions,
) -> Result<OptimalTau> {
    if kh.is_nan() || kh <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "normalized wavenumber must be positive, got {kh}"
        )));
    }
    let step = opts.coarse_step;
    let sign = match branch {
        Branch::ImPos => 1.0,
        Branch::ImNeg => -1.0,
    };
    let n_re = (2.0 / step).round() as i64;
    let n_im = (1.5 / step).round() as i64;
    let mut grid = Vec::new();
    for j in 1..=n_im {
        for i in -(n_re / 2)..=(n_re / 2) {
            grid.push(C64::new(i as f64 * step, sign * j as f64 * step));
        }
    }
    let scored: Vec<(C64, f64)> = grid
        .into_par_iter()
        .map(|tau| (tau, eps_total_at(p, kh, tau, opts.n_angles)))
        .collect();
    let (mut tau, mut best) = scored
        .into_iter()
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();
    if !best.is_finite() {
        return Err(Error::RootNotFound(
            "no feasible tau on the coarse grid".into(),
        ));
    }

    // alternate golden-section passes along Im then Re, shrinking brackets
    let mut width = step;
    while width > opts.refine_tol {
        let (im, _) = golden_min(
            |im| eps_total_at(p, kh, C64::new(tau.re, im), opts.n_angles),
            tau.im - width,
            tau.im + width,
            opts.refine_tol / 4.0,
        );
        tau.im = im;
        let (re, v) = golden_min(
            |re| eps_total_at(p, kh, C64::new(re, tau.im), opts.n_angles),
            tau.re - width,
            tau.re + width,
            opts.refine_tol / 4.0,
        );
        tau.re = re;
        best = v;
        width /= 4.0;
    }
    Ok(OptimalTau {
        tau,
        eps_total: best,
    })
}
