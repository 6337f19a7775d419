//! Discrete-wavenumber root solves: continuation in `kh` from a regime
//! where `k^h ~ k`, with a secant iteration in the complex plane on the
//! scaled symbol determinant.

use super::stencil::{extract_stencil, extract_stencil_1d, DispersionMethod, Stencil};
use crate::{C64, Error, Result};

/// One solved root of `det F(k^h) = 0`.
#[derive(Debug, Clone, Copy)]
pub struct DispersionResult {
    pub theta: f64,
    pub k_h: C64,
    /// |det F| at the root divided by the stage's determinant scale.
    pub residual: f64,
    pub iterations: u32,
}

/// Stencils along the geometric continuation path `kh/8, kh/4, kh/2, kh`.
/// Building the plan once amortizes condensation across propagation angles.
#[derive(Debug, Clone)]
pub struct ContinuationPlan {
    pub method: DispersionMethod,
    pub p: u32,
    pub kh: f64,
    stages: Vec<(f64, Stencil)>,
}

impl ContinuationPlan {
    pub fn new(method: DispersionMethod, p: u32, kh: f64) -> Result<Self> {
        if kh.is_nan() || kh <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "normalized wavenumber must be positive, got {kh}"
            )));
        }
        let mut stages = Vec::with_capacity(4);
        for stage in [kh / 8.0, kh / 4.0, kh / 2.0, kh] {
            stages.push((stage, extract_stencil(method, p, C64::new(stage, 0.0))?));
        }
        Ok(ContinuationPlan { method, p, kh, stages })
    }

    /// 1D variant (HDG on segments).
    pub fn new_1d(tau: C64, p: u32, kh: f64) -> Result<Self> {
        if kh.is_nan() || kh <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "normalized wavenumber must be positive, got {kh}"
            )));
        }
        let mut stages = Vec::with_capacity(4);
        for stage in [kh / 8.0, kh / 4.0, kh / 2.0, kh] {
            stages.push((stage, extract_stencil_1d(tau, p, C64::new(stage, 0.0))?));
        }
        Ok(ContinuationPlan {
            method: DispersionMethod::Hdg { tau },
            p,
            kh,
            stages,
        })
    }

    /// Stencil at the target `kh` (the last stage).
    pub fn final_stencil(&self) -> &Stencil {
        &self.stages.last().unwrap().1
    }

    /// Solve for the discrete wavenumber at angle `theta`, tracking the
    /// branch with `Re(k^h) > 0` closest to `kh` from small `kh` upward.
    pub fn solve(&self, theta: f64) -> Result<DispersionResult> {
        let mut root = C64::new(self.stages[0].0, 0.0);
        let mut prev_stage: Option<f64> = None;
        let mut total_iter = 0u32;
        let mut final_resid = f64::NAN;
        for (stage, stencil) in &self.stages {
            let guess = match prev_stage {
                None => C64::new(*stage, 0.0),
                Some(prev) => root * (stage / prev),
            };
            let (z, resid, iters) = secant_on_det(stencil, theta, guess).or_else(|_| {
                // one retry from an undisturbed real guess
                secant_on_det(stencil, theta, C64::new(*stage, 0.0))
            })?;
            root = z;
            total_iter += iters;
            final_resid = resid;
            prev_stage = Some(*stage);
        }
        if root.re <= 0.0 {
            return Err(Error::RootNotFound(format!(
                "branch left the right half plane: k_h = {root} at kh = {}, theta = {theta}",
                self.kh
            )));
        }
        Ok(DispersionResult {
            theta,
            k_h: root,
            residual: final_resid,
            iterations: total_iter,
        })
    }
}

/// Secant iteration on the determinant of the symbol, scaled by the product
/// over rows of the stencil's coefficient-magnitude sums. That scale bounds
/// the symbol rows for real wave vectors and does not degenerate when the
/// iterate sits near the root (where the rows themselves can vanish).
fn secant_on_det(stencil: &Stencil, theta: f64, guess: C64) -> Result<(C64, f64, u32)> {
    let scale = {
        let mut s = 1.0f64;
        for t in 0..stencil.node_types {
            s *= stencil
                .row(t)
                .map(|(_, _, v)| v.norm())
                .sum::<f64>()
                .max(1e-300);
        }
        s
    };
    let g = |z: C64| -> C64 {
        let f = stencil.symbol_dir(z, theta);
        let det = f.lu().determinant();
        det / scale
    };
    let mut z0 = guess;
    let mut z1 = guess * (1.0 + 1e-6) + C64::new(0.0, 1e-9 * guess.norm().max(1e-6));
    let mut g0 = g(z0);
    let mut g1 = g(z1);
    let mut best = if g1.norm() < g0.norm() {
        (z1, g1.norm())
    } else {
        (z0, g0.norm())
    };
    let mut iters = 0u32;
    for _ in 0..200 {
        iters += 1;
        let denom = g1 - g0;
        if denom.norm() == 0.0 {
            break;
        }
        let z2 = z1 - g1 * (z1 - z0) / denom;
        if !z2.re.is_finite() || !z2.im.is_finite() {
            break;
        }
        z0 = z1;
        g0 = g1;
        z1 = z2;
        g1 = g(z1);
        if g1.norm() < best.1 {
            best = (z1, g1.norm());
        }
        if (z1 - z0).norm() <= 1e-13 * z1.norm().max(1.0) && g1.norm() <= 1e-11 {
            break;
        }
    }
    let (root, resid) = best;
    if resid > 1e-11 {
        return Err(Error::RootNotFound(format!(
            "secant stalled at residual {resid:.3e} after {iters} iterations (theta = {theta}, guess = {guess})"
        )));
    }
    Ok((root, resid, iters))
}

/// Solve `det F(k^h) = 0` at one angle. `theta` is ignored for 1D stencils
/// (pass 0).
pub fn solve_k_h(
    method: DispersionMethod,
    p: u32,
    kh: f64,
    theta: f64,
) -> Result<DispersionResult> {
    ContinuationPlan::new(method, p, kh)?.solve(theta)
}

/// Solve a whole set of angles against one continuation plan.
pub fn solve_all_angles(
    plan: &ContinuationPlan,
    thetas: &[f64],
) -> Result<Vec<DispersionResult>> {
    thetas.iter().map(|&t| plan.solve(t)).collect()
}
