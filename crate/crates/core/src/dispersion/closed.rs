//! Closed-form dispersion relations and small-`kh` expansions used as
//! oracles for the numeric root solves.

use crate::{C64, Error, Result};

fn ci(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// 1D lowest-order discrete wavenumber:
/// `k^h h = arccos(1 - (kh)^2 / (2 + i kh (tau + 1/tau)))`, evaluated in the
/// half-angle form `2 arcsin(sqrt((1 - cos)/2))` so that the `1 - cos` part
/// is formed without cancellation.
pub fn hdg1d_closed_root(kh: f64, tau: C64) -> C64 {
    let khc = ci(kh);
    let one_minus_cos = khc * khc / (ci(2.0) + C64::i() * khc * (tau + 1.0 / tau));
    root_from_one_minus_cos(one_minus_cos, ci(kh))
}

/// Root of `cos(z) = 1 - w` nearest `target`, via `z = 2 arcsin(sqrt(w/2))`.
fn root_from_one_minus_cos(w: C64, target: C64) -> C64 {
    axis_root_from_half_angle(w / 2.0, target)
}

/// Per-axis half-angle relation of the 2D lowest-order HDG element:
/// `c_j^2 = 1 - ((k_j h)^2 / 2i) kh tau / ((k_j h)^2 + (kh)^2 tau^2 - 2i kh tau)`
/// with `k_j = k cos(theta), k sin(theta)`. Returns the axis root `k_j^h h`
/// on the branch near `k_j h`.
pub fn hdg2d_p0_axis_root(kh: f64, axis_fraction: f64, tau: C64) -> C64 {
    let m = ci(kh * axis_fraction); // k_j h
    let kh = ci(kh);
    let denom = m * m + kh * kh * tau * tau - C64::i() * 2.0 * kh * tau;
    // 1 - c_j^2, kept in product form
    let one_minus_c2 = m * m / (C64::i() * 2.0) * (kh * tau / denom);
    axis_root_from_half_angle(one_minus_c2, m)
}

/// Root of `sin^2(z/2) = s2` nearest `target`: `z = 2 arcsin(sqrt(s2))` up
/// to sign and the `2 pi` reflection. Taking `1 - c^2` as input (instead of
/// `c` itself) keeps full precision near `c = 1`, i.e. for small roots.
fn axis_root_from_half_angle(s2: C64, target: C64) -> C64 {
    let base = s2.sqrt().asin() * 2.0;
    let two_pi = ci(2.0 * std::f64::consts::PI);
    let mut best = base;
    let mut dist = f64::INFINITY;
    for root in [base, -base, two_pi - base, base - two_pi] {
        if (root - target).norm() < dist {
            dist = (root - target).norm();
            best = root;
        }
    }
    best
}

/// Combined 2D lowest-order root: solve both per-axis relations and combine
/// through `k^h = sqrt((k_1^h)^2 + (k_2^h)^2)`, branch with positive real
/// part.
pub fn hdg2d_p0_construction_root(kh: f64, theta: f64, tau: C64) -> C64 {
    let r1 = hdg2d_p0_axis_root(kh, theta.cos(), tau);
    let r2 = hdg2d_p0_axis_root(kh, theta.sin(), tau);
    let mut k = (r1 * r1 + r2 * r2).sqrt();
    if k.re < 0.0 {
        k = -k;
    }
    k
}

/// Hybrid Raviart-Thomas per-axis root:
/// `h k_j^h = 2 arccos(sqrt((12 - (h k_j)^2) / (2 (h k_j)^2 + 12)))`,
/// with `1 - c^2 = 3 m^2 / (2 m^2 + 12)` formed exactly.
pub fn hrt_axis_root(m: f64) -> C64 {
    let m2 = ci(m * m);
    let one_minus_c2 = m2 * 3.0 / (m2 * 2.0 + 12.0);
    axis_root_from_half_angle(one_minus_c2, ci(m))
}

/// Combined HRT lowest-order root via the per-axis relations.
pub fn hrt_construction_root(kh: f64, theta: f64) -> C64 {
    let r1 = hrt_axis_root(kh * theta.cos());
    let r2 = hrt_axis_root(kh * theta.sin());
    let mut k = (r1 * r1 + r2 * r2).sqrt();
    if k.re < 0.0 {
        k = -k;
    }
    k
}

/// Left-hand side of the HRT lowest-order dispersion relation at a candidate
/// discrete wavenumber `k_h` and angle `theta`:
/// `(c1^2 + c2^2)(2 (hk)^2 - 12) + c1^2 c2^2 (4 (hk)^2 + 48) + (hk)^2 - 24`.
pub fn hrt_relation_residual(kh: f64, k_h: C64, theta: f64) -> C64 {
    let c1 = (k_h * theta.cos() / 2.0).cos();
    let c2 = (k_h * theta.sin() / 2.0).cos();
    let (c1s, c2s) = (c1 * c1, c2 * c2);
    let kh2 = ci(kh * kh);
    (c1s + c2s) * (kh2 * 2.0 - 12.0) + c1s * c2s * (kh2 * 4.0 + 48.0) + kh2 - 24.0
}

/// Closed small-`kh` expansion cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsympCase {
    Hdg1d,
    Hdg2dP0,
    Hrt2dP0,
}

/// Order `m` of the leading wavenumber error `k^h h - kh = C (kh)^m + ...`.
pub fn asymptotic_order(case: AsympCase) -> u32 {
    match case {
        AsympCase::Hdg1d | AsympCase::Hdg2dP0 => 2,
        AsympCase::Hrt2dP0 => 3,
    }
}

/// Leading coefficient `C` of `k^h h - kh = C (kh)^m + h.o.t.`:
/// `-(tau^2 + 1) i / (4 tau)` in 1D,
/// `-i (cos 4 theta + 3 + 4 tau^2) / (16 tau)` for the 2D lowest order, and
/// `-(cos 4 theta + 3) / 96` for the lowest-order HRT element.
pub fn asymptotic_coefficient(case: AsympCase, tau: C64, theta: f64) -> Result<C64> {
    match case {
        AsympCase::Hdg1d => {
            if tau.norm() == 0.0 {
                return Err(Error::InvalidArgument("tau must be nonzero".into()));
            }
            Ok(-(tau * tau + 1.0) * C64::i() / (tau * 4.0))
        }
        AsympCase::Hdg2dP0 => {
            if tau.norm() == 0.0 {
                return Err(Error::InvalidArgument("tau must be nonzero".into()));
            }
            let angular = ci((4.0 * theta).cos() + 3.0);
            Ok(-C64::i() * (angular + tau * tau * 4.0) / (tau * 16.0))
        }
        AsympCase::Hrt2dP0 => Ok(ci(-((4.0 * theta).cos() + 3.0) / 96.0)),
    }
}

/// Observed ratios `(k^h h - kh) / (kh)^m` along a decreasing `kh` list,
/// against the closed coefficient.
#[derive(Debug, Clone)]
pub struct SlopeReport {
    pub case: AsympCase,
    pub coefficient: C64,
    /// (kh, observed ratio) pairs in input order.
    pub ratios: Vec<(f64, C64)>,
}

impl SlopeReport {
    /// Relative deviation |ratio - C| / |C| at the smallest kh.
    pub fn final_relative_error(&self) -> f64 {
        let (_, r) = self.ratios.last().copied().unwrap();
        (r - self.coefficient).norm() / self.coefficient.norm().max(1e-300)
    }
}

/// Evaluate the observed asymptotic ratios from the closed-form roots (the
/// numeric determinant roots agree with these to ~1e-12 but carry too much
/// rounding noise for a (kh)^3-scale slope at kh = 1e-3).
pub fn verify_asymptotics(
    case: AsympCase,
    tau: C64,
    theta: f64,
    kh_list: &[f64],
) -> Result<SlopeReport> {
    if kh_list.len() < 3 || kh_list.iter().any(|&k| k.is_nan() || k <= 0.0 || k > 0.1) {
        return Err(Error::InvalidArgument(
            "kh list needs >= 3 values in (0, 0.1]".into(),
        ));
    }
    let m = asymptotic_order(case) as i32;
    let coefficient = asymptotic_coefficient(case, tau, theta)?;
    let mut ratios = Vec::with_capacity(kh_list.len());
    for &kh in kh_list {
        let root = match case {
            AsympCase::Hdg1d => hdg1d_closed_root(kh, tau),
            AsympCase::Hdg2dP0 => hdg2d_p0_construction_root(kh, theta, tau),
            AsympCase::Hrt2dP0 => hrt_construction_root(kh, theta),
        };
        let ratio = (root - ci(kh)) / ci(kh).powi(m);
        ratios.push((kh, ratio));
    }
    Ok(SlopeReport {
        case,
        coefficient,
        ratios,
    })
}
