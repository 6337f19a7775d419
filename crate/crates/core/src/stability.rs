//! Stabilization-parameter stability campaigns: smallest-singular-value
//! sweeps of the local element matrix over `kh` and over `tau` in the
//! complex plane, and empirical verification of the unisolvency conditions.
//!
//! Sweeps normalize `h = 1`, so `kh` is the sweep variable. Segments and
//! squares carry the Helmholtz element, cubes and tetrahedra the Maxwell
//! element.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::basis::Shape;
use crate::element::{condense, ElementMatrixSet};
use crate::global::{assemble_condensed_helmholtz, condition_number, UniformMesh2D};
use crate::hdg::{assemble_helmholtz, assemble_maxwell, HelmholtzLocal, MaxwellLocal};
use crate::{C64, Error, Result};

/// Uniformly spaced samples of a real interval.
#[derive(Debug, Clone, Copy)]
pub struct LinearGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl LinearGrid {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 2 samples, got {count}"
            )));
        }
        if start >= stop {
            return Err(Error::InvalidArgument(format!(
                "grid needs start < stop, got [{start}, {stop}]"
            )));
        }
        Ok(LinearGrid { start, stop, count })
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + step * i as f64).collect()
    }

    pub fn step(&self) -> f64 {
        (self.stop - self.start) / (self.count - 1) as f64
    }
}

/// Rectangle in the complex plane sampled on a tensor grid.
#[derive(Debug, Clone, Copy)]
pub struct PlaneGrid {
    pub re: LinearGrid,
    pub im: LinearGrid,
}

/// One sample of a stability sweep.
#[derive(Debug, Clone, Copy)]
pub struct StabilityRecord {
    pub kh: C64,
    pub tau: C64,
    pub p: u32,
    pub shape: Shape,
    pub sigma_min: f64,
    /// sigma_min / sigma_max (the 2-norm of the matrix).
    pub sigma_min_normalized: f64,
}

/// Assemble the interior element matrix for the system implied by the shape
/// (Helmholtz on segments/squares, Maxwell on cubes/tetrahedra) at `h = 1`.
pub fn element_matrix(shape: Shape, p: u32, kh: C64, tau: C64) -> Result<ElementMatrixSet> {
    match shape {
        Shape::Segment | Shape::Square => assemble_helmholtz(&HelmholtzLocal {
            k: kh,
            tau,
            h: 1.0,
            p,
            shape,
        }),
        Shape::Cube | Shape::Tetrahedron => assemble_maxwell(&MaxwellLocal {
            k: kh,
            tau,
            h: 1.0,
            p,
            shape,
        }),
    }
}

fn record(shape: Shape, p: u32, kh: C64, tau: C64) -> Result<StabilityRecord> {
    let em = element_matrix(shape, p, kh, tau)?;
    let (smin, smax) = em.interior_singular_range();
    Ok(StabilityRecord {
        kh,
        tau,
        p,
        shape,
        sigma_min: smin,
        sigma_min_normalized: if smax > 0.0 { smin / smax } else { 0.0 },
    })
}

/// Sweep the smallest singular value over real `kh`.
pub fn sweep_kh(shape: Shape, p: u32, tau: C64, grid: &LinearGrid) -> Result<Vec<StabilityRecord>> {
    grid.values()
        .into_par_iter()
        .map(|kh| record(shape, p, C64::new(kh, 0.0), tau))
        .collect()
}

/// Sweep the smallest singular value over a rectangle of complex `tau` at
/// fixed `kh`. Records are ordered row-major: imaginary axis outer.
pub fn sweep_tau_plane(
    shape: Shape,
    p: u32,
    kh: C64,
    grid: &PlaneGrid,
) -> Result<Vec<StabilityRecord>> {
    let res = grid.re.values();
    let ims = grid.im.values();
    let taus: Vec<C64> = ims
        .iter()
        .flat_map(|&im| res.iter().map(move |&re| C64::new(re, im)))
        .collect();
    taus.into_par_iter()
        .map(|tau| record(shape, p, kh, tau))
        .collect()
}

/// Golden-section refinement of a smallest-singular-value dip located on a
/// sweep grid. Returns (kh, normalized sigma_min) at the refined minimum.
pub fn refine_dip(
    shape: Shape,
    p: u32,
    tau: C64,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let f = |kh: f64| -> Result<f64> {
        Ok(record(shape, p, C64::new(kh, 0.0), tau)?.sigma_min_normalized)
    };
    let gr = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - gr * (b - a);
    let mut d = a + gr * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d)?;
        }
    }
    let mid = 0.5 * (a + b);
    Ok((mid, f(mid)?))
}

/// Indices of strict local minima of `values` that fall below `threshold`.
pub fn local_minima_below(values: &[f64], threshold: f64) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 1..values.len().saturating_sub(1) {
        if values[i] <= values[i - 1]
            && values[i] <= values[i + 1]
            && values[i] < threshold
            && (values[i] < values[i - 1] || values[i] < values[i + 1])
        {
            out.push(i);
        }
    }
    out
}

/// Outcome of the random unisolvency verification.
#[derive(Debug, Clone)]
pub struct Theorem1Report {
    pub samples: usize,
    pub min_normalized_sigma_local: f64,
    pub min_global_inverse_condition: f64,
    /// Counterexamples, if any: (shape, p, k, tau, what failed).
    pub failures: Vec<(Shape, u32, C64, C64, String)>,
}

impl Theorem1Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Draw `(k, tau)` satisfying the unisolvency conditions: `Re(tau) != 0`
/// when `Im(k) = 0`, and `Im(k) Re(tau) <= 0` with `Re(tau) != 0` when
/// `Im(k) != 0`.
fn sample_k_tau(rng: &mut ChaCha8Rng) -> (C64, C64) {
    let re_k = rng.gen_range(0.2..4.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let complex_k = rng.gen_bool(0.5);
    let im_k = if complex_k {
        let mag = rng.gen_range(0.1..3.0);
        if rng.gen_bool(0.5) {
            mag
        } else {
            -mag
        }
    } else {
        0.0
    };
    let mut re_tau = rng.gen_range(0.05..2.0);
    if im_k > 0.0 {
        re_tau = -re_tau; // Im(k) Re(tau) <= 0
    } else if im_k == 0.0 && rng.gen_bool(0.5) {
        re_tau = -re_tau;
    }
    let im_tau = rng.gen_range(-2.0..2.0);
    (C64::new(re_k, im_k), C64::new(re_tau, im_tau))
}

/// Randomized check that the local element problems condense and the n=2
/// condensed Helmholtz matrix is nonsingular under the unisolvency
/// conditions on `(k, tau)`.
pub fn verify_theorem1_samples(n_samples: usize, seed: u64) -> Result<Theorem1Report> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes = [Shape::Segment, Shape::Square, Shape::Cube, Shape::Tetrahedron];
    let mut report = Theorem1Report {
        samples: n_samples,
        min_normalized_sigma_local: f64::INFINITY,
        min_global_inverse_condition: f64::INFINITY,
        failures: Vec::new(),
    };
    let mesh = UniformMesh2D::unit_square(2);
    for i in 0..n_samples {
        let (k, tau) = sample_k_tau(&mut rng);
        let shape = shapes[i % shapes.len()];
        let p = (i / shapes.len()) as u32 % 2;
        match element_matrix(shape, p, k, tau) {
            Ok(em) => {
                let (smin, smax) = em.interior_singular_range();
                let norm = if smax > 0.0 { smin / smax } else { 0.0 };
                report.min_normalized_sigma_local = report.min_normalized_sigma_local.min(norm);
                if condense(&em).is_err() {
                    report
                        .failures
                        .push((shape, p, k, tau, format!("local condensation, sigma ratio {norm:e}")));
                }
            }
            Err(e) => report.failures.push((shape, p, k, tau, e.to_string())),
        }
        {
            // k acts as the physical wavenumber on the h=1/2 mesh
            match assemble_condensed_helmholtz(&mesh, k, tau, p) {
                Ok(b) => {
                    let cond = condition_number(&b);
                    if !cond.is_finite() {
                        report
                            .failures
                            .push((shape, p, k, tau, "global matrix singular".into()));
                    } else {
                        report.min_global_inverse_condition =
                            report.min_global_inverse_condition.min(1.0 / cond);
                    }
                }
                Err(e) => report.failures.push((Shape::Square, p, k, tau, e.to_string())),
            }
        }
    }
    Ok(report)
}
