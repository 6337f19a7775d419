//! Acceptance suite: one test per acceptance criterion, each printing a
//! PASS line with its elapsed time (run with `--nocapture` to see them).
//!
//! Criteria 1-9 and 11 pass. Criterion 10 carries a known-red subclause:
//! the lowest-order conditioning curve on the h=1/4 mesh with tau=1 is
//! maximized at the lower sweep boundary (the discrete resonance is shifted
//! and heavily damped at 5.7 points per wavelength), not inside [4.3, 4.6];
//! the assertion is kept faithful and fails with the measured curve data.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI, SQRT_2};
use std::time::Instant;

use hdglab::basis::Shape;
use hdglab::dispersion::{
    asymptotic_coefficient, error_metrics, hdg1d_closed_root, hdg2d_p0_construction_root,
    hrt_construction_root, hrt_relation_residual, optimal_tau_search, AsympCase, Branch,
    ContinuationPlan, DispersionMethod, SearchOptions,
};
use hdglab::element::singular_range;
use hdglab::global::{assemble_condensed_helmholtz, condition_number, UniformMesh2D};
use hdglab::hdg::closed_form;
use hdglab::stability::{
    element_matrix, local_minima_below, refine_dip, sweep_kh, verify_theorem1_samples, LinearGrid,
};
use hdglab::{C64, CMatrix};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn ci(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Deterministic pseudo-random stream for test parameters.
struct Lcg(u64);

impl Lcg {
    fn f(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((self.0 >> 11) as f64 / (1u64 << 53) as f64) - 0.5
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (self.f() + 0.5) * (hi - lo)
    }
}

fn max_entry(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn pass(n: u32, label: &str, t0: Instant, budget_s: f64) {
    let dt = t0.elapsed().as_secs_f64();
    println!("acceptance criterion {n} ({label}): PASS in {dt:.2}s");
    assert!(dt < budget_s, "criterion {n} exceeded its {budget_s}s budget: {dt:.2}s");
}

#[test]
fn criterion_01_closed_form_matrix_equality() {
    let t0 = Instant::now();
    let mut rng = Lcg(11);
    for _ in 0..20 {
        let k = c(rng.range(-3.0, 3.0), rng.range(-2.0, 2.0));
        let tau = c(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0));
        let h = rng.range(0.1, 2.5);

        let em = hdglab::hdg::assemble_helmholtz(&hdglab::hdg::HelmholtzLocal {
            k,
            tau,
            h,
            p: 0,
            shape: Shape::Square,
        })
        .unwrap();
        let want = closed_form::helmholtz_square_p0(k, tau, h);
        assert!(max_entry(&(&em.a_ii - &want)) <= 1e-13 * max_entry(&want));

        let em = hdglab::hdg::assemble_maxwell(&hdglab::hdg::MaxwellLocal {
            k,
            tau,
            h,
            p: 0,
            shape: Shape::Cube,
        })
        .unwrap();
        let want = closed_form::maxwell_cube_p0(k, tau, h);
        assert!(max_entry(&(&em.a_ii - &want)) <= 1e-13 * max_entry(&want));

        let em = hdglab::hdg::assemble_maxwell(&hdglab::hdg::MaxwellLocal {
            k,
            tau,
            h,
            p: 0,
            shape: Shape::Tetrahedron,
        })
        .unwrap();
        let want = closed_form::maxwell_tet_p0(k, tau, h);
        assert!(max_entry(&(&em.a_ii - &want)) <= 1e-13 * max_entry(&want));
    }
    pass(1, "closed-form matrix equality", t0, 1.0);
}

/// All known singular lines of the lowest-order interior blocks at h = 1:
/// tau = -i kh / 4 for squares and cubes; the tetrahedron has the displayed
/// line tau = -i kh / (3 sqrt(3) + 6) and a second one, tau = -i kh / 6,
/// from the constant field aligned with (1,1,1).
fn singular_taus(shape: Shape, kh: C64) -> Vec<C64> {
    let mik = -C64::i() * kh;
    match shape {
        Shape::Square | Shape::Cube => vec![mik / 4.0],
        Shape::Tetrahedron => vec![mik / (3.0 * 3f64.sqrt() + 6.0), mik / 6.0],
        Shape::Segment => vec![mik / 2.0],
    }
}

#[test]
fn criterion_02_failure_loci() {
    let t0 = Instant::now();
    let khs = [c(0.1, 0.0), c(1.0, 0.0), c(10.0, 0.0), c(2.0, 1.5), c(0.3, -0.4)];
    for shape in [Shape::Square, Shape::Cube, Shape::Tetrahedron] {
        for &kh in &khs {
            // on the displayed locus the block is numerically singular
            let tau0 = singular_taus(shape, kh)[0];
            let em = element_matrix(shape, 0, kh, tau0).unwrap();
            let (smin, smax) = em.interior_singular_range();
            assert!(
                smin <= 1e-12 * smax,
                "{} kh={kh}: on-locus sigma ratio {:e}",
                shape.name(),
                smin / smax
            );
            // at distance >= 0.1 from every singular line the block is
            // uniformly well conditioned
            let lines = singular_taus(shape, kh);
            let mut rng = Lcg(23);
            let mut checked = 0;
            while checked < 40 {
                let tau = c(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0));
                if lines.iter().any(|&l| (tau - l).norm() < 0.1) {
                    continue;
                }
                checked += 1;
                let em = element_matrix(shape, 0, kh, tau).unwrap();
                let (smin, smax) = em.interior_singular_range();
                assert!(
                    smin >= 1e-8 * smax,
                    "{} kh={kh} tau={tau}: off-locus sigma ratio {:e}",
                    shape.name(),
                    smin / smax
                );
            }
        }
    }
    pass(2, "failure loci", t0, 5.0);
}

#[test]
fn criterion_03_tet_p1_sweep_dip() {
    let t0 = Instant::now();
    let tau = c(0.0, -1.0);
    let grid = LinearGrid::new(0.01, 20.0, 2001).unwrap();
    let records = sweep_kh(Shape::Tetrahedron, 1, tau, &grid).unwrap();
    let values: Vec<f64> = records.iter().map(|r| r.sigma_min_normalized).collect();
    let khs = grid.values();
    let dips = local_minima_below(&values, 1e-3);
    assert!(!dips.is_empty(), "no dips found");
    let mut refined: Vec<(f64, f64)> = Vec::new();
    for &i in &dips {
        let lo = khs[i.saturating_sub(2)];
        let hi = khs[(i + 2).min(khs.len() - 1)];
        refined.push(refine_dip(Shape::Tetrahedron, 1, tau, lo, hi, 1e-12).unwrap());
    }
    let global_min = refined.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    // every dip bottoms out at numerical zero; the sweep minimum is attained
    // (up to singular-value rounding scatter) at the first of them
    let (first, first_val) = refined
        .iter()
        .copied()
        .filter(|r| r.1 <= 100.0 * global_min)
        .fold((f64::INFINITY, f64::INFINITY), |acc, r| {
            if r.0 < acc.0 {
                r
            } else {
                acc
            }
        });
    assert!(
        (first - 7.49).abs() <= 0.05,
        "first near-singular dip at kh={first}, refined dips: {refined:?}"
    );
    // the element matrix there is singular for all practical purposes
    let cond = 1.0 / first_val.max(1e-300);
    assert!(cond >= 3.9e14, "condition at dip kh={first}: {cond:e}");
    pass(3, "tet p=1 tau=-i dip at kh=7.49", t0, 60.0);
}

#[test]
fn criterion_04_unisolvency_samples() {
    let t0 = Instant::now();
    let report = verify_theorem1_samples(200, 20260811).unwrap();
    assert!(report.ok(), "counterexamples: {:?}", report.failures);
    assert!(report.min_normalized_sigma_local > 1e-12);
    pass(4, "random unisolvency verification", t0, 60.0);
}

#[test]
fn criterion_05_one_dimensional_dispersion() {
    let t0 = Instant::now();
    let taus = [c(1.0, 0.0), c(0.0, 1.0), c(1.0, 1.0), c(0.0, 0.75f64.sqrt())];
    for kh in [0.01, 0.1, 0.5, 1.0] {
        for tau in taus {
            let plan = ContinuationPlan::new_1d(tau, 0, kh).unwrap();
            let numeric = plan.solve(0.0).unwrap().k_h;
            let closed = hdg1d_closed_root(kh, tau);
            assert!(
                (numeric - closed).norm() <= 1e-10,
                "kh={kh} tau={tau}: |numeric - closed| = {:e}",
                (numeric - closed).norm()
            );
        }
    }
    // asymptotic ratio at kh = 1e-3 from the numeric root
    for tau in [c(1.0, 0.0), c(1.0, 1.0), c(0.0, 0.75f64.sqrt())] {
        let kh = 1e-3;
        let plan = ContinuationPlan::new_1d(tau, 0, kh).unwrap();
        let root = plan.solve(0.0).unwrap().k_h;
        let ratio = (root - ci(kh)) / ci(kh * kh);
        let coef = asymptotic_coefficient(AsympCase::Hdg1d, tau, 0.0).unwrap();
        assert!(
            (ratio - coef).norm() <= 0.02 * coef.norm(),
            "tau={tau}: ratio {ratio} vs coefficient {coef}"
        );
    }
    pass(5, "1D dispersion oracle", t0, 5.0);
}

#[test]
fn criterion_06_two_dimensional_p0_dispersion() {
    let t0 = Instant::now();
    let kh = 1e-3;
    let thetas = [0.0, FRAC_PI_8, FRAC_PI_4];
    let taus = [c(1.0, 0.0), c(0.0, 0.75f64.sqrt())];
    for &tau in &taus {
        for &theta in &thetas {
            let numeric = hdglab::dispersion::solve_k_h(DispersionMethod::Hdg { tau }, 0, kh, theta)
                .unwrap()
                .k_h;
            let built = hdg2d_p0_construction_root(kh, theta, tau);
            assert!(
                (numeric - built).norm() <= 1e-10,
                "tau={tau} theta={theta}: |numeric - construction| = {:e}",
                (numeric - built).norm()
            );
            let ratio = (numeric - ci(kh)) / ci(kh * kh);
            let coef = asymptotic_coefficient(AsympCase::Hdg2dP0, tau, theta).unwrap();
            // the coefficient vanishes at (tau, theta) = (i sqrt(3)/2, pi/8);
            // compare against the formula's unit-numerator scale there
            let scale = if coef.norm() > 1e-12 {
                coef.norm()
            } else {
                1.0 / (16.0 * tau.norm())
            };
            assert!(
                (ratio - coef).norm() <= 0.02 * scale,
                "tau={tau} theta={theta}: ratio {ratio} vs coefficient {coef}"
            );
        }
    }
    pass(6, "2D p=0 dispersion vs construction and expansion", t0, 10.0);
}

#[test]
fn criterion_07_optimal_tau_table() {
    let t0 = Instant::now();
    let table = [
        (FRAC_PI_4, 0.807, -0.931),
        (FRAC_PI_8, 0.837, -0.898),
        (PI / 16.0, 0.851, -0.882),
        (PI / 32.0, 0.859, -0.874),
        (PI / 64.0, 0.863, -0.871),
        (PI / 128.0, 0.865, -0.868),
        (PI / 256.0, 0.866, -0.867),
    ];
    let opts = SearchOptions::default();
    for (kh, want_pos, want_neg) in table {
        for (branch, want) in [(Branch::ImPos, want_pos), (Branch::ImNeg, want_neg)] {
            let found = optimal_tau_search(0, kh, branch, &opts).unwrap();
            assert!(
                found.tau.re.abs() <= 0.005,
                "kh={kh} {branch:?}: Re tau* = {}",
                found.tau.re
            );
            assert!(
                (found.tau.im - want).abs() <= 0.005,
                "kh={kh} {branch:?}: Im tau* = {} vs {want}",
                found.tau.im
            );
        }
    }
    pass(7, "optimal tau table", t0, 600.0);
}

#[test]
fn criterion_08_hrt_p0() {
    let t0 = Instant::now();
    // numeric determinant roots satisfy the closed dispersion relation
    for kh in [FRAC_PI_4, PI / 16.0, 0.1] {
        for theta in [0.0, FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8, FRAC_PI_2] {
            let root = hdglab::dispersion::solve_k_h(DispersionMethod::Hrt, 0, kh, theta)
                .unwrap()
                .k_h;
            let resid = hrt_relation_residual(kh, root, theta).norm();
            assert!(resid <= 1e-10, "kh={kh} theta={theta}: relation residual {resid:e}");
        }
    }
    // expansion ratio at kh = 1e-3; the per-axis construction evaluates the
    // root stably at the (kh)^3 scale, and agrees with the determinant root
    // to far below the band
    for theta in [0.0, FRAC_PI_8, FRAC_PI_4] {
        let kh = 1e-3;
        let numeric = hdglab::dispersion::solve_k_h(DispersionMethod::Hrt, 0, kh, theta)
            .unwrap()
            .k_h;
        let built = hrt_construction_root(kh, theta);
        assert!((numeric - built).norm() <= 1e-10);
        let ratio = (built - ci(kh)) / ci(kh).powi(3);
        let coef = asymptotic_coefficient(AsympCase::Hrt2dP0, C64::default(), theta).unwrap();
        assert!(
            (ratio - coef).norm() <= 0.02 * coef.norm(),
            "theta={theta}: ratio {ratio} vs {coef}"
        );
    }
    // no artificial dissipation
    for kh in [FRAC_PI_4, FRAC_PI_8, PI / 16.0, PI / 32.0, PI / 64.0] {
        let m = error_metrics(DispersionMethod::Hrt, 0, kh, 181).unwrap();
        assert!(m.eps_dissip <= 1e-10, "kh={kh}: eps_dissip {:e}", m.eps_dissip);
    }
    pass(8, "hybrid RT lowest order", t0, 30.0);
}

#[test]
fn criterion_09_p1_total_error_reduction() {
    let t0 = Instant::now();
    let kh = FRAC_PI_4;
    let eps = |tau: C64| {
        error_metrics(DispersionMethod::Hdg { tau }, 1, kh, 181)
            .map(|m| m.eps_total)
            .unwrap_or(f64::INFINITY)
    };
    let e_ref = eps(c(1.0, 0.0));
    let e_opt = eps(c(0.0, 0.87));
    assert!(
        e_opt <= 0.15 * e_ref,
        "eps_total(0.87i) = {e_opt:e} vs 0.15 * eps_total(1) = {:e}",
        0.15 * e_ref
    );
    // grid minimizer over the full search rectangle
    use rayon::prelude::*;
    let mut grid = Vec::new();
    for j in -30i64..=30 {
        if j == 0 {
            continue;
        }
        for i in -20i64..=20 {
            grid.push(c(i as f64 * 0.05, j as f64 * 0.05));
        }
    }
    let scored: Vec<(C64, f64)> = grid.into_par_iter().map(|tau| (tau, eps(tau))).collect();
    let (tau_min, _) = scored
        .into_iter()
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();
    assert!(
        tau_min.re.abs() <= 0.05,
        "grid minimizer Re tau = {}",
        tau_min.re
    );
    assert!(
        (0.8..=0.95).contains(&tau_min.im),
        "grid minimizer Im tau = {}",
        tau_min.im
    );
    pass(9, "p=1 total-error reduction", t0, 300.0);
}

#[test]
fn criterion_10_conditioning_study() {
    let t0 = Instant::now();
    let mesh = UniformMesh2D::unit_square(4);
    let grid = LinearGrid::new(4.0, 5.0, 401).unwrap();
    let ks = grid.values();
    let mut argmax = [0.0f64; 2];
    for p in [0u32, 1] {
        let mut best = (0.0f64, 0.0f64);
        for &k in &ks {
            let b = assemble_condensed_helmholtz(&mesh, ci(k), c(1.0, 0.0), p).unwrap();
            let cond = condition_number(&b);
            assert!(cond.is_finite(), "p={p} k={k}: condition number not finite");
            if cond > best.1 {
                best = (k, cond);
            }
        }
        argmax[p as usize] = best.0;
    }
    // tau = -i, p = 1: the peak refines to an effectively singular matrix
    let mut best = (0.0f64, 0.0f64);
    for &k in &ks {
        let cond = match assemble_condensed_helmholtz(&mesh, ci(k), c(0.0, -1.0), 1) {
            Ok(b) => condition_number(&b),
            Err(_) => f64::INFINITY,
        };
        if cond > best.1 {
            best = (k, cond);
        }
    }
    let inv_cond = |k: f64| match assemble_condensed_helmholtz(&mesh, ci(k), c(0.0, -1.0), 1) {
        Ok(b) => {
            let (lo, hi) = singular_range(&b.matrix);
            lo / hi
        }
        Err(_) => 0.0,
    };
    // golden refinement of the resonance peak
    let gr = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b2) = (best.0 - grid.step(), best.0 + grid.step());
    let (mut x1, mut x2) = (b2 - gr * (b2 - a), a + gr * (b2 - a));
    let (mut f1, mut f2) = (inv_cond(x1), inv_cond(x2));
    while b2 - a > 1e-12 {
        if f1 < f2 {
            b2 = x2;
            x2 = x1;
            f2 = f1;
            x1 = b2 - gr * (b2 - a);
            f1 = inv_cond(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b2 - a);
            f2 = inv_cond(x2);
        }
    }
    let refined_cond = 1.0 / inv_cond(0.5 * (a + b2)).max(1e-300);
    assert!(
        refined_cond >= 1e10,
        "tau=-i p=1: refined peak condition {refined_cond:e} at k={}",
        0.5 * (a + b2)
    );
    println!(
        "criterion 10 data: argmax(p=0) = {}, argmax(p=1) = {}, resonance = {}",
        argmax[0],
        argmax[1],
        PI * SQRT_2
    );
    assert!(
        (4.3..=4.6).contains(&argmax[1]),
        "p=1 curve maximized at k = {}",
        argmax[1]
    );
    // Known red: at h = 1/4 and tau = 1 the lowest-order curve decreases
    // across [4, 5] (its damped resonance ghost peaks below k = 4), so the
    // expected window cannot hold. The assertion stays unweakened.
    assert!(
        (4.3..=4.6).contains(&argmax[0]),
        "p=0 curve maximized at k = {} (curve peak sits below the sweep window; \
         the p=0 discrete resonance at 5.7 points per wavelength is shifted and \
         heavily damped)",
        argmax[0]
    );
    pass(10, "conditioning study", t0, 120.0);
}

#[test]
fn criterion_11_property_suites() {
    // the standalone property suites live in tests/properties.rs; this
    // criterion asserts they are present and runnable by running a compact
    // representative of each group here
    let t0 = Instant::now();

    // quadrature exactness representative
    let r = hdglab::quadrature::simplex_rule(2).unwrap();
    let v = r.integrate(|p| p[0] * p[1]);
    assert!((v - 1.0 / 120.0).abs() < 1e-15);

    // stencil translation invariance + global row equality representative
    let tau = c(1.0, 0.0);
    let kh = c(0.9, 0.0);
    let st = hdglab::dispersion::extract_stencil(DispersionMethod::Hdg { tau }, 0, kh).unwrap();
    let mesh = UniformMesh2D::with_element_size(6, 1.0);
    let b = assemble_condensed_helmholtz(&mesh, kh, tau, 0).unwrap();
    let center = hdglab::global::Edge {
        kind: hdglab::global::EdgeKind::Horizontal,
        ix: 2,
        iy: 3,
    };
    let row = b.row_of(center, 0).unwrap();
    let mut checked = 0;
    for (s, off, v) in st.row(0) {
        let pos = (2 * center.ix as i32 + 1 + off[0], 2 * center.iy as i32 + off[1]);
        let target = if s == 0 {
            hdglab::global::Edge {
                kind: hdglab::global::EdgeKind::Horizontal,
                ix: ((pos.0 - 1) / 2) as i64,
                iy: (pos.1 / 2) as i64,
            }
        } else {
            hdglab::global::Edge {
                kind: hdglab::global::EdgeKind::Vertical,
                ix: (pos.0 / 2) as i64,
                iy: ((pos.1 - 1) / 2) as i64,
            }
        };
        let col = b.row_of(target, 0).unwrap();
        assert!((b.matrix[(row, col)] - v).norm() <= 1e-13 * v.norm().max(1.0));
        checked += 1;
    }
    assert_eq!(checked, 7);

    // angle symmetry representative
    let r1 = hdglab::dispersion::solve_k_h(DispersionMethod::Hdg { tau }, 0, 0.7, 0.3).unwrap();
    let r2 = hdglab::dispersion::solve_k_h(DispersionMethod::Hdg { tau }, 0, 0.7, FRAC_PI_2 - 0.3)
        .unwrap();
    assert!((r1.k_h - r2.k_h).norm() <= 1e-12);

    // determinism representative
    let grid = LinearGrid::new(0.5, 1.5, 5).unwrap();
    let mut out1 = Vec::new();
    let mut out2 = Vec::new();
    hdglab::report::write_sweep_csv(
        &mut out1,
        &sweep_kh(Shape::Cube, 0, c(0.0, -0.25), &grid).unwrap(),
    )
    .unwrap();
    hdglab::report::write_sweep_csv(
        &mut out2,
        &sweep_kh(Shape::Cube, 0, c(0.0, -0.25), &grid).unwrap(),
    )
    .unwrap();
    assert_eq!(out1, out2);

    pass(11, "property suite representatives", t0, 60.0);
}
