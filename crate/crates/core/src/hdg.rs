//! HDG local element matrices for the first-order Helmholtz system
//! (segments, squares) and the 3D time-harmonic Maxwell system (cubes,
//! tetrahedra).
//!
//! The Helmholtz element discretizes, over (u, phi) with trace data `phi_hat`
//! on the boundary,
//!
//! ```text
//!   ik (u, v)_K - (phi, div v)_K                      = -<phi_hat, v.n>
//!   -(div u, psi)_K - <tau phi, psi> - ik (phi, psi)_K = -<tau phi_hat, psi>
//! ```
//!
//! with flux conservativity `<u.n + tau (phi - phi_hat), mu> = 0` supplying
//! the trace rows. The Maxwell element discretizes, over (E, H) with
//! tangential trace data `E_hat`,
//!
//! ```text
//!   ik (E, v)_K - (curl H, v)_K + <tau E x n, v x n> = <tau E_hat x n, v x n>
//!   -(E, curl w)_K - ik (H, w)_K                     = -<E_hat, n x w>
//! ```
//!
//! with `<H + tau n x (E - E_hat), w_hat x n> = 0` as trace rows. All
//! pairings are bilinear; nothing is conjugated. Basis functions are
//! monomials in the reference coordinates and integrals use per-axis Gauss
//! rules with `p+2` points, which are exact for every integrand here.

use crate::basis::{ScalarBasis, Shape};
use crate::element::{ElementMatrixSet, ElementParams, System};
use crate::faces::{eval_face_scalar, face_scalar_exponents, faces};
use crate::quadrature::{gauss_legendre, simplex_rule, tensor_rule, QuadratureRule};
use crate::{C64, CMatrix, Error, Result};
use nalgebra::DMatrix;

#[derive(Debug, Clone, Copy)]
pub struct HelmholtzLocal {
    pub k: C64,
    pub tau: C64,
    pub h: f64,
    pub p: u32,
    pub shape: Shape,
}

#[derive(Debug, Clone, Copy)]
pub struct MaxwellLocal {
    pub k: C64,
    pub tau: C64,
    pub h: f64,
    pub p: u32,
    pub shape: Shape,
}

pub(crate) fn volume_rule(shape: Shape, p: u32) -> Result<QuadratureRule> {
    let n = (p + 2) as usize;
    match shape {
        Shape::Segment => gauss_legendre(n),
        Shape::Square => tensor_rule(&gauss_legendre(n)?, 2),
        Shape::Cube => tensor_rule(&gauss_legendre(n)?, 3),
        Shape::Tetrahedron => simplex_rule(2 * p + 3),
    }
}

fn check_h(h: f64) -> Result<()> {
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "element size must be positive, got {h}"
        )));
    }
    Ok(())
}

/// Assemble the HDG Helmholtz element matrix blocks.
pub fn assemble_helmholtz(cfg: &HelmholtzLocal) -> Result<ElementMatrixSet> {
    check_h(cfg.h)?;
    if !matches!(cfg.shape, Shape::Segment | Shape::Square) {
        return Err(Error::UnsupportedConfig(format!(
            "Helmholtz elements are segments or squares, got {}",
            cfg.shape.name()
        )));
    }
    if cfg.p > 1 {
        return Err(Error::UnsupportedConfig(format!(
            "Helmholtz assembly supports p <= 1, got p={}",
            cfg.p
        )));
    }
    let d = cfg.shape.dimension();
    let scalar = ScalarBasis::new(cfg.shape, cfg.p);
    let components: Vec<ScalarBasis> = (0..d).map(|_| scalar.clone()).collect();
    let params = ElementParams {
        system: System::Helmholtz,
        shape: cfg.shape,
        p: cfg.p,
        k: cfg.k,
        tau: cfg.tau,
        h: cfg.h,
    };
    assemble_mixed(params, &components, &scalar, cfg.tau)
}

/// Shared assembly for the mixed (vector, scalar) Helmholtz-type element:
/// used by both the HDG element and the hybrid Raviart-Thomas element, which
/// differ only in the vector component spaces and in `tau`.
pub(crate) fn assemble_mixed(
    params: ElementParams,
    vector_components: &[ScalarBasis],
    scalar: &ScalarBasis,
    tau: C64,
) -> Result<ElementMatrixSet> {
    let shape = params.shape;
    let d = shape.dimension();
    let h = params.h;
    let ik = C64::i() * params.k;
    let hd = h.powi(d as i32);
    let hs = h.powi(d as i32 - 1); // surface / derivative scale

    // n = p+2 Gauss points per axis: exact through per-axis degree 2p+3,
    // which covers the Raviart-Thomas mass terms of degree 2p+2 as well.
    let vol = volume_rule(shape, params.p)?;
    let fcs = faces(shape, (params.p + 2) as usize)?;
    let mu_exps = face_scalar_exponents(shape, params.p);
    let nmu = mu_exps.len();

    let nb: Vec<usize> = vector_components.iter().map(|b| b.len()).collect();
    let nw = scalar.len();
    let ni: usize = nb.iter().sum::<usize>() + nw;
    let nt = fcs.len() * nmu;

    let mut a_ii: CMatrix = DMatrix::zeros(ni, ni);
    let mut a_it: CMatrix = DMatrix::zeros(ni, nt);
    let mut a_ti: CMatrix = DMatrix::zeros(nt, ni);
    let mut a_tt: CMatrix = DMatrix::zeros(nt, nt);

    let comp_offset = |c: usize| -> usize { nb[..c].iter().sum() };
    let w_offset: usize = nb.iter().sum();

    // volume terms
    for (pt, w) in vol.points.iter().zip(&vol.weights) {
        let wv = scalar.eval_unchecked(pt);
        for c in 0..d {
            let vb = &vector_components[c];
            let vv = vb.eval_unchecked(pt);
            let dv = vb.eval_deriv(pt, c);
            for m in 0..vb.len() {
                let row = comp_offset(c) + m;
                // ik (u_c, v_c)
                for n in 0..vb.len() {
                    a_ii[(row, comp_offset(c) + n)] += ik * (hd * w * vv[n] * vv[m]);
                }
                // -(phi, d_c v_c)
                for n in 0..nw {
                    a_ii[(row, w_offset + n)] -= C64::from(hs * w * wv[n] * dv[m]);
                }
            }
            // -(d_c u_c, psi)
            for m in 0..nw {
                for n in 0..vb.len() {
                    a_ii[(w_offset + m, comp_offset(c) + n)] -= C64::from(hs * w * dv[n] * wv[m]);
                }
            }
        }
        // -ik (phi, psi)
        for m in 0..nw {
            for n in 0..nw {
                a_ii[(w_offset + m, w_offset + n)] -= ik * (hd * w * wv[n] * wv[m]);
            }
        }
    }

    // boundary terms
    for (f, face) in fcs.iter().enumerate() {
        for (q, w) in face.qweights.iter().enumerate() {
            let pt = &face.qpoints[q];
            let wv = scalar.eval_unchecked(pt);
            let mu = eval_face_scalar(&mu_exps, &face.qface[q]);
            // <phi_hat, v.n> and trace rows' <u.n, mu>
            for c in 0..d {
                let nc = face.normal[c];
                if nc == 0.0 {
                    continue;
                }
                let vb = &vector_components[c];
                let vv = vb.eval_unchecked(pt);
                for m in 0..vb.len() {
                    for j in 0..nmu {
                        a_it[(comp_offset(c) + m, f * nmu + j)] +=
                            C64::from(hs * w * nc * mu[j] * vv[m]);
                    }
                }
                for j in 0..nmu {
                    for n in 0..vb.len() {
                        a_ti[(f * nmu + j, comp_offset(c) + n)] +=
                            C64::from(hs * w * nc * vv[n] * mu[j]);
                    }
                }
            }
            // -tau <phi, psi>, +tau <phi_hat, psi>, tau <phi, mu>, -tau <phi_hat, mu>
            for m in 0..nw {
                for n in 0..nw {
                    a_ii[(w_offset + m, w_offset + n)] -= tau * (hs * w * wv[n] * wv[m]);
                }
                for j in 0..nmu {
                    a_it[(w_offset + m, f * nmu + j)] += tau * (hs * w * mu[j] * wv[m]);
                }
            }
            for j in 0..nmu {
                for n in 0..nw {
                    a_ti[(f * nmu + j, w_offset + n)] += tau * (hs * w * wv[n] * mu[j]);
                }
                for j2 in 0..nmu {
                    a_tt[(f * nmu + j, f * nmu + j2)] -= tau * (hs * w * mu[j2] * mu[j]);
                }
            }
        }
    }

    let mut interior_labels = Vec::with_capacity(ni);
    for (c, b) in vector_components.iter().enumerate() {
        for j in 0..b.len() {
            interior_labels.push(format!("u{}[{}]", c + 1, j));
        }
    }
    for j in 0..nw {
        interior_labels.push(format!("phi[{j}]"));
    }
    let trace_labels = (0..fcs.len())
        .flat_map(|f| (0..nmu).map(move |j| format!("f{f}:mu[{j}]")))
        .collect();

    Ok(ElementMatrixSet {
        a_ii,
        a_it,
        a_ti,
        a_tt,
        interior_labels,
        trace_labels,
        params,
    })
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn unit(c: usize) -> [f64; 3] {
    let mut e = [0.0; 3];
    e[c] = 1.0;
    e
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Assemble the HDG Maxwell element matrix blocks.
pub fn assemble_maxwell(cfg: &MaxwellLocal) -> Result<ElementMatrixSet> {
    check_h(cfg.h)?;
    if !matches!(cfg.shape, Shape::Cube | Shape::Tetrahedron) {
        return Err(Error::UnsupportedConfig(format!(
            "Maxwell elements are cubes or tetrahedra, got {}",
            cfg.shape.name()
        )));
    }
    let pmax = if cfg.shape == Shape::Tetrahedron { 2 } else { 1 };
    if cfg.p > pmax {
        return Err(Error::UnsupportedConfig(format!(
            "Maxwell assembly on {} supports p <= {pmax}, got p={}",
            cfg.shape.name(),
            cfg.p
        )));
    }

    let h = cfg.h;
    let tau = cfg.tau;
    let ik = C64::i() * cfg.k;
    let h3 = h * h * h;
    let h2 = h * h;

    let sb = ScalarBasis::new(cfg.shape, cfg.p);
    let nb = sb.len();
    let vol = volume_rule(cfg.shape, cfg.p)?;
    let fcs = faces(cfg.shape, (cfg.p + 2) as usize)?;
    let mu_exps = face_scalar_exponents(cfg.shape, cfg.p);
    let nmu = mu_exps.len();

    let ni = 6 * nb;
    let nt = fcs.len() * 2 * nmu;
    let mut a_ii: CMatrix = DMatrix::zeros(ni, ni);
    let mut a_it: CMatrix = DMatrix::zeros(ni, nt);
    let mut a_ti: CMatrix = DMatrix::zeros(nt, ni);
    let mut a_tt: CMatrix = DMatrix::zeros(nt, nt);

    let e_dof = |c: usize, n: usize| c * nb + n;
    let h_dof = |c: usize, n: usize| (3 + c) * nb + n;
    let t_dof = |f: usize, a: usize, j: usize| (f * 2 + a) * nmu + j;

    // volume terms
    for (pt, w) in vol.points.iter().zip(&vol.weights) {
        let q = sb.eval_unchecked(pt);
        let grad = [
            sb.eval_deriv(pt, 0),
            sb.eval_deriv(pt, 1),
            sb.eval_deriv(pt, 2),
        ];
        for c in 0..3 {
            for m in 0..nb {
                // ik (E, v) and -ik (H, w)
                for n in 0..nb {
                    let mass = h3 * w * q[n] * q[m];
                    a_ii[(e_dof(c, m), e_dof(c, n))] += ik * mass;
                    a_ii[(h_dof(c, m), h_dof(c, n))] -= ik * mass;
                }
                for b in 0..3 {
                    let ebc = cross(unit(b), unit(c));
                    if ebc == [0.0; 3] {
                        continue;
                    }
                    // -(curl H, v): H = e_b q_n, v = e_c q_m
                    for n in 0..nb {
                        let gdot: f64 = (0..3).map(|a| grad[a][n] * ebc[a]).sum();
                        a_ii[(e_dof(c, m), h_dof(b, n))] -= C64::from(h2 * w * gdot * q[m]);
                    }
                    // -(E, curl w): E = e_b q_n, w = e_c q_m; (curl w).e_b = grad q_m . (e_c x e_b)
                    let ecb = cross(unit(c), unit(b));
                    for n in 0..nb {
                        let gdot: f64 = (0..3).map(|a| grad[a][m] * ecb[a]).sum();
                        a_ii[(h_dof(c, m), e_dof(b, n))] -= C64::from(h2 * w * q[n] * gdot);
                    }
                }
            }
        }
    }

    // boundary terms
    for (f, face) in fcs.iter().enumerate() {
        let n = face.normal;
        for (qi, w) in face.qweights.iter().enumerate() {
            let pt = &face.qpoints[qi];
            let q = sb.eval_unchecked(pt);
            let mu = eval_face_scalar(&mu_exps, &face.qface[qi]);
            for c in 0..3 {
                let vxn = cross(unit(c), n);
                for b in 0..3 {
                    // tau <E x n, v x n>
                    let coef = dot(cross(unit(b), n), vxn);
                    if coef != 0.0 {
                        for m in 0..nb {
                            for nn in 0..nb {
                                a_ii[(e_dof(c, m), e_dof(b, nn))] +=
                                    tau * (h2 * w * coef * q[nn] * q[m]);
                            }
                        }
                    }
                }
                for a in 0..2 {
                    let t = face.tangents[a];
                    // -tau <eta x n, v x n> = -tau <eta, v> for tangential eta
                    let ceta = dot(t, unit(c));
                    if ceta != 0.0 {
                        for m in 0..nb {
                            for j in 0..nmu {
                                a_it[(e_dof(c, m), t_dof(f, a, j))] -=
                                    tau * (h2 * w * ceta * mu[j] * q[m]);
                            }
                        }
                    }
                    // +<eta, n x w>: w = e_c q_m
                    let cw = dot(t, cross(n, unit(c)));
                    if cw != 0.0 {
                        for m in 0..nb {
                            for j in 0..nmu {
                                a_it[(h_dof(c, m), t_dof(f, a, j))] +=
                                    C64::from(h2 * w * cw * mu[j] * q[m]);
                            }
                        }
                    }
                    // trace rows: <H + tau n x (E - E_hat), eta_m x n>
                    let txn = cross(t, n);
                    // H term: e_b . (t x n)
                    for b in 0..3 {
                        let ch = dot(unit(b), txn);
                        if ch != 0.0 {
                            for j in 0..nmu {
                                for nn in 0..nb {
                                    a_ti[(t_dof(f, a, j), h_dof(b, nn))] +=
                                        C64::from(h2 * w * ch * q[nn] * mu[j]);
                                }
                            }
                        }
                        // tau (n x E) . (t x n)
                        let ce = dot(cross(n, unit(b)), txn);
                        if ce != 0.0 {
                            for j in 0..nmu {
                                for nn in 0..nb {
                                    a_ti[(t_dof(f, a, j), e_dof(b, nn))] +=
                                        tau * (h2 * w * ce * q[nn] * mu[j]);
                                }
                            }
                        }
                    }
                    // -tau (n x eta') . (t x n)
                    for a2 in 0..2 {
                        let ce = dot(cross(n, face.tangents[a2]), txn);
                        if ce != 0.0 {
                            for j in 0..nmu {
                                for j2 in 0..nmu {
                                    a_tt[(t_dof(f, a, j), t_dof(f, a2, j2))] -=
                                        tau * (h2 * w * ce * mu[j2] * mu[j]);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let mut interior_labels = Vec::with_capacity(ni);
    for name in ["E", "H"] {
        for c in 1..=3 {
            for j in 0..nb {
                interior_labels.push(format!("{name}{c}[{j}]"));
            }
        }
    }
    let trace_labels = (0..fcs.len())
        .flat_map(|f| (0..2).flat_map(move |a| (0..nmu).map(move |j| format!("f{f}:t{a}[{j}]"))))
        .collect();

    Ok(ElementMatrixSet {
        a_ii,
        a_it,
        a_ti,
        a_tt,
        interior_labels,
        trace_labels,
        params: ElementParams {
            system: System::Maxwell,
            shape: cfg.shape,
            p: cfg.p,
            k: cfg.k,
            tau: cfg.tau,
            h: cfg.h,
        },
    })
}

/// Closed-form interior blocks for the lowest-order elements, used by tests
/// and the acceptance suite.
pub mod closed_form {
    use super::*;

    /// Helmholtz square, basis (u1, u2, phi): diag(ikh^2, ikh^2, -4h tau - ikh^2).
    pub fn helmholtz_square_p0(k: C64, tau: C64, h: f64) -> CMatrix {
        let ik = C64::i() * k;
        let mut m = DMatrix::zeros(3, 3);
        m[(0, 0)] = ik * h * h;
        m[(1, 1)] = ik * h * h;
        m[(2, 2)] = -tau * 4.0 * h - ik * h * h;
        m
    }

    /// Helmholtz segment, basis (u1, phi): diag(ikh, -ikh - 2 tau).
    pub fn helmholtz_segment_p0(k: C64, tau: C64, h: f64) -> CMatrix {
        let ik = C64::i() * k;
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 0)] = ik * h;
        m[(1, 1)] = -ik * h - tau * 2.0;
        m
    }

    /// Maxwell cube, basis (E1..E3, H1..H3):
    /// blockdiag((4 h^2 tau + ikh^3) I3, -(ikh^3) I3).
    pub fn maxwell_cube_p0(k: C64, tau: C64, h: f64) -> CMatrix {
        let ik = C64::i() * k;
        let alpha = tau * 4.0 * h * h + ik * h * h * h;
        let beta = -ik * h * h * h;
        DMatrix::from_fn(6, 6, |i, j| {
            if i == j {
                if i < 3 {
                    alpha
                } else {
                    beta
                }
            } else {
                C64::default()
            }
        })
    }

    /// Maxwell tetrahedron {x >= 0, x1+x2+x3 <= h}, basis (E1..E3, H1..H3):
    /// E-block (1/6)[(2 sqrt(3)+6) h^2 tau + ikh^3] on the diagonal and
    /// (1/6)(-sqrt(3) h^2 tau) off it, H-block -(1/6) ikh^3 I3.
    ///
    /// The element is invariant under coordinate permutations, so all three
    /// E-diagonal entries are equal.
    pub fn maxwell_tet_p0(k: C64, tau: C64, h: f64) -> CMatrix {
        let ik = C64::i() * k;
        let s3 = 3f64.sqrt();
        let diag = (tau * ((2.0 * s3 + 6.0) * h * h) + ik * h * h * h) / 6.0;
        let off = -tau * (s3 * h * h) / 6.0;
        let hh = -ik * h * h * h / 6.0;
        DMatrix::from_fn(6, 6, |i, j| {
            if i < 3 && j < 3 {
                if i == j {
                    diag
                } else {
                    off
                }
            } else if i == j {
                hh
            } else {
                C64::default()
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::condense;
    use nalgebra::DVector;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn helmholtz_square_p0_interior_matches_closed_form() {
        for (k, tau, h) in [
            (c(1.0, 0.0), c(1.0, 0.0), 1.0),
            (c(2.0, -0.7), c(0.3, 1.1), 0.35),
        ] {
            let em = assemble_helmholtz(&HelmholtzLocal {
                k,
                tau,
                h,
                p: 0,
                shape: Shape::Square,
            })
            .unwrap();
            let want = closed_form::helmholtz_square_p0(k, tau, h);
            assert!(max_abs_diff(&em.a_ii, &want) < 1e-14 * want.norm());
        }
    }

    #[test]
    fn helmholtz_segment_p0_blocks_match_display() {
        let (k, tau, h) = (c(1.3, 0.2), c(0.8, -0.4), 0.6);
        let em = assemble_helmholtz(&HelmholtzLocal {
            k,
            tau,
            h,
            p: 0,
            shape: Shape::Segment,
        })
        .unwrap();
        let want = closed_form::helmholtz_segment_p0(k, tau, h);
        assert!(max_abs_diff(&em.a_ii, &want) < 1e-14 * want.norm());
        // trace couplings (endpoint faces carry unit measure)
        let a_it = DMatrix::from_row_slice(2, 2, &[c(-1.0, 0.0), c(1.0, 0.0), tau, tau]);
        assert!(max_abs_diff(&em.a_it, &a_it) < 1e-14);
        assert!(max_abs_diff(&em.a_ti, &em.a_it.transpose()) < 1e-14);
        let a_tt = DMatrix::from_fn(2, 2, |i, j| if i == j { -tau } else { C64::default() });
        assert!(max_abs_diff(&em.a_tt, &a_tt) < 1e-14);
    }

    #[test]
    fn maxwell_cube_p0_matches_closed_form() {
        for (k, tau, h) in [
            (c(1.0, 0.0), c(1.0, 0.0), 1.0),
            (c(0.4, 1.9), c(-0.2, 0.9), 2.25),
        ] {
            let em = assemble_maxwell(&MaxwellLocal {
                k,
                tau,
                h,
                p: 0,
                shape: Shape::Cube,
            })
            .unwrap();
            let want = closed_form::maxwell_cube_p0(k, tau, h);
            assert!(max_abs_diff(&em.a_ii, &want) < 1e-14 * want.norm());
        }
    }

    #[test]
    fn maxwell_tet_p0_matches_closed_form() {
        for (k, tau, h) in [
            (c(1.0, 0.0), c(1.0, 0.0), 1.0),
            (c(-0.6, 0.8), c(1.4, 0.3), 0.8),
        ] {
            let em = assemble_maxwell(&MaxwellLocal {
                k,
                tau,
                h,
                p: 0,
                shape: Shape::Tetrahedron,
            })
            .unwrap();
            let want = closed_form::maxwell_tet_p0(k, tau, h);
            assert!(
                max_abs_diff(&em.a_ii, &want) < 1e-13 * want.norm(),
                "diff {:.3e}",
                max_abs_diff(&em.a_ii, &want)
            );
        }
    }

    /// The 1D lowest-order Schur complement has diagonal
    /// -(1/(ikh) - tau^2/(ikh + 2 tau) + tau) and off-diagonal
    /// -(-1/(ikh) - tau^2/(ikh + 2 tau)).
    #[test]
    fn segment_p0_schur_closed_form() {
        let (k, tau) = (c(0.8, 0.0), c(1.1, -0.6));
        let em = assemble_helmholtz(&HelmholtzLocal {
            k,
            tau,
            h: 1.0,
            p: 0,
            shape: Shape::Segment,
        })
        .unwrap();
        let s = condense(&em).unwrap().schur;
        let ikh = C64::i() * k;
        let diag = -(1.0 / ikh - tau * tau / (ikh + tau * 2.0) + tau);
        let off = -(-1.0 / ikh - tau * tau / (ikh + tau * 2.0));
        for (got, want) in [
            (s[(0, 0)], diag),
            (s[(1, 1)], diag),
            (s[(0, 1)], off),
            (s[(1, 0)], off),
        ] {
            assert!((got - want).norm() < 1e-13 * want.norm());
        }
    }

    #[test]
    fn cube_p0_singular_on_failure_line() {
        let k = c(1.7, 0.4);
        let h = 0.9;
        let tau = -C64::i() * k * h / 4.0;
        let em = assemble_maxwell(&MaxwellLocal {
            k,
            tau,
            h,
            p: 0,
            shape: Shape::Cube,
        })
        .unwrap();
        let (smin, smax) = em.interior_singular_range();
        assert!(smin <= 1e-13 * smax, "smin={smin:e} smax={smax:e}");
    }

    #[test]
    fn condense_rejects_square_failure_line() {
        let k = c(1.0, 0.0);
        let tau = c(0.0, -0.25); // 4 tau = -ikh at h = 1
        let em = assemble_helmholtz(&HelmholtzLocal {
            k,
            tau,
            h: 1.0,
            p: 0,
            shape: Shape::Square,
        })
        .unwrap();
        assert!(condense(&em).is_err());
    }

    /// Condensation agrees with a dense solve of the uncondensed block
    /// system for random trace data.
    #[test]
    fn condense_matches_uncondensed_solve() {
        let cases: Vec<ElementMatrixSet> = vec![
            assemble_helmholtz(&HelmholtzLocal {
                k: c(1.2, 0.0),
                tau: c(1.0, 0.0),
                h: 0.5,
                p: 1,
                shape: Shape::Square,
            })
            .unwrap(),
            assemble_helmholtz(&HelmholtzLocal {
                k: c(0.9, -0.3),
                tau: c(0.7, 0.2),
                h: 1.3,
                p: 1,
                shape: Shape::Segment,
            })
            .unwrap(),
            assemble_maxwell(&MaxwellLocal {
                k: c(1.1, 0.6),
                tau: c(0.8, -0.1),
                h: 0.75,
                p: 1,
                shape: Shape::Cube,
            })
            .unwrap(),
            assemble_maxwell(&MaxwellLocal {
                k: c(1.4, 0.0),
                tau: c(1.0, 0.5),
                h: 1.0,
                p: 1,
                shape: Shape::Tetrahedron,
            })
            .unwrap(),
        ];
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        for em in cases {
            let cond = condense(&em).unwrap();
            let nt = em.trace_dim();
            let g = DVector::from_fn(nt, |_, _| c(rng(), rng()));
            let interior = &cond.rhs_map * &g;
            // interior equations of the block system hold
            let r1 = &em.a_ii * &interior + &em.a_it * &g;
            assert!(r1.norm() < 1e-12 * em.a_ii.norm() * g.norm());
            // trace residual equals the Schur action
            let r2 = &em.a_ti * &interior + &em.a_tt * &g;
            let want = &cond.schur * &g;
            assert!(
                (r2.clone() - want.clone()).norm() <= 1e-12 * (want.norm() + 1.0),
                "schur mismatch {:?}",
                em.params
            );
        }
    }

    /// Blocks scale in h exactly as the closed forms predict.
    #[test]
    fn h_scaling_of_blocks() {
        let k = c(0.9, 0.1);
        let tau = c(0.4, -0.8);
        for h in [0.25, 1.0, 3.0] {
            let em = assemble_helmholtz(&HelmholtzLocal {
                k: k / h, // fix kh
                tau,
                h,
                p: 1,
                shape: Shape::Square,
            })
            .unwrap();
            let base = assemble_helmholtz(&HelmholtzLocal {
                k,
                tau,
                h: 1.0,
                p: 1,
                shape: Shape::Square,
            })
            .unwrap();
            // with kh fixed, every block is h times the unit-cell block
            for (a, b) in [
                (&em.a_ii, &base.a_ii),
                (&em.a_it, &base.a_it),
                (&em.a_ti, &base.a_ti),
                (&em.a_tt, &base.a_tt),
            ] {
                let scaled = b.map(|z| z * h);
                assert!(max_abs_diff(a, &scaled) < 1e-12 * scaled.norm().max(1e-30));
            }
        }
    }

    #[test]
    fn unsupported_configs_rejected() {
        assert!(assemble_helmholtz(&HelmholtzLocal {
            k: c(1.0, 0.0),
            tau: c(1.0, 0.0),
            h: 1.0,
            p: 0,
            shape: Shape::Cube,
        })
        .is_err());
        assert!(assemble_maxwell(&MaxwellLocal {
            k: c(1.0, 0.0),
            tau: c(1.0, 0.0),
            h: 1.0,
            p: 2,
            shape: Shape::Cube,
        })
        .is_err());
        assert!(assemble_maxwell(&MaxwellLocal {
            k: c(1.0, 0.0),
            tau: c(1.0, 0.0),
            h: 0.0,
            p: 0,
            shape: Shape::Tetrahedron,
        })
        .is_err());
    }
}
