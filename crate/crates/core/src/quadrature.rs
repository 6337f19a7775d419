//! Quadrature rules on the reference segment, square, cube, tetrahedron and
//! triangle.
//!
//! Everything is built from Gauss rules computed by the Golub-Welsch
//! eigenvalue method. Simplex rules use a collapsed-coordinate (Duffy) map of
//! tensor rules whose Jacobi weights absorb the map's Jacobian, so an
//! `n`-point-per-axis rule stays exact for total degree `2n-1`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::{Error, Result};

/// Points and positive weights on a reference domain.
///
/// Points are stored with three coordinates; trailing entries beyond
/// [`QuadratureRule::dim`] are zero.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub points: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
    /// Largest polynomial (total or per-axis, matching the rule family)
    /// degree integrated exactly.
    pub exactness: u32,
    pub dim: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// \sum_q w_q f(x_q)
    pub fn integrate(&self, mut f: impl FnMut(&[f64; 3]) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * f(p))
            .sum()
    }
}

/// Nodes and weights of the n-point Gauss-Jacobi rule on [-1,1] with weight
/// (1-x)^alpha, via the Golub-Welsch symmetric tridiagonal eigenproblem.
fn gauss_jacobi_m11(n: usize, alpha: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let beta = 0.0f64;
    let ab = alpha + beta;
    let mut diag = vec![0.0f64; n];
    let mut off = vec![0.0f64; n.saturating_sub(1)];
    diag[0] = (beta - alpha) / (ab + 2.0);
    for k in 1..n {
        let kf = k as f64;
        let den = (2.0 * kf + ab) * (2.0 * kf + ab + 2.0);
        diag[k] = (beta * beta - alpha * alpha) / den;
        let b = if k == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0))
        } else {
            4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab)
                / ((2.0 * kf + ab) * (2.0 * kf + ab) * (2.0 * kf + ab + 1.0) * (2.0 * kf + ab - 1.0))
        };
        off[k - 1] = b.sqrt();
    }
    let jac = DMatrix::<f64>::from_fn(n, n, |i, j| {
        if i == j {
            diag[i]
        } else if i + 1 == j || j + 1 == i {
            off[i.min(j)]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jac);
    // total weight of (1-x)^alpha on [-1,1]
    let mu0 = 2f64.powf(ab + 1.0) / (alpha + 1.0);
    let mut nodes: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let v0 = eig.eigenvectors[(0, j)];
            (eig.eigenvalues[j], mu0 * v0 * v0)
        })
        .collect();
    nodes.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    (
        nodes.iter().map(|t| t.0).collect(),
        nodes.iter().map(|t| t.1).collect(),
    )
}

/// n-point rule on [0,1] with weight (1-t)^alpha, exact for degree 2n-1.
fn gauss_jacobi_01(n: usize, alpha: u32) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_jacobi_m11(n, alpha as f64);
    let scale = 0.5f64.powi(alpha as i32 + 1);
    (
        x.iter().map(|&xi| 0.5 * (xi + 1.0)).collect(),
        w.iter().map(|&wi| scale * wi).collect(),
    )
}

/// n-point Gauss-Legendre rule on the segment [0,1].
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "gauss_legendre requires at least one point".into(),
        ));
    }
    let (x, w) = gauss_jacobi_01(n, 0);
    Ok(QuadratureRule {
        points: x.iter().map(|&t| [t, 0.0, 0.0]).collect(),
        weights: w,
        exactness: (2 * n - 1) as u32,
        dim: 1,
    })
}

/// Tensor product of a segment rule with itself over the unit square (d=2)
/// or cube (d=3). Exactness is preserved per axis.
pub fn tensor_rule(base: &QuadratureRule, d: usize) -> Result<QuadratureRule> {
    if base.dim != 1 {
        return Err(Error::InvalidArgument(
            "tensor_rule expects a segment rule".into(),
        ));
    }
    if d != 2 && d != 3 {
        return Err(Error::InvalidArgument(format!(
            "tensor_rule dimension must be 2 or 3, got {d}"
        )));
    }
    let n = base.len();
    let mut points = Vec::with_capacity(n.pow(d as u32));
    let mut weights = Vec::with_capacity(n.pow(d as u32));
    if d == 2 {
        for j in 0..n {
            for i in 0..n {
                points.push([base.points[i][0], base.points[j][0], 0.0]);
                weights.push(base.weights[i] * base.weights[j]);
            }
        }
    } else {
        for k in 0..n {
            for j in 0..n {
                for i in 0..n {
                    points.push([base.points[i][0], base.points[j][0], base.points[k][0]]);
                    weights.push(base.weights[i] * base.weights[j] * base.weights[k]);
                }
            }
        }
    }
    Ok(QuadratureRule {
        points,
        weights,
        exactness: base.exactness,
        dim: d,
    })
}

/// Rule on the reference tetrahedron {x >= 0, x1+x2+x3 <= 1}, exact for all
/// monomials of total degree <= `degree`.
///
/// Collapsed coordinates: x = u, y = v(1-u), z = w(1-u)(1-v) with Jacobian
/// (1-u)^2 (1-v), absorbed by Gauss-Jacobi weights so one point per axis
/// suffices for degree 0 (the centroid rule).
pub fn simplex_rule(degree: u32) -> Result<QuadratureRule> {
    let n = (degree as usize + 2) / 2; // ceil((degree+1)/2)
    let n = n.max(1);
    let (u, wu) = gauss_jacobi_01(n, 2);
    let (v, wv) = gauss_jacobi_01(n, 1);
    let (w, ww) = gauss_jacobi_01(n, 0);
    let mut points = Vec::with_capacity(n * n * n);
    let mut weights = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = u[i];
                let y = v[j] * (1.0 - u[i]);
                let z = w[k] * (1.0 - u[i]) * (1.0 - v[j]);
                points.push([x, y, z]);
                weights.push(wu[i] * wv[j] * ww[k]);
            }
        }
    }
    Ok(QuadratureRule {
        points,
        weights,
        exactness: (2 * n - 1) as u32,
        dim: 3,
    })
}

/// Rule on the reference triangle {u,v >= 0, u+v <= 1}, exact for total
/// degree <= `degree`. Used for tetrahedron faces.
pub fn triangle_rule(degree: u32) -> Result<QuadratureRule> {
    let n = ((degree as usize + 2) / 2).max(1);
    let (u, wu) = gauss_jacobi_01(n, 1);
    let (v, wv) = gauss_jacobi_01(n, 0);
    let mut points = Vec::with_capacity(n * n);
    let mut weights = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            points.push([u[i], v[j] * (1.0 - u[i]), 0.0]);
            weights.push(wu[i] * wv[j]);
        }
    }
    Ok(QuadratureRule {
        points,
        weights,
        exactness: (2 * n - 1) as u32,
        dim: 2,
    })
}
