//! Boundary geometry of the reference elements: face normals, tangents,
//! quadrature and intrinsic coordinates for trace bases.
//!
//! Face intrinsic coordinates follow the global axes (not a per-element
//! orientation), so two elements sharing a face induce the same trace basis
//! on it. Face ordering is fixed:
//! * segment: `[x=0, x=1]`;
//! * square: `[bottom y=0, right x=1, top y=1, left x=0]`;
//! * cube: `[x=0, x=1, y=0, y=1, z=0, z=1]`;
//! * tetrahedron: `[x=0, y=0, z=0, oblique x+y+z=1]`.

use crate::basis::Shape;
use crate::quadrature::{gauss_legendre, triangle_rule};
use crate::Result;

/// One face of a reference element with a quadrature rule on it.
#[derive(Debug, Clone)]
pub struct Face {
    pub normal: [f64; 3],
    /// Orthonormal in-plane directions (3D shapes; unused for segments).
    pub tangents: [[f64; 3]; 2],
    /// Reference measure (endpoint: 1, edge: 1, square face: 1,
    /// coordinate tet face: 1/2, oblique tet face: sqrt(3)/2).
    pub measure: f64,
    /// Quadrature nodes in the coordinates of the parent element.
    pub qpoints: Vec<[f64; 3]>,
    /// The same nodes in the face's intrinsic coordinates.
    pub qface: Vec<[f64; 2]>,
    /// Weights including the surface Jacobian; they sum to `measure`.
    pub qweights: Vec<f64>,
}

/// Number of intrinsic coordinates of a face of the given shape.
pub fn face_dim(shape: Shape) -> usize {
    shape.dimension() - 1
}

/// Exponent list of the scalar trace basis on a face: monomials `t^j` on
/// edges, tensor monomials on cube faces, total-degree monomials on
/// tetrahedron faces. Point faces (1D elements) carry the single constant.
pub fn face_scalar_exponents(shape: Shape, p: u32) -> Vec<[u32; 2]> {
    match shape {
        Shape::Segment => vec![[0, 0]],
        Shape::Square => (0..=p).map(|j| [j, 0]).collect(),
        Shape::Cube => {
            let mut v = Vec::new();
            for j in 0..=p {
                for i in 0..=p {
                    v.push([i, j]);
                }
            }
            v
        }
        Shape::Tetrahedron => {
            let mut v = Vec::new();
            for d in 0..=p {
                for a in (0..=d).rev() {
                    v.push([a, d - a]);
                }
            }
            v
        }
    }
}

pub fn eval_face_scalar(exps: &[[u32; 2]], t: &[f64; 2]) -> Vec<f64> {
    exps.iter()
        .map(|e| t[0].powi(e[0] as i32) * t[1].powi(e[1] as i32))
        .collect()
}

/// All faces of the reference element, with `n`-point (per axis) rules on
/// square/cube faces and a degree-`2n-1` rule on triangular faces.
pub fn faces(shape: Shape, n: usize) -> Result<Vec<Face>> {
    let seg = gauss_legendre(n)?;
    let t1: Vec<f64> = seg.points.iter().map(|p| p[0]).collect();
    let w1 = seg.weights.clone();
    let mut out = Vec::new();
    match shape {
        Shape::Segment => {
            for (x, nx) in [(0.0, -1.0), (1.0, 1.0)] {
                out.push(Face {
                    normal: [nx, 0.0, 0.0],
                    tangents: [[0.0; 3]; 2],
                    measure: 1.0,
                    qpoints: vec![[x, 0.0, 0.0]],
                    qface: vec![[0.0, 0.0]],
                    qweights: vec![1.0],
                });
            }
        }
        Shape::Square => {
            // (normal, map t -> volume point, intrinsic coordinate = t)
            type Map = fn(f64) -> [f64; 3];
            let sides: [([f64; 3], Map); 4] = [
                ([0.0, -1.0, 0.0], |t| [t, 0.0, 0.0]),
                ([1.0, 0.0, 0.0], |t| [1.0, t, 0.0]),
                ([0.0, 1.0, 0.0], |t| [t, 1.0, 0.0]),
                ([-1.0, 0.0, 0.0], |t| [0.0, t, 0.0]),
            ];
            for (normal, map) in sides {
                out.push(Face {
                    normal,
                    tangents: [[0.0; 3]; 2],
                    measure: 1.0,
                    qpoints: t1.iter().map(|&t| map(t)).collect(),
                    qface: t1.iter().map(|&t| [t, 0.0]).collect(),
                    qweights: w1.clone(),
                });
            }
        }
        Shape::Cube => {
            // Faces perpendicular to axis `a` at value 0/1; intrinsic
            // coordinates are the remaining axes in increasing order.
            for a in 0..3 {
                let (b, c) = match a {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                for (val, sgn) in [(0.0, -1.0), (1.0, 1.0)] {
                    let mut normal = [0.0; 3];
                    normal[a] = sgn;
                    let mut tb = [0.0; 3];
                    tb[b] = 1.0;
                    let mut tc = [0.0; 3];
                    tc[c] = 1.0;
                    let mut qpoints = Vec::with_capacity(n * n);
                    let mut qface = Vec::with_capacity(n * n);
                    let mut qweights = Vec::with_capacity(n * n);
                    for j in 0..n {
                        for i in 0..n {
                            let mut p = [0.0; 3];
                            p[a] = val;
                            p[b] = t1[i];
                            p[c] = t1[j];
                            qpoints.push(p);
                            qface.push([t1[i], t1[j]]);
                            qweights.push(w1[i] * w1[j]);
                        }
                    }
                    out.push(Face {
                        normal,
                        tangents: [tb, tc],
                        measure: 1.0,
                        qpoints,
                        qface,
                        qweights,
                    });
                }
            }
            // reorder from axis-major to the documented [x0,x1,y0,y1,z0,z1]
            // (already in that order by construction)
        }
        Shape::Tetrahedron => {
            let tri = triangle_rule((2 * n - 1) as u32)?;
            let s3 = 3f64.sqrt();
            struct TetFace {
                normal: [f64; 3],
                tangents: [[f64; 3]; 2],
                measure: f64,
                jac: f64,
                map: fn(f64, f64) -> [f64; 3],
            }
            let defs = [
                TetFace {
                    normal: [-1.0, 0.0, 0.0],
                    tangents: [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
                    measure: 0.5,
                    jac: 1.0,
                    map: |u, v| [0.0, u, v],
                },
                TetFace {
                    normal: [0.0, -1.0, 0.0],
                    tangents: [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]],
                    measure: 0.5,
                    jac: 1.0,
                    map: |u, v| [u, 0.0, v],
                },
                TetFace {
                    normal: [0.0, 0.0, -1.0],
                    tangents: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
                    measure: 0.5,
                    jac: 1.0,
                    map: |u, v| [u, v, 0.0],
                },
                TetFace {
                    normal: [1.0 / s3, 1.0 / s3, 1.0 / s3],
                    tangents: [
                        [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0],
                        [1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()],
                    ],
                    measure: s3 / 2.0,
                    jac: s3,
                    map: |u, v| [u, v, 1.0 - u - v],
                },
            ];
            for d in defs {
                let mut qpoints = Vec::with_capacity(tri.len());
                let mut qface = Vec::with_capacity(tri.len());
                let mut qweights = Vec::with_capacity(tri.len());
                for (pt, w) in tri.points.iter().zip(&tri.weights) {
                    qpoints.push((d.map)(pt[0], pt[1]));
                    qface.push([pt[0], pt[1]]);
                    qweights.push(w * d.jac);
                }
                out.push(Face {
                    normal: d.normal,
                    tangents: d.tangents,
                    measure: d.measure,
                    qpoints,
                    qface,
                    qweights,
                });
            }
        }
    }
    Ok(out)
}
