//! Reference elements and monomial bases.
//!
//! Reference elements are the unit segment [0,1], unit square [0,1]^2, unit
//! cube [0,1]^3, and the unit right tetrahedron {x_j >= 0, x1+x2+x3 <= 1}.
//! Physical elements of size `h` are axis-aligned scalings; basis functions
//! are monomials in the reference coordinates.
//!
//! Orderings are fixed for reproducibility:
//! * segment: `1, x, ..., x^p`;
//! * square (tensor family): `x^i y^j` with `j` outer, `i` inner,
//!   so `p=1` reads `1, x, y, xy`;
//! * cube (tensor family): `x^i y^j z^k` with `k` outermost, then `j`, `i`;
//! * tetrahedron (total-degree family): graded lexicographic, `p=2` reads
//!   `1, x, y, z, x^2, xy, xz, y^2, yz, z^2`.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Segment,
    Square,
    Cube,
    Tetrahedron,
}

impl Shape {
    pub fn dimension(self) -> usize {
        match self {
            Shape::Segment => 1,
            Shape::Square => 2,
            Shape::Cube | Shape::Tetrahedron => 3,
        }
    }

    /// Measure of the reference element.
    pub fn measure(self) -> f64 {
        match self {
            Shape::Tetrahedron => 1.0 / 6.0,
            _ => 1.0,
        }
    }

    pub fn contains(self, p: &[f64; 3], tol: f64) -> bool {
        let d = self.dimension();
        let in_box = (0..d).all(|c| p[c] >= -tol && p[c] <= 1.0 + tol)
            && (d..3).all(|c| p[c].abs() <= tol);
        match self {
            Shape::Tetrahedron => {
                (0..3).all(|c| p[c] >= -tol) && p[0] + p[1] + p[2] <= 1.0 + tol
            }
            _ => in_box,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Shape::Segment => "segment",
            Shape::Square => "square",
            Shape::Cube => "cube",
            Shape::Tetrahedron => "tet",
        }
    }
}

/// Polynomial family of a scalar basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Total degree at most p (`P_p`); segments and tetrahedra.
    TotalDegree,
    /// Per-axis degree caps (`Q_p`, possibly anisotropic); squares and cubes.
    TensorProduct,
}

/// An ordered list of monomials on a reference element.
#[derive(Debug, Clone)]
pub struct ScalarBasis {
    pub shape: Shape,
    pub family: Family,
    /// Nominal order p (for anisotropic bases, the maximum per-axis cap).
    pub order: u32,
    exponents: Vec<[u32; 3]>,
}

impl ScalarBasis {
    /// Canonical basis for the shape: `Q_p` on squares/cubes, `P_p` on
    /// segments/tetrahedra.
    pub fn new(shape: Shape, p: u32) -> Self {
        let exponents = match shape {
            Shape::Segment => (0..=p).map(|i| [i, 0, 0]).collect(),
            Shape::Square => {
                let mut v = Vec::with_capacity(((p + 1) * (p + 1)) as usize);
                for j in 0..=p {
                    for i in 0..=p {
                        v.push([i, j, 0]);
                    }
                }
                v
            }
            Shape::Cube => {
                let mut v = Vec::with_capacity(((p + 1) * (p + 1) * (p + 1)) as usize);
                for k in 0..=p {
                    for j in 0..=p {
                        for i in 0..=p {
                            v.push([i, j, k]);
                        }
                    }
                }
                v
            }
            Shape::Tetrahedron => {
                let mut v = Vec::new();
                for d in 0..=p {
                    for a in (0..=d).rev() {
                        for b in (0..=(d - a)).rev() {
                            v.push([a, b, d - a - b]);
                        }
                    }
                }
                v
            }
        };
        let family = match shape {
            Shape::Segment | Shape::Tetrahedron => Family::TotalDegree,
            Shape::Square | Shape::Cube => Family::TensorProduct,
        };
        ScalarBasis {
            shape,
            family,
            order: p,
            exponents,
        }
    }

    /// Anisotropic tensor basis `Q_{l,m}` on the square: degree at most `l`
    /// in x and `m` in y, ordered with the y-degree outer.
    pub fn tensor2(l: u32, m: u32) -> Self {
        let mut v = Vec::with_capacity(((l + 1) * (m + 1)) as usize);
        for j in 0..=m {
            for i in 0..=l {
                v.push([i, j, 0]);
            }
        }
        ScalarBasis {
            shape: Shape::Square,
            family: Family::TensorProduct,
            order: l.max(m),
            exponents: v,
        }
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[[u32; 3]] {
        &self.exponents
    }

    /// Values of all basis functions at a point of the reference element.
    pub fn eval(&self, point: &[f64; 3]) -> Result<Vec<f64>> {
        if !self.shape.contains(point, 1e-12) {
            return Err(Error::OutOfDomain(format!(
                "{point:?} not in reference {}",
                self.shape.name()
            )));
        }
        Ok(self.eval_unchecked(point))
    }

    pub fn eval_unchecked(&self, point: &[f64; 3]) -> Vec<f64> {
        self.exponents
            .iter()
            .map(|e| {
                point[0].powi(e[0] as i32) * point[1].powi(e[1] as i32) * point[2].powi(e[2] as i32)
            })
            .collect()
    }

    /// Values of the `axis` partial derivative of every basis function.
    pub fn eval_deriv(&self, point: &[f64; 3], axis: usize) -> Vec<f64> {
        self.exponents
            .iter()
            .map(|e| {
                if e[axis] == 0 {
                    0.0
                } else {
                    let mut v = e[axis] as f64;
                    for c in 0..3 {
                        let ex = if c == axis { e[c] - 1 } else { e[c] };
                        v *= point[c].powi(ex as i32);
                    }
                    v
                }
            })
            .collect()
    }
}
