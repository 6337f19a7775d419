//! Condensed global assembly of the HDG Helmholtz system on uniform square
//! meshes with homogeneous Dirichlet conditions, plus dense condition
//! numbers for the resonance study.
//!
//! Trace unknowns live on interior edges only (boundary traces are
//! eliminated by the Dirichlet condition). The global matrix is the
//! element-wise scatter of the local Schur complements.

use std::collections::BTreeMap;

use crate::basis::Shape;
use crate::element::{condense, singular_range};
use crate::hdg::{assemble_helmholtz, HelmholtzLocal};
use crate::{C64, CMatrix, Error, Result};
use nalgebra::DMatrix;

/// Orientation of a mesh edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Horizontal,
    Vertical,
}

/// An edge of the uniform mesh, identified by orientation and the integer
/// lattice coordinates of its lower-left endpoint (in units of `h`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub kind: EdgeKind,
    pub ix: i64,
    pub iy: i64,
}

/// Uniform n-by-n mesh of square elements of size `h`.
#[derive(Debug, Clone)]
pub struct UniformMesh2D {
    pub n: usize,
    pub h: f64,
}

impl UniformMesh2D {
    /// Mesh of the unit square: `h = 1/n`.
    pub fn unit_square(n: usize) -> Self {
        UniformMesh2D { n, h: 1.0 / n as f64 }
    }

    /// Mesh of `[0, n h]^2` with explicit element size; used for lattice
    /// consistency checks against translation-invariant stencils.
    pub fn with_element_size(n: usize, h: f64) -> Self {
        UniformMesh2D { n, h }
    }

    /// Interior edges in a fixed deterministic order: horizontal edges
    /// sorted by (iy, ix), then vertical edges sorted by (ix, iy).
    pub fn interior_edges(&self) -> Vec<Edge> {
        let n = self.n as i64;
        let mut edges = Vec::with_capacity(2 * self.n * (self.n - 1));
        for iy in 1..n {
            for ix in 0..n {
                edges.push(Edge { kind: EdgeKind::Horizontal, ix, iy });
            }
        }
        for ix in 1..n {
            for iy in 0..n {
                edges.push(Edge { kind: EdgeKind::Vertical, ix, iy });
            }
        }
        edges
    }

    /// The four edges of element (ix, iy) in the local face order
    /// [bottom, right, top, left].
    pub fn element_edges(&self, ix: i64, iy: i64) -> [Edge; 4] {
        [
            Edge { kind: EdgeKind::Horizontal, ix, iy },
            Edge { kind: EdgeKind::Vertical, ix: ix + 1, iy },
            Edge { kind: EdgeKind::Horizontal, ix, iy: iy + 1 },
            Edge { kind: EdgeKind::Vertical, ix, iy },
        ]
    }
}

/// Assembled condensed global matrix over interior trace unknowns.
#[derive(Debug, Clone)]
pub struct CondensedGlobalMatrix {
    pub matrix: CMatrix,
    pub dof_index: BTreeMap<Edge, usize>,
    /// Trace basis functions per edge (p+1).
    pub per_edge: usize,
}

impl CondensedGlobalMatrix {
    pub fn row_of(&self, edge: Edge, basis: usize) -> Option<usize> {
        self.dof_index.get(&edge).map(|&e| e * self.per_edge + basis)
    }
}

/// Assemble the condensed Helmholtz matrix on the mesh. Fails with the
/// offending element's parameters if local condensation is singular.
pub fn assemble_condensed_helmholtz(
    mesh: &UniformMesh2D,
    k: C64,
    tau: C64,
    p: u32,
) -> Result<CondensedGlobalMatrix> {
    if mesh.n < 2 {
        return Err(Error::InvalidArgument(
            "mesh needs at least 2 elements per side for interior edges".into(),
        ));
    }
    let em = assemble_helmholtz(&HelmholtzLocal {
        k,
        tau,
        h: mesh.h,
        p,
        shape: Shape::Square,
    })?;
    let schur = condense(&em)?.schur;

    let per_edge = (p + 1) as usize;
    let edges = mesh.interior_edges();
    let dof_index: BTreeMap<Edge, usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let ndof = edges.len() * per_edge;
    let mut matrix: CMatrix = DMatrix::zeros(ndof, ndof);

    let n = mesh.n as i64;
    for ix in 0..n {
        for iy in 0..n {
            let elem_edges = mesh.element_edges(ix, iy);
            for (f1, e1) in elem_edges.iter().enumerate() {
                let Some(&d1) = dof_index.get(e1) else { continue };
                for (f2, e2) in elem_edges.iter().enumerate() {
                    let Some(&d2) = dof_index.get(e2) else { continue };
                    for b1 in 0..per_edge {
                        for b2 in 0..per_edge {
                            matrix[(d1 * per_edge + b1, d2 * per_edge + b2)] +=
                                schur[(f1 * per_edge + b1, f2 * per_edge + b2)];
                        }
                    }
                }
            }
        }
    }
    Ok(CondensedGlobalMatrix {
        matrix,
        dof_index,
        per_edge,
    })
}

/// Condition number sigma_max / sigma_min from a full dense SVD. Returns
/// infinity when the smallest singular value underflows (below 1e-300).
pub fn condition_number(b: &CondensedGlobalMatrix) -> f64 {
    let (smin, smax) = singular_range(&b.matrix);
    if smin < 1e-300 {
        f64::INFINITY
    } else {
        smax / smin
    }
}
