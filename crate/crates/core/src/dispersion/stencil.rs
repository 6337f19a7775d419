//! Translation-invariant condensed stencils and their Floquet symbols.
//!
//! Node types on the 2D square lattice are (edge orientation, trace basis
//! index): types `0..p+1` live on horizontal edges, `p+1..2(p+1)` on
//! vertical edges. Offsets between nodes are stored in half-cell units, so
//! same-orientation neighbors sit at even offsets and cross-orientation
//! ones at odd offsets; the symbol phase of offset `l` is
//! `exp(i (k_vec . l) h / 2)` with `h = 1`.

use std::collections::BTreeMap;

use crate::basis::Shape;
use crate::element::condense;
use crate::hdg::{assemble_helmholtz, HelmholtzLocal};
use crate::hrt::{assemble_hrt, HrtLocal};
use crate::{C64, CMatrix, Error, Result};
use nalgebra::DMatrix;

/// Discretization whose condensed stencil is analyzed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DispersionMethod {
    Hdg { tau: C64 },
    Hrt,
}

impl DispersionMethod {
    pub fn name(self) -> &'static str {
        match self {
            DispersionMethod::Hdg { .. } => "hdg",
            DispersionMethod::Hrt => "hrt",
        }
    }

    pub fn tau(self) -> C64 {
        match self {
            DispersionMethod::Hdg { tau } => tau,
            DispersionMethod::Hrt => C64::default(),
        }
    }
}

/// Stencil coefficients `D[t][s, offset]` of the condensed trace equations
/// around one node of each type.
#[derive(Debug, Clone)]
pub struct Stencil {
    pub dim: usize,
    pub p: u32,
    pub kh: C64,
    pub method: DispersionMethod,
    /// Number of node types (2(p+1) on the square lattice, 1 in 1D).
    pub node_types: usize,
    coeffs: Vec<BTreeMap<(usize, [i32; 2]), C64>>,
}

impl Stencil {
    pub fn coefficient(&self, t: usize, s: usize, offset: [i32; 2]) -> C64 {
        self.coeffs[t]
            .get(&(s, offset))
            .copied()
            .unwrap_or_default()
    }

    /// All (target type, offset, value) couplings of node type `t`.
    pub fn row(&self, t: usize) -> impl Iterator<Item = (usize, [i32; 2], C64)> + '_ {
        self.coeffs[t].iter().map(|(&(s, o), &v)| (s, o, v))
    }

    /// Symbol matrix at a general complex wave vector (units of 1/h).
    pub fn symbol(&self, kvec: [C64; 2]) -> CMatrix {
        let s = self.node_types;
        let mut f: CMatrix = DMatrix::zeros(s, s);
        for t in 0..s {
            for (&(sn, o), &v) in &self.coeffs[t] {
                let phase = C64::i() * (kvec[0] * (0.5 * o[0] as f64) + kvec[1] * (0.5 * o[1] as f64));
                f[(t, sn)] += v * phase.exp();
            }
        }
        f
    }

    /// Symbol at wave vector `k_h (cos theta, sin theta)`.
    pub fn symbol_dir(&self, k_h: C64, theta: f64) -> CMatrix {
        if self.dim == 1 {
            self.symbol([k_h, C64::default()])
        } else {
            self.symbol([k_h * theta.cos(), k_h * theta.sin()])
        }
    }
}

fn condensed_square(method: DispersionMethod, p: u32, kh: C64) -> Result<CMatrix> {
    let em = match method {
        DispersionMethod::Hdg { tau } => assemble_helmholtz(&HelmholtzLocal {
            k: kh,
            tau,
            h: 1.0,
            p,
            shape: Shape::Square,
        })?,
        DispersionMethod::Hrt => assemble_hrt(&HrtLocal { k: kh, h: 1.0, p })?,
    };
    Ok(condense(&em)?.schur)
}

/// Extract the 2D square-lattice stencil at `h = 1`.
///
/// Coefficients equal the rows a sufficiently large uniform mesh assembly
/// would produce for an interior edge; translation invariance makes two
/// adjacent elements enough.
pub fn extract_stencil(method: DispersionMethod, p: u32, kh: C64) -> Result<Stencil> {
    if p > 1 {
        return Err(Error::UnsupportedConfig(format!(
            "lattice stencils support p in {{0,1}}, got p={p}"
        )));
    }
    let schur = condensed_square(method, p, kh)?;
    let m = (p + 1) as usize;
    // local face order [bottom, right, top, left] and the edge anchor
    // positions within a cell, in half-units
    let edge_info = [
        (0usize, [1i32, 0i32]), // bottom: horizontal
        (m, [2, 1]),            // right: vertical
        (0, [1, 2]),            // top: horizontal
        (m, [0, 1]),            // left: vertical
    ];
    let mut coeffs = vec![BTreeMap::new(); 2 * m];
    // center node of each orientation with its two adjacent cells
    // (cell origin in half-units, local face index of the center edge)
    let centers = [
        ([1i32, 0i32], 0usize, vec![([0i32, 0i32], 0usize), ([0, -2], 2)]),
        ([0, 1], m, vec![([0, 0], 3), ([-2, 0], 1)]),
    ];
    for (center_pos, type_base, cells) in centers {
        for b in 0..m {
            let t = type_base + b;
            for &(cell, fc) in &cells {
                for (f2, &(s_base, anchor)) in edge_info.iter().enumerate() {
                    let off = [
                        cell[0] + anchor[0] - center_pos[0],
                        cell[1] + anchor[1] - center_pos[1],
                    ];
                    for b2 in 0..m {
                        let v = schur[(fc * m + b, f2 * m + b2)];
                        *coeffs[t].entry((s_base + b2, off)).or_insert(C64::default()) += v;
                    }
                }
            }
        }
    }
    Ok(Stencil {
        dim: 2,
        p,
        kh,
        method,
        node_types: 2 * m,
        coeffs,
    })
}

/// Extract the 1D stencil (HDG on segments; one node type at any order
/// since endpoint traces are single values).
pub fn extract_stencil_1d(tau: C64, p: u32, kh: C64) -> Result<Stencil> {
    let em = assemble_helmholtz(&HelmholtzLocal {
        k: kh,
        tau,
        h: 1.0,
        p,
        shape: Shape::Segment,
    })?;
    let schur = condense(&em)?.schur;
    // faces [left, right]; the center endpoint is the right face of the
    // cell at (-2, 0) and the left face of the cell at (0, 0)
    let mut row = BTreeMap::new();
    let mut add = |off: [i32; 2], v: C64| {
        *row.entry((0usize, off)).or_insert(C64::default()) += v;
    };
    add([0, 0], schur[(0, 0)] + schur[(1, 1)]);
    add([2, 0], schur[(0, 1)]);
    add([-2, 0], schur[(1, 0)]);
    Ok(Stencil {
        dim: 1,
        p,
        kh,
        method: DispersionMethod::Hdg { tau },
        node_types: 1,
        coeffs: vec![row],
    })
}
