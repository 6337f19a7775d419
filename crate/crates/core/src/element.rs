//! Element matrix blocks and static condensation.

use nalgebra::DMatrix;

use crate::basis::Shape;
use crate::{C64, CMatrix, Error, Result, RANK_TOL};

/// Which first-order system an element matrix discretizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum System {
    Helmholtz,
    Maxwell,
    HybridRt,
}

impl System {
    pub fn name(self) -> &'static str {
        match self {
            System::Helmholtz => "helmholtz",
            System::Maxwell => "maxwell",
            System::HybridRt => "hrt",
        }
    }
}

/// Parameters an element matrix was assembled with; carried along for
/// diagnostics and error reporting.
#[derive(Debug, Clone, Copy)]
pub struct ElementParams {
    pub system: System,
    pub shape: Shape,
    pub p: u32,
    pub k: C64,
    pub tau: C64,
    pub h: f64,
}

/// The four blocks of one element's discrete system, ordered
/// `[[A_ii, A_it], [A_ti, A_tt]]` over (interior, trace) unknowns.
///
/// Pairings are bilinear (test functions are not conjugated).
#[derive(Debug, Clone)]
pub struct ElementMatrixSet {
    pub a_ii: CMatrix,
    pub a_it: CMatrix,
    pub a_ti: CMatrix,
    pub a_tt: CMatrix,
    pub interior_labels: Vec<String>,
    pub trace_labels: Vec<String>,
    pub params: ElementParams,
}

impl ElementMatrixSet {
    pub fn interior_dim(&self) -> usize {
        self.a_ii.nrows()
    }

    pub fn trace_dim(&self) -> usize {
        self.a_tt.nrows()
    }

    /// Smallest and largest singular values of the interior block.
    pub fn interior_singular_range(&self) -> (f64, f64) {
        singular_range(&self.a_ii)
    }

    /// Full block matrix, for uncondensed reference solves in tests.
    pub fn full_matrix(&self) -> CMatrix {
        let ni = self.interior_dim();
        let nt = self.trace_dim();
        let mut m = DMatrix::zeros(ni + nt, ni + nt);
        m.view_mut((0, 0), (ni, ni)).copy_from(&self.a_ii);
        m.view_mut((0, ni), (ni, nt)).copy_from(&self.a_it);
        m.view_mut((ni, 0), (nt, ni)).copy_from(&self.a_ti);
        m.view_mut((ni, ni), (nt, nt)).copy_from(&self.a_tt);
        m
    }
}

pub fn singular_range(m: &CMatrix) -> (f64, f64) {
    let sv = m.clone().singular_values();
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for s in sv.iter() {
        lo = lo.min(*s);
        hi = hi.max(*s);
    }
    (lo, hi)
}

/// Result of eliminating the interior unknowns of one element.
#[derive(Debug, Clone)]
pub struct CondensedElement {
    /// Trace-by-trace Schur complement `A_tt - A_ti A_ii^{-1} A_it`.
    pub schur: CMatrix,
    /// Maps trace data to the interior solution of the homogeneous local
    /// problem: `interior = rhs_map * trace`.
    pub rhs_map: CMatrix,
}

/// Statically condense the interior unknowns.
///
/// Fails with [`Error::LocalSingularity`] when the interior block is rank
/// deficient relative to [`RANK_TOL`].
pub fn condense(em: &ElementMatrixSet) -> Result<CondensedElement> {
    let (smin, smax) = em.interior_singular_range();
    if smin <= RANK_TOL * smax {
        return Err(Error::LocalSingularity {
            k: em.params.k,
            tau: em.params.tau,
            h: em.params.h,
            context: format!(
                "{} {} p={}, sigma_min/sigma_max = {:.3e}",
                em.params.system.name(),
                em.params.shape.name(),
                em.params.p,
                if smax > 0.0 { smin / smax } else { 0.0 }
            ),
        });
    }
    let lu = em.a_ii.clone().lu();
    let x = lu.solve(&em.a_it).ok_or_else(|| Error::LocalSingularity {
        k: em.params.k,
        tau: em.params.tau,
        h: em.params.h,
        context: "LU solve failed".into(),
    })?;
    Ok(CondensedElement {
        schur: &em.a_tt - &em.a_ti * &x,
        rhs_map: -x,
    })
}
