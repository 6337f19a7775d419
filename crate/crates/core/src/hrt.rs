//! Hybrid Raviart-Thomas local matrices for the Helmholtz system on squares.
//!
//! Same weak forms as the HDG element but with the mixed velocity space
//! `Q_{p+1,p} x Q_{p,p+1}`, scalar space `Q_p`, edge traces `P_p`, and no
//! stabilization (`tau = 0`): the trace rows reduce to normal-flux
//! continuity `<u.n, mu> = 0`.

use crate::basis::{ScalarBasis, Shape};
use crate::element::{ElementMatrixSet, ElementParams, System};
use crate::hdg::assemble_mixed;
use crate::{C64, Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct HrtLocal {
    pub k: C64,
    pub h: f64,
    pub p: u32,
}

pub fn assemble_hrt(cfg: &HrtLocal) -> Result<ElementMatrixSet> {
    if cfg.p > 1 {
        return Err(Error::UnsupportedConfig(format!(
            "hybrid Raviart-Thomas assembly supports p in {{0,1}}, got p={}",
            cfg.p
        )));
    }
    let params = ElementParams {
        system: System::HybridRt,
        shape: Shape::Square,
        p: cfg.p,
        k: cfg.k,
        tau: C64::default(),
        h: cfg.h,
    };
    let vx = ScalarBasis::tensor2(cfg.p + 1, cfg.p);
    let vy = ScalarBasis::tensor2(cfg.p, cfg.p + 1);
    let scalar = ScalarBasis::new(Shape::Square, cfg.p);
    assemble_mixed(params, &[vx, vy], &scalar, C64::default())
}
