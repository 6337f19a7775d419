//! Lattice dispersion analysis of the condensed trace systems.
//!
//! On an infinite uniform mesh the condensed equations are translation
//! invariant, so a plane-wave ansatz turns them into a small symbol matrix
//! `F(k^h)` per propagation angle; its singularity `det F(k^h) = 0` defines
//! the discrete wavenumber. This module extracts the stencils, evaluates
//! symbols, solves for `k^h` by continuation, computes angle-swept error
//! metrics, searches optimal stabilization parameters, and carries the
//! closed-form relations used as oracles.

mod closed;
mod metrics;
mod optimal;
mod solve;
mod stencil;

pub use closed::{
    asymptotic_coefficient, asymptotic_order, hdg1d_closed_root, hdg2d_p0_axis_root,
    hdg2d_p0_construction_root, hrt_axis_root, hrt_construction_root, hrt_relation_residual,
    verify_asymptotics, AsympCase, SlopeReport,
};
pub use metrics::{angle_set, error_metrics, error_metrics_with, ErrorMetrics};
pub use optimal::{optimal_tau_search, Branch, OptimalTau, SearchOptions};
pub use solve::{solve_all_angles, solve_k_h, ContinuationPlan, DispersionResult};
pub use stencil::{extract_stencil, extract_stencil_1d, DispersionMethod, Stencil};
