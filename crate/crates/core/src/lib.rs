//! Numerical laboratory for hybridizable discontinuous Galerkin (HDG) and
//! hybrid Raviart-Thomas (HRT) discretizations of time-harmonic wave systems.
//!
//! The crate assembles local element matrices for the first-order Helmholtz
//! system (segments, squares) and the 3D Maxwell system (cubes, tetrahedra),
//! performs static condensation onto the trace unknowns, and builds on top of
//! that three groups of studies:
//!
//! * stability sweeps of the smallest singular value of the element matrix as
//!   the normalized wavenumber `kh` and the stabilization parameter `tau`
//!   vary (including complex values of both),
//! * condensed global assembly on uniform square meshes with a dense
//!   condition-number study near the first Dirichlet resonance,
//! * lattice dispersion analysis: translation-invariant stencil extraction,
//!   symbol determinants, discrete-wavenumber root solves, error metrics and
//!   optimal-`tau` searches, with closed-form cross-checks.
//!
//! All computations are desk scale and use dense complex linear algebra.

pub mod basis;
pub mod cnum;
pub mod dispersion;
pub mod element;
pub mod faces;
pub mod global;
pub mod hdg;
pub mod hrt;
pub mod quadrature;
pub mod report;
pub mod stability;

pub use num_complex::Complex64 as C64;

/// Dense complex matrix used throughout the crate.
pub type CMatrix = nalgebra::DMatrix<C64>;

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported configuration: {0}")]
    UnsupportedConfig(String),
    #[error("point outside reference element: {0}")]
    OutOfDomain(String),
    #[error("local matrix singular at k={k}, tau={tau}, h={h} ({context})")]
    LocalSingularity {
        k: C64,
        tau: C64,
        h: f64,
        context: String,
    },
    #[error("root search failed: {0}")]
    RootNotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Relative rank tolerance: a matrix counts as singular when its smallest
/// singular value is at most this factor times the largest one.
pub const RANK_TOL: f64 = 1e-12;
