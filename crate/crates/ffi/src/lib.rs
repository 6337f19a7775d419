//! C ABI for the hdglab library.
//!
//! Element matrices are exposed through an opaque handle; scalar studies
//! (singular-value sweeps, dispersion solves, error metrics) are flat
//! functions. Complex values cross the boundary as (re, im) pairs, and
//! complex matrices as row-major interleaved `[re, im, re, im, ...]`
//! buffers. Every function returns a status code; out-parameters are only
//! written on `Ok`.

use hdglab::basis::Shape;
use hdglab::dispersion::{
    error_metrics, optimal_tau_search, solve_k_h, Branch, DispersionMethod, SearchOptions,
};
use hdglab::element::{condense, ElementMatrixSet};
use hdglab::hdg::{assemble_helmholtz, assemble_maxwell, HelmholtzLocal, MaxwellLocal};
use hdglab::hrt::{assemble_hrt, HrtLocal};
use hdglab::{C64, CMatrix, Error};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HdglabStatus {
    Ok = 0,
    InvalidArgument = 1,
    UnsupportedConfig = 2,
    Singular = 3,
    NoConvergence = 4,
    NullPointer = 5,
}

impl From<&Error> for HdglabStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::OutOfDomain(_) => HdglabStatus::InvalidArgument,
            Error::UnsupportedConfig(_) => HdglabStatus::UnsupportedConfig,
            Error::LocalSingularity { .. } => HdglabStatus::Singular,
            Error::RootNotFound(_) => HdglabStatus::NoConvergence,
        }
    }
}

/// Discretized first-order system.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HdglabSystem {
    Helmholtz = 0,
    Maxwell = 1,
    HybridRt = 2,
}

/// Reference element shape.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HdglabShape {
    Segment = 0,
    Square = 1,
    Cube = 2,
    Tetrahedron = 3,
}

impl From<HdglabShape> for Shape {
    fn from(s: HdglabShape) -> Shape {
        match s {
            HdglabShape::Segment => Shape::Segment,
            HdglabShape::Square => Shape::Square,
            HdglabShape::Cube => Shape::Cube,
            HdglabShape::Tetrahedron => Shape::Tetrahedron,
        }
    }
}

/// Matrix block selector of the local element system.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HdglabBlock {
    InteriorInterior = 0,
    InteriorTrace = 1,
    TraceInterior = 2,
    TraceTrace = 3,
}

/// Opaque handle to one assembled local element system.
pub struct HdglabLocalMatrix {
    inner: ElementMatrixSet,
}

fn write_matrix(m: &CMatrix, out: *mut f64, len: usize) -> HdglabStatus {
    let need = 2 * m.nrows() * m.ncols();
    if out.is_null() {
        return HdglabStatus::NullPointer;
    }
    if len < need {
        return HdglabStatus::InvalidArgument;
    }
    let buf = unsafe { std::slice::from_raw_parts_mut(out, need) };
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            buf[2 * (i * m.ncols() + j)] = z.re;
            buf[2 * (i * m.ncols() + j) + 1] = z.im;
        }
    }
    HdglabStatus::Ok
}

/// Assemble a local element system and return an owned handle through
/// `out`. Free it with [`hdglab_local_matrix_free`].
///
/// # Safety
/// `out` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn hdglab_local_matrix_new(
    system: HdglabSystem,
    shape: HdglabShape,
    p: u32,
    k_re: f64,
    k_im: f64,
    tau_re: f64,
    tau_im: f64,
    h: f64,
    out: *mut *mut HdglabLocalMatrix,
) -> HdglabStatus {
    if out.is_null() {
        return HdglabStatus::NullPointer;
    }
    let k = C64::new(k_re, k_im);
    let tau = C64::new(tau_re, tau_im);
    let built = match system {
        HdglabSystem::Helmholtz => assemble_helmholtz(&HelmholtzLocal {
            k,
            tau,
            h,
            p,
            shape: shape.into(),
        }),
        HdglabSystem::Maxwell => assemble_maxwell(&MaxwellLocal {
            k,
            tau,
            h,
            p,
            shape: shape.into(),
        }),
        HdglabSystem::HybridRt => {
            if !matches!(shape, HdglabShape::Square) {
                return HdglabStatus::UnsupportedConfig;
            }
            assemble_hrt(&HrtLocal { k, h, p })
        }
    };
    match built {
        Ok(inner) => {
            unsafe { *out = Box::into_raw(Box::new(HdglabLocalMatrix { inner })) };
            HdglabStatus::Ok
        }
        Err(e) => (&e).into(),
    }
}

/// Release a handle returned by [`hdglab_local_matrix_new`].
///
/// # Safety
/// `m` must be null or a pointer previously returned by
/// [`hdglab_local_matrix_new`] that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn hdglab_local_matrix_free(m: *mut HdglabLocalMatrix) {
    if !m.is_null() {
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Interior and trace dimensions of the element system.
///
/// # Safety
/// `m` must be a live handle; `interior`/`trace` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn hdglab_local_matrix_dims(
    m: *const HdglabLocalMatrix,
    interior: *mut usize,
    trace: *mut usize,
) -> HdglabStatus {
    let Some(m) = (unsafe { m.as_ref() }) else {
        return HdglabStatus::NullPointer;
    };
    if !interior.is_null() {
        unsafe { *interior = m.inner.interior_dim() };
    }
    if !trace.is_null() {
        unsafe { *trace = m.inner.trace_dim() };
    }
    HdglabStatus::Ok
}

/// Copy one block, row-major with interleaved real/imaginary parts.
/// `len` is the capacity of `out` in doubles (needs 2 * rows * cols).
///
/// # Safety
/// `m` must be a live handle and `out` must point to at least `len`
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn hdglab_local_matrix_block(
    m: *const HdglabLocalMatrix,
    block: HdglabBlock,
    out: *mut f64,
    len: usize,
) -> HdglabStatus {
    let Some(m) = (unsafe { m.as_ref() }) else {
        return HdglabStatus::NullPointer;
    };
    let src = match block {
        HdglabBlock::InteriorInterior => &m.inner.a_ii,
        HdglabBlock::InteriorTrace => &m.inner.a_it,
        HdglabBlock::TraceInterior => &m.inner.a_ti,
        HdglabBlock::TraceTrace => &m.inner.a_tt,
    };
    write_matrix(src, out, len)
}

/// Smallest and largest singular values of the interior block.
///
/// # Safety
/// `m` must be a live handle; out-pointers must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn hdglab_local_matrix_sigma(
    m: *const HdglabLocalMatrix,
    sigma_min: *mut f64,
    sigma_max: *mut f64,
) -> HdglabStatus {
    let Some(m) = (unsafe { m.as_ref() }) else {
        return HdglabStatus::NullPointer;
    };
    let (lo, hi) = m.inner.interior_singular_range();
    if !sigma_min.is_null() {
        unsafe { *sigma_min = lo };
    }
    if !sigma_max.is_null() {
        unsafe { *sigma_max = hi };
    }
    HdglabStatus::Ok
}

/// Statically condense the interior unknowns and copy the trace-by-trace
/// Schur complement (`len` in doubles, needs 2 * trace^2).
///
/// # Safety
/// `m` must be a live handle and `out` must point to at least `len`
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn hdglab_local_matrix_schur(
    m: *const HdglabLocalMatrix,
    out: *mut f64,
    len: usize,
) -> HdglabStatus {
    let Some(m) = (unsafe { m.as_ref() }) else {
        return HdglabStatus::NullPointer;
    };
    match condense(&m.inner) {
        Ok(c) => write_matrix(&c.schur, out, len),
        Err(e) => (&e).into(),
    }
}

fn method_from(method: u32, tau: C64) -> Option<DispersionMethod> {
    match method {
        0 => Some(DispersionMethod::Hdg { tau }),
        1 => Some(DispersionMethod::Hrt),
        _ => None,
    }
}

/// Solve the lattice dispersion relation `det F(k^h) = 0` at one angle.
/// `method` is 0 for the stabilized (HDG) scheme, 1 for hybrid RT.
///
/// # Safety
/// Out-pointers must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn hdglab_dispersion_solve(
    method: u32,
    p: u32,
    kh: f64,
    tau_re: f64,
    tau_im: f64,
    theta: f64,
    k_h_re: *mut f64,
    k_h_im: *mut f64,
    residual: *mut f64,
) -> HdglabStatus {
    let Some(method) = method_from(method, C64::new(tau_re, tau_im)) else {
        return HdglabStatus::InvalidArgument;
    };
    match solve_k_h(method, p, kh, theta) {
        Ok(r) => {
            if !k_h_re.is_null() {
                unsafe { *k_h_re = r.k_h.re };
            }
            if !k_h_im.is_null() {
                unsafe { *k_h_im = r.k_h.im };
            }
            if !residual.is_null() {
                unsafe { *residual = r.residual };
            }
            HdglabStatus::Ok
        }
        Err(e) => (&e).into(),
    }
}

/// Dispersive, dissipative and total wavenumber errors over `n_angles`
/// uniform angles in [0, pi/2].
///
/// # Safety
/// Out-pointers must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn hdglab_error_metrics(
    method: u32,
    p: u32,
    kh: f64,
    tau_re: f64,
    tau_im: f64,
    n_angles: usize,
    eps_disp: *mut f64,
    eps_dissip: *mut f64,
    eps_total: *mut f64,
) -> HdglabStatus {
    let Some(method) = method_from(method, C64::new(tau_re, tau_im)) else {
        return HdglabStatus::InvalidArgument;
    };
    match error_metrics(method, p, kh, n_angles) {
        Ok(m) => {
            if !eps_disp.is_null() {
                unsafe { *eps_disp = m.eps_disp };
            }
            if !eps_dissip.is_null() {
                unsafe { *eps_dissip = m.eps_dissip };
            }
            if !eps_total.is_null() {
                unsafe { *eps_total = m.eps_total };
            }
            HdglabStatus::Ok
        }
        Err(e) => (&e).into(),
    }
}

/// Search the stabilization parameter minimizing the total wavenumber
/// error; `im_positive` selects the branch of `Im(tau)`.
///
/// # Safety
/// Out-pointers must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn hdglab_optimal_tau(
    p: u32,
    kh: f64,
    im_positive: bool,
    n_angles: usize,
    tau_re: *mut f64,
    tau_im: *mut f64,
    eps_total: *mut f64,
) -> HdglabStatus {
    let branch = if im_positive { Branch::ImPos } else { Branch::ImNeg };
    let opts = SearchOptions {
        n_angles,
        ..SearchOptions::default()
    };
    match optimal_tau_search(p, kh, branch, &opts) {
        Ok(found) => {
            if !tau_re.is_null() {
                unsafe { *tau_re = found.tau.re };
            }
            if !tau_im.is_null() {
                unsafe { *tau_im = found.tau.im };
            }
            if !eps_total.is_null() {
                unsafe { *eps_total = found.eps_total };
            }
            HdglabStatus::Ok
        }
        Err(e) => (&e).into(),
    }
}

/// One-shot smallest singular value of the interior block at `h = 1`
/// (Helmholtz on segments/squares, Maxwell on cubes/tetrahedra).
///
/// # Safety
/// Out-pointers must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn hdglab_sigma_min_normalized(
    shape: HdglabShape,
    p: u32,
    kh_re: f64,
    kh_im: f64,
    tau_re: f64,
    tau_im: f64,
    out: *mut f64,
) -> HdglabStatus {
    match hdglab::stability::element_matrix(
        shape.into(),
        p,
        C64::new(kh_re, kh_im),
        C64::new(tau_re, tau_im),
    ) {
        Ok(em) => {
            let (lo, hi) = em.interior_singular_range();
            if !out.is_null() {
                unsafe { *out = if hi > 0.0 { lo / hi } else { 0.0 } };
            }
            HdglabStatus::Ok
        }
        Err(e) => (&e).into(),
    }
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn hdglab_version() -> *const std::os::raw::c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const _
}
