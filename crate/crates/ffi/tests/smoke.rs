//! Exercises the C ABI from Rust: handle lifecycle, block copies, the
//! closed-form lowest-order matrices, and the scalar entry points.

use hdglab_ffi::*;

fn c64(buf: &[f64], cols: usize, i: usize, j: usize) -> (f64, f64) {
    (buf[2 * (i * cols + j)], buf[2 * (i * cols + j) + 1])
}

#[test]
fn local_matrix_handle_roundtrip() {
    unsafe {
        let mut m: *mut HdglabLocalMatrix = std::ptr::null_mut();
        let st = hdglab_local_matrix_new(
            HdglabSystem::Helmholtz,
            HdglabShape::Square,
            0,
            1.0,
            0.0,
            1.0,
            0.0,
            1.0,
            &mut m,
        );
        assert_eq!(st, HdglabStatus::Ok);
        let (mut ni, mut nt) = (0usize, 0usize);
        assert_eq!(hdglab_local_matrix_dims(m, &mut ni, &mut nt), HdglabStatus::Ok);
        assert_eq!((ni, nt), (3, 4));

        let mut buf = vec![0.0f64; 2 * ni * ni];
        assert_eq!(
            hdglab_local_matrix_block(m, HdglabBlock::InteriorInterior, buf.as_mut_ptr(), buf.len()),
            HdglabStatus::Ok
        );
        // diag(i k h^2, i k h^2, -4 h tau - i k h^2) at k = tau = h = 1
        assert!((c64(&buf, 3, 0, 0).1 - 1.0).abs() < 1e-13);
        assert!((c64(&buf, 3, 2, 2).0 + 4.0).abs() < 1e-13);
        assert!((c64(&buf, 3, 2, 2).1 + 1.0).abs() < 1e-13);

        let mut schur = vec![0.0f64; 2 * nt * nt];
        assert_eq!(
            hdglab_local_matrix_schur(m, schur.as_mut_ptr(), schur.len()),
            HdglabStatus::Ok
        );

        let (mut lo, mut hi) = (0.0f64, 0.0f64);
        assert_eq!(hdglab_local_matrix_sigma(m, &mut lo, &mut hi), HdglabStatus::Ok);
        assert!(lo > 0.0 && hi >= lo);

        // short buffer is rejected without writing
        assert_eq!(
            hdglab_local_matrix_block(m, HdglabBlock::TraceTrace, buf.as_mut_ptr(), 3),
            HdglabStatus::InvalidArgument
        );
        hdglab_local_matrix_free(m);
    }
}

#[test]
fn null_and_error_paths() {
    unsafe {
        assert_eq!(
            hdglab_local_matrix_new(
                HdglabSystem::Helmholtz,
                HdglabShape::Cube,
                0,
                1.0,
                0.0,
                1.0,
                0.0,
                1.0,
                std::ptr::null_mut(),
            ),
            HdglabStatus::NullPointer
        );
        let mut m: *mut HdglabLocalMatrix = std::ptr::null_mut();
        // Helmholtz elements are 1D/2D only
        assert_eq!(
            hdglab_local_matrix_new(
                HdglabSystem::Helmholtz,
                HdglabShape::Cube,
                0,
                1.0,
                0.0,
                1.0,
                0.0,
                1.0,
                &mut m,
            ),
            HdglabStatus::UnsupportedConfig
        );
        // condensation on the failure line 4 tau = -i k h reports Singular
        assert_eq!(
            hdglab_local_matrix_new(
                HdglabSystem::Helmholtz,
                HdglabShape::Square,
                0,
                1.0,
                0.0,
                0.0,
                -0.25,
                1.0,
                &mut m,
            ),
            HdglabStatus::Ok
        );
        let mut schur = vec![0.0f64; 2 * 16];
        assert_eq!(
            hdglab_local_matrix_schur(m, schur.as_mut_ptr(), schur.len()),
            HdglabStatus::Singular
        );
        hdglab_local_matrix_free(m);
        hdglab_local_matrix_free(std::ptr::null_mut());
    }
}

#[test]
fn scalar_entry_points() {
    unsafe {
        let mut s = -1.0f64;
        assert_eq!(
            hdglab_sigma_min_normalized(HdglabShape::Tetrahedron, 0, 1.0, 0.0, 1.0, 0.0, &mut s),
            HdglabStatus::Ok
        );
        assert!(s > 1e-3);
        // on the tetrahedron failure line
        assert_eq!(
            hdglab_sigma_min_normalized(
                HdglabShape::Tetrahedron,
                0,
                1.0,
                0.0,
                0.0,
                -1.0 / (3.0 * 3f64.sqrt() + 6.0),
                &mut s
            ),
            HdglabStatus::Ok
        );
        assert!(s <= 1e-12);

        let (mut re, mut im, mut resid) = (0.0f64, 0.0f64, 0.0f64);
        assert_eq!(
            hdglab_dispersion_solve(0, 0, 0.5, 1.0, 0.0, 0.3, &mut re, &mut im, &mut resid),
            HdglabStatus::Ok
        );
        assert!((re - 0.5).abs() < 0.05 && resid <= 1e-11);
        assert_eq!(
            hdglab_dispersion_solve(7, 0, 0.5, 1.0, 0.0, 0.3, &mut re, &mut im, &mut resid),
            HdglabStatus::InvalidArgument
        );

        let (mut d1, mut d2, mut d3) = (0.0f64, 0.0f64, 0.0f64);
        assert_eq!(
            hdglab_error_metrics(1, 0, 0.1, 0.0, 0.0, 9, &mut d1, &mut d2, &mut d3),
            HdglabStatus::Ok
        );
        assert!(d2 <= 1e-10, "hybrid RT dissipation {d2:e}");

        assert!(!hdglab_version().is_null());
    }
}
