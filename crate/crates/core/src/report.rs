//! Deterministic CSV and JSON emission for the sweep campaigns.
//!
//! Floats are printed with 17 significant digits so output files are
//! byte-stable and round-trip safe. Rows follow grid order regardless of
//! how the sweep was parallelized.

use std::io::{self, Write};

use crate::cnum::fmt_f64;
use crate::dispersion::{DispersionResult, ErrorMetrics};
use crate::stability::StabilityRecord;
use crate::C64;

pub const SWEEP_HEADER: &str =
    "kh_re,kh_im,tau_re,tau_im,p,shape,sigma_min,sigma_min_normalized";
pub const DISPERSION_HEADER: &str =
    "theta,kh,tau_re,tau_im,p,method,kh_num_re,kh_num_im,residual";
pub const CONDITION_HEADER: &str = "k,cond";

pub fn write_sweep_csv(w: &mut impl Write, records: &[StabilityRecord]) -> io::Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            fmt_f64(r.kh.re),
            fmt_f64(r.kh.im),
            fmt_f64(r.tau.re),
            fmt_f64(r.tau.im),
            r.p,
            r.shape.name(),
            fmt_f64(r.sigma_min),
            fmt_f64(r.sigma_min_normalized),
        )?;
    }
    Ok(())
}

/// One dispersion row; failed solves carry `residual = -1` and are excluded
/// from metrics by the caller.
pub struct DispersionRow {
    pub kh: f64,
    pub tau: C64,
    pub p: u32,
    pub method: &'static str,
    pub theta: f64,
    pub k_h: Option<DispersionResult>,
}

pub fn write_dispersion_csv(w: &mut impl Write, rows: &[DispersionRow]) -> io::Result<()> {
    writeln!(w, "{DISPERSION_HEADER}")?;
    for r in rows {
        let (re, im, resid) = match &r.k_h {
            Some(res) => (res.k_h.re, res.k_h.im, res.residual),
            None => (f64::NAN, f64::NAN, -1.0),
        };
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            fmt_f64(r.theta),
            fmt_f64(r.kh),
            fmt_f64(r.tau.re),
            fmt_f64(r.tau.im),
            r.p,
            r.method,
            fmt_f64(re),
            fmt_f64(im),
            fmt_f64(resid),
        )?;
    }
    Ok(())
}

pub fn write_condition_csv(w: &mut impl Write, rows: &[(f64, f64)]) -> io::Result<()> {
    writeln!(w, "{CONDITION_HEADER}")?;
    for (k, cond) in rows {
        writeln!(w, "{},{}", fmt_f64(*k), fmt_f64(*cond))?;
    }
    Ok(())
}

pub fn json_metrics(m: &ErrorMetrics) -> String {
    format!(
        "{{\"eps_disp\":{},\"eps_dissip\":{},\"eps_total\":{}}}",
        fmt_f64(m.eps_disp),
        fmt_f64(m.eps_dissip),
        fmt_f64(m.eps_total)
    )
}

pub fn json_optimal_tau(tau: C64, eps_total: f64) -> String {
    format!(
        "{{\"tau_re\":{},\"tau_im\":{},\"eps_total\":{}}}",
        fmt_f64(tau.re),
        fmt_f64(tau.im),
        fmt_f64(eps_total)
    )
}
