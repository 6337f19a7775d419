//! Command-line front end: drives the stability sweeps, dispersion
//! analysis, optimal-parameter search and conditioning studies, emitting
//! deterministic CSV/JSON.
//!
//! Exit codes: 0 on success, 1 on numerical failure (singular local matrix,
//! root search failure, counterexample), 2 on usage errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hdglab::basis::Shape;
use hdglab::cnum::{fmt_complex, fmt_f64, parse_complex};
use hdglab::dispersion::{
    optimal_tau_search, Branch, ContinuationPlan, DispersionMethod, SearchOptions,
};
use hdglab::global::{assemble_condensed_helmholtz, condition_number, UniformMesh2D};
use hdglab::hdg::{assemble_helmholtz, assemble_maxwell, HelmholtzLocal, MaxwellLocal};
use hdglab::hrt::{assemble_hrt, HrtLocal};
use hdglab::report::{
    json_metrics, json_optimal_tau, write_condition_csv, write_dispersion_csv, write_sweep_csv,
    DispersionRow,
};
use hdglab::stability::{
    sweep_kh, sweep_tau_plane, verify_theorem1_samples, LinearGrid, PlaneGrid, StabilityRecord,
};
use hdglab::{C64, Error};

#[derive(Parser)]
#[command(name = "hdglab", version, about = "HDG / hybrid RT stability and dispersion laboratory")]
struct Cli {
    /// Worker threads for sweeps (default: all cores). Output order does
    /// not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Segment,
    Square,
    Cube,
    Tet,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Shape {
        match s {
            ShapeArg::Segment => Shape::Segment,
            ShapeArg::Square => Shape::Square,
            ShapeArg::Cube => Shape::Cube,
            ShapeArg::Tet => Shape::Tetrahedron,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemArg {
    Helmholtz,
    Maxwell,
    Hrt,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Hdg,
    Hrt,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    ImPos,
    ImNeg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn complex_arg(s: &str) -> Result<C64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Print the element matrix blocks of one local problem.
    LocalMatrix(LocalMatrixArgs),
    /// Smallest-singular-value sweep over real normalized wavenumbers kh.
    SweepKh(SweepKhArgs),
    /// Smallest-singular-value sweep over a rectangle of complex tau.
    SweepTauPlane(SweepTauPlaneArgs),
    /// Discrete-wavenumber solve over an angle sweep, with error metrics.
    Dispersion(DispersionArgs),
    /// Search the tau minimizing the total wavenumber error.
    OptimalTau(OptimalTauArgs),
    /// Condition number of the condensed global matrix over a k sweep.
    Condition(ConditionArgs),
    /// Random verification of the unisolvency conditions.
    VerifyTheorem1(VerifyArgs),
}

#[derive(Args)]
struct LocalMatrixArgs {
    #[arg(long, value_enum)]
    system: SystemArg,
    #[arg(long, value_enum)]
    shape: ShapeArg,
    #[arg(long, default_value_t = 0)]
    p: u32,
    /// Wavenumber, complex literal a+bi [default: 1].
    #[arg(long, value_parser = complex_arg, default_value = "1", allow_hyphen_values = true)]
    k: C64,
    /// Stabilization parameter [default: 1; ignored for hrt].
    #[arg(long, value_parser = complex_arg, default_value = "1", allow_hyphen_values = true)]
    tau: C64,
    /// Element size [default: 1].
    #[arg(long, default_value_t = 1.0)]
    h: f64,
}

#[derive(Args)]
struct SweepKhArgs {
    /// Element shape; segments/squares run the Helmholtz system, cubes and
    /// tetrahedra the Maxwell system.
    #[arg(long, value_enum)]
    shape: ShapeArg,
    #[arg(long, default_value_t = 0)]
    p: u32,
    #[arg(long, value_parser = complex_arg, default_value = "1", allow_hyphen_values = true)]
    tau: C64,
    /// Sweep start [default: 0.01].
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    start: f64,
    /// Sweep stop [default: 20].
    #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
    stop: f64,
    /// Sample count [default: 2001].
    #[arg(long, default_value_t = 2001)]
    count: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct SweepTauPlaneArgs {
    #[arg(long, value_enum)]
    shape: ShapeArg,
    #[arg(long, default_value_t = 0)]
    p: u32,
    /// Fixed normalized wavenumber kh (complex literal) [default: 1].
    #[arg(long, value_parser = complex_arg, default_value = "1", allow_hyphen_values = true)]
    kh: C64,
    /// Rectangle bounds and sampling [defaults: [-2,2]^2 at 201x201].
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    re_start: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    re_stop: f64,
    #[arg(long, default_value_t = 201)]
    re_count: usize,
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    im_start: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    im_stop: f64,
    #[arg(long, default_value_t = 201)]
    im_count: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct DispersionArgs {
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(long, default_value_t = 0)]
    p: u32,
    /// Normalized wavenumber kh (real) [default: pi/4].
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
    kh: f64,
    /// Stabilization parameter (hdg only) [default: 1].
    #[arg(long, value_parser = complex_arg, default_value = "1", allow_hyphen_values = true)]
    tau: C64,
    /// Angles, uniform over [0, pi/2] [default: 181].
    #[arg(long, default_value_t = 181)]
    theta_count: usize,
    /// Path for the summary JSON; stdout when omitted.
    #[arg(long)]
    summary_out: Option<String>,
}

#[derive(Args)]
struct OptimalTauArgs {
    #[arg(long, default_value_t = 0)]
    p: u32,
    #[arg(long)]
    kh: f64,
    #[arg(long, value_enum)]
    branch: BranchArg,
    /// Coarse grid spacing [default: 0.05].
    #[arg(long, default_value_t = 0.05)]
    coarse_step: f64,
    /// Refinement bracket tolerance [default: 1e-3].
    #[arg(long, default_value_t = 1e-3)]
    refine_tol: f64,
    #[arg(long, default_value_t = 181)]
    theta_count: usize,
}

#[derive(Args)]
struct ConditionArgs {
    /// Elements per side of the unit-square mesh [default: 4].
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    p: u32,
    #[arg(long, value_parser = complex_arg, default_value = "1", allow_hyphen_values = true)]
    tau: C64,
    /// Wavenumber sweep [defaults: 401 samples of [4, 5]].
    #[arg(long, default_value_t = 4.0)]
    k_start: f64,
    #[arg(long, default_value_t = 5.0)]
    k_stop: f64,
    #[arg(long, default_value_t = 401)]
    k_count: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Number of random (k, tau, shape, p) samples [default: 200].
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// RNG seed [default: 1].
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

enum CmdError {
    Numeric(String),
    Usage(String),
    Io(String),
    /// Downstream consumer closed the pipe; not an error.
    ClosedPipe,
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        match e {
            Error::LocalSingularity { .. } | Error::RootNotFound(_) => {
                CmdError::Numeric(e.to_string())
            }
            _ => CmdError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CmdError {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            CmdError::ClosedPipe
        } else {
            CmdError::Io(e.to_string())
        }
    }
}

fn open_out(path: &Option<String>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn sweep_json(w: &mut impl Write, records: &[StabilityRecord]) -> io::Result<()> {
    writeln!(w, "[")?;
    for (i, r) in records.iter().enumerate() {
        let sep = if i + 1 == records.len() { "" } else { "," };
        writeln!(
            w,
            "{{\"kh_re\":{},\"kh_im\":{},\"tau_re\":{},\"tau_im\":{},\"p\":{},\"shape\":\"{}\",\"sigma_min\":{},\"sigma_min_normalized\":{}}}{sep}",
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
    writeln!(w, "]")
}

fn print_block(w: &mut impl Write, name: &str, m: &hdglab::CMatrix) -> io::Result<()> {
    writeln!(w, "block {name} ({}x{})", m.nrows(), m.ncols())?;
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| fmt_complex(m[(i, j)])).collect();
        writeln!(w, "{}", row.join(" "))?;
    }
    Ok(())
}

fn run_local_matrix(args: &LocalMatrixArgs, out: &Option<String>) -> Result<(), CmdError> {
    let shape: Shape = args.shape.into();
    let em = match args.system {
        SystemArg::Helmholtz => assemble_helmholtz(&HelmholtzLocal {
            k: args.k,
            tau: args.tau,
            h: args.h,
            p: args.p,
            shape,
        })?,
        SystemArg::Maxwell => assemble_maxwell(&MaxwellLocal {
            k: args.k,
            tau: args.tau,
            h: args.h,
            p: args.p,
            shape,
        })?,
        SystemArg::Hrt => {
            if shape != Shape::Square {
                return Err(CmdError::Usage("hrt runs on square elements".into()));
            }
            assemble_hrt(&HrtLocal {
                k: args.k,
                h: args.h,
                p: args.p,
            })?
        }
    };
    let mut w = open_out(out)?;
    writeln!(
        w,
        "system={} shape={} p={} k={} tau={} h={}",
        em.params.system.name(),
        em.params.shape.name(),
        em.params.p,
        fmt_complex(em.params.k),
        fmt_complex(em.params.tau),
        fmt_f64(em.params.h),
    )?;
    writeln!(w, "interior dofs: {}", em.interior_labels.join(","))?;
    writeln!(w, "trace dofs: {}", em.trace_labels.join(","))?;
    print_block(&mut w, "A_ii", &em.a_ii)?;
    print_block(&mut w, "A_it", &em.a_it)?;
    print_block(&mut w, "A_ti", &em.a_ti)?;
    print_block(&mut w, "A_tt", &em.a_tt)?;
    let (smin, smax) = em.interior_singular_range();
    writeln!(w, "sigma_min(A_ii)={}", fmt_f64(smin))?;
    writeln!(
        w,
        "sigma_min_normalized(A_ii)={}",
        fmt_f64(if smax > 0.0 { smin / smax } else { 0.0 })
    )?;
    Ok(())
}

fn run_sweep_kh(args: &SweepKhArgs, out: &Option<String>) -> Result<(), CmdError> {
    let grid = LinearGrid::new(args.start, args.stop, args.count)?;
    let records = sweep_kh(args.shape.into(), args.p, args.tau, &grid)?;
    let mut w = open_out(out)?;
    match args.format {
        FormatArg::Csv => write_sweep_csv(&mut w, &records)?,
        FormatArg::Json => sweep_json(&mut w, &records)?,
    }
    Ok(())
}

fn run_sweep_tau_plane(args: &SweepTauPlaneArgs, out: &Option<String>) -> Result<(), CmdError> {
    let grid = PlaneGrid {
        re: LinearGrid::new(args.re_start, args.re_stop, args.re_count)?,
        im: LinearGrid::new(args.im_start, args.im_stop, args.im_count)?,
    };
    let records = sweep_tau_plane(args.shape.into(), args.p, args.kh, &grid)?;
    let mut w = open_out(out)?;
    match args.format {
        FormatArg::Csv => write_sweep_csv(&mut w, &records)?,
        FormatArg::Json => sweep_json(&mut w, &records)?,
    }
    Ok(())
}

fn run_dispersion(args: &DispersionArgs, out: &Option<String>) -> Result<(), CmdError> {
    if args.theta_count < 2 {
        return Err(CmdError::Usage("need at least 2 angles".into()));
    }
    let method = match args.method {
        MethodArg::Hdg => DispersionMethod::Hdg { tau: args.tau },
        MethodArg::Hrt => DispersionMethod::Hrt,
    };
    let plan = ContinuationPlan::new(method, args.p, args.kh)?;
    let thetas = hdglab::dispersion::angle_set(args.theta_count);
    let mut rows = Vec::with_capacity(thetas.len());
    let mut any_failed = false;
    let mut eps = (0.0f64, 0.0f64, 0.0f64);
    for &theta in &thetas {
        let solved = plan.solve(theta).ok();
        if let Some(r) = &solved {
            eps.0 = eps.0.max((r.k_h.re - args.kh).abs());
            eps.1 = eps.1.max(r.k_h.im.abs());
            eps.2 = eps.2.max((r.k_h - C64::new(args.kh, 0.0)).norm());
        } else {
            any_failed = true;
        }
        rows.push(DispersionRow {
            kh: args.kh,
            tau: method.tau(),
            p: args.p,
            method: method.name(),
            theta,
            k_h: solved,
        });
    }
    let mut w = open_out(out)?;
    write_dispersion_csv(&mut w, &rows)?;
    drop(w);
    let metrics = hdglab::dispersion::ErrorMetrics {
        eps_disp: eps.0,
        eps_dissip: eps.1,
        eps_total: eps.2,
    };
    let mut sw = open_out(&args.summary_out)?;
    writeln!(sw, "{}", json_metrics(&metrics))?;
    if any_failed {
        return Err(CmdError::Numeric("one or more angle solves failed".into()));
    }
    Ok(())
}

fn run_optimal_tau(args: &OptimalTauArgs, out: &Option<String>) -> Result<(), CmdError> {
    let branch = match args.branch {
        BranchArg::ImPos => Branch::ImPos,
        BranchArg::ImNeg => Branch::ImNeg,
    };
    let opts = SearchOptions {
        coarse_step: args.coarse_step,
        refine_tol: args.refine_tol,
        n_angles: args.theta_count,
    };
    let found = optimal_tau_search(args.p, args.kh, branch, &opts)?;
    let mut w = open_out(out)?;
    writeln!(w, "{}", json_optimal_tau(found.tau, found.eps_total))?;
    Ok(())
}

fn run_condition(args: &ConditionArgs, out: &Option<String>) -> Result<(), CmdError> {
    let grid = LinearGrid::new(args.k_start, args.k_stop, args.k_count)?;
    let mesh = UniformMesh2D::unit_square(args.n);
    let mut rows = Vec::with_capacity(args.k_count);
    for k in grid.values() {
        let cond = match assemble_condensed_helmholtz(&mesh, C64::new(k, 0.0), args.tau, args.p) {
            Ok(b) => condition_number(&b),
            // a singular local problem means the condensed solve is
            // unavailable: report an infinite condition number
            Err(Error::LocalSingularity { .. }) => f64::INFINITY,
            Err(e) => return Err(e.into()),
        };
        rows.push((k, cond));
    }
    let mut w = open_out(out)?;
    write_condition_csv(&mut w, &rows)?;
    Ok(())
}

fn run_verify(args: &VerifyArgs, out: &Option<String>) -> Result<(), CmdError> {
    let report = verify_theorem1_samples(args.samples, args.seed)?;
    let mut w = open_out(out)?;
    writeln!(w, "samples={}", report.samples)?;
    writeln!(
        w,
        "min_normalized_sigma_local={}",
        fmt_f64(report.min_normalized_sigma_local)
    )?;
    writeln!(
        w,
        "min_global_inverse_condition={}",
        fmt_f64(report.min_global_inverse_condition)
    )?;
    writeln!(w, "failures={}", report.failures.len())?;
    for (shape, p, k, tau, what) in &report.failures {
        writeln!(
            w,
            "counterexample shape={} p={p} k={} tau={}: {what}",
            shape.name(),
            fmt_complex(*k),
            fmt_complex(*tau)
        )?;
    }
    if !report.ok() {
        return Err(CmdError::Numeric(format!(
            "{} unisolvency counterexamples",
            report.failures.len()
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = match &cli.command {
        Command::LocalMatrix(a) => run_local_matrix(a, &cli.out),
        Command::SweepKh(a) => run_sweep_kh(a, &cli.out),
        Command::SweepTauPlane(a) => run_sweep_tau_plane(a, &cli.out),
        Command::Dispersion(a) => run_dispersion(a, &cli.out),
        Command::OptimalTau(a) => run_optimal_tau(a, &cli.out),
        Command::Condition(a) => run_condition(a, &cli.out),
        Command::VerifyTheorem1(a) => run_verify(a, &cli.out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Numeric(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(1)
        }
        Err(CmdError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Io(msg)) => {
            eprintln!("io error: {msg}");
            ExitCode::from(1)
        }
        Err(CmdError::ClosedPipe) => ExitCode::SUCCESS,
    }
}
