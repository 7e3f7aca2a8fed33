//! C ABI over `fracrelax`.
//!
//! Every fallible function returns an [`FrStatus`] and writes its result
//! through an out-pointer. Solutions and reports are opaque handles that the
//! caller releases with the matching `*_free` function. After a non-OK status,
//! `fr_last_error_message` returns a description on the same thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fracrelax::harness::{
    self, ConvergenceReport, Correction, Coupling, Ladder, RelaxationFamily, ReportFormat, SubdiffusionFamily,
};
use fracrelax::relaxation::{self, PowerSum, PowerTerm, RelaxationProblem, TimeSeries};
use fracrelax::specfun::{self, SeriesPolicy};
use fracrelax::subdiffusion::{self, InitialProfile, SpaceTimeSolution, SubdiffusionProblem};
use fracrelax::{Error, Scheme};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Convergence = 3,
    Quadrature = 4,
    ZeroPivot = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrScheme {
    L1 = 0,
    ModifiedL1 = 1,
}

impl From<FrScheme> for Scheme {
    fn from(s: FrScheme) -> Self {
        match s {
            FrScheme::L1 => Scheme::L1,
            FrScheme::ModifiedL1 => Scheme::ModifiedL1,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrRelaxFamily {
    /// Exact solution `x^2`, alpha 0.5, B 1.
    R11 = 0,
    /// Exact solution `x^1.25`, alpha 0.5, B 1.
    R12 = 1,
    /// `y(0) = 1`, no forcing; exact `E_alpha(-B x^alpha)`.
    MlExact = 2,
    /// Constant solution 1.
    Constant = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrSubdiffFamily {
    /// Initial profile `sin x`, no source.
    SineMode = 0,
    /// Zero data.
    Zero = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrFormat {
    Csv = 0,
    Markdown = 1,
    JsonLines = 2,
}

/// Correction request for studies: negative means off, zero picks the least
/// `m` with `m alpha >= 2`, positive is the number of terms.
fn correction(m: i32) -> Correction {
    match m {
        m if m < 0 => Correction::Off,
        0 => Correction::Auto,
        m => Correction::Terms(m as usize),
    }
}

/// One row of a convergence report.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FrReportRow {
    pub step: f64,
    pub max_error: f64,
    /// NaN when no order is reported for this row.
    pub order: f64,
    pub has_order: bool,
}

/// Opaque relaxation solution.
pub struct FrTimeSeries(TimeSeries);
/// Opaque subdiffusion solution.
pub struct FrSpaceTime(SpaceTimeSolution);
/// Opaque convergence report.
pub struct FrReport(ConvergenceReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> FrStatus {
    match e {
        Error::Domain(_) => FrStatus::Domain,
        Error::Convergence { .. } => FrStatus::Convergence,
        Error::Quadrature { .. } => FrStatus::Quadrature,
        Error::ZeroPivot(_) => FrStatus::ZeroPivot,
    }
}

enum Fail {
    Lib(Error),
    Null(&'static str),
    Utf8(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Run `body`, translating errors and panics into a status code.
fn guard<F: FnOnce() -> Result<(), Fail>>(body: F) -> FrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FrStatus::Ok,
        Ok(Err(Fail::Lib(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_last_error(&format!("null pointer: {what}"));
            FrStatus::NullPointer
        }
        Ok(Err(Fail::Utf8(what))) => {
            set_last_error(&format!("{what} is not valid UTF-8"));
            FrStatus::InvalidUtf8
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {msg}"));
            FrStatus::Panic
        }
    }
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn in_ref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn slice<'a>(p: *const f64, len: usize, what: &'static str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_mut<'a>(p: *mut f64, len: usize, what: &'static str) -> Result<&'a mut [f64], Fail> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

fn copy_into(src: &[f64], dst: &mut [f64]) -> Result<(), Fail> {
    if dst.len() != src.len() {
        return Err(Fail::Lib(Error::Domain(format!(
            "buffer holds {} values, need {}",
            dst.len(),
            src.len()
        ))));
    }
    dst.copy_from_slice(src);
    Ok(())
}

/// Message for the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn fr_gamma(x: f64, out: *mut f64) -> FrStatus {
    guard(|| {
        *out_ref(out, "out")? = specfun::gamma(x)?;
        Ok(())
    })
}

/// Riemann zeta on `(-1, 0]`.
#[no_mangle]
pub unsafe extern "C" fn fr_zeta(s: f64, out: *mut f64) -> FrStatus {
    guard(|| {
        *out_ref(out, "out")? = specfun::zeta_unit_strip(s)?;
        Ok(())
    })
}

/// `E_{alpha,beta}(x)` with the default series policy.
#[no_mangle]
pub unsafe extern "C" fn fr_mittag_leffler(alpha: f64, beta: f64, x: f64, out: *mut f64) -> FrStatus {
    guard(|| {
        *out_ref(out, "out")? = specfun::mittag_leffler(alpha, beta, x, &SeriesPolicy::default())?;
        Ok(())
    })
}

/// Solve `y^(alpha) + B y = sum c_i x^(p_i)`, `y(0) = y0` on `[0, t_end]`.
#[no_mangle]
pub unsafe extern "C" fn fr_relax_solve(
    alpha: f64,
    b: f64,
    coeffs: *const f64,
    exponents: *const f64,
    n_terms: usize,
    y0: f64,
    t_end: f64,
    h: f64,
    scheme: FrScheme,
    out: *mut *mut FrTimeSeries,
) -> FrStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let c = slice(coeffs, n_terms, "coeffs")?;
        let p = slice(exponents, n_terms, "exponents")?;
        let terms = c
            .iter()
            .zip(p)
            .map(|(&coeff, &exponent)| PowerTerm { coeff, exponent })
            .collect();
        let problem = RelaxationProblem::new(alpha, b, PowerSum::new(terms)?, y0, t_end, h)?;
        let series = relaxation::solve(&problem, scheme.into())?;
        *out = Box::into_raw(Box::new(FrTimeSeries(series)));
        Ok(())
    })
}

/// Homogeneous problem with `y(0) = 1`, solved with an `m`-term Taylor correction.
#[no_mangle]
pub unsafe extern "C" fn fr_relax_solve_corrected(
    alpha: f64,
    b: f64,
    m: usize,
    t_end: f64,
    h: f64,
    scheme: FrScheme,
    out: *mut *mut FrTimeSeries,
) -> FrStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let series = relaxation::solve_corrected(alpha, b, m, t_end, h, scheme.into())?;
        *out = Box::into_raw(Box::new(FrTimeSeries(series)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn fr_time_series_len(series: *const FrTimeSeries) -> usize {
    series.as_ref().map_or(0, |s| s.0.values.len())
}

#[no_mangle]
pub unsafe extern "C" fn fr_time_series_step(series: *const FrTimeSeries) -> f64 {
    series.as_ref().map_or(f64::NAN, |s| s.0.h)
}

/// Copy all values into `buf`, which must hold exactly `fr_time_series_len` entries.
#[no_mangle]
pub unsafe extern "C" fn fr_time_series_copy(series: *const FrTimeSeries, buf: *mut f64, len: usize) -> FrStatus {
    guard(|| {
        let s = in_ref(series, "series")?;
        copy_into(&s.0.values, slice_mut(buf, len, "buf")?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn fr_time_series_free(series: *mut FrTimeSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

fn subdiff_problem(
    alpha: f64,
    initial: InitialProfile,
    n_space: usize,
    m_time: usize,
    t_end: f64,
) -> fracrelax::Result<SubdiffusionProblem> {
    SubdiffusionProblem::new(alpha, n_space, m_time, t_end, initial, None)
}

/// Source-free subdiffusion on `[0, pi] x [0, t_end]` from `sin(k x)`.
#[no_mangle]
pub unsafe extern "C" fn fr_subdiff_solve_sine(
    alpha: f64,
    k: u32,
    n_space: usize,
    m_time: usize,
    t_end: f64,
    scheme: FrScheme,
    out: *mut *mut FrSpaceTime,
) -> FrStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let p = subdiff_problem(alpha, InitialProfile::SineMode { k }, n_space, m_time, t_end)?;
        *out = Box::into_raw(Box::new(FrSpaceTime(subdiffusion::solve(&p, scheme.into())?)));
        Ok(())
    })
}

/// Source-free subdiffusion from sampled initial values at the `len` grid
/// nodes (so `N = len - 1`); both end values must be zero.
#[no_mangle]
pub unsafe extern "C" fn fr_subdiff_solve_sampled(
    alpha: f64,
    initial: *const f64,
    len: usize,
    m_time: usize,
    t_end: f64,
    scheme: FrScheme,
    out: *mut *mut FrSpaceTime,
) -> FrStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let values = slice(initial, len, "initial")?.to_vec();
        let n_space = len.saturating_sub(1);
        let p = subdiff_problem(alpha, InitialProfile::Sampled { values }, n_space, m_time, t_end)?;
        *out = Box::into_raw(Box::new(FrSpaceTime(subdiffusion::solve(&p, scheme.into())?)));
        Ok(())
    })
}

/// `sin x` initial profile solved with an `m`-term Taylor correction.
#[no_mangle]
pub unsafe extern "C" fn fr_subdiff_solve_corrected(
    alpha: f64,
    m: usize,
    t_end: f64,
    n_space: usize,
    m_time: usize,
    scheme: FrScheme,
    out: *mut *mut FrSpaceTime,
) -> FrStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let sol = subdiffusion::solve_corrected(alpha, m, t_end, n_space, m_time, scheme.into())?;
        *out = Box::into_raw(Box::new(FrSpaceTime(sol)));
        Ok(())
    })
}

/// Number of time levels, `M + 1`.
#[no_mangle]
pub unsafe extern "C" fn fr_space_time_rows(sol: *const FrSpaceTime) -> usize {
    sol.as_ref().map_or(0, |s| s.0.rows())
}

/// Number of spatial nodes, `N + 1`.
#[no_mangle]
pub unsafe extern "C" fn fr_space_time_cols(sol: *const FrSpaceTime) -> usize {
    sol.as_ref().map_or(0, |s| s.0.cols())
}

/// Copy time level `row` into `buf`, which must hold exactly `fr_space_time_cols` entries.
#[no_mangle]
pub unsafe extern "C" fn fr_space_time_copy_row(
    sol: *const FrSpaceTime,
    row: usize,
    buf: *mut f64,
    len: usize,
) -> FrStatus {
    guard(|| {
        let s = in_ref(sol, "solution")?;
        if row >= s.0.rows() {
            return Err(Fail::Lib(Error::Domain(format!(
                "row {row} out of range (rows = {})",
                s.0.rows()
            ))));
        }
        copy_into(s.0.row(row), slice_mut(buf, len, "buf")?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn fr_space_time_free(sol: *mut FrSpaceTime) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// Convergence study of a relaxation problem on `[0, 1]`. `alpha` and `b`
/// are ignored for the fixed R11/R12 families. `m < 0` disables the Taylor
/// correction, `m = 0` picks the least `m` with `m alpha >= 2`.
#[no_mangle]
pub unsafe extern "C" fn fr_relax_study(
    family: FrRelaxFamily,
    alpha: f64,
    b: f64,
    scheme: FrScheme,
    base_step: f64,
    levels: usize,
    m: i32,
    out: *mut *mut FrReport,
) -> FrStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let family = match family {
            FrRelaxFamily::R11 => RelaxationFamily::R11,
            FrRelaxFamily::R12 => RelaxationFamily::R12,
            FrRelaxFamily::MlExact => RelaxationFamily::MlExact { alpha, b },
            FrRelaxFamily::Constant => RelaxationFamily::Constant { alpha, b },
        };
        let ladder = Ladder::new(base_step, levels, Coupling::None)?;
        let report = harness::run_relaxation_study(family, scheme.into(), &ladder, correction(m))?;
        *out = Box::into_raw(Box::new(FrReport(report)));
        Ok(())
    })
}

/// Convergence study of a subdiffusion problem at `t = 1` with `h = pi tau / 3`.
/// `m` as for `fr_relax_study`.
#[no_mangle]
pub unsafe extern "C" fn fr_subdiff_study(
    family: FrSubdiffFamily,
    alpha: f64,
    scheme: FrScheme,
    base_step: f64,
    levels: usize,
    m: i32,
    out: *mut *mut FrReport,
) -> FrStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let family = match family {
            FrSubdiffFamily::SineMode => SubdiffusionFamily::SineMode { alpha },
            FrSubdiffFamily::Zero => SubdiffusionFamily::Zero { alpha },
        };
        let ladder = Ladder::new(base_step, levels, Coupling::SpaceFromTime)?;
        let report = harness::run_subdiffusion_study(family, scheme.into(), &ladder, correction(m))?;
        *out = Box::into_raw(Box::new(FrReport(report)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn fr_report_len(report: *const FrReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.rows.len())
}

#[no_mangle]
pub unsafe extern "C" fn fr_report_row(report: *const FrReport, index: usize, out: *mut FrReportRow) -> FrStatus {
    guard(|| {
        let r = in_ref(report, "report")?;
        let out = out_ref(out, "out")?;
        let row = r.0.rows.get(index).ok_or_else(|| {
            Fail::Lib(Error::Domain(format!(
                "row {index} out of range (rows = {})",
                r.0.rows.len()
            )))
        })?;
        *out = FrReportRow {
            step: row.step,
            max_error: row.max_error,
            order: row.order.unwrap_or(f64::NAN),
            has_order: row.order.is_some(),
        };
        Ok(())
    })
}

/// Render a report as text. Release the string with `fr_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fr_report_render(
    report: *const FrReport,
    format: FrFormat,
    out: *mut *mut c_char,
) -> FrStatus {
    guard(|| {
        let r = in_ref(report, "report")?;
        let out = out_ref(out, "out")?;
        let format = match format {
            FrFormat::Csv => ReportFormat::Csv,
            FrFormat::Markdown => ReportFormat::Markdown,
            FrFormat::JsonLines => ReportFormat::JsonLines,
        };
        let text = harness::render_report(&r.0, format);
        *out = CString::new(text).expect("rendered reports contain no NUL").into_raw();
        Ok(())
    })
}

/// Parse a report from JSON lines text.
#[no_mangle]
pub unsafe extern "C" fn fr_report_parse_json_lines(text: *const c_char, out: *mut *mut FrReport) -> FrStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if text.is_null() {
            return Err(Fail::Null("text"));
        }
        *out = ptr::null_mut();
        let text = CStr::from_ptr(text).to_str().map_err(|_| Fail::Utf8("text"))?;
        *out = Box::into_raw(Box::new(FrReport(harness::parse_json_lines(text)?)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn fr_report_free(report: *mut FrReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

#[no_mangle]
pub unsafe extern "C" fn fr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
