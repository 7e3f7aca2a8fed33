//! Convergence studies over halving ladders of step sizes.
//!
//! Each ladder level is solved independently and compared with the exact
//! solution; the empirical order of a row is `log2(e_coarse / e_fine)` against
//! the next coarser level. The first row gets its order from one extra run at
//! twice the base step.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caputo::Scheme;
use crate::error::{check_alpha, domain, Error, Result};
use crate::relaxation::{self, choose_m, PowerSum, PowerTerm, RelaxationProblem, TimeSeries};
use crate::specfun::{gamma_pos, ml_relaxation_exact};
use crate::subdiffusion::{self, InitialProfile, SubdiffusionProblem};

/// Errors at or below this level are roundoff; no order is reported for them.
pub const ORDER_NOISE_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coupling {
    /// Only the time step varies.
    None,
    /// Space step tied to the time step by `h = pi tau / 3`.
    SpaceFromTime,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ladder {
    pub base_step: f64,
    pub levels: usize,
    pub coupling: Coupling,
}

impl Ladder {
    pub fn new(base_step: f64, levels: usize, coupling: Coupling) -> Result<Self> {
        if !(base_step > 0.0 && base_step.is_finite()) {
            return domain(format!("base step must be positive, got {base_step}"));
        }
        if levels < 2 {
            return domain(format!("a ladder needs at least 2 levels, got {levels}"));
        }
        Ok(Ladder {
            base_step,
            levels,
            coupling,
        })
    }

    /// The standard five-level ladder: 0.05 down to 0.003125.
    pub fn reference(coupling: Coupling) -> Self {
        Ladder {
            base_step: 0.05,
            levels: 5,
            coupling,
        }
    }

    pub fn steps(&self) -> Vec<f64> {
        let mut s = Vec::with_capacity(self.levels);
        let mut h = self.base_step;
        for _ in 0..self.levels {
            s.push(h);
            h /= 2.0;
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub step: f64,
    pub max_error: f64,
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn last(&self) -> Option<&ConvergenceRow> {
        self.rows.last()
    }
}

/// `log2(err_coarse / err_fine)`.
pub fn estimate_order(err_coarse: f64, err_fine: f64) -> Result<f64> {
    if !(err_coarse > 0.0 && err_fine > 0.0) {
        return domain(format!("orders need positive errors, got {err_coarse} and {err_fine}"));
    }
    Ok((err_coarse / err_fine).log2())
}

/// Relaxation problems with known exact solutions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RelaxationFamily {
    /// `y^(0.5) + y = x^2 + 8/(3 sqrt(pi)) x^1.5`, `y(0) = 0`; exact `x^2`.
    R11,
    /// `y^(0.5) + y = x^1.25 + c x^0.75`, `y(0) = 0`; exact `x^1.25`.
    R12,
    /// `y^(alpha) + B y = 0`, `y(0) = 1`; exact `E_alpha(-B x^alpha)`.
    MlExact { alpha: f64, b: f64 },
    /// `y^(alpha) + B y = B`, `y(0) = 1`; exact `1`.
    Constant { alpha: f64, b: f64 },
}

impl RelaxationFamily {
    pub fn alpha(&self) -> f64 {
        match *self {
            RelaxationFamily::R11 | RelaxationFamily::R12 => 0.5,
            RelaxationFamily::MlExact { alpha, .. } | RelaxationFamily::Constant { alpha, .. } => alpha,
        }
    }

    pub fn b(&self) -> f64 {
        match *self {
            RelaxationFamily::R11 | RelaxationFamily::R12 => 1.0,
            RelaxationFamily::MlExact { b, .. } | RelaxationFamily::Constant { b, .. } => b,
        }
    }

    pub fn forcing(&self) -> PowerSum {
        match *self {
            RelaxationFamily::R11 => PowerSum::new(vec![
                PowerTerm {
                    coeff: 1.0,
                    exponent: 2.0,
                },
                PowerTerm {
                    coeff: 8.0 / (3.0 * PI.sqrt()),
                    exponent: 1.5,
                },
            ])
            .expect("valid terms"),
            RelaxationFamily::R12 => PowerSum::new(vec![
                PowerTerm {
                    coeff: 1.0,
                    exponent: 1.25,
                },
                PowerTerm {
                    coeff: 5.0 * 2f64.sqrt() / (24.0 * PI) * gamma_pos(0.25).powi(2),
                    exponent: 0.75,
                },
            ])
            .expect("valid terms"),
            RelaxationFamily::MlExact { .. } => PowerSum::zero(),
            RelaxationFamily::Constant { b, .. } => PowerSum::constant(b),
        }
    }

    pub fn y0(&self) -> f64 {
        match self {
            RelaxationFamily::R11 | RelaxationFamily::R12 => 0.0,
            _ => 1.0,
        }
    }

    pub fn problem(&self, t_end: f64, h: f64) -> Result<RelaxationProblem> {
        RelaxationProblem::new(self.alpha(), self.b(), self.forcing(), self.y0(), t_end, h)
    }

    pub fn exact(&self, x: f64) -> Result<f64> {
        match *self {
            RelaxationFamily::R11 => Ok(x * x),
            RelaxationFamily::R12 => Ok(x.powf(1.25)),
            RelaxationFamily::MlExact { alpha, b } => ml_relaxation_exact(alpha, b, x),
            RelaxationFamily::Constant { .. } => Ok(1.0),
        }
    }
}

/// Subdiffusion problems on `[0, pi] x [0, 1]` with known exact solutions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SubdiffusionFamily {
    /// Initial profile `sin x`, no source; exact `sin x E_alpha(-t^alpha)`.
    SineMode { alpha: f64 },
    /// Zero data; exact `0`.
    Zero { alpha: f64 },
}

impl SubdiffusionFamily {
    pub const S2: SubdiffusionFamily = SubdiffusionFamily::SineMode { alpha: 0.5 };
    pub const S03: SubdiffusionFamily = SubdiffusionFamily::SineMode { alpha: 0.3 };

    pub fn alpha(&self) -> f64 {
        match *self {
            SubdiffusionFamily::SineMode { alpha } | SubdiffusionFamily::Zero { alpha } => alpha,
        }
    }

    pub fn exact(&self, x: f64, t: f64) -> Result<f64> {
        match *self {
            SubdiffusionFamily::SineMode { alpha } => subdiffusion::exact_single_mode(alpha, 1, x, t),
            SubdiffusionFamily::Zero { .. } => Ok(0.0),
        }
    }

    fn problem(&self, n_space: usize, m_time: usize) -> Result<SubdiffusionProblem> {
        let initial = match self {
            SubdiffusionFamily::SineMode { .. } => InitialProfile::SineMode { k: 1 },
            SubdiffusionFamily::Zero { .. } => InitialProfile::Sampled {
                values: vec![0.0; n_space + 1],
            },
        };
        SubdiffusionProblem::new(self.alpha(), n_space, m_time, 1.0, initial, None)
    }
}

/// Whether to apply the fractional Taylor correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Correction {
    Off,
    /// Use the least `m` with `m alpha >= 2`.
    Auto,
    Terms(usize),
}

impl Correction {
    fn terms(self, alpha: f64) -> Result<Option<usize>> {
        match self {
            Correction::Off => Ok(None),
            Correction::Auto => choose_m(alpha).map(Some),
            Correction::Terms(m) => Ok(Some(m)),
        }
    }
}

fn assemble(steps: &[f64], errors: &[f64], coarser: Option<f64>) -> ConvergenceReport {
    let order = |coarse: f64, fine: f64| {
        if coarse > ORDER_NOISE_FLOOR && fine > ORDER_NOISE_FLOOR {
            estimate_order(coarse, fine).ok()
        } else {
            None
        }
    };
    let rows = steps
        .iter()
        .zip(errors)
        .enumerate()
        .map(|(i, (&step, &max_error))| {
            let prev = if i == 0 { coarser } else { Some(errors[i - 1]) };
            ConvergenceRow {
                step,
                max_error,
                order: prev.and_then(|p| order(p, max_error)),
            }
        })
        .collect();
    ConvergenceReport { rows }
}

/// Error at each ladder step plus, when it can be run, the extra step at twice the base.
fn sweep<F>(ladder: &Ladder, run: F) -> Result<ConvergenceReport>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let steps = ladder.steps();
    let mut all = vec![2.0 * ladder.base_step];
    all.extend(&steps);
    let results: Vec<Result<f64>> = all.par_iter().map(|&s| run(s)).collect();
    let mut iter = results.into_iter();
    // The extra coarse run is optional: its step may not fit the interval.
    let coarser = match iter.next().expect("non-empty") {
        Ok(e) => Some(e),
        Err(Error::Domain(_)) => None,
        Err(e) => return Err(e),
    };
    let errors = iter.collect::<Result<Vec<f64>>>()?;
    Ok(assemble(&steps, &errors, coarser))
}

fn relaxation_series(family: &RelaxationFamily, scheme: Scheme, h: f64, m: Option<usize>) -> Result<TimeSeries> {
    match (m, family) {
        (None, _) => relaxation::solve(&family.problem(1.0, h)?, scheme),
        (Some(m), RelaxationFamily::MlExact { alpha, b }) => relaxation::solve_corrected(*alpha, *b, m, 1.0, h, scheme),
        (Some(_), _) => domain("the Taylor correction applies only to the homogeneous relaxation problem"),
    }
}

/// Max error over `[0, 1]` (excluding the initial node) for each ladder step.
pub fn run_relaxation_study(
    family: RelaxationFamily,
    scheme: Scheme,
    ladder: &Ladder,
    correction: Correction,
) -> Result<ConvergenceReport> {
    check_alpha(family.alpha())?;
    let m = correction.terms(family.alpha())?;
    if m.is_some() && !matches!(family, RelaxationFamily::MlExact { .. }) {
        return domain("the Taylor correction applies only to the homogeneous relaxation problem");
    }
    // Validate the requested ladder eagerly so a bad base step is not mistaken
    // for an unavailable extra coarse run.
    relaxation::step_count(1.0, ladder.base_step)?;
    sweep(ladder, |h| {
        let series = relaxation_series(&family, scheme, h, m)?;
        series.max_error(|x| family.exact(x))
    })
}

/// Grid sizes for time step `tau` on `[0, pi] x [0, 1]`.
fn coupled_grid(tau: f64, coupling: Coupling) -> Result<(usize, usize)> {
    if coupling != Coupling::SpaceFromTime {
        return domain("subdiffusion studies require the h = pi tau / 3 coupling");
    }
    let m_time = relaxation::step_count(1.0, tau)?;
    let n = 3.0 / tau;
    let n_space = n.round();
    if (n - n_space).abs() > 1e-9 * n {
        return domain(format!("3 / tau must be an integer, got {n}"));
    }
    Ok((n_space as usize, m_time))
}

/// Max error over interior nodes at `t = 1` for each ladder step `tau`.
pub fn run_subdiffusion_study(
    family: SubdiffusionFamily,
    scheme: Scheme,
    ladder: &Ladder,
    correction: Correction,
) -> Result<ConvergenceReport> {
    let alpha = family.alpha();
    check_alpha(alpha)?;
    let m = correction.terms(alpha)?;
    if m.is_some() && !matches!(family, SubdiffusionFamily::SineMode { .. }) {
        return domain("the Taylor correction applies only to the sin x initial profile");
    }
    coupled_grid(ladder.base_step, ladder.coupling)?;
    sweep(ladder, |tau| {
        let (n_space, m_time) = coupled_grid(tau, ladder.coupling)?;
        let sol = match m {
            None => subdiffusion::solve(&family.problem(n_space, m_time)?, scheme)?,
            Some(m) => subdiffusion::solve_corrected(alpha, m, 1.0, n_space, m_time, scheme)?,
        };
        sol.final_time_error(|x, t| family.exact(x, t))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
    JsonLines,
}

/// `x` with `sig` significant digits in C `%g` style.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Render a report. CSV and Markdown print 6 significant digits;
/// JSON lines keep full binary64 precision.
pub fn render_report(report: &ConvergenceReport, format: ReportFormat) -> String {
    let mut out = String::new();
    let opt = |o: Option<f64>| o.map(|v| format_sig(v, 6)).unwrap_or_default();
    match format {
        ReportFormat::Csv => {
            out.push_str("step,max_error,order\n");
            for r in &report.rows {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    format_sig(r.step, 6),
                    format_sig(r.max_error, 6),
                    opt(r.order)
                );
            }
        }
        ReportFormat::Markdown => {
            out.push_str("| step | max_error | order |\n|---:|---:|---:|\n");
            for r in &report.rows {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} |",
                    format_sig(r.step, 6),
                    format_sig(r.max_error, 6),
                    opt(r.order)
                );
            }
        }
        ReportFormat::JsonLines => {
            for r in &report.rows {
                out.push_str(&serde_json::to_string(r).expect("rows serialize"));
                out.push('\n');
            }
        }
    }
    out
}

/// Parse the JSON-lines rendering back into a report.
pub fn parse_json_lines(text: &str) -> Result<ConvergenceReport> {
    let rows = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| Error::Domain(format!("bad report line: {e}"))))
        .collect::<Result<Vec<ConvergenceRow>>>()?;
    Ok(ConvergenceReport { rows })
}
