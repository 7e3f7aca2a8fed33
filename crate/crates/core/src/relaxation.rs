//! The fractional relaxation equation `y^(alpha)(x) + B y(x) = F(x)`, `y(0) = y0`.
//!
//! Numerical solutions march the L1 or modified-L1 discretization forward on a
//! uniform mesh. The homogeneous problem with `y0 = 1` has the exact solution
//! `E_alpha(-B x^alpha)`, whose derivatives blow up at the origin; the
//! corrected solver subtracts the fractional Taylor polynomial of that
//! solution, marches the smooth remainder, and adds the polynomial back.

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use crate::caputo::{Scheme, WeightTable};
use crate::error::{check_alpha, domain, Error, Result};
use crate::quadrature;
use crate::specfun::{gamma_pos, mittag_leffler, SeriesPolicy};

/// One term `coeff * x^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerTerm {
    pub coeff: f64,
    pub exponent: f64,
}

/// Finite sum of power terms, evaluated for `x >= 0` with `0^0 = 1`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PowerSum {
    terms: Vec<PowerTerm>,
}

impl PowerSum {
    pub fn new(terms: Vec<PowerTerm>) -> Result<Self> {
        for t in &terms {
            if !(t.exponent >= 0.0 && t.exponent.is_finite()) {
                return domain(format!(
                    "power sum exponents must be finite and non-negative, got {}",
                    t.exponent
                ));
            }
            if !t.coeff.is_finite() {
                return domain(format!("power sum coefficient must be finite, got {}", t.coeff));
            }
        }
        Ok(PowerSum { terms })
    }

    pub fn zero() -> Self {
        PowerSum::default()
    }

    pub fn constant(c: f64) -> Self {
        PowerSum::single(c, 0.0)
    }

    /// `coeff * x^exponent`; panics on a negative or non-finite exponent.
    pub fn single(coeff: f64, exponent: f64) -> Self {
        PowerSum::new(vec![PowerTerm { coeff, exponent }]).expect("invalid power term")
    }

    pub fn terms(&self) -> &[PowerTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.coeff == 0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.coeff * x.powf(t.exponent)).sum()
    }
}

/// Right-hand side of the relaxation equation.
///
/// Implemented for [`PowerSum`] and for any `Fn(f64) -> f64`, so library users
/// can march forcings that are not power sums.
pub trait Forcing {
    fn at(&self, x: f64) -> f64;
}

impl Forcing for PowerSum {
    fn at(&self, x: f64) -> f64 {
        self.eval(x)
    }
}

impl<F: Fn(f64) -> f64> Forcing for F {
    fn at(&self, x: f64) -> f64 {
        self(x)
    }
}

/// Number of uniform steps `T / h`, which must be an integer.
pub(crate) fn step_count(t_end: f64, h: f64) -> Result<usize> {
    if !(t_end > 0.0 && t_end.is_finite()) {
        return domain(format!("interval end T must be positive, got {t_end}"));
    }
    if !(h > 0.0 && h <= t_end) {
        return domain(format!("step h must satisfy 0 < h <= T, got h = {h}, T = {t_end}"));
    }
    let n = (t_end / h).round();
    if (n * h - t_end).abs() > 1e-9 * t_end {
        return domain(format!("T / h must be an integer, got {}", t_end / h));
    }
    Ok(n as usize)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelaxationProblem {
    pub alpha: f64,
    pub b: f64,
    pub forcing: PowerSum,
    pub y0: f64,
    pub t_end: f64,
    pub h: f64,
}

impl RelaxationProblem {
    pub fn new(alpha: f64, b: f64, forcing: PowerSum, y0: f64, t_end: f64, h: f64) -> Result<Self> {
        let p = RelaxationProblem {
            alpha,
            b,
            forcing,
            y0,
            t_end,
            h,
        };
        p.validate()?;
        Ok(p)
    }

    /// The homogeneous problem `y^(alpha) + B y = 0`, `y(0) = 1`.
    pub fn homogeneous(alpha: f64, b: f64, t_end: f64, h: f64) -> Result<Self> {
        RelaxationProblem::new(alpha, b, PowerSum::zero(), 1.0, t_end, h)
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if !(self.b > 0.0 && self.b.is_finite()) {
            return domain(format!("relaxation rate B must be positive, got {}", self.b));
        }
        if !self.y0.is_finite() {
            return domain("initial value must be finite");
        }
        step_count(self.t_end, self.h).map(|_| ())
    }

    /// Number of steps `N = T / h`.
    pub fn steps(&self) -> usize {
        (self.t_end / self.h).round() as usize
    }
}

/// Values `v_0..v_N` on the mesh `x_n = n h`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub h: f64,
    pub values: Vec<f64>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x(&self, n: usize) -> f64 {
        n as f64 * self.h
    }

    /// Largest `|exact(x_n) - v_n|` over `n >= 1`.
    pub fn max_error<E>(&self, mut exact: E) -> Result<f64>
    where
        E: FnMut(f64) -> Result<f64>,
    {
        let mut worst = 0.0f64;
        for (n, v) in self.values.iter().enumerate().skip(1) {
            worst = worst.max((exact(self.x(n))? - v).abs());
        }
        Ok(worst)
    }
}

/// March the discretized relaxation equation with an arbitrary forcing.
///
/// Level 1 always uses L1; the modified scheme takes over from level 2.
pub fn solve_with_forcing<F: Forcing + ?Sized>(
    alpha: f64,
    b: f64,
    y0: f64,
    t_end: f64,
    h: f64,
    forcing: &F,
    scheme: Scheme,
) -> Result<TimeSeries> {
    check_alpha(alpha)?;
    if !(b > 0.0 && b.is_finite()) {
        return domain(format!("relaxation rate B must be positive, got {b}"));
    }
    let n_steps = step_count(t_end, h)?;
    if n_steps < scheme.min_level() {
        return domain(format!(
            "{scheme:?} needs at least {} steps, got {n_steps}",
            scheme.min_level()
        ));
    }

    let first = WeightTable::new(alpha, Scheme::L1, 1)?;
    let table = WeightTable::new(alpha, scheme, n_steps)?;
    let g = gamma_pos(2.0 - alpha) * h.powf(alpha);

    let mut v = Vec::with_capacity(n_steps + 1);
    v.push(y0);
    for n in 1..=n_steps {
        let w = if n < 2 { &first } else { &table };
        let history: f64 = (1..=n).map(|k| w.weight(n, k) * v[n - k]).sum();
        let rhs = g * forcing.at(n as f64 * h) - history;
        v.push(rhs / (w.weight(n, 0) + b * g));
    }
    Ok(TimeSeries { h, values: v })
}

/// L1 solution of the relaxation problem.
pub fn solve_l1(problem: &RelaxationProblem) -> Result<TimeSeries> {
    solve(problem, Scheme::L1)
}

/// Modified-L1 solution; the first step is shared with L1.
pub fn solve_ml1(problem: &RelaxationProblem) -> Result<TimeSeries> {
    solve(problem, Scheme::ModifiedL1)
}

pub fn solve(problem: &RelaxationProblem, scheme: Scheme) -> Result<TimeSeries> {
    problem.validate()?;
    solve_with_forcing(
        problem.alpha,
        problem.b,
        problem.y0,
        problem.t_end,
        problem.h,
        &problem.forcing,
        scheme,
    )
}

/// Sequential derivative `D^{n alpha} y(0) = (-B)^n` of the homogeneous
/// solution with `y(0) = 1`.
pub fn miller_ross_at_zero(b: f64, n: u32) -> f64 {
    (-b).powi(n as i32)
}

/// Fractional Taylor polynomial `sum_{n=0}^{m} (-B x^alpha)^n / Gamma(alpha n + 1)`.
pub fn taylor_poly(alpha: f64, b: f64, m: usize, x: f64) -> f64 {
    let q = -b * x.powf(alpha);
    let mut pow = 1.0;
    let mut sum = 0.0;
    for n in 0..=m {
        sum += pow / gamma_pos(alpha * n as f64 + 1.0);
        pow *= q;
    }
    sum
}

// m * alpha >= 2, forgiving the last ulp when the product is exactly 2.
fn reaches_second_order(m: usize, alpha: f64) -> bool {
    m as f64 * alpha >= 2.0 - 1e-12
}

/// Least `m` with `m * alpha >= 2`.
pub fn choose_m(alpha: f64) -> Result<usize> {
    check_alpha(alpha)?;
    let mut m = ((2.0 / alpha).floor() as usize).saturating_sub(1).max(1);
    while !reaches_second_order(m, alpha) {
        m += 1;
    }
    Ok(m)
}

/// Problem for the remainder `z = y - taylor_poly(alpha, B, m, x)`:
/// `z^(alpha) + B z = (-B)^(m+1) x^(alpha m) / Gamma(alpha m + 1)`, `z(0) = 0`.
pub fn corrected_problem(alpha: f64, b: f64, m: usize, t_end: f64, h: f64) -> Result<RelaxationProblem> {
    check_alpha(alpha)?;
    if !reaches_second_order(m, alpha) {
        return domain(format!("correction needs m * alpha >= 2, got m = {m}, alpha = {alpha}"));
    }
    let p = alpha * m as f64;
    let coeff = (-b).powi(m as i32 + 1) / gamma_pos(p + 1.0);
    RelaxationProblem::new(alpha, b, PowerSum::single(coeff, p), 0.0, t_end, h)
}

/// Corrected solution of the homogeneous problem with `y(0) = 1`.
pub fn solve_corrected(alpha: f64, b: f64, m: usize, t_end: f64, h: f64, scheme: Scheme) -> Result<TimeSeries> {
    let z = solve(&corrected_problem(alpha, b, m, t_end, h)?, scheme)?;
    let values = z
        .values
        .iter()
        .enumerate()
        .map(|(k, zk)| zk + taylor_poly(alpha, b, m, k as f64 * h))
        .collect();
    Ok(TimeSeries { h, values })
}

/// Exact solution `y0 E_alpha(-B x^alpha) + int_0^x s^(alpha-1) E_{alpha,alpha}(-B s^alpha) F(x-s) ds`.
///
/// The integral is taken in the variable `u = s^alpha`, which removes the
/// endpoint singularity, leaving `(1/alpha) int_0^{x^alpha} E_{alpha,alpha}(-B u) F(x - u^(1/alpha)) du`.
pub fn exact_convolution<F: Forcing + ?Sized>(alpha: f64, b: f64, y0: f64, forcing: &F, x: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(x >= 0.0) {
        return domain(format!("x must be non-negative, got {x}"));
    }
    let policy = SeriesPolicy::default();
    let upper = x.powf(alpha);
    let homogeneous = if y0 == 0.0 {
        0.0
    } else {
        y0 * mittag_leffler(alpha, 1.0, -b * upper, &policy)?
    };
    if x == 0.0 {
        return Ok(homogeneous);
    }

    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let integrand = |u: f64| -> f64 {
        let kernel = match mittag_leffler(alpha, alpha, -b * u, &policy) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                return f64::NAN;
            }
        };
        let s = u.powf(1.0 / alpha);
        kernel * forcing.at((x - s).max(0.0))
    };
    let integral = quadrature::integrate(integrand, 0.0, upper, 1e-10, 4000);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(homogeneous + integral? / alpha)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::specfun::ml_relaxation_exact;
    use std::f64::consts::PI;

    fn r11_forcing() -> PowerSum {
        PowerSum::new(vec![
            PowerTerm {
                coeff: 1.0,
                exponent: 2.0,
            },
            PowerTerm {
                coeff: 8.0 / (3.0 * PI.sqrt()),
                exponent: 1.5,
            },
        ])
        .unwrap()
    }

    fn r12_forcing() -> PowerSum {
        let c = 5.0 * 2f64.sqrt() / (24.0 * PI) * gamma_pos(0.25).powi(2);
        PowerSum::new(vec![
            PowerTerm {
                coeff: 1.0,
                exponent: 1.25,
            },
            PowerTerm {
                coeff: c,
                exponent: 0.75,
            },
        ])
        .unwrap()
    }

    #[test]
    fn power_sum_evaluation() {
        let p = PowerSum::new(vec![
            PowerTerm {
                coeff: 2.0,
                exponent: 0.0,
            },
            PowerTerm {
                coeff: 3.0,
                exponent: 1.5,
            },
        ])
        .unwrap();
        assert_eq!(p.eval(0.0), 2.0);
        assert!((p.eval(4.0) - 26.0).abs() < 1e-14);
        assert!(PowerSum::new(vec![PowerTerm {
            coeff: 1.0,
            exponent: -1.0
        }])
        .is_err());
    }

    #[test]
    fn first_step_closed_form() {
        for h in [0.1, 0.01, 0.003125] {
            let p = RelaxationProblem::homogeneous(0.5, 1.0, 1.0, h).unwrap();
            let v = solve_l1(&p).unwrap();
            let want = 1.0 / (1.0 + gamma_pos(1.5) * h.sqrt());
            assert!((v.values[1] - want).abs() < 1e-15);
            assert_eq!(v.values[0], 1.0);
        }
    }

    #[test]
    fn constant_solution_is_a_fixed_point() {
        for scheme in [Scheme::L1, Scheme::ModifiedL1] {
            let p = RelaxationProblem::new(0.4, 2.5, PowerSum::constant(2.5), 1.0, 1.0, 0.01).unwrap();
            let v = solve(&p, scheme).unwrap();
            assert!(v.values.iter().all(|x| (x - 1.0).abs() <= 1e-12), "{scheme:?}");
        }
    }

    #[test]
    fn ml1_needs_two_steps() {
        let p = RelaxationProblem::homogeneous(0.5, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(solve_l1(&p).unwrap().len(), 2);
        assert!(solve_ml1(&p).is_err());
    }

    #[test]
    fn problem_validation() {
        assert!(RelaxationProblem::homogeneous(0.5, 1.0, 1.0, 0.3).is_err());
        assert!(RelaxationProblem::homogeneous(0.5, 0.0, 1.0, 0.1).is_err());
        assert!(RelaxationProblem::homogeneous(1.0, 1.0, 1.0, 0.1).is_err());
        assert!(RelaxationProblem::homogeneous(0.5, 1.0, 1.0, 2.0).is_err());
        assert_eq!(
            RelaxationProblem::homogeneous(0.5, 1.0, 1.0, 0.003125).unwrap().steps(),
            320
        );
    }

    #[test]
    fn r11_final_rows() {
        let exact = |x: f64| Ok(x * x);
        let p = RelaxationProblem::new(0.5, 1.0, r11_forcing(), 0.0, 1.0, 0.003125).unwrap();
        let e1 = solve_l1(&p).unwrap().max_error(exact).unwrap();
        let e2 = solve_ml1(&p).unwrap().max_error(exact).unwrap();
        assert!(((e1 - 0.00004621) / 0.00004621).abs() < 0.02, "{e1}");
        assert!(((e2 - 3.10e-6) / 3.10e-6).abs() < 0.02, "{e2}");
    }

    #[test]
    fn miller_ross_values() {
        assert_eq!(miller_ross_at_zero(1.0, 0), 1.0);
        assert_eq!(miller_ross_at_zero(1.0, 1), -1.0);
        assert_eq!(miller_ross_at_zero(4.0, 2), 16.0);
        assert_eq!(miller_ross_at_zero(4.0, 3), -64.0);
    }

    #[test]
    fn taylor_polynomial() {
        assert_eq!(taylor_poly(0.7, 4.0, 3, 0.0), 1.0);
        let x: f64 = 0.37;
        let want = 1.0 - 4.0 * x.powf(0.7) / gamma_pos(1.7) + 16.0 * x.powf(1.4) / gamma_pos(2.4)
            - 64.0 * x.powf(2.1) / gamma_pos(3.1);
        assert!((taylor_poly(0.7, 4.0, 3, x) - want).abs() < 1e-14);
        // many terms converge to the Mittag-Leffler solution
        let e = ml_relaxation_exact(0.5, 1.0, 0.5).unwrap();
        assert!((taylor_poly(0.5, 1.0, 60, 0.5) - e).abs() < 1e-13);
    }

    #[test]
    fn choose_m_values() {
        assert_eq!(choose_m(0.3).unwrap(), 7);
        assert_eq!(choose_m(0.7).unwrap(), 3);
        assert_eq!(choose_m(0.5).unwrap(), 4);
        assert_eq!(choose_m(0.1).unwrap(), 20);
        assert_eq!(choose_m(0.99).unwrap(), 3);
        for i in 1..100 {
            let a = i as f64 / 100.0;
            let m = choose_m(a).unwrap();
            let p = a * m as f64;
            assert!(p >= 2.0 - 1e-12 && p < 2.0 + a, "alpha {a}: m {m}");
        }
    }

    #[test]
    fn corrected_forcings() {
        let p = corrected_problem(0.3, 1.0, 7, 1.0, 0.1).unwrap();
        let t = p.forcing.terms()[0];
        assert_eq!(p.y0, 0.0);
        assert!((t.exponent - 2.1).abs() < 1e-15);
        assert!((t.coeff - 1.0 / gamma_pos(3.1)).abs() < 1e-15);

        let p = corrected_problem(0.7, 4.0, 3, 1.0, 0.1).unwrap();
        let t = p.forcing.terms()[0];
        assert!((t.exponent - 2.1).abs() < 1e-15);
        assert!((t.coeff - 256.0 / gamma_pos(3.1)).abs() < 1e-12);
        assert_eq!(p.b, 4.0);

        assert!(corrected_problem(0.3, 1.0, 6, 1.0, 0.1).is_err());
    }

    #[test]
    fn corrected_series_starts_at_one_and_reconstructs() {
        let (alpha, b, m, h) = (0.3, 1.0, 7, 0.1);
        let y = solve_corrected(alpha, b, m, 1.0, h, Scheme::L1).unwrap();
        assert_eq!(y.values[0], 1.0);
        let z = solve(&corrected_problem(alpha, b, m, 1.0, h).unwrap(), Scheme::L1).unwrap();
        for k in 0..y.len() {
            let p = taylor_poly(alpha, b, m, k as f64 * h);
            let diff = y.values[k] - z.values[k];
            assert!(((diff - p) / p).abs() <= 1e-15, "k = {k}");
        }
    }

    #[test]
    fn convolution_homogeneous_case() {
        let v = exact_convolution(0.5, 1.0, 1.0, &PowerSum::zero(), 1.0).unwrap();
        assert!((v - 0.427_583_576_155_807_004_41).abs() < 1e-13);
    }

    #[test]
    fn convolution_recovers_manufactured_solutions() {
        let f = r11_forcing();
        for x in [0.25, 0.5, 1.0] {
            let v = exact_convolution(0.5, 1.0, 0.0, &f, x).unwrap();
            assert!((v - x * x).abs() < 1e-8, "x = {x}: {v}");
        }
        let v = exact_convolution(0.5, 1.0, 0.0, &r12_forcing(), 1.0).unwrap();
        assert!((v - 1.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn r12_forcing_constant_matches_power_rule() {
        let c = r12_forcing().terms()[1].coeff;
        let want = crate::caputo::caputo_power_rule(1.25, 0.5, 1.0).unwrap();
        assert!((c - want).abs() < 1e-13, "{c} vs {want}");
    }

    #[test]
    fn closure_forcing_matches_power_sum() {
        let f = r11_forcing();
        let a = solve_with_forcing(0.5, 1.0, 0.0, 1.0, 0.05, &f, Scheme::ModifiedL1).unwrap();
        let closure = |x: f64| x * x + 8.0 / (3.0 * PI.sqrt()) * x.powf(1.5);
        let b = solve_with_forcing(0.5, 1.0, 0.0, 1.0, 0.05, &closure, Scheme::ModifiedL1).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).abs() <= 1e-14);
        }
    }
}
