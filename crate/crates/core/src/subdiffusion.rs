//! Time-fractional subdiffusion `D_t^alpha u = u_xx + F` on `[0, pi] x [0, T]`
//! with homogeneous Dirichlet boundaries.
//!
//! Space uses the second-order central difference on `x_n = n pi / N`; time
//! uses L1 or modified L1 on `t_m = m T / M`. Each level is one tridiagonal
//! solve with the matrix `K = tridiag(-eta, 1 + 2 eta, -eta)` (shifted by
//! `-zeta(alpha - 1)` on the diagonal for the modified scheme), where
//! `eta = Gamma(2 - alpha) tau^alpha / h^2`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::caputo::{Scheme, WeightTable};
use crate::error::{check_alpha, domain, Error, Result};
use crate::quadrature;
use crate::relaxation::{taylor_poly, PowerSum};
use crate::specfun::{gamma_pos, mittag_leffler1};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InitialProfile {
    /// `sin(k x)`.
    SineMode { k: u32 },
    /// Values at the `N + 1` grid nodes; both end values must be zero.
    Sampled { values: Vec<f64> },
}

/// Separable source `sin(mode x) * time(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparableForcing {
    pub mode: u32,
    pub time: PowerSum,
}

impl SeparableForcing {
    pub fn at(&self, x: f64, t: f64) -> f64 {
        (self.mode as f64 * x).sin() * self.time.eval(t)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubdiffusionProblem {
    pub alpha: f64,
    /// Space intervals; `h = pi / N`.
    pub n_space: usize,
    /// Time steps; `tau = T / M`.
    pub m_time: usize,
    pub t_end: f64,
    pub initial: InitialProfile,
    pub forcing: Option<SeparableForcing>,
}

impl SubdiffusionProblem {
    pub fn new(
        alpha: f64,
        n_space: usize,
        m_time: usize,
        t_end: f64,
        initial: InitialProfile,
        forcing: Option<SeparableForcing>,
    ) -> Result<Self> {
        let p = SubdiffusionProblem {
            alpha,
            n_space,
            m_time,
            t_end,
            initial,
            forcing,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if self.n_space < 2 {
            return domain(format!("need N >= 2 space intervals, got {}", self.n_space));
        }
        if self.m_time < 1 {
            return domain("need M >= 1 time steps");
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return domain(format!("final time must be positive, got {}", self.t_end));
        }
        match &self.initial {
            InitialProfile::SineMode { k } if *k == 0 => {
                return domain("sine mode index must be positive");
            }
            InitialProfile::Sampled { values } => {
                if values.len() != self.n_space + 1 {
                    return domain(format!(
                        "sampled profile needs N + 1 = {} values, got {}",
                        self.n_space + 1,
                        values.len()
                    ));
                }
                if values[0] != 0.0 || values[self.n_space] != 0.0 {
                    return domain("sampled profile must vanish at both boundaries");
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn h(&self) -> f64 {
        PI / self.n_space as f64
    }

    pub fn tau(&self) -> f64 {
        self.t_end / self.m_time as f64
    }

    pub fn initial_row(&self) -> Vec<f64> {
        let n = self.n_space;
        let h = self.h();
        let mut row = match &self.initial {
            InitialProfile::SineMode { k } => (0..=n).map(|j| (*k as f64 * j as f64 * h).sin()).collect(),
            InitialProfile::Sampled { values } => values.clone(),
        };
        row[0] = 0.0;
        row[n] = 0.0;
        row
    }
}

/// Row-major `(M + 1) x (N + 1)` grid of values; row `m` is time `m tau`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimeSolution {
    pub h: f64,
    pub tau: f64,
    pub n_space: usize,
    pub m_time: usize,
    pub values: Vec<f64>,
}

impl SpaceTimeSolution {
    pub fn cols(&self) -> usize {
        self.n_space + 1
    }

    pub fn rows(&self) -> usize {
        self.m_time + 1
    }

    pub fn row(&self, m: usize) -> &[f64] {
        let c = self.cols();
        &self.values[m * c..(m + 1) * c]
    }

    pub fn at(&self, m: usize, n: usize) -> f64 {
        self.values[m * self.cols() + n]
    }

    pub fn last_row(&self) -> &[f64] {
        self.row(self.m_time)
    }

    /// Max over interior nodes of `|exact(x_n, T) - u_n^M|`.
    pub fn final_time_error<E>(&self, mut exact: E) -> Result<f64>
    where
        E: FnMut(f64, f64) -> Result<f64>,
    {
        let t = self.m_time as f64 * self.tau;
        let last = self.last_row();
        let mut worst = 0.0f64;
        for (n, u) in last.iter().enumerate().take(self.n_space).skip(1) {
            worst = worst.max((exact(n as f64 * self.h, t)? - u).abs());
        }
        Ok(worst)
    }
}

/// Tridiagonal matrix; `sub[0]` and `sup[dim - 1]` are unused and zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,
    pub main: Vec<f64>,
    pub sup: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn dim(&self) -> usize {
        self.main.len()
    }

    /// Constant-coefficient matrix `tridiag(off, diag, off)`.
    pub fn toeplitz(dim: usize, off: f64, diag: f64) -> Self {
        let mut sub = vec![off; dim];
        let mut sup = vec![off; dim];
        if dim > 0 {
            sub[0] = 0.0;
            sup[dim - 1] = 0.0;
        }
        TridiagonalSystem {
            sub,
            main: vec![diag; dim],
            sup,
        }
    }

    pub fn mul(&self, x: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                let mut s = self.main[i] * x[i];
                if i > 0 {
                    s += self.sub[i] * x[i - 1];
                }
                if i + 1 < d {
                    s += self.sup[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    pub fn is_diagonally_dominant(&self) -> bool {
        (0..self.dim()).all(|i| self.main[i] > self.sub[i].abs() + self.sup[i].abs())
    }
}

/// Forward-eliminated form of a tridiagonal system, reusable across right-hand sides.
#[derive(Debug, Clone)]
struct ThomasFactor {
    sub: Vec<f64>,
    sup_scaled: Vec<f64>,
    pivot: Vec<f64>,
}

impl ThomasFactor {
    fn new(system: &TridiagonalSystem) -> Result<Self> {
        let d = system.dim();
        let mut sup_scaled = vec![0.0; d];
        let mut pivot = vec![0.0; d];
        for i in 0..d {
            let p = if i == 0 {
                system.main[0]
            } else {
                system.main[i] - system.sub[i] * sup_scaled[i - 1]
            };
            if p == 0.0 || !p.is_finite() {
                return Err(Error::ZeroPivot(i));
            }
            pivot[i] = p;
            sup_scaled[i] = if i + 1 < d { system.sup[i] / p } else { 0.0 };
        }
        Ok(ThomasFactor {
            sub: system.sub.clone(),
            sup_scaled,
            pivot,
        })
    }

    fn solve_in_place(&self, x: &mut [f64]) {
        let d = x.len();
        if d == 0 {
            return;
        }
        x[0] /= self.pivot[0];
        for i in 1..d {
            x[i] = (x[i] - self.sub[i] * x[i - 1]) / self.pivot[i];
        }
        for i in (0..d - 1).rev() {
            x[i] -= self.sup_scaled[i] * x[i + 1];
        }
    }
}

/// Solve `A x = rhs` by the Thomas algorithm.
pub fn thomas_solve(system: &TridiagonalSystem, rhs: &[f64]) -> Result<Vec<f64>> {
    let d = system.dim();
    if system.sub.len() != d || system.sup.len() != d {
        return domain("tridiagonal bands must all have length dim");
    }
    if rhs.len() != d {
        return domain(format!("right-hand side has length {}, expected {d}", rhs.len()));
    }
    let factor = ThomasFactor::new(system)?;
    let mut x = rhs.to_vec();
    factor.solve_in_place(&mut x);
    Ok(x)
}

/// `eta = Gamma(2 - alpha) tau^alpha / h^2`.
pub fn eta(alpha: f64, tau: f64, h: f64) -> f64 {
    gamma_pos(2.0 - alpha) * tau.powf(alpha) / (h * h)
}

/// Level matrix of dimension `N - 1` for the given scheme.
pub fn build_system(alpha: f64, tau: f64, h: f64, n_space: usize, scheme: Scheme) -> Result<TridiagonalSystem> {
    check_alpha(alpha)?;
    if n_space < 2 {
        return domain(format!("need N >= 2, got {n_space}"));
    }
    if !(tau > 0.0 && h > 0.0) {
        return domain("tau and h must be positive");
    }
    let e = eta(alpha, tau, h);
    let shift = match scheme {
        Scheme::L1 => 0.0,
        Scheme::ModifiedL1 => -crate::specfun::zeta_unit_strip(alpha - 1.0)?,
    };
    Ok(TridiagonalSystem::toeplitz(n_space - 1, -e, 1.0 + 2.0 * e + shift))
}

/// Solve with the given scheme. The modified scheme takes level 1 from L1.
pub fn solve(problem: &SubdiffusionProblem, scheme: Scheme) -> Result<SpaceTimeSolution> {
    problem.validate()?;
    let (n_space, m_time) = (problem.n_space, problem.m_time);
    if m_time < scheme.min_level() {
        return domain(format!(
            "{scheme:?} needs at least {} time steps, got {m_time}",
            scheme.min_level()
        ));
    }
    let alpha = problem.alpha;
    let (h, tau) = (problem.h(), problem.tau());
    let cols = n_space + 1;

    let first_weights = WeightTable::new(alpha, Scheme::L1, 1)?;
    let weights = WeightTable::new(alpha, scheme, m_time)?;
    let first_factor = ThomasFactor::new(&build_system(alpha, tau, h, n_space, Scheme::L1)?)?;
    let factor = ThomasFactor::new(&build_system(alpha, tau, h, n_space, scheme)?)?;
    let g = gamma_pos(2.0 - alpha) * tau.powf(alpha);

    let mut values = Vec::with_capacity((m_time + 1) * cols);
    values.extend(problem.initial_row());
    let mut rhs = vec![0.0; n_space - 1];
    for m in 1..=m_time {
        let (w, f) = if m < 2 {
            (&first_weights, &first_factor)
        } else {
            (&weights, &factor)
        };
        let t = m as f64 * tau;
        match &problem.forcing {
            Some(src) => {
                let ft = src.time.eval(t);
                for (i, r) in rhs.iter_mut().enumerate() {
                    *r = g * (src.mode as f64 * (i + 1) as f64 * h).sin() * ft;
                }
            }
            None => rhs.iter_mut().for_each(|r| *r = 0.0),
        }
        for k in 1..=m {
            let c = w.weight(m, k);
            let past = &values[(m - k) * cols + 1..(m - k) * cols + n_space];
            for (r, v) in rhs.iter_mut().zip(past) {
                *r -= c * v;
            }
        }
        f.solve_in_place(&mut rhs);
        values.push(0.0);
        values.extend_from_slice(&rhs);
        values.push(0.0);
    }
    Ok(SpaceTimeSolution {
        h,
        tau,
        n_space,
        m_time,
        values,
    })
}

pub fn solve_l1(problem: &SubdiffusionProblem) -> Result<SpaceTimeSolution> {
    solve(problem, Scheme::L1)
}

pub fn solve_ml1(problem: &SubdiffusionProblem) -> Result<SpaceTimeSolution> {
    solve(problem, Scheme::ModifiedL1)
}

/// `sin(k x) E_alpha(-k^2 t^alpha)`, the solution for initial profile `sin(k x)`.
pub fn exact_single_mode(alpha: f64, k: u32, x: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(0.0..=PI).contains(&x) {
        return domain(format!("x must lie in [0, pi], got {x}"));
    }
    if !(t >= 0.0) {
        return domain(format!("t must be non-negative, got {t}"));
    }
    let k = k as f64;
    Ok((k * x).sin() * mittag_leffler1(alpha, -k * k * t.powf(alpha))?)
}

/// Fourier sine coefficients `c_1..c_{n_max}` of an initial profile.
///
/// Sine modes return the exact unit vector. Sampled profiles use the
/// trapezoidal rule on their grid, which is the discrete sine transform.
pub fn fourier_sine_coefficients(profile: &InitialProfile, n_max: usize) -> Result<Vec<f64>> {
    match profile {
        InitialProfile::SineMode { k } => {
            let k = *k as usize;
            if k == 0 {
                return domain("sine mode index must be positive");
            }
            Ok((1..=n_max).map(|n| if n == k { 1.0 } else { 0.0 }).collect())
        }
        InitialProfile::Sampled { values } => {
            if values.len() < 3 {
                return domain("sampled profile needs at least 3 values");
            }
            let n_int = values.len() - 1;
            let h = PI / n_int as f64;
            Ok((1..=n_max)
                .map(|n| {
                    let s: f64 = (1..n_int).map(|j| values[j] * (n as f64 * j as f64 * h).sin()).sum();
                    2.0 / PI * h * s
                })
                .collect())
        }
    }
}

/// Fourier sine coefficients of a function on `[0, pi]` by adaptive quadrature.
pub fn fourier_sine_coefficients_of<F: Fn(f64) -> f64>(profile: F, n_max: usize) -> Result<Vec<f64>> {
    (1..=n_max)
        .map(|n| {
            let integral = quadrature::integrate(|x| profile(x) * (n as f64 * x).sin(), 0.0, PI, 1e-12, 2000)?;
            Ok(2.0 / PI * integral)
        })
        .collect()
}

/// Remainder problem for the initial profile `sin x`:
/// `v = u - sin x * sum_{j<=m} (-1)^j t^(alpha j) / Gamma(alpha j + 1)` solves
/// the subdiffusion equation with zero data and source
/// `(-1)^(m+1) sin x t^(m alpha) / Gamma(m alpha + 1)`.
pub fn corrected_problem(
    alpha: f64,
    m: usize,
    t_end: f64,
    n_space: usize,
    m_time: usize,
) -> Result<SubdiffusionProblem> {
    check_alpha(alpha)?;
    if (m as f64 * alpha) < 2.0 - 1e-12 {
        return domain(format!("correction needs m * alpha >= 2, got m = {m}, alpha = {alpha}"));
    }
    let p = m as f64 * alpha;
    let sign = if m.is_multiple_of(2) { -1.0 } else { 1.0 };
    let forcing = SeparableForcing {
        mode: 1,
        time: PowerSum::single(sign / gamma_pos(p + 1.0), p),
    };
    SubdiffusionProblem::new(
        alpha,
        n_space,
        m_time,
        t_end,
        InitialProfile::Sampled {
            values: vec![0.0; n_space + 1],
        },
        Some(forcing),
    )
}

/// Corrected solution for the initial profile `sin x`.
pub fn solve_corrected(
    alpha: f64,
    m: usize,
    t_end: f64,
    n_space: usize,
    m_time: usize,
    scheme: Scheme,
) -> Result<SpaceTimeSolution> {
    let mut sol = solve(&corrected_problem(alpha, m, t_end, n_space, m_time)?, scheme)?;
    let cols = sol.cols();
    let (h, tau) = (sol.h, sol.tau);
    for level in 0..=m_time {
        let poly = taylor_poly(alpha, 1.0, m, level as f64 * tau);
        let row = &mut sol.values[level * cols..(level + 1) * cols];
        for (n, u) in row.iter_mut().enumerate().take(n_space).skip(1) {
            *u += (n as f64 * h).sin() * poly;
        }
    }
    Ok(sol)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn sine_problem(alpha: f64, n: usize, m: usize, k: u32) -> SubdiffusionProblem {
        SubdiffusionProblem::new(alpha, n, m, 1.0, InitialProfile::SineMode { k }, None).unwrap()
    }

    #[test]
    fn eta_and_dominance() {
        let tau = 0.05;
        let h = PI * tau / 3.0;
        let s = build_system(0.5, tau, h, 60, Scheme::L1).unwrap();
        let want = gamma_pos(1.5) * tau.sqrt() / (h * h);
        assert!((-s.sub[1] - want).abs() < 1e-12 * want);
        assert_eq!(s.dim(), 59);
        for i in 1..58 {
            assert!((s.main[i] - s.sub[i].abs() - s.sup[i].abs() - 1.0).abs() < 1e-12);
        }
        let m = build_system(0.5, tau, h, 60, Scheme::ModifiedL1).unwrap();
        assert!((m.main[3] - 2.0 * want - 1.207_886_224_977_354_6).abs() < 1e-11);
        assert!(s.is_diagonally_dominant() && m.is_diagonally_dominant());
    }

    #[test]
    fn thomas_identity_and_ones() {
        let id = TridiagonalSystem::toeplitz(4, 0.0, 1.0);
        assert_eq!(
            thomas_solve(&id, &[1.0, 2.0, 3.0, 4.0]).unwrap(),
            vec![1.0, 2.0, 3.0, 4.0]
        );

        let eta = 0.37;
        let k5 = TridiagonalSystem::toeplitz(5, -eta, 1.0 + 2.0 * eta);
        let rhs = k5.mul(&[1.0; 5]);
        let x = thomas_solve(&k5, &rhs).unwrap();
        assert!(x.iter().all(|v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn thomas_errors() {
        let k = TridiagonalSystem::toeplitz(3, -1.0, 2.0);
        assert!(thomas_solve(&k, &[1.0, 2.0]).is_err());
        let singular = TridiagonalSystem {
            sub: vec![0.0, 1.0],
            main: vec![0.0, 1.0],
            sup: vec![1.0, 0.0],
        };
        assert_eq!(thomas_solve(&singular, &[1.0, 1.0]), Err(Error::ZeroPivot(0)));
    }

    #[test]
    fn zero_data_gives_zero_solution() {
        let p =
            SubdiffusionProblem::new(0.5, 12, 8, 1.0, InitialProfile::Sampled { values: vec![0.0; 13] }, None).unwrap();
        for scheme in [Scheme::L1, Scheme::ModifiedL1] {
            assert!(solve(&p, scheme).unwrap().values.iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn boundaries_stay_zero_and_row_zero_is_initial() {
        let p = sine_problem(0.5, 30, 20, 2);
        let s = solve_ml1(&p).unwrap();
        assert_eq!(s.row(0), p.initial_row().as_slice());
        for m in 0..s.rows() {
            assert_eq!(s.at(m, 0), 0.0);
            assert_eq!(s.at(m, 30), 0.0);
        }
    }

    #[test]
    fn ml1_needs_two_levels() {
        assert!(solve_ml1(&sine_problem(0.5, 10, 1, 1)).is_err());
        assert!(solve_l1(&sine_problem(0.5, 10, 1, 1)).is_ok());
    }

    #[test]
    fn validation() {
        assert!(SubdiffusionProblem::new(0.5, 1, 4, 1.0, InitialProfile::SineMode { k: 1 }, None).is_err());
        assert!(SubdiffusionProblem::new(0.5, 4, 4, 1.0, InitialProfile::SineMode { k: 0 }, None).is_err());
        assert!(SubdiffusionProblem::new(
            0.5,
            4,
            4,
            1.0,
            InitialProfile::Sampled {
                values: vec![1.0, 0.0, 0.0, 0.0, 0.0]
            },
            None
        )
        .is_err());
        assert!(
            SubdiffusionProblem::new(0.5, 4, 4, 1.0, InitialProfile::Sampled { values: vec![0.0; 4] }, None).is_err()
        );
    }

    #[test]
    fn exact_single_mode_values() {
        assert!((exact_single_mode(0.5, 3, 0.4, 0.0).unwrap() - (1.2f64).sin()).abs() < 1e-15);
        let v = exact_single_mode(0.5, 1, PI / 2.0, 1.0).unwrap();
        assert!((v - 0.427_583_576_155_807_004_41).abs() < 1e-13);
        assert_eq!(exact_single_mode(0.5, 1, 0.0, 0.7).unwrap(), 0.0);
        assert!(exact_single_mode(0.5, 1, PI, 0.7).unwrap().abs() < 1e-15);
        assert!(exact_single_mode(0.5, 1, 4.0, 0.7).is_err());
    }

    #[test]
    fn fourier_coefficients() {
        let c = fourier_sine_coefficients(&InitialProfile::SineMode { k: 1 }, 4).unwrap();
        assert_eq!(c, vec![1.0, 0.0, 0.0, 0.0]);
        let c = fourier_sine_coefficients(&InitialProfile::SineMode { k: 3 }, 4).unwrap();
        assert_eq!(c[2], 1.0);

        let c = fourier_sine_coefficients_of(|x| x * (PI - x), 7).unwrap();
        for (i, ci) in c.iter().enumerate() {
            let n = (i + 1) as f64;
            let want = if (i + 1) % 2 == 1 { 8.0 / (PI * n.powi(3)) } else { 0.0 };
            assert!((ci - want).abs() < 1e-10, "n = {n}: {ci} vs {want}");
        }

        let c = fourier_sine_coefficients_of(|x: f64| x.sin(), 3).unwrap();
        assert!((c[0] - 1.0).abs() < 1e-10 && c[1].abs() < 1e-10 && c[2].abs() < 1e-10);

        // sampled sin(2x) recovers the unit vector up to roundoff
        let n = 16;
        let vals: Vec<f64> = (0..=n)
            .map(|j| {
                if j == 0 || j == n {
                    0.0
                } else {
                    (2.0 * j as f64 * PI / n as f64).sin()
                }
            })
            .collect();
        let c = fourier_sine_coefficients(&InitialProfile::Sampled { values: vals }, 5).unwrap();
        assert!((c[1] - 1.0).abs() < 1e-13 && c[0].abs() < 1e-13 && c[4].abs() < 1e-13);
    }

    #[test]
    fn corrected_problem_forcing() {
        let p = corrected_problem(0.3, 7, 1.0, 30, 10).unwrap();
        let f = p.forcing.as_ref().unwrap();
        let t = f.time.terms()[0];
        assert_eq!(f.mode, 1);
        assert!((t.exponent - 2.1).abs() < 1e-15);
        assert!((t.coeff - 1.0 / gamma_pos(3.1)).abs() < 1e-15);
        let p = corrected_problem(0.5, 4, 1.0, 30, 10).unwrap();
        assert!(p.forcing.unwrap().time.terms()[0].coeff < 0.0);
        assert!(corrected_problem(0.3, 6, 1.0, 30, 10).is_err());
    }

    #[test]
    fn corrected_level_zero_is_initial_sine() {
        let s = solve_corrected(0.3, 7, 1.0, 30, 10, Scheme::L1).unwrap();
        for n in 0..=30 {
            let want = if n == 0 || n == 30 { 0.0 } else { (n as f64 * s.h).sin() };
            assert!((s.at(0, n) - want).abs() <= 1e-15);
        }
    }

    #[test]
    fn single_modes_stay_single_modes() {
        for scheme in [Scheme::L1, Scheme::ModifiedL1] {
            for k in [1u32, 3] {
                let s = solve(&sine_problem(0.4, 40, 25, k), scheme).unwrap();
                let basis: Vec<f64> = (0..=40).map(|n| (k as f64 * n as f64 * s.h).sin()).collect();
                let norm: f64 = basis.iter().map(|b| b * b).sum();
                for m in 0..s.rows() {
                    let row = s.row(m);
                    let a: f64 = row.iter().zip(&basis).map(|(u, b)| u * b).sum::<f64>() / norm;
                    let dev = row
                        .iter()
                        .zip(&basis)
                        .map(|(u, b)| (u - a * b).abs())
                        .fold(0.0, f64::max);
                    assert!(dev <= 1e-10, "{scheme:?} k={k} m={m}: {dev}");
                }
            }
        }
    }

    #[test]
    fn homogeneous_maximum_does_not_grow() {
        for (alpha, tau) in [(0.5, 0.05f64), (0.3, 0.05), (0.5, 0.0125), (0.3, 0.0125)] {
            let n = (3.0 / tau).round() as usize;
            let m = (1.0 / tau).round() as usize;
            for scheme in [Scheme::L1, Scheme::ModifiedL1] {
                let s = solve(&sine_problem(alpha, n, m, 1), scheme).unwrap();
                let mut prev = f64::INFINITY;
                for level in 0..s.rows() {
                    let mx = s.row(level).iter().fold(0.0f64, |a, v| a.max(v.abs()));
                    assert!(mx <= prev, "alpha {alpha} {scheme:?} level {level}");
                    prev = mx;
                }
            }
        }
    }
}
