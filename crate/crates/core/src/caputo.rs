//! L1 and modified-L1 weights for the Caputo derivative on a uniform mesh.
//!
//! At time level `n` the derivative is approximated by
//!
//! ```text
//! y^(alpha)(x_n) ~ 1 / (Gamma(2 - alpha) h^alpha) * sum_{k=0}^{n} c_k y_{n-k}
//! ```
//!
//! For L1, `c_0 = 1`, `c_k = (k+1)^(1-a) - 2 k^(1-a) + (k-1)^(1-a)` for
//! `1 <= k < n`, and the tail weight `c_n = (n-1)^(1-a) - n^(1-a)` couples the
//! scheme to the initial value. The modified scheme shifts `c_0, c_1, c_2` by
//! `-zeta(a-1), 2 zeta(a-1), -zeta(a-1)`; at level 2 the third shift lands on
//! the tail weight.

use serde::{Deserialize, Serialize};

use crate::error::{check_alpha, domain, Result};
use crate::specfun::{gamma_pos, zeta_unit_strip};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    L1,
    ModifiedL1,
}

impl Scheme {
    /// Smallest time level at which the scheme is defined.
    pub fn min_level(self) -> usize {
        match self {
            Scheme::L1 => 1,
            Scheme::ModifiedL1 => 2,
        }
    }
}

/// Weights `c_0..c_n` of a single time level.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientRow {
    pub alpha: f64,
    pub n: usize,
    pub weights: Vec<f64>,
}

impl CoefficientRow {
    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Interior L1 weight `sigma_k` for `k >= 1`, valid whenever `k < n`.
fn interior(alpha: f64, k: usize) -> f64 {
    let e = 1.0 - alpha;
    let k = k as f64;
    (k + 1.0).powf(e) - 2.0 * k.powf(e) + (k - 1.0).powf(e)
}

fn tail(alpha: f64, n: usize) -> f64 {
    let e = 1.0 - alpha;
    let n = n as f64;
    (n - 1.0).powf(e) - n.powf(e)
}

/// Weight table shared by every level of a solve.
///
/// Interior weights do not depend on the level, so they are computed once up
/// to `max_level`; only the tail weight and (for the modified scheme) the
/// zeta shifts vary with `n`.
#[derive(Debug, Clone)]
pub struct WeightTable {
    alpha: f64,
    scheme: Scheme,
    zeta: f64,
    interior: Vec<f64>,
}

impl WeightTable {
    pub fn new(alpha: f64, scheme: Scheme, max_level: usize) -> Result<Self> {
        check_alpha(alpha)?;
        let zeta = match scheme {
            Scheme::L1 => 0.0,
            Scheme::ModifiedL1 => zeta_unit_strip(alpha - 1.0)?,
        };
        let mut interior_w = Vec::with_capacity(max_level.max(1));
        interior_w.push(1.0);
        interior_w.extend((1..max_level).map(|k| interior(alpha, k)));
        Ok(WeightTable {
            alpha,
            scheme,
            zeta,
            interior: interior_w,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// `zeta(alpha - 1)` for the modified scheme, zero for L1.
    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn max_level(&self) -> usize {
        self.interior.len()
    }

    /// Weight `c_k` at level `n`. The caller guarantees `k <= n <= max_level`
    /// and `n >= scheme.min_level()`.
    pub fn weight(&self, n: usize, k: usize) -> f64 {
        debug_assert!(k <= n && n >= 1);
        let base = if k == n { tail(self.alpha, n) } else { self.interior[k] };
        let shift = match (self.scheme, k) {
            (Scheme::ModifiedL1, 0) | (Scheme::ModifiedL1, 2) => -self.zeta,
            (Scheme::ModifiedL1, 1) => 2.0 * self.zeta,
            _ => 0.0,
        };
        base + shift
    }

    pub fn row(&self, n: usize) -> Result<CoefficientRow> {
        if n < self.scheme.min_level() {
            return domain(format!(
                "{:?} weights require level n >= {}, got {n}",
                self.scheme,
                self.scheme.min_level()
            ));
        }
        if n > self.max_level() {
            return domain(format!("level {n} exceeds table size {}", self.max_level()));
        }
        Ok(CoefficientRow {
            alpha: self.alpha,
            n,
            weights: (0..=n).map(|k| self.weight(n, k)).collect(),
        })
    }
}

/// L1 weights at level `n >= 1`.
pub fn l1_weights(alpha: f64, n: usize) -> Result<CoefficientRow> {
    if n == 0 {
        return domain("L1 weights require n >= 1");
    }
    WeightTable::new(alpha, Scheme::L1, n)?.row(n)
}

/// Modified-L1 weights at level `n >= 2`.
pub fn ml1_weights(alpha: f64, n: usize) -> Result<CoefficientRow> {
    if n < 2 {
        return domain(format!("modified L1 weights require n >= 2, got {n}"));
    }
    WeightTable::new(alpha, Scheme::ModifiedL1, n)?.row(n)
}

/// Approximate Caputo derivative at the last sample, `x_n = n h`, from the
/// uniform samples `y_0..y_n`.
pub fn caputo_apply(samples: &[f64], alpha: f64, h: f64, scheme: Scheme) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return domain(format!("step h must be positive, got {h}"));
    }
    let n = samples.len().saturating_sub(1);
    if n < scheme.min_level() {
        return domain(format!(
            "{scheme:?} needs at least {} samples, got {}",
            scheme.min_level() + 1,
            samples.len()
        ));
    }
    let table = WeightTable::new(alpha, scheme, n)?;
    let sum: f64 = (0..=n).map(|k| table.weight(n, k) * samples[n - k]).sum();
    Ok(sum / (gamma_pos(2.0 - alpha) * h.powf(alpha)))
}

/// Exact Caputo derivative of `x^p`: `Gamma(p+1) / Gamma(p+1-alpha) x^(p-alpha)`.
pub fn caputo_power_rule(p: f64, alpha: f64, x: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(p > 0.0) {
        return domain(format!("power rule requires p > 0, got {p}"));
    }
    if !(x >= 0.0) {
        return domain(format!("x must be non-negative, got {x}"));
    }
    let coeff = gamma_pos(p + 1.0) / gamma_pos(p + 1.0 - alpha);
    Ok(coeff * x.powf(p - alpha))
}
