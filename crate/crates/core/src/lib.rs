//! Numerical solvers for the fractional relaxation equation
//! `y^(alpha) + B y = F` and the time-fractional subdiffusion equation
//! `D_t^alpha u = u_xx + F` on `[0, pi]`, using the L1 and modified-L1
//! discretizations of the Caputo derivative.
//!
//! Solutions of both equations have an `x^alpha`-type singularity at the
//! initial point, which caps the observed order of accuracy. The `corrected`
//! solvers subtract the fractional Taylor polynomial of the solution, march the
//! twice-differentiable remainder at full order, and add the polynomial back.
//!
//! ```
//! use fracrelax::{relaxation, Scheme};
//! use fracrelax::specfun::ml_relaxation_exact;
//!
//! let y = relaxation::solve_corrected(0.3, 1.0, 7, 1.0, 0.05, Scheme::ModifiedL1).unwrap();
//! let exact = ml_relaxation_exact(0.3, 1.0, 1.0).unwrap();
//! assert!((y.values[20] - exact).abs() < 1e-4);
//! ```

// Validation is written as `!(x > 0.0)` on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod caputo;
pub mod cli;
pub mod error;
pub mod harness;
mod quadrature;
pub mod relaxation;
pub mod specfun;
pub mod subdiffusion;

pub use caputo::Scheme;
pub use error::{Error, Result};
