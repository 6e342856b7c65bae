//! Exact and floating-point solvers for general bordered tridiagonal
//! linear systems: a tridiagonal matrix with a dense last row and column.
//!
//! Two structured solvers are provided. [`sbtls`] runs an `O(n)` LU
//! factorization in which an exactly zero pivot is replaced by a symbol `t`
//! and the final answer is evaluated at `t = 0`. [`smw`] splits off the
//! border and solves two tridiagonal systems via the Sherman-Morrison-Woodbury
//! identity. Both work over `f64` or over exact rationals ([`scalar::Exact`]).

pub mod bench;
pub mod cli;
pub mod error;
pub mod flops;
pub mod generators;
pub mod oracle;
pub mod report;
pub mod sbtls;
pub mod scalar;
pub mod smw;
pub mod system;
pub mod verify;

pub use error::{Error, Result, ScalarError};
pub use sbtls::{determinant, factor, reconstruct_lu, solve_sbtls, BorderedFactorization, Solution};
pub use scalar::{Exact, Rational, Scalar, ScalarMode, ZeroTest};
pub use smw::{partition, solve_smw, thomas_solve, SmwOptions};
pub use system::{multiply, validate_system, BorderedSystem};
