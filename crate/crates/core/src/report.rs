//! Method/mode dispatch and the solve report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{bareiss_solve, gauss_eliminate};
use crate::sbtls::{solve_sbtls, Solution};
use crate::scalar::{format_rational, rational_to_f64, Exact, Rational, Scalar, ScalarMode, ZeroTest};
use crate::smw::{solve_smw, SmwOptions};
use crate::system::{max_nan, residual_inf, BorderedSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Sbtls,
    Smw,
    Gauss,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Sbtls => "sbtls",
            Method::Smw => "smw",
            Method::Gauss => "gauss",
        }
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sbtls" => Ok(Method::Sbtls),
            "smw" => Ok(Method::Smw),
            "gauss" => Ok(Method::Gauss),
            other => Err(format!("unknown method {other:?} (expected sbtls, smw or gauss)")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub method: Method,
    pub mode: String,
    pub n: usize,
    /// Fractions in exact mode, shortest round-trip decimals in f64 mode.
    pub x: Vec<String>,
    pub determinant: String,
    /// Zero for `gauss`, which is not instrumented.
    pub flops: u64,
    pub substitutions: usize,
    /// `max |A x - y|`, recomputed from the system.
    pub residual_inf: String,
    pub wall_time_s: f64,
}

impl SolveReport {
    /// The solution as doubles.
    pub fn x_f64(&self) -> Vec<f64> {
        self.x
            .iter()
            .map(|s| crate::scalar::parse_rational(s).map(|r| rational_to_f64(&r)).unwrap_or(f64::NAN))
            .collect()
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("method        {}\n", self.method));
        out.push_str(&format!("mode          {}\n", self.mode));
        out.push_str(&format!("n             {}\n", self.n));
        out.push_str(&format!("determinant   {}\n", self.determinant));
        out.push_str(&format!("flops         {}\n", self.flops));
        out.push_str(&format!("substitutions {}\n", self.substitutions));
        out.push_str(&format!("residual_inf  {}\n", self.residual_inf));
        out.push_str(&format!("wall_time_s   {:.6}\n", self.wall_time_s));
        for (i, v) in self.x.iter().enumerate() {
            out.push_str(&format!("x[{}] = {}\n", i + 1, v));
        }
        out
    }
}

/// Scalar text as written to reports: fractions for exact values.
pub fn scalar_text<S: Scalar>(v: &S) -> String {
    match S::MODE {
        ScalarMode::ExactRational => v.to_string(),
        ScalarMode::Float64 => format!("{}", v.to_f64()),
    }
}

fn f64_text(v: f64) -> String {
    format!("{v}")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunOptions {
    pub zero_test: ZeroTest,
    pub concurrent: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { zero_test: ZeroTest::default(), concurrent: true }
    }
}

fn structured<S: Scalar>(sys: &BorderedSystem, method: Method, opts: &RunOptions) -> Result<SolveReport> {
    let scalar_sys: BorderedSystem<S> = sys.to_scalar();
    let start = Instant::now();
    let sol: Solution<S> = match method {
        Method::Sbtls => solve_sbtls(&scalar_sys, &opts.zero_test)?,
        Method::Smw => solve_smw(
            &scalar_sys,
            &SmwOptions { zero_test: opts.zero_test, concurrent: opts.concurrent },
        )?,
        Method::Gauss => unreachable!("dense methods are dispatched separately"),
    };
    let wall = start.elapsed().as_secs_f64();
    let residual = residual_inf(&scalar_sys, &sol.x)?;
    Ok(SolveReport {
        method,
        mode: S::MODE.label().to_string(),
        n: sys.n,
        x: sol.x.iter().map(scalar_text).collect(),
        determinant: scalar_text(&sol.determinant),
        flops: sol.flops,
        substitutions: sol.subs_count,
        residual_inf: f64_text(residual),
        wall_time_s: wall,
    })
}

fn dense_f64(sys: &BorderedSystem, opts: &RunOptions) -> Result<SolveReport> {
    let fsys: BorderedSystem<f64> = sys.to_scalar();
    let dense = fsys.to_dense_with(0.0);
    let start = Instant::now();
    let (x, det) = gauss_eliminate(&dense, &fsys.y, &opts.zero_test)?;
    let wall = start.elapsed().as_secs_f64();
    let residual = residual_inf(&fsys, &x)?;
    Ok(SolveReport {
        method: Method::Gauss,
        mode: ScalarMode::Float64.label().to_string(),
        n: sys.n,
        x: x.iter().map(|v| f64_text(*v)).collect(),
        determinant: f64_text(det),
        flops: 0,
        substitutions: 0,
        residual_inf: f64_text(residual),
        wall_time_s: wall,
    })
}

fn dense_exact(sys: &BorderedSystem) -> Result<SolveReport> {
    let start = Instant::now();
    let (x, det) = bareiss_solve(&sys.to_dense(), &sys.y)?;
    let wall = start.elapsed().as_secs_f64();
    let ex: Vec<Exact> = x.iter().cloned().map(Exact::Rat).collect();
    let residual = residual_inf(&sys.to_scalar::<Exact>(), &ex)?;
    Ok(SolveReport {
        method: Method::Gauss,
        mode: ScalarMode::ExactRational.label().to_string(),
        n: sys.n,
        x: x.iter().map(format_rational).collect(),
        determinant: format_rational(&det),
        flops: 0,
        substitutions: 0,
        residual_inf: f64_text(residual),
        wall_time_s: wall,
    })
}

/// Solves `sys` with the given method and scalar mode.
///
/// `gauss` in exact mode runs fraction-free elimination.
pub fn run_solve(sys: &BorderedSystem, method: Method, mode: ScalarMode, opts: &RunOptions) -> Result<SolveReport> {
    match (method, mode) {
        (Method::Gauss, ScalarMode::Float64) => dense_f64(sys, opts),
        (Method::Gauss, ScalarMode::ExactRational) => dense_exact(sys),
        (_, ScalarMode::Float64) => structured::<f64>(sys, method, opts),
        (_, ScalarMode::ExactRational) => structured::<Exact>(sys, method, opts),
    }
}

/// `max_i |x_i - reference_i|`.
pub fn error_inf(x: &[f64], reference: &[Rational]) -> Result<f64> {
    if x.len() != reference.len() {
        return Err(Error::DimensionMismatch { expected: reference.len(), got: x.len() });
    }
    Ok(x.iter()
        .zip(reference)
        .map(|(a, b)| (a - rational_to_f64(b)).abs())
        .fold(0.0, max_nan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example31, example32};

    #[test]
    fn exact_report_uses_fractions() {
        let r = run_solve(&example31(), Method::Sbtls, ScalarMode::ExactRational, &RunOptions::default()).unwrap();
        assert!(r.x.iter().any(|s| s.contains('/')));
        assert_eq!(r.residual_inf, "0");
        assert_eq!(r.mode, "exact");
        let g = run_solve(&example31(), Method::Gauss, ScalarMode::ExactRational, &RunOptions::default()).unwrap();
        assert_eq!(g.x, r.x);
        assert_eq!(g.determinant, r.determinant);
    }

    #[test]
    fn float_gauss_has_no_flops() {
        let r = run_solve(&example31(), Method::Gauss, ScalarMode::Float64, &RunOptions::default()).unwrap();
        assert_eq!(r.flops, 0);
        assert!(r.residual_inf.parse::<f64>().unwrap() < 1e-10);
    }

    #[test]
    fn float_zero_pivot_propagates() {
        let err = run_solve(&example32(), Method::Sbtls, ScalarMode::Float64, &RunOptions::default()).unwrap_err();
        assert!(matches!(err, Error::ZeroPivot { index: 1 }));
    }

    #[test]
    fn nan_errors_are_not_hidden() {
        assert!(error_inf(&[1.0, f64::NAN], &[crate::scalar::rat(1), crate::scalar::rat(1)]).unwrap().is_nan());
        assert_eq!(error_inf(&[1.5, 0.0], &[crate::scalar::rat(1), crate::scalar::rat(0)]).unwrap(), 0.5);
    }

    #[test]
    fn report_json_round_trip() {
        let r = run_solve(&example32(), Method::Smw, ScalarMode::ExactRational, &RunOptions::default()).unwrap();
        let back: SolveReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.x_f64(), vec![1.0; 10]);
    }
}
