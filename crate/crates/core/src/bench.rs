//! Error/time/flop tables over a family of systems.

use serde::Serialize;

use crate::error::Result;
use crate::generators::{generate, Family, FamilySpec};
use crate::oracle::bareiss_solve;
use crate::report::{error_inf, run_solve, Method, RunOptions};
use crate::scalar::{rat, Rational, ScalarMode};

/// Dense elimination is cubic; larger sizes are skipped.
pub const GAUSS_MAX_N: usize = 2000;
pub const REPETITIONS: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub method: Method,
    /// `None` when the cell was skipped.
    pub error_inf: Option<f64>,
    pub time_s: Option<f64>,
    pub flops: Option<u64>,
}

fn reference(family: Family, sys: &crate::system::BorderedSystem) -> Result<Vec<Rational>> {
    if family.solution_is_ones() {
        Ok(vec![rat(1); sys.n])
    } else {
        Ok(bareiss_solve(&sys.to_dense(), &sys.y)?.0)
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    v[v.len() / 2]
}

/// Runs every (size, method) cell in floating point, sequentially.
pub fn run_bench(family: Family, sizes: &[usize], methods: &[Method]) -> Result<Vec<BenchRow>> {
    let opts = RunOptions::default();
    let mut rows = Vec::new();
    for &n in sizes {
        let sys = generate(&FamilySpec::new(family, n))?;
        let exact = reference(family, &sys)?;
        for &method in methods {
            if method == Method::Gauss && sys.n > GAUSS_MAX_N {
                rows.push(BenchRow { n: sys.n, method, error_inf: None, time_s: None, flops: None });
                continue;
            }
            let mut times = Vec::with_capacity(REPETITIONS);
            let mut last = None;
            for _ in 0..REPETITIONS {
                let report = run_solve(&sys, method, ScalarMode::Float64, &opts)?;
                times.push(report.wall_time_s);
                last = Some(report);
            }
            let report = last.expect("at least one repetition");
            rows.push(BenchRow {
                n: sys.n,
                method,
                error_inf: Some(error_inf(&report.x_f64(), &exact)?),
                time_s: Some(median(times)),
                flops: Some(report.flops),
            });
        }
    }
    Ok(rows)
}

fn cell<T: std::fmt::Display>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map(f).unwrap_or_else(|| "skipped".to_string())
}

pub fn format_table(rows: &[BenchRow]) -> String {
    let mut out = format!("{:>8}  {:<6}  {:>12}  {:>12}  {:>10}\n", "n", "method", "error_inf", "time_s", "flops");
    for r in rows {
        out.push_str(&format!(
            "{:>8}  {:<6}  {:>12}  {:>12}  {:>10}\n",
            r.n,
            r.method.name(),
            cell(r.error_inf, |e| format!("{e:.4e}")),
            cell(r.time_s, |t| format!("{t:.6}")),
            cell(r.flops, |f| f.to_string()),
        ));
    }
    out
}

pub fn format_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n,method,error_inf,time_s,flops\n");
    for r in rows {
        let opt = |v: Option<String>| v.unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            r.method.name(),
            opt(r.error_inf.map(|e| format!("{e:e}"))),
            opt(r.time_s.map(|t| t.to_string())),
            opt(r.flops.map(|f| f.to_string())),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_example33_bench() {
        let rows = run_bench(Family::Example33, &[10, 20], &[Method::Sbtls, Method::Smw, Method::Gauss]).unwrap();
        assert_eq!(rows.len(), 6);
        for r in &rows {
            assert!(r.error_inf.unwrap() <= 1e-6, "{r:?}");
        }
        let csv = format_csv(&rows);
        assert_eq!(csv.lines().count(), 7);
        assert!(format_table(&rows).contains("sbtls"));
    }

    #[test]
    fn example31_uses_exact_reference() {
        let rows = run_bench(Family::Example31, &[7], &[Method::Sbtls]).unwrap();
        assert!(rows[0].error_inf.unwrap() < 1e-12);
    }

    #[test]
    fn oversized_gauss_is_skipped() {
        let rows = run_bench(Family::Example33, &[GAUSS_MAX_N + 1], &[Method::Gauss]).unwrap();
        assert_eq!(rows[0].error_inf, None);
        assert!(format_table(&rows).contains("skipped"));
    }
}
