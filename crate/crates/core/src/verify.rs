//! Cross-checks the structured solvers against the dense exact oracle.

use rayon::prelude::*;

use crate::error::Result;
use crate::generators::{random, SplitMix64};
use crate::oracle::bareiss_solve;
use crate::sbtls::{determinant, factor, solve_sbtls};
use crate::scalar::{Exact, ZeroTest};
use crate::smw::{solve_smw, SmwOptions};
use crate::system::BorderedSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trial {
    pub n: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifySummary {
    pub passed: usize,
    pub failed: usize,
    /// One line per failing trial, in trial order.
    pub failures: Vec<String>,
}

/// Trial sizes and seeds drawn from SplitMix64(`seed`): for each trial, one
/// draw for `n` in `n_min..=n_max` and one for the system seed.
pub fn plan(trials: usize, n_min: usize, n_max: usize, seed: u64) -> Vec<Trial> {
    let mut rng = SplitMix64::new(seed);
    let span = (n_max - n_min + 1) as u64;
    (0..trials)
        .map(|_| {
            let n = n_min + rng.below(span) as usize;
            Trial { n, seed: rng.next_u64() }
        })
        .collect()
}

/// Compares sbtls, smw and Bareiss on one system. `Ok(None)` means agreement.
pub fn check_system(sys: &BorderedSystem) -> Result<Option<String>> {
    let exact: BorderedSystem<Exact> = sys.to_scalar();
    let test = ZeroTest::default();
    let (x_ref, det_ref) = bareiss_solve(&sys.to_dense(), &sys.y)?;
    let x_ref: Vec<Exact> = x_ref.into_iter().map(Exact::Rat).collect();
    let det_ref = Exact::Rat(det_ref);

    let lu = solve_sbtls(&exact, &test)?;
    if lu.x != x_ref {
        return Ok(Some("sbtls solution differs from Bareiss".into()));
    }
    let smw = solve_smw(&exact, &SmwOptions::default())?;
    if smw.x != x_ref {
        return Ok(Some("smw solution differs from Bareiss".into()));
    }
    if determinant(&factor(&exact, &test)?)? != det_ref {
        return Ok(Some("determinant differs from Bareiss".into()));
    }
    if smw.determinant != det_ref {
        return Ok(Some("smw determinant differs from Bareiss".into()));
    }
    Ok(None)
}

pub fn run_verify(trials: usize, n_min: usize, n_max: usize, seed: u64) -> Result<VerifySummary> {
    let plan = plan(trials, n_min, n_max, seed);
    let outcomes: Vec<Option<String>> = plan
        .par_iter()
        .map(|t| {
            let outcome = random(t.n, t.seed, 9).and_then(|sys| check_system(&sys));
            match outcome {
                Ok(None) => None,
                Ok(Some(why)) => Some(format!("n={} seed={}: {why}", t.n, t.seed)),
                Err(e) => Some(format!("n={} seed={}: {e}", t.n, t.seed)),
            }
        })
        .collect();
    let mut summary = VerifySummary::default();
    for o in outcomes {
        match o {
            None => summary.passed += 1,
            Some(line) => {
                summary.failed += 1;
                summary.failures.push(line);
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_is_deterministic_and_in_range() {
        let p = plan(30, 4, 6, 11);
        assert_eq!(p, plan(30, 4, 6, 11));
        assert!(p.iter().all(|t| (4..=6).contains(&t.n)));
    }

    #[test]
    fn small_verify_passes() {
        let s = run_verify(10, 4, 8, 1).unwrap();
        assert_eq!(s, VerifySummary { passed: 10, failed: 0, failures: vec![] });
    }
}
