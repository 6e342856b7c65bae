//! LU factorization and solver for bordered tridiagonal systems.
//!
//! `L` is unit lower triangular with sub-diagonal multipliers `c_i / d_(i-1)`
//! and a dense last row `alpha`; `U` has the pivots `d` on the diagonal, the
//! original super-diagonal `b`, and a dense last column `beta`. Whenever an
//! exact pivot comes out as zero it is replaced by the symbol `t`; the
//! solution is computed as a rational function of `t` and evaluated at
//! `t = 0` at the very end.

use crate::error::{Error, Result};
use crate::flops::Flops;
use crate::oracle::DenseMatrix;
use crate::scalar::{Scalar, ZeroTest};
use crate::system::BorderedSystem;

#[derive(Clone, Debug, PartialEq)]
pub struct BorderedFactorization<S> {
    /// Pivots `d_1..d_n`.
    pub d: Vec<S>,
    /// `c_(k+1) / d_k` for rows 1..n-2 (zero-based), i.e. `multipliers[k - 1]`
    /// is the sub-diagonal entry of `L` in row `k`.
    pub multipliers: Vec<S>,
    /// Last row of `L`, `alpha_1..alpha_(n-1)`.
    pub alpha: Vec<S>,
    /// Last column of `U`, `beta_1..beta_(n-1)`.
    pub beta: Vec<S>,
    /// One-based indices of pivots replaced by `t`, increasing.
    pub subs: Vec<usize>,
    pub source: BorderedSystem<S>,
}

impl<S> BorderedFactorization<S> {
    pub fn n(&self) -> usize {
        self.d.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution<S> {
    pub x: Vec<S>,
    pub determinant: S,
    pub subs_count: usize,
    pub flops: u64,
}

/// Solver state before `t = 0` is substituted.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicSolve<S> {
    pub factorization: BorderedFactorization<S>,
    pub z: Vec<S>,
    /// Solution of the perturbed system, still a function of `t`.
    pub x: Vec<S>,
    pub flops: u64,
}

/// Replaces a zero pivot by `t` (exact) or reports it (float).
pub(crate) fn settle_pivot<S: Scalar>(
    d: S,
    scale: f64,
    index: usize,
    test: &ZeroTest,
    subs: &mut Vec<usize>,
) -> Result<S> {
    if !d.is_zero_within(scale, test) {
        return Ok(d);
    }
    match S::symbol() {
        Some(t) => {
            subs.push(index);
            Ok(t)
        }
        None => Err(Error::ZeroPivot { index }),
    }
}

pub fn factor<S: Scalar>(sys: &BorderedSystem<S>, test: &ZeroTest) -> Result<BorderedFactorization<S>> {
    let mut flops = Flops::new();
    factor_counted(sys, test, &mut flops)
}

fn factor_counted<S: Scalar>(
    sys: &BorderedSystem<S>,
    test: &ZeroTest,
    fl: &mut Flops,
) -> Result<BorderedFactorization<S>> {
    let n = sys.n;
    let last = n - 1;
    let mut subs = Vec::new();
    let mut d = Vec::with_capacity(n);
    let mut multipliers = Vec::with_capacity(n - 2);

    d.push(settle_pivot(sys.a[0].clone(), sys.a[0].magnitude(), 1, test, &mut subs)?);
    for k in 1..last {
        let l = fl.div(&sys.c[k - 1], &d[k - 1])?;
        let update = fl.mul(&sys.b[k - 1], &l);
        let scale = sys.a[k].magnitude().max(update.magnitude());
        let dk = fl.sub(&sys.a[k], &update);
        d.push(settle_pivot(dk, scale, k + 1, test, &mut subs)?);
        multipliers.push(l);
    }

    let mut alpha = Vec::with_capacity(last);
    let mut beta = Vec::with_capacity(last);
    alpha.push(fl.div(&sys.q[0], &d[0])?);
    beta.push(sys.p[0].clone());
    for k in 1..last {
        // the final entries couple to the corner through c_n and b_(n-1)
        let (q_k, p_k) = if k + 1 < last {
            (&sys.q[k], &sys.p[k])
        } else {
            (&sys.c[last - 1], &sys.b[last - 1])
        };
        let t = fl.mul(&alpha[k - 1], &sys.b[k - 1]);
        let num = fl.sub(q_k, &t);
        alpha.push(fl.div(&num, &d[k])?);
        let t = fl.mul(&beta[k - 1], &multipliers[k - 1]);
        beta.push(fl.sub(p_k, &t));
    }

    let mut dn = sys.a[last].clone();
    let mut scale = dn.magnitude();
    for (al, be) in alpha.iter().zip(&beta) {
        let prod = fl.mul(al, be);
        scale = scale.max(prod.magnitude());
        dn = fl.sub(&dn, &prod);
    }
    d.push(settle_pivot(dn, scale, n, test, &mut subs)?);

    Ok(BorderedFactorization { d, multipliers, alpha, beta, subs, source: sys.clone() })
}

/// Product of the pivots, with `t = 0` substituted.
///
/// A singular matrix yields zero.
pub fn determinant<S: Scalar>(f: &BorderedFactorization<S>) -> Result<S> {
    let prod = f.d.iter().skip(1).fold(f.d[0].clone(), |acc, d| acc.mul(d));
    // det(A + tD) is a polynomial in t, so no pole can appear here
    Ok(prod.at_zero()?)
}

/// Forward sweep and back-substitution over an existing factorization.
/// The result is still a function of `t`.
fn sweep<S: Scalar>(f: &BorderedFactorization<S>, y: &[S], fl: &mut Flops) -> Result<(Vec<S>, Vec<S>)> {
    let n = f.n();
    let last = n - 1;
    let sys = &f.source;

    let mut z = Vec::with_capacity(n);
    z.push(y[0].clone());
    for k in 1..last {
        let t = fl.mul(&f.multipliers[k - 1], &z[k - 1]);
        z.push(fl.sub(&y[k], &t));
    }
    let mut zn = y[last].clone();
    for (al, zj) in f.alpha.iter().zip(&z) {
        let t = fl.mul(al, zj);
        zn = fl.sub(&zn, &t);
    }
    z.push(zn);

    let mut x = vec![S::zero(); n];
    x[last] = fl.div(&z[last], &f.d[last])?;
    let t = fl.mul(&f.beta[last - 1], &x[last]);
    let num = fl.sub(&z[last - 1], &t);
    x[last - 1] = fl.div(&num, &f.d[last - 1])?;
    for k in (0..last - 1).rev() {
        let t1 = fl.mul(&sys.b[k], &x[k + 1]);
        let t2 = fl.mul(&f.beta[k], &x[last]);
        let num = fl.sub(&z[k], &t1);
        let num = fl.sub(&num, &t2);
        x[k] = fl.div(&num, &f.d[k])?;
    }
    Ok((z, x))
}

/// Runs the elimination without substituting `t = 0`.
pub fn solve_sbtls_symbolic<S: Scalar>(sys: &BorderedSystem<S>, test: &ZeroTest) -> Result<SymbolicSolve<S>> {
    let mut fl = Flops::new();
    let factorization = factor_counted(sys, test, &mut fl)?;
    let (z, x) = sweep(&factorization, &sys.y, &mut fl)?;
    Ok(SymbolicSolve { factorization, z, x, flops: fl.count() })
}

pub fn solve_sbtls<S: Scalar>(sys: &BorderedSystem<S>, test: &ZeroTest) -> Result<Solution<S>> {
    let mut fl = Flops::new();
    let f = factor_counted(sys, test, &mut fl)?;
    let det = determinant(&f)?;
    if det.is_exact_zero() {
        return Err(Error::Singular);
    }
    let (_, x) = sweep(&f, &sys.y, &mut fl)?;
    let x = x
        .iter()
        .map(|v| v.at_zero().map_err(|_| Error::Singular))
        .collect::<Result<Vec<_>>>()?;
    Ok(Solution { x, determinant: det, subs_count: f.subs.len(), flops: fl.count() })
}

/// Dense `L * U`. With substitutions this is `A + t * sum(e_i e_i^T)` over `subs`.
pub fn reconstruct_lu<S: Scalar>(f: &BorderedFactorization<S>) -> DenseMatrix<S> {
    let n = f.n();
    let last = n - 1;
    let mut l = DenseMatrix::filled(n, S::zero());
    let mut u = DenseMatrix::filled(n, S::zero());
    for k in 0..n {
        l[(k, k)] = S::one();
        u[(k, k)] = f.d[k].clone();
    }
    for k in 1..last {
        l[(k, k - 1)] = f.multipliers[k - 1].clone();
    }
    for j in 0..last {
        l[(last, j)] = f.alpha[j].clone();
        u[(j, last)] = f.beta[j].clone();
    }
    for k in 0..last - 1 {
        u[(k, k + 1)] = f.source.b[k].clone();
    }
    let mut out = DenseMatrix::filled(n, S::zero());
    for r in 0..n {
        for c in 0..n {
            let mut acc = S::zero();
            for k in 0..=r.min(c) {
                let (lv, uv) = (&l[(r, k)], &u[(k, c)]);
                if lv.is_exact_zero() {
                    continue;
                }
                acc = acc.add(&lv.mul(uv));
            }
            out[(r, c)] = acc;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example31, example32, identity_like};
    use crate::scalar::{rat, ratio, Exact};

    fn exact(sys: &BorderedSystem) -> BorderedSystem<Exact> {
        sys.to_scalar()
    }

    #[test]
    fn example31_leading_pivots() {
        let f = factor(&exact(&example31()), &ZeroTest::default()).unwrap();
        assert_eq!(f.d[0], Exact::int(32));
        // 26 - 3 * 27 / 32
        assert_eq!(f.d[1], Exact::Rat(ratio(751, 32)));
        assert!(f.subs.is_empty());
    }

    #[test]
    fn example32_substitutes_first_pivot() {
        let f = factor(&exact(&example32()), &ZeroTest::default()).unwrap();
        assert_eq!(f.d[0], Exact::t());
        assert_eq!(f.subs, vec![1]);
    }

    #[test]
    fn float_zero_pivot_is_reported() {
        let err = factor(&example32().to_scalar::<f64>(), &ZeroTest::default()).unwrap_err();
        assert!(matches!(err, Error::ZeroPivot { index: 1 }));
        assert!(err.to_string().contains("--mode exact"));
    }

    #[test]
    fn identity_like_determinant_and_solution() {
        let mut sys = identity_like(6);
        sys.y = (1..=6).map(rat).collect();
        let sol = solve_sbtls(&exact(&sys), &ZeroTest::default()).unwrap();
        assert_eq!(sol.determinant, Exact::int(1));
        assert_eq!(sol.x, (1..=6).map(Exact::int).collect::<Vec<_>>());
        let lu = reconstruct_lu(&factor(&exact(&sys), &ZeroTest::default()).unwrap());
        for r in 0..6 {
            for c in 0..6 {
                assert_eq!(lu[(r, c)], Exact::int((r == c) as i64));
            }
        }
    }

    #[test]
    fn zero_first_row_is_singular() {
        let mut sys = identity_like(5);
        sys.a[0] = rat(0);
        let f = factor(&exact(&sys), &ZeroTest::default()).unwrap();
        assert_eq!(determinant(&f).unwrap(), Exact::int(0));
        assert!(matches!(solve_sbtls(&exact(&sys), &ZeroTest::default()), Err(Error::Singular)));
    }

    #[test]
    fn corner_pivot_can_be_substituted() {
        // 4x4 where d_4 vanishes: make A singular at the corner only via the
        // Schur complement, then check the singularity is detected.
        let mut sys = identity_like(4);
        sys.a[3] = rat(0);
        let f = factor(&exact(&sys), &ZeroTest::default()).unwrap();
        assert_eq!(f.subs, vec![4]);
        assert!(matches!(solve_sbtls(&exact(&sys), &ZeroTest::default()), Err(Error::Singular)));
    }

    #[test]
    fn float_matches_exact_on_example31() {
        let xf = solve_sbtls(&example31().to_scalar::<f64>(), &ZeroTest::default()).unwrap().x;
        let xe = solve_sbtls(&exact(&example31()), &ZeroTest::default()).unwrap().x;
        for (f, e) in xf.iter().zip(&xe) {
            assert!((f - e.to_f64()).abs() < 1e-12);
        }
    }
}
