//! Block solver for bordered tridiagonal systems.
//!
//! The system is split as
//!
//! ```text
//! [ M1  V  ] [x' ]   [y' ]
//! [ U^T m2 ] [x''] = [y'']
//! ```
//!
//! with `M1` the leading tridiagonal block. Eliminating `x''` and applying
//! the Sherman-Morrison-Woodbury identity reduces the solve to two
//! tridiagonal solves with `M1` (right-hand sides `y_hat` and `V`) plus a
//! scalar correction.

use crate::error::{Error, Result};
use crate::flops::Flops;
use crate::scalar::{Scalar, ZeroTest};
use crate::sbtls::{settle_pivot, Solution};
use crate::system::BorderedSystem;

/// Tridiagonal matrix: `lower[k]` is at `(k+1, k)`, `upper[k]` at `(k, k+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tridiagonal<S> {
    pub diag: Vec<S>,
    pub upper: Vec<S>,
    pub lower: Vec<S>,
}

impl<S: Scalar> Tridiagonal<S> {
    pub fn new(diag: Vec<S>, upper: Vec<S>, lower: Vec<S>) -> Result<Self> {
        let m = diag.len();
        if m == 0 {
            return Err(Error::BadDimensions("empty tridiagonal matrix".into()));
        }
        for (name, len) in [("upper", upper.len()), ("lower", lower.len())] {
            if len != m - 1 {
                return Err(Error::BadDimensions(format!(
                    "|{name}| = {len}, expected {} for m = {m}",
                    m - 1
                )));
            }
        }
        Ok(Tridiagonal { diag, upper, lower })
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn multiply(&self, v: &[S]) -> Vec<S> {
        let m = self.size();
        (0..m)
            .map(|k| {
                let mut acc = self.diag[k].mul(&v[k]);
                if k > 0 {
                    acc = acc.add(&self.lower[k - 1].mul(&v[k - 1]));
                }
                if k + 1 < m {
                    acc = acc.add(&self.upper[k].mul(&v[k + 1]));
                }
                acc
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalSystem<S> {
    pub matrix: Tridiagonal<S>,
    pub rhs: Vec<S>,
}

impl<S: Scalar> TridiagonalSystem<S> {
    pub fn new(matrix: Tridiagonal<S>, rhs: Vec<S>) -> Result<Self> {
        if rhs.len() != matrix.size() {
            return Err(Error::DimensionMismatch { expected: matrix.size(), got: rhs.len() });
        }
        Ok(TridiagonalSystem { matrix, rhs })
    }
}

/// Thomas elimination result before `t = 0` is substituted.
#[derive(Clone, Debug, PartialEq)]
pub struct ThomasOutcome<S> {
    pub x: Vec<S>,
    pub pivots: Vec<S>,
    /// One-based indices of pivots replaced by `t`.
    pub subs: Vec<usize>,
}

fn thomas_counted<S: Scalar>(
    mat: &Tridiagonal<S>,
    rhs: &[S],
    test: &ZeroTest,
    fl: &mut Flops,
) -> Result<ThomasOutcome<S>> {
    let m = mat.size();
    let mut subs = Vec::new();
    let mut pivots = Vec::with_capacity(m);
    let mut g = Vec::with_capacity(m);
    pivots.push(settle_pivot(mat.diag[0].clone(), mat.diag[0].magnitude(), 1, test, &mut subs)?);
    g.push(rhs[0].clone());
    for k in 1..m {
        let l = fl.div(&mat.lower[k - 1], &pivots[k - 1])?;
        let update = fl.mul(&l, &mat.upper[k - 1]);
        let scale = mat.diag[k].magnitude().max(update.magnitude());
        let w = fl.sub(&mat.diag[k], &update);
        pivots.push(settle_pivot(w, scale, k + 1, test, &mut subs)?);
        let t = fl.mul(&l, &g[k - 1]);
        g.push(fl.sub(&rhs[k], &t));
    }

    let mut x = vec![S::zero(); m];
    x[m - 1] = fl.div(&g[m - 1], &pivots[m - 1])?;
    for k in (0..m - 1).rev() {
        let t = fl.mul(&mat.upper[k], &x[k + 1]);
        let num = fl.sub(&g[k], &t);
        x[k] = fl.div(&num, &pivots[k])?;
    }
    Ok(ThomasOutcome { x, pivots, subs })
}

/// Thomas algorithm, without substituting `t = 0`.
pub fn thomas_symbolic<S: Scalar>(sys: &TridiagonalSystem<S>, test: &ZeroTest) -> Result<ThomasOutcome<S>> {
    thomas_counted(&sys.matrix, &sys.rhs, test, &mut Flops::new())
}

fn product<S: Scalar>(values: &[S]) -> S {
    values.iter().fold(S::one(), |acc, v| acc.mul(v))
}

/// Thomas algorithm with zero pivots replaced by `t`, evaluated at `t = 0`.
pub fn thomas_solve<S: Scalar>(sys: &TridiagonalSystem<S>, test: &ZeroTest) -> Result<Vec<S>> {
    let out = thomas_symbolic(sys, test)?;
    if !out.subs.is_empty() && product(&out.pivots).at_zero()?.is_exact_zero() {
        return Err(Error::Singular);
    }
    out.x.iter().map(|v| v.at_zero().map_err(|_| Error::Singular)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Partition<S> {
    pub m1: Tridiagonal<S>,
    pub m2: S,
    /// `[q_1..q_(n-2), c_n]`
    pub u: Vec<S>,
    /// `[p_1..p_(n-2), b_(n-1)]`
    pub v: Vec<S>,
    pub y_head: Vec<S>,
    pub y_tail: S,
    /// `y_head - v * (y_tail / m2)`
    pub y_hat: Vec<S>,
    /// Whether a zero corner `a_n` was replaced by `t`.
    pub corner_substituted: bool,
}

pub fn partition<S: Scalar>(sys: &BorderedSystem<S>, test: &ZeroTest) -> Result<Partition<S>> {
    partition_counted(sys, test, &mut Flops::new())
}

fn partition_counted<S: Scalar>(
    sys: &BorderedSystem<S>,
    test: &ZeroTest,
    fl: &mut Flops,
) -> Result<Partition<S>> {
    let n = sys.n;
    let last = n - 1;
    let m1 = Tridiagonal {
        diag: sys.a[..last].to_vec(),
        upper: sys.b[..last - 1].to_vec(),
        lower: sys.c[..last - 1].to_vec(),
    };
    let mut u = sys.q.clone();
    u.push(sys.c[last - 1].clone());
    let mut v = sys.p.clone();
    v.push(sys.b[last - 1].clone());

    let corner = &sys.a[last];
    let scale = u.iter().chain(&v).map(Scalar::magnitude).fold(corner.magnitude(), f64::max);
    let (m2, corner_substituted) = if corner.is_zero_within(scale, test) {
        (S::symbol().ok_or(Error::ZeroCorner)?, true)
    } else {
        (corner.clone(), false)
    };

    let y_head = sys.y[..last].to_vec();
    let y_tail = sys.y[last].clone();
    let ratio = fl.div(&y_tail, &m2)?;
    let y_hat = y_head
        .iter()
        .zip(&v)
        .map(|(yh, vk)| {
            let t = fl.mul(vk, &ratio);
            fl.sub(yh, &t)
        })
        .collect();
    Ok(Partition { m1, m2, u, v, y_head, y_tail, y_hat, corner_substituted })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmwOptions {
    pub zero_test: ZeroTest,
    /// Run the two tridiagonal solves on separate threads.
    pub concurrent: bool,
}

impl Default for SmwOptions {
    fn default() -> Self {
        SmwOptions { zero_test: ZeroTest::default(), concurrent: true }
    }
}

fn dot<S: Scalar>(a: &[S], b: &[S], fl: &mut Flops) -> S {
    let mut acc = fl.mul(&a[0], &b[0]);
    for (x, y) in a.iter().zip(b).skip(1) {
        let t = fl.mul(x, y);
        acc = fl.add(&acc, &t);
    }
    acc
}

pub fn solve_smw<S: Scalar>(sys: &BorderedSystem<S>, opts: &SmwOptions) -> Result<Solution<S>> {
    let test = &opts.zero_test;
    let mut fl = Flops::new();
    let part = partition_counted(sys, test, &mut fl)?;

    let solve_r = || {
        let mut f = Flops::new();
        thomas_counted(&part.m1, &part.y_hat, test, &mut f).map(|o| (o, f))
    };
    let solve_q = || {
        let mut f = Flops::new();
        thomas_counted(&part.m1, &part.v, test, &mut f).map(|o| (o, f))
    };
    let (r, qbar) = if opts.concurrent {
        rayon::join(solve_r, solve_q)
    } else {
        (solve_r(), solve_q())
    };
    let (r, fr) = r?;
    let (qbar, fq) = qbar?;
    fl += fr;
    fl += fq;

    let ur = dot(&part.u, &r.x, &mut fl);
    let uq = dot(&part.u, &qbar.x, &mut fl);
    let scale = part.m2.magnitude().max(uq.magnitude());
    let capacitance = fl.sub(&part.m2, &uq);
    if capacitance.is_zero_within(scale, test) {
        return Err(Error::Singular);
    }

    // det A = det(M1) * (m2 - U^T M1^-1 V)
    let determinant = product(&r.pivots).mul(&capacitance).at_zero()?;
    if determinant.is_exact_zero() {
        return Err(Error::Singular);
    }

    let coef = fl.div(&ur, &capacitance)?;
    let mut x: Vec<S> = r
        .x
        .iter()
        .zip(&qbar.x)
        .map(|(rk, qk)| {
            let t = fl.mul(qk, &coef);
            fl.add(rk, &t)
        })
        .collect();
    let ux = dot(&part.u, &x, &mut fl);
    let num = fl.sub(&part.y_tail, &ux);
    x.push(fl.div(&num, &part.m2)?);

    let x = x
        .iter()
        .map(|v| v.at_zero().map_err(|_| Error::Singular))
        .collect::<Result<Vec<_>>>()?;
    Ok(Solution {
        x,
        determinant,
        subs_count: r.subs.len() + usize::from(part.corner_substituted),
        flops: fl.count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example31, example32};
    use crate::scalar::{rat, ratio, Exact};

    fn tri(diag: &[i64], upper: &[i64], lower: &[i64]) -> Tridiagonal<Exact> {
        let v = |s: &[i64]| s.iter().map(|&k| Exact::int(k)).collect();
        Tridiagonal::new(v(diag), v(upper), v(lower)).unwrap()
    }

    #[test]
    fn symmetric_two_by_two() {
        let sys = TridiagonalSystem::new(tri(&[2, 2], &[1], &[1]), vec![Exact::int(3); 2]).unwrap();
        assert_eq!(thomas_solve(&sys, &ZeroTest::default()).unwrap(), vec![Exact::int(1); 2]);
    }

    #[test]
    fn identity_returns_rhs() {
        let rhs: Vec<Exact> = [4, -1, 7, 0].iter().map(|&k| Exact::int(k)).collect();
        let sys = TridiagonalSystem::new(tri(&[1, 1, 1, 1], &[0, 0, 0], &[0, 0, 0]), rhs.clone()).unwrap();
        assert_eq!(thomas_solve(&sys, &ZeroTest::default()).unwrap(), rhs);
    }

    #[test]
    fn zero_leading_pivot_exact() {
        // [[0,1],[1,0]] x = [2,3]  =>  x = [3,2]
        let sys = TridiagonalSystem::new(tri(&[0, 0], &[1], &[1]), vec![Exact::int(2), Exact::int(3)]).unwrap();
        let out = thomas_symbolic(&sys, &ZeroTest::default()).unwrap();
        assert_eq!(out.subs, vec![1]);
        assert_eq!(thomas_solve(&sys, &ZeroTest::default()).unwrap(), vec![Exact::int(3), Exact::int(2)]);
        let float = TridiagonalSystem::new(
            Tridiagonal::new(vec![0.0, 0.0], vec![1.0], vec![1.0]).unwrap(),
            vec![2.0, 3.0],
        )
        .unwrap();
        assert!(matches!(thomas_solve(&float, &ZeroTest::default()), Err(Error::ZeroPivot { index: 1 })));
    }

    #[test]
    fn singular_tridiagonal_exact() {
        let sys = TridiagonalSystem::new(tri(&[1, 1], &[1], &[1]), vec![Exact::int(1); 2]).unwrap();
        assert!(matches!(thomas_solve(&sys, &ZeroTest::default()), Err(Error::Singular)));
    }

    #[test]
    fn tridiagonal_shape_checks() {
        assert!(Tridiagonal::<f64>::new(vec![1.0, 2.0], vec![], vec![1.0]).is_err());
        assert!(TridiagonalSystem::new(Tridiagonal::new(vec![1.0], vec![], vec![]).unwrap(), vec![]).is_err());
    }

    #[test]
    fn example31_partition() {
        let sys: BorderedSystem<Exact> = example31().to_scalar();
        let part = partition(&sys, &ZeroTest::default()).unwrap();
        let ints = |v: &[i64]| v.iter().map(|&k| Exact::int(k)).collect::<Vec<_>>();
        assert_eq!(part.m2, Exact::int(33));
        assert_eq!(part.u, ints(&[29, 65, 9, 45, 72, 59]));
        assert_eq!(part.v, ints(&[9, 62, 35, 71, 53, 42]));
        // 90 - 9 * 56 / 33
        assert_eq!(part.y_hat[0], Exact::Rat(ratio(822, 11)));
        assert!(!part.corner_substituted);
    }

    #[test]
    fn partition_without_interior_borders() {
        let mut sys = example31();
        sys.p.iter_mut().chain(sys.q.iter_mut()).for_each(|v| *v = rat(0));
        let part = partition(&sys.to_scalar::<Exact>(), &ZeroTest::default()).unwrap();
        assert_eq!(part.u, [0, 0, 0, 0, 0, 59].map(Exact::int).to_vec());
        assert_eq!(part.v, [0, 0, 0, 0, 0, 42].map(Exact::int).to_vec());
    }

    #[test]
    fn zero_corner() {
        let mut sys = example31();
        sys.a[6] = rat(0);
        let exact = sys.to_scalar::<Exact>();
        let part = partition(&exact, &ZeroTest::default()).unwrap();
        assert!(part.corner_substituted);
        assert_eq!(part.m2, Exact::t());
        assert!(matches!(
            partition(&sys.to_scalar::<f64>(), &ZeroTest::default()),
            Err(Error::ZeroCorner)
        ));
        let smw = solve_smw(&exact, &SmwOptions::default()).unwrap();
        let lu = crate::sbtls::solve_sbtls(&exact, &ZeroTest::default()).unwrap();
        assert_eq!(smw.x, lu.x);
        assert_eq!(smw.determinant, lu.determinant);
    }

    #[test]
    fn example32_exact() {
        let sol = solve_smw(&example32().to_scalar::<Exact>(), &SmwOptions::default()).unwrap();
        assert_eq!(sol.x, vec![Exact::int(1); 10]);
        assert_eq!(sol.subs_count, 1);
    }
}
