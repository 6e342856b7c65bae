//! Dense reference solvers used to check the structured ones.
//!
//! Neither solver knows about the symbol `t`: they pivot by row exchange.

use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, ZeroTest};

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    m: usize,
    entries: Vec<T>,
}

impl<T: Clone> DenseMatrix<T> {
    pub fn filled(m: usize, value: T) -> Self {
        DenseMatrix { m, entries: vec![value; m * m] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let m = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch { expected: m, got: bad.len() });
        }
        Ok(DenseMatrix { m, entries: rows.into_iter().flatten().collect() })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.m..(r + 1) * self.m]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> DenseMatrix<U> {
        DenseMatrix { m: self.m, entries: self.entries.iter().map(f).collect() }
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.entries[r * self.m + c]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.entries[r * self.m + c]
    }
}

impl DenseMatrix<Rational> {
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.m)
            .map(|r| self.row(r).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }
}

impl DenseMatrix<f64> {
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.m)
            .map(|r| self.row(r).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }
}

/// Gaussian elimination with partial pivoting.
///
/// A pivot is rejected when `|pivot| <= tau * scale`, with `scale` the
/// largest magnitude in the original row.
pub fn gauss_solve(a: &DenseMatrix<f64>, rhs: &[f64]) -> Result<Vec<f64>> {
    gauss_solve_with(a, rhs, &ZeroTest::default())
}

pub fn gauss_solve_with(a: &DenseMatrix<f64>, rhs: &[f64], test: &ZeroTest) -> Result<Vec<f64>> {
    gauss_eliminate(a, rhs, test).map(|(x, _)| x)
}

/// Solution and determinant (product of pivots with the exchange sign).
pub fn gauss_eliminate(a: &DenseMatrix<f64>, rhs: &[f64], test: &ZeroTest) -> Result<(Vec<f64>, f64)> {
    let m = a.m;
    if rhs.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: rhs.len() });
    }
    let mut w = a.entries.clone();
    let mut b = rhs.to_vec();
    let mut det = 1.0;
    let mut scale: Vec<f64> = (0..m)
        .map(|r| a.row(r).iter().fold(0.0f64, |s, v| s.max(v.abs())))
        .collect();
    for k in 0..m {
        let (piv, best) = (k..m)
            .map(|r| (r, w[r * m + k].abs()))
            .fold((k, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if best <= test.tau * scale[piv] || best == 0.0 {
            return Err(Error::Singular);
        }
        if piv != k {
            for col in 0..m {
                w.swap(k * m + col, piv * m + col);
            }
            b.swap(k, piv);
            scale.swap(k, piv);
            det = -det;
        }
        let pivot = w[k * m + k];
        det *= pivot;
        let (top, bottom) = w.split_at_mut((k + 1) * m);
        let pivot_row = &top[k * m..];
        for r in k + 1..m {
            let row = &mut bottom[(r - k - 1) * m..(r - k) * m];
            let f = row[k] / pivot;
            if f == 0.0 {
                continue;
            }
            row[k] = 0.0;
            for col in k + 1..m {
                row[col] -= f * pivot_row[col];
            }
            b[r] -= f * b[k];
        }
    }
    let mut x = vec![0.0; m];
    for k in (0..m).rev() {
        let row = &w[k * m..(k + 1) * m];
        let s: f64 = (k + 1..m).map(|j| row[j] * x[j]).sum();
        x[k] = (b[k] - s) / row[k];
    }
    Ok((x, det))
}

/// Fraction-free elimination over the rationals with row exchanges.
///
/// Returns the solution and the determinant.
pub fn bareiss_solve(a: &DenseMatrix<Rational>, rhs: &[Rational]) -> Result<(Vec<Rational>, Rational)> {
    let m = a.m;
    if rhs.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: rhs.len() });
    }
    // augmented [A | rhs], width m + 1
    let width = m + 1;
    let mut w: Vec<Rational> = Vec::with_capacity(m * width);
    for r in 0..m {
        w.extend_from_slice(a.row(r));
        w.push(rhs[r].clone());
    }
    let mut prev = Rational::one();
    let mut negate = false;
    for k in 0..m {
        let Some(piv) = (k..m).find(|&r| !w[r * width + k].is_zero()) else {
            return Err(Error::Singular);
        };
        if piv != k {
            for col in 0..width {
                w.swap(k * width + col, piv * width + col);
            }
            negate = !negate;
        }
        for r in k + 1..m {
            for col in k + 1..width {
                let v = (&w[k * width + k] * &w[r * width + col]
                    - &w[r * width + k] * &w[k * width + col])
                    / &prev;
                w[r * width + col] = v;
            }
            w[r * width + k] = Rational::zero();
        }
        prev = w[k * width + k].clone();
    }
    let det = if negate { -prev } else { prev };
    let mut x = vec![Rational::zero(); m];
    for k in (0..m).rev() {
        let mut s = w[k * width + m].clone();
        for j in k + 1..m {
            s -= &w[k * width + j] * &x[j];
        }
        x[k] = s / &w[k * width + k];
    }
    Ok((x, det))
}

/// Determinant by the same elimination; zero for singular matrices.
pub fn bareiss_determinant(a: &DenseMatrix<Rational>) -> Rational {
    let zeros = vec![Rational::zero(); a.m];
    match bareiss_solve(a, &zeros) {
        Ok((_, det)) => det,
        Err(_) => Rational::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rational_to_f64};

    fn rmat(rows: &[&[i64]]) -> DenseMatrix<Rational> {
        DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn two_by_two_determinant() {
        let a = rmat(&[&[1, 2], &[3, 4]]);
        let (x, det) = bareiss_solve(&a, &[rat(5), rat(11)]).unwrap();
        assert_eq!(det, rat(-2));
        assert_eq!(x, vec![rat(1), rat(2)]);
    }

    #[test]
    fn duplicate_rows_are_singular() {
        let a = rmat(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]]);
        assert!(matches!(bareiss_solve(&a, &[rat(1), rat(1), rat(1)]), Err(Error::Singular)));
        assert_eq!(bareiss_determinant(&a), rat(0));
    }

    #[test]
    fn bareiss_needs_row_exchange() {
        let a = rmat(&[&[0, 1], &[1, 0]]);
        let (x, det) = bareiss_solve(&a, &[rat(3), rat(4)]).unwrap();
        assert_eq!(det, rat(-1));
        assert_eq!(x, vec![rat(4), rat(3)]);
    }

    #[test]
    fn gauss_identity() {
        let mut a = DenseMatrix::filled(4, 0.0);
        for i in 0..4 {
            a[(i, i)] = 1.0;
        }
        let rhs = [1.0, -2.0, 3.5, 0.0];
        assert_eq!(gauss_solve(&a, &rhs).unwrap(), rhs.to_vec());
    }

    #[test]
    fn gauss_detects_singular() {
        let a = DenseMatrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(gauss_solve(&a, &[1.0, 2.0]), Err(Error::Singular)));
    }

    #[test]
    fn gauss_matches_bareiss_on_8x8() {
        let rows: Vec<Vec<i64>> = (0..8)
            .map(|r| (0..8).map(|c| ((r * 7 + c * 3 + r * c) % 11) as i64 - 5 + if r == c { 9 } else { 0 }).collect())
            .collect();
        let exact = DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()).unwrap();
        let rhs: Vec<Rational> = (0..8).map(|i| rat(i - 3)).collect();
        let (xe, det) = bareiss_solve(&exact, &rhs).unwrap();
        assert_ne!(det, rat(0));
        let xf = gauss_solve(&exact.map(rational_to_f64), &rhs.iter().map(rational_to_f64).collect::<Vec<_>>()).unwrap();
        let norm = xe.iter().map(|v| rational_to_f64(v).abs()).fold(0.0, f64::max);
        for (e, f) in xe.iter().zip(&xf) {
            assert!((rational_to_f64(e) - f).abs() <= 1e-10 * norm);
        }
    }
}
