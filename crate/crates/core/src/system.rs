//! The bordered tridiagonal system
//!
//! ```text
//! | a1 b1                p1 |
//! | c2 a2 b2             p2 |
//! |    .  .  .           .  |
//! |         c(n-1) a(n-1) b(n-1) |
//! | q1 q2 ... q(n-2) cn  an |
//! ```
//!
//! Vectors are stored zero-based by row: `a[r]` is the diagonal of row `r`,
//! `b[r]` sits at `(r, r+1)`, `c[r]` at `(r+1, r)`, `p[r]` at `(r, n-1)` and
//! `q[r]` at `(n-1, r)`. So `b[n-2]` and `c[n-2]` double as the border
//! entries next to the corner.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::DenseMatrix;
use crate::scalar::{format_rational, parse_rational, Exact, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct BorderedSystem<S = Rational> {
    pub n: usize,
    pub a: Vec<S>,
    pub b: Vec<S>,
    pub c: Vec<S>,
    pub p: Vec<S>,
    pub q: Vec<S>,
    pub y: Vec<S>,
}

/// Serialized system: every scalar as a string in the exact textual syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub n: usize,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
    pub p: Vec<String>,
    pub q: Vec<String>,
    pub y: Vec<String>,
}

fn check_lengths(n: usize, lens: [(&str, usize, usize); 6]) -> Result<()> {
    if n <= 3 {
        return Err(Error::BadDimensions(format!("n = {n}, but n > 3 is required")));
    }
    for (name, got, want) in lens {
        if got != want {
            return Err(Error::BadDimensions(format!(
                "|{name}| = {got}, expected {want} for n = {n}"
            )));
        }
    }
    Ok(())
}

impl<S: Clone> BorderedSystem<S> {
    /// Checks `n > 3` and the six list lengths.
    pub fn new(n: usize, a: Vec<S>, b: Vec<S>, c: Vec<S>, p: Vec<S>, q: Vec<S>, y: Vec<S>) -> Result<Self> {
        check_lengths(
            n,
            [
                ("a", a.len(), n),
                ("b", b.len(), n - 1),
                ("c", c.len(), n - 1),
                ("p", p.len(), n - 2),
                ("q", q.len(), n - 2),
                ("y", y.len(), n),
            ],
        )?;
        Ok(BorderedSystem { n, a, b, c, p, q, y })
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> BorderedSystem<T> {
        let m = |v: &[S]| v.iter().map(&f).collect::<Vec<T>>();
        BorderedSystem {
            n: self.n,
            a: m(&self.a),
            b: m(&self.b),
            c: m(&self.c),
            p: m(&self.p),
            q: m(&self.q),
            y: m(&self.y),
        }
    }

    /// Same matrix, new right-hand side.
    pub fn with_rhs(&self, y: Vec<S>) -> Result<Self> {
        if y.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: y.len() });
        }
        Ok(BorderedSystem { y, ..self.clone() })
    }

    /// Entry `(row, col)` of the coefficient matrix, `None` for structural zeros.
    pub fn entry(&self, row: usize, col: usize) -> Option<&S> {
        let n = self.n;
        if row == col {
            Some(&self.a[row])
        } else if col == row + 1 {
            Some(&self.b[row])
        } else if row == col + 1 {
            Some(&self.c[col])
        } else if col == n - 1 {
            Some(&self.p[row])
        } else if row == n - 1 {
            Some(&self.q[col])
        } else {
            None
        }
    }

    pub fn to_dense_with(&self, zero: S) -> DenseMatrix<S> {
        let n = self.n;
        let mut m = DenseMatrix::filled(n, zero);
        for r in 0..n {
            for col in 0..n {
                if let Some(v) = self.entry(r, col) {
                    m[(r, col)] = v.clone();
                }
            }
        }
        m
    }
}

impl BorderedSystem<Rational> {
    pub fn to_scalar<S: Scalar>(&self) -> BorderedSystem<S> {
        self.map(S::from_rational)
    }

    pub fn to_dense(&self) -> DenseMatrix<Rational> {
        self.to_dense_with(Rational::default())
    }

    pub fn to_file(&self) -> SystemFile {
        let m = |v: &[Rational]| v.iter().map(format_rational).collect();
        SystemFile {
            n: self.n,
            a: m(&self.a),
            b: m(&self.b),
            c: m(&self.c),
            p: m(&self.p),
            q: m(&self.q),
            y: m(&self.y),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("system serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        validate_system(&serde_json::from_str(text)?)
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &std::path::Path) -> Result<()> {
        let mut text = self.to_json();
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

/// Parses and checks a raw system.
pub fn validate_system(raw: &SystemFile) -> Result<BorderedSystem> {
    let n = raw.n;
    check_lengths(
        n,
        [
            ("a", raw.a.len(), n),
            ("b", raw.b.len(), n.saturating_sub(1)),
            ("c", raw.c.len(), n.saturating_sub(1)),
            ("p", raw.p.len(), n.saturating_sub(2)),
            ("q", raw.q.len(), n.saturating_sub(2)),
            ("y", raw.y.len(), n),
        ],
    )?;
    let parse = |name: &str, v: &[String]| -> Result<Vec<Rational>> {
        v.iter()
            .enumerate()
            .map(|(i, s)| {
                parse_rational(s).map_err(|e| Error::BadScalar(format!("{name}[{i}]: {e}")))
            })
            .collect()
    };
    BorderedSystem::new(
        n,
        parse("a", &raw.a)?,
        parse("b", &raw.b)?,
        parse("c", &raw.c)?,
        parse("p", &raw.p)?,
        parse("q", &raw.q)?,
        parse("y", &raw.y)?,
    )
}

/// `A * v` using only the stored bands and borders.
pub fn multiply<S: Scalar>(sys: &BorderedSystem<S>, v: &[S]) -> Result<Vec<S>> {
    let n = sys.n;
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.len() });
    }
    let last = n - 1;
    let mut out = Vec::with_capacity(n);
    for r in 0..last {
        let mut acc = sys.a[r].mul(&v[r]);
        if r > 0 {
            acc = acc.add(&sys.c[r - 1].mul(&v[r - 1]));
        }
        // b[n-2] is the (n-2, n-1) entry, so the super-diagonal reaches the last column
        acc = acc.add(&sys.b[r].mul(&v[r + 1]));
        if r + 1 < last {
            acc = acc.add(&sys.p[r].mul(&v[last]));
        }
        out.push(acc);
    }
    let mut acc = sys.a[last].mul(&v[last]).add(&sys.c[last - 1].mul(&v[last - 1]));
    for (qj, vj) in sys.q.iter().zip(v) {
        acc = acc.add(&qj.mul(vj));
    }
    out.push(acc);
    Ok(out)
}

/// [`multiply`] for the canonical rational storage.
pub fn multiply_rational(sys: &BorderedSystem, v: &[Rational]) -> Result<Vec<Rational>> {
    let v: Vec<Exact> = v.iter().cloned().map(Exact::Rat).collect();
    let out = multiply(&sys.to_scalar::<Exact>(), &v)?;
    Ok(out
        .into_iter()
        .map(|e| e.as_rational().cloned().expect("no symbol in a plain system"))
        .collect())
}

/// `max_i |(A x - y)_i|` in f64.
pub fn residual_inf<S: Scalar>(sys: &BorderedSystem<S>, x: &[S]) -> Result<f64> {
    let ax = multiply(sys, x)?;
    Ok(ax
        .iter()
        .zip(&sys.y)
        .map(|(l, r)| l.sub(r).to_f64().abs())
        .fold(0.0, max_nan))
}

/// Like `f64::max`, but NaN wins so a blown-up solve never looks accurate.
pub fn max_nan(acc: f64, v: f64) -> f64 {
    if acc.is_nan() || v.is_nan() {
        f64::NAN
    } else {
        acc.max(v)
    }
}
