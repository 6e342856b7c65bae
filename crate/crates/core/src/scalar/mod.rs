//! Scalar arithmetic shared by every solver.
//!
//! Solvers are generic over [`Scalar`], which is implemented by `f64` and by
//! [`Exact`]. An `Exact` value is a plain rational until a zero pivot forces
//! the symbol `t` into the computation; only then is it promoted to a
//! [`RationalFunction`].

mod poly;
mod ratfunc;
mod rational;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::{
    format_rational, parse_rational, rat, ratio, rational_from_f64, rational_to_f64, Rational,
};

use crate::error::ScalarError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    ExactRational,
    Float64,
}

impl ScalarMode {
    pub fn label(self) -> &'static str {
        match self {
            ScalarMode::ExactRational => "exact",
            ScalarMode::Float64 => "f64",
        }
    }
}

impl FromStr for ScalarMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(ScalarMode::ExactRational),
            "f64" => Ok(ScalarMode::Float64),
            other => Err(format!("unknown mode {other:?} (expected exact or f64)")),
        }
    }
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Relative threshold under which a floating-point pivot counts as zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroTest {
    pub tau: f64,
}

impl ZeroTest {
    pub const DEFAULT_TAU: f64 = 1.0 / (1u64 << 40) as f64;
}

impl Default for ZeroTest {
    fn default() -> Self {
        ZeroTest { tau: Self::DEFAULT_TAU }
    }
}

pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {
    const MODE: ScalarMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self, ScalarError>;

    /// Absolute value for floats, used to build relative zero tests.
    /// Exact scalars report 0.
    fn magnitude(&self) -> f64;

    /// Exact scalars: true iff exactly zero. Floats: `|s| <= tau * max(1, scale)`.
    fn is_zero_within(&self, scale: f64, test: &ZeroTest) -> bool;

    fn is_exact_zero(&self) -> bool {
        self.is_zero_within(0.0, &ZeroTest { tau: 0.0 })
    }

    /// The perturbation symbol `t`, if this scalar type can carry it.
    fn symbol() -> Option<Self>;

    /// Substitutes `t = 0`. Identity for values that do not contain `t`.
    fn at_zero(&self) -> Result<Self, ScalarError>;

    fn to_f64(&self) -> f64;
}

/// The pivot test of the symbolic elimination.
pub fn scalar_is_zero<S: Scalar>(s: &S, scale: f64, test: &ZeroTest) -> bool {
    s.is_zero_within(scale, test)
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float64;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }
    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    #[inline]
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    #[inline]
    fn div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self / rhs)
    }
    #[inline]
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    #[inline]
    fn is_zero_within(&self, scale: f64, test: &ZeroTest) -> bool {
        self.abs() <= test.tau * scale.max(1.0)
    }
    fn symbol() -> Option<Self> {
        None
    }
    fn at_zero(&self) -> Result<Self, ScalarError> {
        Ok(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Exact scalar with lazy promotion to a rational function of `t`.
///
/// A value that does not depend on `t` is always stored as `Rat`, so
/// structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Exact {
    Rat(Rational),
    Func(RationalFunction),
}

impl Exact {
    pub fn int(n: i64) -> Self {
        Exact::Rat(rat(n))
    }

    pub fn t() -> Self {
        Exact::Func(RationalFunction::t())
    }

    fn from_function(f: RationalFunction) -> Self {
        match f.as_constant() {
            Some(c) => Exact::Rat(c),
            None => Exact::Func(f),
        }
    }

    pub fn to_function(&self) -> RationalFunction {
        match self {
            Exact::Rat(r) => RationalFunction::constant(r.clone()),
            Exact::Func(f) => f.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Exact::Rat(r) => Some(r),
            Exact::Func(_) => None,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Exact::Func(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Exact::Rat(r) => r.is_zero(),
            Exact::Func(f) => f.is_zero(),
        }
    }

    /// Substitutes `t = 0`, returning the plain rational.
    pub fn eval_at_zero(&self) -> Result<Rational, ScalarError> {
        match self {
            Exact::Rat(r) => Ok(r.clone()),
            Exact::Func(f) => f.eval_at_zero(),
        }
    }

    fn lift2(
        &self,
        rhs: &Self,
        on_rat: impl FnOnce(&Rational, &Rational) -> Rational,
        on_func: impl FnOnce(&RationalFunction, &RationalFunction) -> RationalFunction,
    ) -> Self {
        match (self, rhs) {
            (Exact::Rat(a), Exact::Rat(b)) => Exact::Rat(on_rat(a, b)),
            _ => Exact::from_function(on_func(&self.to_function(), &rhs.to_function())),
        }
    }
}

impl From<Rational> for Exact {
    fn from(r: Rational) -> Self {
        Exact::Rat(r)
    }
}

impl From<RationalFunction> for Exact {
    fn from(f: RationalFunction) -> Self {
        Exact::from_function(f)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact::Rat(r) => f.write_str(&format_rational(r)),
            Exact::Func(func) => write!(f, "{func}"),
        }
    }
}

impl Scalar for Exact {
    const MODE: ScalarMode = ScalarMode::ExactRational;

    fn zero() -> Self {
        Exact::Rat(Rational::zero())
    }
    fn one() -> Self {
        Exact::Rat(Rational::one())
    }
    fn from_rational(r: &Rational) -> Self {
        Exact::Rat(r.clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        self.lift2(rhs, |a, b| a + b, |a, b| a + b)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.lift2(rhs, |a, b| a - b, |a, b| a - b)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.lift2(rhs, |a, b| a * b, |a, b| a * b)
    }
    fn div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match (self, rhs) {
            (Exact::Rat(a), Exact::Rat(b)) => Ok(Exact::Rat(a / b)),
            _ => Ok(Exact::from_function(
                self.to_function().checked_div(&rhs.to_function())?,
            )),
        }
    }
    fn magnitude(&self) -> f64 {
        0.0
    }
    fn is_zero_within(&self, _scale: f64, _test: &ZeroTest) -> bool {
        self.is_zero()
    }
    fn symbol() -> Option<Self> {
        Some(Exact::t())
    }
    fn at_zero(&self) -> Result<Self, ScalarError> {
        self.eval_at_zero().map(Exact::Rat)
    }
    fn to_f64(&self) -> f64 {
        match self.eval_at_zero() {
            Ok(r) => rational_to_f64(&r),
            Err(_) => f64::NAN,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_zero_tests() {
        let test = ZeroTest::default();
        assert!(Exact::int(0).is_zero_within(1.0, &test));
        let t = Exact::t();
        assert!(scalar_is_zero(&Scalar::sub(&t, &t), 1.0, &test));
        assert!(!Exact::Rat(ratio(1, 1 << 62)).is_zero_within(1.0, &test));
    }

    #[test]
    fn float_zero_threshold() {
        let test = ZeroTest::default();
        assert_eq!(test.tau, 2f64.powi(-40));
        assert!(scalar_is_zero(&1.0e-15, 1.0, &test));
        assert!(!scalar_is_zero(&1.0e-11, 1.0, &test));
        // relative to the operand scale
        assert!(scalar_is_zero(&1.0e-9, 1.0e4, &test));
        assert!(scalar_is_zero(&1.0e-3, 1.0, &ZeroTest { tau: 1e-2 }));
    }

    #[test]
    fn promotion_is_lazy_and_demotion_is_eager() {
        let a = Exact::int(3);
        let b = Exact::int(4);
        assert!(!Scalar::mul(&a, &b).is_symbolic());
        let t = Exact::t();
        let sum = Scalar::add(&t, &a);
        assert!(sum.is_symbolic());
        let back = Scalar::sub(&sum, &t);
        assert_eq!(back, Exact::int(3));
        assert!(!back.is_symbolic());
    }

    #[test]
    fn exact_division_by_zero() {
        assert_eq!(
            Scalar::div(&Exact::int(1), &Exact::int(0)),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn at_zero_of_pole_fails() {
        let inv_t = Scalar::div(&Exact::int(1), &Exact::t()).unwrap();
        assert_eq!(inv_t.at_zero(), Err(ScalarError::SingularAtZero));
        assert!(inv_t.to_f64().is_nan());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("exact".parse::<ScalarMode>().unwrap(), ScalarMode::ExactRational);
        assert_eq!("f64".parse::<ScalarMode>().unwrap(), ScalarMode::Float64);
        assert!("float".parse::<ScalarMode>().is_err());
    }
}
