use crate::error::ScalarError;
use crate::scalar::Scalar;

/// Arithmetic operation counter, owned by a single solve.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Flops {
    count: u64,
}

impl Flops {
    pub fn new() -> Self {
        Flops::default()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    #[inline]
    pub fn add<S: Scalar>(&mut self, a: &S, b: &S) -> S {
        self.count += 1;
        a.add(b)
    }

    #[inline]
    pub fn sub<S: Scalar>(&mut self, a: &S, b: &S) -> S {
        self.count += 1;
        a.sub(b)
    }

    #[inline]
    pub fn mul<S: Scalar>(&mut self, a: &S, b: &S) -> S {
        self.count += 1;
        a.mul(b)
    }

    #[inline]
    pub fn div<S: Scalar>(&mut self, a: &S, b: &S) -> Result<S, ScalarError> {
        self.count += 1;
        a.div(b)
    }
}

impl std::ops::AddAssign for Flops {
    fn add_assign(&mut self, rhs: Flops) {
        self.count += rhs.count;
    }
}
