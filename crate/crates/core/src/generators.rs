//! Example systems and random test families.
//!
//! Random families draw from SplitMix64 (Steele, Lea & Flood) seeded with
//! the family seed. Each entry in `[-r, r]` is `r - (u mod (2r + 1))` for
//! the next 64-bit output `u` that falls below the largest multiple of
//! `2r + 1`; draws are taken in the order `a, b, c, p, q`. If the matrix is
//! singular the whole draw is repeated from the continuing stream. The
//! right-hand side is `A * (1, ..., 1)`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::oracle::bareiss_determinant;
use crate::scalar::{rat, Rational};
use crate::system::{multiply_rational, BorderedSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Example31,
    Example32,
    Example33,
    Random,
    Pertri,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Example31 => "example31",
            Family::Example32 => "example32",
            Family::Example33 => "example33",
            Family::Random => "random",
            Family::Pertri => "pertri",
        }
    }

    /// Whether the exact solution is all ones.
    pub fn solution_is_ones(self) -> bool {
        !matches!(self, Family::Example31)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "example31" => Family::Example31,
            "example32" => Family::Example32,
            "example33" => Family::Example33,
            "random" => Family::Random,
            "pertri" => Family::Pertri,
            other => return Err(Error::BadSpec(format!("unknown family {other:?}"))),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    /// Ignored by the two fixed examples.
    pub n: usize,
    pub seed: u64,
    pub entry_range: i64,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec { family, n, seed: 0, entry_range: 9 }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

pub fn generate(spec: &FamilySpec) -> Result<BorderedSystem> {
    match spec.family {
        Family::Example31 => Ok(example31()),
        Family::Example32 => Ok(example32()),
        Family::Example33 => example33(spec.n),
        Family::Random => random(spec.n, spec.seed, spec.entry_range),
        Family::Pertri => pertri(spec.n, spec.seed, spec.entry_range),
    }
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&k| rat(k)).collect()
}

/// The 7x7 worked example with a dense border.
pub fn example31() -> BorderedSystem {
    BorderedSystem::new(
        7,
        ints(&[32, 26, 63, 12, 61, 68, 33]),
        ints(&[3, 52, 39, 24, 51, 42]),
        ints(&[27, 55, 99, 74, 1, 59]),
        ints(&[9, 62, 35, 71, 53]),
        ints(&[29, 65, 9, 45, 72]),
        ints(&[90, 24, 43, 97, 51, 52, 56]),
    )
    .expect("fixed example is well formed")
}

/// The 10x10 example whose leading entry is zero; its solution is all ones.
pub fn example32() -> BorderedSystem {
    BorderedSystem::new(
        10,
        ints(&[0, 2, 1, 15, 3, 1, 2, 1, 2, 5]),
        ints(&[2, 12, 5, 1, 20, 2, 2, 1, 4]),
        ints(&[13, 9, 3, 2, 7, -5, 2, 5, 1]),
        ints(&[5, 3, 2, 1, 5, 2, 7, 12]),
        ints(&[3, 2, 1, 7, 5, -2, 4, 2]),
        ints(&[7, 30, 17, 20, 30, 12, 6, 16, 11, 28]),
    )
    .expect("fixed example is well formed")
}

/// Constant-band family `a = 2, b = 3, c = 1, p = 4, q = 5` with all-ones solution.
pub fn example33(n: usize) -> Result<BorderedSystem> {
    if n <= 3 {
        return Err(Error::BadSpec(format!("example33 needs n > 3, got {n}")));
    }
    let mut y = vec![rat(10); n];
    y[0] = rat(9);
    y[n - 2] = rat(6);
    y[n - 1] = rat(5 * n as i64 - 7);
    BorderedSystem::new(
        n,
        vec![rat(2); n],
        vec![rat(3); n - 1],
        vec![rat(1); n - 1],
        vec![rat(4); n - 2],
        vec![rat(5); n - 2],
        y,
    )
}

/// Unit diagonal, every other entry zero, right-hand side all ones.
pub fn identity_like(n: usize) -> BorderedSystem {
    BorderedSystem::new(
        n,
        vec![rat(1); n],
        vec![rat(0); n - 1],
        vec![rat(0); n - 1],
        vec![rat(0); n - 2],
        vec![rat(0); n - 2],
        vec![rat(1); n],
    )
    .expect("n > 3")
}

/// SplitMix64 stream.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound` by rejection.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let u = self.next_u64();
            if u < zone {
                return u % bound;
            }
        }
    }

    /// Uniform in `[-range, range]`.
    pub fn symmetric(&mut self, range: i64) -> i64 {
        range - self.below(2 * range as u64 + 1) as i64
    }
}

fn random_family(n: usize, seed: u64, range: i64, pertri: bool) -> Result<BorderedSystem> {
    if n <= 3 {
        return Err(Error::BadSpec(format!("random families need n > 3, got {n}")));
    }
    if range < 1 {
        return Err(Error::BadSpec(format!("entry range must be positive, got {range}")));
    }
    let mut rng = SplitMix64::new(seed);
    loop {
        let mut draw = |len: usize| -> Vec<Rational> { (0..len).map(|_| rat(rng.symmetric(range))).collect() };
        let a = draw(n);
        let b = draw(n - 1);
        let c = draw(n - 1);
        let mut p = draw(n - 2);
        let mut q = draw(n - 2);
        if pertri {
            // keep only p_1 and q_1
            p[1..].iter_mut().chain(q[1..].iter_mut()).for_each(|v| *v = Rational::zero());
        }
        let sys = BorderedSystem::new(n, a, b, c, p, q, vec![Rational::zero(); n])?;
        if bareiss_determinant(&sys.to_dense()).is_zero() {
            continue;
        }
        let y = multiply_rational(&sys, &vec![rat(1); n])?;
        return sys.with_rhs(y);
    }
}

/// Random integer entries in `[-range, range]`, nonsingular, solution all ones.
pub fn random(n: usize, seed: u64, range: i64) -> Result<BorderedSystem> {
    random_family(n, seed, range, false)
}

/// Random family with `p_i = q_i = 0` for `i >= 2`.
pub fn pertri(n: usize, seed: u64, range: i64) -> Result<BorderedSystem> {
    random_family(n, seed, range, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // published test vector for seed 1234567
        let mut rng = SplitMix64::new(1234567);
        assert_eq!(rng.next_u64(), 6457827717110365317);
        assert_eq!(rng.next_u64(), 3203168211198807973);
    }

    #[test]
    fn example33_n5() {
        let s = example33(5).unwrap();
        assert_eq!(s.a, ints(&[2, 2, 2, 2, 2]));
        assert_eq!(s.b, ints(&[3, 3, 3, 3]));
        assert_eq!(s.c, ints(&[1, 1, 1, 1]));
        assert_eq!(s.p, ints(&[4, 4, 4]));
        assert_eq!(s.q, ints(&[5, 5, 5]));
        assert_eq!(s.y, ints(&[9, 10, 10, 6, 18]));
    }

    #[test]
    fn example33_all_ones_is_exact_solution() {
        for n in [4, 5, 9, 40] {
            let s = example33(n).unwrap();
            assert_eq!(multiply_rational(&s, &vec![rat(1); n]).unwrap(), s.y);
        }
    }

    #[test]
    fn example31_entries() {
        let s = example31();
        assert_eq!(s.a[0], rat(32));
        assert_eq!(s.p[0], rat(9));
        assert_eq!(s.q, ints(&[29, 65, 9, 45, 72]));
        assert_eq!(s.c[5], rat(59));
        assert_eq!(s.b[5], rat(42));
        assert_eq!(s.a[6], rat(33));
    }

    #[test]
    fn example32_solution_is_ones() {
        let s = example32();
        assert_eq!(multiply_rational(&s, &vec![rat(1); 10]).unwrap(), s.y);
    }

    #[test]
    fn random_is_deterministic() {
        let s1 = generate(&FamilySpec::new(Family::Random, 6).seed(42)).unwrap();
        let s2 = generate(&FamilySpec::new(Family::Random, 6).seed(42)).unwrap();
        assert_eq!(s1, s2);
        let s3 = generate(&FamilySpec::new(Family::Random, 6).seed(43)).unwrap();
        assert_ne!(s1, s3);
    }

    #[test]
    fn random_entries_in_range() {
        let s = random(12, 7, 3).unwrap();
        for v in s.a.iter().chain(&s.b).chain(&s.c).chain(&s.p).chain(&s.q) {
            assert!(v.numer() >= &(-3).into() && v.numer() <= &3.into());
        }
    }

    #[test]
    fn pertri_clears_inner_borders() {
        let s = pertri(8, 3, 9).unwrap();
        assert!(s.p[1..].iter().chain(&s.q[1..]).all(Zero::is_zero));
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(example33(3), Err(Error::BadSpec(_))));
        assert!(matches!(random(2, 0, 9), Err(Error::BadSpec(_))));
        assert!(matches!(random(5, 0, 0), Err(Error::BadSpec(_))));
        assert!(matches!("nope".parse::<Family>(), Err(Error::BadSpec(_))));
    }
}
