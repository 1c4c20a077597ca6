//! Exact rational scalars, dense matrices and subspaces.
//!
//! Elimination is fraction-free: rows are cleared of denominators and reduced
//! with Bareiss' algorithm over the integers, so intermediate entries stay
//! bounded by minors of the input instead of growing with every pivot.

mod matrix;
mod subspace;

pub use matrix::{Matrix, Solution};
pub use subspace::Subspace;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// The rational `n`.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// The rational `num/den`. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_bigint(n: BigInt) -> Scalar {
    Scalar::from_integer(n)
}

/// Parses `"a"`, `"-a"` or `"a/b"`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let bad = || Error::Precondition(format!("not a rational number: {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Precondition(format!("zero denominator in {s:?}")));
            }
            Ok(Scalar::new(n, d))
        }
        None => Ok(Scalar::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// `(-1)^e` as a scalar.
pub fn sign_pow(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

pub(crate) fn lcm_of_denominators(row: &[Scalar]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Ratio `a / b` if `a = r * b` for a single nonzero scalar `r`.
///
/// Both vectors zero gives `None`: there is no scalar to report.
pub fn proportionality(a: &[Scalar], b: &[Scalar]) -> Option<Scalar> {
    if a.len() != b.len() {
        return None;
    }
    let mut ratio: Option<Scalar> = None;
    for (x, y) in a.iter().zip(b) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => {}
            (false, false) => {
                let r = x / y;
                match &ratio {
                    None => ratio = Some(r),
                    Some(prev) if *prev == r => {}
                    Some(_) => return None,
                }
            }
            _ => return None,
        }
    }
    ratio
}

/// Integer value of a scalar if it is one.
pub fn as_integer(x: &Scalar) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}
