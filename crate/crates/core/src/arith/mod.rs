//! Exact scalars, integer polynomials and real-root isolation.
//!
//! Nothing in here touches floating point. Every value is either a
//! [`BigInt`] or a canonical [`BigRational`].

mod poly;
mod roots;

pub use self::poly::UniPoly;
pub use self::roots::{
    refine_interval, sturm_root_isolate, IsolatingInterval, RealPoint, SturmChain,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The only scalar type used by the core: an arbitrary-precision rational
/// kept in canonical form (positive denominator, coprime parts).
pub type Scalar = BigRational;

/// Shorthand for an integer-valued [`Scalar`].
pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// `p / q` as a [`Scalar`]. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or a plain integer. Surrounding whitespace is ignored.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Scalar::new(num, den))
}

/// `x^e` for a non-negative exponent.
pub fn pow(x: &Scalar, e: usize) -> Scalar {
    let mut acc = Scalar::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// `x^e` for a possibly negative exponent; `x` must be non-zero when `e < 0`.
pub fn powi(x: &Scalar, e: i64) -> Scalar {
    if e >= 0 {
        pow(x, e as usize)
    } else {
        pow(&x.recip(), e.unsigned_abs() as usize)
    }
}

/// Sign of a scalar as `-1`, `0` or `1`.
pub fn sign(x: &Scalar) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Smallest integer `>= x`.
pub fn ceil(x: &Scalar) -> BigInt {
    x.ceil().to_integer()
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
