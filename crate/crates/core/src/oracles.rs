//! Closed-form maxima for the solved regimes, regime classification and the
//! standalone bounds and inequalities used along the way.
//!
//! Regimes are described by the ratio `x = s/t`:
//!
//! | regime     | range                         | maximum                              |
//! |------------|-------------------------------|--------------------------------------|
//! | `Negative` | `s <= 0`                      | `t (t - s)^(n-1)`                    |
//! | `SubUnit`  | `0 < x <= 1`                  | `K_n = t K_{n-1} + s^2 K_{n-2}`      |
//! | `NearUnit` | `1 <= x <= 1 + eps(n)`, n >= 4| seeds `3s^2t^2`, `s^4t + 4s^2t^3`    |
//! | `Large`    | `x > 4n^2/5`                  | `s^(n-1)t + F(n) s^(n-3)t^3`         |
//! | `Open`     | everything else               | none                                 |
//!
//! `eps(n)` is not known in closed form, so `NearUnit` values away from
//! `x = 1` are returned with `certified = false`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, int, pow, powi, ratio, RealPoint, Scalar};
use crate::constructions::cubic_weight;
use crate::error::{precondition, Error, Result};
use crate::hessenberg::{CoeffVector, HessMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    Negative,
    SubUnit,
    NearUnit,
    Large,
    Open,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Negative => "negativeS",
            Regime::SubUnit => "caseI",
            Regime::NearUnit => "caseII",
            Regime::Large => "caseIII",
            Regime::Open => "open",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Regime::Negative,
            Regime::SubUnit,
            Regime::NearUnit,
            Regime::Large,
            Regime::Open,
        ]
        .into_iter()
        .find(|r| r.name().eq_ignore_ascii_case(s))
        .ok_or_else(|| precondition(alloc::format!("unknown regime {s:?}")))
    }
}

fn require_positive_t(t: &Scalar) -> Result<()> {
    if t.is_positive() {
        Ok(())
    } else {
        Err(precondition("t must be positive"))
    }
}

/// `4n^2/5`; ratios strictly above it are in the large regime.
pub fn large_threshold(n: usize) -> Scalar {
    ratio(4 * (n * n) as i64, 5)
}

/// Classifies `(n, s, t)`. At `s = t` (and `n >= 4`) both `SubUnit` and
/// `NearUnit` are reported.
pub fn classify(n: usize, s: &Scalar, t: &Scalar) -> Result<Vec<Regime>> {
    classify_certified(n, s, t, None)
}

/// Like [`classify`], but ratios in `(1, limit)` are reported as `NearUnit`
/// when the caller supplies a certified upper limit (for instance from the
/// transition explorer).
pub fn classify_certified(
    n: usize,
    s: &Scalar,
    t: &Scalar,
    limit: Option<&RealPoint>,
) -> Result<Vec<Regime>> {
    require_positive_t(t)?;
    if n == 0 {
        return Err(precondition("n must be at least 1"));
    }
    if !s.is_positive() {
        return Ok(alloc::vec![Regime::Negative]);
    }
    let x = s / t;
    if x < Scalar::one() {
        return Ok(alloc::vec![Regime::SubUnit]);
    }
    if x.is_one() {
        return Ok(if n >= 4 {
            alloc::vec![Regime::SubUnit, Regime::NearUnit]
        } else {
            alloc::vec![Regime::SubUnit]
        });
    }
    if x > large_threshold(n) {
        return Ok(alloc::vec![Regime::Large]);
    }
    if n >= 4 {
        if let Some(limit) = limit {
            let inside = RealPoint::Rational(x).compare(limit) == core::cmp::Ordering::Less;
            if inside {
                return Ok(alloc::vec![Regime::NearUnit]);
            }
        }
    }
    Ok(alloc::vec![Regime::Open])
}

/// `t (t - s)^(n-1)` for `s <= 0`.
pub fn max_negative(n: usize, s: &Scalar, t: &Scalar) -> Result<Scalar> {
    require_positive_t(t)?;
    if n == 0 {
        return Err(precondition("n must be at least 1"));
    }
    if s.is_positive() {
        return Err(precondition("the negative regime requires s <= 0"));
    }
    Ok(t * pow(&(t - s), n - 1))
}

/// `K_0..=K_{n_max}` with `K_0 = 1`, `K_1 = t`, `K_2 = t^2` and
/// `K_n = t K_{n-1} + s^2 K_{n-2}`.
pub fn k_sequence(n_max: usize, s: &Scalar, t: &Scalar) -> Vec<Scalar> {
    let s2 = s * s;
    let mut k: Vec<Scalar> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let v = match n {
            0 => Scalar::one(),
            1 => t.clone(),
            2 => t * t,
            _ => t * &k[n - 1] + &s2 * &k[n - 2],
        };
        k.push(v);
    }
    k
}

/// Maximum for `0 < s <= t`.
pub fn max_sub_unit(n: usize, s: &Scalar, t: &Scalar) -> Result<Scalar> {
    require_positive_t(t)?;
    if !s.is_positive() || s > t {
        return Err(precondition("the sub-unit regime requires 0 < s <= t"));
    }
    Ok(k_sequence(n, s, t).pop().unwrap())
}

/// A value together with whether it is known to be the true maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certified {
    pub value: Scalar,
    pub certified: bool,
}

/// Seeds `3s^2t^2` (n = 4), `s^4t + 4s^2t^3` (n = 5), then
/// `M_n = t M_{n-1} + s^2 M_{n-2}`. Certified only at `s = t`.
pub fn max_near_unit(n: usize, s: &Scalar, t: &Scalar) -> Result<Certified> {
    require_positive_t(t)?;
    if n < 4 {
        return Err(Error::DimensionTooSmall { what: "the near-unit regime", min: 4, n });
    }
    if s < t {
        return Err(precondition("the near-unit regime requires s >= t"));
    }
    Ok(Certified {
        value: crate::constructions::urc_recurrence(n, s, t),
        certified: s == t,
    })
}

/// `s^(n-1)t + floor(n/2) floor((n-1)/2) s^(n-3)t^3` for `s/t > 4n^2/5`.
/// With `force` the threshold check is skipped.
pub fn max_large(n: usize, s: &Scalar, t: &Scalar, force: bool) -> Result<Scalar> {
    require_positive_t(t)?;
    if n < 2 {
        return Err(Error::DimensionTooSmall { what: "the large regime", min: 2, n });
    }
    if !force && (s / t) <= large_threshold(n) {
        return Err(precondition(alloc::format!(
            "the large regime requires s/t > {}",
            large_threshold(n)
        )));
    }
    let mut v = pow(s, n - 1) * t;
    if n >= 3 {
        v += int(cubic_weight(n) as i64) * pow(s, n - 3) * pow(t, 3);
    }
    Ok(v)
}

fn require_three(n: usize) -> Result<()> {
    if n < 3 {
        Err(Error::DimensionTooSmall { what: "the chessboard count", min: 3, n })
    } else {
        Ok(())
    }
}

/// Minimum number of chains forced to vanish in the `s^(n-3)t^3`
/// coefficient once the `s^(n-2)t^2` coefficient is zero.
pub fn chessboard_min_black(n: usize) -> Result<u64> {
    require_three(n)?;
    let n = n as u64;
    Ok(if n % 2 == 1 {
        (n * n + 3 - 4 * n) / 4
    } else {
        (n * n + 4 - 4 * n) / 4
    })
}

/// Largest possible `s^(n-3)t^3` coefficient when the `s^(n-2)t^2`
/// coefficient vanishes.
pub fn coeff_bound_s3(n: usize) -> Result<u64> {
    require_three(n)?;
    let bound = cubic_weight(n);
    let total = (n as u64 - 1) * (n as u64 - 2) / 2;
    debug_assert_eq!(bound, total - chessboard_min_black(n)?);
    Ok(bound)
}

/// Both sides of one inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityCheck {
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl InequalityCheck {
    pub fn holds(&self) -> bool {
        self.lhs > self.rhs
    }
}

/// The five large-ratio inequalities at a concrete `(n, x)`:
///
/// 0. `x^(n-1) + F x^(n-3) > sum_{j odd} C(n-1, j) x^(n-1-j)`
/// 1. `x^(n-1) + F x^(n-3) > sum_{j even, j >= 2} C(n-1, j) x^(n-1-j)`
/// 2. `x^(n-2) + F x^(n-3) > sum_{j even, j >= 2} C(n-1, j) x^(n-1-j)`
/// 3. `x^(n-3) > sum_{j even, j >= 4} C(n-1, j) x^(n-1-j)`
/// 4. `x^(n-4) > sum_{j even, j >= 4} C(n-1, j) x^(n-1-j)`
///
/// with `F = floor(n/2) floor((n-1)/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityReport {
    pub n: usize,
    pub x: Scalar,
    pub checks: [InequalityCheck; 5],
}

impl InequalityReport {
    pub fn holds(&self) -> [bool; 5] {
        core::array::from_fn(|i| self.checks[i].holds())
    }
}

pub fn regime_inequalities(n: usize, x: &Scalar) -> Result<InequalityReport> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { what: "the regime inequalities", min: 2, n });
    }
    if !x.is_positive() {
        return Err(precondition("x must be positive"));
    }
    let e = |k: i64| powi(x, n as i64 - k);
    let tail = |first: usize| -> Scalar {
        (first..n)
            .step_by(2)
            .map(|j| Scalar::from_integer(binomial(n as u64 - 1, j as u64)) * e(1 + j as i64))
            .fold(Scalar::zero(), |a, b| a + b)
    };
    let f = int(cubic_weight(n) as i64);
    let head = e(1) + &f * e(3);
    let odd = tail(1);
    let even2 = tail(2);
    let even4 = tail(4);
    Ok(InequalityReport {
        n,
        x: x.clone(),
        checks: [
            InequalityCheck { lhs: head.clone(), rhs: odd },
            InequalityCheck { lhs: head, rhs: even2.clone() },
            InequalityCheck { lhs: e(2) + f * e(3), rhs: even2 },
            InequalityCheck { lhs: e(3), rhs: even4.clone() },
            InequalityCheck { lhs: e(4), rhs: even4 },
        ],
    })
}

/// `b_m n >= b_{m+1}` for every `m` in `4..n`, with `b_m = c_m`.
pub fn coefficient_growth_check(c: &CoeffVector) -> bool {
    let n = c.n();
    (4..n).all(|m| c.get(m) as u128 * n as u128 >= c.get(m + 1) as u128)
}

/// Right side of the step bound
/// `M_n <= t^2 M_{n-2} + t s^2 M_{n-3} + t^2 s^2 M_{n-4} + t s^4 M_{n-5} + ...`
/// given `maxima[i] = M_i` for `i < n`.
pub fn step_bound(n: usize, s: &Scalar, t: &Scalar, maxima: &[Scalar]) -> Scalar {
    (2..=n)
        .map(|j| {
            let tj = if j % 2 == 0 { t * t } else { t.clone() };
            tj * pow(s, 2 * ((j - 1) / 2)) * &maxima[n - j]
        })
        .fold(Scalar::zero(), |a, b| a + b)
}

/// `K_n = t K_{n-1} + t s^2 K_{n-3} + t s^4 K_{n-5} + ...` (`n >= 1`).
pub fn k_unrolled_odd(n: usize, s: &Scalar, t: &Scalar, k: &[Scalar]) -> Scalar {
    (1..=n)
        .step_by(2)
        .map(|j| t * pow(s, j - 1) * &k[n - j])
        .fold(Scalar::zero(), |a, b| a + b)
}

/// `K_n = t^2 K_{n-2} + t s^2 K_{n-3} + t^2 s^2 K_{n-4} + ...` (`n >= 2`).
pub fn k_unrolled_even(n: usize, s: &Scalar, t: &Scalar, k: &[Scalar]) -> Scalar {
    step_bound(n, s, t, k)
}

/// Checks the paired first-row bound for every `k` in `2..n` (1-based):
///
/// `|(a11 a2k - s a1k) H_{k+1} - (a11 a2(k+1) - s a1(k+1)) s H_{k+2}| <= t^2 M_{n-k} + t s^2 M_{n-k-1}`
///
/// and, for even `n`, `|(a11 a2n - s a1n) H_{n+1}| <= t^2 M_0`.
/// `maxima[i] = M_i` for `i < n`. Returns the first failing `k`, if any.
pub fn first_row_pair_bounds(m: &HessMatrix, t: &Scalar, maxima: &[Scalar]) -> Option<usize> {
    let n = m.n();
    let s = m.subdiag();
    let h = m.trailing_minors();
    // 1-based helpers
    let a = |i: usize, j: usize| m.get(i - 1, j - 1);
    let hk = |k: usize| &h[k - 1];
    let pair = |k: usize| a(1, 1) * a(2, k) - s * a(1, k);
    for k in 2..n {
        let lhs = (pair(k) * hk(k + 1) - pair(k + 1) * s * hk(k + 2)).abs();
        let rhs = t * t * &maxima[n - k] + t * s * s * &maxima[n - k - 1];
        if lhs > rhs {
            return Some(k);
        }
    }
    if n % 2 == 0 && n >= 2 {
        let lhs = (pair(n) * hk(n + 1)).abs();
        if lhs > t * t * &maxima[0] {
            return Some(n);
        }
    }
    None
}

/// Integer helper used by reports: `floor(n/2) floor((n-1)/2)` as a [`BigInt`].
pub fn cubic_weight_int(n: usize) -> BigInt {
    BigInt::from(cubic_weight(n))
}
