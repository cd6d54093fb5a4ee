use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Scalar;

/// Univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. Trailing zeros are always
/// stripped, so the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Scalar::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `self(x)` without forming the rational value: evaluates the
    /// homogenized integer form `sum c_i a^i b^(d-i)` for `x = a/b`, `b > 0`.
    pub fn sign_at(&self, x: &Scalar) -> i8 {
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder scaled by a positive factor, so the sign pattern of
    /// `self mod divisor` is preserved. Used by Sturm chains.
    pub(crate) fn sign_preserving_rem(&self, divisor: &UniPoly) -> UniPoly {
        let db = divisor.degree().expect("division by the zero polynomial");
        let lb = divisor.leading().unwrap().clone();
        let mut r = self.clone();
        let mut scale_steps = 0usize;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let shift = dr - db;
            // r <- lb * r - lr * x^shift * divisor
            let mut next: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lb).collect();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                next[i + shift] -= &lr * c;
            }
            r = UniPoly::new(next);
            scale_steps += 1;
        }
        // r was multiplied by lb^scale_steps; undo a negative sign.
        if lb.is_negative() && scale_steps % 2 == 1 {
            r = -r;
        }
        r.primitive_keep_sign()
    }

    fn primitive_keep_sign(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.content();
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Monic-up-to-content gcd via a primitive remainder sequence. The
    /// result is primitive with a positive leading coefficient.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.sign_preserving_rem(&b);
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Quotient of an exact division over the rationals, returned as a
    /// primitive integer polynomial. `divisor` must divide `self`.
    pub fn div_exact_primitive(&self, divisor: &UniPoly) -> UniPoly {
        let db = divisor.degree().expect("division by the zero polynomial");
        let Some(da) = self.degree() else {
            return UniPoly::zero();
        };
        assert!(da >= db, "divisor degree exceeds dividend degree");
        let lb = Scalar::from_integer(divisor.leading().unwrap().clone());
        let mut rem: Vec<Scalar> = self
            .coeffs
            .iter()
            .map(|c| Scalar::from_integer(c.clone()))
            .collect();
        let mut quot = vec![Scalar::zero(); da - db + 1];
        for shift in (0..=da - db).rev() {
            let q = &rem[shift + db] / &lb;
            if !q.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    rem[i + shift] -= &q * Scalar::from_integer(c.clone());
                }
            }
            quot[shift] = q;
        }
        debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
        let lcm = quot
            .iter()
            .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        UniPoly::new(
            quot.iter()
                .map(|q| (q * Scalar::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
        .primitive()
    }

    /// Square-free part `p / gcd(p, p')`, primitive with positive leading
    /// coefficient. Constants map to `1`, zero stays zero.
    pub fn square_free(&self) -> UniPoly {
        match self.degree() {
            None => UniPoly::zero(),
            Some(0) => UniPoly::constant(BigInt::one()),
            Some(_) => {
                let g = self.gcd(&self.derivative());
                if g.degree() == Some(0) {
                    self.primitive()
                } else {
                    self.div_exact_primitive(&g)
                }
            }
        }
    }

    /// Cauchy bound: every real root has absolute value below the result.
    pub fn root_bound(&self) -> Scalar {
        let Some(lead) = self.leading() else {
            return Scalar::one();
        };
        let lead = lead.abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        Scalar::one() + Scalar::new(max, lead)
    }

    pub fn square(&self) -> UniPoly {
        self * self
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

/// Human-readable form, highest power first: `x^2 - 3x + 2`.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}
