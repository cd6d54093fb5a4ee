//! Upper Hessenberg matrices with a constant subdiagonal, their entry
//! patterns, and exact determinant machinery.
//!
//! Rows and columns are 0-based throughout. The upper-triangular entries
//! (`j >= i`) are stored row-major; [`slot_index`] gives the position.
//! Pattern codes use the same order, least significant digit first.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{int, pow, Scalar, UniPoly};
use crate::error::{precondition, Error, Result};

/// Number of upper-triangular entries of an `n x n` matrix.
pub const fn slot_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Storage slot of entry `(i, j)`, `j >= i`, 0-based.
///
/// In 1-based terms this is `(i-1)n - (i-1)(i-2)/2 + (j-i)`.
pub const fn slot_index(n: usize, i: usize, j: usize) -> usize {
    i * n - i * (i.saturating_sub(1)) / 2 + (j - i)
}

/// An `n x n` upper Hessenberg matrix whose subdiagonal is constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HessMatrix {
    n: usize,
    subdiag: Scalar,
    upper: Vec<Scalar>,
}

impl HessMatrix {
    pub fn new(n: usize, subdiag: Scalar, upper: Vec<Scalar>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionTooSmall { what: "a matrix", min: 1, n });
        }
        if upper.len() != slot_count(n) {
            return Err(precondition("upper entry count does not match the dimension"));
        }
        Ok(HessMatrix { n, subdiag, upper })
    }

    /// Builds the matrix from a function of `(i, j)` evaluated for `j >= i`.
    pub fn from_fn(n: usize, subdiag: Scalar, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        assert!(n > 0, "empty matrix");
        let mut upper = Vec::with_capacity(slot_count(n));
        for i in 0..n {
            for j in i..n {
                upper.push(f(i, j));
            }
        }
        HessMatrix { n, subdiag, upper }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subdiag(&self) -> &Scalar {
        &self.subdiag
    }

    pub fn upper(&self) -> &[Scalar] {
        &self.upper
    }

    /// Entry `(i, j)` of the full matrix.
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        if j >= i {
            self.upper[slot_index(self.n, i, j)].clone()
        } else if i == j + 1 {
            self.subdiag.clone()
        } else {
            Scalar::zero()
        }
    }

    /// Upper-triangular entry `(i, j)`, `j >= i`.
    pub fn upper_entry(&self, i: usize, j: usize) -> &Scalar {
        &self.upper[slot_index(self.n, i, j)]
    }

    pub fn set_upper(&mut self, i: usize, j: usize, value: Scalar) {
        let k = slot_index(self.n, i, j);
        self.upper[k] = value;
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Bottom-right block starting at row and column `start`.
    pub fn trailing_block(&self, start: usize) -> HessMatrix {
        assert!(start < self.n);
        HessMatrix::from_fn(self.n - start, self.subdiag.clone(), |i, j| {
            self.upper_entry(i + start, j + start).clone()
        })
    }

    /// Exact determinant via leading principal minors:
    /// `p_k = sum_{i<=k} (-s)^(k-i) a_ik p_{i-1}` with `p_0 = 1`.
    pub fn det(&self) -> Scalar {
        self.leading_minors().pop().unwrap()
    }

    /// `p_0 ..= p_n`, the leading principal minors.
    pub fn leading_minors(&self) -> Vec<Scalar> {
        let neg_s = -self.subdiag.clone();
        let powers = powers(&neg_s, self.n);
        let mut p = Vec::with_capacity(self.n + 1);
        p.push(Scalar::one());
        for k in 0..self.n {
            let mut acc = Scalar::zero();
            for i in 0..=k {
                let a = self.upper_entry(i, k);
                if !a.is_zero() {
                    acc += &powers[k - i] * a * &p[i];
                }
            }
            p.push(acc);
        }
        p
    }

    /// `H_1 ..= H_{n+1}` where `H_k` is the determinant of the bottom-right
    /// `(n+1-k)`-square block and `H_{n+1} = 1`. Computed by expanding each
    /// block along its first row, independently of [`HessMatrix::det`].
    pub fn trailing_minors(&self) -> Vec<Scalar> {
        let n = self.n;
        let neg_s = -self.subdiag.clone();
        let powers = powers(&neg_s, n);
        // h[r] = det of the block starting at row r; h[n] = 1
        let mut h = vec![Scalar::zero(); n + 1];
        h[n] = Scalar::one();
        for r in (0..n).rev() {
            let mut acc = Scalar::zero();
            for j in r..n {
                let a = self.upper_entry(r, j);
                if !a.is_zero() {
                    acc += &powers[j - r] * a * &h[j + 1];
                }
            }
            h[r] = acc;
        }
        h
    }

    /// Matrix with every entry (subdiagonal included) multiplied by `factor`.
    pub fn scaled(&self, factor: &Scalar) -> HessMatrix {
        HessMatrix {
            n: self.n,
            subdiag: &self.subdiag * factor,
            upper: self.upper.iter().map(|a| a * factor).collect(),
        }
    }
}

fn powers(x: &Scalar, n: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Scalar::one());
    for k in 1..=n {
        let next = &out[k - 1] * x;
        out.push(next);
    }
    out
}

/// The finite set upper-triangular entries are drawn from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Population {
    /// `{0, t}`
    Binary { t: Scalar },
    /// `{0, 1, ..., d}`
    Range { d: u32 },
}

impl Population {
    pub fn binary(t: Scalar) -> Self {
        Population::Binary { t }
    }

    /// Number of admissible values per entry.
    pub fn base(&self) -> u32 {
        match self {
            Population::Binary { .. } => 2,
            Population::Range { d } => d + 1,
        }
    }

    /// Value selected by `digit`.
    pub fn value(&self, digit: u32) -> Scalar {
        match self {
            Population::Binary { t } if digit == 1 => t.clone(),
            Population::Binary { .. } => Scalar::zero(),
            Population::Range { .. } => int(i64::from(digit)),
        }
    }

    /// Digit of `value`, if it belongs to the population.
    pub fn digit_of(&self, value: &Scalar) -> Option<u32> {
        if value.is_zero() {
            return Some(0);
        }
        match self {
            Population::Binary { t } => (value == t).then_some(1),
            Population::Range { d } => {
                if !value.is_integer() {
                    return None;
                }
                let v = value.to_integer().to_u32()?;
                (v <= *d).then_some(v)
            }
        }
    }

    /// Largest absolute entry value.
    pub fn max_abs(&self) -> Scalar {
        match self {
            Population::Binary { t } => num_traits::Signed::abs(t),
            Population::Range { d } => int(i64::from(*d)),
        }
    }
}

/// Upper-triangular entries of an `n x n` matrix encoded as one integer:
/// digit `k` (base = population size, least significant first) selects the
/// value at storage slot `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryPattern {
    n: usize,
    population: Population,
    code: BigUint,
}

impl EntryPattern {
    pub fn new(n: usize, population: Population, code: BigUint) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionTooSmall { what: "a pattern", min: 1, n });
        }
        let base = population.base();
        let slots = slot_count(n);
        if code >= BigUint::from(base).pow(slots as u32) {
            return Err(Error::CodeOutOfRange { slots, base });
        }
        Ok(EntryPattern { n, population, code })
    }

    /// Encodes the upper part of `m`, if every entry lies in `population`.
    pub fn from_matrix(m: &HessMatrix, population: Population) -> Option<Self> {
        let base = BigUint::from(population.base());
        let mut code = BigUint::zero();
        for a in m.upper().iter().rev() {
            code = code * &base + BigUint::from(population.digit_of(a)?);
        }
        Some(EntryPattern { n: m.n(), population, code })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn population(&self) -> &Population {
        &self.population
    }

    pub fn code(&self) -> &BigUint {
        &self.code
    }

    /// One digit per storage slot.
    pub fn digits(&self) -> Vec<u32> {
        let base = BigUint::from(self.population.base());
        let mut rest = self.code.clone();
        let mut out = Vec::with_capacity(slot_count(self.n));
        for _ in 0..slot_count(self.n) {
            let (q, r) = rest.div_rem(&base);
            out.push(r.to_u32().unwrap());
            rest = q;
        }
        out
    }

    /// The matrix this pattern describes, with subdiagonal `s`.
    pub fn realize(&self, s: &Scalar) -> HessMatrix {
        HessMatrix {
            n: self.n,
            subdiag: s.clone(),
            upper: self.digits().into_iter().map(|d| self.population.value(d)).collect(),
        }
    }

    fn require_binary(&self, what: &'static str) -> Result<&Scalar> {
        match &self.population {
            Population::Binary { t } => Ok(t),
            Population::Range { .. } => Err(Error::NotBinary(what)),
        }
    }

    /// Counts of non-vanishing index chains, one per power of `t`.
    ///
    /// `c_l` is the number of chains `i_1 < ... < i_{l-1}` splitting the
    /// diagonal into `l` consecutive blocks whose corner entries are all
    /// non-zero. Dynamic programming over block ends, `O(n^3)`.
    pub fn path_coefficients(&self) -> Result<CoeffVector> {
        self.require_binary("path coefficients")?;
        let n = self.n;
        let digits = self.digits();
        // ways[j][l]: covers of rows 0..j by l blocks
        let mut ways = vec![vec![0u64; n + 1]; n + 1];
        ways[0][0] = 1;
        for j in 1..=n {
            for i in 1..=j {
                if digits[slot_index(n, i - 1, j - 1)] == 0 {
                    continue;
                }
                for l in 1..=i {
                    let prev = ways[i - 1][l - 1];
                    ways[j][l] = ways[j][l].checked_add(prev).expect("chain count overflow");
                }
            }
        }
        Ok(CoeffVector { c: ways[n][1..].to_vec() })
    }

    /// `q(x)` with `q(s/t) * t^n = det(realize(s))`. The coefficient of
    /// `x^(n-l)` is `(-1)^(n-l) c_l`.
    pub fn det_polynomial(&self) -> Result<UniPoly> {
        let t = self.require_binary("determinant polynomials")?.clone();
        if t.is_zero() {
            return Err(precondition("determinant polynomials need t != 0"));
        }
        let q = self.path_coefficients()?.to_polynomial();
        debug_assert!({
            // homogeneity spot check at s = 2t
            let s = &t * int(2);
            self.realize(&s).det() == pow(&t, self.n) * q.eval(&int(2))
        });
        Ok(q)
    }
}

/// Chain counts `c_1 ..= c_n` of a binary pattern, so that
/// `det = sum_l (-1)^(n-l) c_l s^(n-l) t^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffVector {
    pub c: Vec<u64>,
}

impl CoeffVector {
    pub fn n(&self) -> usize {
        self.c.len()
    }

    /// `c_l`, 1-based; zero outside `1..=n`.
    pub fn get(&self, l: usize) -> u64 {
        l.checked_sub(1).and_then(|i| self.c.get(i)).copied().unwrap_or(0)
    }

    /// Determinant at `(s, t)` rebuilt from the counts.
    pub fn reconstruct(&self, s: &Scalar, t: &Scalar) -> Scalar {
        let n = self.n();
        let neg_s = -s.clone();
        (1..=n)
            .map(|l| pow(&neg_s, n - l) * pow(t, l) * int(self.get(l) as i64))
            .fold(Scalar::zero(), |a, b| a + b)
    }

    pub fn to_polynomial(&self) -> UniPoly {
        let n = self.n();
        let mut coeffs = vec![num_bigint::BigInt::zero(); n + 1];
        for l in 1..=n {
            let v = num_bigint::BigInt::from(self.get(l));
            coeffs[n - l] = if (n - l) % 2 == 0 { v } else { -v };
        }
        UniPoly::new(coeffs)
    }
}
