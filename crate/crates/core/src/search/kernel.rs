//! Column-append enumeration.
//!
//! Leading minors satisfy `p_k = sum_{i<=k} a_ik (-s)^(k-i) p_{i-1}`, so
//! appending column `k` only needs `p_0..p_{k-1}`. Every entry is
//! `digit * unit`, which makes `p_k` a digit-weighted sum of per-row weights
//! `w_i = unit (-s)^(k-i) p_{i-1}`. The choices of one column are walked
//! with a mixed-radix odometer, so each step costs one addition on average.
//!
//! The same walk runs over three value types: `i128` when a magnitude bound
//! proves it cannot overflow, `BigInt` otherwise, and chain-count vectors
//! for the polynomial view.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hessenberg::slot_index;

/// Largest supported dimension.
pub const MAX_N: usize = 16;

pub(crate) trait Value: Clone {
    fn add_assign(&mut self, o: &Self);
    fn sub_scaled(&mut self, o: &Self, d: u32);
}

impl Value for i128 {
    #[inline(always)]
    fn add_assign(&mut self, o: &Self) {
        *self += *o;
    }

    #[inline(always)]
    fn sub_scaled(&mut self, o: &Self, d: u32) {
        *self -= *o * d as i128;
    }
}

impl Value for BigInt {
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }

    fn sub_scaled(&mut self, o: &Self, d: u32) {
        *self -= o * d;
    }
}

/// Chain counts of a leading minor: `c[l]` is the number of chains with
/// `l` blocks. For the full matrix these are the path coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chains(pub [u32; MAX_N + 1]);

impl Chains {
    /// `c_1..c_n` of the full matrix.
    pub fn coefficients(&self, n: usize) -> Vec<u64> {
        self.0[1..=n].iter().map(|&c| c as u64).collect()
    }
}

impl Value for Chains {
    #[inline(always)]
    fn add_assign(&mut self, o: &Self) {
        for (a, b) in self.0.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
    }

    #[inline(always)]
    fn sub_scaled(&mut self, o: &Self, d: u32) {
        for (a, b) in self.0.iter_mut().zip(o.0.iter()) {
            *a -= *b * d;
        }
    }
}

pub(crate) trait Model {
    type V: Value;
    fn zero(&self) -> Self::V;
    fn one(&self) -> Self::V;
    /// `w_i` for column `k` (both 1-based) given `p_{i-1}`.
    fn weight(&self, k: usize, i: usize, prev: &Self::V) -> Self::V;
}

/// Integer model: entries are `digit * unit`, subdiagonal `s`;
/// `powers[e] = unit * (-s)^e`.
pub(crate) struct IntModel<I> {
    pub powers: Vec<I>,
}

impl Model for IntModel<i128> {
    type V = i128;

    fn zero(&self) -> i128 {
        0
    }

    fn one(&self) -> i128 {
        1
    }

    #[inline(always)]
    fn weight(&self, k: usize, i: usize, prev: &i128) -> i128 {
        self.powers[k - i] * *prev
    }
}

impl Model for IntModel<BigInt> {
    type V = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn weight(&self, k: usize, i: usize, prev: &BigInt) -> BigInt {
        &self.powers[k - i] * prev
    }
}

impl<I: Clone> IntModel<I> {
    pub fn new(n: usize, unit: I, neg_s: I, mul: impl Fn(&I, &I) -> I) -> Self {
        let mut powers = Vec::with_capacity(n);
        powers.push(unit);
        for e in 1..n {
            let next = mul(&powers[e - 1], &neg_s);
            powers.push(next);
        }
        IntModel { powers }
    }
}

/// Counts chains instead of evaluating: multiplying by `t` shifts the
/// block count, `(-s)` only contributes the sign, which is fixed by `l`.
pub(crate) struct ChainModel;

impl Model for ChainModel {
    type V = Chains;

    fn zero(&self) -> Chains {
        Chains([0; MAX_N + 1])
    }

    fn one(&self) -> Chains {
        let mut c = [0; MAX_N + 1];
        c[0] = 1;
        Chains(c)
    }

    #[inline(always)]
    fn weight(&self, _k: usize, _i: usize, prev: &Chains) -> Chains {
        let mut c = [0; MAX_N + 1];
        c[1..].copy_from_slice(&prev.0[..MAX_N]);
        Chains(c)
    }
}

pub trait LeafVisitor<V> {
    fn leaf(&mut self, code: u128, value: &V);
}

impl<V, F: FnMut(u128, &V)> LeafVisitor<V> for F {
    fn leaf(&mut self, code: u128, value: &V) {
        self(code, value)
    }
}

#[derive(Clone, Debug)]
struct Column {
    /// Free rows (1-based) and the code weight of their slot.
    free: Vec<(usize, u128)>,
    /// Fixed rows (1-based) with their digit.
    fixed: Vec<(usize, u32)>,
    fixed_code: u128,
}

impl Column {
    fn choices(&self, base: u32) -> u128 {
        (base as u128).pow(self.free.len() as u32)
    }
}

/// Compiled enumeration layout shared by all value types.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    n: usize,
    max_digit: u32,
    columns: Vec<Column>,
    depth: usize,
    prefixes: u128,
}

/// Target number of prefixes; enough to spread work over many threads.
const PREFIX_TARGET: u128 = 1 << 12;

impl Layout {
    /// `fixed[slot]` pins a slot to a digit; `None` leaves it free.
    pub fn new(n: usize, base: u32, fixed: Option<&[Option<u32>]>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("search requires n >= 1".into()));
        }
        if n > MAX_N {
            return Err(Error::DimensionTooLarge { what: "search", max: MAX_N, n });
        }
        let slots = crate::hessenberg::slot_count(n);
        if (base as u128).checked_pow(slots as u32).is_none() {
            return Err(Error::CodeOutOfRange { slots, base });
        }
        let mut columns = Vec::with_capacity(n);
        for k in 1..=n {
            let mut col = Column { free: Vec::new(), fixed: Vec::new(), fixed_code: 0 };
            for i in 1..=k {
                let slot = slot_index(n, i - 1, k - 1);
                let weight = (base as u128).pow(slot as u32);
                match fixed.and_then(|f| f[slot]) {
                    Some(d) => {
                        col.fixed.push((i, d));
                        col.fixed_code += d as u128 * weight;
                    }
                    None => col.free.push((i, weight)),
                }
            }
            columns.push(col);
        }
        let mut depth = 0;
        let mut prefixes: u128 = 1;
        while depth + 1 < n && prefixes < PREFIX_TARGET {
            prefixes *= columns[depth].choices(base);
            depth += 1;
        }
        Ok(Layout { n, max_digit: base - 1, columns, depth, prefixes })
    }

    /// Number of leaves.
    pub fn size(&self) -> Option<u128> {
        let base = self.max_digit + 1;
        self.columns
            .iter()
            .try_fold(1u128, |acc, c| acc.checked_mul(c.choices(base)))
    }

    /// Leaves reached by the prefix range of `part` out of `parts`.
    pub fn prefix_range(&self, part: usize, parts: usize) -> (u128, u128) {
        let p = self.prefixes;
        let lo = p * part as u128 / parts as u128;
        let hi = p * (part as u128 + 1) / parts as u128;
        (lo, hi)
    }

    pub fn run<M: Model, L: LeafVisitor<M::V>>(
        &self,
        model: &M,
        part: usize,
        parts: usize,
        visitor: &mut L,
    ) -> u128 {
        assert!(parts > 0 && part < parts, "partition index out of range");
        let (lo, hi) = self.prefix_range(part, parts);
        let mut walk = Walk {
            layout: self,
            model,
            visitor,
            p: alloc::vec![model.zero(); self.n + 1],
            w: alloc::vec![alloc::vec![model.zero(); self.n + 1]; self.n + 1],
            leaves: 0,
        };
        walk.p[0] = model.one();
        for index in lo..hi {
            walk.prefix(index);
        }
        walk.leaves
    }
}

struct Walk<'a, M: Model, L> {
    layout: &'a Layout,
    model: &'a M,
    visitor: &'a mut L,
    p: Vec<M::V>,
    w: Vec<Vec<M::V>>,
    leaves: u128,
}

impl<M: Model, L: LeafVisitor<M::V>> Walk<'_, M, L> {
    fn prefix(&mut self, mut index: u128) {
        let base = self.layout.max_digit as u128 + 1;
        let mut code: u128 = 0;
        for k in 1..=self.layout.depth {
            let col = &self.layout.columns[k - 1];
            let mut sum = self.model.zero();
            for &(i, d) in &col.fixed {
                let w = self.model.weight(k, i, &self.p[i - 1]);
                for _ in 0..d {
                    sum.add_assign(&w);
                }
            }
            code += col.fixed_code;
            for &(i, weight) in &col.free {
                let d = (index % base) as u32;
                index /= base;
                if d > 0 {
                    let w = self.model.weight(k, i, &self.p[i - 1]);
                    for _ in 0..d {
                        sum.add_assign(&w);
                    }
                    code += d as u128 * weight;
                }
            }
            self.p[k] = sum;
        }
        self.column(self.layout.depth + 1, code);
    }

    fn column(&mut self, k: usize, code: u128) {
        let layout = self.layout;
        let col = &layout.columns[k - 1];
        let d_max = layout.max_digit;
        let mut w = core::mem::take(&mut self.w[k]);
        for i in 1..=k {
            w[i] = self.model.weight(k, i, &self.p[i - 1]);
        }
        let mut sum = self.model.zero();
        for &(i, d) in &col.fixed {
            for _ in 0..d {
                sum.add_assign(&w[i]);
            }
        }
        let mut code = code + col.fixed_code;
        let mut digits = [0u32; MAX_N];
        let free = &col.free;
        let last = k == layout.n;
        loop {
            if last {
                self.leaves += 1;
                self.visitor.leaf(code, &sum);
            } else {
                self.p[k] = sum.clone();
                self.column(k + 1, code);
            }
            let mut r = 0;
            loop {
                if r == free.len() {
                    self.w[k] = w;
                    return;
                }
                let (row, weight) = free[r];
                if digits[r] < d_max {
                    digits[r] += 1;
                    sum.add_assign(&w[row]);
                    code += weight;
                    break;
                }
                digits[r] = 0;
                sum.sub_scaled(&w[row], d_max);
                code -= d_max as u128 * weight;
                r += 1;
            }
        }
    }
}

/// `B_0 = 1`, `B_k = sum_i D U S^(k-i) B_{i-1}`: bounds every partial sum
/// of the walk in absolute value.
pub(crate) fn magnitude_bound(n: usize, max_digit: u32, unit: &BigInt, s: &BigInt) -> BigUint {
    let u = unit.abs().to_biguint().unwrap() * max_digit;
    let s = s.abs().to_biguint().unwrap();
    let mut b: Vec<BigUint> = alloc::vec![BigUint::one()];
    let mut worst = BigUint::one();
    for k in 1..=n {
        let mut acc = BigUint::zero();
        let mut sp = BigUint::one();
        for i in (1..=k).rev() {
            acc += &u * &sp * &b[i - 1];
            sp *= &s;
        }
        if acc > worst {
            worst = acc.clone();
        }
        b.push(acc);
    }
    worst
}

/// True when `bound` times a small safety factor fits `i128`.
pub(crate) fn fits_i128(bound: &BigUint) -> bool {
    (bound << 2u32).to_i128().is_some()
}
