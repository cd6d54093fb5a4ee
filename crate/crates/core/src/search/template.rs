//! Restricted search layout for the large-ratio regime.
//!
//! The layout pins every entry of the block-form matrix `W_n` except two
//! triangular regions, one on each side of the `t`-block. Filling both
//! regions with zeros gives `W_n` back.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::arith::int;
use crate::constructions::Family;
use crate::error::{Error, Result};
use crate::hessenberg::{slot_count, slot_index, EntryPattern, HessMatrix, Population};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    n: usize,
    block_rows: usize,
    fixed: Vec<Option<u32>>,
}

impl Template {
    /// Template for `n >= 5` with the same block orientation as `W_n`.
    pub fn new(n: usize) -> Result<Self> {
        check(n)?;
        Ok(Self::with_block_rows(n, (n - 1) / 2))
    }

    /// Even-`n` variant aligned with the transposed block of `Wprime`.
    pub fn new_prime(n: usize) -> Result<Self> {
        check(n)?;
        if n % 2 == 1 {
            return Err(Error::Precondition("the transposed template requires even n".into()));
        }
        Ok(Self::with_block_rows(n, n - 1 - (n - 1) / 2))
    }

    fn with_block_rows(n: usize, a: usize) -> Self {
        let w = block_pattern(n, a);
        let mut fixed: Vec<Option<u32>> = w.iter().map(|&d| Some(d)).collect();
        for i in 0..n {
            for j in i..n {
                let top = (1..a).contains(&i) && j < a;
                let bottom = i > a && j + 2 <= n && i + 2 <= n;
                if top || bottom {
                    fixed[slot_index(n, i, j)] = None;
                }
            }
        }
        Template { n, block_rows: a, fixed }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rows in the `t`-block (`k` for `W_n`, `k + 1` for the transposed form).
    pub fn block_rows(&self) -> usize {
        self.block_rows
    }

    /// Per-slot pins; `None` marks a free slot.
    pub fn pins(&self) -> &[Option<u32>] {
        &self.fixed
    }

    /// Free slot indices in ascending order.
    pub fn free_slots(&self) -> Vec<usize> {
        (0..self.fixed.len()).filter(|&k| self.fixed[k].is_none()).collect()
    }

    pub fn free_count(&self) -> usize {
        self.fixed.iter().filter(|p| p.is_none()).count()
    }

    /// Binary pattern code with the free slots set from the low bits of
    /// `fill` (bit `b` goes to the `b`-th free slot).
    pub fn fill(&self, fill: u128) -> u128 {
        let mut code = 0u128;
        let mut b = 0;
        for (slot, pin) in self.fixed.iter().enumerate() {
            let bit = match pin {
                Some(d) => *d as u128,
                None => {
                    b += 1;
                    (fill >> (b - 1)) & 1
                }
            };
            code |= bit << slot;
        }
        code
    }

    /// Whether a binary pattern code agrees with every pin.
    pub fn admits(&self, code: u128) -> bool {
        self.fixed
            .iter()
            .enumerate()
            .all(|(slot, pin)| pin.map_or(true, |d| (code >> slot) & 1 == d as u128))
    }

    /// The all-zero fill as a pattern over `{0, t}`.
    pub fn zero_fill(&self, population: Population) -> Result<EntryPattern> {
        EntryPattern::new(self.n, population, BigUint::from(self.fill(0)))
    }
}

fn check(n: usize) -> Result<()> {
    if n < 5 {
        return Err(Error::DimensionTooSmall { what: "the template", min: 5, n });
    }
    if slot_count(n) > 128 {
        return Err(Error::DimensionTooLarge { what: "the template", max: 15, n });
    }
    Ok(())
}

/// Digits of the block-form matrix with `a` block rows.
fn block_pattern(n: usize, a: usize) -> Vec<u32> {
    let family = if a == (n - 1) / 2 { Family::W } else { Family::WPrime };
    let m: HessMatrix = family.build(n, &int(1), &int(1)).expect("n >= 5");
    m.upper().iter().map(|v| if v == &int(1) { 1 } else { 0 }).collect()
}
