//! Exhaustive maximizer search over finite populations.
//!
//! Patterns are enumerated column by column (see [`kernel`]). A search can
//! be split into any number of partitions; each partition walks a
//! contiguous range of leading-column prefixes and the results combine
//! with [`merge`], so the outcome never depends on how the work was split.

mod kernel;
mod template;

pub use self::kernel::{Chains, LeafVisitor, MAX_N};
pub use self::template::Template;

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::time::Duration;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use self::kernel::{fits_i128, magnitude_bound, ChainModel, IntModel, Layout};
use crate::arith::{pow, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::hessenberg::{CoeffVector, EntryPattern, Population};

/// Default evaluation budget.
pub const DEFAULT_BUDGET: u128 = 1 << 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub n: usize,
    pub s: Scalar,
    pub population: Population,
    /// Keep every maximizing code instead of only the smallest.
    pub collect_all: bool,
    /// Restrict the search to fills of a template (binary populations only).
    pub template: Option<Template>,
    pub budget: u128,
}

impl SearchSpec {
    pub fn new(n: usize, s: Scalar, population: Population) -> Self {
        SearchSpec { n, s, population, collect_all: false, template: None, budget: DEFAULT_BUDGET }
    }

    pub fn collect_all(mut self, yes: bool) -> Self {
        self.collect_all = yes;
        self
    }

    pub fn template(mut self, template: Template) -> Self {
        self.template = Some(template);
        self
    }

    pub fn budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    /// Same spec with a different subdiagonal value.
    pub fn with_s(mut self, s: Scalar) -> Self {
        self.s = s;
        self
    }

    fn layout(&self) -> Result<Layout> {
        let pins: Option<Vec<Option<u32>>> = match &self.template {
            Some(t) => {
                if !matches!(self.population, Population::Binary { .. }) {
                    return Err(Error::NotBinary("a template search"));
                }
                if t.n() != self.n {
                    return Err(Error::Precondition("template dimension does not match n".into()));
                }
                Some(t.pins().to_vec())
            }
            None => None,
        };
        Layout::new(self.n, self.population.base(), pins.as_deref())
    }

    /// Number of patterns the search visits, or `None` when it does not fit `u128`.
    pub fn space_size(&self) -> Option<u128> {
        self.layout().ok().and_then(|l| l.size())
    }

    /// Validates the search parameters and the budget; returns the space size.
    pub fn check(&self) -> Result<u128> {
        let layout = self.layout()?;
        let size = match layout.size() {
            Some(size) if size <= self.budget => size,
            other => {
                let size = match other {
                    Some(size) => size.to_string(),
                    None => BigUint::from(self.population.base())
                        .pow(crate::hessenberg::slot_count(self.n) as u32)
                        .to_string(),
                };
                return Err(Error::BudgetExceeded { size, budget: self.budget });
            }
        };
        Ok(size)
    }
}

/// Outcome of a maximizer search. Equality ignores `elapsed`.
#[derive(Clone, Debug)]
pub struct MaxRecord {
    pub n: usize,
    pub s: Scalar,
    pub population: Population,
    pub max_abs: Scalar,
    /// Ascending. Every maximizer with `collect_all`, otherwise the smallest.
    pub maximizers: Vec<u128>,
    /// Number of maximizing patterns.
    pub count: u128,
    pub evaluated: u128,
    pub elapsed: Duration,
}

impl PartialEq for MaxRecord {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n
            && self.s == o.s
            && self.population == o.population
            && self.max_abs == o.max_abs
            && self.maximizers == o.maximizers
            && self.count == o.count
            && self.evaluated == o.evaluated
    }
}

impl Eq for MaxRecord {}

impl MaxRecord {
    /// Maximizers as patterns.
    pub fn patterns(&self) -> Vec<EntryPattern> {
        self.maximizers
            .iter()
            .map(|&c| {
                EntryPattern::new(self.n, self.population.clone(), BigUint::from(c))
                    .expect("codes come from the search layout")
            })
            .collect()
    }
}

/// Combines two partial records of the same search.
pub fn merge(a: MaxRecord, b: MaxRecord, collect_all: bool) -> MaxRecord {
    let evaluated = a.evaluated + b.evaluated;
    let elapsed = a.elapsed.max(b.elapsed);
    let (mut winner, other) = match a.max_abs.cmp(&b.max_abs) {
        core::cmp::Ordering::Less => (b, None),
        core::cmp::Ordering::Greater => (a, None),
        core::cmp::Ordering::Equal => (a, Some(b)),
    };
    if let Some(other) = other {
        winner.count += other.count;
        winner.maximizers.extend(other.maximizers);
        winner.maximizers.sort_unstable();
        winner.maximizers.dedup();
        if !collect_all {
            winner.maximizers.truncate(1);
        }
    }
    winner.evaluated = evaluated;
    winner.elapsed = elapsed;
    winner
}

/// Exact maximum of `|det|` over the whole space.
pub fn search_max(spec: &SearchSpec) -> Result<MaxRecord> {
    search_partition(spec, 0, 1)
}

/// The share of [`search_max`] belonging to partition `part` of `parts`.
pub fn search_partition(spec: &SearchSpec, part: usize, parts: usize) -> Result<MaxRecord> {
    spec.check()?;
    if parts == 0 || part >= parts {
        return Err(Error::Precondition("partition index out of range".into()));
    }
    let layout = spec.layout()?;
    let scaling = Scaling::new(spec);
    let bound = magnitude_bound(spec.n, spec.population.base() - 1, &scaling.unit, &scaling.s);
    let (best, mut maximizers, count, evaluated) = if fits_i128(&bound) {
        let model = IntModel::new(
            spec.n,
            scaling.unit.to_i128().unwrap(),
            -scaling.s.to_i128().unwrap(),
            |a, b| a * b,
        );
        let mut v = Best::<u128>::new(spec.collect_all);
        let evaluated = layout.run(&model, part, parts, &mut |code, d: &i128| {
            v.offer(code, d.unsigned_abs())
        });
        (v.best.map(BigUint::from), v.codes, v.count, evaluated)
    } else {
        let model = IntModel::new(spec.n, scaling.unit.clone(), -scaling.s.clone(), |a, b| a * b);
        let mut v = Best::<BigUint>::new(spec.collect_all);
        let evaluated = layout.run(&model, part, parts, &mut |code, d: &BigInt| {
            v.offer_ref(code, d.magnitude())
        });
        (v.best, v.codes, v.count, evaluated)
    };
    maximizers.sort_unstable();
    let max_abs = match best {
        Some(b) => Scalar::new(BigInt::from(b), scaling.denominator.clone()),
        // an empty partition; loses every merge
        None => -Scalar::one(),
    };
    Ok(MaxRecord {
        n: spec.n,
        s: spec.s.clone(),
        population: spec.population.clone(),
        max_abs,
        maximizers,
        count,
        evaluated,
        elapsed: Duration::ZERO,
    })
}

/// Integer images of `s` and the entry unit under a common denominator `L`;
/// determinants scale by `L^n`.
struct Scaling {
    s: BigInt,
    unit: BigInt,
    denominator: BigInt,
}

impl Scaling {
    fn new(spec: &SearchSpec) -> Self {
        let unit = match &spec.population {
            Population::Binary { t } => t.clone(),
            Population::Range { .. } => Scalar::one(),
        };
        let l = spec.s.denom().lcm(unit.denom());
        let lr = Scalar::from_integer(l.clone());
        Scaling {
            s: (&spec.s * &lr).to_integer(),
            unit: (&unit * &lr).to_integer(),
            denominator: pow(&lr, spec.n).to_integer(),
        }
    }
}

struct Best<M> {
    collect_all: bool,
    best: Option<M>,
    codes: Vec<u128>,
    count: u128,
}

impl<M: Ord + Clone> Best<M> {
    fn new(collect_all: bool) -> Self {
        Best { collect_all, best: None, codes: Vec::new(), count: 0 }
    }

    #[inline(always)]
    fn offer(&mut self, code: u128, value: M) {
        match &self.best {
            Some(b) if value < *b => {}
            Some(b) if value == *b => self.tie(code),
            _ => self.replace(code, value),
        }
    }

    fn offer_ref(&mut self, code: u128, value: &M) {
        match &self.best {
            Some(b) if value < b => {}
            Some(b) if value == b => self.tie(code),
            _ => self.replace(code, value.clone()),
        }
    }

    fn tie(&mut self, code: u128) {
        self.count += 1;
        if self.collect_all {
            self.codes.push(code);
        } else if code < self.codes[0] {
            self.codes[0] = code;
        }
    }

    fn replace(&mut self, code: u128, value: M) {
        self.best = Some(value);
        self.count = 1;
        self.codes.clear();
        self.codes.push(code);
    }
}

/// Calls `visit(code, det)` for every pattern of the partition, with the
/// exact determinant. Intended for checks; slower than [`search_partition`].
pub fn visit_determinants(
    spec: &SearchSpec,
    part: usize,
    parts: usize,
    mut visit: impl FnMut(u128, Scalar),
) -> Result<u128> {
    spec.check()?;
    let layout = spec.layout()?;
    let scaling = Scaling::new(spec);
    let den = Scalar::from_integer(scaling.denominator.clone());
    let model = IntModel::new(spec.n, scaling.unit.clone(), -scaling.s.clone(), |a, b| a * b);
    Ok(layout.run(&model, part, parts, &mut |code, d: &BigInt| {
        visit(code, Scalar::from_integer(d.clone()) / &den)
    }))
}

/// Calls `visit(code, chains)` for every binary pattern of the partition.
/// `chains.0[l]` is the path coefficient `c_l`.
pub fn visit_chains(
    spec: &SearchSpec,
    part: usize,
    parts: usize,
    mut visit: impl FnMut(u128, &Chains),
) -> Result<u128> {
    if !matches!(spec.population, Population::Binary { .. }) {
        return Err(Error::NotBinary("chain enumeration"));
    }
    spec.check()?;
    let layout = spec.layout()?;
    Ok(layout.run(&ChainModel, part, parts, &mut |code, c: &Chains| visit(code, c)))
}

/// Distinct chain-count vectors with their smallest pattern code.
pub type ChainTable = BTreeMap<Chains, u128>;

/// Distinct path-coefficient vectors over one partition.
pub fn distinct_chains(spec: &SearchSpec, part: usize, parts: usize) -> Result<ChainTable> {
    let mut table = ChainTable::new();
    visit_chains(spec, part, parts, |code, c| {
        table
            .entry(*c)
            .and_modify(|best| *best = (*best).min(code))
            .or_insert(code);
    })?;
    Ok(table)
}

/// Merges chain tables keeping the smallest code per entry.
pub fn merge_chain_tables(mut a: ChainTable, b: ChainTable) -> ChainTable {
    for (k, v) in b {
        a.entry(k).and_modify(|c| *c = (*c).min(v)).or_insert(v);
    }
    a
}

/// Chain counts as a [`CoeffVector`].
pub fn chains_to_coefficients(n: usize, chains: &Chains) -> CoeffVector {
    CoeffVector { c: chains.coefficients(n) }
}

/// Determinant polynomial in `x = s/t` from chain counts.
pub fn chains_to_polynomial(n: usize, chains: &Chains) -> UniPoly {
    chains_to_coefficients(n, chains).to_polynomial()
}

/// Largest `c_3` over binary patterns with `c_2 = 0`, and how many
/// patterns attain it. `None` if no pattern has `c_2 = 0` with `n >= 3`.
pub fn max_cubic_with_zero_quadratic(
    spec: &SearchSpec,
    part: usize,
    parts: usize,
) -> Result<Option<(u32, u128)>> {
    let mut best: Option<(u32, u128)> = None;
    visit_chains(spec, part, parts, |_, c| {
        if c.0[2] != 0 {
            return;
        }
        best = match best {
            Some((b, k)) if c.0[3] < b => Some((b, k)),
            Some((b, k)) if c.0[3] == b => Some((b, k + 1)),
            _ => Some((c.0[3], 1)),
        };
    })?;
    Ok(best)
}

/// Magnitude of a maximizer code's determinant, for spot checks.
pub fn code_abs_det(record: &MaxRecord, code: u128) -> Result<Scalar> {
    let p = EntryPattern::new(record.n, record.population.clone(), BigUint::from(code))?;
    Ok(p.realize(&record.s).det().abs())
}
