//! Maximizers as a function of the ratio `x = s/t` for binary populations.
//!
//! Every binary pattern has a determinant polynomial `q` with
//! `det = t^n q(s/t)`, so at a fixed ratio the maximizers are the patterns
//! whose `|q(x)|` is largest. The envelope of all distinct `q` gives the
//! exact ratios where the maximizer set changes.

mod envelope;

pub use self::envelope::{
    bounds, certify, envelope, rational_between, Candidate, EnvelopeSegment, TransitionDiagram,
};

use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::arith::{int, RealPoint, Scalar, UniPoly};
use crate::constructions::Family;
use crate::error::{Error, Result};
use crate::hessenberg::{EntryPattern, Population};
use crate::oracles::large_threshold;
use crate::search::{
    chains_to_polynomial, distinct_chains, search_max, Chains, ChainTable, MaxRecord, SearchSpec,
};

/// Largest dimension for which the full polynomial table is built.
pub const FULL_ENVELOPE_MAX_N: usize = 6;

/// Candidates from a table of distinct chain vectors, ordered by code.
pub fn candidates_from_chains(n: usize, table: &ChainTable) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = table
        .iter()
        .map(|(c, &code)| Candidate { poly: chains_to_polynomial(n, c), code })
        .collect();
    out.sort_by_key(|c| c.code);
    out
}

fn binary_spec(n: usize, budget: u128) -> SearchSpec {
    SearchSpec::new(n, Scalar::one(), Population::binary(Scalar::one())).budget(budget)
}

/// Every distinct determinant polynomial of `n x n` binary patterns.
pub fn all_candidates(n: usize, budget: u128) -> Result<Vec<Candidate>> {
    if n > FULL_ENVELOPE_MAX_N {
        return Err(Error::DimensionTooLarge { what: "the full envelope", max: FULL_ENVELOPE_MAX_N, n });
    }
    let table = distinct_chains(&binary_spec(n, budget), 0, 1)?;
    Ok(candidates_from_chains(n, &table))
}

/// Envelope over all binary patterns of dimension `n`.
pub fn envelope_for_dimension(
    n: usize,
    lo: &Scalar,
    hi: Option<&Scalar>,
    budget: u128,
) -> Result<TransitionDiagram> {
    if !lo.is_positive() {
        return Err(Error::Precondition("the envelope window must start above 0".into()));
    }
    envelope(&all_candidates(n, budget)?, lo, hi)
}

/// Determinant polynomial of a named family member.
pub fn family_polynomial(family: Family, n: usize) -> Result<UniPoly> {
    let m = family.build(n, &int(2), &int(1))?;
    let p = EntryPattern::from_matrix(&m, Population::binary(int(1)))
        .ok_or_else(|| Error::Precondition("family is not a binary pattern".into()))?;
    p.det_polynomial()
}

/// Result of the near-unit margin measurement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Margin {
    /// The corner-swapped family stops being a maximizer here.
    Transition(RealPoint),
    /// It stays on the envelope up to the right edge of the window.
    NoTransition(Scalar),
    /// It is not the maximizer just right of `x = 1`.
    NotLeading,
}

/// Largest `x* > 1` such that `U_n^(rc)` maximizes on `(1, x*)`, searched
/// on `[1, 4n^2/5]` with the given candidates.
pub fn margin_from(n: usize, candidates: &[Candidate]) -> Result<Margin> {
    let urc = family_polynomial(Family::Urc, n)?;
    let same = |c: &Candidate| c.poly == urc || c.poly == -urc.clone();
    let edge = large_threshold(n);
    let diagram = envelope(candidates, &Scalar::one(), Some(&edge))?;
    let mut segs = diagram.segments.iter();
    let first = segs.next().expect("at least one segment");
    if !first.winners.iter().any(same) {
        return Ok(Margin::NotLeading);
    }
    let mut end = first.hi.clone();
    for seg in segs {
        if !seg.winners.iter().any(same) {
            break;
        }
        end = seg.hi.clone();
    }
    Ok(match end {
        Some(RealPoint::Rational(x)) if x == edge => Margin::NoTransition(x),
        Some(p) => Margin::Transition(p),
        None => unreachable!("window is bounded"),
    })
}

/// [`margin_from`] over all patterns, for `4 <= n <= 6`.
pub fn epsilon_of_n(n: usize, budget: u128) -> Result<Margin> {
    if n < 4 {
        return Err(Error::DimensionTooSmall { what: "the margin measurement", min: 4, n });
    }
    margin_from(n, &all_candidates(n, budget)?)
}

/// Exhaustive search at `s = x`, `t = 1` with every maximizer collected.
pub fn maximizer_at_ratio(n: usize, x: &Scalar, budget: u128) -> Result<MaxRecord> {
    search_max(&binary_spec(n, budget).collect_all(true).with_s(x.clone()))
}

/// Distinct polynomials among the maximizers of a record.
pub fn maximizer_polynomials(record: &MaxRecord) -> Result<Vec<UniPoly>> {
    let mut out: Vec<UniPoly> = Vec::new();
    for p in record.patterns() {
        let q = p.det_polynomial()?;
        if !out.contains(&q) {
            out.push(q);
        }
    }
    out.sort();
    Ok(out)
}

/// Number of `t` entries in a binary code.
pub fn t_count(code: u128) -> u32 {
    code.count_ones()
}

/// For each block count `l` with a nonzero coefficient, the sign of the
/// `s^(n-l) t^l` term when `s, t > 0`.
pub fn sign_profile(n: usize, chains: &Chains) -> Vec<(usize, i8)> {
    (1..=n)
        .filter(|&l| chains.0[l] != 0)
        .map(|l| (l, if (n - l) % 2 == 0 { 1 } else { -1 }))
        .collect()
}

/// Candidates restricted to maximizers at sample ratios plus the named
/// families. The resulting diagram is flagged as restricted.
pub fn restricted_envelope(
    n: usize,
    samples: &[Scalar],
    lo: &Scalar,
    hi: Option<&Scalar>,
    budget: u128,
) -> Result<TransitionDiagram> {
    let mut polys: Vec<(UniPoly, u128)> = Vec::new();
    let mut add = |q: UniPoly, code: u128| {
        if let Some(e) = polys.iter_mut().find(|(p, _)| *p == q) {
            e.1 = e.1.min(code);
        } else {
            polys.push((q, code));
        }
    };
    for x in samples {
        let rec = maximizer_at_ratio(n, x, budget)?;
        for (p, &code) in rec.patterns().iter().zip(&rec.maximizers) {
            add(p.det_polynomial()?, code);
        }
    }
    for f in Family::ALL {
        if f.check_dimension(n).is_err() {
            continue;
        }
        let m = f.build(n, &int(2), &int(1))?;
        let p = EntryPattern::from_matrix(&m, Population::binary(int(1))).expect("binary family");
        add(p.det_polynomial()?, num_traits::ToPrimitive::to_u128(p.code()).unwrap_or(u128::MAX));
    }
    let cands: Vec<Candidate> = polys.into_iter().map(|(poly, code)| Candidate { poly, code }).collect();
    let mut d = envelope(&cands, lo, hi)?;
    d.restricted = true;
    Ok(d)
}
