//! Upper envelope of `|q(x)|` over a finite set of integer polynomials.
//!
//! Two candidates are compared through `q^2 - r^2`, which avoids any case
//! split on signs. The sweep keeps the current winner `w`, finds the
//! earliest point right of the cursor where some `w^2 - r^2` changes sign,
//! and restarts from there.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::One;

use crate::arith::{int, RealPoint, Scalar, SturmChain, UniPoly};
use crate::error::{precondition, Result};

/// A polynomial with the smallest pattern code that produces it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Candidate {
    pub poly: UniPoly,
    pub code: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeSegment {
    pub lo: RealPoint,
    /// `None` means the segment is unbounded on the right.
    pub hi: Option<RealPoint>,
    /// Candidates with the largest `|q|` on the open segment, in input order.
    pub winners: Vec<Candidate>,
    /// A rational point strictly inside the segment.
    pub sample: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionDiagram {
    pub lo: Scalar,
    pub hi: Option<Scalar>,
    pub segments: Vec<EnvelopeSegment>,
    /// Number of distinct polynomials taken into account.
    pub candidates: usize,
    /// Set when the candidates are a subset of all pattern polynomials, so
    /// the diagram is not a certificate.
    pub restricted: bool,
}

impl TransitionDiagram {
    /// Interior segment boundaries, in increasing order.
    pub fn breakpoints(&self) -> Vec<&RealPoint> {
        self.segments.iter().skip(1).map(|s| &s.lo).collect()
    }
}

/// Computes the envelope of `|q|` over `[lo, hi]` (or `[lo, inf)`).
pub fn envelope(candidates: &[Candidate], lo: &Scalar, hi: Option<&Scalar>) -> Result<TransitionDiagram> {
    if candidates.is_empty() {
        return Err(precondition("the envelope needs at least one candidate"));
    }
    if let Some(hi) = hi {
        if hi <= lo {
            return Err(precondition("empty envelope window"));
        }
    }
    let squares: Vec<UniPoly> = candidates.iter().map(|c| c.poly.square()).collect();
    let mut segments: Vec<EnvelopeSegment> = Vec::new();
    let mut cursor = RealPoint::Rational(lo.clone());
    loop {
        let winner = leader_right_of(&cursor, &squares);
        let next = next_crossing(&cursor, winner, &squares, hi);
        let winners: Vec<Candidate> = (0..candidates.len())
            .filter(|&j| squares[j] == squares[winner])
            .map(|j| candidates[j].clone())
            .collect();
        let finished = next.is_none();
        let end = next.or_else(|| hi.map(|h| RealPoint::Rational(h.clone())));
        let sample = clean_sample(&cursor, rational_between(&cursor, end.as_ref()), winner, &squares);
        segments.push(EnvelopeSegment { lo: cursor, hi: end.clone(), winners, sample });
        if finished {
            break;
        }
        cursor = end.unwrap();
    }
    Ok(TransitionDiagram {
        lo: lo.clone(),
        hi: hi.cloned(),
        segments,
        candidates: candidates.len(),
        restricted: false,
    })
}

/// Index of a candidate whose square is largest just right of `x`.
fn leader_right_of(x: &RealPoint, squares: &[UniPoly]) -> usize {
    let mut best = 0;
    for j in 1..squares.len() {
        if squares[j] == squares[best] {
            continue;
        }
        if x.sign_right_of(&(&squares[j] - &squares[best])) > 0 {
            best = j;
        }
    }
    best
}

/// Moves `x` towards `lo` until no other candidate ties the winner there.
/// Ties inside a segment only happen at touch points, which are isolated.
fn clean_sample(lo: &RealPoint, mut x: Scalar, winner: usize, squares: &[UniPoly]) -> Scalar {
    loop {
        let top = squares[winner].eval(&x);
        let tied = squares
            .iter()
            .any(|q| q != &squares[winner] && q.eval(&x) == top);
        if !tied {
            return x;
        }
        x = rational_between(lo, Some(&RealPoint::Rational(x)));
    }
}

/// Earliest point right of `x` (and strictly inside the window) where some
/// `w^2 - r^2` changes sign.
fn next_crossing(
    x: &RealPoint,
    winner: usize,
    squares: &[UniPoly],
    hi: Option<&Scalar>,
) -> Option<RealPoint> {
    let start = x.lower().clone();
    let mut best: Option<RealPoint> = None;
    for (j, sq) in squares.iter().enumerate() {
        if j == winner || sq == &squares[winner] {
            continue;
        }
        let d = &squares[winner] - sq;
        let chain = SturmChain::new(&d);
        // nothing can happen beyond the current best or the window
        let limit = match (&best, hi) {
            (Some(b), _) => b.upper().clone(),
            (None, Some(h)) => h.clone(),
            (None, None) => d.root_bound() + Scalar::one(),
        };
        if limit <= start || chain.count(&start, &limit) == 0 {
            continue;
        }
        for iv in chain.roots_open(&start, &limit) {
            let root = RealPoint::Algebraic(iv);
            if root.compare(x) != Ordering::Greater {
                continue;
            }
            if let Some(h) = hi {
                if root.compare(&RealPoint::Rational(h.clone())) != Ordering::Less {
                    break;
                }
            }
            if let Some(b) = &best {
                if root.compare(b) != Ordering::Less {
                    break;
                }
            }
            if root.sign_right_of(&d) < 0 {
                best = Some(root.simplify());
                break;
            }
        }
    }
    best
}

/// A rational strictly between `a` and `b` (`b = None` means infinity).
pub fn rational_between(a: &RealPoint, b: Option<&RealPoint>) -> Scalar {
    let Some(b) = b else {
        return Scalar::from_integer(a.upper().floor().to_integer()) + Scalar::one();
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    loop {
        let (lo, hi) = (a.upper().clone(), b.lower().clone());
        if lo < hi {
            return (lo + hi) / int(2);
        }
        let both_rational =
            matches!(a, RealPoint::Rational(_)) && matches!(b, RealPoint::Rational(_));
        assert!(!both_rational, "rational_between needs a < b");
        a = narrow(a);
        b = narrow(b);
    }
}

fn narrow(p: RealPoint) -> RealPoint {
    match p {
        RealPoint::Rational(_) => p,
        RealPoint::Algebraic(iv) => {
            let w = iv.width() / int(2);
            RealPoint::Algebraic(crate::arith::refine_interval(iv, &w))
        }
    }
}

/// Checks a diagram against the candidates it was built from:
///
/// * at every segment sample the winners attain the largest `|q|`, and
///   every other candidate is strictly smaller;
/// * consecutive segments have different winners;
/// * every breakpoint is a root of `w_left^2 - w_right^2` and that
///   difference is positive at the left sample and negative at the right one.
pub fn certify(diagram: &TransitionDiagram, candidates: &[Candidate]) -> bool {
    for seg in &diagram.segments {
        let value = |q: &UniPoly| {
            let v = q.eval(&seg.sample);
            &v * &v
        };
        let top = value(&seg.winners[0].poly);
        for c in candidates {
            let v = value(&c.poly);
            let listed = seg.winners.iter().any(|w| w.poly == c.poly);
            if (listed && v != top) || (!listed && v >= top) {
                return false;
            }
        }
    }
    for pair in diagram.segments.windows(2) {
        let (l, r) = (&pair[0], &pair[1]);
        if l.winners == r.winners {
            return false;
        }
        let d = &l.winners[0].poly.square() - &r.winners[0].poly.square();
        let at_break = match &r.lo {
            RealPoint::Rational(x) => d.sign_at(x) == 0,
            RealPoint::Algebraic(iv) => {
                let g = iv.witness.gcd(&d);
                g.degree().unwrap_or(0) > 0 && SturmChain::new(&g).count(&iv.lo, &iv.hi) > 0
            }
        };
        if !at_break || d.sign_at(&l.sample) <= 0 || d.sign_at(&r.sample) >= 0 {
            return false;
        }
    }
    true
}

/// Interval of a breakpoint, exact rationals collapsed to a zero-width pair.
pub fn bounds(p: &RealPoint) -> (Scalar, Scalar) {
    (p.lower().clone(), p.upper().clone())
}
