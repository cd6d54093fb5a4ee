use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

use super::{int, Scalar, UniPoly};

/// A rational interval `(lo, hi)` holding exactly one real root of
/// `witness`, which is square-free. Neither endpoint is a root and the
/// witness changes sign across the interval.
#[derive(Clone, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Scalar,
    pub hi: Scalar,
    pub witness: UniPoly,
}

impl IsolatingInterval {
    pub fn width(&self) -> Scalar {
        &self.hi - &self.lo
    }

    /// True when `x` lies in the closed interval.
    pub fn contains(&self, x: &Scalar) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Halves the interval, keeping the half with the sign change.
    fn bisect(&mut self) {
        let mid = split_point(&self.witness, &self.lo, &self.hi);
        let s_lo = self.witness.sign_at(&self.lo);
        let s_mid = self.witness.sign_at(&mid);
        if s_lo == s_mid {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }
}

impl fmt::Debug for IsolatingInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] root of {}", self.lo, self.hi, self.witness)
    }
}

/// Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<UniPoly>,
}

impl SturmChain {
    /// Builds the chain for the square-free part of `p`.
    pub fn new(p: &UniPoly) -> Self {
        let p0 = p.square_free();
        if p0.degree().unwrap_or(0) == 0 {
            return SturmChain { polys: vec![p0] };
        }
        let mut polys = vec![p0.clone(), p0.derivative().primitive()];
        loop {
            let n = polys.len();
            let r = polys[n - 2].sign_preserving_rem(&polys[n - 1]);
            if r.is_zero() {
                break;
            }
            polys.push(-r);
        }
        SturmChain { polys }
    }

    /// The square-free polynomial the chain was built from.
    pub fn base(&self) -> &UniPoly {
        &self.polys[0]
    }

    fn variations(&self, x: &Scalar) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.polys {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &Scalar, b: &Scalar) -> usize {
        if self.base().is_zero() || a >= b {
            return 0;
        }
        self.variations(a).saturating_sub(self.variations(b))
    }

    fn is_root(&self, x: &Scalar) -> bool {
        self.base().sign_at(x) == 0
    }

    /// Moves `e` by at most `limit` in direction `dir` (`+1` or `-1`) to a
    /// point that is not a root, with no root strictly between. Returns the
    /// new point.
    fn step_off(&self, e: &Scalar, dir: i8, limit: &Scalar) -> Scalar {
        let mut delta = limit.clone();
        loop {
            let cand = if dir > 0 { e + &delta } else { e - &delta };
            let clear = if dir > 0 {
                self.count(e, &cand) == 0
            } else {
                // roots in [cand, e): everything in (cand, e] minus e itself
                let inner = self.count(&cand, e) - usize::from(self.is_root(e));
                inner == 0 && !self.is_root(&cand)
            };
            if clear {
                return cand;
            }
            delta /= int(2);
        }
    }

    /// Isolates every root in the open interval `(a, b)`. Both endpoints
    /// must be non-roots. Returned pairs are disjoint, sorted and have
    /// non-root endpoints.
    fn isolate_between(&self, a: &Scalar, b: &Scalar) -> Vec<(Scalar, Scalar)> {
        debug_assert!(!self.is_root(a) && !self.is_root(b));
        let mut out = Vec::new();
        let mut stack = vec![(a.clone(), b.clone(), self.count(a, b))];
        while let Some((lo, hi, c)) = stack.pop() {
            match c {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = split_point(self.base(), &lo, &hi);
                    let left = self.count(&lo, &mid);
                    stack.push((mid.clone(), hi, c - left));
                    stack.push((lo, mid, left));
                }
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    /// Roots strictly inside `(a, b)`; endpoints may be roots themselves.
    pub(crate) fn roots_open(&self, a: &Scalar, b: &Scalar) -> Vec<IsolatingInterval> {
        if a >= b || self.base().degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let half = (b - a) / int(2);
        let a2 = if self.is_root(a) { self.step_off(a, 1, &half) } else { a.clone() };
        let b2 = if self.is_root(b) { self.step_off(b, -1, &half) } else { b.clone() };
        if a2 >= b2 {
            return Vec::new();
        }
        self.isolate_between(&a2, &b2)
            .into_iter()
            .map(|(lo, hi)| IsolatingInterval { lo, hi, witness: self.base().clone() })
            .collect()
    }

    /// An interval straddling the rational root `e`, at most `reach` wide
    /// on each side.
    fn straddle(&self, e: &Scalar, reach: &Scalar) -> IsolatingInterval {
        let mut delta = reach.clone();
        loop {
            let lo = e - &delta;
            let hi = e + &delta;
            if !self.is_root(&lo) && !self.is_root(&hi) && self.count(&lo, &hi) == 1 {
                return IsolatingInterval { lo, hi, witness: self.base().clone() };
            }
            delta /= int(2);
        }
    }
}

/// Bisection point for `(lo, hi)` that is never a root of `p`. Starts at
/// the midpoint and nudges right by half the current step on collision.
fn split_point(p: &UniPoly, lo: &Scalar, hi: &Scalar) -> Scalar {
    let mid = (lo + hi) / int(2);
    let mut step = (hi - lo) / int(4);
    let mut cand = mid.clone();
    while p.sign_at(&cand) == 0 {
        cand = &mid + &step;
        step /= int(2);
    }
    cand
}

/// Isolates the distinct real roots of `p` in the closed window `[lo, hi]`.
///
/// Works on the square-free part. A root that sits exactly on a window
/// edge gets an interval straddling that edge. Every returned interval is
/// at most `max_width` wide.
pub fn sturm_root_isolate(
    p: &UniPoly,
    lo: &Scalar,
    hi: &Scalar,
    max_width: &Scalar,
) -> Vec<IsolatingInterval> {
    assert!(!p.is_zero(), "root isolation of the zero polynomial");
    assert!(lo < hi, "empty isolation window");
    let chain = SturmChain::new(p);
    if chain.base().degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let quarter = (hi - lo) / int(4);
    let mut inner_lo = lo.clone();
    let mut inner_hi = hi.clone();
    let mut out = Vec::new();
    if chain.is_root(lo) {
        let iv = chain.straddle(lo, &quarter);
        inner_lo = iv.hi.clone();
        out.push(iv);
    }
    let mut tail = None;
    if chain.is_root(hi) {
        let iv = chain.straddle(hi, &quarter);
        inner_hi = iv.lo.clone();
        tail = Some(iv);
    }
    out.extend(
        chain
            .isolate_between(&inner_lo, &inner_hi)
            .into_iter()
            .map(|(lo, hi)| IsolatingInterval { lo, hi, witness: chain.base().clone() }),
    );
    out.extend(tail);
    out.into_iter().map(|iv| refine_interval(iv, max_width)).collect()
}

/// Bisects until `hi - lo <= width`. Intervals already narrow enough come
/// back unchanged.
pub fn refine_interval(mut iv: IsolatingInterval, width: &Scalar) -> IsolatingInterval {
    assert!(width > &Scalar::zero(), "refinement width must be positive");
    while &iv.width() > width {
        iv.bisect();
    }
    iv
}

/// A real number that is either rational or a root pinned by an
/// isolating interval.
#[derive(Clone, PartialEq, Eq)]
pub enum RealPoint {
    Rational(Scalar),
    Algebraic(IsolatingInterval),
}

impl fmt::Debug for RealPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealPoint::Rational(x) => write!(f, "{x}"),
            RealPoint::Algebraic(iv) => write!(f, "{iv:?}"),
        }
    }
}

impl RealPoint {
    /// Converts to a rational point when the root turns out to be rational.
    ///
    /// Rescales `x = y / lc` so rational roots become integer roots `y`,
    /// then narrows the interval until at most one integer candidate is left.
    pub fn simplify(self) -> RealPoint {
        let RealPoint::Algebraic(iv) = self else {
            return self;
        };
        let lc = Scalar::from_integer(iv.witness.leading().unwrap().abs());
        let target = lc.recip() / int(2);
        let iv = refine_interval(iv, &target);
        let lo_y = (&iv.lo * &lc).ceil();
        let hi_y = (&iv.hi * &lc).floor();
        let mut y = lo_y;
        while y <= hi_y {
            let x = &y / &lc;
            if iv.witness.sign_at(&x) == 0 {
                return RealPoint::Rational(x);
            }
            y += Scalar::one();
        }
        RealPoint::Algebraic(iv)
    }

    /// A rational lower bound, exact for rational points.
    pub fn lower(&self) -> &Scalar {
        match self {
            RealPoint::Rational(x) => x,
            RealPoint::Algebraic(iv) => &iv.lo,
        }
    }

    /// A rational upper bound, exact for rational points.
    pub fn upper(&self) -> &Scalar {
        match self {
            RealPoint::Rational(x) => x,
            RealPoint::Algebraic(iv) => &iv.hi,
        }
    }

    /// Exact comparison of two real points.
    pub fn compare(&self, other: &RealPoint) -> Ordering {
        match (self, other) {
            (RealPoint::Rational(a), RealPoint::Rational(b)) => a.cmp(b),
            (RealPoint::Rational(a), RealPoint::Algebraic(iv)) => compare_rational(a, iv),
            (RealPoint::Algebraic(iv), RealPoint::Rational(b)) => compare_rational(b, iv).reverse(),
            (RealPoint::Algebraic(a), RealPoint::Algebraic(b)) => compare_algebraic(a, b),
        }
    }

    /// Sign of `p` on a small interval just to the right of this point.
    pub fn sign_right_of(&self, p: &UniPoly) -> i8 {
        if p.is_zero() {
            return 0;
        }
        let chain = SturmChain::new(p);
        match self {
            RealPoint::Rational(x) => {
                let mut delta = Scalar::one();
                loop {
                    let probe = x + &delta;
                    if chain.count(x, &probe) == 0 {
                        return p.sign_at(&probe);
                    }
                    delta /= int(2);
                }
            }
            RealPoint::Algebraic(iv) => {
                let mut iv = iv.clone();
                loop {
                    match chain.count(&iv.lo, &iv.hi) {
                        0 => return p.sign_at(&iv.hi),
                        1 if shares_root(&iv, chain.base()) => return p.sign_at(&iv.hi),
                        _ => iv.bisect(),
                    }
                }
            }
        }
    }
}

fn compare_rational(a: &Scalar, iv: &IsolatingInterval) -> Ordering {
    if a <= &iv.lo {
        return Ordering::Less;
    }
    if a >= &iv.hi {
        return Ordering::Greater;
    }
    if iv.witness.sign_at(a) == 0 {
        return Ordering::Equal;
    }
    let mut iv = iv.clone();
    loop {
        iv.bisect();
        if a <= &iv.lo {
            return Ordering::Less;
        }
        if a >= &iv.hi {
            return Ordering::Greater;
        }
    }
}

/// True if the root pinned by `iv` is also a root of `q`.
fn shares_root(iv: &IsolatingInterval, q: &UniPoly) -> bool {
    let g = iv.witness.gcd(q);
    if g.degree().unwrap_or(0) == 0 {
        return false;
    }
    SturmChain::new(&g).count(&iv.lo, &iv.hi) > 0
}

fn compare_algebraic(a: &IsolatingInterval, b: &IsolatingInterval) -> Ordering {
    let mut a = a.clone();
    let mut b = b.clone();
    let g = a.witness.gcd(&b.witness);
    let g_chain = (g.degree().unwrap_or(0) > 0).then(|| SturmChain::new(&g));
    loop {
        if a.hi <= b.lo {
            return Ordering::Less;
        }
        if b.hi <= a.lo {
            return Ordering::Greater;
        }
        if let Some(chain) = &g_chain {
            let lo = (&a.lo).max(&b.lo);
            let hi = (&a.hi).min(&b.hi);
            // endpoints belong to one of the intervals, so they are not
            // roots of the common factor
            if chain.count(lo, hi) > 0 {
                return Ordering::Equal;
            }
        }
        a.bisect();
        b.bisect();
    }
}
