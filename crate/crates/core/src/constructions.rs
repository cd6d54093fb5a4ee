//! Named matrix families and closed forms for their determinants.
//!
//! All builders return genuine upper Hessenberg matrices with subdiagonal
//! `s`. Determinant companions return signed values and cross-check the
//! built matrix before returning.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};

use crate::arith::{int, pow, Scalar};
use crate::error::{Error, Result};
use crate::hessenberg::HessMatrix;

/// The named families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `t` on every even superdiagonal (including the diagonal), `0` on odd ones.
    U,
    /// `U` with its leading corner reworked by a row swap.
    Ur,
    /// `U` with its trailing corner reworked by a column swap.
    Uc,
    /// Both corner reworks.
    Urc,
    /// First row `t...t0`, last column `0t...t`, zeros elsewhere above the subdiagonal.
    V,
    /// Localized block form; for even `n` the block is `k x (k+1)`.
    W,
    /// Even-`n` variant of `W` with a `(k+1) x k` block.
    WPrime,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::U,
        Family::Ur,
        Family::Uc,
        Family::Urc,
        Family::V,
        Family::W,
        Family::WPrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::U => "U",
            Family::Ur => "Ur",
            Family::Uc => "Uc",
            Family::Urc => "Urc",
            Family::V => "V",
            Family::W => "W",
            Family::WPrime => "Wprime",
        }
    }

    pub fn min_dimension(self) -> usize {
        match self {
            Family::U => 1,
            Family::V => 2,
            Family::W | Family::WPrime => 3,
            Family::Ur | Family::Uc | Family::Urc => 4,
        }
    }

    pub fn check_dimension(self, n: usize) -> Result<()> {
        if n < self.min_dimension() {
            return Err(Error::DimensionTooSmall {
                what: self.label(),
                min: self.min_dimension(),
                n,
            });
        }
        if self == Family::WPrime && n % 2 == 1 {
            return Err(Error::Precondition("family Wprime requires even n".into()));
        }
        Ok(())
    }

    fn label(self) -> &'static str {
        match self {
            Family::U => "family U",
            Family::Ur => "family Ur",
            Family::Uc => "family Uc",
            Family::Urc => "family Urc",
            Family::V => "family V",
            Family::W => "family W",
            Family::WPrime => "family Wprime",
        }
    }

    /// Builds the `n x n` member with subdiagonal `s` and entry value `t`.
    pub fn build(self, n: usize, s: &Scalar, t: &Scalar) -> Result<HessMatrix> {
        self.check_dimension(n)?;
        Ok(match self {
            Family::U => alternating(n, s, t),
            Family::Ur => permuted_alternating(n, s, t, true, false),
            Family::Uc => permuted_alternating(n, s, t, false, true),
            Family::Urc => permuted_alternating(n, s, t, true, true),
            Family::V => top_and_right(n, s, t),
            Family::W => {
                let k = (n - 1) / 2;
                block_form(n, k, n - 1 - k, s, t)
            }
            Family::WPrime => {
                let k = (n - 1) / 2;
                block_form(n, n - 1 - k, k, s, t)
            }
        })
    }

    /// Signed determinant from the family's closed form or recurrence.
    pub fn closed_form_det(self, n: usize, s: &Scalar, t: &Scalar) -> Result<Scalar> {
        match self {
            Family::U => {
                self.check_dimension(n)?;
                Ok(det_u(n, s, t))
            }
            Family::Ur => det_ur(n, s, t),
            Family::Uc => det_uc(n, s, t),
            Family::Urc => det_urc(n, s, t),
            Family::V => det_v(n, s, t),
            Family::W => det_w(n, s, t),
            Family::WPrime => {
                self.check_dimension(n)?;
                det_w(n, s, t)
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Precondition(alloc::format!("unknown family {s:?}")))
    }
}

fn alternating(n: usize, s: &Scalar, t: &Scalar) -> HessMatrix {
    HessMatrix::from_fn(n, s.clone(), |i, j| {
        if (j - i) % 2 == 0 {
            t.clone()
        } else {
            Scalar::zero()
        }
    })
}

/// Dense form of `U` with the displayed corner edits, then the row and/or
/// column swap that brings it back to Hessenberg shape.
fn permuted_alternating(n: usize, s: &Scalar, t: &Scalar, row: bool, col: bool) -> HessMatrix {
    let mut dense = alternating(n, s, t).to_dense();
    if row {
        dense[0][0] = s.clone();
        dense[1][0] = t.clone();
        dense.swap(0, 1);
    }
    if col {
        dense[n - 1][n - 2] = t.clone();
        dense[n - 1][n - 1] = s.clone();
        for r in dense.iter_mut() {
            r.swap(n - 2, n - 1);
        }
    }
    let m = HessMatrix::from_fn(n, s.clone(), |i, j| dense[i][j].clone());
    debug_assert!((0..n).all(|i| (0..n).all(|j| m.get(i, j) == dense[i][j])));
    m
}

/// `t` across the first row except the corner, `t` down the last column
/// except the corner.
fn top_and_right(n: usize, s: &Scalar, t: &Scalar) -> HessMatrix {
    HessMatrix::from_fn(n, s.clone(), |i, j| {
        if (i == 0) != (j == n - 1) {
            t.clone()
        } else {
            Scalar::zero()
        }
    })
}

/// First row: `t` in columns `0..a`, zeros, then `t` in the last column.
/// Rows `1..=a`: `t` in columns `a..n-1`. Last column: `t` from row `a+1`.
fn block_form(n: usize, a: usize, b: usize, s: &Scalar, t: &Scalar) -> HessMatrix {
    debug_assert_eq!(a + b + 1, n);
    HessMatrix::from_fn(n, s.clone(), |i, j| {
        let on = if i == 0 {
            j < a || j == n - 1
        } else if i <= a {
            (a..n - 1).contains(&j)
        } else {
            j == n - 1
        };
        if on {
            t.clone()
        } else {
            Scalar::zero()
        }
    })
}

/// `|U_0| = 0` (a convention used by the corner-swapped forms),
/// `|U_1| = t`, `|U_2| = t^2`, `|U_n| = t|U_{n-1}| + s^2|U_{n-2}|`.
pub fn det_u_sequence(n_max: usize, s: &Scalar, t: &Scalar) -> Vec<Scalar> {
    let s2 = s * s;
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(Scalar::zero());
    for n in 1..=n_max {
        let v = match n {
            1 => t.clone(),
            2 => t * t,
            _ => t * &out[n - 1] + &s2 * &out[n - 2],
        };
        out.push(v);
    }
    out
}

/// Determinant of `U_n`; zero for `n = 0`.
pub fn det_u(n: usize, s: &Scalar, t: &Scalar) -> Scalar {
    det_u_sequence(n, s, t).pop().unwrap()
}

fn corner_identity(n: usize, s: &Scalar, t: &Scalar) -> Scalar {
    let u = det_u_sequence(n, s, t);
    s * &u[n - 1] + t * s * &u[n - 2]
}

fn abs(x: &Scalar) -> Scalar {
    num_traits::Signed::abs(x)
}

/// Signed determinant of `U_n^(r)`. Its absolute value is asserted to be
/// `s|U_{n-1}| + ts|U_{n-2}|`.
pub fn det_ur(n: usize, s: &Scalar, t: &Scalar) -> Result<Scalar> {
    let d = Family::Ur.build(n, s, t)?.det();
    assert_eq!(abs(&d), abs(&corner_identity(n, s, t)), "row-swapped identity");
    Ok(d)
}

/// Signed determinant of `U_n^(c)`; same absolute value as `U_n^(r)`.
pub fn det_uc(n: usize, s: &Scalar, t: &Scalar) -> Result<Scalar> {
    let d = Family::Uc.build(n, s, t)?.det();
    assert_eq!(abs(&d), abs(&corner_identity(n, s, t)), "column-swapped identity");
    Ok(d)
}

/// `|U_n^(rc)| = s^2|U_{n-2}| + 2ts^2|U_{n-3}| + t^2 s^2|U_{n-4}|`.
///
/// Also checked against the seeds `3s^2t^2`, `s^4t + 4s^2t^3`, the
/// two-term recurrence from `n = 6` on, and the built matrix.
pub fn det_urc(n: usize, s: &Scalar, t: &Scalar) -> Result<Scalar> {
    Family::Urc.check_dimension(n)?;
    let value = urc_value(n, s, t);
    let via_recurrence = urc_recurrence(n, s, t);
    assert_eq!(value, via_recurrence, "corner-swapped recurrence");
    assert_eq!(value, Family::Urc.build(n, s, t)?.det(), "corner-swapped matrix");
    Ok(value)
}

fn urc_value(n: usize, s: &Scalar, t: &Scalar) -> Scalar {
    let u = det_u_sequence(n, s, t);
    let s2 = s * s;
    &s2 * &u[n - 2] + int(2) * t * &s2 * &u[n - 3] + t * t * &s2 * &u[n - 4]
}

/// Seeds at 4 and 5, then `M_n = t M_{n-1} + s^2 M_{n-2}`.
pub(crate) fn urc_recurrence(n: usize, s: &Scalar, t: &Scalar) -> Scalar {
    let s2 = s * s;
    let m4 = int(3) * &s2 * t * t;
    let m5 = &s2 * &s2 * t + int(4) * &s2 * t * t * t;
    if n == 4 {
        return m4;
    }
    let (mut prev, mut cur) = (m4, m5);
    for _ in 6..=n {
        let next = t * &cur + &s2 * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `|V_n| = (-1)^n (n-1) t^2 s^(n-2)`, checked against the built matrix.
pub fn det_v(n: usize, s: &Scalar, t: &Scalar) -> Result<Scalar> {
    Family::V.check_dimension(n)?;
    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    let value = sign * int(n as i64 - 1) * t * t * pow(s, n - 2);
    assert_eq!(value, Family::V.build(n, s, t)?.det(), "V closed form");
    Ok(value)
}

/// `floor(n/2) * floor((n-1)/2)`.
pub fn cubic_weight(n: usize) -> u64 {
    (n / 2) as u64 * (n.saturating_sub(1) / 2) as u64
}

fn w_value(n: usize, s: &Scalar, t: &Scalar) -> Scalar {
    let sign = if n % 2 == 1 { int(1) } else { int(-1) };
    let mut v = pow(s, n - 1) * t;
    if n >= 3 {
        v += int(cubic_weight(n) as i64) * pow(s, n - 3) * pow(t, 3);
    }
    sign * v
}

/// `|W_n| = (-1)^(n-1) (s^(n-1) t + floor(n/2) floor((n-1)/2) s^(n-3) t^3)`.
///
/// Checked against the one-step recurrence
/// `|W_n| = floor((n-1)/2) (-s)^(n-3) t^3 - s|W_{n-1}|`, the built matrix,
/// and for even `n` the transposed-block variant.
pub fn det_w(n: usize, s: &Scalar, t: &Scalar) -> Result<Scalar> {
    Family::W.check_dimension(n)?;
    let value = w_value(n, s, t);
    let step = int(((n - 1) / 2) as i64) * pow(&-s.clone(), n - 3) * pow(t, 3)
        - s * w_value(n - 1, s, t);
    assert_eq!(value, step, "W recurrence");
    let built = Family::W.build(n, s, t)?.det();
    assert_eq!(value, built, "W closed form");
    if n % 2 == 0 {
        assert_eq!(built, Family::WPrime.build(n, s, t)?.det(), "W variants");
    }
    Ok(value)
}

/// True when every entry of `m` lies in `{0, s, t}`.
pub fn entries_in(m: &HessMatrix, s: &Scalar, t: &Scalar) -> bool {
    m.upper()
        .iter()
        .chain(core::iter::once(m.subdiag()))
        .all(|a| a.is_zero() || a == s || a == t)
}

/// `1` as a [`Scalar`]; handy for callers building unit-ratio members.
pub fn unit() -> Scalar {
    Scalar::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use alloc::vec;

    fn rows(m: &HessMatrix) -> Vec<Vec<Scalar>> {
        m.to_dense()
    }

    fn sym(n: usize, spec: &[&str], s: &Scalar, t: &Scalar) -> Vec<Vec<Scalar>> {
        assert_eq!(spec.len(), n);
        spec.iter()
            .map(|r| {
                r.chars()
                    .map(|c| match c {
                        's' => s.clone(),
                        't' => t.clone(),
                        _ => Scalar::zero(),
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn u3_layout() {
        let (s, t) = (int(5), int(7));
        let m = Family::U.build(3, &s, &t).unwrap();
        assert_eq!(rows(&m), sym(3, &["t0t", "st0", "0st"], &s, &t));
    }

    #[test]
    fn v4_layout() {
        let (s, t) = (int(5), int(7));
        let m = Family::V.build(4, &s, &t).unwrap();
        assert_eq!(rows(&m), sym(4, &["ttt0", "s00t", "0s0t", "00st"], &s, &t));
    }

    #[test]
    fn w_layouts() {
        let (s, t) = (int(5), int(7));
        let w5 = Family::W.build(5, &s, &t).unwrap();
        assert_eq!(
            rows(&w5),
            sym(5, &["tt00t", "s0tt0", "0stt0", "00s0t", "000st"], &s, &t)
        );
        let w6 = Family::W.build(6, &s, &t).unwrap();
        assert_eq!(
            rows(&w6),
            sym(6, &["tt000t", "s0ttt0", "0sttt0", "00s00t", "000s0t", "0000st"], &s, &t)
        );
        let w6p = Family::WPrime.build(6, &s, &t).unwrap();
        assert_eq!(
            rows(&w6p),
            sym(6, &["ttt00t", "s00tt0", "0s0tt0", "00stt0", "000s0t", "0000st"], &s, &t)
        );
    }

    #[test]
    fn corner_swapped_is_hessenberg_with_small_alphabet() {
        let (s, t) = (ratio(3, 2), int(2));
        for n in 4..=9 {
            for f in [Family::Ur, Family::Uc, Family::Urc] {
                let m = f.build(n, &s, &t).unwrap();
                assert_eq!(m.subdiag(), &s);
                assert!(entries_in(&m, &s, &t));
            }
        }
    }

    #[test]
    fn urc_display_round_trip() {
        // swapping rows 0,1 and columns n-2,n-1 back gives U with corner edits
        let (s, t) = (int(5), int(7));
        let n = 6;
        let mut dense = Family::Urc.build(n, &s, &t).unwrap().to_dense();
        dense.swap(0, 1);
        for r in dense.iter_mut() {
            r.swap(n - 2, n - 1);
        }
        let mut expect = Family::U.build(n, &s, &t).unwrap().to_dense();
        expect[0][0] = s.clone();
        expect[1][0] = t.clone();
        expect[n - 1][n - 2] = t.clone();
        expect[n - 1][n - 1] = s.clone();
        assert_eq!(dense, expect);
    }

    #[test]
    fn dimension_guards() {
        let one = int(1);
        assert_eq!(
            Family::Urc.build(3, &one, &one),
            Err(Error::DimensionTooSmall { what: "family Urc", min: 4, n: 3 })
        );
        assert!(Family::V.build(1, &one, &one).is_err());
        assert!(Family::W.build(2, &one, &one).is_err());
        assert!(Family::WPrime.build(7, &one, &one).is_err());
        assert!(det_ur(3, &one, &one).is_err());
        assert!(det_w(2, &one, &one).is_err());
    }

    #[test]
    fn det_u_examples() {
        assert_eq!(det_u(1, &ratio(1, 3), &ratio(5, 2)), ratio(5, 2));
        assert_eq!(det_u(4, &int(1), &int(1)), int(3));
        assert_eq!(det_u_sequence(5, &int(1), &int(2))[1..], [int(2), int(4), int(10), int(24), int(58)]);
        assert_eq!(Family::U.build(4, &int(1), &int(1)).unwrap().det(), int(3));
    }

    #[test]
    fn corner_swap_examples() {
        let one = int(1);
        assert_eq!(abs(&det_ur(4, &one, &one).unwrap()), int(3));
        assert_eq!(abs(&det_uc(5, &one, &one).unwrap()), int(5));
        assert_eq!(abs(&det_ur(4, &int(2), &one).unwrap()), int(12));
        assert_eq!(abs(&det_uc(4, &int(2), &one).unwrap()), int(12));
    }

    #[test]
    fn urc_examples() {
        let (s, t) = (ratio(7, 3), ratio(2, 5));
        let s2 = &s * &s;
        assert_eq!(det_urc(4, &s, &t).unwrap(), int(3) * &s2 * &t * &t);
        assert_eq!(
            det_urc(5, &s, &t).unwrap(),
            &s2 * &s2 * &t + int(4) * &s2 * &t * &t * &t
        );
        assert_eq!(det_urc(6, &int(1), &int(1)).unwrap(), int(8));
    }

    #[test]
    fn v_examples() {
        let (s, t) = (ratio(5, 7), ratio(3, 11));
        assert_eq!(det_v(2, &s, &t).unwrap(), &t * &t);
        assert_eq!(det_v(4, &s, &t).unwrap(), int(3) * &t * &t * &s * &s);
        assert_eq!(det_v(5, &int(2), &int(3)).unwrap(), int(-288));
        assert_eq!(det_v(4, &int(2), &int(3)).unwrap(), int(108));
    }

    #[test]
    fn w_examples() {
        let (s, t) = (ratio(9, 4), ratio(1, 3));
        let s2 = &s * &s;
        assert_eq!(det_w(5, &s, &t).unwrap(), &s2 * &s2 * &t + int(4) * &s2 * &t * &t * &t);
        assert_eq!(det_w(6, &int(100), &int(1)).unwrap(), int(-10_006_000_000));
        assert_eq!(det_w(3, &int(1), &int(1)).unwrap(), int(2));
    }

    #[test]
    fn closed_forms_dispatch() {
        let (s, t) = (ratio(4, 3), int(2));
        for f in Family::ALL {
            for n in f.min_dimension()..=9 {
                if f == Family::WPrime && n % 2 == 1 {
                    continue;
                }
                let built = f.build(n, &s, &t).unwrap().det();
                let closed = f.closed_form_det(n, &s, &t).unwrap();
                assert_eq!(built, closed, "{f} n={n}");
            }
        }
    }

    #[test]
    fn parse_family_names() {
        assert_eq!("urc".parse::<Family>().unwrap(), Family::Urc);
        assert_eq!("Wprime".parse::<Family>().unwrap(), Family::WPrime);
        assert!("X".parse::<Family>().is_err());
        let _ = vec![unit()];
    }
}
