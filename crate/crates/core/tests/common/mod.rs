#![allow(dead_code)]

use bohemian_core::arith::{ratio, Scalar};
use bohemian_core::HessMatrix;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Determinant as a signed sum over all n! permutations of the dense matrix.
pub fn permutation_det(a: &[Vec<Scalar>]) -> Scalar {
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Scalar::zero();
    permute(&mut perm, 0, a, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, a: &[Vec<Scalar>], total: &mut Scalar) {
    let n = perm.len();
    if k == n {
        let mut prod = Scalar::from_integer(1.into());
        for (i, &j) in perm.iter().enumerate() {
            if a[i][j].is_zero() {
                return;
            }
            prod *= &a[i][j];
        }
        if inversions(perm) % 2 == 1 {
            prod = -prod;
        }
        *total += prod;
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, a, total);
        perm.swap(k, i);
    }
}

fn inversions(p: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

/// Small random rational with numerator in [-range, range], denominator in [1, 6].
pub fn rational(rng: &mut ChaCha8Rng, range: i64) -> Scalar {
    ratio(rng.gen_range(-range..=range), rng.gen_range(1..=6))
}

pub fn positive_rational(rng: &mut ChaCha8Rng, range: i64) -> Scalar {
    ratio(rng.gen_range(1..=range), rng.gen_range(1..=6))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> HessMatrix {
    let s = rational(rng, 9);
    HessMatrix::from_fn(n, s, |_, _| {
        if rng.gen_bool(0.25) {
            Scalar::zero()
        } else {
            rational(rng, 9)
        }
    })
}
