mod common;

use bohemian_core::arith::{int, Scalar};
use bohemian_core::constructions::{det_u, det_ur, det_uc, det_urc, det_w, Family};
use bohemian_core::oracles::{k_sequence, k_unrolled_even, k_unrolled_odd};
use common::positive_rational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_0002;

#[test]
fn closed_forms_equal_built_determinants() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..6 {
        let s = common::rational(&mut rng, 9);
        let t = positive_rational(&mut rng, 9);
        for f in Family::ALL {
            for n in f.min_dimension()..=12 {
                if f == Family::WPrime && n % 2 == 1 {
                    continue;
                }
                let built = f.build(n, &s, &t).unwrap().det();
                assert_eq!(f.closed_form_det(n, &s, &t).unwrap(), built, "{f} n={n}");
            }
        }
    }
}

#[test]
fn recurrences_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for _ in 0..20 {
        let s = common::rational(&mut rng, 12);
        let t = common::rational(&mut rng, 12);
        for n in 6..=12 {
            let lhs = det_urc(n, &s, &t).unwrap();
            let rhs = &t * det_urc(n - 1, &s, &t).unwrap() + &s * &s * det_urc(n - 2, &s, &t).unwrap();
            assert_eq!(lhs, rhs);
        }
        for n in 4..=12 {
            let k = ((n - 1) / 2) as i64;
            let step = int(k) * bohemian_core::arith::pow(&-s.clone(), n - 3) * bohemian_core::arith::pow(&t, 3)
                - &s * det_w(n - 1, &s, &t).unwrap();
            assert_eq!(det_w(n, &s, &t).unwrap(), step);
        }
    }
}

#[test]
fn corner_swap_beats_alternating_above_unit_ratio() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for _ in 0..50 {
        let t = positive_rational(&mut rng, 9);
        let s = &t * (Scalar::from_integer(1.into()) + positive_rational(&mut rng, 9));
        for n in 4..=8 {
            assert!(det_urc(n, &s, &t).unwrap().abs() > det_u(n, &s, &t).abs(), "n={n}");
        }
    }
}

#[test]
fn corner_swap_ordering_between_one_and_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    for _ in 0..50 {
        let t = positive_rational(&mut rng, 9);
        // s = t (1 + f) with 0 < f < 1
        let num: i64 = rng.gen_range(1..50);
        let f = bohemian_core::arith::ratio(num, 50);
        let s = &t * (int(1) + f);
        for n in 4..=8 {
            let rc = det_urc(n, &s, &t).unwrap().abs();
            let r = det_ur(n, &s, &t).unwrap().abs();
            let c = det_uc(n, &s, &t).unwrap().abs();
            assert_eq!(r, c);
            assert!(rc > r, "n={n}");
        }
    }
}

#[test]
fn row_swapped_sign_at_unit_ratio() {
    // observed, not asserted by the closed forms: negative at s = t = 1
    let one = int(1);
    let dets: Vec<Scalar> = (4..=7).map(|n| det_ur(n, &one, &one).unwrap()).collect();
    assert_eq!(dets, [-3, -5, -8, -13].map(int));
}

#[test]
fn unrolled_sums_match_two_term_recurrence() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    for _ in 0..20 {
        let s = common::rational(&mut rng, 9);
        let t = common::rational(&mut rng, 9);
        let k = k_sequence(12, &s, &t);
        for n in 1..=12 {
            assert_eq!(k_unrolled_odd(n, &s, &t, &k), k[n]);
            if n >= 2 {
                assert_eq!(k_unrolled_even(n, &s, &t, &k), k[n]);
            }
            assert_eq!(det_u(n, &s, &t), k[n]);
        }
    }
}
