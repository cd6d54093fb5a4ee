use bohemian_core::arith::{int, ratio, RealPoint, Scalar, UniPoly};
use bohemian_core::constructions::Family;
use bohemian_core::search::{distinct_chains, search_max, SearchSpec, DEFAULT_BUDGET};
use bohemian_core::transitions::{
    all_candidates, candidates_from_chains, certify, envelope, envelope_for_dimension,
    epsilon_of_n, family_polynomial, margin_from, maximizer_at_ratio, maximizer_polynomials,
    restricted_envelope, sign_profile, t_count, Candidate, Margin, TransitionDiagram,
};
use bohemian_core::Population;
use num_traits::Signed;

fn polys_of(winners: &[Candidate]) -> Vec<UniPoly> {
    let mut v: Vec<UniPoly> = winners.iter().map(|c| c.poly.clone()).collect();
    v.sort();
    v.dedup();
    v
}

fn unsigned(p: &UniPoly) -> UniPoly {
    match p.leading() {
        Some(l) if l < &0.into() => -p.clone(),
        _ => p.clone(),
    }
}

/// Ratios strictly inside a segment, evenly spaced between the outer
/// bounds of its endpoints.
fn interior(lo: &RealPoint, hi: Option<&RealPoint>, count: i64) -> Vec<Scalar> {
    let a = lo.upper().clone();
    let b = match hi {
        Some(h) => h.lower().clone(),
        None => &a + int(10),
    };
    assert!(a < b);
    (1..=count).map(|k| &a + (&b - &a) * ratio(k, count + 1)).collect()
}

fn check_against_search(n: usize, d: &TransitionDiagram, per_segment: i64) {
    for seg in &d.segments {
        for x in interior(&seg.lo, seg.hi.as_ref(), per_segment) {
            let rec = maximizer_at_ratio(n, &x, DEFAULT_BUDGET).unwrap();
            let found = maximizer_polynomials(&rec).unwrap();
            let winners = polys_of(&seg.winners);
            // a polynomial that only touches the envelope can tie at an
            // isolated sample; anything else must be a segment winner
            let top = winners[0].eval(&x).abs();
            assert!(winners.iter().all(|w| found.contains(w)), "n={n} x={x}");
            for p in &found {
                assert!(winners.contains(p) || p.eval(&x).abs() == top, "n={n} x={x}");
            }
        }
    }
}

#[test]
fn four_by_four_switch_at_one() {
    let d = envelope_for_dimension(4, &ratio(1, 2), Some(&int(2)), DEFAULT_BUDGET).unwrap();
    assert_eq!(d.breakpoints(), [&RealPoint::Rational(int(1))]);
    let u = unsigned(&family_polynomial(Family::U, 4).unwrap());
    let urc = unsigned(&family_polynomial(Family::Urc, 4).unwrap());
    assert_eq!(u, UniPoly::from_i64s(&[1, 0, 2]));
    assert_eq!(urc, UniPoly::from_i64s(&[0, 0, 3]));
    let left: Vec<UniPoly> = polys_of(&d.segments[0].winners).iter().map(unsigned).collect();
    let right: Vec<UniPoly> = polys_of(&d.segments[1].winners).iter().map(unsigned).collect();
    assert!(left.iter().all(|p| p == &u));
    assert!(right.iter().all(|p| p == &urc));
    assert!(certify(&d, &all_candidates(4, DEFAULT_BUDGET).unwrap()));
}

#[test]
fn four_by_four_large_window() {
    let lo = ratio(64, 5) + ratio(1, 100);
    let d = envelope_for_dimension(4, &lo, Some(&int(20)), DEFAULT_BUDGET).unwrap();
    assert_eq!(d.segments.len(), 1);
    let w = family_polynomial(Family::W, 4).unwrap();
    let winners = polys_of(&d.segments[0].winners);
    assert!(winners.contains(&w));
    for p in &winners {
        assert_eq!(unsigned(p), UniPoly::from_i64s(&[0, 2, 0, 1]));
    }
}

#[test]
fn corner_swap_leads_right_of_one() {
    for n in 4..=6 {
        let cands = all_candidates(n, DEFAULT_BUDGET).unwrap();
        let d = envelope(&cands, &int(1), Some(&int(2))).unwrap();
        let urc = family_polynomial(Family::Urc, n).unwrap();
        let first: Vec<UniPoly> = polys_of(&d.segments[0].winners).iter().map(unsigned).collect();
        assert_eq!(first, vec![unsigned(&urc)], "n={n}");
        assert!(certify(&d, &cands));
    }
}

#[test]
fn envelope_agrees_with_search() {
    for n in 2..=5 {
        let hi = int((4 * n * n / 5 + 2) as i64);
        let d = envelope_for_dimension(n, &ratio(1, 3), Some(&hi), DEFAULT_BUDGET).unwrap();
        assert!(certify(&d, &all_candidates(n, DEFAULT_BUDGET).unwrap()));
        check_against_search(n, &d, 20);
    }
}

#[test]
fn six_by_six_envelope_sampled() {
    let cands = all_candidates(6, DEFAULT_BUDGET).unwrap();
    let d = envelope(&cands, &ratio(1, 2), Some(&int(40))).unwrap();
    assert!(certify(&d, &cands));
    check_against_search(6, &d, 2);
    let last = d.segments.last().unwrap();
    let w = unsigned(&family_polynomial(Family::W, 6).unwrap());
    assert!(polys_of(&last.winners).iter().any(|p| unsigned(p) == w));
}

#[test]
fn unbounded_window_certifies() {
    let cands = all_candidates(5, DEFAULT_BUDGET).unwrap();
    let d = envelope(&cands, &ratio(1, 10), None).unwrap();
    assert!(d.segments.last().unwrap().hi.is_none());
    assert!(certify(&d, &cands));
}

#[test]
fn margins() {
    for n in [4, 6] {
        assert_eq!(epsilon_of_n(n, DEFAULT_BUDGET).unwrap(), Margin::Transition(RealPoint::Rational(int(2))));
    }
    assert_eq!(epsilon_of_n(5, DEFAULT_BUDGET).unwrap(), Margin::NoTransition(int(20)));
    assert!(epsilon_of_n(3, DEFAULT_BUDGET).is_err());
    // without the corner-swapped polynomial the leader right of 1 is another one
    let urc = family_polynomial(Family::Urc, 4).unwrap();
    let rest: Vec<Candidate> = all_candidates(4, DEFAULT_BUDGET)
        .unwrap()
        .into_iter()
        .filter(|c| unsigned(&c.poly) != unsigned(&urc))
        .collect();
    assert_eq!(margin_from(4, &rest).unwrap(), Margin::NotLeading);
}

#[test]
fn restricted_matches_full_where_both_exist() {
    let samples = [ratio(1, 2), int(1), ratio(3, 2), int(3), int(10), int(20)];
    let r = restricted_envelope(4, &samples, &ratio(1, 2), Some(&int(20)), DEFAULT_BUDGET).unwrap();
    let f = envelope_for_dimension(4, &ratio(1, 2), Some(&int(20)), DEFAULT_BUDGET).unwrap();
    assert!(r.restricted && !f.restricted);
    assert_eq!(r.breakpoints(), f.breakpoints());
}

#[test]
fn maximizer_instrumentation() {
    let rec = maximizer_at_ratio(4, &int(1), DEFAULT_BUDGET).unwrap();
    assert_eq!(rec.count, 4);
    let counts: Vec<u32> = rec.maximizers.iter().map(|&c| t_count(c)).collect();
    assert!(counts.iter().all(|&c| c > 0));
    let table = distinct_chains(&SearchSpec::new(4, int(1), Population::binary(int(1))), 0, 1).unwrap();
    let cands = candidates_from_chains(4, &table);
    assert_eq!(cands.len(), table.len());
    for (chains, _) in table.iter() {
        for (l, sign) in sign_profile(4, chains) {
            assert_eq!(sign, if (4 - l) % 2 == 0 { 1 } else { -1 });
        }
    }
    // the record at x = 100 for n = 6 is the two block-form matrices
    let big = maximizer_at_ratio(6, &int(100), DEFAULT_BUDGET).unwrap();
    assert_eq!(big, search_max(&SearchSpec::new(6, int(100), Population::binary(int(1))).collect_all(true)).unwrap());
    assert_eq!(big.count, 2);
}
