mod common;

use common::{s, slope_in, unimodular};
use curvecov::annular::{dehn_twist, make_axis};
use curvecov::antichain::antichain_of_maxima;
use curvecov::Slope;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ints(x: &Slope) -> (i64, i64) {
    x.to_i64_pair().unwrap()
}

fn det(a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 * b.1 - a.1 * b.0).abs()
}

/// Projection from the closed form `|Δtw| = i(a, b) / (i(g, a) i(g, b))`.
fn projection(g: (i64, i64), a: (i64, i64), b: (i64, i64)) -> Option<i64> {
    let (ga, gb) = (det(g, a), det(g, b));
    if ga == 0 || gb == 0 {
        return None;
    }
    let den = ga * gb;
    Some(1 + (det(a, b) + den - 1) / den)
}

fn box_slopes(bound: i64) -> Vec<(i64, i64)> {
    let mut out = vec![(1, 0)];
    for q in 1..=bound {
        for p in -bound..=bound {
            if num_integer::gcd(p, q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

fn brute_force(a: &Slope, b: &Slope, t: i64, candidates: &[(i64, i64)]) -> Vec<Slope> {
    let (pa, pb) = (ints(a), ints(b));
    let mut out: Vec<Slope> = candidates
        .iter()
        .filter(|&&g| projection(g, pa, pb).is_some_and(|d| d >= t))
        .map(|&(p, q)| s(p, q))
        .collect();
    out.sort();
    out
}

#[test]
fn complete_against_box_scan() {
    let slopes = box_slopes(34);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3000 {
        let (i, j) = (
            rng.gen_range(0..slopes.len()),
            rng.gen_range(0..slopes.len()),
        );
        if i == j {
            continue;
        }
        let (a, b) = (s(slopes[i].0, slopes[i].1), s(slopes[j].0, slopes[j].1));
        for t in [4, 6, 10] {
            let members = antichain_of_maxima(&a, &b, t).unwrap().members;
            assert_eq!(members, brute_force(&a, &b, t, &slopes), "{a} {b} T={t}");
        }
    }
}

#[test]
fn twisted_pairs_against_box_scan() {
    let slopes = box_slopes(60);
    for (g, n, x) in [
        ((1, 5), 7, (0, 1)),
        ((2, 7), 12, (-3, 4)),
        ((1, 2), -9, (1, 0)),
        ((3, 4), 30, (1, 3)),
    ] {
        let (a, g) = (s(x.0, x.1), s(g.0, g.1));
        let b = dehn_twist(&make_axis(&g), n, &a);
        let members = antichain_of_maxima(&a, &b, 4).unwrap().members;
        assert!(members.contains(&g));
        if ints(&b).0.abs() <= 60 && ints(&b).1 <= 60 {
            assert_eq!(members, brute_force(&a, &b, 4, &slopes));
        }
    }
    assert_eq!(
        brute_force(&s(0, 1), &s(5, 26), 4, &box_slopes(100)),
        vec![s(1, 5)]
    );
}

proptest! {
    #[test]
    fn monotone_in_threshold(a in slope_in(3000), b in slope_in(3000), t in 4i64..20) {
        prop_assume!(a != b);
        let lo = antichain_of_maxima(&a, &b, t).unwrap();
        let hi = antichain_of_maxima(&a, &b, t + 1).unwrap();
        prop_assert!(hi.members.iter().all(|m| lo.contains(m)));
    }

    #[test]
    fn equivariant(a in slope_in(2000), b in slope_in(2000), m in unimodular()) {
        prop_assume!(a != b);
        let mut moved: Vec<Slope> = antichain_of_maxima(&a, &b, 4).unwrap().members.iter().map(|x| m.apply(x)).collect();
        moved.sort();
        prop_assert_eq!(antichain_of_maxima(&m.apply(&a), &m.apply(&b), 4).unwrap().members, moved);
    }
}
