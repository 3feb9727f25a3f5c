#![allow(dead_code)]

use curvecov::farey::UnimodularMatrix;
use curvecov::Slope;
use proptest::prelude::*;

pub fn s(p: i64, q: i64) -> Slope {
    Slope::from_ints(p, q).unwrap()
}

pub fn slope_in(bound: i64) -> impl Strategy<Value = Slope> {
    prop_oneof![
        1 => Just(Slope::infinity()),
        20 => (-bound..=bound, 1..=bound)
            .prop_filter("coprime", |(p, q)| num_integer::gcd(*p, *q) == 1)
            .prop_map(|(p, q)| s(p, q)),
    ]
}

/// Words in the generators `[[1,1],[0,1]]`, `[[0,-1],[1,0]]` and the
/// reflection `[[-1,0],[0,1]]`.
pub fn unimodular() -> impl Strategy<Value = UnimodularMatrix> {
    prop::collection::vec((0u8..3, -3i64..=3), 0..8).prop_map(|word| {
        let mut m = UnimodularMatrix::identity();
        for (g, n) in word {
            let step = match g {
                0 => UnimodularMatrix::twist(n),
                1 => UnimodularMatrix::new(0, -1, 1, 0).unwrap(),
                _ => UnimodularMatrix::new(-1, 0, 0, 1).unwrap(),
            };
            m = m.mul(&step);
        }
        m
    })
}
