mod common;

use common::{s, slope_in, unimodular};
use curvecov::farey::{
    bfs_distance_oracle, farey_distance, intersection_number, BoundedFareyGraph,
};
use curvecov::SurfaceModel;
use num_traits::One;
use proptest::prelude::*;

proptest! {
    #[test]
    fn symmetric_and_zero_only_on_equal(a in slope_in(10_000), b in slope_in(10_000)) {
        prop_assert_eq!(farey_distance(&a, &b), farey_distance(&b, &a));
        prop_assert_eq!(farey_distance(&a, &b) == 0, a == b);
    }

    #[test]
    fn edges_are_unit_determinant(a in slope_in(1000), b in slope_in(1000)) {
        let i = intersection_number(SurfaceModel::TorusFarey, &a, &b).unwrap();
        prop_assert_eq!(farey_distance(&a, &b) == 1, i.is_one());
    }

    #[test]
    fn triangle_inequality(a in slope_in(5000), b in slope_in(5000), c in slope_in(5000)) {
        prop_assert!(farey_distance(&a, &c) <= farey_distance(&a, &b) + farey_distance(&b, &c));
    }

    #[test]
    fn unimodular_invariance(a in slope_in(5000), b in slope_in(5000), m in unimodular()) {
        prop_assert_eq!(farey_distance(&m.apply(&a), &m.apply(&b)), farey_distance(&a, &b));
    }
}

#[test]
fn agrees_with_bfs_on_a_small_box() {
    let graph = BoundedFareyGraph::new(60).unwrap();
    let slopes: Vec<_> = (1..=20)
        .flat_map(|q| (-20..=20).map(move |p| (p, q)))
        .filter(|(p, q)| num_integer::gcd(*p, *q) == 1)
        .map(|(p, q)| s(p, q))
        .collect();
    for a in slopes.iter().step_by(7) {
        for b in &slopes {
            assert_eq!(
                graph.distance(a, b).unwrap(),
                Some(farey_distance(a, b)),
                "{a} {b}"
            );
        }
    }
    assert_eq!(
        bfs_distance_oracle(&s(0, 1), &s(5, 26), 30).unwrap(),
        Some(2)
    );
}
