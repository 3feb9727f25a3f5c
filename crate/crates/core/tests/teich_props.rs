mod common;

use common::{s, slope_in, unimodular};
use curvecov::annular::{annular_distance, make_axis};
use curvecov::experiments::{fit_teich_constants, ExperimentConfig, EPSILON_0, EPSILON_1};
use curvecov::farey::intersection_number;
use curvecov::par::Execution;
use curvecov::teich::{
    flat_length, geodesic_between, hyperbolic_distance, sample_times, systole, thick_part,
    thin_intervals, Modulus, TOLERANCE,
};
use curvecov::SurfaceModel;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn modulus() -> impl Strategy<Value = Modulus> {
    (-3.0f64..3.0, 0.05f64..20.0).prop_map(|(x, y)| Modulus::new(x, y).unwrap())
}

fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= TOLERANCE * (1.0 + x.abs().max(y.abs()))
}

proptest! {
    #[test]
    fn moduli_isometries(z in modulus(), w in modulus(), m in unimodular(), a in slope_in(50)) {
        prop_assert!(close(hyperbolic_distance(z.transform(&m), w.transform(&m)), hyperbolic_distance(z, w)));
        prop_assert!(close(flat_length(z.transform(&m), &m.apply(&a)), flat_length(z, &a)));
        prop_assert!(close(systole(z.transform(&m)).value, systole(z).value));
    }

    #[test]
    fn geodesic_quantities_are_invariant(a in slope_in(2000), b in slope_in(2000), m in unimodular()) {
        prop_assume!(a != b);
        let (g, h) = (geodesic_between(&a, &b).unwrap(), geodesic_between(&m.apply(&a), &m.apply(&b)).unwrap());
        prop_assert!(close(g.length(), h.length()));
        for t in sample_times(&g, g.length().max(0.1) / 7.0).unwrap() {
            prop_assert!(close(g.systole_at(t).value, h.systole_at(t).value));
        }
        let (tg, th) = (thin_intervals(&g, 0.2).unwrap(), thin_intervals(&h, 0.2).unwrap());
        prop_assert_eq!(tg.len(), th.len());
        for (x, y) in tg.iter().zip(&th) {
            prop_assert_eq!(m.apply(&x.curve), y.curve.clone());
            prop_assert!(close(x.t_enter, y.t_enter) && close(x.t_exit, y.t_exit));
        }
        let (pg, ph) = (thick_part(&g, 0.05, 1.0).unwrap(), thick_part(&h, 0.05, 1.0).unwrap());
        prop_assert!(close(pg.total, ph.total));
    }

    /// Two distinct slopes have product of lengths at least their intersection
    /// number, so a curve shorter than eps0 is the unique systole realizer.
    #[test]
    fn collar(z in modulus(), a in slope_in(200)) {
        let sys = systole(z);
        if flat_length(z, &a) < EPSILON_0 {
            prop_assert_eq!(sys.realizers.clone(), vec![a.clone()]);
        }
        for r in &sys.realizers {
            if *r != a {
                let i = intersection_number(SurfaceModel::TorusFarey, r, &a).unwrap().to_f64().unwrap();
                prop_assert!(sys.value * flat_length(z, &a) >= i - TOLERANCE);
            }
        }
    }
}

/// At every 0.01 sample, an eps-short systole must be one of the thin curves
/// whose window covers that time.
#[test]
fn no_thin_candidate_is_missed() {
    let pairs = curvecov::experiments::sample_pairs_with(7, 150, 3000).unwrap();
    let mut short_samples = 0;
    for (a, b) in pairs {
        let g = geodesic_between(&a, &b).unwrap();
        let thin = thin_intervals(&g, EPSILON_1).unwrap();
        for t in sample_times(&g, 0.01).unwrap() {
            let sys = g.systole_at(t);
            if sys.value < EPSILON_1 - TOLERANCE {
                short_samples += 1;
                let r = &sys.realizers[0];
                assert!(
                    thin.iter().any(|w| &w.curve == r
                        && w.t_enter - TOLERANCE <= t
                        && t <= w.t_exit + TOLERANCE),
                    "{a} {b}: {r} short at {t} but not reported"
                );
            }
        }
    }
    assert!(short_samples > 0);
}

#[test]
fn thin_window_minimum_matches_closed_form() {
    // Minimum length of an axis along the geodesic is sqrt(2 / delta).
    let (a, b) = (s(0, 1), s(5, 26));
    let g = geodesic_between(&a, &b).unwrap();
    let axis = s(1, 5);
    let delta = curvecov::annular::twist_difference(&make_axis(&axis), &a, &b).unwrap();
    let expected = (2.0 / delta.to_f64().unwrap().abs()).sqrt();
    let min = sample_times(&g, 0.0005)
        .unwrap()
        .into_iter()
        .map(|t| g.length_of(&axis, t))
        .fold(f64::INFINITY, f64::min);
    assert!((min - expected).abs() < 1e-6, "{min} vs {expected}");
}

#[test]
fn fitted_teich_constants() {
    let cfg = ExperimentConfig {
        sample_count: 400,
        ..ExperimentConfig::default()
    };
    let c = fit_teich_constants(&cfg, Execution::default()).unwrap();
    // Being eps-short needs sqrt(2 / delta) < eps, i.e. delta > 2 / eps^2,
    // so projection 2 + 2 / eps^2 always suffices.
    let suffices = |eps: f64| 2 + (2.0 / (eps * eps)).round() as u64;
    assert!(
        c.t1.is_some_and(|t| t >= 3 && t >= suffices(EPSILON_1) - 1),
        "T1 = {:?}",
        c.t1
    );
    assert!(
        c.t_min.is_some_and(|t| t <= suffices(EPSILON_0)),
        "T_min = {:?}",
        c.t_min
    );
    assert!(c.l0 / (2.0 * c.p) > 4.0);
    assert_eq!(c.long_thick_violations, 0);
}

#[test]
fn shadow_passes_near_the_large_axis() {
    let g = geodesic_between(&s(0, 1), &s(5, 26)).unwrap();
    let near = curvecov::teich::shadow(&g, 0.01)
        .unwrap()
        .iter()
        .any(|(_, c)| curvecov::farey::farey_distance(c, &s(1, 5)) <= 1);
    assert!(near);
    assert!(annular_distance(&make_axis(&s(1, 5)), &s(0, 1), &s(5, 26)).unwrap() >= 4.into());
}
