mod common;

use std::f64::consts::PI;

use common::{brute_force_short_slopes, close, gcd};
use cuspcert_core::cusp_area::{area_r1, area_r2, eta};
use cuspcert_core::lattice::{intersection_number, Unimodular};
use cuspcert_core::surgery::{check_surface_survives_filling, Coannular, CuspData, SurfaceData};
use cuspcert_core::tubing::{
    check_tubing_geometrically_finite, check_tubing_totally_geodesic, tube_length_bound, TubeSpec, TubingSpec,
};
use cuspcert_core::{Lattice, MultipleSlope, Slope, Status, TruncationHeight, Vec2};
use proptest::prelude::*;

fn lattice() -> impl Strategy<Value = Lattice> {
    (0.3f64..6.0, -3.0f64..3.0, 0.3f64..5.0, 0.0f64..std::f64::consts::TAU).prop_map(|(len, shear, h, angle)| {
        let (c, s) = (angle.cos(), angle.sin());
        let v1 = Vec2::new(len * c, len * s);
        let v2 = Vec2::new(shear * len * c - h * s, shear * len * s + h * c);
        Lattice::new(v1, v2).unwrap()
    })
}

fn slope(range: i64) -> impl Strategy<Value = Slope> {
    (-range..=range, -range..=range)
        .prop_filter("primitive", |&(p, q)| gcd(p, q) == 1)
        .prop_map(|(p, q)| Slope::new(p, q).unwrap())
}

fn unimodular() -> impl Strategy<Value = Unimodular> {
    prop::collection::vec((0u8..4, -3i64..=3), 1..6).prop_map(|steps| {
        steps.into_iter().fold(Unimodular::IDENTITY, |u, (kind, k)| {
            let e = match kind {
                0 => Unimodular::new(1, k, 0, 1),
                1 => Unimodular::new(1, 0, k, 1),
                2 => Unimodular::new(0, 1, 1, 0),
                _ => Unimodular::new(-1, 0, 0, 1),
            };
            u.compose(&e.unwrap())
        })
    })
}

fn height() -> impl Strategy<Value = TruncationHeight> {
    prop_oneof![
        1 => Just(TruncationHeight::Infinite),
        6 => (1.0001f64..200.0).prop_map(|b| TruncationHeight::new(b).unwrap()),
    ]
}

proptest! {
    #[test]
    fn lengths_scale_linearly(l in lattice(), s in slope(20), k in 0.1f64..10.0) {
        let scaled = l.scaled(k).unwrap();
        prop_assert!(close(scaled.length(s.class()), k * l.length(s.class()), 1e-12));
        prop_assert!(close(scaled.area(), k * k * l.area(), 1e-12));
    }

    #[test]
    fn relative_length_bounded_by_length(l in lattice(), a in slope(20), rho in slope(20)) {
        let r = l.relative_length(a.class(), rho);
        prop_assert!(r >= 0.0);
        prop_assert!(r <= l.length(a.class()) * (1.0 + 1e-12));
        if a == rho {
            prop_assert!(r <= 1e-9 * l.length(a.class()));
        }
    }

    #[test]
    fn relative_length_matches_intersection(l in lattice(), beta in slope(30), rho in slope(30)) {
        let direct = l.relative_length(rho.class(), beta);
        let via = l.relative_length_via_intersection(rho, beta);
        prop_assert!((direct - via).abs() <= 1e-9 * (1.0 + l.length(rho.class())));
    }

    #[test]
    fn intersection_is_symmetric(a in slope(1000), b in slope(1000)) {
        prop_assert_eq!(intersection_number(a, b), intersection_number(b, a));
        prop_assert_eq!(intersection_number(a, a), 0);
    }

    #[test]
    fn basis_change_preserves_geometry(l in lattice(), u in unimodular(), a in slope(15), b in slope(15)) {
        let m = l.change_basis(&u);
        let (am, bm) = (a.in_basis(&u), b.in_basis(&u));
        prop_assert!(close(m.area(), l.area(), 1e-12));
        prop_assert!(close(m.length(am.class()), l.length(a.class()), 1e-12));
        prop_assert_eq!(intersection_number(am, bm), intersection_number(a, b));
        prop_assert_eq!(am.in_basis(&u.inverse()), a);
    }

    #[test]
    fn enumeration_matches_brute_force(l in lattice(), bound in 0.0f64..(12.0 * PI)) {
        let fast = l.enumerate_short_slopes(bound);
        prop_assert_eq!(&fast, &brute_force_short_slopes(&l, bound));
        for s in &fast {
            prop_assert!(l.length(s.class()) < bound);
        }
    }

    #[test]
    fn shortest_length_is_a_minimum(l in lattice(), s in slope(25)) {
        prop_assert!(l.shortest_length() <= l.length(s.class()) * (1.0 + 1e-12));
    }

    #[test]
    fn areas_monotone_in_height(a in 0.01f64..80.0, b1 in 1.0001f64..100.0, db in 0.0f64..100.0) {
        let lo = TruncationHeight::new(b1).unwrap();
        let hi = TruncationHeight::new(b1 + db).unwrap();
        prop_assert!(area_r1(a, lo) <= area_r1(a, hi));
        prop_assert!(area_r2(a, lo) <= area_r2(a, hi) + 1e-12);
        prop_assert!(area_r2(a, hi) <= area_r2(a, TruncationHeight::Infinite) + 1e-12);
    }

    #[test]
    fn areas_monotone_in_width(a in 0.01f64..80.0, da in 0.0f64..20.0, b in height()) {
        prop_assert!(area_r1(a, b) <= area_r1(a + da, b));
        prop_assert!(area_r2(a, b) <= area_r2(a + da, b) + 1e-12);
    }

    #[test]
    fn disk_region_inside_rectangle(a in 0.01f64..80.0, b in height()) {
        let r2 = area_r2(a, b);
        prop_assert!(r2 >= 0.0);
        prop_assert!(r2 < a);
        prop_assert!(r2 <= area_r1(a, b) + 1e-12);
        prop_assert!(eta(a) < a);
    }

    #[test]
    fn disk_area_exceeds_two_pi(a in (3.0 * PI)..(20.0 * PI), b in 5.0f64..1000.0) {
        prop_assert!(area_r2(a, TruncationHeight::new(b).unwrap()) > 2.0 * PI);
    }

    #[test]
    fn surface_criterion_monotone_in_width(
        l in lattice(),
        beta in slope(3),
        rho in slope(40),
        w in 0.0f64..10.0,
        dw in 0.0f64..10.0,
    ) {
        let cusps = [CuspData::new("c", l.scaled(6.0).unwrap(), vec![Coannular { slope: beta, width: 0.0 }]).unwrap()];
        let filling = MultipleSlope::new([(0, rho)], 1).unwrap();
        let surf = |w| SurfaceData { w, rho: 0.0, genus: 1, boundary: 1, geometrically_finite: true };
        let wide = check_surface_survives_filling(&filling, &cusps, &surf(w + dw)).unwrap();
        let narrow = check_surface_survives_filling(&filling, &cusps, &surf(w)).unwrap();
        if wide.status == Status::Pass {
            prop_assert_eq!(narrow.status, Status::Pass);
        }
    }

    #[test]
    fn tube_length_linear_in_wrap(l in lattice(), d in slope(10), k in 0u64..1000) {
        let t = TubeSpec { cusp: 0, boundary_slope: d, wrap: k, explicit_length: None };
        let expect = k as f64 * l.area() / l.length(d.class());
        prop_assert!(close(tube_length_bound(&l, &t), expect, 1e-12));
    }

    #[test]
    fn tubing_criteria_monotone_in_wrap(l in lattice(), d in slope(6), k in 1u64..200, w in 0.0f64..5.0) {
        let surface = SurfaceData { w, rho: 0.5, genus: 1, boundary: 2, geometrically_finite: true };
        let spec = |k| TubingSpec::new(surface, vec![TubeSpec { cusp: 0, boundary_slope: d, wrap: k, explicit_length: None }], true).unwrap();
        let lat = [l];
        if check_tubing_geometrically_finite(&lat, &spec(k)).unwrap().status == Status::Pass {
            prop_assert_eq!(check_tubing_geometrically_finite(&lat, &spec(k + 1)).unwrap().status, Status::Pass);
        }
        if check_tubing_totally_geodesic(&lat, &spec(k)).unwrap().status == Status::Pass {
            prop_assert_eq!(check_tubing_totally_geodesic(&lat, &spec(k + 1)).unwrap().status, Status::Pass);
        }
    }
}
