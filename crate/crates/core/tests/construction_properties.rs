use std::f64::consts::{FRAC_PI_2, PI};

use aniso_lgp::construction::{isotropic_measure_lower_bound, Construction, ConstructionConfig, Mode};
use aniso_lgp::geometry::{isotropic_h, trapezoid_h, Arc};
use aniso_lgp::{Error, NormSpec};
use proptest::prelude::*;

fn strictly_convex_norm() -> impl Strategy<Value = NormSpec> {
    prop_oneof![
        (1.3f64..4.0).prop_map(|p| NormSpec::lp(p).unwrap()),
        (0.01f64..1.0).prop_map(|c| {
            NormSpec::combination(vec![(1.0, NormSpec::l2()), (c, NormSpec::l1())]).unwrap()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn equality_nodes_nest_with_small_residual(
        norm in strictly_convex_norm(),
        alpha0 in 0.05f64..0.6,
        theta in 0.0f64..(2.0 * PI),
        depth in 0usize..7,
    ) {
        let c = Construction::build(ConstructionConfig::new(norm, alpha0, theta, depth, Mode::Equality)).unwrap();
        for node in c.nodes() {
            if let Some(a) = node.child_alpha {
                prop_assert!(node.h_self.unwrap().abs() <= 1e-12);
                prop_assert!(a > 0.0 && a < node.arc.width() / 2.0);
                let gap = c.gap(node.index).unwrap();
                prop_assert!(gap > 0.0);
            }
        }
        for n in 0..depth {
            prop_assert!(c.measure(n + 1).unwrap() <= c.measure(n).unwrap());
            prop_assert!(c.en_area(n + 1).unwrap() < c.en_area(n).unwrap());
            prop_assert!(c.eprime_area(n + 1).unwrap() <= c.eprime_area(n).unwrap());
        }
    }

    #[test]
    fn json_dump_is_byte_stable(
        alpha0 in 0.01f64..1.0,
        theta in -10.0f64..10.0,
        depth in 0usize..6,
        rho in 0.05f64..1.0,
    ) {
        let c = Construction::build(ConstructionConfig::new(
            NormSpec::lp(2.5).unwrap(), alpha0, theta, depth, Mode::FixedRatio(rho),
        )).unwrap();
        let text = c.to_json().unwrap();
        let back = Construction::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json().unwrap(), text);
    }

    #[test]
    fn isotropic_h_matches_closed_form(
        start in 0.0f64..(2.0 * PI),
        width in 0.01f64..FRAC_PI_2,
        t in 0.01f64..0.99,
    ) {
        let parent = Arc::new(start, width).unwrap();
        let alpha = t * width / 2.0;
        let h = trapezoid_h(&NormSpec::l2(), &parent, alpha).unwrap().h;
        prop_assert!((h - isotropic_h(width, alpha)).abs() < 1e-14);
    }

    #[test]
    fn isotropic_measure_bound_holds(alpha0 in 0.01f64..0.5, depth in 1usize..10) {
        let c = Construction::build(ConstructionConfig::new(
            NormSpec::l2(), alpha0, 0.3, depth, Mode::Equality,
        )).unwrap();
        let bound = isotropic_measure_lower_bound(alpha0, depth);
        prop_assert!(c.measure(depth).unwrap() >= bound * (1.0 - 1e-14));
        for r in c.ratios() {
            prop_assert!(r.r <= 2.0 / 3.0 * r.child_alpha * r.child_alpha);
        }
    }
}

#[test]
fn remark_bound_value() {
    let b = aniso_lgp::construction::isotropic_measure_limit_bound(0.1);
    assert!((b - 0.0998890).abs() < 1e-7, "{b}");
}

#[test]
fn flat_unit_ball_direction_reports_bracket_failure() {
    // near the axes the l_8 unit circle is flat to high order, so the
    // negative part of h close to w/2 is below double precision
    let cfg = ConstructionConfig::new(NormSpec::lp(8.0).unwrap(), 0.01, 0.0, 1, Mode::Equality);
    assert!(matches!(Construction::build(cfg), Err(Error::BracketFailure { .. })));
    let cfg = ConstructionConfig::new(NormSpec::lp(8.0).unwrap(), 0.01, PI / 4.0, 1, Mode::Equality);
    assert!(Construction::build(cfg).is_ok());
}
