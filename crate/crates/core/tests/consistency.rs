//! Engine-vs-closed-form consistency at scale: on 1000 random in-regime
//! points per family, the exact discrepancy is zero - except the printed
//! square-plus-triangle formula, whose divergence from the corrected one is
//! itself asserted.

use peaceable::families::{registry, sampling, verify_family};
use peaceable::geometry::black_region;
use peaceable::rational::Rational;
use num_traits::Zero;

const POINTS_PER_FAMILY: usize = 1000;

#[test]
fn engine_equals_closed_forms_on_1000_points_per_family() {
    for family in registry() {
        if !family.has_closed_black() {
            continue;
        }
        let points = sampling::sample_in_regime(family, POINTS_PER_FAMILY, 0xA11CE);
        let mut printed_diverged = false;
        for p in &points {
            let report = verify_family(family, p).expect("verify");
            assert!(report.in_regime);
            assert_eq!(
                report.white_discrepancy.exact, "0",
                "{} white mismatch at {:?}",
                family.name,
                p.to_string_map()
            );
            assert_eq!(
                report.black_discrepancy.as_ref().expect("closed form").exact,
                "0",
                "{} black mismatch at {:?}",
                family.name,
                p.to_string_map()
            );
            if let (Some(printed), Some(engine)) =
                (&report.printed_black, Some(&report.engine_black))
            {
                if printed.exact != engine.exact {
                    printed_diverged = true;
                }
            }
        }
        if family.printed_black.is_some() {
            assert!(
                printed_diverged,
                "{}: the printed formula should not match the engine everywhere",
                family.name
            );
        }
        println!(
            "{}: {} in-regime points, engine == closed form exactly",
            family.name,
            points.len()
        );
    }
}

// White regions never overlap their own strips' complement pieces: the
// union sanity check on every family at its reference point.
#[test]
fn white_and_black_partition_sanity() {
    for family in registry() {
        let params: Vec<f64> = family
            .claimed
            .as_ref()
            .map(|c| c.params.clone())
            .or_else(|| family.interior_point.clone())
            .expect("reference parameters");
        let values: Vec<Rational> = params
            .iter()
            .map(|&v| peaceable::rational::snap_f64(v, 1e-12))
            .collect();
        let p = peaceable::families::ParamPoint::new(family, values).unwrap();
        if family.check_domain(&p).is_err() {
            continue;
        }
        let white = family.build_white(&p).unwrap();
        let black = black_region(&white).unwrap();
        // Disjoint armies, both inside the unit square.
        assert_eq!(white.intersection_area(&black).unwrap(), Rational::zero());
        assert!(&white.area() + &black.area() <= Rational::from_integer(1.into()));
        assert!(!white.area().is_zero());
    }
}

// Reported optima are certified local maxima at probe radius 1e-4, and
// their equal-area gap stays within 1e-8.
#[test]
fn reported_optima_pass_stationarity_probe() {
    use peaceable::optimize::{check_local_optimum, maximize, MaximizeOptions, Objective};
    for name in ["rectangle", "two_squares", "two_triangles_opposite"] {
        let family = peaceable::families::find(name).unwrap();
        let obj = Objective::auto(family);
        let result = maximize(&obj, &MaximizeOptions::default()).unwrap();
        assert!(result.equal_area_gap <= 1e-8, "{name} gap {}", result.equal_area_gap);
        let verdict = check_local_optimum(&obj, &result.params, 1e-4, 64, 5).unwrap();
        assert!(
            verdict.is_local_max,
            "{name}: improvement {:.3e} along {:?}",
            verdict.improvement,
            verdict.worst_direction
        );
    }
}

// Raster oracle at the optimum: count/n^2 lands within 1/n of 7/48.
#[test]
fn jubin_raster_within_one_over_n() {
    use peaceable::geometry::raster_count;
    let family = peaceable::families::find("jubin").unwrap();
    let white = family
        .build_white(&peaceable::families::jubin::optimum_point())
        .unwrap();
    let n = 120u32;
    let estimate = raster_count(&white, n) as f64 / (n as f64 * n as f64);
    assert!((estimate - 7.0 / 48.0).abs() <= 1.0 / n as f64, "estimate {estimate}");
}
