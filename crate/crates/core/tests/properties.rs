//! Randomized invariants.

use apcsf_core::flow::{polygon_area, polygon_length, redistribute_sweep, FlowConfig, FlowState};
use apcsf_core::geometry::{self, Vec2};
use apcsf_core::period::theta_of_ratio;
use apcsf_core::potential::{energy_of_ratio, eta, potential, potential_min, potential_second_derivative, ratio_of_energy, turning_points};
use apcsf_core::shrinker::find_shrinker;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

fn shrinker_2_3() -> &'static apcsf_core::shrinker::ShrinkerSolution {
    static CELL: OnceLock<apcsf_core::shrinker::ShrinkerSolution> = OnceLock::new();
    CELL.get_or_init(|| find_shrinker(2, 3).unwrap())
}

/// Star-shaped polygon with radii in [0.5, 1.5].
fn star_polygon(radii: &[f64]) -> Vec<Vec2> {
    let n = radii.len();
    radii.iter().enumerate().map(|(i, &r)| Vec2::from_angle(TAU * i as f64 / n as f64) * r).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn potential_is_strictly_convex(lambda in 0.0..20.0f64, kappa in 0.05..20.0f64) {
        let h = 1e-4 * kappa;
        let fd = (potential(lambda, kappa + h) - 2.0 * potential(lambda, kappa) + potential(lambda, kappa - h)) / (h * h);
        let exact = potential_second_derivative(kappa);
        prop_assert!(exact >= 1.0);
        prop_assert!((fd - exact).abs() / exact < 1e-6);
    }

    #[test]
    fn turning_points_bracket_the_minimum(lambda in 0.0..10.0f64, excess in 1e-3..50.0f64) {
        let spec = potential_min(lambda).unwrap();
        let pair = turning_points(&spec, spec.v0 + excess).unwrap();
        prop_assert!(pair.kappa_minus < spec.kappa0 && spec.kappa0 < pair.kappa_plus);
        let scale = spec.v0.abs() + excess + 1.0;
        prop_assert!((potential(lambda, pair.kappa_minus) - pair.energy).abs() < 1e-9 * scale);
        prop_assert!((potential(lambda, pair.kappa_plus) - pair.energy).abs() < 1e-9 * scale);
    }

    #[test]
    fn ratio_energy_round_trip(lambda in 0.0..10.0f64, log_r in 0.01..8.0f64) {
        let r = log_r.exp();
        let e = energy_of_ratio(lambda, r).unwrap();
        let spec = potential_min(lambda).unwrap();
        let back = ratio_of_energy(&spec, e).unwrap();
        prop_assert!((back - r).abs() / r < 1e-8);
    }

    #[test]
    fn eta_increases_with_lambda(lambda in 0.0..10.0f64, dl in 0.01..5.0f64, log_r in 0.01..6.0f64) {
        let r = log_r.exp();
        prop_assert!(eta(lambda + dl, r).unwrap() > eta(lambda, r).unwrap());
    }

    #[test]
    fn semi_period_inside_sandwich(lambda in 0.0..8.0f64, log_r in 0.01..7.0f64) {
        let s = theta_of_ratio(lambda, log_r.exp()).unwrap();
        let upper = PI * apcsf_core::period::omega_plus(lambda).unwrap();
        prop_assert!(s.theta > PI / 2.0 + s.quadrature_error_estimate);
        prop_assert!(s.theta < upper - s.quadrature_error_estimate);
    }

    #[test]
    fn rigid_motions_preserve_functionals(angle in -PI..PI, dx in -5.0..5.0f64, dy in -5.0..5.0f64) {
        let c = &shrinker_2_3().curve;
        let moved = c.rotated(angle).translated(Vec2::new(dx, dy));
        let (l0, l1) = (geometry::length(c), geometry::length(&moved));
        prop_assert!((l0 - l1).abs() < 1e-12 * l0);
        let (a0, a1) = (geometry::signed_area(c).unwrap(), geometry::signed_area(&moved).unwrap());
        // The area is nearly zero; compare against the natural scale len².
        prop_assert!((a0.abs() - a1.abs()).abs() < 1e-10 * l0 * l0);
    }

    #[test]
    fn soliton_residual_invariant_under_rotation_about_center(angle in -PI..PI) {
        let s = shrinker_2_3();
        let r0 = geometry::soliton_residual(&s.curve, s.lambda_star);
        let r1 = geometry::soliton_residual(&s.curve.rotated(angle), s.lambda_star);
        prop_assert!((r0 - r1).abs() < 1e-10);
    }

    #[test]
    fn chord_slides_preserve_area(radii in prop::collection::vec(0.8..1.2f64, 64..128), alpha in 0.0..2.0f64) {
        let mut x = star_polygon(&radii);
        let a0 = polygon_area(&x);
        redistribute_sweep(&mut x, alpha);
        prop_assert!((polygon_area(&x) - a0).abs() < 1e-12 * a0.abs().max(1.0));
    }

    #[test]
    fn flow_step_preserves_area_and_shortens(
        modes in prop::collection::vec((-0.05..0.05f64, 0.0..TAU), 4),
        nodes in 64usize..160,
    ) {
        // Smooth star: r(θ) = 1 + Σ a_k cos(kθ + φ_k), k = 2..5.
        let radii: Vec<f64> = (0..nodes)
            .map(|i| {
                let t = TAU * i as f64 / nodes as f64;
                1.0 + modes.iter().enumerate().map(|(k, &(a, phi))| a * ((k + 2) as f64 * t + phi).cos()).sum::<f64>()
            })
            .collect();
        let mut state = FlowState::from_polygon(star_polygon(&radii), 1).unwrap();
        let a0 = polygon_area(&state.positions);
        let cfg = FlowConfig::default();
        for _ in 0..20 {
            let before = polygon_length(&state.positions);
            state.advance(&cfg).unwrap();
            prop_assert!(polygon_length(&state.positions) <= before + 1e-10);
        }
        prop_assert!((polygon_area(&state.positions) - a0).abs() / a0 < 1e-4);
    }
}
