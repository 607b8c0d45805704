//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

use std::io::Write;
use std::time::Instant;

use apcsf_core::flow::{self, homothety_control, run_dichotomy, DichotomyConfig, FlowConfig, FlowState, Sign, Verdict};
use apcsf_core::geometry::{self, verify_typology, Vec2};
use apcsf_core::period::{self, log_grid, omega_plus, scan_monotonicity, theta_of_energy, theta_of_ratio};
use apcsf_core::potential::potential_min;
use apcsf_core::shooting::{integrate_ivp, ShootingConfig};
use apcsf_core::shrinker::{self, find_shrinker, lambda_threshold, length_threshold, scan_fixed_point, GALLERY};

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

fn report(id: u32, name: &str, pass: bool, detail: String) {
    let status = if pass { "PASS" } else { "FAIL" };
    // Written to the raw handle so the line shows without --nocapture.
    let _ = writeln!(std::io::stdout(), "acceptance {id:02} {name}: {status} ({detail})");
    assert!(pass, "criterion {id} ({name}) failed: {detail}");
}

#[test]
fn c01_high_energy_limit() {
    let mut pass = true;
    let mut parts = Vec::new();
    for lambda in [0.0, 1.0, 5.0] {
        let v = theta_of_ratio(lambda, 1e4).unwrap().theta_over_pi();
        pass &= v > 0.5 && v < 0.51;
        parts.push(format!("λ={lambda}: Θ/π={v:.6}"));
    }
    report(1, "high-energy limit", pass, parts.join(", "));
}

#[test]
fn c02_low_energy_limit() {
    let mut pass = true;
    let mut parts = Vec::new();
    for lambda in [0.0, 2.0, 10.0] {
        let v = theta_of_ratio(lambda, 1.0 + 1e-4).unwrap().theta_over_pi();
        let d = (v - omega_plus(lambda).unwrap()).abs();
        pass &= d < 1e-3;
        parts.push(format!("λ={lambda}: |Θ/π − ω⁺|={d:.3e}"));
    }
    report(2, "low-energy limit", pass, parts.join(", "));
}

#[test]
fn c03_lambda_zero_window() {
    let grid = log_grid(1.001, 1e4, 400).unwrap();
    let values: Vec<f64> = grid.iter().map(|&r| theta_of_ratio(0.0, r).unwrap().theta_over_pi()).collect();
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let pass = (max - FRAC_1_SQRT_2).abs() < 1e-3 && (min - 0.5).abs() < 1e-3;
    let at_ends = values[0] == max && *values.last().unwrap() == min;
    report(
        3,
        "λ=0 rotation-index window",
        pass,
        format!("max Θ₀/π={max:.6} (√2/2={FRAC_1_SQRT_2:.6}), min Θ₀/π={min:.6}, extremes at grid ends: {at_ends}"),
    );
}

#[test]
fn c04_gallery_existence() {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for (m, n) in GALLERY {
        match find_shrinker(m, n) {
            Ok(s) => {
                let d = s.diagnostics;
                let typ = verify_typology(&s.curve);
                let ok = d.area_residual < 1e-6
                    && d.soliton_residual < 1e-5
                    && d.kappa_bar_mismatch < 1e-6
                    && typ.all_pass(m, n)
                    && s.curve.m == m
                    && s.curve.n == n;
                pass &= ok;
                parts.push(format!(
                    "{m}/{n}: λ*={:.8} area={:.1e} sol={:.1e} κ̄={:.1e} typology={}",
                    s.lambda_star,
                    d.area_residual,
                    d.soliton_residual,
                    d.kappa_bar_mismatch,
                    typ.all_pass(m, n)
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{m}/{n}: {e}"));
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    pass &= elapsed < 300.0;
    parts.push(format!("{elapsed:.1}s"));
    report(4, "gallery existence", pass, parts.join("; "));
}

#[test]
fn c05_fixed_point_structure() {
    let mut pass = true;
    let mut parts = Vec::new();
    for (m, n) in GALLERY {
        let scan = scan_fixed_point(m, n, 40).unwrap();
        let ok = scan.sign_changes() == 1 && scan.len_q_decreasing();
        pass &= ok;
        parts.push(format!("{m}/{n}: changes={} decreasing={}", scan.sign_changes(), scan.len_q_decreasing()));
    }
    report(5, "fixed-point structure", pass, parts.join(", "));
}

#[test]
fn c06_threshold_formulas() {
    let rationals = [(3, 5), (2, 3), (5, 7), (11, 15), (3, 4), (4, 5), (5, 6), (13, 15), (7, 9), (9, 10)];
    let mut worst: f64 = 0.0;
    let mut pass = true;
    for (m, n) in rationals {
        let q = m as f64 / n as f64;
        // Oracle: ω⁺(λ)² = q² gives λ/√(λ² + 4) = 2q² − 1 =: c, so λ = 2c/√(1 − c²).
        let c = 2.0 * q * q - 1.0;
        let lam_oracle = if c <= 0.0 { 0.0 } else { 2.0 * c / (1.0 - c * c).sqrt() };
        let l_oracle = if c <= 0.0 { f64::INFINITY } else { TAU * m as f64 / lam_oracle };
        let lam = lambda_threshold(q).unwrap();
        let l = length_threshold(m, n).unwrap();
        if c <= 0.0 {
            pass &= lam == 0.0 && l.is_infinite();
        } else {
            let e1 = (lam - lam_oracle).abs() / lam_oracle;
            let e2 = (l - l_oracle).abs() / l_oracle;
            let e3 = (omega_plus(lam).unwrap() - q).abs() / q;
            worst = worst.max(e1).max(e2).max(e3);
        }
    }
    pass &= worst < 1e-12;
    report(6, "threshold formulas", pass, format!("worst relative error {worst:.2e} over 10 rationals"));
}

#[test]
fn c07_cross_oracle_period() {
    let mut worst: f64 = 0.0;
    for lambda in [0.0, 1.0, 5.0] {
        let v0 = potential_min(lambda).unwrap().v0;
        for de in [0.1, 1.0, 10.0] {
            let e = v0 + de;
            let quad = theta_of_energy(lambda, e).unwrap().theta;
            let shoot = integrate_ivp(lambda, e, &ShootingConfig::default()).unwrap().semi_period;
            worst = worst.max((quad - shoot).abs());
        }
    }
    report(7, "cross-oracle period consistency", worst < 1e-7, format!("max |Θ_quad − Θ_shoot| = {worst:.2e}"));
}

#[test]
fn c08_lambda_monotonicity() {
    let lambdas = [0.0, 0.5, 1.0, 2.0, 5.0];
    let mut pass = true;
    let mut parts = Vec::new();
    for r in [1.5, 3.0, 10.0] {
        let thetas: Vec<f64> = lambdas.iter().map(|&l| theta_of_ratio(l, r).unwrap().theta).collect();
        let inc = thetas.windows(2).all(|w| w[1] > w[0]);
        pass &= inc;
        parts.push(format!("r={r}: {}", if inc { "increasing" } else { "not increasing" }));
    }
    report(8, "λ-monotonicity", pass, parts.join(", "));
}

#[test]
fn c09_flow_conservation() {
    let pts: Vec<Vec2> = (0..512)
        .map(|j| {
            let t = TAU * j as f64 / 512.0;
            Vec2::new(2.0 * t.cos(), t.sin())
        })
        .collect();
    let mut state = FlowState::from_polygon(pts, 1).unwrap();
    let a0 = state.diagnostics.area;
    let cfg = FlowConfig::default();
    let mut prev = state.diagnostics.length;
    let mut worst_increase = f64::NEG_INFINITY;
    for _ in 0..10_000 {
        state.advance(&cfg).unwrap();
        worst_increase = worst_increase.max(state.diagnostics.length - prev);
        prev = state.diagnostics.length;
    }
    let drift = (state.diagnostics.area - a0).abs() / a0;
    let pass = drift < 1e-3 && worst_increase <= 1e-10;
    report(
        9,
        "flow conservation",
        pass,
        format!("area drift {drift:.2e}, largest per-step length change {worst_increase:.2e}, t={:.4}", state.time),
    );
}

#[test]
fn c10_saddle_point_dichotomy() {
    let cases = [(2u32, 3u32, Sign::Plus), (2, 3, Sign::Minus), (3, 4, Sign::Plus), (3, 4, Sign::Minus)];
    let shrinkers: Vec<_> = [(2, 3), (3, 4)].iter().map(|&(m, n)| find_shrinker(m, n).unwrap()).collect();
    let outcomes: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = cases
            .iter()
            .map(|&(m, _, sign)| {
                let s = &shrinkers[if m == 2 { 0 } else { 1 }];
                scope.spawn(move || {
                    let eps = 1e-3 * s.curve.diameter();
                    run_dichotomy(s, eps, sign, &DichotomyConfig::default()).unwrap()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut pass = true;
    let mut parts = Vec::new();
    for (&(m, n, sign), o) in cases.iter().zip(&outcomes) {
        let ok = match sign {
            Sign::Plus => o.verdict == Verdict::CircleConvergence && o.turning_defect < 0.01,
            Sign::Minus => o.verdict == Verdict::CuspBlowup && o.cluster_count == Some(n as usize),
        };
        pass &= ok;
        parts.push(format!(
            "({m},{n}) {}: {} clusters={:?} |κ̄·len/2πm − 1|={:.1e} t={:.4}",
            sign.as_str(),
            o.verdict.as_str(),
            o.cluster_count,
            o.turning_defect,
            o.final_state.time
        ));
    }
    report(10, "saddle-point dichotomy", pass, parts.join("; "));
}

#[test]
fn c11_homothety_control() {
    let s = find_shrinker(2, 3).unwrap();
    let r = homothety_control(&s.curve, 512, s.extinction_time(), 0.3, &FlowConfig::default()).unwrap();
    let pass = r.max_relative_deviation <= 1e-2;
    report(
        11,
        "homothety control",
        pass,
        format!("fitted T*={:.6}, max deviation/diameter={:.2e}", r.t_star_fit, r.max_relative_deviation),
    );
}

#[test]
fn c12_monotonicity_scan() {
    let grid = log_grid(1.01, 1e3, 200).unwrap();
    let mut total = 0;
    let mut parts = Vec::new();
    for lambda in [0.0, 1.0, 2.0, 5.0] {
        let scan = scan_monotonicity(lambda, &grid).unwrap();
        total += scan.violations.len();
        parts.push(format!("λ={lambda}: {} violations", scan.violations.len()));
    }
    report(12, "semi-period monotonicity scan", total == 0, parts.join(", "));
}

// Keep the shared imports honest for modules only used in some criteria.
#[allow(dead_code)]
fn _uses() -> (f64, usize) {
    (period::SMALL_OSCILLATION_RATIO + PI, flow::MIN_NODES + geometry::CLOSURE_TOLERANCE as usize + shrinker::GALLERY.len())
}
