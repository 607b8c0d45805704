//! The λ-potential `V_λ(κ) = κ²/2 − λκ − log κ` and its level sets.
//!
//! `V_λ` is strictly convex on `(0, ∞)` with `V_λ'' = 1 + 1/κ² > 1` and a
//! unique minimum at `κ_λ^0 = λ/2 + √(λ²/4 + 1)`. Every energy above the
//! minimum has exactly two turning points `κ⁻ < κ_λ^0 < κ⁺`.

use crate::math::{self, ln_1p};
use crate::roots::{bisect, Stopping};
use crate::{Error, Result};

/// Default absolute tolerance on `|V_λ(κ±) − E|`.
pub const ROOT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    pub lambda: f64,
    /// Argmin `κ_λ^0`.
    pub kappa0: f64,
    /// Minimum value `V_λ^0`.
    pub v0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPair {
    pub kappa_minus: f64,
    pub kappa_plus: f64,
    pub energy: f64,
    /// Amplitude ratio `κ⁺/κ⁻`.
    pub ratio: f64,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::Domain("lambda must be a finite nonnegative number"));
    }
    Ok(())
}

fn check_ratio(ratio: f64) -> Result<()> {
    if !(ratio > 1.0) || !ratio.is_finite() {
        return Err(Error::Domain("amplitude ratio must be a finite number above 1"));
    }
    Ok(())
}

/// `V_λ(κ)` without domain checks.
#[inline]
pub fn potential(lambda: f64, kappa: f64) -> f64 {
    0.5 * kappa * kappa - lambda * kappa - math::ln(kappa)
}

/// `V_λ''(κ) = 1 + 1/κ²`.
#[inline]
pub fn potential_second_derivative(kappa: f64) -> f64 {
    1.0 + 1.0 / (kappa * kappa)
}

/// Unique positive root of `κ² − λκ − 1`, i.e. the constant solution of the curvature ODE.
#[inline]
pub fn argmin(lambda: f64) -> f64 {
    let half = 0.5 * lambda;
    half + math::sqrt(half * half + 1.0)
}

impl PotentialSpec {
    pub fn new(lambda: f64) -> Result<Self> {
        potential_min(lambda)
    }

    /// Second derivative of the potential at its minimum.
    pub fn curvature_at_min(&self) -> f64 {
        potential_second_derivative(self.kappa0)
    }
}

pub fn potential_value(spec: &PotentialSpec, kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) {
        return Err(Error::Domain("curvature must be positive"));
    }
    Ok(potential(spec.lambda, kappa))
}

pub fn potential_min(lambda: f64) -> Result<PotentialSpec> {
    check_lambda(lambda)?;
    let kappa0 = argmin(lambda);
    Ok(PotentialSpec { lambda, kappa0, v0: potential(lambda, kappa0) })
}

/// Turning points of the level set `{V_λ = E}` by bisection on the two monotone branches.
pub fn turning_points(spec: &PotentialSpec, energy: f64) -> Result<TurningPair> {
    turning_points_with_tolerance(spec, energy, ROOT_TOLERANCE)
}

pub fn turning_points_with_tolerance(
    spec: &PotentialSpec,
    energy: f64,
    tolerance: f64,
) -> Result<TurningPair> {
    if !(energy > spec.v0) || !energy.is_finite() {
        return Err(Error::NoOscillation { energy, minimum: spec.v0 });
    }
    let lambda = spec.lambda;
    let k0 = spec.kappa0;
    let level = |k: f64| Ok(potential(lambda, k) - energy);

    // Left branch: V → ∞ as κ → 0, so halving terminates.
    let mut lo = 0.5 * k0;
    while potential(lambda, lo) <= energy {
        lo *= 0.5;
        if lo < f64::MIN_POSITIVE {
            return Err(Error::Solver("left turning point underflows"));
        }
    }
    // Right branch: quadratic comparison V ≤ (κ − λ)²/2 − λ²/2 for κ ≥ κ⁰ > 1.
    let mut hi = k0 + math::sqrt((2.0 * energy + lambda * lambda).max(0.0)) + 1.0;
    while potential(lambda, hi) <= energy {
        hi *= 2.0;
    }
    let stop = Stopping::default();
    // The left root can be exponentially small; bisect it in log κ.
    let log_level = |u: f64| Ok(potential(lambda, math::exp(u)) - energy);
    let kappa_minus = math::exp(bisect(log_level, math::ln(lo), math::ln(k0), stop)?);
    let kappa_plus = bisect(level, k0, hi, stop)?;

    let scale = energy.abs().max(1.0);
    let res = (potential(lambda, kappa_minus) - energy)
        .abs()
        .max((potential(lambda, kappa_plus) - energy).abs());
    if res > tolerance * scale {
        // Bisection runs to the last representable midpoint, so this only
        // happens when the level set sits on the flat floor of V.
        return Err(Error::Solver("turning-point residual above tolerance"));
    }
    if !(kappa_minus < k0 && k0 < kappa_plus) {
        return Err(Error::NoOscillation { energy, minimum: spec.v0 });
    }
    Ok(TurningPair { kappa_minus, kappa_plus, energy, ratio: kappa_plus / kappa_minus })
}

/// `η_λ(r)`, the positive root of `K² − 2λK/(r+1) − 2 log r/(r²−1)`; equals `κ⁻`
/// for the energy whose amplitude ratio is `r`.
pub fn eta(lambda: f64, ratio: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_ratio(ratio)?;
    Ok(eta_unchecked(lambda, ratio))
}

pub(crate) fn eta_unchecked(lambda: f64, ratio: f64) -> f64 {
    let d = ratio - 1.0;
    // 2 log r / (r² − 1) = 2 · [log(1+d)/d] / (r + 1)
    let log_term = 2.0 * (ln_1p(d) / d) / (ratio + 1.0);
    let b = lambda / (ratio + 1.0);
    b + math::sqrt(b * b + log_term)
}

/// The polynomial `p_{λ,r}[K]` whose positive root is `η_λ(r)`.
pub fn eta_polynomial(lambda: f64, ratio: f64, k: f64) -> f64 {
    let d = ratio - 1.0;
    k * k - 2.0 * lambda / (ratio + 1.0) * k - 2.0 * (ln_1p(d) / d) / (ratio + 1.0)
}

/// Energy with amplitude ratio `r`: `V_λ(η_λ(r))`.
pub fn energy_of_ratio(lambda: f64, ratio: f64) -> Result<f64> {
    Ok(potential(lambda, eta(lambda, ratio)?))
}

/// Amplitude ratio `κ⁺/κ⁻` at energy `E`.
pub fn ratio_of_energy(spec: &PotentialSpec, energy: f64) -> Result<f64> {
    Ok(turning_points(spec, energy)?.ratio)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(lambda: f64) -> PotentialSpec {
        potential_min(lambda).unwrap()
    }

    #[test]
    fn value_examples() {
        assert_eq!(potential_value(&spec(0.0), 1.0).unwrap(), 0.5);
        assert_eq!(potential_value(&spec(1.0), 1.0).unwrap(), -0.5);
        let k = 1.0 + math::SQRT_2;
        // κ²/2 − 2κ − log κ at κ = 1 + √2
        let expected = (3.0 + 2.0 * math::SQRT_2) / 2.0 - 2.0 * k - math::ln(k);
        let v = potential_value(&spec(2.0), k).unwrap();
        assert!((v - expected).abs() < 1e-14);
        assert!((v + 2.795_587_149_392_638).abs() < 1e-12);
    }

    #[test]
    fn nonpositive_curvature_rejected() {
        assert!(matches!(potential_value(&spec(0.0), 0.0), Err(Error::Domain(_))));
        assert!(matches!(potential_value(&spec(0.0), -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn minimum_examples() {
        let s0 = spec(0.0);
        assert_eq!(s0.kappa0, 1.0);
        assert_eq!(s0.v0, 0.5);
        assert!((spec(2.0).kappa0 - (1.0 + math::SQRT_2)).abs() < 1e-15);
        assert!((spec(10.0).kappa0 - (5.0 + math::sqrt(26.0))).abs() < 1e-14);
        assert!((spec(10.0).kappa0 - 10.099_020).abs() < 1e-6);
        assert!(matches!(potential_min(-1.0), Err(Error::Domain(_))));
        assert!(potential_min(f64::NAN).is_err());
    }

    #[test]
    fn minimum_is_stationary() {
        for lambda in [0.0, 0.3, 2.0, 10.0, 100.0] {
            let s = spec(lambda);
            let derivative = s.kappa0 - lambda - 1.0 / s.kappa0;
            assert!(derivative.abs() < 1e-13 * s.kappa0);
        }
    }

    /// Independent oracle: plain bisection for V_0(κ) = E on (0, 1).
    fn oracle_left_root_lambda0(energy: f64) -> f64 {
        let (mut lo, mut hi) = (1e-300_f64, 1.0_f64);
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if 0.5 * mid * mid - libm::log(mid) > energy {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn turning_points_at_two_minus_log_two() {
        let e = 2.0 - math::ln(2.0);
        let pair = turning_points(&spec(0.0), e).unwrap();
        assert!((pair.kappa_plus - 2.0).abs() < 1e-14);
        let oracle = oracle_left_root_lambda0(e);
        assert!((pair.kappa_minus - oracle).abs() < 1e-14);
        assert!((pair.ratio - 2.0 / oracle).abs() < 1e-12);
        assert!((ratio_of_energy(&spec(0.0), e).unwrap() - 2.0 / oracle).abs() < 1e-12);
    }

    #[test]
    fn degenerate_level_rejected() {
        assert!(matches!(turning_points(&spec(0.0), 0.5), Err(Error::NoOscillation { .. })));
        assert!(matches!(turning_points(&spec(0.0), 0.1), Err(Error::NoOscillation { .. })));
    }

    #[test]
    fn turning_points_lambda_one() {
        let s = spec(1.0);
        let pair = turning_points(&s, s.v0 + 1.0).unwrap();
        assert!(pair.kappa_minus < s.kappa0 && s.kappa0 < pair.kappa_plus);
        let vm = potential(1.0, pair.kappa_minus);
        let vp = potential(1.0, pair.kappa_plus);
        assert!((vm - vp).abs() < 1e-12);
        assert!((vm - (s.v0 + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn eta_examples() {
        let near_one = eta(0.0, 1.0 + 1e-9).unwrap();
        assert!((near_one - 1.0).abs() < 1e-8);
        let e = core::f64::consts::E;
        let expected = math::sqrt(2.0 / (e * e - 1.0));
        assert!((eta(0.0, e).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.559_495_563_4).abs() < 1e-10);
        assert!(matches!(eta(0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(eta(0.0, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn eta_is_root_of_its_polynomial() {
        for lambda in [0.0, 0.5, 2.0, 10.0] {
            for r in [1.1, 2.0, 10.0, 100.0] {
                let k = eta(lambda, r).unwrap();
                assert!(eta_polynomial(lambda, r, k).abs() < 1e-12, "λ={lambda} r={r}");
            }
        }
    }

    #[test]
    fn eta_matches_turning_points() {
        for lambda in [0.0, 0.5, 2.0, 10.0] {
            for r in [1.5, 5.0, 50.0] {
                let e = energy_of_ratio(lambda, r).unwrap();
                let pair = turning_points(&spec(lambda), e).unwrap();
                let k = eta(lambda, r).unwrap();
                assert!((k - pair.kappa_minus).abs() < 1e-9 * k, "λ={lambda} r={r}");
                assert!((k * r - pair.kappa_plus).abs() < 1e-9 * k * r, "λ={lambda} r={r}");
            }
        }
    }

    #[test]
    fn ratio_energy_round_trip() {
        for lambda in [0.0, 1.0, 5.0] {
            for r in [1.5, 5.0, 50.0] {
                let e = energy_of_ratio(lambda, r).unwrap();
                let back = ratio_of_energy(&spec(lambda), e).unwrap();
                assert!((back - r).abs() < 1e-10 * r, "λ={lambda} r={r} back={back}");
            }
        }
    }

    #[test]
    fn energy_of_ratio_monotone() {
        let mut prev = f64::NEG_INFINITY;
        for k in 0..60 {
            let r = 1.0 + 0.05 * libm::exp(0.2 * k as f64);
            let e = energy_of_ratio(0.0, r).unwrap();
            assert!(e > prev);
            prev = e;
        }
    }

    #[test]
    fn ratio_of_energy_monotone_and_tends_to_one() {
        let s = spec(0.0);
        let r_near = ratio_of_energy(&s, s.v0 + 1e-10).unwrap();
        assert!(r_near > 1.0 && r_near < 1.0 + 1e-4);
        let mut prev = 1.0;
        for k in 1..40 {
            let r = ratio_of_energy(&s, s.v0 + 0.05 * k as f64 * k as f64).unwrap();
            assert!(r > prev);
            prev = r;
        }
    }

    #[test]
    fn eta_increasing_in_lambda() {
        for r in [1.1, 2.0, 10.0, 100.0] {
            let mut prev = 0.0;
            for lambda in [0.0, 0.5, 1.0, 2.0, 5.0, 10.0] {
                let k = eta(lambda, r).unwrap();
                assert!(k > prev);
                prev = k;
            }
        }
    }

    #[test]
    fn strict_convexity_by_finite_differences() {
        for lambda in [0.0, 1.0, 7.5] {
            for kappa in [0.05, 0.3, 1.0, 2.5, 12.0] {
                let h = 1e-4 * kappa;
                let fd = (potential(lambda, kappa + h) - 2.0 * potential(lambda, kappa)
                    + potential(lambda, kappa - h))
                    / (h * h);
                let exact = potential_second_derivative(kappa);
                assert!(exact > 1.0);
                assert!((fd - exact).abs() / exact < 1e-6, "λ={lambda} κ={kappa}: {fd} vs {exact}");
            }
        }
    }
}
