//! The energy/semi-period map `Θ_λ`.
//!
//! `Θ_λ(E) = ∫_{κ⁻}^{κ⁺} dκ / √(2(E − V_λ(κ)))` has inverse square-root
//! singularities at both turning points. Writing
//! `E − V_λ(κ) = (κ − κ⁻)(κ⁺ − κ) · G(κ)` with
//! `G(κ) = 1/2 + (−log)[κ⁻, κ, κ⁺]` (a second divided difference, positive and
//! bounded) and substituting `κ = κ⁻ + (κ⁺ − κ⁻) sin² u` turns the integral into
//! `∫_0^{π/2} √(2 / G) du`, a smooth integrand for Gauss–Kronrod.
//!
//! The amplitude-ratio form uses `y = κ/κ⁻ ∈ [1, r]` and the same substitution,
//! giving `∫_0^{π/2} 2 / √(1 + 2(−log)[1, y, r]/η²) du`.

use alloc::vec::Vec;

use crate::math::{self, neg_log_second_difference, FRAC_PI_2, PI};
use crate::potential::{self, potential_min, turning_points};
use crate::quadrature::{integrate, QuadratureConfig};
use crate::{Error, Result};

/// Energies closer than this to `V_λ^0` use the small-oscillation limit.
pub const SMALL_OSCILLATION_ENERGY: f64 = 1e-8;
/// Ratios with `r − 1` below this use the small-oscillation limit.
pub const SMALL_OSCILLATION_RATIO: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodSample {
    pub lambda: f64,
    pub energy: f64,
    pub ratio: f64,
    /// Semi-period in radians.
    pub theta: f64,
    pub quadrature_error_estimate: f64,
}

impl PeriodSample {
    pub fn theta_over_pi(&self) -> f64 {
        self.theta / PI
    }
}

/// Small-oscillation limit `lim_{E ↘ V⁰} Θ_λ(E)/π = (√2/2)·√(λ/√(λ²+4) + 1)`.
pub fn omega_plus(lambda: f64) -> Result<f64> {
    if !(lambda >= 0.0) {
        return Err(Error::Domain("lambda must be nonnegative"));
    }
    if lambda.is_infinite() {
        return Ok(1.0);
    }
    Ok(math::FRAC_1_SQRT_2 * math::sqrt(lambda / math::sqrt(lambda * lambda + 4.0) + 1.0))
}

pub fn theta_of_energy(lambda: f64, energy: f64) -> Result<PeriodSample> {
    theta_of_energy_with(lambda, energy, &QuadratureConfig::default())
}

pub fn theta_of_energy_with(lambda: f64, energy: f64, quad: &QuadratureConfig) -> Result<PeriodSample> {
    let spec = potential_min(lambda)?;
    if !(energy > spec.v0) {
        return Err(Error::NoOscillation { energy, minimum: spec.v0 });
    }
    let excess = energy - spec.v0;
    if excess < SMALL_OSCILLATION_ENERGY {
        let ratio = turning_points(&spec, energy).map(|p| p.ratio).unwrap_or(1.0);
        return Ok(PeriodSample {
            lambda,
            energy,
            ratio,
            theta: PI * omega_plus(lambda)?,
            quadrature_error_estimate: excess,
        });
    }
    let pair = turning_points(&spec, energy)?;
    let (lo, hi) = (pair.kappa_minus, pair.kappa_plus);
    let width = hi - lo;
    let integrand = |u: f64| {
        let s = math::sin(u);
        let kappa = lo + width * s * s;
        let g = 0.5 + neg_log_second_difference(lo, kappa, hi);
        math::sqrt(2.0 / g)
    };
    let q = integrate(integrand, 0.0, FRAC_PI_2, quad)?;
    Ok(PeriodSample {
        lambda,
        energy,
        ratio: pair.ratio,
        theta: q.value,
        quadrature_error_estimate: q.error,
    })
}

pub fn theta_of_ratio(lambda: f64, ratio: f64) -> Result<PeriodSample> {
    theta_of_ratio_with(lambda, ratio, &QuadratureConfig::default())
}

pub fn theta_of_ratio_with(lambda: f64, ratio: f64, quad: &QuadratureConfig) -> Result<PeriodSample> {
    let eta = potential::eta(lambda, ratio)?;
    let energy = potential::potential(lambda, eta);
    if ratio - 1.0 < SMALL_OSCILLATION_RATIO {
        let v0 = potential_min(lambda)?.v0;
        return Ok(PeriodSample {
            lambda,
            energy,
            ratio,
            theta: PI * omega_plus(lambda)?,
            quadrature_error_estimate: (energy - v0).abs(),
        });
    }
    let inv_eta2 = 2.0 / (eta * eta);
    let width = ratio - 1.0;
    let integrand = |u: f64| {
        let s = math::sin(u);
        let y = 1.0 + width * s * s;
        2.0 / math::sqrt(1.0 + inv_eta2 * neg_log_second_difference(1.0, y, ratio))
    };
    let q = integrate(integrand, 0.0, FRAC_PI_2, quad)?;
    Ok(PeriodSample { lambda, energy, ratio, theta: q.value, quadrature_error_estimate: q.error })
}

/// The bracketed integrand of the amplitude-ratio form,
/// `1 − y² + 2λ(y−1)/η + 2 log y/η²`, evaluated directly.
pub fn ratio_form_radicand(lambda: f64, ratio: f64, y: f64) -> Result<f64> {
    let eta = potential::eta(lambda, ratio)?;
    Ok(1.0 - y * y + 2.0 * lambda * (y - 1.0) / eta + 2.0 * math::ln(y) / (eta * eta))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub sample: PeriodSample,
    /// Sign of `Θ(r_k) − Θ(r_{k−1})`; `None` on the first row.
    pub delta_sign: Option<i8>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityScan {
    pub lambda: f64,
    pub rows: Vec<ScanRow>,
    /// Row indices where `Θ` failed to decrease.
    pub violations: Vec<usize>,
}

impl MonotonicityScan {
    pub fn is_decreasing(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates `Θ_λ` on a strictly increasing grid of ratios and reports where the
/// finite differences fail to be negative. Evidence only; nothing is asserted.
pub fn scan_monotonicity(lambda: f64, grid: &[f64]) -> Result<MonotonicityScan> {
    scan_monotonicity_with(lambda, grid, &QuadratureConfig::default())
}

pub fn scan_monotonicity_with(
    lambda: f64,
    grid: &[f64],
    quad: &QuadratureConfig,
) -> Result<MonotonicityScan> {
    if grid.is_empty() {
        return Err(Error::Domain("scan grid is empty"));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) || !(grid[0] > 1.0) {
        return Err(Error::Domain("scan grid must be strictly increasing and above 1"));
    }
    let mut rows: Vec<ScanRow> = Vec::with_capacity(grid.len());
    let mut violations = Vec::new();
    for (k, &r) in grid.iter().enumerate() {
        let sample = theta_of_ratio_with(lambda, r, quad)?;
        let delta_sign = rows.last().map(|prev| {
            let d = sample.theta - prev.sample.theta;
            if d < 0.0 {
                -1
            } else if d > 0.0 {
                1
            } else {
                0
            }
        });
        if matches!(delta_sign, Some(s) if s >= 0) {
            violations.push(k);
        }
        rows.push(ScanRow { sample, delta_sign });
    }
    Ok(MonotonicityScan { lambda, rows, violations })
}

/// `count` ratios log-spaced over `[r_min, r_max]`, endpoints included.
pub fn log_grid(r_min: f64, r_max: f64, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::Domain("grid count must be positive"));
    }
    if !(r_min > 1.0 && r_max > r_min) && !(count == 1 && r_min > 1.0) {
        return Err(Error::Domain("grid needs 1 < r_min < r_max"));
    }
    if count == 1 {
        return Ok(alloc::vec![r_min]);
    }
    let (a, b) = (math::ln(r_min), math::ln(r_max));
    Ok((0..count)
        .map(|k| {
            if k + 1 == count {
                r_max
            } else {
                math::exp(a + (b - a) * k as f64 / (count - 1) as f64)
            }
        })
        .collect())
}
