//! Curvature as a function of tangent angle: the initial value problem
//! `κ'' = 1/κ − κ + λ`, `κ(0) = κ⁻(E)`, `κ'(0) = 0`.

use alloc::vec::Vec;

use crate::math::{gcd, PI};
use crate::ode::{self, single_step, Control, DenseStep, IntegratorConfig};
use crate::potential::{self, potential_min, turning_points};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct ShootingConfig {
    pub integrator: IntegratorConfig,
    /// Minimum uniform output samples per half-period.
    pub samples_per_half_period: usize,
    /// Output samples per unit `κ⁻` of angle: near the curvature minimum,
    /// `1/κ` has a peak of width about `κ⁻` that the uniform grid must resolve.
    pub samples_per_min_curvature: f64,
    /// Upper bound on the adaptive samples per half-period.
    pub max_samples_per_half_period: usize,
    /// Bound on `max |½κ'² + V_λ(κ) − E| / (|E| + 1)` over the output grid.
    pub drift_tolerance: f64,
    /// Target accuracy of the event angle.
    pub event_tolerance: f64,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self {
            integrator: IntegratorConfig::default(),
            samples_per_half_period: 2048,
            samples_per_min_curvature: 64.0,
            max_samples_per_half_period: 1 << 17,
            drift_tolerance: 1e-9,
            event_tolerance: 1e-12,
        }
    }
}

/// A sampled solution of the curvature ODE on a uniform tangent-angle grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureProfile {
    pub lambda: f64,
    pub energy: f64,
    pub ratio: f64,
    pub theta_grid: Vec<f64>,
    pub kappa: Vec<f64>,
    pub kappa_prime: Vec<f64>,
    pub semi_period: f64,
}

fn rhs(lambda: f64) -> impl Fn(f64, &[f64; 2]) -> [f64; 2] {
    move |_t, y| [y[1], 1.0 / y[0] - y[0] + lambda]
}

fn first_integral(lambda: f64, kappa: f64, kappa_prime: f64) -> f64 {
    0.5 * kappa_prime * kappa_prime + potential::potential(lambda, kappa)
}

impl CurvatureProfile {
    /// The constant solution `κ ≡ κ_λ^0`. It has no intrinsic period; it is
    /// stored over `[0, 2π]` with `semi_period = π` and extends to any `(m, n)`.
    pub fn constant(lambda: f64, samples_per_half_period: usize) -> Result<Self> {
        let spec = potential_min(lambda)?;
        if samples_per_half_period == 0 {
            return Err(Error::Domain("need at least one sample per half-period"));
        }
        let count = 2 * samples_per_half_period + 1;
        let h = PI / samples_per_half_period as f64;
        Ok(Self {
            lambda,
            energy: spec.v0,
            ratio: 1.0,
            theta_grid: (0..count).map(|j| j as f64 * h).collect(),
            kappa: alloc::vec![spec.kappa0; count],
            kappa_prime: alloc::vec![0.0; count],
            semi_period: PI,
        })
    }

    pub fn is_constant(&self) -> bool {
        self.ratio == 1.0 && self.kappa_prime.iter().all(|&d| d == 0.0)
    }

    pub fn len(&self) -> usize {
        self.kappa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kappa.is_empty()
    }

    /// Angular extent covered by the grid.
    pub fn span(&self) -> f64 {
        self.theta_grid.last().copied().unwrap_or(0.0)
    }

    /// Uniform grid spacing.
    pub fn step(&self) -> f64 {
        self.span() / (self.len() - 1) as f64
    }

    pub fn max_energy_drift(&self) -> f64 {
        self.kappa
            .iter()
            .zip(&self.kappa_prime)
            .map(|(&k, &dk)| (first_integral(self.lambda, k, dk) - self.energy).abs())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from `κ(Θ + t) = κ(Θ − t)` over the first period.
    pub fn reflection_defect(&self) -> f64 {
        let s = self.samples_per_half_period();
        if s == 0 || self.len() < 2 * s + 1 {
            return 0.0;
        }
        (0..=s).map(|i| (self.kappa[s + i] - self.kappa[s - i]).abs()).fold(0.0, f64::max)
    }

    pub fn samples_per_half_period(&self) -> usize {
        let h = self.step();
        if !(h > 0.0) {
            return 0;
        }
        crate::math::round(self.semi_period / h) as usize
    }

    pub fn kappa_min(&self) -> f64 {
        self.kappa.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn kappa_max(&self) -> f64 {
        self.kappa.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Output of a plain trajectory integration from arbitrary initial data.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub theta_grid: Vec<f64>,
    pub kappa: Vec<f64>,
    pub kappa_prime: Vec<f64>,
}

fn guard_positive(step: &DenseStep<2>) -> Result<Control> {
    if !(step.y1[0] > 0.0) {
        return Err(Error::IntegrationBlowup { theta: step.t1(), kappa: step.y1[0] });
    }
    Ok(Control::Continue)
}

/// Integrates the curvature ODE from `(κ(0), κ'(0)) = initial` over `[0, span]`
/// and samples `intervals + 1` uniform points.
pub fn integrate_trajectory(
    lambda: f64,
    initial: [f64; 2],
    span: f64,
    intervals: usize,
    config: &IntegratorConfig,
) -> Result<Trajectory> {
    potential_min(lambda)?;
    if !(initial[0] > 0.0) {
        return Err(Error::Domain("initial curvature must be positive"));
    }
    if !(span > 0.0) || intervals == 0 {
        return Err(Error::Domain("span and sample count must be positive"));
    }
    let steps = ode::solve(rhs(lambda), 0.0, initial, span, config, guard_positive)?;
    let h = span / intervals as f64;
    let mut out = Trajectory {
        theta_grid: Vec::with_capacity(intervals + 1),
        kappa: Vec::with_capacity(intervals + 1),
        kappa_prime: Vec::with_capacity(intervals + 1),
    };
    for j in 0..=intervals {
        let t = if j == intervals { span } else { j as f64 * h };
        let y = if j == 0 { initial } else { ode::eval_steps(&steps, t) };
        out.theta_grid.push(t);
        out.kappa.push(y[0]);
        out.kappa_prime.push(y[1]);
    }
    Ok(out)
}

/// Locates the angle in `step` where `κ'` vanishes: bisection on the dense
/// output, then Newton polishing on exact single steps from the step start.
fn locate_maximum<F>(f: &F, step: &DenseStep<2>, tol: f64) -> f64
where
    F: Fn(f64, &[f64; 2]) -> [f64; 2],
{
    let (mut lo, mut hi) = (step.t0, step.t1());
    while hi - lo > 1e-3 * (step.h).max(tol) && hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if step.eval(mid)[1] > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut tau = 0.5 * (lo + hi);
    for _ in 0..8 {
        let y = single_step(f, step.t0, &step.y0, tau - step.t0);
        let slope = f(tau, &y)[1];
        if slope == 0.0 {
            break;
        }
        let delta = y[1] / slope;
        tau -= delta;
        if delta.abs() <= tol {
            break;
        }
    }
    tau
}

/// The configured minimum, raised to a power of two that puts about
/// `samples_per_min_curvature` points across an angle of `κ⁻`.
fn half_period_samples(config: &ShootingConfig, theta: f64, kappa_minus: f64) -> usize {
    let need = config.samples_per_min_curvature * theta / kappa_minus;
    let mut s = config.samples_per_half_period.max(1);
    while (s as f64) < need && s < config.max_samples_per_half_period {
        s *= 2;
    }
    s.max(config.samples_per_half_period)
}

/// Integrates `(IVP)` over one full period `[0, 2Θ]`, where `Θ` is the first
/// angle at which `κ'` changes sign from positive to negative.
pub fn integrate_ivp(lambda: f64, energy: f64, config: &ShootingConfig) -> Result<CurvatureProfile> {
    let spec = potential_min(lambda)?;
    if !(energy > spec.v0) {
        return Err(Error::NoOscillation { energy, minimum: spec.v0 });
    }
    if config.samples_per_half_period == 0 {
        return Err(Error::Domain("need at least one sample per half-period"));
    }
    let pair = turning_points(&spec, energy)?;
    let f = rhs(lambda);
    let mut semi: Option<f64> = None;
    // Θ < π for every λ ≥ 0, so a full period lies inside [0, 2π].
    let horizon = 2.0 * PI + 1.0;
    let steps = ode::solve(rhs(lambda), 0.0, [pair.kappa_minus, 0.0], horizon, &config.integrator, |step| {
        guard_positive(step)?;
        match semi {
            None => {
                if step.y0[1] > 0.0 && step.y1[1] <= 0.0 {
                    semi = Some(locate_maximum(&f, step, config.event_tolerance));
                }
                Ok(Control::Continue)
            }
            Some(theta) if step.t1() >= 2.0 * theta => Ok(Control::Stop),
            Some(_) => Ok(Control::Continue),
        }
    })?;
    let theta = semi.ok_or(Error::IntegratorFailure("no curvature maximum within one turn"))?;
    let end = 2.0 * theta;
    if steps.last().map_or(true, |s| s.t1() < end) {
        return Err(Error::IntegratorFailure("integration stopped before the period closed"));
    }
    let s = half_period_samples(config, theta, pair.kappa_minus);
    let count = 2 * s + 1;
    let h = theta / s as f64;
    let mut profile = CurvatureProfile {
        lambda,
        energy,
        ratio: pair.ratio,
        theta_grid: Vec::with_capacity(count),
        kappa: Vec::with_capacity(count),
        kappa_prime: Vec::with_capacity(count),
        semi_period: theta,
    };
    for j in 0..count {
        let t = if j == 2 * s { end } else { j as f64 * h };
        let y = if j == 0 { [pair.kappa_minus, 0.0] } else { ode::eval_steps(&steps, t) };
        profile.theta_grid.push(t);
        profile.kappa.push(y[0]);
        profile.kappa_prime.push(y[1]);
    }
    let drift = profile.max_energy_drift() / (energy.abs() + 1.0);
    if drift > config.drift_tolerance {
        return Err(Error::Certification {
            check: "energy drift",
            value: drift,
            tolerance: config.drift_tolerance,
        });
    }
    Ok(profile)
}

/// Default tolerance on `|Θ − mπ/n|` accepted by [`profile_extend`].
pub const CLOSURE_TOLERANCE: f64 = 1e-8;

/// Tiles a one-period profile with `Θ = mπ/n` over `[0, 2πm]` (`2n` half-periods).
pub fn profile_extend(profile: &CurvatureProfile, m: u32, n: u32) -> Result<CurvatureProfile> {
    profile_extend_with_tolerance(profile, m, n, CLOSURE_TOLERANCE)
}

pub fn profile_extend_with_tolerance(
    profile: &CurvatureProfile,
    m: u32,
    n: u32,
    tolerance: f64,
) -> Result<CurvatureProfile> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("m and n must be positive"));
    }
    if gcd(m as u64, n as u64) != 1 {
        return Err(Error::Domain("m and n must be coprime"));
    }
    let s = profile.samples_per_half_period();
    if s == 0 || profile.len() != 2 * s + 1 {
        return Err(Error::Domain("profile must cover exactly one period on a uniform grid"));
    }
    let target = m as f64 * PI / n as f64;
    if !profile.is_constant() {
        let defect = (profile.semi_period - target).abs();
        if defect > tolerance {
            return Err(Error::NotClosed { defect, tolerance });
        }
    }
    let period = 2 * s;
    let total = period * n as usize;
    let h = 2.0 * PI * m as f64 / total as f64;
    let mut out = CurvatureProfile {
        lambda: profile.lambda,
        energy: profile.energy,
        ratio: profile.ratio,
        theta_grid: Vec::with_capacity(total + 1),
        kappa: Vec::with_capacity(total + 1),
        kappa_prime: Vec::with_capacity(total + 1),
        semi_period: target,
    };
    for j in 0..=total {
        let src = if j == total { period } else { j % period };
        out.theta_grid.push(if j == total { 2.0 * PI * m as f64 } else { j as f64 * h });
        out.kappa.push(profile.kappa[src]);
        out.kappa_prime.push(profile.kappa_prime[src]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::period::theta_of_energy;

    fn cfg() -> ShootingConfig {
        ShootingConfig { samples_per_half_period: 256, samples_per_min_curvature: 0.0, ..ShootingConfig::default() }
    }

    #[test]
    fn rejects_minimum_energy() {
        assert!(matches!(integrate_ivp(0.0, 0.5, &cfg()), Err(Error::NoOscillation { .. })));
        assert!(integrate_ivp(-1.0, 1.0, &cfg()).is_err());
    }

    #[test]
    fn constant_solution_path() {
        for lambda in [0.0, 1.0, 7.5] {
            let k0 = potential::argmin(lambda);
            let tr = integrate_trajectory(lambda, [k0, 0.0], 20.0, 100, &IntegratorConfig::default()).unwrap();
            for (&k, &dk) in tr.kappa.iter().zip(&tr.kappa_prime) {
                assert!((k - k0).abs() < 1e-12 * k0);
                assert!(dk.abs() < 1e-12 * k0);
            }
        }
    }

    #[test]
    fn initial_condition_and_extremes() {
        let lambda = 1.0;
        let spec = potential_min(lambda).unwrap();
        let e = spec.v0 + 1.0;
        let p = integrate_ivp(lambda, e, &cfg()).unwrap();
        let pair = turning_points(&spec, e).unwrap();
        assert_eq!(p.kappa[0], pair.kappa_minus);
        assert_eq!(p.kappa_prime[0], 0.0);
        let s = p.samples_per_half_period();
        assert!(s >= 256 && s.is_power_of_two());
        assert_eq!(p.len(), 2 * s + 1);
        assert!((p.kappa[s] - pair.kappa_plus).abs() < 1e-8);
        assert!((p.kappa_max() - pair.kappa_plus).abs() < 1e-8);
        assert!((p.kappa_min() - pair.kappa_minus).abs() < 1e-8);
        assert!((p.kappa[2 * s] - pair.kappa_minus).abs() < 1e-8);
        assert!(p.reflection_defect() < 1e-8);
        assert!(p.max_energy_drift() < 1e-9 * (e.abs() + 1.0));
    }

    #[test]
    fn semi_period_matches_quadrature_at_reference_energy() {
        let e = 2.0 - core::f64::consts::LN_2;
        let p = integrate_ivp(0.0, e, &cfg()).unwrap();
        let q = theta_of_energy(0.0, e).unwrap();
        assert!((p.semi_period - q.theta).abs() < 1e-8, "{} vs {}", p.semi_period, q.theta);
    }

    #[test]
    fn extension_tiles_half_periods() {
        let c = CurvatureProfile::constant(0.5, 64).unwrap();
        let ext = profile_extend(&c, 1, 1).unwrap();
        assert!((ext.span() - 2.0 * PI).abs() < 1e-15);
        assert!(ext.kappa.iter().all(|&k| k == c.kappa[0]));

        let p = integrate_ivp(0.0, 1.5, &cfg()).unwrap();
        let err = profile_extend(&p, 2, 3).unwrap_err();
        assert!(matches!(err, Error::NotClosed { .. }));
        // Same profile, relaxed tolerance: structure of the tiling.
        let ext = profile_extend_with_tolerance(&p, 2, 3, 1.0).unwrap();
        assert!((ext.span() - 4.0 * PI).abs() < 1e-14);
        assert_eq!(ext.len(), 6 * 256 + 1);
        let mut arcs = 0;
        let mut rising = None;
        for w in ext.kappa.windows(2) {
            let up = w[1] > w[0];
            if rising != Some(up) {
                arcs += 1;
                rising = Some(up);
            }
        }
        assert_eq!(arcs, 6);
        assert!(ext.max_energy_drift() <= p.max_energy_drift());
    }

    #[test]
    fn extension_rejects_bad_indices() {
        let c = CurvatureProfile::constant(0.0, 8).unwrap();
        assert!(profile_extend(&c, 2, 4).is_err());
        assert!(profile_extend(&c, 0, 1).is_err());
    }
}
