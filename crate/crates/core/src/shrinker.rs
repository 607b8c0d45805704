//! Closed λ-curves, the length fixed point and certified shrinkers.
//!
//! For coprime `m/n ∈ (1/2, 1)` and a candidate length `L`, the closed λ-curve
//! with `λ = 2πm/L` and semi-period `mπ/n` has length `len_q(L)`. A shrinker is
//! a fixed point `len_q(L*) = L*`; there the curve has average curvature
//! `2πm/L* = λ*` and encloses zero signed area.

use alloc::vec::Vec;

use crate::geometry::{self, reconstruct, soliton_fit, PlanarCurve, TypologyReport, Vec2};
use crate::math::{self, gcd, FRAC_1_SQRT_2, PI, TAU};
use crate::period::{omega_plus, theta_of_ratio_with};
use crate::potential::energy_of_ratio;
use crate::quadrature::QuadratureConfig;
use crate::roots::{bisect, brent, Stopping};
use crate::shooting::{integrate_ivp, profile_extend_with_tolerance, ShootingConfig};
use crate::{Error, Result};

/// The eight rotation ratios of the reference gallery.
pub const GALLERY: [(u32, u32); 8] = [(3, 5), (2, 3), (5, 7), (11, 15), (3, 4), (4, 5), (5, 6), (13, 15)];

/// Checks `m, n > 0`, `gcd(m, n) = 1` and `1/2 < m/n < 1`.
pub fn validate_pair(m: u32, n: u32) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("m and n must be positive"));
    }
    if gcd(m as u64, n as u64) != 1 {
        return Err(Error::Domain("m and n must be coprime"));
    }
    if 2 * m as u64 <= n as u64 || m >= n {
        return Err(Error::Domain("m/n must lie strictly between 1/2 and 1"));
    }
    Ok(())
}

/// `λ_q`: zero for `q < √2/2`, otherwise `(2q² − 1)/(q√(1 − q²))`.
pub fn lambda_threshold(q: f64) -> Result<f64> {
    if !(q > 0.5 && q < 1.0) {
        return Err(Error::Domain("q must lie strictly between 1/2 and 1"));
    }
    if q <= FRAC_1_SQRT_2 {
        return Ok(0.0);
    }
    Ok((2.0 * q * q - 1.0) / (q * math::sqrt(1.0 - q * q)))
}

/// `L_q = 2πm/λ_q`: infinite for `m/n < √2/2`, else `2πm²√(n² − m²)/(2m² − n²)`.
pub fn length_threshold(m: u32, n: u32) -> Result<f64> {
    validate_pair(m, n)?;
    let (m, n) = (m as f64, n as f64);
    let excess = 2.0 * m * m - n * n;
    if excess < 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(TAU * m * m * math::sqrt(n * n - m * m) / excess)
}

/// `ψ(t) = √(1 − t/T*)`.
pub fn shrinkage_schedule(t_star: f64, t: f64) -> Result<f64> {
    if !(t_star > 0.0) {
        return Err(Error::Domain("T* must be positive"));
    }
    if !(t >= 0.0 && t < t_star) {
        return Err(Error::Domain("t must lie in [0, T*)"));
    }
    Ok(math::sqrt(1.0 - t / t_star))
}

#[derive(Debug, Clone, Copy)]
pub struct ShrinkerConfig {
    /// Target `|Θ − qπ|` of the closing-energy solve.
    pub closing_tolerance: f64,
    pub quadrature: QuadratureConfig,
    pub shooting: ShootingConfig,
    /// Relative bracket width of the fixed-point bisection.
    pub fixed_point_tolerance: f64,
    /// Accepted `|Θ_shooting − mπ/n|` when tiling a profile.
    pub profile_closure_tolerance: f64,
    pub certification: CertificationTolerances,
}

impl Default for ShrinkerConfig {
    fn default() -> Self {
        Self {
            closing_tolerance: 1e-10,
            quadrature: QuadratureConfig { abs_tol: 1e-13, rel_tol: 1e-13, max_intervals: 2000 },
            shooting: ShootingConfig::default(),
            fixed_point_tolerance: 1e-8,
            profile_closure_tolerance: 1e-8,
            certification: CertificationTolerances::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificationTolerances {
    /// `|area| / len²`.
    pub area: f64,
    /// Soliton residual over the curvature range.
    pub soliton: f64,
    /// `|2πm/len − λ*| / λ*`.
    pub kappa_bar: f64,
    /// Closure defect over the diameter.
    pub closure: f64,
    /// `|len − L*| / L*`.
    pub length: f64,
}

impl Default for CertificationTolerances {
    fn default() -> Self {
        Self { area: 1e-6, soliton: 1e-5, kappa_bar: 1e-6, closure: 1e-6, length: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosingEnergy {
    pub lambda: f64,
    pub q: f64,
    pub energy: f64,
    pub ratio: f64,
    pub theta: f64,
    /// Sign changes of `Θ − qπ` seen beyond the first one while bracketing.
    pub extra_sign_changes: usize,
}

/// Smallest and largest `r − 1` probed by the bracket search.
const RATIO_OFFSET_MIN: f64 = 1e-6;
const RATIO_OFFSET_MAX: f64 = 1e15;

/// Solves `Θ_λ(E) = qπ` by a bracketed search in the amplitude ratio.
pub fn closing_energy(lambda: f64, q: f64) -> Result<ClosingEnergy> {
    closing_energy_with(lambda, q, &ShrinkerConfig::default())
}

pub fn closing_energy_with(lambda: f64, q: f64, config: &ShrinkerConfig) -> Result<ClosingEnergy> {
    let omega = omega_plus(lambda)?;
    if !(q > 0.5) || !(q < 1.0) {
        return Err(Error::Domain("q must lie strictly between 1/2 and 1"));
    }
    if q >= omega {
        return Err(Error::Threshold { q, omega_plus: omega });
    }
    let target = q * PI;
    let f = |r: f64| -> Result<f64> { Ok(theta_of_ratio_with(lambda, r, &config.quadrature)?.theta - target) };

    // Θ − qπ starts at π(ω⁺ − q) > 0 near r = 1 and tends to π(1/2 − q) < 0.
    let mut offset = 1e-3;
    let mut f_hi = f(1.0 + offset)?;
    while f_hi <= 0.0 {
        offset *= 0.5;
        if offset < RATIO_OFFSET_MIN {
            return Err(Error::Solver("closing energy lies inside the small-oscillation crossover"));
        }
        f_hi = f(1.0 + offset)?;
    }
    let mut samples: Vec<f64> = alloc::vec![f_hi];
    let mut lo = offset;
    loop {
        let next = 2.0 * lo;
        if next > RATIO_OFFSET_MAX {
            return Err(Error::Solver("closing-energy bracket not found"));
        }
        let value = f(1.0 + next)?;
        samples.push(value);
        if value < 0.0 {
            break;
        }
        lo = next;
    }
    let hi = 2.0 * lo;
    // Keep probing a few doublings past the bracket for additional roots.
    let mut probe = hi;
    for _ in 0..4 {
        probe *= 2.0;
        if probe > RATIO_OFFSET_MAX {
            break;
        }
        samples.push(f(1.0 + probe)?);
    }
    let changes = samples.windows(2).filter(|w| (w[0] > 0.0) != (w[1] > 0.0)).count();

    let stop = Stopping { x_tol: 0.0, f_tol: 0.1 * config.closing_tolerance, max_iter: 200 };
    let ratio = brent(f, 1.0 + lo, 1.0 + hi, stop)?;
    let sample = theta_of_ratio_with(lambda, ratio, &config.quadrature)?;
    let defect = (sample.theta - target).abs();
    if defect > config.closing_tolerance {
        return Err(Error::Certification {
            check: "closing energy",
            value: defect,
            tolerance: config.closing_tolerance,
        });
    }
    Ok(ClosingEnergy {
        lambda,
        q,
        energy: energy_of_ratio(lambda, ratio)?,
        ratio,
        theta: sample.theta,
        extra_sign_changes: changes.saturating_sub(1),
    })
}

/// A closed λ-curve with rotation ratio `m/n`, translated so that the soliton
/// center sits at the origin.
#[derive(Debug, Clone)]
pub struct ClosedLambdaCurve {
    pub closing: ClosingEnergy,
    pub curve: PlanarCurve,
    /// Semi-period found by event detection on the ODE.
    pub shooting_semi_period: f64,
}

pub fn closed_lambda_curve(lambda: f64, m: u32, n: u32, config: &ShrinkerConfig) -> Result<ClosedLambdaCurve> {
    validate_pair(m, n)?;
    let q = m as f64 / n as f64;
    let closing = closing_energy_with(lambda, q, config)?;
    let profile = integrate_ivp(lambda, closing.energy, &config.shooting)?;
    let extended = profile_extend_with_tolerance(&profile, m, n, config.profile_closure_tolerance)?;
    let raw = reconstruct(&extended, Vec2::ZERO)?;
    let (center, _) = soliton_fit(&raw, lambda);
    Ok(ClosedLambdaCurve { closing, curve: raw.translated(-center), shooting_semi_period: profile.semi_period })
}

/// `len_q(L)`: length of the closed λ-curve with `λ = 2πm/L`, `Θ = mπ/n`.
pub fn len_q(length: f64, m: u32, n: u32) -> Result<f64> {
    len_q_with(length, m, n, &ShrinkerConfig::default())
}

pub fn len_q_with(length: f64, m: u32, n: u32, config: &ShrinkerConfig) -> Result<f64> {
    validate_pair(m, n)?;
    let l_q = length_threshold(m, n)?;
    if !(length > 0.0 && length < l_q) {
        return Err(Error::Domain("L must lie in (0, L_q)"));
    }
    let lambda = TAU * m as f64 / length;
    Ok(geometry::length(&closed_lambda_curve(lambda, m, n, config)?.curve))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    /// `|signed area| / len²`.
    pub area_residual: f64,
    /// `max |κ − σ − λ*|` over `κ_max − κ_min`.
    pub soliton_residual: f64,
    /// `|2πm/len − λ*| / λ*`.
    pub kappa_bar_mismatch: f64,
    /// Closure defect over the diameter.
    pub closure_defect: f64,
    /// `|len − L*| / L*`.
    pub length_mismatch: f64,
    /// `|Θ_shooting − mπ/n|`.
    pub semi_period_mismatch: f64,
    pub extra_sign_changes: usize,
}

#[derive(Debug, Clone)]
pub struct ShrinkerSolution {
    pub m: u32,
    pub n: u32,
    pub q: f64,
    pub lambda_star: f64,
    pub energy_star: f64,
    pub ratio_star: f64,
    pub l_star: f64,
    pub curve: PlanarCurve,
    pub diagnostics: Diagnostics,
    pub typology: TypologyReport,
}

impl ShrinkerSolution {
    pub fn length(&self) -> f64 {
        geometry::length(&self.curve)
    }

    /// Extinction time of the self-similar evolution `x(t) = ψ(t)·x(0)`.
    /// The normalization `κ = ⟨x, ν⟩ + λ` gives `ψ(t)² = 1 − 2t`, so `T* = 1/2`.
    pub fn extinction_time(&self) -> f64 {
        0.5
    }
}

fn certify(value: f64, tolerance: f64, check: &'static str) -> Result<()> {
    if value < tolerance {
        Ok(())
    } else {
        Err(Error::Certification { check, value, tolerance })
    }
}

/// Finds the unique fixed point of `len_q` and certifies the resulting curve.
pub fn find_shrinker(m: u32, n: u32) -> Result<ShrinkerSolution> {
    find_shrinker_with(m, n, &ShrinkerConfig::default())
}

/// Bracket for the fixed point of `len_q`: `g(L) = len_q(L) − L` is strictly
/// decreasing, positive near `0` and negative near `L_q` (or for large `L`).
pub fn fixed_point_bracket(m: u32, n: u32, config: &ShrinkerConfig) -> Result<(f64, f64)> {
    let l_q = length_threshold(m, n)?;
    let g = |l: f64| -> Result<f64> { Ok(len_q_with(l, m, n, config)? - l) };
    let start = if l_q.is_finite() { 0.5 * l_q } else { TAU * m as f64 };
    let g_start = g(start)?;
    if g_start > 0.0 {
        let lo = start;
        let mut k = 2;
        loop {
            let candidate = if l_q.is_finite() { l_q * (1.0 - math::powf(2.0, -(k as f64))) } else { start * math::powf(2.0, (k - 1) as f64) };
            if g(candidate)? < 0.0 {
                let prev = if k == 2 {
                    lo
                } else if l_q.is_finite() {
                    l_q * (1.0 - math::powf(2.0, -((k - 1) as f64)))
                } else {
                    start * math::powf(2.0, (k - 2) as f64)
                };
                return Ok((prev.max(lo), candidate));
            }
            k += 1;
            if k > 60 {
                return Err(Error::Solver("no upper bracket for the length fixed point"));
            }
        }
    } else {
        let mut hi = start;
        let mut lo = 0.5 * start;
        for _ in 0..60 {
            if g(lo)? > 0.0 {
                return Ok((lo, hi));
            }
            hi = lo;
            lo *= 0.5;
        }
        Err(Error::Solver("no lower bracket for the length fixed point"))
    }
}

pub fn find_shrinker_with(m: u32, n: u32, config: &ShrinkerConfig) -> Result<ShrinkerSolution> {
    validate_pair(m, n)?;
    let (lo, hi) = fixed_point_bracket(m, n, config)?;
    let g = |l: f64| -> Result<f64> { Ok(len_q_with(l, m, n, config)? - l) };
    let stop = Stopping { x_tol: config.fixed_point_tolerance * lo, f_tol: 0.0, max_iter: 200 };
    let l_star = bisect(g, lo, hi, stop)?;
    let lambda_star = TAU * m as f64 / l_star;
    let closed = closed_lambda_curve(lambda_star, m, n, config)?;
    let curve = closed.curve;

    let len = geometry::length(&curve);
    let area = geometry::signed_area_with_tolerance(&curve, config.certification.closure)?;
    let (_, soliton) = soliton_fit(&curve, lambda_star);
    let kappa_range = curve.kappa_max() - curve.kappa_min();
    let diagnostics = Diagnostics {
        area_residual: area.abs() / (len * len),
        soliton_residual: soliton / kappa_range,
        kappa_bar_mismatch: (TAU * m as f64 / len - lambda_star).abs() / lambda_star,
        closure_defect: curve.closure_defect / curve.diameter(),
        length_mismatch: (len - l_star).abs() / l_star,
        semi_period_mismatch: (closed.shooting_semi_period - m as f64 * PI / n as f64).abs(),
        extra_sign_changes: closed.closing.extra_sign_changes,
    };
    let typology = geometry::verify_typology(&curve);
    let tol = &config.certification;
    certify(diagnostics.area_residual, tol.area, "zero area")?;
    certify(diagnostics.soliton_residual, tol.soliton, "soliton residual")?;
    certify(diagnostics.kappa_bar_mismatch, tol.kappa_bar, "average curvature")?;
    certify(diagnostics.closure_defect, tol.closure, "closure")?;
    certify(diagnostics.length_mismatch, tol.length, "fixed-point length")?;
    if !typology.all_pass(m, n) {
        return Err(Error::Certification { check: "shrinker typology", value: 1.0, tolerance: 0.0 });
    }
    if lambda_star <= lambda_threshold(m as f64 / n as f64)? {
        return Err(Error::Certification { check: "lambda above threshold", value: lambda_star, tolerance: 0.0 });
    }
    Ok(ShrinkerSolution {
        m,
        n,
        q: m as f64 / n as f64,
        lambda_star,
        energy_star: closed.closing.energy,
        ratio_star: closed.closing.ratio,
        l_star,
        curve,
        diagnostics,
        typology,
    })
}

/// Amplitude ratio at the short-length end of the fixed-point scan. Shorter
/// lengths mean larger λ and closing ratios whose curvature minimum `κ⁻` falls
/// below what the uniform output grid resolves.
pub const SCAN_RATIO_CAP: f64 = 1e3;

/// Largest λ whose closing ratio for `q` stays at or below `ratio_cap`.
pub fn lambda_at_ratio(q: f64, ratio_cap: f64, config: &ShrinkerConfig) -> Result<f64> {
    let floor = lambda_threshold(q)?;
    let excess = |lambda: f64| -> Result<f64> {
        match closing_energy_with(lambda, q, config) {
            Ok(c) => Ok(c.ratio - ratio_cap),
            Err(Error::Solver(_)) => Ok(f64::INFINITY),
            Err(e) => Err(e),
        }
    };
    let mut lo = floor;
    let mut hi = floor + 0.25;
    while excess(hi)? <= 0.0 {
        lo = hi;
        hi = floor + 2.0 * (hi - floor);
        if hi > 1e6 {
            return Err(Error::Solver("closing ratio stays below the cap"));
        }
    }
    let stop = Stopping { x_tol: 1e-9 * hi, f_tol: 0.0, max_iter: 200 };
    // At λ_q itself the closing ratio is 1, below any cap above 1.
    let lo = if lo == floor { floor + 1e-9 * (1.0 + floor) } else { lo };
    bisect(excess, lo, hi, stop)
}

/// Log-spaced candidate lengths for the fixed-point scan. The long end is
/// `(1 − 10⁻⁴)·L_q`, or `100·2πm` when `L_q = ∞`; the short end is the length
/// whose closing ratio equals [`SCAN_RATIO_CAP`].
pub fn fixed_point_scan_grid(m: u32, n: u32, count: usize) -> Result<Vec<f64>> {
    fixed_point_scan_grid_with(m, n, count, &ShrinkerConfig::default())
}

pub fn fixed_point_scan_grid_with(m: u32, n: u32, count: usize, config: &ShrinkerConfig) -> Result<Vec<f64>> {
    let l_q = length_threshold(m, n)?;
    if count < 2 {
        return Err(Error::Domain("scan needs at least two points"));
    }
    let two_pi_m = TAU * m as f64;
    let b = if l_q.is_finite() { (1.0 - 1e-4) * l_q } else { 100.0 * two_pi_m };
    let a = two_pi_m / lambda_at_ratio(m as f64 / n as f64, SCAN_RATIO_CAP, config)?;
    if !(a < b) {
        return Err(Error::Solver("empty fixed-point scan range"));
    }
    let (la, lb) = (math::ln(a), math::ln(b));
    Ok((0..count)
        .map(|k| if k + 1 == count { b } else { math::exp(la + (lb - la) * k as f64 / (count - 1) as f64) })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointRow {
    pub length: f64,
    pub len_q: f64,
    pub g: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointScan {
    pub m: u32,
    pub n: u32,
    pub rows: Vec<FixedPointRow>,
}

impl FixedPointScan {
    pub fn sign_changes(&self) -> usize {
        self.rows.windows(2).filter(|w| (w[0].g > 0.0) != (w[1].g > 0.0)).count()
    }

    /// Whether every finite difference of `len_q` along the grid is negative.
    pub fn len_q_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].len_q < w[0].len_q)
    }
}

pub fn scan_fixed_point(m: u32, n: u32, count: usize) -> Result<FixedPointScan> {
    scan_fixed_point_with(m, n, count, &ShrinkerConfig::default())
}

pub fn scan_fixed_point_with(m: u32, n: u32, count: usize, config: &ShrinkerConfig) -> Result<FixedPointScan> {
    let grid = fixed_point_scan_grid_with(m, n, count, config)?;
    let mut rows = Vec::with_capacity(count);
    for l in grid {
        let value = len_q_with(l, m, n, config)?;
        rows.push(FixedPointRow { length: l, len_q: value, g: value - l });
    }
    Ok(FixedPointScan { m, n, rows })
}
