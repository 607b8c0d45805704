//! Locally convex curves in tangential polar coordinates.
//!
//! Orientation convention: curves run counterclockwise with `κ > 0`, the
//! tangent at angle `θ` is `t = (cos θ, sin θ)` and the inward normal is
//! `n = (−sin θ, cos θ)`, the tangent rotated by `+π/2`. The support function
//! is measured along the outward normal `ν = −n`, `σ = ⟨x, ν⟩`, so that a
//! circle of radius `ρ` about the origin has `σ ≡ ρ`, `σ'' + σ = 1/κ`, λ-curves
//! satisfy `κ = σ + λ`, and a positively oriented circle has positive area.

use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::math::{self, gcd, PI, TAU};
use crate::shooting::CurvatureProfile;
use crate::{Error, Result};

/// Closure tolerance relative to the curve diameter.
pub const CLOSURE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = math::sin_cos(theta);
        Self { x: c, y: s }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        math::hypot(self.x, self.y)
    }

    /// Rotation by `+π/2`.
    pub fn perp(self) -> Self {
        Self { x: -self.y, y: self.x }
    }

    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = math::sin_cos(angle);
        Self { x: c * self.x - s * self.y, y: s * self.x + c * self.y }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl SubAssign for Vec2 {
    fn sub_assign(&mut self, o: Vec2) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Largest pairwise distance of a point set.
///
/// Computed as the maximal width over projection directions: a coarse sweep
/// followed by golden-section refinement around the best direction.
pub fn point_set_diameter(points: &[Vec2]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let width = |phi: f64| {
        let u = Vec2::from_angle(phi);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            let s = p.dot(u);
            lo = lo.min(s);
            hi = hi.max(s);
        }
        hi - lo
    };
    let sweep = 256;
    let dphi = PI / sweep as f64;
    let (mut best_phi, mut best) = (0.0, f64::NEG_INFINITY);
    for k in 0..sweep {
        let phi = k as f64 * dphi;
        let w = width(phi);
        if w > best {
            best = w;
            best_phi = phi;
        }
    }
    let (mut a, mut b) = (best_phi - dphi, best_phi + dphi);
    let g = 0.5 * (math::sqrt(5.0) - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (width(c), width(d));
    for _ in 0..60 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = width(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = width(d);
        }
    }
    best.max(fc).max(fd)
}

/// A locally convex curve sampled on a uniform tangent-angle grid over
/// `[0, 2πm]`. The last sample repeats the first angle modulo `2π`, so a
/// closed curve has `N + 1` samples for `N` distinct vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarCurve {
    pub theta_grid: Vec<f64>,
    pub points: Vec<Vec2>,
    pub tangents: Vec<Vec2>,
    /// Inward unit normals (tangent rotated by `+π/2`).
    pub normals: Vec<Vec2>,
    pub kappa: Vec<f64>,
    pub m: u32,
    pub n: u32,
    pub closure_defect: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupportProfile {
    pub theta_grid: Vec<f64>,
    pub sigma: Vec<f64>,
}

impl SupportProfile {
    /// Largest `|σ'' + σ − 1/κ|` with `σ''` from periodic central second differences.
    pub fn relation_defect(&self, kappa: &[f64]) -> f64 {
        let n = self.sigma.len() - 1;
        if n < 3 || kappa.len() != self.sigma.len() {
            return f64::INFINITY;
        }
        let h = (self.theta_grid[n] - self.theta_grid[0]) / n as f64;
        (0..n)
            .map(|i| {
                let prev = self.sigma[(i + n - 1) % n];
                let next = self.sigma[(i + 1) % n];
                let d2 = (prev - 2.0 * self.sigma[i] + next) / (h * h);
                (d2 + self.sigma[i] - 1.0 / kappa[i]).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Cumulative integral of uniformly sampled `f` with a fourth-order rule:
/// `(−f₋₁ + 13f₀ + 13f₁ − f₂)·h/24` inside, one-sided cubic rules at the ends.
fn cumulative_fourth_order(values: &[Vec2], h: f64, base: Vec2) -> Vec<Vec2> {
    let len = values.len();
    let mut out = Vec::with_capacity(len);
    out.push(base);
    if len < 4 {
        let mut acc = base;
        for w in values.windows(2) {
            acc += (w[0] + w[1]) * (0.5 * h);
            out.push(acc);
        }
        return out;
    }
    let mut acc = base;
    let c = h / 24.0;
    for i in 0..len - 1 {
        let seg = if i == 0 {
            values[0] * 9.0 + values[1] * 19.0 - values[2] * 5.0 + values[3]
        } else if i == len - 2 {
            values[len - 4] - values[len - 3] * 5.0 + values[len - 2] * 19.0 + values[len - 1] * 9.0
        } else {
            (values[i] + values[i + 1]) * 13.0 - values[i - 1] - values[i + 2]
        };
        acc += seg * c;
        out.push(acc);
    }
    out
}

/// Rebuilds `x(θ) = x₀ + ∫₀^θ t(φ)/κ(φ) dφ` from curvature samples on a uniform grid.
pub fn reconstruct_samples(
    theta_grid: &[f64],
    kappa: &[f64],
    m: u32,
    n: u32,
    base_point: Vec2,
) -> Result<PlanarCurve> {
    if theta_grid.len() != kappa.len() || theta_grid.len() < 2 {
        return Err(Error::Domain("grid and curvature samples must match and hold two or more points"));
    }
    if m == 0 || n == 0 {
        return Err(Error::Domain("m and n must be positive"));
    }
    if kappa.iter().any(|&k| !(k > 0.0) || !k.is_finite()) {
        return Err(Error::Domain("curvature must be positive"));
    }
    let count = theta_grid.len();
    let h = (theta_grid[count - 1] - theta_grid[0]) / (count - 1) as f64;
    let tangents: Vec<Vec2> = theta_grid.iter().map(|&t| Vec2::from_angle(t)).collect();
    let integrand: Vec<Vec2> = tangents.iter().zip(kappa).map(|(&t, &k)| t * (1.0 / k)).collect();
    let points = cumulative_fourth_order(&integrand, h, base_point);
    let closure_defect = (points[count - 1] - points[0]).norm();
    Ok(PlanarCurve {
        theta_grid: theta_grid.to_vec(),
        normals: tangents.iter().map(|t| t.perp()).collect(),
        tangents,
        points,
        kappa: kappa.to_vec(),
        m,
        n,
        closure_defect,
    })
}

/// Reconstructs a curve from a profile extended over `[0, 2πm]`. The turning
/// index is read from the angular span and the symmetry order from the number
/// of periods it contains.
pub fn reconstruct(profile: &CurvatureProfile, base_point: Vec2) -> Result<PlanarCurve> {
    let span = profile.span();
    let m = math::round(span / TAU);
    let n = math::round(span / (2.0 * profile.semi_period));
    if !(m >= 1.0) || !(n >= 1.0) || (span - m * TAU).abs() > 1e-9 * span {
        return Err(Error::Domain("profile must span a whole number of turns"));
    }
    reconstruct_samples(&profile.theta_grid, &profile.kappa, m as u32, n as u32, base_point)
}

/// Trapezoid rule on a uniform grid; spectrally accurate for periodic data.
fn trapezoid(theta: &[f64], values: impl Iterator<Item = f64>) -> f64 {
    let count = theta.len();
    let h = (theta[count - 1] - theta[0]) / (count - 1) as f64;
    let mut sum = 0.0;
    for (i, v) in values.enumerate() {
        let w = if i == 0 || i == count - 1 { 0.5 } else { 1.0 };
        sum += w * v;
    }
    sum * h
}

impl PlanarCurve {
    /// Number of distinct vertices `N`.
    pub fn vertex_count(&self) -> usize {
        self.points.len() - 1
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.points[..self.vertex_count()]
    }

    pub fn diameter(&self) -> f64 {
        point_set_diameter(&self.points)
    }

    pub fn kappa_max(&self) -> f64 {
        self.kappa.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn kappa_min(&self) -> f64 {
        self.kappa.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn is_closed(&self, relative_tolerance: f64) -> bool {
        self.closure_defect <= relative_tolerance * self.diameter()
    }

    /// Mean of the distinct vertices; the rotation center of an `n`-symmetric
    /// curve whose vertex count is a multiple of `n`.
    pub fn centroid(&self) -> Vec2 {
        let v = self.vertices();
        let mut acc = Vec2::ZERO;
        for &p in v {
            acc += p;
        }
        acc * (1.0 / v.len() as f64)
    }

    pub fn translated(&self, offset: Vec2) -> PlanarCurve {
        let mut c = self.clone();
        for p in &mut c.points {
            *p += offset;
        }
        c
    }

    /// Rigid rotation about the origin; tangent angles shift by `angle`.
    pub fn rotated(&self, angle: f64) -> PlanarCurve {
        let mut c = self.clone();
        for p in &mut c.points {
            *p = p.rotate(angle);
        }
        for t in &mut c.theta_grid {
            *t += angle;
        }
        c.tangents = c.theta_grid.iter().map(|&t| Vec2::from_angle(t)).collect();
        c.normals = c.tangents.iter().map(|t| t.perp()).collect();
        c
    }

    /// Scaling about the origin by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> PlanarCurve {
        let mut c = self.clone();
        for p in &mut c.points {
            *p = *p * factor;
        }
        for k in &mut c.kappa {
            *k /= factor;
        }
        c.closure_defect *= factor;
        c
    }
}

/// `len = ∫ dθ/κ`.
pub fn length(curve: &PlanarCurve) -> f64 {
    trapezoid(&curve.theta_grid, curve.kappa.iter().map(|&k| 1.0 / k))
}

pub fn support_function(curve: &PlanarCurve) -> SupportProfile {
    SupportProfile {
        theta_grid: curve.theta_grid.clone(),
        sigma: curve.points.iter().zip(&curve.normals).map(|(&x, &n)| -x.dot(n)).collect(),
    }
}

/// `½ ∫ σ/κ dθ`, positive for counterclockwise circles.
pub fn signed_area(curve: &PlanarCurve) -> Result<f64> {
    signed_area_with_tolerance(curve, CLOSURE_TOLERANCE)
}

pub fn signed_area_with_tolerance(curve: &PlanarCurve, relative_tolerance: f64) -> Result<f64> {
    let tolerance = relative_tolerance * curve.diameter();
    if curve.closure_defect > tolerance {
        return Err(Error::NotClosed { defect: curve.closure_defect, tolerance });
    }
    let sigma = support_function(curve).sigma;
    Ok(0.5 * trapezoid(&curve.theta_grid, sigma.iter().zip(&curve.kappa).map(|(&s, &k)| s / k)))
}

/// Least-squares soliton center and the residual `max |κ − σ_c − λ|`, where
/// `σ_c` is the support function about the center `c`.
pub fn soliton_fit(curve: &PlanarCurve, lambda: f64) -> (Vec2, f64) {
    let sigma = support_function(curve).sigma;
    let count = curve.vertex_count().max(1);
    // σ_c = σ − ⟨c, ν⟩ with ν = (sin θ, −cos θ); residual ρ = κ − λ − σ + c_x sin θ − c_y cos θ.
    let (mut a11, mut a12, mut a22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 0..count {
        let (s, c) = math::sin_cos(curve.theta_grid[i]);
        let r = curve.kappa[i] - lambda - sigma[i];
        // Columns: u = sin θ (for c_x), v = −cos θ (for c_y); minimize |r + u c_x + v c_y|².
        let (u, v) = (s, -c);
        a11 += u * u;
        a12 += u * v;
        a22 += v * v;
        b1 -= u * r;
        b2 -= v * r;
    }
    let det = a11 * a22 - a12 * a12;
    let center = if det.abs() > 1e-300 {
        Vec2::new((b1 * a22 - b2 * a12) / det, (a11 * b2 - a12 * b1) / det)
    } else {
        Vec2::ZERO
    };
    let nu = |theta: f64| {
        let (s, c) = math::sin_cos(theta);
        Vec2::new(s, -c)
    };
    let residual = (0..curve.points.len())
        .map(|i| {
            let sc = sigma[i] - center.dot(nu(curve.theta_grid[i]));
            (curve.kappa[i] - sc - lambda).abs()
        })
        .fold(0.0, f64::max);
    (center, residual)
}

/// `max |κ − σ − λ|` after the optimal translation.
pub fn soliton_residual(curve: &PlanarCurve, lambda: f64) -> f64 {
    soliton_fit(curve, lambda).1
}

/// Normal offset `x^{±ε} = x ∓ εn`: positive `epsilon` moves outward
/// (`κ → κ/(1 + εκ)`, `σ → σ + ε`), negative `epsilon` inward.
pub fn perturb_normal(curve: &PlanarCurve, epsilon: f64) -> Result<PlanarCurve> {
    let product = epsilon.abs() * curve.kappa_max();
    if !(product < 1.0) {
        return Err(Error::DegenerateOffset { product });
    }
    let mut c = curve.clone();
    for (p, &n) in c.points.iter_mut().zip(&curve.normals) {
        *p -= n * epsilon;
    }
    for k in &mut c.kappa {
        *k /= 1.0 + epsilon * *k;
    }
    let last = c.points.len() - 1;
    c.closure_defect = (c.points[last] - c.points[0]).norm();
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TypologyReport {
    pub locally_convex: bool,
    pub coprime: bool,
    pub ratio_above_half: bool,
    pub kappa_even: bool,
    pub sigma_even: bool,
    pub kappa_monotone: bool,
    pub sigma_monotone: bool,
    pub rotational_symmetry: bool,
    /// Strict local maxima of `κ` along one traversal.
    pub curvature_maxima: usize,
    /// Turning index measured from the vertex polygon.
    pub measured_turning_index: i64,
}

impl TypologyReport {
    pub fn symmetry_order_matches(&self, n: u32) -> bool {
        self.curvature_maxima == n as usize
    }

    pub fn all_pass(&self, m: u32, n: u32) -> bool {
        self.locally_convex
            && self.coprime
            && self.ratio_above_half
            && self.kappa_even
            && self.sigma_even
            && self.kappa_monotone
            && self.sigma_monotone
            && self.rotational_symmetry
            && self.symmetry_order_matches(n)
            && self.measured_turning_index == m as i64
    }
}

/// Turning number of a closed polygon from its exterior angles.
pub fn polygon_turning_index(vertices: &[Vec2]) -> i64 {
    let count = vertices.len();
    if count < 3 {
        return 0;
    }
    let mut total = 0.0;
    for i in 0..count {
        let a = vertices[(i + 1) % count] - vertices[i];
        let b = vertices[(i + 2) % count] - vertices[(i + 1) % count];
        total += math::atan2(a.cross(b), a.dot(b));
    }
    math::round(total / TAU) as i64
}

/// Checks the closed-shrinker typology: `κ > 0`, coprime `(m, n)` with
/// `m/n > 1/2`, `κ` and `σ` even about a vertex and about the next half-period,
/// both strictly decreasing in between, and `n`-fold rotational symmetry.
/// The tolerances are relative to the curvature range and diameter.
pub fn verify_typology(curve: &PlanarCurve) -> TypologyReport {
    verify_typology_with_tolerance(curve, 1e-7)
}

pub fn verify_typology_with_tolerance(curve: &PlanarCurve, tol: f64) -> TypologyReport {
    let big_n = curve.vertex_count();
    let (m, n) = (curve.m, curve.n);
    let mut report = TypologyReport {
        locally_convex: curve.kappa.iter().all(|&k| k > 0.0),
        coprime: gcd(m as u64, n as u64) == 1,
        ratio_above_half: 2 * m > n,
        kappa_even: false,
        sigma_even: false,
        kappa_monotone: false,
        sigma_monotone: false,
        rotational_symmetry: false,
        curvature_maxima: 0,
        measured_turning_index: polygon_turning_index(curve.vertices()),
    };
    if big_n < 4 {
        return report;
    }
    let start = (0..big_n).fold(0, |best, i| if curve.kappa[i] > curve.kappa[best] { i } else { best });
    let center = curve.centroid();
    let sigma: Vec<f64> = (0..big_n)
        .map(|i| -(curve.points[i] - center).dot(curve.normals[i]))
        .collect();
    let kappa = &curve.kappa[..big_n];
    let at = |v: &[f64], i: usize| v[(start + i) % big_n];
    let kappa_scale = (curve.kappa_max() - curve.kappa_min()).max(curve.kappa_max() * 1e-3);
    let sigma_scale = sigma.iter().fold(0.0f64, |a, &s| a.max(s.abs())).max(1e-300);
    let diameter = curve.diameter();

    report.curvature_maxima = (0..big_n)
        .filter(|&i| {
            let prev = kappa[(i + big_n - 1) % big_n];
            let next = kappa[(i + 1) % big_n];
            kappa[i] > prev && kappa[i] >= next
        })
        .count();

    let half = 2 * n as usize;
    if big_n % half != 0 {
        return report;
    }
    let p = big_n / half;
    let even = |v: &[f64], scale: f64| {
        (1..big_n).all(|i| (at(v, i) - at(v, big_n - i)).abs() <= tol * scale)
            && (1..p).all(|i| (at(v, p + i) - at(v, p - i)).abs() <= tol * scale)
    };
    let monotone = |v: &[f64], scale: f64| (0..p).all(|i| at(v, i + 1) - at(v, i) < tol * scale * 1e-3);
    report.kappa_even = even(kappa, kappa_scale);
    report.sigma_even = even(&sigma, sigma_scale);
    report.kappa_monotone = monotone(kappa, kappa_scale);
    report.sigma_monotone = monotone(&sigma, sigma_scale);

    let shift = big_n / n as usize;
    let angle = TAU * m as f64 / n as f64;
    report.rotational_symmetry = (0..big_n).all(|i| {
        let rotated = (curve.points[i] - center).rotate(angle);
        let target = curve.points[(i + shift) % big_n] - center;
        (rotated - target).norm() <= tol * diameter
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(radius: f64, m: u32, samples: usize) -> PlanarCurve {
        let theta: Vec<f64> = (0..=samples).map(|j| TAU * m as f64 * j as f64 / samples as f64).collect();
        let kappa = alloc::vec![1.0 / radius; samples + 1];
        // Base point chosen so that the circle is centered at the origin.
        reconstruct_samples(&theta, &kappa, m, 1, Vec2::new(radius, 0.0).rotate(-PI / 2.0)).unwrap()
    }

    #[test]
    fn unit_circle() {
        let c = circle(1.0, 1, 4096);
        assert!(c.closure_defect < 1e-10);
        assert!((length(&c) - TAU).abs() < 1e-12);
        assert!((signed_area(&c).unwrap() - PI).abs() < 1e-10);
        let sigma = support_function(&c).sigma;
        assert!(sigma.iter().all(|s| (s - 1.0).abs() < 1e-10));
        assert!((c.diameter() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn multiply_covered_circle() {
        let rho = 0.7;
        let c = circle(rho, 3, 3 * 4096);
        assert!((length(&c) - 3.0 * TAU * rho).abs() < 1e-11);
        assert!((signed_area(&c).unwrap() - 3.0 * PI * rho * rho).abs() < 1e-10);
        assert_eq!(polygon_turning_index(c.vertices()), 3);
    }

    #[test]
    fn translated_circle_support_is_sinusoid() {
        let c = circle(1.0, 1, 4096).translated(Vec2::new(0.3, -0.2));
        let s = support_function(&c);
        for (i, &t) in s.theta_grid.iter().enumerate() {
            let nu = Vec2::new(math::sin(t), -math::cos(t));
            assert!((s.sigma[i] - (1.0 + Vec2::new(0.3, -0.2).dot(nu))).abs() < 1e-10);
        }
        assert!(s.relation_defect(&c.kappa) < 1e-4);
    }

    #[test]
    fn soliton_residual_of_constant_solution() {
        let lambda = 1.3;
        let k0 = crate::potential::argmin(lambda);
        let c = circle(1.0 / k0, 1, 4096).translated(Vec2::new(5.0, 2.0));
        let (center, res) = soliton_fit(&c, lambda);
        assert!(res < 1e-8);
        assert!((center - Vec2::new(5.0, 2.0)).norm() < 1e-8);
    }

    #[test]
    fn offset_circle() {
        let c = circle(1.0, 1, 4096);
        let inner = perturb_normal(&c, -0.1).unwrap();
        assert!(inner.kappa.iter().all(|&k| (k - 1.0 / 0.9).abs() < 1e-12));
        assert!(inner.points.iter().all(|p| (p.norm() - 0.9).abs() < 1e-10));
        let same = perturb_normal(&c, 0.0).unwrap();
        assert_eq!(same, c);
        assert!(matches!(perturb_normal(&c, 1.0), Err(Error::DegenerateOffset { .. })));
        let outer = perturb_normal(&c, 0.25).unwrap();
        let s0 = support_function(&c).sigma;
        let s1 = support_function(&outer).sigma;
        assert!(s0.iter().zip(&s1).all(|(a, b)| (b - a - 0.25).abs() < 1e-12));
    }

    #[test]
    fn reconstruction_converges_at_fourth_order() {
        // An open arc: closure defect is not the quantity here, the end point is.
        let kappa_fn = |t: f64| 2.0 + math::cos(t);
        let exact_end = {
            // Fine reference with the same rule at 16× resolution.
            let samples = 8192;
            let theta: Vec<f64> = (0..=samples).map(|j| 3.0 * j as f64 / samples as f64).collect();
            let kappa: Vec<f64> = theta.iter().map(|&t| kappa_fn(t)).collect();
            *reconstruct_samples(&theta, &kappa, 1, 1, Vec2::ZERO).unwrap().points.last().unwrap()
        };
        let end_error = |samples: usize| {
            let theta: Vec<f64> = (0..=samples).map(|j| 3.0 * j as f64 / samples as f64).collect();
            let kappa: Vec<f64> = theta.iter().map(|&t| kappa_fn(t)).collect();
            let c = reconstruct_samples(&theta, &kappa, 1, 1, Vec2::ZERO).unwrap();
            (*c.points.last().unwrap() - exact_end).norm()
        };
        let (e1, e2) = (end_error(64), end_error(128));
        assert!(e1 / e2 > 12.0, "observed ratio {}", e1 / e2);
    }

    #[test]
    fn rigid_motion_invariance() {
        let theta: Vec<f64> = (0..=600).map(|j| TAU * j as f64 / 600.0).collect();
        let kappa: Vec<f64> = theta.iter().map(|&t| 1.0 / (1.0 + 0.2 * math::cos(2.0 * t))).collect();
        let c = reconstruct_samples(&theta, &kappa, 1, 2, Vec2::ZERO).unwrap();
        let a0 = signed_area_with_tolerance(&c, 1e-3).unwrap();
        let moved = c.rotated(0.7).translated(Vec2::new(-3.0, 8.0));
        assert!((length(&moved) - length(&c)).abs() < 1e-12);
        assert!((signed_area_with_tolerance(&moved, 1e-3).unwrap() - a0).abs() < 1e-9);
    }

    #[test]
    fn rejects_nonpositive_curvature() {
        let theta = [0.0, 1.0, 2.0];
        assert!(reconstruct_samples(&theta, &[1.0, 0.0, 1.0], 1, 1, Vec2::ZERO).is_err());
    }

    #[test]
    fn non_symmetric_curve_fails_typology() {
        let samples = 1200;
        let theta: Vec<f64> = (0..=samples).map(|j| TAU * j as f64 / samples as f64).collect();
        // κ = 1/(σ'' + σ) for σ = 1 + 0.02 cos 2θ + 0.01 cos 3θ + 0.005 sin 5θ.
        let kappa: Vec<f64> = theta
            .iter()
            .map(|&t| {
                1.0 / (1.0 - 0.06 * math::cos(2.0 * t) - 0.08 * math::cos(3.0 * t) - 0.12 * math::sin(5.0 * t))
            })
            .collect();
        let c = reconstruct_samples(&theta, &kappa, 1, 2, Vec2::ZERO).unwrap();
        let r = verify_typology(&c);
        assert!(r.locally_convex);
        assert!(!(r.kappa_even && r.rotational_symmetry));
        assert!(!r.all_pass(1, 2));
    }
}
