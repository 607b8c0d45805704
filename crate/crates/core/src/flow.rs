//! Polygonal area-preserving curve-shortening flow `Ẋ = (κ − κ̄)N`.
//!
//! Nodes move along the chord normal `n_i = J(x_{i+1} − x_{i−1})/|x_{i+1} − x_{i−1}|`
//! with speed `κ_i − κ̄`, where `κ_i = ⟨−∇_i len, n_i⟩ / w_i` is the curvature
//! read off the length gradient and `w_i = |x_{i+1} − x_{i−1}|/2` is the dual
//! length. Because `∇_i area = −w_i n_i`, the weighted mean
//! `κ̄ = Σ w_i κ_i / Σ w_i` makes the semi-discrete flow conserve the polygon
//! area exactly and decrease its length (`d len/dt = −Σ w_i (κ_i − κ̄)²`).
//! A regular polygon, covered any number of times, is an exact equilibrium.
//!
//! Nodes are redistributed by red-black sweeps (even nodes, then odd) that slide each node parallel
//! to its chord. Such a move leaves the area unchanged (the area is affine in
//! each node) and, with a uniform monitor, moves the node to the length
//! minimizer on that line.

use alloc::vec::Vec;

use crate::geometry::{self, perturb_normal, PlanarCurve, Vec2};
use crate::math::{self, TAU};
use crate::shrinker::ShrinkerSolution;
use crate::{Error, Result};

/// Smallest node count accepted by [`init_flow`].
pub const MIN_NODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowConfig {
    /// Step restriction `dt ≤ cfl · h_min²`.
    pub cfl: f64,
    pub dt_max: f64,
    /// Monitor `ρ = 1 + α|κ|` whose arclength mass the redistribution equalizes.
    pub monitor_alpha: f64,
    /// Redistribution sweeps after every `redistribute_every` steps.
    pub redistribute_every: usize,
    pub redistribution_sweeps: usize,
    /// Spacing floor relative to the initial mean spacing.
    pub resolution_floor: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            cfl: 0.2,
            dt_max: 1e-2,
            monitor_alpha: 0.0,
            redistribute_every: 1,
            redistribution_sweeps: 1,
            resolution_floor: 1e-7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowDiagnostics {
    pub length: f64,
    pub area: f64,
    /// Extremes of the three-point circumscribed-circle curvature.
    pub kappa_max: f64,
    pub kappa_min: f64,
    pub kappa_bar: f64,
    /// `Σ w (κ − κ̄)² / Σ w`, divided by `κ̄²`.
    pub variance: f64,
    pub min_spacing: f64,
    pub max_spacing: f64,
}

impl FlowDiagnostics {
    pub fn relative_std(&self) -> f64 {
        math::sqrt(self.variance)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub positions: Vec<Vec2>,
    pub time: f64,
    pub step_count: u64,
    /// Turning index carried from the initial curve.
    pub m: u32,
    /// Mean edge length of the initial polygon.
    pub initial_spacing: f64,
    pub diagnostics: FlowDiagnostics,
}

/// Polygon area `½ Σ x_i × x_{i+1}`.
pub fn polygon_area(points: &[Vec2]) -> f64 {
    let n = points.len();
    0.5 * (0..n).map(|i| points[i].cross(points[(i + 1) % n])).sum::<f64>()
}

pub fn polygon_length(points: &[Vec2]) -> f64 {
    let n = points.len();
    (0..n).map(|i| (points[(i + 1) % n] - points[i]).norm()).sum()
}

/// Three-point circumscribed-circle curvature, signed positive for left turns.
pub fn circumscribed_curvature(prev: Vec2, here: Vec2, next: Vec2) -> f64 {
    let a = here - prev;
    let b = next - here;
    let c = next - prev;
    2.0 * a.cross(b) / (a.norm() * b.norm() * c.norm())
}

struct Geometry {
    normals: Vec<Vec2>,
    weights: Vec<f64>,
    kappa: Vec<f64>,
    kappa_bar: f64,
}

fn node_geometry(x: &[Vec2]) -> Geometry {
    let n = x.len();
    let mut normals = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut kappa = Vec::with_capacity(n);
    for i in 0..n {
        let prev = x[(i + n - 1) % n];
        let next = x[(i + 1) % n];
        let a = x[i] - prev;
        let b = next - x[i];
        let chord = next - prev;
        let half = 0.5 * chord.norm();
        let normal = chord.perp() * (0.5 / half);
        // −∇_i len = b/|b| − a/|a|
        let pull = b * (1.0 / b.norm()) - a * (1.0 / a.norm());
        normals.push(normal);
        weights.push(half);
        kappa.push(pull.dot(normal) / half);
    }
    let total: f64 = weights.iter().sum();
    let kappa_bar = weights.iter().zip(&kappa).map(|(w, k)| w * k).sum::<f64>() / total;
    Geometry { normals, weights, kappa, kappa_bar }
}

fn edge_lengths(x: &[Vec2]) -> impl Iterator<Item = f64> + '_ {
    let n = x.len();
    (0..n).map(move |i| (x[(i + 1) % n] - x[i]).norm())
}

fn diagnostics_of(x: &[Vec2]) -> FlowDiagnostics {
    let n = x.len();
    let g = node_geometry(x);
    let total: f64 = g.weights.iter().sum();
    let var = g.weights.iter().zip(&g.kappa).map(|(w, k)| w * (k - g.kappa_bar) * (k - g.kappa_bar)).sum::<f64>()
        / total
        / (g.kappa_bar * g.kappa_bar);
    let (mut kmax, mut kmin) = (f64::NEG_INFINITY, f64::INFINITY);
    for i in 0..n {
        let k = circumscribed_curvature(x[(i + n - 1) % n], x[i], x[(i + 1) % n]);
        kmax = kmax.max(k);
        kmin = kmin.min(k);
    }
    let (mut hmin, mut hmax) = (f64::INFINITY, 0.0f64);
    for h in edge_lengths(x) {
        hmin = hmin.min(h);
        hmax = hmax.max(h);
    }
    FlowDiagnostics {
        length: polygon_length(x),
        area: polygon_area(x),
        kappa_max: kmax,
        kappa_min: kmin,
        kappa_bar: g.kappa_bar,
        variance: var,
        min_spacing: hmin,
        max_spacing: hmax,
    }
}

impl FlowState {
    pub fn from_polygon(positions: Vec<Vec2>, m: u32) -> Result<Self> {
        if positions.len() < MIN_NODES {
            return Err(Error::Domain("flow needs at least 64 nodes"));
        }
        if m == 0 {
            return Err(Error::Domain("turning index must be positive"));
        }
        let diagnostics = diagnostics_of(&positions);
        if !diagnostics.length.is_finite() || !(diagnostics.min_spacing > 0.0) {
            return Err(Error::Domain("polygon has coincident neighbors"));
        }
        Ok(Self {
            initial_spacing: diagnostics.length / positions.len() as f64,
            positions,
            time: 0.0,
            step_count: 0,
            m,
            diagnostics,
        })
    }

    pub fn node_count(&self) -> usize {
        self.positions.len()
    }

    /// Regular polygon on the `m`-fold circle of the given radius.
    pub fn circle(center: Vec2, radius: f64, m: u32, nodes: usize) -> Result<Self> {
        let positions = (0..nodes)
            .map(|j| center + Vec2::from_angle(TAU * m as f64 * j as f64 / nodes as f64) * radius)
            .collect();
        Self::from_polygon(positions, m)
    }

    /// Advances one explicit step and redistributes.
    pub fn advance(&mut self, config: &FlowConfig) -> Result<f64> {
        let floor = config.resolution_floor * self.initial_spacing;
        let h_min = self.diagnostics.min_spacing;
        if h_min < floor {
            return Err(Error::Resolution { spacing: h_min, floor });
        }
        let dt = config.dt_max.min(config.cfl * h_min * h_min);
        let g = node_geometry(&self.positions);
        for i in 0..self.positions.len() {
            self.positions[i] += g.normals[i] * ((g.kappa[i] - g.kappa_bar) * dt);
        }
        self.time += dt;
        self.step_count += 1;
        if config.redistribute_every > 0 && self.step_count % config.redistribute_every as u64 == 0 {
            for _ in 0..config.redistribution_sweeps {
                redistribute_sweep(&mut self.positions, config.monitor_alpha);
            }
        }
        self.diagnostics = diagnostics_of(&self.positions);
        if !self.diagnostics.length.is_finite() {
            return Err(Error::IntegratorFailure("flow produced non-finite positions"));
        }
        Ok(dt)
    }
}

/// One sweep sliding every node parallel to its chord toward the point where
/// the monitor-weighted lengths of its two edges agree. Even nodes move first,
/// then odd nodes: nodes of one color are never adjacent, so each half-sweep
/// keeps the exact area, and the update commutes with index shifts by an even
/// number (which keeps rotationally symmetric polygons symmetric).
pub fn redistribute_sweep(x: &mut [Vec2], alpha: f64) {
    let n = x.len();
    for parity in 0..2 {
        let kappa: Vec<f64> = if alpha > 0.0 {
            (0..n).map(|i| circumscribed_curvature(x[(i + n - 1) % n], x[i], x[(i + 1) % n]).abs()).collect()
        } else {
            Vec::new()
        };
        let mut moves = Vec::with_capacity(n / 2 + 1);
        // With odd n the last node shares its color with node 0 and would be adjacent to it.
        let end = if n % 2 == 1 && parity == 0 { n - 1 } else { n };
        for i in (parity..end).step_by(2) {
            let (ip, inx) = ((i + n - 1) % n, (i + 1) % n);
            let chord = x[inx] - x[ip];
            let len = chord.norm();
            if !(len > 0.0) {
                continue;
            }
            let u = chord * (1.0 / len);
            let a_t = (x[i] - x[ip]).dot(u);
            let b_t = (x[inx] - x[i]).dot(u);
            if !(a_t > 0.0 && b_t > 0.0) {
                continue;
            }
            let (rho_l, rho_r) = if alpha > 0.0 {
                (1.0 + alpha * 0.5 * (kappa[ip] + kappa[i]), 1.0 + alpha * 0.5 * (kappa[i] + kappa[inx]))
            } else {
                (1.0, 1.0)
            };
            let s = (rho_r * b_t - rho_l * a_t) / (rho_l + rho_r);
            moves.push((i, u * s));
        }
        for (i, d) in moves {
            x[i] += d;
        }
    }
}

/// `step` as a pure function.
pub fn step(state: &FlowState, config: &FlowConfig) -> Result<FlowState> {
    let mut next = state.clone();
    next.advance(config)?;
    Ok(next)
}

/// Resamples a closed curve at equal monitor mass `∫ (1 + α κ) ds`; `α = 0`
/// gives equal arclength.
pub fn init_flow(curve: &PlanarCurve, node_count: usize, alpha: f64) -> Result<FlowState> {
    if node_count < MIN_NODES {
        return Err(Error::Domain("flow needs at least 64 nodes"));
    }
    let tolerance = geometry::CLOSURE_TOLERANCE * curve.diameter();
    if curve.closure_defect > tolerance {
        return Err(Error::NotClosed { defect: curve.closure_defect, tolerance });
    }
    let theta = &curve.theta_grid;
    let count = theta.len();
    let h = (theta[count - 1] - theta[0]) / (count - 1) as f64;
    // Cumulative mass with the trapezoid rule on ds/dθ = 1/κ.
    let mut mass = Vec::with_capacity(count);
    mass.push(0.0);
    for i in 1..count {
        let ds = 0.5 * h * (1.0 / curve.kappa[i - 1] + 1.0 / curve.kappa[i]);
        mass.push(mass[i - 1] + ds + alpha * h);
    }
    let total = mass[count - 1];
    let mut positions = Vec::with_capacity(node_count);
    for j in 0..node_count {
        let target = total * j as f64 / node_count as f64;
        let i = mass.partition_point(|&mm| mm <= target).clamp(1, count - 1) - 1;
        let frac = ((target - mass[i]) / (mass[i + 1] - mass[i])).clamp(0.0, 1.0);
        // Cubic Hermite in θ with x' = t/κ.
        let (p0, p1) = (curve.points[i], curve.points[i + 1]);
        let d0 = curve.tangents[i] * (h / curve.kappa[i]);
        let d1 = curve.tangents[i + 1] * (h / curve.kappa[i + 1]);
        let s = frac;
        let (s2, s3) = (s * s, s * s * s);
        let p = p0 * (2.0 * s3 - 3.0 * s2 + 1.0)
            + d0 * (s3 - 2.0 * s2 + s)
            + p1 * (-2.0 * s3 + 3.0 * s2)
            + d1 * (s3 - s2);
        positions.push(p);
    }
    FlowState::from_polygon(positions, curve.m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    CircleConvergence,
    CuspBlowup,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CircleConvergence => "circle_convergence",
            Verdict::CuspBlowup => "cusp_blowup",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Verdict,
    StepBudget,
    TimeBudget,
    Resolution,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::Verdict => "verdict",
            StopReason::StepBudget => "step_budget",
            StopReason::TimeBudget => "time_budget",
            StopReason::Resolution => "resolution",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Blow-up needs `κ_max > factor · κ_max(0)` ...
    pub blowup_curvature_factor: f64,
    /// ... and `h_min < factor · h_mean(0)`.
    pub blowup_spacing_factor: f64,
    /// Percentile defining high-curvature nodes for the cluster count.
    pub cluster_percentile: f64,
    pub circle_relative_std: f64,
    pub circle_sustain_steps: u64,
    /// Allowed `|κ̄ · len − 2πm| / 2πm` at circle convergence.
    pub circle_turning_tolerance: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            blowup_curvature_factor: 50.0,
            blowup_spacing_factor: 1e-3,
            cluster_percentile: 0.9,
            circle_relative_std: 1e-3,
            circle_sustain_steps: 1000,
            circle_turning_tolerance: 0.01,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    pub max_steps: u64,
    pub max_time: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_steps: 5_000_000, max_time: 50.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DichotomyConfig {
    pub node_count: usize,
    pub flow: FlowConfig,
    pub thresholds: Thresholds,
    pub budget: Budget,
    /// Log row every this many steps (0 disables).
    pub log_every: u64,
    /// History sample every this many steps.
    pub history_every: u64,
    /// Keep a copy of the polygon every this many steps (0 disables).
    pub snapshot_every: u64,
}

impl Default for DichotomyConfig {
    fn default() -> Self {
        Self {
            node_count: 512,
            flow: FlowConfig::default(),
            thresholds: Thresholds::default(),
            budget: Budget::default(),
            log_every: 1000,
            history_every: 100,
            snapshot_every: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogRow {
    pub time: f64,
    pub step: u64,
    pub diagnostics: FlowDiagnostics,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistorySample {
    pub time: f64,
    pub relative_std: f64,
    pub kappa_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowOutcome {
    pub verdict: Verdict,
    pub stop_reason: StopReason,
    pub final_state: FlowState,
    pub initial: FlowDiagnostics,
    pub history: Vec<HistorySample>,
    pub log: Vec<LogRow>,
    /// `(time, polygon)` frames, including the initial and final states when enabled.
    pub snapshots: Vec<(f64, Vec<Vec2>)>,
    /// Connected high-curvature arcs at blow-up.
    pub cluster_count: Option<usize>,
    /// `|κ̄ · len − 2πm| / 2πm` at the final state.
    pub turning_defect: f64,
    /// Absolute offset applied before flowing.
    pub epsilon: f64,
}

/// Number of connected periodic runs of nodes whose curvature is at or above
/// the given percentile.
pub fn curvature_clusters(positions: &[Vec2], percentile: f64) -> usize {
    let n = positions.len();
    let kappa: Vec<f64> =
        (0..n).map(|i| circumscribed_curvature(positions[(i + n - 1) % n], positions[i], positions[(i + 1) % n])).collect();
    let mut sorted = kappa.clone();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let idx = ((percentile * n as f64) as usize).min(n - 1);
    let cut = sorted[idx];
    let high: Vec<bool> = kappa.iter().map(|&k| k >= cut).collect();
    if high.iter().all(|&h| h) {
        return 1;
    }
    (0..n).filter(|&i| high[i] && !high[(i + n - 1) % n]).count()
}

/// Evolves an already initialized state until a verdict or the budget.
pub fn evolve(mut state: FlowState, epsilon: f64, config: &DichotomyConfig) -> FlowOutcome {
    let th = &config.thresholds;
    let initial = state.diagnostics;
    let two_pi_m = TAU * state.m as f64;
    let mut streak = 0u64;
    let mut history = Vec::new();
    let mut log = Vec::new();
    let push_log = |log: &mut Vec<LogRow>, s: &FlowState| {
        log.push(LogRow { time: s.time, step: s.step_count, diagnostics: s.diagnostics });
    };
    if config.log_every > 0 {
        push_log(&mut log, &state);
    }
    let mut snapshots = Vec::new();
    if config.snapshot_every > 0 {
        snapshots.push((state.time, state.positions.clone()));
    }
    let mut verdict = Verdict::Inconclusive;
    let reason;
    let mut clusters = None;
    loop {
        if state.step_count >= config.budget.max_steps {
            reason = StopReason::StepBudget;
            break;
        }
        if state.time >= config.budget.max_time {
            reason = StopReason::TimeBudget;
            break;
        }
        if state.advance(&config.flow).is_err() {
            reason = StopReason::Resolution;
            break;
        }
        let d = &state.diagnostics;
        if config.history_every > 0 && state.step_count % config.history_every == 0 {
            history.push(HistorySample { time: state.time, relative_std: d.relative_std(), kappa_max: d.kappa_max });
        }
        if config.log_every > 0 && state.step_count % config.log_every == 0 {
            push_log(&mut log, &state);
        }
        if config.snapshot_every > 0 && state.step_count % config.snapshot_every == 0 {
            snapshots.push((state.time, state.positions.clone()));
        }
        if d.kappa_max > th.blowup_curvature_factor * initial.kappa_max
            && d.min_spacing < th.blowup_spacing_factor * state.initial_spacing
        {
            verdict = Verdict::CuspBlowup;
            reason = StopReason::Verdict;
            clusters = Some(curvature_clusters(&state.positions, th.cluster_percentile));
            break;
        }
        if d.relative_std() < th.circle_relative_std {
            streak += 1;
        } else {
            streak = 0;
        }
        if streak >= th.circle_sustain_steps
            && (d.kappa_bar * d.length - two_pi_m).abs() / two_pi_m < th.circle_turning_tolerance
        {
            verdict = Verdict::CircleConvergence;
            reason = StopReason::Verdict;
            break;
        }
    }
    if config.log_every > 0 && log.last().map_or(true, |r| r.step != state.step_count) {
        push_log(&mut log, &state);
    }
    if config.snapshot_every > 0 && snapshots.last().map_or(true, |f| f.0 != state.time) {
        snapshots.push((state.time, state.positions.clone()));
    }
    let d = state.diagnostics;
    FlowOutcome {
        verdict,
        stop_reason: reason,
        turning_defect: (d.kappa_bar * d.length - two_pi_m).abs() / two_pi_m,
        final_state: state,
        initial,
        history,
        log,
        snapshots,
        cluster_count: clusters,
        epsilon,
    }
}

/// Offsets the shrinker by `sign · epsilon` along the normal and runs the
/// flow. The redistribution monitor uses `α = len/(2πm)`, so nodes concentrate
/// where curvature grows.
pub fn run_dichotomy(
    shrinker: &ShrinkerSolution,
    epsilon: f64,
    sign: Sign,
    config: &DichotomyConfig,
) -> Result<FlowOutcome> {
    if !(epsilon >= 0.0) {
        return Err(Error::Domain("epsilon must be nonnegative"));
    }
    let offset = sign.factor() * epsilon;
    let perturbed = perturb_normal(&shrinker.curve, offset)?;
    let alpha = geometry::length(&perturbed) / (TAU * shrinker.m as f64);
    let mut cfg = *config;
    cfg.flow.monitor_alpha = alpha;
    // Node counts divisible by 2n keep the discrete problem n-fold symmetric.
    let period = 2 * shrinker.n as usize;
    let nodes = config.node_count.div_ceil(period) * period;
    let state = init_flow(&perturbed, nodes, alpha)?;
    Ok(evolve(state, offset, &cfg))
}

/// Distance from `p` to the closed polygon `poly`.
pub fn distance_to_polygon(p: Vec2, poly: &[Vec2]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let a = poly[i];
            let b = poly[(i + 1) % n];
            let ab = b - a;
            let t = ((p - a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
            (p - (a + ab * t)).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomothetyReport {
    /// `T*` fitted from `len(t)² = len(0)²(1 − t/T*)`.
    pub t_star_fit: f64,
    /// Largest distance of `X(t)/ψ(t)` to the initial polygon, over the diameter.
    pub max_relative_deviation: f64,
    pub horizon: f64,
    pub samples: Vec<(f64, f64)>,
}

/// Evolves an unperturbed shrinker up to `fraction · T*` and measures how far the
/// rescaled polygons drift from the initial one. `t_star_guess` sets the horizon;
/// the rescaling uses the fitted `T*`.
pub fn homothety_control(
    curve: &PlanarCurve,
    node_count: usize,
    t_star_guess: f64,
    fraction: f64,
    config: &FlowConfig,
) -> Result<HomothetyReport> {
    let mut state = init_flow(curve, node_count, 0.0)?;
    let initial = state.positions.clone();
    let diameter = geometry::point_set_diameter(&initial);
    let horizon = fraction * t_star_guess;
    let l0 = state.diagnostics.length;
    let mut lengths = alloc::vec![(0.0, l0)];
    let mut snapshots = Vec::new();
    let snapshot_count = 10;
    let mut next_snapshot = 1;
    while state.time < horizon {
        let mut cfg = *config;
        cfg.dt_max = config.dt_max.min(horizon - state.time).max(1e-300);
        state.advance(&cfg)?;
        lengths.push((state.time, state.diagnostics.length));
        if state.time >= horizon * next_snapshot as f64 / snapshot_count as f64 - 1e-15 {
            snapshots.push((state.time, state.positions.clone()));
            next_snapshot += 1;
        }
    }
    // Least squares for 1 − len²/len₀² = t/T* through the origin.
    let (mut num, mut den) = (0.0, 0.0);
    for &(t, l) in &lengths {
        let y = 1.0 - (l * l) / (l0 * l0);
        num += t * y;
        den += t * t;
    }
    let t_star = den / num;
    let mut samples = Vec::with_capacity(snapshots.len());
    let mut worst: f64 = 0.0;
    for (t, pts) in &snapshots {
        let psi = math::sqrt(1.0 - t / t_star);
        let dev = pts.iter().map(|&p| distance_to_polygon(p * (1.0 / psi), &initial)).fold(0.0, f64::max) / diameter;
        worst = worst.max(dev);
        samples.push((*t, dev));
    }
    Ok(HomothetyReport { t_star_fit: t_star, max_relative_deviation: worst, horizon, samples })
}
