//! Dormand–Prince 5(4) integrator with continuous (dense) output.

use alloc::vec::Vec;

use crate::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[derive(Debug, Clone, Copy)]
pub struct IntegratorConfig {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self { rtol: 1e-12, atol: 1e-14, h_init: 1e-3, h_max: 0.1, max_steps: 1_000_000 }
    }
}

/// One accepted step together with its interpolation coefficients.
#[derive(Debug, Clone, Copy)]
pub struct DenseStep<const N: usize> {
    pub t0: f64,
    pub h: f64,
    pub y0: [f64; N],
    pub y1: [f64; N],
    rcont: [[f64; N]; 4],
}

impl<const N: usize> DenseStep<N> {
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    /// Fourth-order continuous extension at `t ∈ [t0, t0 + h]`.
    pub fn eval(&self, t: f64) -> [f64; N] {
        let s = (t - self.t0) / self.h;
        let s1 = 1.0 - s;
        let mut out = [0.0; N];
        for (i, o) in out.iter_mut().enumerate() {
            let [r2, r3, r4, r5] = [self.rcont[0][i], self.rcont[1][i], self.rcont[2][i], self.rcont[3][i]];
            *o = self.y0[i] + s * (r2 + s1 * (r3 + s * (r4 + s1 * r5)));
        }
        out
    }
}

/// What the caller wants after an accepted step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Continue,
    Stop,
}

struct Stages<const N: usize> {
    y1: [f64; N],
    k: [[f64; N]; 7],
    err: [f64; N],
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (c, k) in terms {
            acc += c * k[i];
        }
        *o += h * acc;
    }
    out
}

fn attempt<const N: usize, F>(f: &F, t: f64, y: &[f64; N], k1: &[f64; N], h: f64) -> Stages<N>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let k2 = f(t + C2 * h, &axpy(y, h, &[(A21, k1)]));
    let k3 = f(t + C3 * h, &axpy(y, h, &[(A31, k1), (A32, &k2)]));
    let k4 = f(t + C4 * h, &axpy(y, h, &[(A41, k1), (A42, &k2), (A43, &k3)]));
    let k5 = f(t + C5 * h, &axpy(y, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
    let k6 = f(
        t + h,
        &axpy(y, h, &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
    );
    let y1 = axpy(y, h, &[(A71, k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
    let k7 = f(t + h, &y1);
    let mut err = [0.0; N];
    for i in 0..N {
        err[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
    }
    Stages { y1, k: [*k1, k2, k3, k4, k5, k6, k7], err }
}

/// A single explicit step of size `h` from `(t, y)` without error control.
pub fn single_step<const N: usize, F>(f: &F, t: f64, y: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let k1 = f(t, y);
    attempt(f, t, y, &k1, h).y1
}

/// Integrates `y' = f(t, y)` from `t0` toward `t_end`, handing every accepted
/// step to `on_step`. Returns all accepted steps in order.
pub fn solve<const N: usize, F, S>(
    f: F,
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    config: &IntegratorConfig,
    mut on_step: S,
) -> Result<Vec<DenseStep<N>>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    S: FnMut(&DenseStep<N>) -> Result<Control>,
{
    let mut steps = Vec::new();
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = config.h_init.min(config.h_max).min(t_end - t0);
    let mut rejected_last = false;
    let mut attempts = 0usize;
    while t < t_end {
        attempts += 1;
        if attempts > config.max_steps {
            return Err(Error::IntegratorFailure("step budget exhausted"));
        }
        let last = t + h >= t_end;
        if last {
            h = t_end - t;
        }
        let st = attempt(&f, t, &y, &k1, h);
        let mut norm = 0.0;
        for i in 0..N {
            let sc = config.atol + config.rtol * y[i].abs().max(st.y1[i].abs());
            let r = st.err[i] / sc;
            norm += r * r;
        }
        let norm = libm::sqrt(norm / N as f64);
        if !norm.is_finite() || norm > 1.0 {
            let factor = if norm.is_finite() { (0.9 * libm::pow(norm, -0.2)).max(0.2) } else { 0.1 };
            h *= factor;
            rejected_last = true;
            if h.abs() < 1e-14 * t.abs().max(1.0) {
                return Err(Error::IntegratorFailure("step size underflow"));
            }
            continue;
        }
        let k = &st.k;
        let mut rcont = [[0.0; N]; 4];
        for i in 0..N {
            let dy = st.y1[i] - y[i];
            let bspl = h * k[0][i] - dy;
            rcont[0][i] = dy;
            rcont[1][i] = bspl;
            rcont[2][i] = dy - h * k[6][i] - bspl;
            rcont[3][i] = h
                * (D1 * k[0][i] + D3 * k[2][i] + D4 * k[3][i] + D5 * k[4][i] + D6 * k[5][i]
                    + D7 * k[6][i]);
        }
        let step = DenseStep { t0: t, h, y0: y, y1: st.y1, rcont };
        t = if last { t_end } else { t + h };
        y = st.y1;
        k1 = st.k[6];
        steps.push(step);
        if on_step(&step)? == Control::Stop {
            break;
        }
        let mut factor = if norm == 0.0 { 5.0 } else { 0.9 * libm::pow(norm, -0.2) };
        factor = factor.clamp(0.2, 5.0);
        if rejected_last {
            factor = factor.min(1.0);
        }
        rejected_last = false;
        h = (h * factor).min(config.h_max);
    }
    Ok(steps)
}

/// Evaluates a piecewise dense solution at `t`, assuming the steps are sorted.
pub fn eval_steps<const N: usize>(steps: &[DenseStep<N>], t: f64) -> [f64; N] {
    let idx = steps.partition_point(|s| s.t1() < t).min(steps.len() - 1);
    steps[idx].eval(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oscillator(_t: f64, y: &[f64; 2]) -> [f64; 2] {
        [y[1], -y[0]]
    }

    #[test]
    fn harmonic_oscillator_endpoint() {
        let cfg = IntegratorConfig::default();
        let steps = solve(oscillator, 0.0, [1.0, 0.0], 10.0, &cfg, |_| Ok(Control::Continue)).unwrap();
        let end = steps.last().unwrap();
        assert_eq!(end.t1(), 10.0);
        assert!((end.y1[0] - libm::cos(10.0)).abs() < 1e-10);
        assert!((end.y1[1] + libm::sin(10.0)).abs() < 1e-10);
    }

    #[test]
    fn dense_output_is_accurate_between_steps() {
        let cfg = IntegratorConfig { rtol: 1e-10, atol: 1e-12, h_max: 0.5, ..Default::default() };
        let steps = solve(oscillator, 0.0, [1.0, 0.0], 6.0, &cfg, |_| Ok(Control::Continue)).unwrap();
        let mut worst: f64 = 0.0;
        for k in 0..=600 {
            let t = 0.01 * k as f64;
            let y = eval_steps(&steps, t);
            worst = worst.max((y[0] - libm::cos(t)).abs()).max((y[1] + libm::sin(t)).abs());
        }
        assert!(worst < 1e-8, "dense output error {worst}");
    }

    #[test]
    fn fifth_order_convergence_of_single_steps() {
        // Local error of one step scales like h^6.
        let exact = |h: f64| [libm::cos(h), -libm::sin(h)];
        let e = |h: f64| {
            let y = single_step(&oscillator, 0.0, &[1.0, 0.0], h);
            let x = exact(h);
            (y[0] - x[0]).abs() + (y[1] - x[1]).abs()
        };
        let ratio = e(0.2) / e(0.1);
        assert!(ratio > 40.0, "ratio {ratio}");
    }

    #[test]
    fn early_stop_is_honoured() {
        let cfg = IntegratorConfig::default();
        let steps = solve(oscillator, 0.0, [1.0, 0.0], 10.0, &cfg, |s| {
            Ok(if s.t1() > 1.0 { Control::Stop } else { Control::Continue })
        })
        .unwrap();
        assert!(steps.last().unwrap().t1() < 1.5);
    }
}
