//! Quadrature kernels: Gauss–Legendre panels with adaptive bisection and a
//! doubling trapezoidal rule for periodic integrands.
//!
//! The level-curve integrals of the mechanical system carry inverse-square-root
//! endpoint singularities; callers remove those with the `phi = phi_min + u^2`
//! substitution and hand this module a smooth integrand. Sharp interior peaks
//! (the `1/sqrt(delta + c (phi-pi)^2)` well near the hyperbolic point) are left
//! to panel adaptivity.

use crate::error::{Error, Result};
use std::sync::OnceLock;

/// Nodes and weights of the 32-point Gauss–Legendre rule on [-1, 1].
fn gl32() -> &'static [(f64, f64)] {
    static CACHE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    CACHE.get_or_init(|| legendre_rule(32))
}

/// Compute an n-point Gauss–Legendre rule by Newton iteration on P_n.
pub fn legendre_rule(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2);
    let mut rule = Vec::with_capacity(n);
    for i in 1..=n {
        // Tricomi-style initial guess, then Newton on P_n(x) = 0.
        let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_eval(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((x, w));
    }
    rule
}

/// Evaluate (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre_eval(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn gl_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    gl_panel_abs(f, a, b).0
}

/// Panel estimate together with the integral of |f|, used as the roundoff
/// scale when deciding whether further bisection can still gain accuracy.
fn gl_panel_abs<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    let mut acc_abs = 0.0;
    for &(x, w) in gl32() {
        let v = f(mid + half * x);
        acc += w * v;
        acc_abs += w * v.abs();
    }
    (acc * half, acc_abs * half)
}

/// Result of an adaptive integration: value and an error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
}

/// Adaptively integrate a smooth `f` over [a, b] to relative tolerance
/// `rel_tol` (with absolute floor `abs_floor`), bisecting panels until the
/// two-half refinement agrees with the whole-panel estimate.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64, abs_floor: f64) -> Result<QuadResult> {
    if !(b > a) {
        return Ok(QuadResult { value: 0.0, abs_error: 0.0 });
    }
    let (rough, _) = gl_panel_abs(f, a, b);
    let tol = (rel_tol * rough.abs()).max(abs_floor);
    let mut value = 0.0;
    let mut err = 0.0;
    // Explicit stack of (a, b, whole-panel estimate, depth).
    let mut stack = vec![(a, b, rough, 0u32)];
    let mut panels = 0usize;
    while let Some((pa, pb, whole, depth)) = stack.pop() {
        panels += 1;
        if panels > 100_000 {
            return Err(Error::numerical("adaptive quadrature: panel budget exhausted"));
        }
        let pm = 0.5 * (pa + pb);
        let (left, left_abs) = gl_panel_abs(f, pa, pm);
        let (right, right_abs) = gl_panel_abs(f, pm, pb);
        let diff = (left + right - whole).abs();
        let panel_tol = tol * (pb - pa) / (b - a);
        // Below the roundoff scale of the panel itself, bisection cannot
        // improve the estimate.
        let noise_floor = 64.0 * f64::EPSILON * (left_abs + right_abs);
        if diff <= panel_tol.max(noise_floor) || depth >= 48 {
            value += left + right;
            err += diff;
        } else {
            stack.push((pa, pm, left, depth + 1));
            stack.push((pm, pb, right, depth + 1));
        }
    }
    if !value.is_finite() {
        return Err(Error::numerical("adaptive quadrature: non-finite result"));
    }
    Ok(QuadResult { value, abs_error: err })
}

/// Trapezoidal rule for a 2*pi-periodic integrand, doubling the grid from
/// `n_start` until two successive values agree to `tol` relative (cap 2^14).
/// Returns the converged average (1/2pi) * integral.
pub fn periodic_average<F: Fn(f64) -> f64>(f: &F, n_start: usize, tol: f64) -> Result<f64> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut n = n_start.max(64);
    let eval = |n: usize| -> f64 {
        let mut acc = 0.0;
        for k in 0..n {
            acc += f(two_pi * k as f64 / n as f64);
        }
        acc / n as f64
    };
    let mut prev = eval(n);
    while n < (1 << 14) {
        n *= 2;
        let next = eval(n);
        let scale = next.abs().max(1e-300);
        if (next - prev).abs() <= tol * scale {
            return Ok(next);
        }
        prev = next;
    }
    Ok(prev)
}
