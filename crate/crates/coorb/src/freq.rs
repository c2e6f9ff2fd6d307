//! Fundamental-frequency extraction from uniformly sampled complex signals,
//! by iterative Hann-windowed peak refinement, plus a quasi-periodicity
//! residual against a two-frequency harmonic basis.

use crate::error::{Error, Result};
use crate::exec;
use num_complex::Complex64;

/// Minimum accepted series length.
pub const MIN_SAMPLES: usize = 256;
/// Components below this fraction of the strongest amplitude stop the search.
pub const AMPLITUDE_FLOOR: f64 = 1e-10;

/// Least-squares residual report.
#[derive(Debug, Clone, Copy)]
pub struct ResidualReport {
    /// Relative L2 residual after projection.
    pub residual: f64,
    /// Set when the harmonic basis was near-degenerate on this window.
    pub ill_conditioned: bool,
}

fn hann_window(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 0.5 * (1.0 - (2.0 * std::f64::consts::PI * i as f64 / (n - 1) as f64).cos()))
        .collect()
}

/// Windowed correlation `sum_n w_n y_n exp(-i omega t_n)`.
fn correlation(y: &[Complex64], window: &[f64], dt: f64, omega: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, (&v, &w)) in y.iter().zip(window).enumerate() {
        let phase = -omega * dt * n as f64;
        acc += v * w * Complex64::from_polar(1.0, phase);
    }
    acc
}

/// `(A, A', A'')` of the windowed correlation at `omega`.
fn correlation_derivs(y: &[Complex64], window: &[f64], dt: f64, omega: f64) -> (Complex64, Complex64, Complex64) {
    let mut a0 = Complex64::new(0.0, 0.0);
    let mut a1 = Complex64::new(0.0, 0.0);
    let mut a2 = Complex64::new(0.0, 0.0);
    for (n, (&v, &w)) in y.iter().zip(window).enumerate() {
        let t = dt * n as f64;
        let term = v * w * Complex64::from_polar(1.0, -omega * t);
        a0 += term;
        a1 += term * Complex64::new(0.0, -t);
        a2 += term * (-t * t);
    }
    (a0, a1, a2)
}

/// Maximize `|correlation|` over `[lo, hi]`: golden-section bracketing down
/// to the comparison noise floor, then Newton on `d|A|^2/domega = 0`, whose
/// analytic derivatives recover the peak to machine precision.
fn refine_peak(y: &[Complex64], window: &[f64], dt: f64, lo: f64, hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut a = lo;
    let mut b = hi;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = correlation(y, window, dt, c).norm();
    let mut fd = correlation(y, window, dt, d).norm();
    while (b - a).abs() > 1e-7 * (hi - lo) {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = correlation(y, window, dt, c).norm();
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = correlation(y, window, dt, d).norm();
        }
    }
    let mut omega = 0.5 * (a + b);
    for _ in 0..50 {
        let (a0, a1, a2) = correlation_derivs(y, window, dt, omega);
        let g = 2.0 * (a0.conj() * a1).re;
        let gp = 2.0 * (a1.norm_sqr() + (a0.conj() * a2).re);
        if gp >= 0.0 || !gp.is_finite() {
            break;
        }
        let step = g / gp;
        let next = (omega - step).clamp(lo, hi);
        let moved = (next - omega).abs();
        omega = next;
        if moved <= 1e-13 * (1.0 + omega.abs()) {
            break;
        }
    }
    omega
}

/// Extract up to `n_freq` fundamental components `(omega, amplitude)` from a
/// uniformly sampled complex series, strongest first.
///
/// Each pass locates a candidate on the windowed DFT grid, refines it by
/// golden-section maximization of the windowed correlation, fits the complex
/// amplitude, and subtracts the component; two cleanup sweeps then re-fit
/// every component against the others' residual.
pub fn fundamental_frequencies(samples: &[Complex64], dt: f64, n_freq: usize) -> Result<Vec<(f64, Complex64)>> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::domain(format!("need at least {MIN_SAMPLES} samples, got {}", samples.len())));
    }
    if !(dt > 0.0) {
        return Err(Error::domain("dt must be positive".to_string()));
    }
    if n_freq == 0 || n_freq > 6 {
        return Err(Error::domain("n_freq must be between 1 and 6".to_string()));
    }
    let n = samples.len();
    let window = hann_window(n);
    let wsum: f64 = window.iter().sum();
    let bin = 2.0 * std::f64::consts::PI / (n as f64 * dt);
    let grid: Vec<f64> = (0..n).map(|j| (j as f64 - (n / 2) as f64) * bin).collect();

    let mut residual: Vec<Complex64> = samples.to_vec();
    let mut comps: Vec<(f64, Complex64)> = Vec::new();
    let mut first_amp = 0.0f64;
    for _ in 0..n_freq {
        // Coarse scan over the two-sided DFT grid.
        let mags = exec::map_indexed(grid.len(), |j| correlation(&residual, &window, dt, grid[j]).norm());
        let (jmax, peak) = mags
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(j, v)| (j, *v))
            .unwrap();
        if first_amp > 0.0 && peak / wsum < AMPLITUDE_FLOOR * first_amp {
            break;
        }
        let omega = refine_peak(&residual, &window, dt, grid[jmax] - bin, grid[jmax] + bin);
        let amp = correlation(&residual, &window, dt, omega) / wsum;
        if first_amp == 0.0 {
            first_amp = amp.norm();
            if first_amp == 0.0 {
                break;
            }
        }
        for (i, v) in residual.iter_mut().enumerate() {
            *v -= amp * Complex64::from_polar(1.0, omega * dt * i as f64);
        }
        comps.push((omega, amp));
    }
    // Cleanup sweeps: re-fit each component on the signal minus the others.
    for _ in 0..2 {
        for ci in 0..comps.len() {
            let (omega_old, amp_old) = comps[ci];
            for (i, v) in residual.iter_mut().enumerate() {
                *v += amp_old * Complex64::from_polar(1.0, omega_old * dt * i as f64);
            }
            let omega = refine_peak(&residual, &window, dt, omega_old - 0.5 * bin, omega_old + 0.5 * bin);
            let amp = correlation(&residual, &window, dt, omega) / wsum;
            for (i, v) in residual.iter_mut().enumerate() {
                *v -= amp * Complex64::from_polar(1.0, omega * dt * i as f64);
            }
            comps[ci] = (omega, amp);
        }
    }
    comps.sort_by(|a, b| b.1.norm().partial_cmp(&a.1.norm()).unwrap());
    Ok(comps)
}

/// Relative L2 residual of `samples` after least-squares projection onto the
/// harmonic basis `exp(i (k1 w1 + k2 w2) t)` with `|k1|, |k2| <= 3`.
pub fn quasiperiodic_residual(samples: &[Complex64], dt: f64, freq_basis: [f64; 2]) -> Result<ResidualReport> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::domain(format!("need at least {MIN_SAMPLES} samples, got {}", samples.len())));
    }
    let n = samples.len();
    let mut omegas = Vec::new();
    for k1 in -3i32..=3 {
        for k2 in -3i32..=3 {
            omegas.push(k1 as f64 * freq_basis[0] + k2 as f64 * freq_basis[1]);
        }
    }
    let m = omegas.len();
    // Basis matrix columns e_a(t_n); Gram and right-hand side.
    let basis: Vec<Vec<Complex64>> = omegas
        .iter()
        .map(|&w| (0..n).map(|i| Complex64::from_polar(1.0, w * dt * i as f64)).collect())
        .collect();
    let mut gram = vec![Complex64::new(0.0, 0.0); m * m];
    let mut rhs = vec![Complex64::new(0.0, 0.0); m];
    for a in 0..m {
        for b in 0..m {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                acc += basis[a][i].conj() * basis[b][i];
            }
            gram[a * m + b] = acc;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            acc += basis[a][i].conj() * samples[i];
        }
        rhs[a] = acc;
    }
    let (coeffs, ill_conditioned) = solve_complex(&mut gram, &mut rhs, m)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..n {
        let mut fit = Complex64::new(0.0, 0.0);
        for a in 0..m {
            fit += coeffs[a] * basis[a][i];
        }
        num += (samples[i] - fit).norm_sqr();
        den += samples[i].norm_sqr();
    }
    if den == 0.0 {
        return Err(Error::domain("zero signal".to_string()));
    }
    Ok(ResidualReport {
        residual: (num / den).sqrt(),
        ill_conditioned,
    })
}

/// In-place complex LU solve with partial pivoting; flags near-singular
/// systems through the pivot ratio.
fn solve_complex(a: &mut [Complex64], b: &mut [Complex64], m: usize) -> Result<(Vec<Complex64>, bool)> {
    let mut pivot_max = 0.0f64;
    let mut pivot_min = f64::INFINITY;
    for col in 0..m {
        let (mut best, mut best_val) = (col, a[col * m + col].norm());
        for row in col + 1..m {
            let v = a[row * m + col].norm();
            if v > best_val {
                best = row;
                best_val = v;
            }
        }
        if best_val == 0.0 {
            return Err(Error::numerical("singular projection matrix".to_string()));
        }
        if best != col {
            for k in 0..m {
                a.swap(col * m + k, best * m + k);
            }
            b.swap(col, best);
        }
        pivot_max = pivot_max.max(best_val);
        pivot_min = pivot_min.min(best_val);
        let diag = a[col * m + col];
        for row in col + 1..m {
            let factor = a[row * m + col] / diag;
            if factor.norm() == 0.0 {
                continue;
            }
            for k in col..m {
                let v = a[col * m + k];
                a[row * m + k] -= factor * v;
            }
            let v = b[col];
            b[row] -= factor * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); m];
    for col in (0..m).rev() {
        let mut acc = b[col];
        for k in col + 1..m {
            acc -= a[col * m + k] * x[k];
        }
        x[col] = acc / a[col * m + col];
    }
    Ok((x, pivot_min / pivot_max < 1e-12))
}
