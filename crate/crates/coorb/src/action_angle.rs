//! Action-angle data for the mechanical system: period and frequency of a
//! `h_delta` level, the action integral, the near-separatrix split evaluation
//! valid down to `delta = 1e-300`, the horseshoe time profile, and the 2d
//! co-orbital torus embedding.
//!
//! The period is `T = (2 / (ups0 sqrt(eps A B))) * I_delta` with
//! `I_delta = int_{phi_min}^{pi} dphi / sqrt(U_delta)`. Split mode evaluates
//! `I_delta = I1 + I2 + I3` where `I2` integrates the parabolic well
//! `delta + (7/24)(phi - pi)^2` in closed form
//! (`sqrt(24/7) asinh(sqrt(7/54) pi / sqrt(delta))`), leaving two
//! delta-regular quadratures.

use crate::error::{Error, Result};
use crate::quad;
use crate::resonant::mechanical_f_prime;
use crate::separatrix::{phi_min, LevelGeometry};
use crate::system::{DerivedConstants, MassConfig};

const PI: f64 = std::f64::consts::PI;
const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Quadrature strategy for the level-curve integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadMode {
    /// Substituted adaptive quadrature of `1/sqrt(U)`; delta >= 1e-8.
    Direct,
    /// Three-piece split with the arcsinh closed form; delta >= 1e-300.
    Split,
}

/// Period, frequency, frequency derivative, and action of a `h_delta` level.
#[derive(Debug, Clone, Copy)]
pub struct FrequencyRecord {
    pub delta: f64,
    pub period: f64,
    pub nu: f64,
    pub nu_prime: f64,
    pub j1: f64,
}

/// The sampled 2d co-orbital torus embedding.
#[derive(Debug, Clone)]
pub struct HorseshoeTorus {
    pub delta: f64,
    pub kappa: f64,
    /// Embedding constants `(c1, c2, c3, c4)`.
    pub c: [f64; 4],
    pub theta1_grid: Vec<f64>,
    /// `zeta1` profile `F_delta(theta1)`.
    pub f_samples: Vec<f64>,
    /// Scaled action profile `G_delta(theta1)` with `sqrt(eps) G = Z1`.
    pub g_samples: Vec<f64>,
    /// Frequency pair `(nu_delta, upsilon0)`.
    pub omega: [f64; 2],
}

/// One period of the horseshoe flow from the turning point
/// `(I1, phi1) = (0, phi_min)`.
#[derive(Debug, Clone)]
pub struct HorseshoeProfile {
    pub delta: f64,
    pub times: Vec<f64>,
    pub zeta1: Vec<f64>,
    pub z1: Vec<f64>,
    /// Period measured by the integration itself (turning-point return).
    pub period: f64,
}

fn check_mode_range(delta: f64, mode: QuadMode) -> Result<()> {
    let ok = match mode {
        QuadMode::Direct => (1e-8..).contains(&delta),
        QuadMode::Split => (1e-300..=0.3).contains(&delta),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::domain(format!("delta = {delta} outside the {mode:?}-mode range")))
    }
}

/// Integral of `weight(phi) / sqrt(U_delta(phi))` over `[phi_min, hi]` with
/// the `phi = phi_min + u^2` substitution removing the turning-point
/// singularity.
fn inv_sqrt_u_integral(
    geom: &LevelGeometry,
    hi: f64,
    weight: &dyn Fn(f64) -> f64,
    rel_tol: f64,
) -> Result<quad::QuadResult> {
    let span = hi - geom.phi_min;
    if span <= 0.0 {
        return Ok(quad::QuadResult { value: 0.0, abs_error: 0.0 });
    }
    let f = |u: f64| {
        let dphi = u * u;
        let phi = geom.phi_min + dphi;
        2.0 * u * weight(phi) / geom.u_at_offset(dphi).sqrt()
    };
    quad::adaptive(&f, 0.0, span.sqrt(), rel_tol, 1e-300)
}

/// Closed form of the parabolic-well piece
/// `int_{pi/3}^{pi} dphi / sqrt(delta + (7/24)(phi - pi)^2)`.
pub fn split_i2_closed_form(delta: f64) -> f64 {
    (24.0f64 / 7.0).sqrt() * ((7.0f64 / 54.0).sqrt() * PI / delta.sqrt()).asinh()
}

/// The difference kernel `1/sqrt(U_delta(pi - t)) - 1/sqrt(U0_delta)` with
/// `U0 = delta + (7/24) t^2`, in the algebraically equivalent form
/// `-q / (sqrt(U) sqrt(U0) (sqrt(U) + sqrt(U0)))` where
/// `q = U - U0 = F(pi - t) + 1 - (7/24) t^2` comes from the stabilized
/// series. Smooth and roundoff-safe down to `delta = 1e-300`.
pub(crate) fn split_i3_integrand(delta: f64) -> impl Fn(f64) -> f64 {
    move |t: f64| {
        if t == 0.0 {
            return 0.0;
        }
        let q = crate::resonant::parabolic_deviation(t);
        let u0 = delta + 7.0 / 24.0 * t * t;
        let u = u0 + q;
        let (su, su0) = (u.sqrt(), u0.sqrt());
        -q / (su * su0 * (su + su0))
    }
}

/// `I_delta` by the requested mode, with an error estimate.
fn i_delta(geom: &LevelGeometry, mode: QuadMode, rel_tol: f64) -> Result<quad::QuadResult> {
    match mode {
        QuadMode::Direct => inv_sqrt_u_integral(geom, PI, &|_| 1.0, rel_tol),
        QuadMode::Split => {
            let i1 = inv_sqrt_u_integral(geom, PI / 3.0, &|_| 1.0, rel_tol)?;
            let i2 = split_i2_closed_form(geom.delta);
            let i3 = quad::adaptive(&split_i3_integrand(geom.delta), 0.0, 2.0 * PI / 3.0, rel_tol, 1e-300)?;
            Ok(quad::QuadResult {
                value: i1.value + i2 + i3.value,
                abs_error: i1.abs_error + i3.abs_error,
            })
        }
    }
}

fn nu_from_i(i_delta: f64, c: &DerivedConstants, cfg: &MassConfig) -> (f64, f64) {
    let period = 2.0 * i_delta / (cfg.upsilon0 * (cfg.epsilon * c.a * c.b).sqrt());
    (period, TWO_PI / period)
}

fn nu_at(delta: f64, mode: QuadMode, c: &DerivedConstants, cfg: &MassConfig) -> Result<f64> {
    let geom = LevelGeometry::new(delta)?;
    let i = i_delta(&geom, mode, 1e-13)?;
    Ok(nu_from_i(i.value, c, cfg).1)
}

/// Full frequency record at `delta`. The derivative `nu'` uses fourth-order
/// central differences on a geometric grid of ratio 1.05 in `ln delta`.
pub fn period(delta: f64, c: &DerivedConstants, cfg: &MassConfig, mode: QuadMode) -> Result<FrequencyRecord> {
    check_mode_range(delta, mode)?;
    let geom = LevelGeometry::new(delta)?;
    let i = i_delta(&geom, mode, 1e-13)?;
    let (period, nu) = nu_from_i(i.value, c, cfg);
    let h = 1.05f64.ln();
    let x = delta.ln();
    let stencil = [
        nu_at((x - 2.0 * h).exp(), mode, c, cfg)?,
        nu_at((x - h).exp(), mode, c, cfg)?,
        nu_at((x + h).exp(), mode, c, cfg)?,
        nu_at((x + 2.0 * h).exp(), mode, c, cfg)?,
    ];
    let dnu_dx = (stencil[0] - 8.0 * stencil[1] + 8.0 * stencil[2] - stencil[3]) / (12.0 * h);
    let j1 = action_j1_with_mode(delta, c, cfg, mode)?;
    Ok(FrequencyRecord {
        delta,
        period,
        nu,
        nu_prime: dnu_dx / delta,
        j1,
    })
}

/// The semi-fast action `J1(delta) = (2/pi) sqrt(eps B / A)
/// int_{phi_min}^{pi} sqrt(U_delta) dphi` (loop area over 2 pi), so that
/// `|dJ1/dh| = 1/nu_delta`.
pub fn action_j1(delta: f64, c: &DerivedConstants, cfg: &MassConfig) -> Result<f64> {
    check_mode_range(delta, QuadMode::Direct)?;
    action_j1_with_mode(delta, c, cfg, QuadMode::Direct)
}

fn action_j1_with_mode(delta: f64, c: &DerivedConstants, cfg: &MassConfig, _mode: QuadMode) -> Result<f64> {
    // sqrt(U) has no endpoint singularity once substituted; the same
    // integrand works for any delta the geometry supports.
    let geom = LevelGeometry::new(delta)?;
    let span = PI - geom.phi_min;
    let f = |u: f64| {
        let dphi = u * u;
        2.0 * u * geom.u_at_offset(dphi).max(0.0).sqrt()
    };
    let q = quad::adaptive(&f, 0.0, span.sqrt(), 1e-13, 1e-300)?;
    Ok(2.0 / PI * (cfg.epsilon * c.b / c.a).sqrt() * q.value)
}

/// Integrate the mechanical flow `phi1' = -2 ups0 A I1`,
/// `I1' = -eps ups0 B F'(phi1)` over one period from `(0, phi_min(delta))`,
/// recording `n` uniform samples. Classic RK4 with step fine enough that the
/// turning-point return closes to 1e-8.
pub fn horseshoe_profile(delta: f64, n: usize, c: &DerivedConstants, cfg: &MassConfig) -> Result<HorseshoeProfile> {
    if !(1e-8..=20.0).contains(&delta) {
        return Err(Error::domain(format!("delta = {delta} outside the profile range")));
    }
    if n < 16 {
        return Err(Error::domain("need at least 16 samples".to_string()));
    }
    let rec = period(delta, c, cfg, QuadMode::Direct)?;
    let t_period = rec.period;
    let a = c.a;
    let b = c.b;
    let ups = cfg.upsilon0;
    let eps = cfg.epsilon;
    let deriv = |state: [f64; 2]| -> [f64; 2] {
        [-eps * ups * b * mechanical_f_prime(state[1]), -2.0 * ups * a * state[0]]
    };
    let rk4 = |state: [f64; 2], h: f64| -> [f64; 2] {
        let k1 = deriv(state);
        let k2 = deriv([state[0] + 0.5 * h * k1[0], state[1] + 0.5 * h * k1[1]]);
        let k3 = deriv([state[0] + 0.5 * h * k2[0], state[1] + 0.5 * h * k2[1]]);
        let k4 = deriv([state[0] + h * k3[0], state[1] + h * k3[1]]);
        [
            state[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            state[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ]
    };
    // Substeps per sample chosen so the whole period gets >= 2^16 RK4 steps.
    let substeps = ((1 << 16) / n + 1).next_power_of_two();
    let h = t_period / (n * substeps) as f64;
    let phi_start = phi_min(delta)?;
    let mut state = [0.0f64, phi_start];
    let mut times = Vec::with_capacity(n + 1);
    let mut zeta1 = Vec::with_capacity(n + 1);
    let mut z1 = Vec::with_capacity(n + 1);
    // Track the second I1 zero crossing (the full-period return).
    let mut crossings = 0usize;
    let mut measured_period = f64::NAN;
    let mut prev = state;
    let mut prev_t = 0.0;
    for step in 0..n * substeps {
        if step % substeps == 0 {
            times.push(step as f64 * h);
            z1.push(state[0]);
            zeta1.push(state[1]);
        }
        let t_next = (step + 1) as f64 * h;
        let next = rk4(state, h);
        if step > 0 && prev[0] != 0.0 && next[0] * prev[0] <= 0.0 && next[0] != prev[0] {
            crossings += 1;
            if crossings == 2 {
                // Refine the crossing time by bisection on sub-integrations.
                let mut lo = prev_t;
                let mut hi = t_next;
                let mut s_lo = prev;
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    let s_mid = rk4(s_lo, mid - lo);
                    if s_mid[0] * s_lo[0] <= 0.0 && s_mid[0] != s_lo[0] {
                        hi = mid;
                    } else {
                        lo = mid;
                        s_lo = s_mid;
                    }
                }
                measured_period = 0.5 * (lo + hi);
            }
        }
        prev = next;
        prev_t = t_next;
        state = next;
    }
    times.push(t_period);
    z1.push(state[0]);
    zeta1.push(state[1]);
    if !measured_period.is_finite() {
        // The second crossing is the period return itself; stepping exactly
        // one period can land on it within roundoff.
        let closure = (state[0]).abs() / (eps * c.b / c.a).sqrt().max(1e-300);
        if closure < 1e-6 {
            measured_period = t_period;
        } else {
            return Err(Error::numerical("horseshoe profile did not close".to_string()));
        }
    }
    Ok(HorseshoeProfile {
        delta,
        times,
        zeta1,
        z1,
        period: measured_period,
    })
}

/// Sample the 2d co-orbital torus at the given `theta1` grid:
/// `lambda1 = c1 + theta2 + (1 - kappa) F_delta(theta1)`,
/// `lambda2 = c2 + theta2 - kappa F_delta(theta1)`,
/// `Lambda1 = c3 + sqrt(eps) G_delta`, `Lambda2 = c4 - sqrt(eps) G_delta`,
/// `x_j = 0`, with `(c1, c2, c3, c4) = (0, 0, Lambda10, Lambda20)` and
/// frequencies `(nu_delta, upsilon0)`.
pub fn torus_embedding(
    delta: f64,
    theta1_grid: &[f64],
    c: &DerivedConstants,
    cfg: &MassConfig,
) -> Result<HorseshoeTorus> {
    if theta1_grid.is_empty() {
        return Err(Error::domain("empty theta grid".to_string()));
    }
    let rec = period(delta, c, cfg, QuadMode::Direct)?;
    // Dense profile, then linear phase lookup is avoided: sample the profile
    // exactly at the requested phases by reusing the profile integrator on a
    // grid that contains them.
    let n_dense = 4096;
    let profile = horseshoe_profile(delta, n_dense, c, cfg)?;
    let sqrt_eps = cfg.epsilon.sqrt();
    let mut f_samples = Vec::with_capacity(theta1_grid.len());
    let mut g_samples = Vec::with_capacity(theta1_grid.len());
    for &theta in theta1_grid {
        let phase = theta.rem_euclid(TWO_PI) / TWO_PI;
        // Catmull-style local cubic interpolation on the dense uniform grid.
        let x = phase * n_dense as f64;
        let i = (x.floor() as usize).min(n_dense - 1);
        let frac = x - i as f64;
        let idx = |k: isize| -> usize { ((i as isize + k).rem_euclid(n_dense as isize)) as usize };
        let interp = |v: &[f64]| -> f64 {
            let (p0, p1, p2, p3) = (v[idx(-1)], v[idx(0)], v[idx(1)], v[idx(2)]);
            let t = frac;
            p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + t * (3.0 * (p1 - p2) + p3 - p0)))
        };
        f_samples.push(interp(&profile.zeta1[..n_dense]));
        g_samples.push(interp(&profile.z1[..n_dense]) / sqrt_eps);
    }
    Ok(HorseshoeTorus {
        delta,
        kappa: c.kappa,
        c: [0.0, 0.0, c.lambda10, c.lambda20],
        theta1_grid: theta1_grid.to_vec(),
        f_samples,
        g_samples,
        omega: [rec.nu, cfg.upsilon0],
    })
}

impl HorseshoeTorus {
    /// Poincaré state of the torus point `(theta1_grid[i], theta2)`.
    pub fn poincare_point(&self, i: usize, theta2: f64, cfg: &MassConfig) -> crate::kepler::PoincareState {
        let f = self.f_samples[i];
        let g = self.g_samples[i] * cfg.epsilon.sqrt();
        crate::kepler::PoincareState {
            lambda1: self.c[2] + g,
            lambda2: self.c[3] - g,
            ell1: self.c[0] + theta2 + (1.0 - self.kappa) * f,
            ell2: self.c[1] + theta2 - self.kappa * f,
            x1: num_complex::Complex64::new(0.0, 0.0),
            x2: num_complex::Complex64::new(0.0, 0.0),
        }
    }

    /// CSV export: `theta1,zeta1,Z1,lambda1,lambda2,Lambda1,Lambda2` at
    /// `theta2 = 0`.
    pub fn write_csv<W: std::io::Write>(&self, cfg: &MassConfig, mut w: W) -> Result<()> {
        writeln!(w, "theta1,zeta1,Z1,lambda1,lambda2,Lambda1,Lambda2")?;
        let sqrt_eps = cfg.epsilon.sqrt();
        for (i, &theta) in self.theta1_grid.iter().enumerate() {
            let f = self.f_samples[i];
            let g = self.g_samples[i] * sqrt_eps;
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                theta,
                f,
                g,
                self.c[0] + (1.0 - self.kappa) * f,
                self.c[1] - self.kappa * f,
                self.c[2] + g,
                self.c[3] - g
            )?;
        }
        Ok(())
    }
}

/// Asymptotic frequency `ups0 sqrt(eps) K / |ln delta|` of Lemma-2 type.
pub fn nu_asymptotic(delta: f64, c: &DerivedConstants, cfg: &MassConfig) -> f64 {
    cfg.upsilon0 * cfg.epsilon.sqrt() * c.k / delta.ln().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonant::mechanical_h1;
    use crate::system::derive_constants;

    fn fig3() -> (MassConfig, DerivedConstants) {
        let cfg = MassConfig::new(1.0, 1.0, 0.3, 1e-3, 2.0 * std::f64::consts::PI).unwrap();
        let c = derive_constants(&cfg).unwrap();
        (cfg, c)
    }

    #[test]
    fn i2_closed_form_vs_quadrature() {
        for (delta, expect) in [(1e-2, 5.778734940127267), (1e-4, 10.038722601414019)] {
            let closed = split_i2_closed_form(delta);
            assert!((closed - expect).abs() / expect < 1e-13);
            let f = |t: f64| 1.0 / (delta + 7.0 / 24.0 * t * t).sqrt();
            let q = quad::adaptive(&f, 0.0, 2.0 * PI / 3.0, 1e-12, 1e-300).unwrap();
            assert!((closed - q.value).abs() / closed < 1e-10, "{closed} vs {}", q.value);
        }
    }

    #[test]
    fn reference_period_values() {
        let (cfg, c) = fig3();
        // Oracle values from an independent quadrature of the period integral.
        let t = period(0.05, &c, &cfg, QuadMode::Direct).unwrap();
        assert!((t.period - 32.85605912314731).abs() / t.period < 1e-9, "{}", t.period);
        assert!((t.nu - 0.19123368641472405).abs() / t.nu < 1e-9);
        assert!((t.nu * t.period - TWO_PI).abs() < 1e-14);
        let t = period(0.01, &c, &cfg, QuadMode::Direct).unwrap();
        assert!((t.period - 41.8392767637391).abs() / t.period < 1e-9);
    }

    #[test]
    fn modes_agree_in_overlap() {
        let (cfg, c) = fig3();
        for delta in [1e-4, 1e-6] {
            let a = period(delta, &c, &cfg, QuadMode::Direct).unwrap();
            let b = period(delta, &c, &cfg, QuadMode::Split).unwrap();
            assert!(
                (a.period - b.period).abs() / a.period <= 1e-8,
                "delta {delta}: {} vs {}",
                a.period,
                b.period
            );
        }
    }

    #[test]
    fn mode_ranges_enforced() {
        let (cfg, c) = fig3();
        assert!(period(1e-9, &c, &cfg, QuadMode::Direct).is_err());
        assert!(period(0.5, &c, &cfg, QuadMode::Split).is_err());
        assert!(period(1e-50, &c, &cfg, QuadMode::Split).is_ok());
    }

    #[test]
    fn asymptotic_frequency_limit() {
        // nu |ln delta| / (ups sqrt(eps) K) -> 1 with O(1/|ln delta|) residual.
        let (cfg, c) = fig3();
        let ratio = |delta: f64| {
            let nu = period(delta, &c, &cfg, QuadMode::Split).unwrap().nu;
            nu / nu_asymptotic(delta, &c, &cfg)
        };
        let r1 = ratio(1e-10);
        let r2 = ratio(1e-40);
        let r3 = ratio(1e-160);
        assert!((r1 - 1.0).abs() > (r2 - 1.0).abs());
        assert!((r2 - 1.0).abs() > (r3 - 1.0).abs());
        assert!((r3 - 1.0).abs() < 0.01, "{r3}");
    }

    #[test]
    fn frequency_monotonicity() {
        let (cfg, c) = fig3();
        let mut prev_t = f64::INFINITY;
        let mut prev_nu = 0.0;
        for i in 0..20 {
            let delta = 10f64.powf(-6.0 + 5.7 * i as f64 / 19.0);
            let rec = period(delta, &c, &cfg, QuadMode::Direct).unwrap();
            assert!(rec.period < prev_t);
            assert!(rec.nu > prev_nu);
            assert!(rec.j1 > 0.0 && rec.nu_prime > 0.0);
            prev_t = rec.period;
            prev_nu = rec.nu;
        }
    }

    #[test]
    fn action_identity_and_scaling() {
        let (cfg, c) = fig3();
        // |dJ1/dh| = 1/nu: finite differences across delta = 0.05.
        let delta = 0.05;
        let s = 1e-4;
        let jp = action_j1(delta + s, &c, &cfg).unwrap();
        let jm = action_j1(delta - s, &c, &cfg).unwrap();
        let dh = -cfg.epsilon * cfg.upsilon0 * c.b * (2.0 * s);
        let nu = period(delta, &c, &cfg, QuadMode::Direct).unwrap().nu;
        let ratio = (jp - jm) / dh;
        assert!(
            (ratio.abs() - 1.0 / nu).abs() / (1.0 / nu) < 1e-5,
            "|dJ/dh| = {} vs 1/nu = {}",
            ratio.abs(),
            1.0 / nu
        );
        // Monotone in delta.
        assert!(jp > jm);
        // J1 scales as sqrt(eps) at fixed delta.
        let half = MassConfig { epsilon: cfg.epsilon / 2.0, ..cfg };
        let ch = derive_constants(&half).unwrap();
        let j_half = action_j1(delta, &ch, &half).unwrap();
        let j_full = action_j1(delta, &c, &cfg).unwrap();
        assert!((j_half / j_full - 0.5f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn profile_closure_and_turning_points() {
        let (cfg, c) = fig3();
        let delta = 0.05;
        let profile = horseshoe_profile(delta, 256, &c, &cfg).unwrap();
        let rec = period(delta, &c, &cfg, QuadMode::Direct).unwrap();
        assert!(
            (profile.period - rec.period).abs() / rec.period < 1e-8,
            "profile period {} vs quadrature {}",
            profile.period,
            rec.period
        );
        // Returns to the start.
        let scale = (cfg.epsilon * c.b / c.a).sqrt();
        let last = profile.z1.last().unwrap();
        assert!((last / scale).abs() < 1e-8);
        assert!((profile.zeta1.last().unwrap() - profile.zeta1[0]).abs() < 1e-8);
        // zeta1 range hits the turning angles.
        let pm = phi_min(delta).unwrap();
        let max = profile.zeta1.iter().cloned().fold(f64::MIN, f64::max);
        let min = profile.zeta1.iter().cloned().fold(f64::MAX, f64::min);
        assert!((min - pm).abs() < 1e-6);
        assert!((max - (TWO_PI - pm)).abs() < 1e-6);
        // |Z1| at phi = pi equals sqrt(eps B delta / A): read off the sample
        // nearest to pi.
        let (mut best, mut z_at_pi) = (f64::MAX, 0.0);
        for (i, &z) in profile.zeta1.iter().enumerate() {
            if (z - PI).abs() < best {
                best = (z - PI).abs();
                z_at_pi = profile.z1[i];
            }
        }
        let expect = (cfg.epsilon * c.b * delta / c.a).sqrt();
        assert!((z_at_pi.abs() - expect).abs() / expect < 1e-2, "{z_at_pi} vs {expect}");
        // Energy constant along the orbit.
        let h0 = -cfg.epsilon * cfg.upsilon0 * c.b * (1.0 + delta);
        for (i, &z) in profile.z1.iter().enumerate() {
            let h = mechanical_h1(z, profile.zeta1[i], &c, &cfg).unwrap();
            assert!((h - h0).abs() / h0.abs() < 1e-10);
        }
        // Time symmetry zeta1(T - t) = zeta1(t).
        let n = profile.zeta1.len() - 1;
        for i in 1..n / 2 {
            assert!(
                (profile.zeta1[i] - profile.zeta1[n - i]).abs() < 1e-8,
                "reversal at sample {i}"
            );
        }
    }

    #[test]
    fn torus_consistency() {
        let (cfg, c) = fig3();
        let grid: Vec<f64> = (0..64).map(|i| TWO_PI * i as f64 / 64.0).collect();
        let torus = torus_embedding(0.05, &grid, &c, &cfg).unwrap();
        assert_eq!(torus.omega[1], cfg.upsilon0);
        let sqrt_eps = cfg.epsilon.sqrt();
        for i in 0..grid.len() {
            let s = torus.poincare_point(i, 0.37, &cfg);
            // lambda1 - lambda2 reproduces the zeta1 profile exactly.
            assert!((s.ell1 - s.ell2 - torus.f_samples[i]).abs() < 1e-14);
            // Lambda1 + Lambda2 constant (Z2 = 0 on the torus).
            assert!((s.lambda1 + s.lambda2 - (c.lambda10 + c.lambda20)).abs() < 1e-14);
            assert!((s.lambda1 - c.lambda10 - sqrt_eps * torus.g_samples[i]).abs() < 1e-14);
            // F_delta(0) is the turning angle.
            if i == 0 {
                assert!((torus.f_samples[0] - phi_min(0.05).unwrap()).abs() < 1e-6);
            }
            // Every torus point maps to a valid Cartesian state outside the
            // Hill sphere.
            let cart = crate::kepler::poincare_to_cartesian(&s, &c).unwrap();
            let d = (cart.r1 - cart.r2).norm();
            assert!(d >= cfg.epsilon.cbrt() * c.a_star, "Hill violation at node {i}");
        }
        // Energy identity at every node.
        for i in 0..grid.len() {
            let h = mechanical_h1(sqrt_eps * torus.g_samples[i], torus.f_samples[i], &c, &cfg).unwrap();
            let expect = -cfg.epsilon * cfg.upsilon0 * c.b * (1.0 + 0.05);
            assert!((h - expect).abs() / expect.abs() < 1e-9, "node {i}: {h} vs {expect}");
        }
    }

    #[test]
    fn torus_profile_symmetry() {
        let (cfg, c) = fig3();
        let grid: Vec<f64> = (0..32).map(|i| TWO_PI * i as f64 / 32.0).collect();
        let torus = torus_embedding(0.02, &grid, &c, &cfg).unwrap();
        // F_delta(2pi - theta) = F_delta(theta).
        for i in 1..16 {
            assert!(
                (torus.f_samples[i] - torus.f_samples[32 - i]).abs() < 1e-7,
                "symmetry at node {i}"
            );
        }
    }
}
