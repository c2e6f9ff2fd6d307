//! The full planar three-body Hamiltonian, its vector field, conserved
//! quantities, and two time integrators: a symmetric Kepler-splitting scheme
//! composed to fourth order, and an adaptive Dormand–Prince 5(4) pair for
//! cross-validation.
//!
//! Hamiltonian (heliocentric, rescaled momenta):
//! `H = sum_j (|p_j|^2 / 2 mhat_j - mu_j mhat_j / |r_j|)
//!    + eps (p_1 . p_2 / m0 - m1 m2 / |r_1 - r_2|)`.

use crate::error::{Error, Result};
use crate::kepler::{kepler_drift, CartesianState, Vec2};
use crate::system::{derive_constants, MassConfig};

/// Sampled flow of the full problem with conserved-quantity series.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<CartesianState>,
    pub energy_series: Vec<f64>,
    pub angmom_series: Vec<f64>,
}

/// Integration scheme selector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scheme {
    /// Fixed-step symmetric splitting (exact Kepler drifts, order 4).
    Splitting,
    /// Embedded Dormand–Prince 5(4) with local relative tolerance.
    RkAdaptive { rel_tol: f64 },
}

fn check_separations(s: &CartesianState) -> Result<(f64, f64, f64)> {
    let r1 = s.r1.norm();
    let r2 = s.r2.norm();
    let d12 = (s.r1 - s.r2).norm();
    if r1 == 0.0 || r2 == 0.0 || d12 == 0.0 {
        return Err(Error::domain("collision configuration".to_string()));
    }
    Ok((r1, r2, d12))
}

/// Keplerian and perturbation parts of the energy, separately.
pub fn hamiltonian_split(s: &CartesianState, cfg: &MassConfig) -> Result<(f64, f64)> {
    let c = derive_constants(cfg)?;
    let (r1, r2, d12) = check_separations(s)?;
    let kepler = s.p1.dot(s.p1) / (2.0 * c.mhat1) - c.mu1 * c.mhat1 / r1
        + s.p2.dot(s.p2) / (2.0 * c.mhat2) - c.mu2 * c.mhat2 / r2;
    let pert = cfg.epsilon * (s.p1.dot(s.p2) / cfg.m0 - cfg.m1 * cfg.m2 / d12);
    Ok((kepler, pert))
}

/// Total energy `H(p, r)`.
pub fn hamiltonian_energy(s: &CartesianState, cfg: &MassConfig) -> Result<f64> {
    let (k, p) = hamiltonian_split(s, cfg)?;
    Ok(k + p)
}

/// Time derivative of the full state (canonical equations).
#[derive(Debug, Clone, Copy)]
pub struct StateDerivative {
    pub p1_dot: Vec2,
    pub r1_dot: Vec2,
    pub p2_dot: Vec2,
    pub r2_dot: Vec2,
}

/// Analytic gradient of the Hamiltonian: `r_dot = dH/dp`, `p_dot = -dH/dr`.
pub fn equations_of_motion(s: &CartesianState, cfg: &MassConfig) -> Result<StateDerivative> {
    let c = derive_constants(cfg)?;
    let (r1, r2, d12) = check_separations(s)?;
    let eps = cfg.epsilon;
    let delta = s.r1 - s.r2;
    let mutual = delta * (eps * cfg.m1 * cfg.m2 / (d12 * d12 * d12));
    Ok(StateDerivative {
        r1_dot: s.p1 * (1.0 / c.mhat1) + s.p2 * (eps / cfg.m0),
        r2_dot: s.p2 * (1.0 / c.mhat2) + s.p1 * (eps / cfg.m0),
        p1_dot: s.r1 * (-c.mu1 * c.mhat1 / (r1 * r1 * r1)) - mutual,
        p2_dot: s.r2 * (-c.mu2 * c.mhat2 / (r2 * r2 * r2)) + mutual,
    })
}

/// Total angular momentum (planar z-component), `sum_j r_j x p_j`.
pub fn angular_momentum(s: &CartesianState) -> f64 {
    s.r1.cross(s.p1) + s.r2.cross(s.p2)
}

struct SplitContext {
    mhat1: f64,
    mhat2: f64,
    mu1: f64,
    mu2: f64,
    m0: f64,
    eps_m1m2: f64,
    eps: f64,
    hill_radius: f64,
}

impl SplitContext {
    fn kick(&self, s: &mut CartesianState, h: f64) {
        let delta = s.r1 - s.r2;
        let d = delta.norm();
        let f = delta * (h * self.eps_m1m2 / (d * d * d));
        s.p1 = s.p1 - f;
        s.p2 = s.p2 + f;
    }
    fn jump(&self, s: &mut CartesianState, h: f64) {
        let scale = h * self.eps / self.m0;
        let (p1, p2) = (s.p1, s.p2);
        s.r1 = s.r1 + p2 * scale;
        s.r2 = s.r2 + p1 * scale;
    }
    fn drift(&self, s: &mut CartesianState, h: f64) -> Result<()> {
        let (r1, v1) = kepler_drift(s.r1, s.p1 * (1.0 / self.mhat1), self.mu1, h)?;
        let (r2, v2) = kepler_drift(s.r2, s.p2 * (1.0 / self.mhat2), self.mu2, h)?;
        s.r1 = r1;
        s.p1 = v1 * self.mhat1;
        s.r2 = r2;
        s.p2 = v2 * self.mhat2;
        Ok(())
    }
    /// Symmetric second-order base step: kick/jump half, full drift, jump/kick half.
    fn base_step(&self, s: &mut CartesianState, h: f64) -> Result<()> {
        self.kick(s, 0.5 * h);
        self.jump(s, 0.5 * h);
        self.drift(s, h)?;
        self.jump(s, 0.5 * h);
        self.kick(s, 0.5 * h);
        Ok(())
    }
    /// Fourth-order triple-jump composition of the base step.
    fn step(&self, s: &mut CartesianState, h: f64) -> Result<()> {
        const GAMMA: f64 = 1.3512071919596578; // 1 / (2 - 2^(1/3))
        self.base_step(s, GAMMA * h)?;
        self.base_step(s, (1.0 - 2.0 * GAMMA) * h)?;
        self.base_step(s, GAMMA * h)
    }
}

fn record(traj: &mut Trajectory, t: f64, s: &CartesianState, cfg: &MassConfig) -> Result<()> {
    traj.times.push(t);
    traj.states.push(*s);
    traj.energy_series.push(hamiltonian_energy(s, cfg)?);
    traj.angmom_series.push(angular_momentum(s));
    Ok(())
}

/// Integrate the full problem from `s0` to `t_end`.
///
/// `dt` is the step of the splitting scheme (adjusted to divide `t_end`
/// exactly) or the initial trial step of the adaptive scheme; samples are
/// recorded every `sample_stride` steps. Integration is refused inside the
/// Hill sphere `|r1 - r2| < eps^(1/3) a_star`, where the averaged model the
/// initial conditions come from is invalid; the partial trajectory is
/// returned inside the error.
pub fn integrate(
    s0: &CartesianState,
    cfg: &MassConfig,
    t_end: f64,
    dt: f64,
    scheme: Scheme,
    sample_stride: usize,
) -> Result<Trajectory> {
    if !(dt > 0.0) || !(t_end > 0.0) {
        return Err(Error::domain("dt and t_end must be positive".to_string()));
    }
    let c = derive_constants(cfg)?;
    let ctx = SplitContext {
        mhat1: c.mhat1,
        mhat2: c.mhat2,
        mu1: c.mu1,
        mu2: c.mu2,
        m0: cfg.m0,
        eps_m1m2: cfg.epsilon * cfg.m1 * cfg.m2,
        eps: cfg.epsilon,
        hill_radius: cfg.epsilon.cbrt() * c.a_star,
    };
    let stride = sample_stride.max(1);
    let mut traj = Trajectory {
        times: Vec::new(),
        states: Vec::new(),
        energy_series: Vec::new(),
        angmom_series: Vec::new(),
    };
    let mut s = *s0;
    check_separations(&s)?;
    record(&mut traj, 0.0, &s, cfg)?;
    let hill_abort = |t: f64, traj: Trajectory| Error::IntegrationAborted {
        t,
        reason: format!("inter-planet distance below the Hill radius {:.6e}", ctx.hill_radius),
        partial: Box::new(traj),
    };
    if (s.r1 - s.r2).norm() < ctx.hill_radius {
        return Err(hill_abort(0.0, traj));
    }

    match scheme {
        Scheme::Splitting => {
            let n_steps = (t_end / dt).round().max(1.0) as u64;
            let h = t_end / n_steps as f64;
            for step in 1..=n_steps {
                ctx.step(&mut s, h)?;
                let t = step as f64 * h;
                if (s.r1 - s.r2).norm() < ctx.hill_radius {
                    record(&mut traj, t, &s, cfg)?;
                    return Err(hill_abort(t, traj));
                }
                if step % stride as u64 == 0 || step == n_steps {
                    record(&mut traj, t, &s, cfg)?;
                }
            }
        }
        Scheme::RkAdaptive { rel_tol } => {
            if !(rel_tol > 0.0) {
                return Err(Error::domain("rel_tol must be positive".to_string()));
            }
            let sample_dt = dt * stride as f64;
            let mut t = 0.0;
            let mut h = dt.min(sample_dt);
            let mut next_sample = sample_dt.min(t_end);
            while t < t_end {
                let clipped = h.min(next_sample - t);
                let (s_new, err) = dp54_step(&s, cfg, clipped)?;
                let tol = rel_tol * state_norm(&s).max(1.0);
                if err <= tol || clipped < 1e-14 * t_end {
                    t += clipped;
                    s = s_new;
                    if (s.r1 - s.r2).norm() < ctx.hill_radius {
                        record(&mut traj, t, &s, cfg)?;
                        return Err(hill_abort(t, traj));
                    }
                    if t >= next_sample - 1e-12 * t_end {
                        record(&mut traj, t, &s, cfg)?;
                        next_sample = (next_sample + sample_dt).min(t_end);
                    }
                } else if clipped < 1e-15 * t_end {
                    return Err(Error::numerical("adaptive step rejection floor reached".to_string()));
                }
                let scale = if err > 0.0 { 0.9 * (tol / err).powf(0.2) } else { 5.0 };
                h = (clipped * scale.clamp(0.2, 5.0)).min(t_end);
            }
        }
    }
    Ok(traj)
}

fn state_norm(s: &CartesianState) -> f64 {
    (s.p1.dot(s.p1) + s.p2.dot(s.p2) + s.r1.dot(s.r1) + s.r2.dot(s.r2)).sqrt()
}

fn axpy(s: &CartesianState, scale: f64, d: &StateDerivative) -> CartesianState {
    CartesianState {
        p1: s.p1 + d.p1_dot * scale,
        r1: s.r1 + d.r1_dot * scale,
        p2: s.p2 + d.p2_dot * scale,
        r2: s.r2 + d.r2_dot * scale,
    }
}

fn add_scaled(acc: &mut StateDerivative, scale: f64, d: &StateDerivative) {
    acc.p1_dot = acc.p1_dot + d.p1_dot * scale;
    acc.r1_dot = acc.r1_dot + d.r1_dot * scale;
    acc.p2_dot = acc.p2_dot + d.p2_dot * scale;
    acc.r2_dot = acc.r2_dot + d.r2_dot * scale;
}

/// One Dormand–Prince 5(4) step; returns the 5th-order solution and the
/// embedded error estimate.
fn dp54_step(s: &CartesianState, cfg: &MassConfig, h: f64) -> Result<(CartesianState, f64)> {
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
        [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];
    let mut k: Vec<StateDerivative> = Vec::with_capacity(7);
    k.push(equations_of_motion(s, cfg)?);
    for i in 0..6 {
        let mut stage = *s;
        let mut acc = StateDerivative {
            p1_dot: Vec2::default(),
            r1_dot: Vec2::default(),
            p2_dot: Vec2::default(),
            r2_dot: Vec2::default(),
        };
        for (j, kj) in k.iter().enumerate() {
            if A[i][j] != 0.0 {
                add_scaled(&mut acc, A[i][j], kj);
            }
        }
        stage = axpy(&stage, h, &acc);
        k.push(equations_of_motion(&stage, cfg)?);
    }
    let mut acc5 = StateDerivative {
        p1_dot: Vec2::default(),
        r1_dot: Vec2::default(),
        p2_dot: Vec2::default(),
        r2_dot: Vec2::default(),
    };
    let mut acc4 = acc5;
    for (j, kj) in k.iter().enumerate() {
        if B5[j] != 0.0 {
            add_scaled(&mut acc5, B5[j], kj);
        }
        if B4[j] != 0.0 {
            add_scaled(&mut acc4, B4[j], kj);
        }
    }
    let y5 = axpy(s, h, &acc5);
    let y4 = axpy(s, h, &acc4);
    let err = ((y5.p1 - y4.p1).dot(y5.p1 - y4.p1)
        + (y5.r1 - y4.r1).dot(y5.r1 - y4.r1)
        + (y5.p2 - y4.p2).dot(y5.p2 - y4.p2)
        + (y5.r2 - y4.r2).dot(y5.r2 - y4.r2))
    .sqrt();
    Ok((y5, err))
}

impl Trajectory {
    /// Worst relative drift of the energy series against its first sample.
    pub fn energy_drift(&self) -> f64 {
        series_drift(&self.energy_series)
    }

    /// Worst relative drift of the angular-momentum series.
    pub fn angmom_drift(&self) -> f64 {
        series_drift(&self.angmom_series)
    }

    /// CSV export: header plus one row per sample, floats with 17 significant
    /// digits.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "t,p1x,p1y,r1x,r1y,p2x,p2y,r2x,r2y,energy,angmom")?;
        for (i, s) in self.states.iter().enumerate() {
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                self.times[i],
                s.p1.x,
                s.p1.y,
                s.r1.x,
                s.r1.y,
                s.p2.x,
                s.p2.y,
                s.r2.x,
                s.r2.y,
                self.energy_series[i],
                self.angmom_series[i]
            )?;
        }
        Ok(())
    }
}

fn series_drift(series: &[f64]) -> f64 {
    let first = series[0];
    let scale = first.abs().max(1e-300);
    series.iter().fold(0.0f64, |m, v| m.max((v - first).abs())) / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kepler::elements_to_cartesian;
    use rand::{Rng, SeedableRng};

    fn fig3() -> MassConfig {
        MassConfig::new(1.0, 1.0, 0.3, 1e-3, 2.0 * std::f64::consts::PI).unwrap()
    }

    fn circular_pair(cfg: &MassConfig, dl: f64) -> CartesianState {
        let c = derive_constants(cfg).unwrap();
        let (r1, p1) = elements_to_cartesian(c.a10, 0.0, dl, 0.0, c.mu1, c.mhat1).unwrap();
        let (r2, p2) = elements_to_cartesian(c.a20, 0.0, 0.0, 0.0, c.mu2, c.mhat2).unwrap();
        CartesianState { p1, r1, p2, r2 }
    }

    #[test]
    fn decoupled_energy() {
        // eps -> 0, both planets on circular unit orbits: H = -1/2 - 1/2.
        let cfg = MassConfig::new(1.0, 1.0, 1.0, 1e-300, 1.0).unwrap();
        let s = CartesianState {
            p1: Vec2::new(0.0, 1.0),
            r1: Vec2::new(1.0, 0.0),
            p2: Vec2::new(0.0, -1.0),
            r2: Vec2::new(-1.0, 0.0),
        };
        let (k, p) = hamiltonian_split(&s, &cfg).unwrap();
        assert!((k + 1.0).abs() < 1e-9);
        assert!(p.abs() < 1e-300 * 10.0);
    }

    #[test]
    fn antipodal_perturbation_value() {
        // Circular exact-resonant orbits at zeta1 = pi: the perturbation is
        // eps (p1 . p2 / m0 - m1 m2 / (a10 + a20)).
        let cfg = fig3();
        let s = circular_pair(&cfg, std::f64::consts::PI);
        let c = derive_constants(&cfg).unwrap();
        let (_, pert) = hamiltonian_split(&s, &cfg).unwrap();
        let expect = cfg.epsilon * (s.p1.dot(s.p2) / cfg.m0 - cfg.m1 * cfg.m2 / (c.a10 + c.a20));
        assert!((pert - expect).abs() < 1e-15);
        assert!(((s.r1 - s.r2).norm() - (c.a10 + c.a20)).abs() < 1e-13);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let cfg = fig3();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let s = CartesianState {
                p1: Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                r1: Vec2::new(rng.gen_range(0.5..1.5), rng.gen_range(-0.5..0.5)),
                p2: Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                r2: Vec2::new(rng.gen_range(-1.5..-0.5), rng.gen_range(-0.5..0.5)),
            };
            let d = equations_of_motion(&s, &cfg).unwrap();
            let h = 1e-6;
            let fd = |set: &dyn Fn(&mut CartesianState, f64)| {
                let mut sp = s;
                set(&mut sp, h);
                let mut sm = s;
                set(&mut sm, -h);
                (hamiltonian_energy(&sp, &cfg).unwrap() - hamiltonian_energy(&sm, &cfg).unwrap()) / (2.0 * h)
            };
            // r_dot = dH/dp, p_dot = -dH/dr for all 8 coordinates.
            let checks = [
                (d.r1_dot.x, fd(&|s, h| s.p1.x += h)),
                (d.r1_dot.y, fd(&|s, h| s.p1.y += h)),
                (d.r2_dot.x, fd(&|s, h| s.p2.x += h)),
                (d.r2_dot.y, fd(&|s, h| s.p2.y += h)),
                (d.p1_dot.x, -fd(&|s, h| s.r1.x += h)),
                (d.p1_dot.y, -fd(&|s, h| s.r1.y += h)),
                (d.p2_dot.x, -fd(&|s, h| s.r2.x += h)),
                (d.p2_dot.y, -fd(&|s, h| s.r2.y += h)),
            ];
            for (analytic, numeric) in checks {
                worst = worst.max((analytic - numeric).abs());
            }
        }
        assert!(worst < 1e-7, "worst gradient deviation {worst:.3e}");
    }

    #[test]
    fn angular_momentum_basics() {
        let s = CartesianState {
            p1: Vec2::new(0.0, 1.0),
            r1: Vec2::new(1.0, 0.0),
            p2: Vec2::default(),
            r2: Vec2::new(0.0, 1.0),
        };
        assert_eq!(angular_momentum(&s), 1.0);
        let reflected = CartesianState {
            p1: Vec2::new(0.0, -1.0),
            r1: Vec2::new(1.0, 0.0),
            p2: Vec2::default(),
            r2: Vec2::new(0.0, -1.0),
        };
        assert_eq!(angular_momentum(&reflected), -1.0);
    }

    #[test]
    fn angmom_time_derivative_vanishes() {
        let cfg = fig3();
        let s = circular_pair(&cfg, 2.1);
        let d = equations_of_motion(&s, &cfg).unwrap();
        // d/dt (r x p) = r_dot x p + r x p_dot, summed over both planets.
        let ldot = d.r1_dot.cross(s.p1) + s.r1.cross(d.p1_dot) + d.r2_dot.cross(s.p2) + s.r2.cross(d.p2_dot);
        assert!(ldot.abs() < 1e-13, "{ldot:.3e}");
    }

    #[test]
    fn splitting_exact_in_decoupled_limit() {
        // eps = 0 (numerically: tiny) on a circular orbit: after 10 periods
        // the state returns to itself.
        let cfg = MassConfig::new(1.0, 1.0, 1.0, 1e-300, 1.0).unwrap();
        let c = derive_constants(&cfg).unwrap();
        let (r1, p1) = elements_to_cartesian(c.a10, 0.0, 0.3, 0.0, c.mu1, c.mhat1).unwrap();
        let (r2, p2) = elements_to_cartesian(c.a20, 0.0, 2.7, 0.0, c.mu2, c.mhat2).unwrap();
        let s0 = CartesianState { p1, r1, p2, r2 };
        let period = 2.0 * std::f64::consts::PI / cfg.upsilon0 * (c.a10 / c.a_star).powf(1.5);
        let traj = integrate(&s0, &cfg, 10.0 * period, period / 64.0, Scheme::Splitting, 1 << 30).unwrap();
        let last = traj.states.last().unwrap();
        assert!((last.r1 - s0.r1).norm() < 1e-10);
        assert!((last.p1 - s0.p1).norm() < 1e-10);
    }

    #[test]
    fn splitting_order_check() {
        // Halving dt cuts the energy error by about 2^4.
        let cfg = fig3();
        let s0 = circular_pair(&cfg, 2.0 * std::f64::consts::FRAC_PI_3);
        let t_end = 20.0;
        let drift_at = |dt: f64| {
            integrate(&s0, &cfg, t_end, dt, Scheme::Splitting, 7)
                .unwrap()
                .energy_drift()
        };
        let e1 = drift_at(0.02);
        let e2 = drift_at(0.01);
        let ratio = e1 / e2;
        assert!(ratio > 16.0 * 0.8 && ratio < 16.0 * 1.2 * 2.0, "order ratio {ratio}");
    }

    #[test]
    fn time_reversal() {
        let cfg = fig3();
        let s0 = circular_pair(&cfg, 2.0 * std::f64::consts::FRAC_PI_3);
        let t_end = 10.0;
        let fwd = integrate(&s0, &cfg, t_end, 5e-3, Scheme::Splitting, 1 << 30).unwrap();
        let mut back = *fwd.states.last().unwrap();
        back.p1 = back.p1 * -1.0;
        back.p2 = back.p2 * -1.0;
        let rev = integrate(&back, &cfg, t_end, 5e-3, Scheme::Splitting, 1 << 30).unwrap();
        let mut fin = *rev.states.last().unwrap();
        fin.p1 = fin.p1 * -1.0;
        fin.p2 = fin.p2 * -1.0;
        let err = (fin.r1 - s0.r1).norm() + (fin.r2 - s0.r2).norm() + (fin.p1 - s0.p1).norm() + (fin.p2 - s0.p2).norm();
        assert!(err < 1e-9, "reversal error {err:.3e}");
    }

    #[test]
    fn schemes_agree() {
        let cfg = fig3();
        let s0 = circular_pair(&cfg, 2.0 * std::f64::consts::FRAC_PI_3);
        let t_end = 5.0;
        let a = integrate(&s0, &cfg, t_end, 1e-3, Scheme::Splitting, 1 << 30).unwrap();
        let b = integrate(&s0, &cfg, t_end, 1e-3, Scheme::RkAdaptive { rel_tol: 1e-12 }, 5000).unwrap();
        let sa = a.states.last().unwrap();
        let sb = b.states.last().unwrap();
        assert!((sa.r1 - sb.r1).norm() < 1e-7, "{:?}", (sa.r1 - sb.r1).norm());
        assert!((sa.r2 - sb.r2).norm() < 1e-7);
    }

    #[test]
    fn hill_sphere_abort() {
        let cfg = fig3();
        // Planets started almost on top of each other.
        let s0 = circular_pair(&cfg, 1e-4);
        let err = integrate(&s0, &cfg, 10.0, 1e-3, Scheme::Splitting, 1).unwrap_err();
        match err {
            Error::IntegrationAborted { partial, .. } => {
                assert!(!partial.times.is_empty());
            }
            other => panic!("expected Hill abort, got {other:?}"),
        }
    }

    #[test]
    fn csv_format() {
        let cfg = fig3();
        let s0 = circular_pair(&cfg, 2.0);
        let traj = integrate(&s0, &cfg, 0.1, 0.05, Scheme::Splitting, 1).unwrap();
        let mut buf = Vec::new();
        traj.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "t,p1x,p1y,r1x,r1y,p2x,p2y,r2x,r2y,energy,angmom");
        let first = lines.next().unwrap();
        assert_eq!(first.split(',').count(), 11);
        // 17 significant digits round-trip exactly.
        let v: f64 = first.split(',').nth(10).unwrap().parse().unwrap();
        assert_eq!(v, traj.angmom_series[0]);
    }
}
