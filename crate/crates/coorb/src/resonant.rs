//! The resonant chart `(Z, zeta)`, the uncoupled chart `(I, phi)`, the
//! D'Alembert first integral, the closed-form mechanical functions of the
//! reduced model, and the numerically averaged circular Hamiltonian.
//!
//! Resonant variables: `Z1 = Lambda1 - Lambda10`,
//! `Z2 = (Lambda1 - Lambda10) + (Lambda2 - Lambda20)`, `zeta1 = ell1 - ell2`,
//! `zeta2 = ell2`. The uncoupled chart separates fast and semi-fast actions:
//! `I1 = Z1 - kappa Z2`, `I2 = Z2`, `phi1 = zeta1`, `phi2 = zeta2 + kappa zeta1`.

use crate::error::{Error, Result};
use crate::kepler::Vec2;
use crate::quad;
use crate::system::{DerivedConstants, MassConfig};
use num_complex::Complex64;

/// Default collision guard on `zeta1` (distance to 0 mod 2*pi) for the
/// averaged operations.
pub const DEFAULT_DELTA_HAT: f64 = 0.05;

/// Hard singularity guard for the mechanical functions.
pub const PHI_SINGULARITY_GUARD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonantState {
    pub z1: f64,
    pub z2: f64,
    pub zeta1: f64,
    pub zeta2: f64,
    pub x1: Complex64,
    pub x2: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncoupledState {
    pub i1: f64,
    pub i2: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub w1: Complex64,
    pub w2: Complex64,
}

pub fn to_resonant(s: &crate::kepler::PoincareState, c: &DerivedConstants) -> ResonantState {
    let z1 = s.lambda1 - c.lambda10;
    ResonantState {
        z1,
        z2: z1 + (s.lambda2 - c.lambda20),
        zeta1: s.ell1 - s.ell2,
        zeta2: s.ell2,
        x1: s.x1,
        x2: s.x2,
    }
}

pub fn from_resonant(s: &ResonantState, c: &DerivedConstants) -> crate::kepler::PoincareState {
    crate::kepler::PoincareState {
        lambda1: c.lambda10 + s.z1,
        lambda2: c.lambda20 + (s.z2 - s.z1),
        ell1: s.zeta1 + s.zeta2,
        ell2: s.zeta2,
        x1: s.x1,
        x2: s.x2,
    }
}

pub fn to_uncoupled(s: &ResonantState, c: &DerivedConstants) -> UncoupledState {
    UncoupledState {
        i1: s.z1 - c.kappa * s.z2,
        i2: s.z2,
        phi1: s.zeta1,
        phi2: s.zeta2 + c.kappa * s.zeta1,
        w1: s.x1,
        w2: s.x2,
    }
}

pub fn from_uncoupled(s: &UncoupledState, c: &DerivedConstants) -> ResonantState {
    ResonantState {
        z1: s.i1 + c.kappa * s.i2,
        z2: s.i2,
        zeta1: s.phi1,
        zeta2: s.phi2 - c.kappa * s.phi1,
        x1: s.w1,
        x2: s.w2,
    }
}

/// The D'Alembert first integral of the averaged problem,
/// `C = Z2 - |x1|^2 - |x2|^2`. It equals the total angular momentum minus
/// the constant `Lambda10 + Lambda20`.
pub fn dalembert_integral(s: &ResonantState) -> f64 {
    s.z2 - s.x1.norm_sqr() - s.x2.norm_sqr()
}

/// The closed-form functions of the mechanical reduction at angle `phi1`:
/// `F = (2/3)(cos phi - 1/D)`, the secular coefficients `A~`, `B~`, and the
/// normalized mutual distance `D = sqrt(2 - 2 cos phi)`.
#[derive(Debug, Clone, Copy)]
pub struct MechanicalFunctions {
    pub f: f64,
    pub a_tilde: f64,
    pub b_tilde: Complex64,
    pub d_dist: f64,
}

pub fn mechanical_functions(phi1: f64) -> Result<MechanicalFunctions> {
    let wrapped = phi1.rem_euclid(2.0 * std::f64::consts::PI);
    if wrapped < PHI_SINGULARITY_GUARD || 2.0 * std::f64::consts::PI - wrapped < PHI_SINGULARITY_GUARD {
        return Err(Error::domain(format!("phi1 = {phi1} within {PHI_SINGULARITY_GUARD} of the collision singularity")));
    }
    let cos1 = wrapped.cos();
    let d = (2.0 - 2.0 * cos1).sqrt();
    let d5 = d.powi(5);
    let f = 2.0 / 3.0 * (cos1 - 1.0 / d);
    let a_tilde = (5.0 * (2.0 * wrapped).cos() - 13.0 + 8.0 * cos1) / (4.0 * d5) - cos1;
    let e = |k: f64| Complex64::from_polar(1.0, k * wrapped);
    let b_tilde = e(-2.0) - (e(-3.0) + e(-2.0) * 16.0 - e(-1.0) * 26.0 + e(1.0) * 9.0) / (8.0 * d5);
    Ok(MechanicalFunctions { f, a_tilde, b_tilde, d_dist: d })
}

/// Derivative `F'(phi) = (2/3) sin(phi) (D^-3 - 1)`.
pub fn mechanical_f_prime(phi1: f64) -> f64 {
    let d = (2.0 - 2.0 * phi1.cos()).sqrt();
    2.0 / 3.0 * phi1.sin() * (1.0 / (d * d * d) - 1.0)
}

/// Deviation of `F` from its parabolic approximation at the hyperbolic
/// point: `F(pi - t) + 1 - (7/24) t^2`. Direct evaluation cancels
/// catastrophically for small `t`; below the switch the Taylor series about
/// `pi` is used instead (even powers only, coefficients exact).
pub fn parabolic_deviation(t: f64) -> f64 {
    let t2 = t * t;
    if t.abs() < 0.15 {
        t2 * t2
            * (-37.0 / 1152.0
                + t2 * (67.0 / 138240.0
                    + t2 * (-271.0 / 4423680.0
                        + t2 * (-48473.0 / 11147673600.0 + t2 * (-2710957.0 / 5885971660800.0)))))
    } else {
        let phi = std::f64::consts::PI - t;
        let d = (2.0 - 2.0 * phi.cos()).sqrt();
        2.0 / 3.0 * (phi.cos() - 1.0 / d) + 1.0 - 7.0 / 24.0 * t2
    }
}

/// The mechanical Hamiltonian `upsilon0 (-A I1^2 + eps B F(phi1))`.
pub fn mechanical_h1(i1: f64, phi1: f64, c: &DerivedConstants, cfg: &MassConfig) -> Result<f64> {
    let mf = mechanical_functions(phi1)?;
    Ok(cfg.upsilon0 * (-c.a * i1 * i1 + cfg.epsilon * c.b * mf.f))
}

fn guard_zeta1(zeta1: f64, delta_hat: f64) -> Result<f64> {
    let wrapped = zeta1.rem_euclid(2.0 * std::f64::consts::PI);
    let dist = wrapped.min(2.0 * std::f64::consts::PI - wrapped);
    if dist < delta_hat {
        return Err(Error::domain(format!(
            "zeta1 = {zeta1} within the collision guard {delta_hat} of conjunction"
        )));
    }
    Ok(wrapped)
}

/// Circular-orbit cartesian data for one planet at mean longitude `lam`.
fn circular_planet(a: f64, lam: f64, mu: f64, mhat: f64) -> (Vec2, Vec2) {
    let (s, c) = lam.sin_cos();
    let r = Vec2::new(a * c, a * s);
    let v = (mu / a).sqrt();
    let p = Vec2::new(-v * s, v * c) * mhat;
    (r, p)
}

/// Average of the perturbation over the fast angle `zeta2` on the circular
/// manifold (`x = 0`), by the trapezoidal rule on a uniform periodic grid
/// with automatic doubling from `n_nodes` (converges to < 1e-12; cap 2^14).
///
/// `z = (Z1, Z2)` fixes the actions; `zeta1` must stay `delta_hat` away from
/// the collision at 0 mod 2*pi.
pub fn averaged_perturbation_circular(
    z: [f64; 2],
    zeta1: f64,
    cfg: &MassConfig,
    c: &DerivedConstants,
    n_nodes: usize,
    delta_hat: f64,
) -> Result<f64> {
    let zeta1 = guard_zeta1(zeta1, delta_hat)?;
    if n_nodes < 64 {
        return Err(Error::domain("n_nodes must be at least 64".to_string()));
    }
    let lambda1 = c.lambda10 + z[0];
    let lambda2 = c.lambda20 + (z[1] - z[0]);
    if lambda1 <= 0.0 || lambda2 <= 0.0 {
        return Err(Error::domain("actions outside the chart".to_string()));
    }
    let a1 = (lambda1 / c.mhat1).powi(2) / c.mu1;
    let a2 = (lambda2 / c.mhat2).powi(2) / c.mu2;
    let integrand = |zeta2: f64| -> f64 {
        let (r1, p1) = circular_planet(a1, zeta1 + zeta2, c.mu1, c.mhat1);
        let (r2, p2) = circular_planet(a2, zeta2, c.mu2, c.mhat2);
        cfg.epsilon * (p1.dot(p2) / cfg.m0 - cfg.m1 * cfg.m2 / (r1 - r2).norm())
    };
    quad::periodic_average(&integrand, n_nodes, 1e-12)
}

/// Keplerian part of the resonant Hamiltonian at actions `z`.
pub fn keplerian_resonant(z: [f64; 2], c: &DerivedConstants) -> f64 {
    let l1 = c.lambda10 + z[0];
    let l2 = c.lambda20 + (z[1] - z[0]);
    -0.5 * c.mhat1.powi(3) * c.mu1.powi(2) / (l1 * l1) - 0.5 * c.mhat2.powi(3) * c.mu2.powi(2) / (l2 * l2)
}

/// The averaged circular Hamiltonian `H_K(Z) + <H_P>_zeta2`, the generator of
/// the phase portraits.
pub fn averaged_hamiltonian_circular(z: [f64; 2], zeta1: f64, cfg: &MassConfig, c: &DerivedConstants) -> Result<f64> {
    Ok(keplerian_resonant(z, c) + averaged_perturbation_circular(z, zeta1, cfg, c, 256, DEFAULT_DELTA_HAT)?)
}
