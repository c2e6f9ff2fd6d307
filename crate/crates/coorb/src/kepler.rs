//! Two-body machinery: Kepler's equation, planar elliptic elements, the
//! Poincaré complex chart, and the exact Kepler drift used by the splitting
//! integrator.
//!
//! The Poincaré chart `(Lambda_j, lambda_j, x_j)` is regular at zero
//! eccentricity; conversions route through the equinoctial pair
//! `(k, h) = e (cos varpi, sin varpi)` so nothing degenerates as `|x| -> 0`.

use crate::error::{Error, Result};
use crate::system::DerivedConstants;
use num_complex::Complex64;

pub const KEPLER_TOL: f64 = 1e-14;
pub const KEPLER_MAX_ITER: usize = 50;
/// Quasi-circular regime cap, well below parabolic.
pub const ECC_MAX: f64 = 0.9;

/// Planar 2-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }
    /// z-component of the planar cross product.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}
impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}
impl std::ops::Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

/// Canonical Poincaré variables of the two planets: actions `Lambda_j`, mean
/// longitudes `ell_j`, and the complex eccentricity variables
/// `x_j = sqrt(Lambda_j) sqrt(1 - sqrt(1 - e_j^2)) exp(i varpi_j)`.
/// The conjugate `xtilde = -i conj(x)` is implicit and never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareState {
    pub lambda1: f64,
    pub lambda2: f64,
    pub ell1: f64,
    pub ell2: f64,
    pub x1: Complex64,
    pub x2: Complex64,
}

/// Heliocentric positions `r_j` and rescaled barycentric momenta `p_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianState {
    pub p1: Vec2,
    pub r1: Vec2,
    pub p2: Vec2,
    pub r2: Vec2,
}

/// Solve `E - e sin E = M` by Newton iteration with starting guess
/// `E0 = M + e sin M`; residual tolerance 1e-14.
pub fn solve_kepler(mean_anomaly: f64, ecc: f64) -> Result<f64> {
    if !(0.0..=ECC_MAX).contains(&ecc) {
        return Err(Error::domain(format!("eccentricity {ecc} outside [0, {ECC_MAX}]")));
    }
    let m = mean_anomaly;
    let mut e_anom = m + ecc * m.sin();
    for _ in 0..KEPLER_MAX_ITER {
        let f = e_anom - ecc * e_anom.sin() - m;
        if f.abs() <= KEPLER_TOL {
            return Ok(e_anom);
        }
        e_anom -= f / (1.0 - ecc * e_anom.cos());
    }
    let f = e_anom - ecc * e_anom.sin() - m;
    if f.abs() <= KEPLER_TOL {
        Ok(e_anom)
    } else {
        Err(Error::numerical(format!(
            "Kepler solver stalled at residual {f:.3e} (M = {m}, e = {ecc})"
        )))
    }
}

/// Position and momentum of a planar elliptic orbit with elements
/// `(a, e, lambda, varpi)`, gravitational parameter `mu`, reduced mass `mhat`.
pub fn elements_to_cartesian(
    a: f64,
    ecc: f64,
    lambda: f64,
    varpi: f64,
    mu: f64,
    mhat: f64,
) -> Result<(Vec2, Vec2)> {
    if !(a > 0.0) {
        return Err(Error::domain(format!("semi-major axis must be positive, got {a}")));
    }
    let e_anom = solve_kepler(lambda - varpi, ecc)?;
    let (sin_e, cos_e) = e_anom.sin_cos();
    let beta = (1.0 - ecc * ecc).sqrt();
    let r_orb = Vec2::new(a * (cos_e - ecc), a * beta * sin_e);
    let r_norm = a * (1.0 - ecc * cos_e);
    let vscale = (mu * a).sqrt() / r_norm;
    let v_orb = Vec2::new(-vscale * sin_e, vscale * beta * cos_e);
    let (sw, cw) = varpi.sin_cos();
    let rot = |v: Vec2| Vec2::new(cw * v.x - sw * v.y, sw * v.x + cw * v.y);
    Ok((rot(r_orb), rot(v_orb) * mhat))
}

/// Per-planet conversion from Poincaré variables, routed through the
/// equinoctial components to stay regular at zero eccentricity.
fn poincare_planet_to_cartesian(lambda: f64, ell: f64, x: Complex64, mu: f64, mhat: f64) -> Result<(Vec2, Vec2)> {
    if !(lambda > 0.0) {
        return Err(Error::domain(format!("Lambda must be positive, got {lambda}")));
    }
    let xi = x.norm_sqr() / lambda;
    if !(xi < 1.0) {
        return Err(Error::domain("eccentricity variable outside chart domain (|x|^2 >= Lambda)".to_string()));
    }
    let ecc2 = xi * (2.0 - xi);
    let ecc = ecc2.sqrt();
    if ecc > ECC_MAX {
        return Err(Error::domain(format!("eccentricity {ecc} above the quasi-circular cap {ECC_MAX}")));
    }
    let a = (lambda / mhat).powi(2) / mu;
    // (k, h) = e (cos varpi, sin varpi) = x sqrt(2 - xi) / sqrt(Lambda).
    let kh = x * ((2.0 - xi).sqrt() / lambda.sqrt());
    let (k, h) = (kh.re, kh.im);
    // Generalized Kepler equation F - k sin F + h cos F = ell for the
    // eccentric longitude F = E + varpi.
    let mut f_long = ell + k * ell.sin() - h * ell.cos();
    let mut converged = false;
    for _ in 0..KEPLER_MAX_ITER {
        let (sf, cf) = f_long.sin_cos();
        let g = f_long - k * sf + h * cf - ell;
        if g.abs() <= KEPLER_TOL {
            converged = true;
            break;
        }
        f_long -= g / (1.0 - k * cf - h * sf);
    }
    if !converged {
        let g = f_long - k * f_long.sin() + h * f_long.cos() - ell;
        if g.abs() > KEPLER_TOL {
            return Err(Error::numerical("generalized Kepler iteration stalled".to_string()));
        }
    }
    let (sf, cf) = f_long.sin_cos();
    let beta = 1.0 / (1.0 + (1.0 - ecc2).sqrt());
    // Broucke-Cefola planar equinoctial position/velocity.
    let rx = a * ((1.0 - beta * h * h) * cf + beta * h * k * sf - k);
    let ry = a * ((1.0 - beta * k * k) * sf + beta * h * k * cf - h);
    let r_norm = a * (1.0 - k * cf - h * sf);
    let na2_r = (mu * a).sqrt() / r_norm;
    let vx = na2_r * (-(1.0 - beta * h * h) * sf + beta * h * k * cf);
    let vy = na2_r * ((1.0 - beta * k * k) * cf - beta * h * k * sf);
    Ok((Vec2::new(rx, ry), Vec2::new(vx, vy) * mhat))
}

/// The chart map: Poincaré variables of both planets to heliocentric
/// positions and momenta.
pub fn poincare_to_cartesian(s: &PoincareState, c: &DerivedConstants) -> Result<CartesianState> {
    let (r1, p1) = poincare_planet_to_cartesian(s.lambda1, s.ell1, s.x1, c.mu1, c.mhat1)?;
    let (r2, p2) = poincare_planet_to_cartesian(s.lambda2, s.ell2, s.x2, c.mu2, c.mhat2)?;
    Ok(CartesianState { p1, r1, p2, r2 })
}

fn cartesian_planet_to_poincare(r: Vec2, p: Vec2, mu: f64, mhat: f64) -> Result<(f64, f64, Complex64)> {
    let v = p * (1.0 / mhat);
    let r_norm = r.norm();
    if !(r_norm > 0.0) {
        return Err(Error::domain("position at the origin".to_string()));
    }
    let v2 = v.dot(v);
    let energy = 0.5 * v2 - mu / r_norm;
    if !(energy < 0.0) {
        return Err(Error::domain(format!("state is not elliptic (two-body energy {energy} >= 0)")));
    }
    let a = -0.5 * mu / energy;
    // Planar eccentricity vector components (k, h).
    let ang = r.cross(v);
    let k = (ang * v.y) / mu - r.x / r_norm;
    let h = (-ang * v.x) / mu - r.y / r_norm;
    let ecc2 = k * k + h * h;
    if ecc2.sqrt() > ECC_MAX {
        return Err(Error::domain("eccentricity above the quasi-circular cap".to_string()));
    }
    // Eccentric longitude from the regularized position relations:
    // r = a (1 - k cos F - h sin F), and the Broucke-Cefola inversion.
    let beta = 1.0 / (1.0 + (1.0 - ecc2).sqrt());
    let xr = r.x / a;
    let yr = r.y / a;
    // Solve the linear system for (cos F, sin F):
    //   xr + k = (1 - beta h^2) cF + beta h k sF
    //   yr + h = beta h k cF + (1 - beta k^2) sF
    let a11 = 1.0 - beta * h * h;
    let a12 = beta * h * k;
    let a22 = 1.0 - beta * k * k;
    let det = a11 * a22 - a12 * a12;
    let cf = (a22 * (xr + k) - a12 * (yr + h)) / det;
    let sf = (a11 * (yr + h) - a12 * (xr + k)) / det;
    let f_long = sf.atan2(cf);
    // Generalized Kepler: mean longitude.
    let ell = f_long - k * sf + h * cf;
    let lambda = mhat * (mu * a).sqrt();
    // x = sqrt(Lambda) (k + i h) / sqrt(2 - xi) with xi = 1 - sqrt(1 - e^2).
    let xi = ecc2 / (1.0 + (1.0 - ecc2).sqrt());
    let x = Complex64::new(k, h) * (lambda.sqrt() / (2.0 - xi).sqrt());
    Ok((lambda, ell, x))
}

/// Inverse chart map; requires both two-body orbits elliptic.
pub fn cartesian_to_poincare(s: &CartesianState, c: &DerivedConstants) -> Result<PoincareState> {
    let (lambda1, ell1, x1) = cartesian_planet_to_poincare(s.r1, s.p1, c.mu1, c.mhat1)?;
    let (lambda2, ell2, x2) = cartesian_planet_to_poincare(s.r2, s.p2, c.mu2, c.mhat2)?;
    Ok(PoincareState { lambda1, lambda2, ell1, ell2, x1, x2 })
}

/// Exact elliptic propagation of `(r, v)` around gravitational parameter `mu`
/// by time `dt`, via Gauss f-g functions and a Newton solve of the Kepler
/// equation in the eccentric-anomaly increment.
pub fn kepler_drift(r: Vec2, v: Vec2, mu: f64, dt: f64) -> Result<(Vec2, Vec2)> {
    let r0 = r.norm();
    let alpha = 2.0 / r0 - v.dot(v) / mu;
    if !(alpha > 0.0) {
        return Err(Error::numerical("Kepler drift on a non-elliptic arc".to_string()));
    }
    let a = 1.0 / alpha;
    let n = (mu / (a * a * a)).sqrt();
    let sig0 = r.dot(v) / (mu * a).sqrt();
    let q0 = 1.0 - r0 / a;
    let m = n * dt;
    let mut de = m;
    for _ in 0..KEPLER_MAX_ITER {
        let (s, c) = de.sin_cos();
        let f = de + sig0 * (1.0 - c) - q0 * s - m;
        if f.abs() <= KEPLER_TOL * (1.0 + m.abs()) {
            break;
        }
        de -= f / (1.0 + sig0 * s - q0 * c);
    }
    let (s, c) = de.sin_cos();
    let fres = de + sig0 * (1.0 - c) - q0 * s - m;
    if fres.abs() > 1e-12 * (1.0 + m.abs()) {
        return Err(Error::numerical("Kepler drift iteration stalled".to_string()));
    }
    let r1 = a * (1.0 - q0 * c + sig0 * s);
    let f = 1.0 - (a / r0) * (1.0 - c);
    let g = dt + (s - de) / n;
    let fdot = -(mu * a).sqrt() * s / (r1 * r0);
    let gdot = 1.0 - (a / r1) * (1.0 - c);
    Ok((r * f + v * g, r * fdot + v * gdot))
}
