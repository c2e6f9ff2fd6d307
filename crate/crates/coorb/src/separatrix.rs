//! Geometry of the mechanical phase portrait: level curves `h_delta`, the
//! minimal angle `phi_min(delta)`, region classification, equilibria, and the
//! libration amplitude.
//!
//! A level `h_delta = -eps ups0 B (1 + delta)` intersects `I1 = 0` where
//! `U_delta(phi) = 1 + delta + F(phi)` vanishes. With `X = sin(phi/2)` that
//! is the cubic `4X^3 - (5 + 3 delta) X + 1 = 0`, which this module keeps in
//! factored form so `U_delta` can be evaluated without cancellation down to
//! `delta = 1e-300`.

use crate::error::{Error, Result};
use crate::resonant::mechanical_h1;
use crate::system::{DerivedConstants, MassConfig};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
const PI: f64 = std::f64::consts::PI;

/// Classification tolerance on delta: levels within it count as separatrix.
pub const SEPARATRIX_DELTA_TOL: f64 = 1e-9;
/// Default validity band of the mechanical model, as a multiple of
/// `sqrt(eps B / A)`.
pub const DEFAULT_VALIDITY_MULTIPLE: f64 = 5.0;

/// A point on an `h_delta` level curve (non-negative `I1` branch).
#[derive(Debug, Clone, Copy)]
pub struct LevelCurveSample {
    pub delta: f64,
    pub phi1: f64,
    pub i1: f64,
    pub h: f64,
}

/// Orbit class of a point of the mechanical phase portrait.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitClass {
    L4Tadpole,
    L5Tadpole,
    Separatrix,
    Horseshoe,
    Nonresonant,
}

impl std::fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            OrbitClass::L4Tadpole => "L4_tadpole",
            OrbitClass::L5Tadpole => "L5_tadpole",
            OrbitClass::Separatrix => "separatrix",
            OrbitClass::Horseshoe => "horseshoe",
            OrbitClass::Nonresonant => "nonresonant",
        };
        write!(f, "{name}")
    }
}

/// Factored root data of the level cubic `4X^3 - (5 + 3 delta) X + 1`,
/// providing a cancellation-free `U_delta`.
#[derive(Debug, Clone, Copy)]
pub struct LevelGeometry {
    pub delta: f64,
    /// Second positive root minus one; positive for horseshoe levels,
    /// negative on the tadpole side.
    eta: f64,
    /// Negative root, equal to `-(x_min + 1 + eta)` since the cubic has no
    /// quadratic term.
    x_neg: f64,
    pub phi_min: f64,
    /// Upper endpoint of the `I1 >= 0` branch: `pi` for `delta >= 0`, the
    /// second turning angle on the tadpole side.
    pub phi_max: f64,
}

fn cubic(x: f64, delta: f64) -> f64 {
    4.0 * x * x * x - (5.0 + 3.0 * delta) * x + 1.0
}

fn cubic_prime(x: f64, delta: f64) -> f64 {
    12.0 * x * x - (5.0 + 3.0 * delta)
}

impl LevelGeometry {
    pub fn new(delta: f64) -> Result<Self> {
        if !delta.is_finite() || delta <= -2.0 / 3.0 + 1e-12 {
            return Err(Error::domain(format!("delta = {delta} at or below the L4/L5 level -2/3")));
        }
        let c = 5.0 + 3.0 * delta;
        let x_crit = (c / 12.0).sqrt();
        // Smallest positive root: bisection on [1e-12, X_crit] then Newton.
        if cubic(1e-12, delta) <= 0.0 || cubic(x_crit, delta) >= 0.0 {
            return Err(Error::domain(format!("no turning angle for delta = {delta}")));
        }
        let (mut lo, mut hi) = (1e-12, x_crit);
        for _ in 0..120 {
            let mid = 0.5 * (lo + hi);
            if cubic(mid, delta) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut x_min = 0.5 * (lo + hi);
        for _ in 0..4 {
            x_min -= cubic(x_min, delta) / cubic_prime(x_min, delta);
        }
        if !(x_min > 0.0 && x_min < 1.0) {
            return Err(Error::numerical(format!("turning-angle root out of range for delta = {delta}")));
        }
        // Second root as eta = X - 1: the cubic becomes
        // 4 eta^3 + 12 eta^2 + (7 - 3 delta) eta - 3 delta = 0, solved in eta
        // directly so tiny deltas keep full relative precision.
        let g = |e: f64| ((4.0 * e + 12.0) * e + (7.0 - 3.0 * delta)) * e - 3.0 * delta;
        let gp = |e: f64| (12.0 * e + 24.0) * e + (7.0 - 3.0 * delta);
        let mut eta = if delta >= 0.0 {
            let mut hi = (3.0 * delta / 7.0).max(1e-300);
            while g(hi) <= 0.0 {
                hi = hi * 2.0 + 1e-3;
            }
            let mut lo = 0.0;
            for _ in 0..120 {
                let mid = 0.5 * (lo + hi);
                if g(mid) <= 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        } else {
            let mut lo = x_crit - 1.0;
            let mut hi = 0.0;
            for _ in 0..120 {
                let mid = 0.5 * (lo + hi);
                if g(mid) <= 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        };
        for _ in 0..4 {
            let step = g(eta) / gp(eta);
            if step.is_finite() {
                eta -= step;
            }
        }
        let phi_min = 2.0 * x_min.asin();
        let phi_max = if delta >= 0.0 { PI } else { 2.0 * (1.0 + eta).asin() };
        Ok(LevelGeometry {
            delta,
            eta,
            x_neg: -(x_min + 1.0 + eta),
            phi_min,
            phi_max,
        })
    }

    /// `U_delta(phi) = 1 + delta + F(phi)` via the factored cubic. Exact
    /// relative precision near both the turning angle and `phi = pi`.
    pub fn u(&self, phi: f64) -> f64 {
        self.u_at_offset(phi - self.phi_min)
    }

    /// Same as [`u`](Self::u) but parametrized by the exact offset
    /// `phi - phi_min`, which the substituted quadratures carry natively.
    pub fn u_at_offset(&self, dphi: f64) -> f64 {
        let phi = self.phi_min + dphi;
        let x = (0.5 * phi).sin();
        // X - x_min = 2 cos((phi + phi_min)/4) sin(dphi/4).
        let fac0 = 2.0 * (0.25 * (phi + self.phi_min)).cos() * (0.25 * dphi).sin();
        // (1 + eta) - X = eta + 2 sin^2((pi - phi)/4).
        let s = (0.25 * (PI - phi)).sin();
        let fac1 = self.eta + 2.0 * s * s;
        let fac2 = x - self.x_neg;
        (4.0 / (3.0 * x)) * fac0 * fac1 * fac2
    }
}

/// Minimal angle of the `h_delta` level curve: smallest positive root of
/// `4X^3 - (5 + 3 delta)X + 1` mapped through `phi = 2 asin(X)`.
pub fn phi_min(delta: f64) -> Result<f64> {
    Ok(LevelGeometry::new(delta)?.phi_min)
}

/// Amplitude of the `zeta1` libration, `2 pi - 2 phi_min(delta)` (radians).
pub fn libration_amplitude(delta: f64) -> Result<f64> {
    if delta < 0.0 {
        return Err(Error::domain("libration amplitude is defined on the horseshoe side (delta >= 0)".to_string()));
    }
    Ok(TWO_PI - 2.0 * phi_min(delta)?)
}

/// Sample the `I1 >= 0` branch of the `h_delta` level curve at `n` angles
/// uniform on `[phi_min, phi_max]`.
pub fn level_curve(delta: f64, n: usize, c: &DerivedConstants, cfg: &MassConfig) -> Result<Vec<LevelCurveSample>> {
    if n < 2 {
        return Err(Error::domain("need at least two samples".to_string()));
    }
    let geom = LevelGeometry::new(delta)?;
    let h = -cfg.epsilon * cfg.upsilon0 * c.b * (1.0 + delta);
    let scale = (cfg.epsilon * c.b / c.a).sqrt();
    let span = geom.phi_max - geom.phi_min;
    Ok((0..n)
        .map(|i| {
            let frac = i as f64 / (n - 1) as f64;
            let dphi = span * frac;
            let u = geom.u_at_offset(dphi).max(0.0);
            LevelCurveSample {
                delta,
                phi1: geom.phi_min + dphi,
                i1: scale * u.sqrt(),
                h,
            }
        })
        .collect())
}

/// Classify a point of the mechanical portrait by its energy shift
/// `delta(I1, phi1) = -H1/(eps ups0 B) - 1`, with the validity band
/// `|I1| <= band_multiple * sqrt(eps B / A)`.
pub fn classify_with_band(
    i1: f64,
    phi1: f64,
    c: &DerivedConstants,
    cfg: &MassConfig,
    band_multiple: f64,
) -> Result<OrbitClass> {
    let i_max = band_multiple * (cfg.epsilon * c.b / c.a).sqrt();
    if i1.abs() > i_max {
        return Ok(OrbitClass::Nonresonant);
    }
    let h = mechanical_h1(i1, phi1, c, cfg)?;
    let delta = -h / (cfg.epsilon * cfg.upsilon0 * c.b) - 1.0;
    Ok(if delta > SEPARATRIX_DELTA_TOL {
        OrbitClass::Horseshoe
    } else if delta >= -SEPARATRIX_DELTA_TOL {
        OrbitClass::Separatrix
    } else if phi1.rem_euclid(TWO_PI) < PI {
        OrbitClass::L4Tadpole
    } else {
        OrbitClass::L5Tadpole
    })
}

/// [`classify_with_band`] at the default validity multiple.
pub fn classify(i1: f64, phi1: f64, c: &DerivedConstants, cfg: &MassConfig) -> Result<OrbitClass> {
    classify_with_band(i1, phi1, c, cfg, DEFAULT_VALIDITY_MULTIPLE)
}

/// A fixed point of the mechanical system.
#[derive(Debug, Clone, Copy)]
pub struct Equilibrium {
    pub name: &'static str,
    pub phi1: f64,
    pub i1: f64,
    pub delta: f64,
}

/// The three fixed points of the mechanical model: elliptic L4/L5 at
/// `phi1 = pi/3, 5 pi/3` (`delta = -2/3`) and hyperbolic L3 at `pi`
/// (`delta = 0`). L1 and L2 do not exist in this model.
pub fn lagrange_equilibria() -> [Equilibrium; 3] {
    [
        Equilibrium { name: "L4", phi1: PI / 3.0, i1: 0.0, delta: -2.0 / 3.0 },
        Equilibrium { name: "L3", phi1: PI, i1: 0.0, delta: 0.0 },
        Equilibrium { name: "L5", phi1: 5.0 * PI / 3.0, i1: 0.0, delta: -2.0 / 3.0 },
    ]
}

/// Write the separatrix sweep CSV: `delta,phi_min_rad,amplitude_deg`.
pub fn write_separatrix_csv<W: std::io::Write>(deltas: &[f64], mut w: W) -> Result<()> {
    writeln!(w, "delta,phi_min_rad,amplitude_deg")?;
    for &d in deltas {
        let pm = phi_min(d)?;
        let amp = (TWO_PI - 2.0 * pm).to_degrees();
        writeln!(w, "{:.16e},{:.16e},{:.16e}", d, pm, amp)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonant::mechanical_functions;
    use crate::system::derive_constants;

    fn fig3() -> (MassConfig, DerivedConstants) {
        let cfg = MassConfig::new(1.0, 1.0, 0.3, 1e-3, 2.0 * std::f64::consts::PI).unwrap();
        let c = derive_constants(&cfg).unwrap();
        (cfg, c)
    }

    #[test]
    fn phi_min_at_separatrix() {
        // X = (sqrt(2)-1)/2 solves the delta = 0 cubic exactly.
        let x = (2.0f64.sqrt() - 1.0) / 2.0;
        assert!((4.0 * x.powi(3) - 5.0 * x + 1.0).abs() < 1e-15);
        let pm = phi_min(0.0).unwrap();
        assert!((pm - 2.0 * x.asin()).abs() < 1e-14);
        assert!((pm - 0.4172333806182973).abs() < 1e-13);
        assert!((pm.to_degrees() - 23.905711781403916).abs() < 1e-10);
    }

    #[test]
    fn phi_min_slope() {
        let c0 = 3.0 * (2.0f64.sqrt() - 1.0) / ((3.0 * 2.0f64.sqrt() - 2.0) * (1.0 + 2.0 * 2.0f64.sqrt()).sqrt());
        assert!(c0 > 0.25 && c0 < 1.0 / 3.0);
        let h = 1e-4;
        let slope = (phi_min(h).unwrap() - phi_min(-h).unwrap()) / (2.0 * h);
        assert!((slope + c0).abs() < 1e-6, "slope {slope} vs -c0 {}", -c0);
    }

    #[test]
    fn cubic_residual_small() {
        for delta in [1e-8, 1e-4, 0.05, 0.3, 1.0, 6.5] {
            let pm = phi_min(delta).unwrap();
            let x = (0.5 * pm).sin();
            assert!(
                (4.0 * x.powi(3) - (5.0 + 3.0 * delta) * x + 1.0).abs() <= 1e-13,
                "residual at delta = {delta}"
            );
        }
        assert!(phi_min(-0.7).is_err());
    }

    #[test]
    fn factored_u_matches_direct() {
        for delta in [-0.3, 1e-6, 0.05, 0.3, 6.5] {
            let geom = LevelGeometry::new(delta).unwrap();
            for frac in [1e-4, 0.1, 0.5, 0.9, 0.999] {
                let phi = geom.phi_min + (geom.phi_max - geom.phi_min) * frac;
                let direct = 1.0 + delta + mechanical_functions(phi).unwrap().f;
                let fact = geom.u(phi);
                assert!(
                    (direct - fact).abs() <= 1e-12 * (1.0 + direct.abs()),
                    "delta {delta} phi {phi}: {direct} vs {fact}"
                );
            }
            // Vanishes at both ends.
            assert!(geom.u_at_offset(0.0).abs() < 1e-300);
            if delta < 0.0 {
                assert!(geom.u(geom.phi_max).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn u_at_turning_point_vanishes_to_high_precision() {
        for delta in [1e-6, 1e-3, 0.05, 0.3] {
            let geom = LevelGeometry::new(delta).unwrap();
            // U(phi_min) = 0 through the direct formula as well.
            let direct = 1.0 + delta + mechanical_functions(geom.phi_min).unwrap().f;
            assert!(direct.abs() < 1e-12, "delta {delta}: {direct:.3e}");
        }
    }

    #[test]
    fn level_curve_energy_invariant() {
        let (cfg, c) = fig3();
        for delta in [1e-4, 0.05, 0.2] {
            let samples = level_curve(delta, 33, &c, &cfg).unwrap();
            let h_expect = -cfg.epsilon * cfg.upsilon0 * c.b * (1.0 + delta);
            for s in &samples {
                let h = mechanical_h1(s.i1, s.phi1, &c, &cfg).unwrap();
                assert!(
                    (h - h_expect).abs() <= 1e-12 * h_expect.abs(),
                    "delta {delta} phi {}: {h} vs {h_expect}",
                    s.phi1
                );
            }
            // U(pi) = delta fixes the I1 value at opposition.
            let end = samples.last().unwrap();
            assert!((end.phi1 - PI).abs() < 1e-12);
            let expect = (cfg.epsilon * c.b * delta / c.a).sqrt();
            assert!((end.i1 - expect).abs() <= 1e-12 * expect.max(1e-12));
        }
        // The separatrix itself ends at (pi, 0).
        let sep = level_curve(0.0, 9, &c, &cfg).unwrap();
        let end = sep.last().unwrap();
        assert!((end.phi1 - PI).abs() < 1e-12 && end.i1.abs() < 1e-12);
    }

    #[test]
    fn classification() {
        let (cfg, c) = fig3();
        assert_eq!(classify(0.0, PI, &c, &cfg).unwrap(), OrbitClass::Separatrix);
        assert_eq!(classify(0.0, PI / 3.0, &c, &cfg).unwrap(), OrbitClass::L4Tadpole);
        assert_eq!(classify(0.0, 5.0 * PI / 3.0, &c, &cfg).unwrap(), OrbitClass::L5Tadpole);
        assert_eq!(classify(0.0, 2.8, &c, &cfg).unwrap(), OrbitClass::L4Tadpole);
        assert_eq!(classify(0.0, TWO_PI - 2.8, &c, &cfg).unwrap(), OrbitClass::L5Tadpole);
        let scale = (cfg.epsilon * c.b / c.a).sqrt();
        assert_eq!(classify(2.0 * scale, PI, &c, &cfg).unwrap(), OrbitClass::Horseshoe);
        assert_eq!(classify(10.0 * scale, PI, &c, &cfg).unwrap(), OrbitClass::Nonresonant);
        // Symmetries: I1 -> -I1 and phi -> 2pi - phi up to L4 <-> L5 swap.
        for (i1, phi) in [(0.5 * scale, 2.0), (1.5 * scale, 2.9)] {
            let a = classify(i1, phi, &c, &cfg).unwrap();
            assert_eq!(a, classify(-i1, phi, &c, &cfg).unwrap());
            let b = classify(i1, TWO_PI - phi, &c, &cfg).unwrap();
            let swapped = match a {
                OrbitClass::L4Tadpole => OrbitClass::L5Tadpole,
                OrbitClass::L5Tadpole => OrbitClass::L4Tadpole,
                other => other,
            };
            assert_eq!(b, swapped);
        }
    }

    #[test]
    fn equilibria_are_critical_points() {
        let (cfg, c) = fig3();
        let h = 1e-6;
        for eq in lagrange_equilibria() {
            let grad_phi = (mechanical_h1(0.0, eq.phi1 + h, &c, &cfg).unwrap()
                - mechanical_h1(0.0, eq.phi1 - h, &c, &cfg).unwrap())
                / (2.0 * h);
            let grad_i = (mechanical_h1(h, eq.phi1, &c, &cfg).unwrap()
                - mechanical_h1(-h, eq.phi1, &c, &cfg).unwrap())
                / (2.0 * h);
            assert!(grad_phi.abs() < 1e-10, "{}: dH/dphi = {grad_phi:.3e}", eq.name);
            assert!(grad_i.abs() < 1e-10, "{}: dH/dI = {grad_i:.3e}", eq.name);
            let delta = -mechanical_h1(eq.i1, eq.phi1, &c, &cfg).unwrap() / (cfg.epsilon * cfg.upsilon0 * c.b) - 1.0;
            assert!((delta - eq.delta).abs() < 1e-12);
        }
        // Hessian signs: F'' > 0 at pi (saddle of H with the -A I^2 term),
        // F'' < 0 at pi/3 (center).
        let f = |p: f64| mechanical_functions(p).unwrap().f;
        let second = |p: f64| (f(p + 1e-4) - 2.0 * f(p) + f(p - 1e-4)) / 1e-8;
        assert!(second(PI) > 0.0);
        assert!(second(PI / 3.0) < 0.0);
    }

    #[test]
    fn amplitude_monotone_and_large() {
        let mut prev = 0.0;
        for i in 0..=10 {
            let delta = 0.01 * i as f64;
            let amp = libration_amplitude(delta).unwrap().to_degrees();
            assert!(amp > 312.0, "amplitude {amp} at delta {delta}");
            assert!(amp > prev);
            prev = amp;
        }
        assert!((libration_amplitude(0.0).unwrap().to_degrees() - 312.1885764371922).abs() < 1e-9);
    }

    #[test]
    fn straddle_ordering_at_pi() {
        let (cfg, c) = fig3();
        // I1 at phi = pi grows with delta across the separatrix.
        let at_pi = |delta: f64| {
            let geom = LevelGeometry::new(delta).unwrap();
            (cfg.epsilon * c.b / c.a).sqrt() * geom.u(PI).max(0.0).sqrt()
        };
        assert!(at_pi(0.0) < at_pi(0.01));
        assert!(at_pi(0.01) < at_pi(0.05));
    }
}
