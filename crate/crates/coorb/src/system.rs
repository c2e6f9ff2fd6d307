//! Physical configuration and the closed-form constants of the co-orbital
//! reduction.
//!
//! The two planets have masses `eps * m1` and `eps * m2` around a central body
//! of mass `m0`; the gravitational constant is 1. Everything downstream (the
//! mechanical system, the semi-fast frequency, the secular spectrum) is
//! expressed through the parameters collected in [`DerivedConstants`].

use crate::error::{Error, Result};

/// Physical input: masses, the small parameter, and the exact-resonance mean
/// motion `upsilon0` (rad per time unit).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassConfig {
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
    pub epsilon: f64,
    pub upsilon0: f64,
}

impl MassConfig {
    pub fn new(m0: f64, m1: f64, m2: f64, epsilon: f64, upsilon0: f64) -> Result<Self> {
        let cfg = MassConfig { m0, m1, m2, epsilon, upsilon0 };
        cfg.validate()?;
        Ok(cfg)
    }

    /// All inputs must be positive and finite. The paper orders the planetary
    /// masses `m1 <= m2`; that convention is not enforced here because the
    /// reference configuration of its own phase portraits violates it.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("m0", self.m0),
            ("m1", self.m1),
            ("m2", self.m2),
            ("epsilon", self.epsilon),
            ("upsilon0", self.upsilon0),
        ];
        for (name, v) in fields {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::config(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }

    /// Parse the `key = value` configuration format. Keys `m0`, `m1`, `m2`,
    /// `epsilon`, `upsilon0` are all required; `#` starts a comment.
    pub fn from_key_value_str(text: &str) -> Result<Self> {
        let mut vals: [Option<f64>; 5] = [None; 5];
        const KEYS: [&str; 5] = ["m0", "m1", "m2", "epsilon", "upsilon0"];
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::config(format!("line {}: expected `key = value`", lineno + 1)))?;
            let key = key.trim();
            let idx = KEYS
                .iter()
                .position(|k| *k == key)
                .ok_or_else(|| Error::config(format!("line {}: unknown key `{key}`", lineno + 1)))?;
            if vals[idx].is_some() {
                return Err(Error::config(format!("duplicate key `{key}`")));
            }
            let parsed: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::config(format!("line {}: cannot parse `{}` as a number", lineno + 1, value.trim())))?;
            vals[idx] = Some(parsed);
        }
        for (i, k) in KEYS.iter().enumerate() {
            if vals[i].is_none() {
                return Err(Error::config(format!("missing required key `{k}`")));
            }
        }
        MassConfig::new(
            vals[0].unwrap(),
            vals[1].unwrap(),
            vals[2].unwrap(),
            vals[3].unwrap(),
            vals[4].unwrap(),
        )
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_key_value_str(&text)
    }

    /// Orbital period of the exact resonance, `2 pi / upsilon0`.
    pub fn fast_period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.upsilon0
    }
}

/// Closed-form constants of the reduction, all derived from a [`MassConfig`].
///
/// `mu_j = m0 + eps m_j` and `mhat_j = m0 m_j / (m0 + eps m_j)` are the exact
/// Kepler parameters; `a`, `b`, `d`, `e` are the reduced-model coefficients in
/// their O(eps)-simplified form (masses `m_j`, `m0`), and `k` is the
/// separatrix frequency constant with `k^2 = (7 pi^2 / 6) a b`.
#[derive(Debug, Clone, Copy)]
pub struct DerivedConstants {
    pub mu1: f64,
    pub mu2: f64,
    pub mhat1: f64,
    pub mhat2: f64,
    /// Exact-resonant actions.
    pub lambda10: f64,
    pub lambda20: f64,
    /// Exact-resonant semi-major axes.
    pub a10: f64,
    pub a20: f64,
    /// Common semi-major axis of the shifted expansion point.
    pub a_star: f64,
    /// Shifted actions (both planets at `a_star`).
    pub lambda1_star: f64,
    pub lambda2_star: f64,
    /// Mass ratio m1 / (m1 + m2).
    pub kappa: f64,
    pub a: f64,
    pub b: f64,
    pub d: f64,
    pub e: f64,
    pub k: f64,
}

/// Evaluate every closed-form constant of the reduction.
pub fn derive_constants(cfg: &MassConfig) -> Result<DerivedConstants> {
    cfg.validate()?;
    let MassConfig { m0, m1, m2, epsilon, upsilon0 } = *cfg;
    let mu1 = m0 + epsilon * m1;
    let mu2 = m0 + epsilon * m2;
    let mhat1 = m0 * m1 / mu1;
    let mhat2 = m0 * m2 / mu2;
    let ucbrt = upsilon0.cbrt();
    let a10 = mu1.cbrt() / (ucbrt * ucbrt);
    let a20 = mu2.cbrt() / (ucbrt * ucbrt);
    let a_star = m0.cbrt() / (ucbrt * ucbrt);
    let lambda10 = mhat1 * (mu1 * a10).sqrt();
    let lambda20 = mhat2 * (mu2 * a20).sqrt();
    let lambda1_star = mhat1 * mu1.sqrt() * m0.powf(1.0 / 6.0) / ucbrt;
    let lambda2_star = mhat2 * mu2.sqrt() * m0.powf(1.0 / 6.0) / ucbrt;
    let kappa = m1 / (m1 + m2);
    let m0_23 = m0.cbrt() * m0.cbrt();
    let a = 1.5 * ucbrt / m0_23 * (1.0 / m1 + 1.0 / m2);
    let d = m1 * m2 / m0;
    let b = 1.5 * m0_23 / ucbrt * d;
    let e = 1.5 * ucbrt / (m0_23 * (m1 + m2));
    let k = (7.0 * std::f64::consts::PI.powi(2) / 6.0 * a * b).sqrt();
    Ok(DerivedConstants {
        mu1,
        mu2,
        mhat1,
        mhat2,
        lambda10,
        lambda20,
        a10,
        a20,
        a_star,
        lambda1_star,
        lambda2_star,
        kappa,
        a,
        b,
        d,
        e,
        k,
    })
}

/// Gascheau's linear-stability criterion for the equilateral configurations:
/// `27 (m0 M1 + m0 M2 + M1 M2) < (m0 + M1 + M2)^2` with `M_j = eps m_j`.
pub fn gascheau_stable(cfg: &MassConfig) -> bool {
    let em1 = cfg.epsilon * cfg.m1;
    let em2 = cfg.epsilon * cfg.m2;
    let total = cfg.m0 + em1 + em2;
    27.0 * (cfg.m0 * em1 + cfg.m0 * em2 + em1 * em2) < total * total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3() -> MassConfig {
        MassConfig::new(1.0, 1.0, 0.3, 1e-3, 2.0 * std::f64::consts::PI).unwrap()
    }

    #[test]
    fn reference_constants() {
        let c = derive_constants(&fig3()).unwrap();
        assert!((c.kappa - 1.0 / 1.3).abs() < 1e-15);
        assert!((c.a - 11.994255966186188).abs() / c.a < 1e-12);
        assert!((c.b - 0.24386673156268004).abs() / c.b < 1e-12);
        assert!((c.d - 0.3).abs() < 1e-15);
        assert!((c.e - 2.129157863820033).abs() / c.e < 1e-12);
        assert!((c.k - 5.8034494069232165).abs() / c.k < 1e-12);
    }

    #[test]
    fn equal_masses_zero_epsilon_limit() {
        // eps -> 0 with upsilon0 = 1 forces unit semi-major axes and actions.
        let cfg = MassConfig::new(1.0, 1.0, 1.0, 1e-14, 1.0).unwrap();
        let c = derive_constants(&cfg).unwrap();
        assert!((c.a10 - 1.0).abs() < 1e-13);
        assert!((c.a20 - 1.0).abs() < 1e-13);
        assert!((c.a_star - 1.0).abs() < 1e-15);
        assert!((c.lambda10 - 1.0).abs() < 1e-13);
        assert!((c.lambda20 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn separatrix_constant_identity() {
        for cfg in [
            fig3(),
            MassConfig::new(2.3, 0.7, 1.9, 1e-5, 0.37).unwrap(),
        ] {
            let c = derive_constants(&cfg).unwrap();
            let lhs = c.k * c.k / (c.a * c.b);
            let rhs = 7.0 * std::f64::consts::PI.powi(2) / 6.0;
            assert!((lhs - rhs).abs() / rhs < 1e-14);
            // Alternative closed form of the same constant.
            let alt = (21.0 * std::f64::consts::PI.powi(2) / 8.0 * (cfg.m1 + cfg.m2) / cfg.m0).sqrt();
            assert!((c.k - alt).abs() / alt < 1e-14);
        }
    }

    #[test]
    fn ratio_identities() {
        let cfg = MassConfig::new(1.7, 0.4, 2.2, 3e-4, 5.1).unwrap();
        let c = derive_constants(&cfg).unwrap();
        let lhs = c.a / c.e;
        let rhs = (1.0 / cfg.m1 + 1.0 / cfg.m2) * (cfg.m1 + cfg.m2);
        assert!((lhs - rhs).abs() / rhs < 1e-14);
        let lhs = c.b / c.d;
        let rhs = 1.5 * cfg.upsilon0.powf(-1.0 / 3.0) * cfg.m0.powf(2.0 / 3.0);
        assert!((lhs - rhs).abs() / rhs < 1e-14);
    }

    #[test]
    fn upsilon_scaling() {
        let base = fig3();
        let c0 = derive_constants(&base).unwrap();
        let s = 3.7;
        let scaled = MassConfig { upsilon0: s * base.upsilon0, ..base };
        let c1 = derive_constants(&scaled).unwrap();
        let pow23 = s.powf(-2.0 / 3.0);
        let pow13 = s.powf(-1.0 / 3.0);
        assert!((c1.a10 / c0.a10 - pow23).abs() < 1e-12);
        assert!((c1.a_star / c0.a_star - pow23).abs() < 1e-12);
        assert!((c1.lambda10 / c0.lambda10 - pow13).abs() < 1e-12);
        assert!((c1.lambda20 / c0.lambda20 - pow13).abs() < 1e-12);
    }

    #[test]
    fn lambda_shift_is_small_and_positive() {
        let cfg = fig3();
        let c = derive_constants(&cfg).unwrap();
        for (l0, ls) in [(c.lambda10, c.lambda1_star), (c.lambda20, c.lambda2_star)] {
            let shift = l0 - ls;
            assert!(shift > 0.0);
            assert!(shift < 10.0 * cfg.epsilon);
        }
    }

    #[test]
    fn kappa_convention() {
        // Under the paper's mass ordering m1 <= m2 the ratio stays below 1/2.
        let cfg = MassConfig::new(1.0, 0.3, 1.0, 1e-3, 2.0 * std::f64::consts::PI).unwrap();
        let c = derive_constants(&cfg).unwrap();
        assert!(c.kappa > 0.0 && c.kappa <= 0.5);
    }

    #[test]
    fn gascheau_cases() {
        // eps m1 = 1e-3, eps m2 = 3e-4.
        assert!(gascheau_stable(&fig3()));
        // Massless planets are trivially stable.
        let mut light = fig3();
        light.epsilon = 1e-300;
        assert!(gascheau_stable(&light));
        // eps m1 = eps m2 = 0.5 fails: 27 * 1.25 > 4.
        let heavy = MassConfig::new(1.0, 0.5, 0.5, 1.0, 1.0).unwrap();
        assert!(!gascheau_stable(&heavy));
    }

    #[test]
    fn rejects_nonpositive_input() {
        assert!(MassConfig::new(1.0, -1.0, 0.3, 1e-3, 1.0).is_err());
        assert!(MassConfig::new(1.0, 1.0, 0.3, 0.0, 1.0).is_err());
        assert!(MassConfig::new(0.0, 1.0, 0.3, 1e-3, 1.0).is_err());
    }

    #[test]
    fn config_file_parsing() {
        let text = "# reference configuration\nm0 = 1.0\nm1 = 1.0\nm2 = 0.3\nepsilon = 1e-3\nupsilon0 = 6.283185307179586\n";
        let cfg = MassConfig::from_key_value_str(text).unwrap();
        assert_eq!(cfg.m2, 0.3);
        assert_eq!(cfg.epsilon, 1e-3);
        assert!(MassConfig::from_key_value_str("m0 = 1\nm1 = 1\nm2 = 1\nepsilon = 1e-3\n").is_err());
        assert!(MassConfig::from_key_value_str("bogus = 1").is_err());
        assert!(MassConfig::from_key_value_str(&text.replace("0.3", "-0.3")).is_err());
    }
}
