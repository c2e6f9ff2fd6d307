//! The averaged secular quadratic form: coefficients `Abar(delta)`,
//! `Bbar(delta)` by level-curve quadrature, the secular eigenfrequencies
//! `g1, g2`, the separatrix constants `C_A`, `C_B`, `c2`, the four-frequency
//! ladder, and the Melnikov minimum-divisor scan.
//!
//! The averages reduce to ratios of level-curve integrals,
//! `Abar = (int A~ / sqrt(U)) / (int 1 / sqrt(U))`, so they depend on delta
//! only. As delta -> 0 they stabilize as
//! `Abar = 7/8 + C_A / |ln delta| + o(1/|ln delta|)`; `C_A` and `C_B` are
//! returned in exactly that normalization (the asymptotic coefficients,
//! which the separatrix integrals give after a sqrt(7/6) factor from the
//! logarithmic piece of the period).

use crate::action_angle::{period, split_i2_closed_form, QuadMode};
use crate::error::{Error, Result};
use crate::exec;
use crate::quad;
use crate::resonant::mechanical_functions;
use crate::separatrix::LevelGeometry;
use crate::system::{derive_constants, MassConfig};

const PI: f64 = std::f64::consts::PI;

/// Averaged secular coefficients and eigenfrequencies at a level `delta`.
#[derive(Debug, Clone, Copy)]
pub struct SecularSpectrum {
    pub delta: f64,
    pub a_bar: f64,
    pub b_bar: f64,
    /// Eigenfrequencies; the eigenvalues of the secular block are `i g_j`.
    pub g1: f64,
    pub g2: f64,
    /// Normalized symmetric matrix [[Abar/m1, Bbar/s], [Bbar/s, Abar/m2]]
    /// with `s = sqrt(m1 m2)`; `g_j = eps ups0 (m1 m2 / m0) lambda_j`.
    pub q_matrix: [[f64; 2]; 2],
}

/// Separatrix-limit constants of the secular averages.
#[derive(Debug, Clone, Copy)]
pub struct SeparatrixConstants {
    /// `lim (Abar - 7/8) |ln delta|`.
    pub c_a: f64,
    /// `lim (Bbar - 7/8) |ln delta|`.
    pub c_b: f64,
    /// `2 (C_A - C_B)`, negative.
    pub c2: f64,
    pub quad_error: f64,
}

/// Result of the Melnikov lattice scan.
#[derive(Debug, Clone, Copy)]
pub struct MelnikovScan {
    pub min_divisor: f64,
    pub argmin_k: [i64; 2],
    pub argmin_l: [i64; 2],
    /// `min(|Omega1|, |Omega2|, |Omega1 - Omega2|)`.
    pub min_normal: f64,
}

/// Level-curve average of `weight(phi)` with mode-dependent handling of the
/// near-separatrix logarithm: the weighted integral is computed directly
/// (its integrand is regular at `phi = pi` once `weight(pi)` is subtracted),
/// the normalization uses the period machinery of the requested mode.
fn level_average(delta: f64, mode: QuadMode, weight: &dyn Fn(f64) -> f64) -> Result<(f64, f64)> {
    let geom = LevelGeometry::new(delta)?;
    let w_pi = weight(PI);
    // J = int (w - w(pi)) / sqrt(U): regular at pi since w - w(pi) vanishes
    // quadratically there while 1/sqrt(U) grows only like 1/|phi - pi|.
    let f = |u: f64| {
        let dphi = u * u;
        let phi = geom.phi_min + dphi;
        2.0 * u * (weight(phi) - w_pi) / geom.u_at_offset(dphi).sqrt()
    };
    let span = (PI - geom.phi_min).sqrt();
    let j = quad::adaptive(&f, 0.0, span, 1e-12, 1e-300)?;
    // I = int 1 / sqrt(U), by the same decomposition the period uses.
    let i = match mode {
        QuadMode::Direct => {
            let f = |u: f64| {
                let dphi = u * u;
                2.0 * u / geom.u_at_offset(dphi).sqrt()
            };
            quad::adaptive(&f, 0.0, span, 1e-13, 1e-300)?
        }
        QuadMode::Split => {
            let f1 = |u: f64| {
                let dphi = u * u;
                2.0 * u / geom.u_at_offset(dphi).sqrt()
            };
            let i1 = quad::adaptive(&f1, 0.0, (PI / 3.0 - geom.phi_min).sqrt(), 1e-13, 1e-300)?;
            let i2 = split_i2_closed_form(delta);
            let i3 = quad::adaptive(
                &crate::action_angle::split_i3_integrand(delta),
                0.0,
                2.0 * PI / 3.0,
                1e-13,
                1e-300,
            )?;
            quad::QuadResult {
                value: i1.value + i2 + i3.value,
                abs_error: i1.abs_error + i3.abs_error,
            }
        }
    };
    Ok((w_pi + j.value / i.value, (j.abs_error + i.abs_error) / i.value))
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

/// The averaged coefficients `(Abar, Bbar)` at level `delta`.
pub fn averaged_ab(delta: f64, mode: QuadMode) -> Result<(f64, f64)> {
    check_mode_range(delta, mode)?;
    let a = level_average(delta, mode, &|phi| mechanical_functions(phi).unwrap().a_tilde)?;
    let b = level_average(delta, mode, &|phi| mechanical_functions(phi).unwrap().b_tilde.re)?;
    Ok((a.0, b.0))
}

/// Average of the imaginary part of `B~` over the full closed orbit. The
/// symmetry `B~(2pi - phi) = conj(B~(phi))` makes it vanish; computed
/// pointwise as a symmetry check. The integrand is pure roundoff, so the
/// quadrature runs with an absolute floor at the target tolerance.
pub fn averaged_b_imag(delta: f64) -> Result<f64> {
    let geom = LevelGeometry::new(delta)?;
    let f = |u: f64| {
        let dphi = u * u;
        let phi = geom.phi_min + dphi;
        let sym = 0.5
            * (mechanical_functions(phi).unwrap().b_tilde.im
                + mechanical_functions(2.0 * PI - phi).unwrap().b_tilde.im);
        2.0 * u * sym / geom.u_at_offset(dphi).sqrt()
    };
    let j = quad::adaptive(&f, 0.0, (PI - geom.phi_min).sqrt(), 1e-9, 1e-13)?;
    // Normalize by the bare period integral.
    let fl = |u: f64| {
        let dphi = u * u;
        2.0 * u / geom.u_at_offset(dphi).sqrt()
    };
    let i = quad::adaptive(&fl, 0.0, (PI - geom.phi_min).sqrt(), 1e-12, 1e-300)?;
    Ok(j.value / i.value)
}

/// The separatrix constants: asymptotic coefficients of
/// `Abar, Bbar = 7/8 + C/|ln delta| + o(1/|ln delta|)` and `c2 = 2(C_A - C_B)`.
///
/// The delta = 0 level integrals converge; the sqrt(7/6) factor carries the
/// normalization of the logarithmically divergent period piece.
pub fn separatrix_constants() -> Result<SeparatrixConstants> {
    let geom = LevelGeometry::new(0.0)?;
    let scale = (7.0f64 / 6.0).sqrt();
    let integrate = |weight: &dyn Fn(f64) -> f64| -> Result<(f64, f64)> {
        let w_pi = weight(PI);
        let f = |u: f64| {
            let dphi = u * u;
            let phi = geom.phi_min + dphi;
            2.0 * u * (weight(phi) - w_pi) / geom.u_at_offset(dphi).sqrt()
        };
        let q = quad::adaptive(&f, 0.0, (PI - geom.phi_min).sqrt(), 1e-12, 1e-300)?;
        Ok((scale * q.value, scale * q.abs_error))
    };
    let (c_a, err_a) = integrate(&|phi| mechanical_functions(phi).unwrap().a_tilde)?;
    let (c_b, err_b) = integrate(&|phi| mechanical_functions(phi).unwrap().b_tilde.re)?;
    Ok(SeparatrixConstants {
        c_a,
        c_b,
        c2: 2.0 * (c_a - c_b),
        quad_error: err_a.max(err_b),
    })
}

/// Secular spectrum at level `delta`: the eigenvalues of the normalized
/// quadratic form, scaled by `eps ups0 m1 m2 / m0`. Eigenvalues are computed
/// by a Jacobi rotation of the symmetric matrix and cross-checked against
/// the characteristic polynomial
/// `lambda^2 - ((m1+m2)/(m1 m2)) Abar lambda - (Bbar^2 - Abar^2)/(m1 m2)`.
pub fn secular_eigs(delta: f64, cfg: &MassConfig, mode: QuadMode) -> Result<SecularSpectrum> {
    let (a_bar, b_bar) = averaged_ab(delta, mode)?;
    let (m1, m2) = (cfg.m1, cfg.m2);
    let s = (m1 * m2).sqrt();
    let q = [[a_bar / m1, b_bar / s], [b_bar / s, a_bar / m2]];
    // Jacobi rotation: eigenvalues of a 2x2 symmetric matrix.
    let half_diff = 0.5 * (q[0][0] - q[1][1]);
    let rad = (half_diff * half_diff + q[0][1] * q[0][1]).sqrt();
    let mean = 0.5 * (q[0][0] + q[1][1]);
    let (lam1, lam2) = (mean + rad, mean - rad);
    // Characteristic-polynomial route with the stable quadratic formula.
    let tr = (m1 + m2) / (m1 * m2) * a_bar;
    let det = (a_bar * a_bar - b_bar * b_bar) / (m1 * m2);
    let disc = (tr * tr - 4.0 * det).sqrt();
    let qq = 0.5 * (tr + tr.signum() * disc);
    let (r1, r2) = (qq, det / qq);
    let (p1, p2) = if r1 >= r2 { (r1, r2) } else { (r2, r1) };
    let tol = 1e-12 * (lam1.abs() + lam2.abs()).max(1.0);
    if (p1 - lam1).abs() > tol || (p2 - lam2).abs() > tol {
        return Err(Error::numerical(format!(
            "eigenvalue routes disagree: ({lam1}, {lam2}) vs ({p1}, {p2})"
        )));
    }
    let scale = cfg.epsilon * cfg.upsilon0 * m1 * m2 / cfg.m0;
    Ok(SecularSpectrum {
        delta,
        a_bar,
        b_bar,
        g1: scale * lam1,
        g2: scale * lam2,
        q_matrix: q,
    })
}

/// One row of the four-timescale frequency ladder.
#[derive(Debug, Clone, Copy)]
pub struct LadderRow {
    pub epsilon: f64,
    pub delta: f64,
    pub upsilon: f64,
    pub nu: f64,
    pub g1: f64,
    pub g2: f64,
}

/// Tabulate `(upsilon0, nu_delta, g1, g2)` along a list of `epsilon` values
/// with `delta = delta_rule(epsilon)`, checking the timescale separation
/// `nu/upsilon -> 0` and `max(|g1|, |g2|)/nu -> 0` along decreasing epsilon.
pub fn frequency_ladder(
    epsilon_list: &[f64],
    delta_rule: impl Fn(f64) -> f64,
    base: &MassConfig,
) -> Result<Vec<LadderRow>> {
    let mut rows = Vec::with_capacity(epsilon_list.len());
    for &eps in epsilon_list {
        let cfg = MassConfig { epsilon: eps, ..*base };
        cfg.validate()?;
        let c = derive_constants(&cfg)?;
        let delta = delta_rule(eps);
        let rec = period(delta, &c, &cfg, QuadMode::Direct)?;
        let spec = secular_eigs(delta, &cfg, QuadMode::Direct)?;
        rows.push(LadderRow {
            epsilon: eps,
            delta,
            upsilon: cfg.upsilon0,
            nu: rec.nu,
            g1: spec.g1,
            g2: spec.g2,
        });
    }
    let mut sorted = rows.clone();
    sorted.sort_by(|a, b| b.epsilon.partial_cmp(&a.epsilon).unwrap());
    for pair in sorted.windows(2) {
        let (hi, lo) = (&pair[0], &pair[1]);
        if lo.nu / lo.upsilon >= hi.nu / hi.upsilon {
            return Err(Error::numerical("frequency ladder: nu/upsilon not decreasing".to_string()));
        }
        let gmax = |r: &LadderRow| r.g1.abs().max(r.g2.abs());
        if gmax(lo) / lo.nu >= gmax(hi) / hi.nu {
            return Err(Error::numerical("frequency ladder: g/nu not decreasing".to_string()));
        }
    }
    Ok(rows)
}

/// Exact minimum of `|k . omega + l . Omega|` over the lattice box
/// `0 < max(|k1|, |k2|) <= k0`, `|l1| + |l2| <= 2`, plus the three
/// small-frequency conditions. Exhaustive enumeration, chunk-parallel over
/// `k1` with a global min reduction.
pub fn melnikov_min_divisor(omega: [f64; 2], cap_omega: [f64; 2], k0: i64) -> Result<MelnikovScan> {
    melnikov_scan_impl(omega, cap_omega, k0, false)
}

/// Sequential reference path of [`melnikov_min_divisor`] (for benches).
pub fn melnikov_min_divisor_seq(omega: [f64; 2], cap_omega: [f64; 2], k0: i64) -> Result<MelnikovScan> {
    melnikov_scan_impl(omega, cap_omega, k0, true)
}

fn melnikov_scan_impl(omega: [f64; 2], cap_omega: [f64; 2], k0: i64, sequential: bool) -> Result<MelnikovScan> {
    if k0 < 1 {
        return Err(Error::domain("K0 must be at least 1".to_string()));
    }
    if k0 > 1_000_000 {
        return Err(Error::domain("K0 above the desk-scale cap 1e6".to_string()));
    }
    if !omega.iter().chain(cap_omega.iter()).all(|v| v.is_finite()) {
        return Err(Error::domain("non-finite frequency input".to_string()));
    }
    const L_SET: [[i64; 2]; 13] = [
        [0, 0],
        [1, 0],
        [-1, 0],
        [0, 1],
        [0, -1],
        [2, 0],
        [-2, 0],
        [0, 2],
        [0, -2],
        [1, 1],
        [1, -1],
        [-1, 1],
        [-1, -1],
    ];
    let offsets: Vec<f64> = L_SET
        .iter()
        .map(|l| l[0] as f64 * cap_omega[0] + l[1] as f64 * cap_omega[1])
        .collect();
    #[derive(Clone, Copy)]
    struct Best {
        value: f64,
        k: [i64; 2],
        l: [i64; 2],
    }
    let identity = Best { value: f64::INFINITY, k: [0, 0], l: [0, 0] };
    let scan_row = |row: usize| -> Best {
        let k1 = row as i64 - k0;
        let base1 = k1 as f64 * omega[0];
        let mut best = identity;
        for k2 in -k0..=k0 {
            if k1 == 0 && k2 == 0 {
                continue;
            }
            let base = base1 + k2 as f64 * omega[1];
            for (li, off) in offsets.iter().enumerate() {
                let v = (base + off).abs();
                if v < best.value {
                    best = Best { value: v, k: [k1, k2], l: L_SET[li] };
                }
            }
        }
        best
    };
    let merge = |a: Best, b: Best| if a.value <= b.value { a } else { b };
    let n_rows = (2 * k0 + 1) as usize;
    let best = if sequential {
        exec::fold_indexed_seq(n_rows, identity, scan_row, merge)
    } else {
        exec::fold_indexed(n_rows, identity, scan_row, merge)
    };
    let min_normal = cap_omega[0]
        .abs()
        .min(cap_omega[1].abs())
        .min((cap_omega[0] - cap_omega[1]).abs());
    Ok(MelnikovScan {
        min_divisor: best.value,
        argmin_k: best.k,
        argmin_l: best.l,
        min_normal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3() -> MassConfig {
        MassConfig::new(1.0, 1.0, 0.3, 1e-3, 2.0 * std::f64::consts::PI).unwrap()
    }

    #[test]
    fn averaged_ab_dual_mode() {
        let delta = 1e-5;
        let (a1, b1) = averaged_ab(delta, QuadMode::Direct).unwrap();
        let (a2, b2) = averaged_ab(delta, QuadMode::Split).unwrap();
        assert!((a1 - a2).abs() <= 1e-8 * a1.abs().max(1.0), "{a1} vs {a2}");
        assert!((b1 - b2).abs() <= 1e-8 * b1.abs().max(1.0), "{b1} vs {b2}");
    }

    #[test]
    fn averaged_ab_near_separatrix_limit() {
        // Oracle values from an independent scipy quadrature of the same
        // integrals: Abar(1e-30) = 0.4899..., Bbar(1e-30) = 1.1020....
        let (a, b) = averaged_ab(1e-30, QuadMode::Split).unwrap();
        assert!((a - 0.4899006915).abs() < 1e-6, "{a}");
        assert!((b - 1.1020843306).abs() < 1e-6, "{b}");
    }

    #[test]
    fn b_imag_average_vanishes() {
        let v = averaged_b_imag(0.03).unwrap();
        assert!(v.abs() <= 1e-12, "{v}");
    }

    #[test]
    fn separatrix_constant_intervals() {
        let sc = separatrix_constants().unwrap();
        assert!(sc.c_a > -28.0 && sc.c_a < -27.0, "C_A = {}", sc.c_a);
        assert!(sc.c_b > 16.0 && sc.c_b < 17.0, "C_B = {}", sc.c_b);
        assert!(sc.c2 > -90.0 && sc.c2 < -86.0, "c2 = {}", sc.c2);
        assert!(sc.c2 < 0.0);
        assert_eq!(sc.c2, 2.0 * (sc.c_a - sc.c_b));
        assert!(sc.quad_error <= 1e-6);
        // Oracle: sqrt(7/6) times the bare integrals -25.7297..., 15.1722....
        assert!((sc.c_a - -27.791294602654784).abs() < 1e-6);
        assert!((sc.c_b - 16.387896294317517).abs() < 1e-6);
    }

    #[test]
    fn abar_asymptotics_match_constants() {
        let sc = separatrix_constants().unwrap();
        for delta in [1e-30f64, 1e-60] {
            let (a, b) = averaged_ab(delta, QuadMode::Split).unwrap();
            let log = delta.ln().abs();
            assert!(
                ((a - 0.875) * log - sc.c_a).abs() < 0.05 * sc.c_a.abs(),
                "A at {delta}: {}",
                (a - 0.875) * log
            );
            assert!(
                ((b - 0.875) * log - sc.c_b).abs() < 0.05 * sc.c_b.abs(),
                "B at {delta}: {}",
                (b - 0.875) * log
            );
        }
    }

    #[test]
    fn spectrum_invariants() {
        let cfg = fig3();
        for delta in [1e-3, 0.05] {
            let s = secular_eigs(delta, &cfg, QuadMode::Direct).unwrap();
            assert!(s.g1 != s.g2, "simple spectrum");
            // Trace and determinant identities against the Q matrix.
            let tr = s.q_matrix[0][0] + s.q_matrix[1][1];
            let expect = (cfg.m1 + cfg.m2) / (cfg.m1 * cfg.m2) * s.a_bar;
            assert!((tr - expect).abs() <= 1e-13 * expect.abs());
            let det = s.q_matrix[0][0] * s.q_matrix[1][1] - s.q_matrix[0][1] * s.q_matrix[1][0];
            let expect = (s.a_bar * s.a_bar - s.b_bar * s.b_bar) / (cfg.m1 * cfg.m2);
            assert!((det - expect).abs() <= 1e-13 * expect.abs().max(1.0));
            // Eigenvalues scale back to the Q matrix spectrum.
            let scale = cfg.epsilon * cfg.upsilon0 * cfg.m1 * cfg.m2 / cfg.m0;
            let lam = [s.g1 / scale, s.g2 / scale];
            let p = |x: f64| x * x - tr * x + det;
            assert!(p(lam[0]).abs() < 1e-10 * (1.0 + lam[0] * lam[0]));
            assert!(p(lam[1]).abs() < 1e-10 * (1.0 + lam[1] * lam[1]));
        }
    }

    #[test]
    fn leading_secular_frequency() {
        // g1 approaches (7/8) eps ups (m1+m2)/m0; the correction terms decay
        // only like 1/|ln delta|, so even at delta = 1e-30 the scale check is
        // an order-of-magnitude one.
        let cfg = fig3();
        let s = secular_eigs(1e-30, &cfg, QuadMode::Split).unwrap();
        let lead = 7.0 / 8.0 * cfg.epsilon * cfg.upsilon0 * (cfg.m1 + cfg.m2) / cfg.m0;
        assert!(s.g1 > 0.5 * lead && s.g1 < 2.0 * lead, "g1 = {} vs leading {lead}", s.g1);
        assert!(s.g2 < 0.0, "g2 = {}", s.g2);
    }

    #[test]
    fn abar_smooth_in_log_delta() {
        // Second differences on a geometric grid stay bounded.
        let mut vals = Vec::new();
        for i in 0..7 {
            let delta = 10f64.powf(-2.0 - i as f64);
            vals.push(averaged_ab(delta, QuadMode::Split).unwrap().0);
        }
        for w in vals.windows(3) {
            let second = w[0] - 2.0 * w[1] + w[2];
            assert!(second.abs() < 0.5, "second difference {second}");
        }
    }

    #[test]
    fn ladder_separation() {
        let base = fig3();
        let rows = frequency_ladder(&[1e-3, 1e-5, 1e-7], |eps| eps.powf(0.1), &base).unwrap();
        assert_eq!(rows.len(), 3);
        assert!((rows[0].upsilon - base.upsilon0).abs() < 1e-15);
        for r in &rows {
            assert!(r.nu / r.upsilon < 1.0);
            assert!(r.g1.abs().max(r.g2.abs()) / r.nu < 1.0);
        }
    }

    #[test]
    fn melnikov_degenerate_and_reference_cases() {
        // Zero component: k = (1, 0) or (0, ±1) reaches 0 exactly.
        let scan = melnikov_min_divisor([0.0, 1.0], [0.0, 0.0], 3).unwrap();
        assert_eq!(scan.min_divisor, 0.0);
        assert_eq!(scan.min_normal, 0.0);
        // sqrt(2) lattice: minimum |k1 sqrt(2) + k2| over the box is
        // sqrt(2) - 1 at (1, -1).
        let scan = melnikov_min_divisor([2.0f64.sqrt(), 1.0], [0.0, 0.0], 2).unwrap();
        assert!((scan.min_divisor - (2.0f64.sqrt() - 1.0)).abs() < 1e-14);
        // Ties resolve to either sign of the same lattice vector.
        assert!(scan.argmin_k == [1, -1] || scan.argmin_k == [-1, 1]);
        assert!(melnikov_min_divisor([1.0, 1.0], [0.0, 0.0], 2_000_000).is_err());
    }

    #[test]
    fn melnikov_matches_plain_brute_force() {
        // Independent triple-loop enumeration on a small box.
        let omega = [0.3219502859162549, 2.0 * std::f64::consts::PI];
        let cap = [-0.001446436442166283, -0.07921335179573799];
        let k0 = 40;
        let mut best = f64::INFINITY;
        for k1 in -k0..=k0 {
            for k2 in -k0..=k0 {
                if k1 == 0 && k2 == 0 {
                    continue;
                }
                for l1 in -2i64..=2 {
                    for l2 in -2i64..=2 {
                        if l1.abs() + l2.abs() > 2 {
                            continue;
                        }
                        let v = (k1 as f64 * omega[0]
                            + k2 as f64 * omega[1]
                            + l1 as f64 * cap[0]
                            + l2 as f64 * cap[1])
                            .abs();
                        best = best.min(v);
                    }
                }
            }
        }
        let scan = melnikov_min_divisor(omega, cap, k0).unwrap();
        assert!((scan.min_divisor - best).abs() <= 1e-15 * (1.0 + best));
        let seq = melnikov_min_divisor_seq(omega, cap, k0).unwrap();
        assert_eq!(seq.min_divisor, scan.min_divisor);
    }
}
