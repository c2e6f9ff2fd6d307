//! The verification battery: every quantitative claim of the model that is
//! checkable at desk scale, each with its tolerance pinned in code. The same
//! battery backs the `verify` CLI subcommand and the acceptance test target.

use crate::action_angle::{action_j1, horseshoe_profile, period, split_i2_closed_form, torus_embedding, QuadMode};
use crate::error::{Error, Result};
use crate::freq::{fundamental_frequencies, quasiperiodic_residual};
use crate::kepler::{cartesian_to_poincare, poincare_to_cartesian, CartesianState, Vec2};
use crate::quad;
use crate::resonant::{
    averaged_perturbation_circular, dalembert_integral, mechanical_functions, to_resonant, DEFAULT_DELTA_HAT,
};
use crate::secular::{melnikov_min_divisor, separatrix_constants, secular_eigs};
use crate::separatrix::{libration_amplitude, phi_min};
use crate::system::{derive_constants, MassConfig};
use crate::three_body::{equations_of_motion, hamiltonian_energy, integrate, Scheme};
use num_complex::Complex64;

const PI: f64 = std::f64::consts::PI;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Run the full battery on `cfg` (the reference configuration is
/// `m0 = 1, m1 = 1, m2 = 0.3, eps = 1e-3, upsilon0 = 2 pi`; criteria with
/// their own pinned parameters ignore `cfg` where stated).
pub fn run_all(cfg: &MassConfig) -> Vec<CriterionOutcome> {
    let checks: [(usize, &'static str, &dyn Fn(&MassConfig) -> Result<(bool, String)>); 13] = [
        (1, "closed-form anchors", &c01_anchors),
        (2, "phi_min value and slope", &c02_phi_min),
        (3, "libration amplitude > 312 deg", &c03_amplitude),
        (4, "parabolic-well closed form", &c04_i2),
        (5, "semi-fast frequency asymptotics", &c05_lemma2),
        (6, "separatrix constants", &c06_constants),
        (7, "secular asymptotics", &c07_secular),
        (8, "model-internal consistency", &c08_consistency),
        (9, "averaging fidelity", &c09_averaging),
        (10, "full-problem trajectory", &c10_trajectory),
        (11, "Janus-Epimetheus demo", &c11_janus),
        (12, "Melnikov scan", &c12_melnikov),
        (13, "numerical hygiene", &c13_hygiene),
    ];
    checks
        .iter()
        .map(|(id, name, f)| match f(cfg) {
            Ok((passed, detail)) => CriterionOutcome { id: *id, name, passed, detail },
            Err(e) => CriterionOutcome {
                id: *id,
                name,
                passed: false,
                detail: format!("error: {e}"),
            },
        })
        .collect()
}

fn c01_anchors(cfg: &MassConfig) -> Result<(bool, String)> {
    let c = derive_constants(cfg)?;
    let mf = mechanical_functions(PI)?;
    let errs = [
        (mf.f + 1.0).abs(),
        (mf.a_tilde - 7.0 / 8.0).abs(),
        (mf.b_tilde - Complex64::new(7.0 / 8.0, 0.0)).norm(),
        ((c.k * c.k - 7.0 * PI * PI / 6.0 * c.a * c.b) / (c.k * c.k)).abs(),
    ];
    let worst = errs.iter().cloned().fold(0.0f64, f64::max);
    Ok((
        worst <= 1e-12,
        format!("F(pi)+1, A~(pi)-7/8, |B~(pi)-7/8|, K^2 identity: worst {worst:.2e} (tol 1e-12)"),
    ))
}

fn c02_phi_min(_cfg: &MassConfig) -> Result<(bool, String)> {
    let closed = 2.0 * ((2.0f64.sqrt() - 1.0) / 2.0).asin();
    let value_err = (phi_min(0.0)? - closed).abs();
    let c0 = 3.0 * (2.0f64.sqrt() - 1.0) / ((3.0 * 2.0f64.sqrt() - 2.0) * (1.0 + 2.0 * 2.0f64.sqrt()).sqrt());
    let h = 1e-4;
    let slope = (phi_min(h)? - phi_min(-h)?) / (2.0 * h);
    let slope_err = (slope + c0).abs();
    let pass = value_err <= 1e-10 && slope_err <= 1e-5 && c0 > 0.25 && c0 < 1.0 / 3.0;
    Ok((
        pass,
        format!("phi_min(0) err {value_err:.2e} (tol 1e-10); slope err {slope_err:.2e} (tol 1e-5); c0 = {c0:.6}"),
    ))
}

fn c03_amplitude(_cfg: &MassConfig) -> Result<(bool, String)> {
    let mut min_amp = f64::INFINITY;
    for i in 0..20 {
        let delta = 0.1 * i as f64 / 19.0;
        min_amp = min_amp.min(libration_amplitude(delta)?.to_degrees());
    }
    Ok((min_amp > 312.0, format!("min amplitude over delta in [0, 0.1]: {min_amp:.4} deg (> 312)")))
}

fn c04_i2(_cfg: &MassConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for delta in [1e-2, 1e-4] {
        let closed = split_i2_closed_form(delta);
        let q = quad::adaptive(
            &|t: f64| 1.0 / (delta + 7.0 / 24.0 * t * t).sqrt(),
            0.0,
            2.0 * PI / 3.0,
            1e-12,
            1e-300,
        )?;
        worst = worst.max((closed - q.value).abs() / closed);
    }
    Ok((worst <= 1e-9, format!("closed form vs quadrature: worst rel err {worst:.2e} (tol 1e-9)")))
}

fn c05_lemma2(cfg: &MassConfig) -> Result<(bool, String)> {
    let c = derive_constants(cfg)?;
    let scale = cfg.upsilon0 * cfg.epsilon.sqrt() * c.k;
    let eval = |delta: f64| -> Result<(f64, f64)> {
        let rec = period(delta, &c, cfg, QuadMode::Split)?;
        let log = delta.ln().abs();
        Ok((scale / rec.nu - log, rec.nu_prime * delta * log * log / scale))
    };
    let (s30, combo30) = eval(1e-30)?;
    let (s60, combo60) = eval(1e-60)?;
    let s_ok = (s30 - s60).abs() <= 0.05 * s30.abs();
    // The nu' combination converges like 1/|ln delta|; Richardson
    // extrapolation in that variable over the two stated levels.
    let (x30, x60) = (1.0 / 1e-30f64.ln().abs(), 1.0 / 1e-60f64.ln().abs());
    let limit = (combo60 * x30 - combo30 * x60) / (x30 - x60);
    let combo_ok = (limit - 1.0).abs() <= 0.05;
    Ok((
        s_ok && combo_ok,
        format!(
            "s(1e-30) = {s30:.6}, s(1e-60) = {s60:.6} (5% stabilization); nu' combo {combo30:.4} / {combo60:.4}, extrapolated {limit:.4} (1 +/- 0.05)"
        ),
    ))
}

fn c06_constants(_cfg: &MassConfig) -> Result<(bool, String)> {
    let sc = separatrix_constants()?;
    let pass = sc.c_a > -28.0
        && sc.c_a < -27.0
        && sc.c_b > 16.0
        && sc.c_b < 17.0
        && sc.c2 > -90.0
        && sc.c2 < -86.0
        && sc.quad_error <= 1e-6;
    Ok((
        pass,
        format!(
            "C_A = {:.6} in (-28,-27); C_B = {:.6} in (16,17); c2 = {:.6} in (-90,-86); quad err {:.1e}",
            sc.c_a, sc.c_b, sc.c2, sc.quad_error
        ),
    ))
}

fn c07_secular(cfg: &MassConfig) -> Result<(bool, String)> {
    let sc = separatrix_constants()?;
    let spec30 = secular_eigs(1e-30, cfg, QuadMode::Split)?;
    let spec60 = secular_eigs(1e-60, cfg, QuadMode::Split)?;
    let (l30, l60) = (1e-30f64.ln().abs(), 1e-60f64.ln().abs());
    let a30 = (spec30.a_bar - 0.875) * l30;
    let a60 = (spec60.a_bar - 0.875) * l60;
    let b30 = (spec30.b_bar - 0.875) * l30;
    let b60 = (spec60.b_bar - 0.875) * l60;
    let a_ok = (a30 - a60).abs() <= 0.05 * a30.abs()
        && (a30 - sc.c_a).abs() <= 0.05 * sc.c_a.abs()
        && (a60 - sc.c_a).abs() <= 0.05 * sc.c_a.abs();
    let b_ok = (b30 - b60).abs() <= 0.05 * b30.abs()
        && (b30 - sc.c_b).abs() <= 0.05 * sc.c_b.abs()
        && (b60 - sc.c_b).abs() <= 0.05 * sc.c_b.abs();
    // g2 combination: stabilization between the two levels. Its limit is
    // c2 times the mass factor sqrt(7/6)... already inside c2's scaling:
    // m1 m2 / (m1 + m2)^2 * c2 with this normalization of the constants.
    let gscale = cfg.epsilon * cfg.upsilon0 * (cfg.m1 + cfg.m2) / cfg.m0;
    let g30 = spec30.g2 * l30 / gscale;
    let g60 = spec60.g2 * l60 / gscale;
    let g_ok = (g30 - g60).abs() <= 0.05 * g30.abs();
    let g_limit = cfg.m1 * cfg.m2 / (cfg.m1 + cfg.m2).powi(2) * sc.c2;
    Ok((
        a_ok && b_ok && g_ok,
        format!(
            "(Abar-7/8)|ln d|: {a30:.4}/{a60:.4} vs C_A {:.4}; (Bbar-7/8)|ln d|: {b30:.4}/{b60:.4} vs C_B {:.4}; g2 combo {g30:.4}/{g60:.4} (limit {g_limit:.4})",
            sc.c_a, sc.c_b
        ),
    ))
}

fn c08_consistency(cfg: &MassConfig) -> Result<(bool, String)> {
    let c = derive_constants(cfg)?;
    let mut worst_period = 0.0f64;
    for delta in [0.01, 0.05, 0.1] {
        let rec = period(delta, &c, cfg, QuadMode::Direct)?;
        let profile = horseshoe_profile(delta, 64, &c, cfg)?;
        worst_period = worst_period.max((profile.period - rec.period).abs() / rec.period);
    }
    let delta = 0.05;
    let s = 1e-4;
    let jp = action_j1(delta + s, &c, cfg)?;
    let jm = action_j1(delta - s, &c, cfg)?;
    let dh = -cfg.epsilon * cfg.upsilon0 * c.b * 2.0 * s;
    let nu = period(delta, &c, cfg, QuadMode::Direct)?.nu;
    let action_err = (((jp - jm) / dh).abs() - 1.0 / nu).abs() * nu;
    let pass = worst_period <= 1e-8 && action_err <= 1e-5;
    Ok((
        pass,
        format!("profile vs quadrature period: worst rel {worst_period:.2e} (tol 1e-8); |dJ1/dh| vs 1/nu rel err {action_err:.2e} (tol 1e-5)"),
    ))
}

fn c09_averaging(cfg: &MassConfig) -> Result<(bool, String)> {
    // Gap between the averaged perturbation at the exact-resonance point and
    // eps ups0 B F(zeta1) is O(eps^2): halving eps divides it by 4 +/- 25%.
    let gap = |eps: f64, zeta1: f64| -> Result<f64> {
        let cfg_eps = MassConfig { epsilon: eps, ..*cfg };
        let c = derive_constants(&cfg_eps)?;
        let avg = averaged_perturbation_circular([0.0, 0.0], zeta1, &cfg_eps, &c, 64, DEFAULT_DELTA_HAT)?;
        let target = eps * cfg_eps.upsilon0 * c.b * mechanical_functions(zeta1)?.f;
        Ok((avg - target).abs())
    };
    let mut detail = String::new();
    let mut pass = true;
    for zeta1 in [PI / 2.0, PI, 3.0 * PI / 2.0] {
        let g = [gap(1e-3, zeta1)?, gap(5e-4, zeta1)?, gap(2.5e-4, zeta1)?];
        for w in g.windows(2) {
            let ratio = w[0] / w[1];
            if !(3.0..=5.0).contains(&ratio) {
                pass = false;
            }
            detail.push_str(&format!("{ratio:.3} "));
        }
    }
    Ok((pass, format!("eps-halving gap ratios (target 4 +/- 25%): {detail}")))
}

/// Summary of a full-problem run launched from a model torus.
#[derive(Debug, Clone)]
pub struct TrajectoryReport {
    pub delta: f64,
    pub nu_model: f64,
    pub upsilon_model: f64,
    pub energy_drift: f64,
    pub angmom_drift: f64,
    pub dalembert_drift: f64,
    pub nu_recovered: f64,
    pub upsilon_recovered: f64,
    pub libration_amplitude_deg: f64,
    pub librates_about_pi: bool,
    pub quasiperiodic_residual: f64,
    pub n_samples: usize,
}

/// Integrate the full problem from the `delta`-torus at `theta = (0, 0)` and
/// measure drifts, recovered frequencies, and libration geometry.
/// Returns the report together with the trajectory itself.
pub fn trajectory_report(
    cfg: &MassConfig,
    delta: f64,
    n_periods: f64,
    dt: f64,
    scheme: Scheme,
) -> Result<(TrajectoryReport, crate::three_body::Trajectory)> {
    let c = derive_constants(cfg)?;
    let torus = torus_embedding(delta, &[0.0], &c, cfg)?;
    let nu_model = torus.omega[0];
    let p0 = torus.poincare_point(0, 0.0, cfg);
    let s0 = poincare_to_cartesian(&p0, &c)?;
    let t_end = n_periods * cfg.fast_period();
    // Make the number of steps a multiple of the sampling stride so the
    // recorded times stay exactly uniform for the frequency analysis.
    let target_samples = 4000usize;
    let raw_steps = (t_end / dt).ceil().max(1.0) as usize;
    let stride = (raw_steps / target_samples).max(1);
    let n_steps = stride * raw_steps.div_ceil(stride);
    let dt_eff = t_end / n_steps as f64;
    let traj = integrate(&s0, cfg, t_end, dt_eff, scheme, stride)?;
    let n = traj.states.len();
    let dt_sample = dt_eff * stride as f64;

    let lam_scale = c.lambda10 + c.lambda20;
    let mut zeta1 = Vec::with_capacity(n);
    let mut fast = Vec::with_capacity(n);
    let mut c0 = f64::NAN;
    let mut dalembert_drift = 0.0f64;
    for s in &traj.states {
        let p = cartesian_to_poincare(s, &c)?;
        let r = to_resonant(&p, &c);
        let z1 = (r.zeta1).rem_euclid(2.0 * PI);
        zeta1.push(Complex64::new(z1 - PI, 0.0));
        fast.push(Complex64::from_polar(1.0, r.zeta2));
        let ci = dalembert_integral(&r);
        if c0.is_nan() {
            c0 = ci;
        } else {
            dalembert_drift = dalembert_drift.max((ci - c0).abs() / lam_scale);
        }
    }
    let comps = fundamental_frequencies(&zeta1, dt_sample, 5)?;
    let bin = 2.0 * PI / (n as f64 * dt_sample);
    let nu_recovered = comps
        .iter()
        .find(|(w, _)| w.abs() > 2.0 * bin)
        .map(|(w, _)| w.abs())
        .unwrap_or(f64::NAN);
    let ups_comps = fundamental_frequencies(&fast, dt_sample, 1)?;
    let upsilon_recovered = ups_comps[0].0;
    let residual = quasiperiodic_residual(&zeta1, dt_sample, [nu_recovered, upsilon_recovered])?;
    let z1_min = zeta1.iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
    let z1_max = zeta1.iter().map(|v| v.re).fold(f64::NEG_INFINITY, f64::max);
    let report = TrajectoryReport {
        delta,
        nu_model,
        upsilon_model: cfg.upsilon0,
        energy_drift: traj.energy_drift(),
        angmom_drift: traj.angmom_drift(),
        dalembert_drift,
        nu_recovered,
        upsilon_recovered,
        libration_amplitude_deg: (z1_max - z1_min).to_degrees(),
        librates_about_pi: z1_max < PI && z1_min > -PI && z1_max > 0.0 && z1_min < 0.0,
        quasiperiodic_residual: residual.residual,
        n_samples: n,
    };
    Ok((report, traj))
}

fn c10_trajectory(cfg: &MassConfig) -> Result<(bool, String)> {
    let dt = cfg.fast_period() / 200.0;
    let (r, _) = trajectory_report(cfg, 0.05, 1000.0, dt, Scheme::Splitting)?;
    let nu_err = (r.nu_recovered - r.nu_model).abs() / r.nu_model;
    let ups_err = (r.upsilon_recovered - r.upsilon_model).abs() / r.upsilon_model;
    let pass = r.energy_drift <= 1e-10
        && r.angmom_drift <= 1e-11
        && r.dalembert_drift <= 1e-11
        && r.librates_about_pi
        && r.libration_amplitude_deg > 312.0
        && nu_err <= 0.05
        && ups_err <= 0.01
        && r.quasiperiodic_residual <= 5e-2;
    Ok((
        pass,
        format!(
            "energy {:.1e} (1e-10), angmom {:.1e} (1e-11), C {:.1e} (1e-11), amplitude {:.2} deg (>312), nu rel err {:.3} (5%), ups rel err {:.5} (1%), residual {:.3} (5e-2)",
            r.energy_drift, r.angmom_drift, r.dalembert_drift, r.libration_amplitude_deg, nu_err, ups_err, r.quasiperiodic_residual
        ),
    ))
}

fn c11_janus(_cfg: &MassConfig) -> Result<(bool, String)> {
    // Janus-Epimetheus order-of-magnitude demo: m0 = 1, eps (m1 + m2) =
    // 4.2e-9, mass ratio of the real pair, delta calibrated so the radial
    // separation between exchanges matches 50 km at a 151470 km orbit.
    let ratio = 0.27713; // Epimetheus / Janus
    let m2 = 1.0 / (1.0 + ratio);
    let m1 = 1.0 - m2;
    let cfg = MassConfig::new(1.0, m1, m2, 4.2e-9, 2.0 * PI)?;
    let c = derive_constants(&cfg)?;
    let target = 50.0 / 151_470.0 * c.a_star;
    // Radial separation between exchanges: both orbits near-circular with
    // |Z1| = sqrt(eps B delta / A), radii split by 2 Z1 (a10/L10 + a20/L20).
    let factor = 2.0 * (c.a10 / c.lambda10 + c.a20 / c.lambda20);
    let z1 = target / factor;
    let delta = z1 * z1 * c.a / (cfg.epsilon * c.b);
    let rec = period(delta, &c, &cfg, QuadMode::Direct)?;
    // One time unit is one 17-hour revolution.
    let years = 0.5 * rec.period * 17.0 / (24.0 * 365.25);
    let pass = (2.0..=8.0).contains(&years);
    Ok((
        pass,
        format!(
            "calibrated delta = {delta:.3}; T = {:.0} revolutions; exchange-to-exchange {years:.2} yr (4 yr within factor 2)",
            rec.period
        ),
    ))
}

fn c12_melnikov(cfg: &MassConfig) -> Result<(bool, String)> {
    let c = derive_constants(cfg)?;
    let delta = cfg.epsilon.powf(0.1);
    let rec = period(delta, &c, cfg, QuadMode::Direct)?;
    let spec = secular_eigs(delta, cfg, QuadMode::Direct)?;
    let scan = melnikov_min_divisor([rec.nu, cfg.upsilon0], [spec.g1, spec.g2], 10_000)?;
    let floor = 1e-9 * cfg.upsilon0;
    let pass = scan.min_divisor > floor && spec.g1.abs() > 0.0 && spec.g2.abs() > 0.0 && (spec.g1 - spec.g2).abs() > 0.0;
    Ok((
        pass,
        format!(
            "min divisor {:.3e} at k = {:?}, l = {:?} (floor {:.1e}); normal mins {:.2e}",
            scan.min_divisor, scan.argmin_k, scan.argmin_l, floor, scan.min_normal
        ),
    ))
}

fn c13_hygiene(cfg: &MassConfig) -> Result<(bool, String)> {
    let c = derive_constants(cfg)?;
    // Deterministic pseudo-random states from a splitmix-style generator.
    let mut seed = 0x9e3779b97f4a7c15u64;
    let mut next = move || -> f64 {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (seed >> 11) as f64 / (1u64 << 53) as f64
    };
    // Gradient of H vs central finite differences at 100 random states.
    let mut worst_grad = 0.0f64;
    for _ in 0..100 {
        let mut rnd = |lo: f64, hi: f64| lo + (hi - lo) * next();
        let s = CartesianState {
            p1: Vec2::new(rnd(-1.0, 1.0), rnd(-1.0, 1.0)),
            r1: Vec2::new(rnd(0.5, 1.5), rnd(-0.5, 0.5)),
            p2: Vec2::new(rnd(-1.0, 1.0), rnd(-1.0, 1.0)),
            r2: Vec2::new(rnd(-1.5, -0.5), rnd(-0.5, 0.5)),
        };
        let d = equations_of_motion(&s, cfg)?;
        let h = 1e-6;
        let fd = |set: &dyn Fn(&mut CartesianState, f64)| -> Result<f64> {
            let mut sp = s;
            set(&mut sp, h);
            let mut sm = s;
            set(&mut sm, -h);
            Ok((hamiltonian_energy(&sp, cfg)? - hamiltonian_energy(&sm, cfg)?) / (2.0 * h))
        };
        let checks = [
            (d.r1_dot.x, fd(&|s, h| s.p1.x += h)?),
            (d.r1_dot.y, fd(&|s, h| s.p1.y += h)?),
            (d.r2_dot.x, fd(&|s, h| s.p2.x += h)?),
            (d.r2_dot.y, fd(&|s, h| s.p2.y += h)?),
            (d.p1_dot.x, -fd(&|s, h| s.r1.x += h)?),
            (d.p1_dot.y, -fd(&|s, h| s.r1.y += h)?),
            (d.p2_dot.x, -fd(&|s, h| s.r2.x += h)?),
            (d.p2_dot.y, -fd(&|s, h| s.r2.y += h)?),
        ];
        for (analytic, numeric) in checks {
            worst_grad = worst_grad.max((analytic - numeric).abs());
        }
    }
    // Poincaré chart round-trip at 1000 quasi-circular states.
    let mut worst_chart = 0.0f64;
    for _ in 0..1000 {
        let mut rnd = |lo: f64, hi: f64| lo + (hi - lo) * next();
        let e1 = rnd(0.0, 0.3);
        let e2 = rnd(0.0, 0.3);
        let xi = |e: f64| 1.0 - (1.0 - e * e).sqrt();
        let l1 = c.lambda10 * rnd(0.9, 1.1);
        let l2 = c.lambda20 * rnd(0.9, 1.1);
        let s = crate::kepler::PoincareState {
            lambda1: l1,
            lambda2: l2,
            ell1: rnd(-3.0, 3.0),
            ell2: rnd(-3.0, 3.0),
            x1: Complex64::from_polar((l1 * xi(e1)).sqrt(), rnd(0.0, 6.28)),
            x2: Complex64::from_polar((l2 * xi(e2)).sqrt(), rnd(0.0, 6.28)),
        };
        let cart = poincare_to_cartesian(&s, &c)?;
        let back = cartesian_to_poincare(&cart, &c)?;
        // Longitudes are circle-valued: compare modulo 2 pi.
        let wrap = |d: f64| (d + PI).rem_euclid(2.0 * PI) - PI;
        worst_chart = worst_chart
            .max((back.lambda1 - s.lambda1).abs())
            .max((back.lambda2 - s.lambda2).abs())
            .max(wrap(back.ell1 - s.ell1).abs())
            .max(wrap(back.ell2 - s.ell2).abs())
            .max((back.x1 - s.x1).norm())
            .max((back.x2 - s.x2).norm());
    }
    // Synthetic two-tone frequency recovery.
    let n = 4096;
    let dt = 0.1;
    let signal: Vec<Complex64> = (0..n)
        .map(|i| {
            Complex64::from_polar(1.0, 0.3 * dt * i as f64) + Complex64::from_polar(0.5, 1.7 * dt * i as f64)
        })
        .collect();
    let comps = fundamental_frequencies(&signal, dt, 2)?;
    let tone_err = (comps[0].0 - 0.3).abs().max((comps[1].0 - 1.7).abs());
    let pass = worst_grad <= 1e-7 && worst_chart <= 1e-11 && tone_err <= 1e-7;
    Ok((
        pass,
        format!("gradient {worst_grad:.1e} (1e-7); chart round-trip {worst_chart:.1e} (1e-11); two-tone {tone_err:.1e} (1e-7)"),
    ))
}

/// Render the battery as a PASS/FAIL table.
pub fn format_table(outcomes: &[CriterionOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("[{status}] {:2} {} - {}\n", o.id, o.name, o.detail));
    }
    let n_pass = outcomes.iter().filter(|o| o.passed).count();
    out.push_str(&format!("{n_pass}/{} criteria passed\n", outcomes.len()));
    out
}

/// True when every criterion passed.
pub fn all_passed(outcomes: &[CriterionOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed)
}

#[allow(dead_code)]
fn unused(_: &Error) {}
