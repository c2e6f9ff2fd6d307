use coorb::kepler::{cartesian_to_poincare, poincare_to_cartesian};
use coorb::system::{derive_constants, MassConfig};
use coorb::three_body::{integrate, Scheme};

fn e2_trace(traj: &coorb::three_body::Trajectory, c: &coorb::system::DerivedConstants) -> Vec<(f64, f64, f64)> {
    traj.times
        .iter()
        .zip(&traj.states)
        .map(|(&t, s)| {
            let p = cartesian_to_poincare(s, c).unwrap();
            let e2 = (p.x2.norm_sqr() / p.lambda2 * 2.0).sqrt();
            let zeta1 = (p.ell1 - p.ell2).rem_euclid(2.0 * std::f64::consts::PI);
            (t, e2, zeta1)
        })
        .collect()
}

fn main() {
    let cfg = MassConfig::new(1.0, 1.0, 0.3, 1e-3, 2.0 * std::f64::consts::PI).unwrap();
    let c = derive_constants(&cfg).unwrap();
    let torus = coorb::action_angle::torus_embedding(0.05, &[0.0], &c, &cfg).unwrap();
    let p0 = torus.poincare_point(0, 0.0, &cfg);
    let s0 = poincare_to_cartesian(&p0, &c).unwrap();

    // 1) Splitting vs DP54 to t = 60.
    let a = integrate(&s0, &cfg, 60.0, cfg.fast_period() / 200.0, Scheme::Splitting, 2000).unwrap();
    let b = integrate(&s0, &cfg, 60.0, 1e-3, Scheme::RkAdaptive { rel_tol: 1e-12 }, 10_000).unwrap();
    let ta = e2_trace(&a, &c);
    let tb = e2_trace(&b, &c);
    println!("splitting vs dp54 at matched times:");
    for (x, y) in ta.iter().zip(&tb) {
        println!("  t={:6.1} e2_split={:.5} e2_rk={:.5}  zeta_split={:.4} zeta_rk={:.4}", x.0, x.1, y.1, x.2, y.2);
    }
    // 2) dt halved, same IC, compare e2(60)
    let a2 = integrate(&s0, &cfg, 60.0, cfg.fast_period() / 400.0, Scheme::Splitting, 4000).unwrap();
    let t2 = e2_trace(&a2, &c);
    println!("dt/2 final e2 = {:.5} (vs {:.5})", t2.last().unwrap().1, ta.last().unwrap().1);

    // 3) Launch from the far phase theta1 = pi (same level) and run long.
    let torus_pi = coorb::action_angle::torus_embedding(0.05, &[std::f64::consts::PI], &c, &cfg).unwrap();
    let p1 = torus_pi.poincare_point(0, 0.0, &cfg);
    let s1 = poincare_to_cartesian(&p1, &c).unwrap();
    match integrate(&s1, &cfg, 1000.0, cfg.fast_period() / 200.0, Scheme::Splitting, 10_000) {
        Ok(traj) => {
            let tr = e2_trace(&traj, &c);
            let emax = tr.iter().map(|v| v.1).fold(0.0f64, f64::max);
            println!("far-phase launch survived to t=1000, max e2 = {emax:.5}");
        }
        Err(coorb::Error::IntegrationAborted { t, .. }) => println!("far-phase launch aborted at t={t:.1}"),
        Err(e) => println!("error: {e}"),
    }
}
