use coorb::kepler::{cartesian_to_poincare, poincare_to_cartesian};
use coorb::system::{derive_constants, MassConfig};
use coorb::three_body::{integrate, Scheme, Trajectory};

fn main() {
    let cfg = MassConfig::new(1.0, 1.0, 0.3, 1e-3, 2.0 * std::f64::consts::PI).unwrap();
    let c = derive_constants(&cfg).unwrap();
    let torus = coorb::action_angle::torus_embedding(0.05, &[0.0], &c, &cfg).unwrap();
    let p0 = torus.poincare_point(0, 0.0, &cfg);
    let mut s = poincare_to_cartesian(&p0, &c).unwrap();
    let dt = cfg.fast_period() / 200.0;
    let mut t_done = 0.0f64;
    let mut all: Vec<(f64, f64, f64, f64)> = Vec::new(); // t, zeta1, e2, d12
    let mut aborts = 0;
    while t_done < 1000.0 && aborts < 200 {
        let remaining = 1000.0 - t_done;
        let res = integrate(&s, &cfg, remaining, dt, Scheme::Splitting, 50);
        let (traj, aborted): (Trajectory, bool) = match res {
            Ok(t) => (t, false),
            Err(coorb::Error::IntegrationAborted { partial, .. }) => { aborts += 1; (*partial, true) }
            Err(e) => { println!("hard error: {e}"); return; }
        };
        for (i, st) in traj.states.iter().enumerate() {
            let p = cartesian_to_poincare(st, &c).unwrap();
            let zeta1 = (p.ell1 - p.ell2).rem_euclid(2.0 * std::f64::consts::PI);
            let e2 = (p.x2.norm_sqr() / p.lambda2 * 2.0).sqrt();
            all.push((t_done + traj.times[i], zeta1, e2, (st.r1 - st.r2).norm()));
        }
        s = *traj.states.last().unwrap();
        t_done += *traj.times.last().unwrap();
        if !aborted { break; }
    }
    println!("reached t = {t_done:.1} with {aborts} hill crossings");
    let emax = all.iter().map(|v| v.2).fold(0.0f64, f64::max);
    let dmin = all.iter().map(|v| v.3).fold(f64::INFINITY, f64::min);
    let zmax = all.iter().map(|v| v.1).fold(0.0f64, f64::max);
    let zmin = all.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    println!("e2 max {emax:.4}, d12 min {dmin:.4}, zeta1 range [{zmin:.3}, {zmax:.3}]");
    for chunk in all.chunks(all.len() / 20) {
        let t = chunk[0].0;
        let e: f64 = chunk.iter().map(|v| v.2).fold(0.0, f64::max);
        let d: f64 = chunk.iter().map(|v| v.3).fold(f64::INFINITY, f64::min);
        println!("  t={t:7.1} e2max={e:.4} dmin={d:.4}");
    }
}
