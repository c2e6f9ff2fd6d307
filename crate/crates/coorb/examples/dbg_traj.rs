use coorb::kepler::poincare_to_cartesian;
use coorb::system::{derive_constants, MassConfig};
use coorb::three_body::{integrate, Scheme};

fn main() {
    let cfg = MassConfig::new(1.0, 1.0, 0.3, 1e-3, 2.0 * std::f64::consts::PI).unwrap();
    let c = derive_constants(&cfg).unwrap();
    let delta = 0.05;
    let torus = coorb::action_angle::torus_embedding(delta, &[0.0], &c, &cfg).unwrap();
    println!("F(0) = {} (phi_min = {}), G(0)*sqrt(eps) = {:.3e}", torus.f_samples[0],
             coorb::separatrix::phi_min(delta).unwrap(), torus.g_samples[0] * cfg.epsilon.sqrt());
    let p0 = torus.poincare_point(0, 0.0, &cfg);
    println!("p0: L1={} L2={} l1={} l2={}", p0.lambda1, p0.lambda2, p0.ell1, p0.ell2);
    let s0 = poincare_to_cartesian(&p0, &c).unwrap();
    let dt = cfg.fast_period() / 200.0;
    let traj = match integrate(&s0, &cfg, 120.0, dt, Scheme::Splitting, 200) {
        Ok(t) => t,
        Err(coorb::Error::IntegrationAborted { partial, t, .. }) => { println!("ABORT t={t}"); *partial }
        Err(e) => { println!("error: {e}"); return; }
    };
    {
        {
            for (i, s) in traj.states.iter().enumerate() {
                if i % 4 != 0 && i + 1 != traj.states.len() { continue; }
                let p = coorb::kepler::cartesian_to_poincare(s, &c).unwrap();
                let z1 = p.lambda1 - c.lambda10;
                let zeta1 = (p.ell1 - p.ell2).rem_euclid(2.0 * std::f64::consts::PI);
                let d = (s.r1 - s.r2).norm();
                println!("t={:7.2} zeta1={:8.4} Z1={:+9.2e} d12={:.4} e1={:.2e} e2={:.2e}",
                    traj.times[i], zeta1, z1, d,
                    (p.x1.norm_sqr() / p.lambda1 * 2.0).sqrt(),
                    (p.x2.norm_sqr() / p.lambda2 * 2.0).sqrt());
            }
        }
    }
}
