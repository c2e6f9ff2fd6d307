use coorb::kepler::poincare_to_cartesian;
use coorb::system::{derive_constants, MassConfig};
use coorb::three_body::{integrate, Scheme};
fn main() {
    let cfg = MassConfig::new(1.0, 1.0, 0.3, 1e-3, 2.0 * std::f64::consts::PI).unwrap();
    let c = derive_constants(&cfg).unwrap();
    let torus = coorb::action_angle::torus_embedding(0.05, &[0.0], &c, &cfg).unwrap();
    let p0 = torus.poincare_point(0, 0.0, &cfg);
    let s0 = poincare_to_cartesian(&p0, &c).unwrap();
    println!("IC r1=({:.17e},{:.17e}) p1=({:.17e},{:.17e})", s0.r1.x, s0.r1.y, s0.p1.x, s0.p1.y);
    println!("IC r2=({:.17e},{:.17e}) p2=({:.17e},{:.17e})", s0.r2.x, s0.r2.y, s0.p2.x, s0.p2.y);
    let traj = integrate(&s0, &cfg, 30.0, cfg.fast_period() / 400.0, Scheme::Splitting, 12000).unwrap();
    let sf = traj.states.last().unwrap();
    println!("t30 r1=({:.10e},{:.10e}) r2=({:.10e},{:.10e})", sf.r1.x, sf.r1.y, sf.r2.x, sf.r2.y);
    let p = coorb::kepler::cartesian_to_poincare(sf, &c).unwrap();
    println!("t30 e2 = {:.6}", (p.x2.norm_sqr() / p.lambda2 * 2.0).sqrt());
}
