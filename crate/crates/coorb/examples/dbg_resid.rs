use coorb::system::{derive_constants, MassConfig};
fn main() {
    // Harmonic content of the exact model profile F_delta(theta) - pi:
    // residual of truncation at |k| <= K for the pure integrable flow.
    let cfg = MassConfig::new(1.0, 1.0, 0.3, 1e-3, 2.0 * std::f64::consts::PI).unwrap();
    let c = derive_constants(&cfg).unwrap();
    for delta in [0.02, 0.05, 0.1] {
        let n = 4096usize;
        let profile = coorb::action_angle::horseshoe_profile(delta, n, &c, &cfg).unwrap();
        let pi = std::f64::consts::PI;
        // Fourier coefficients over one exact period (drop the duplicated endpoint).
        let mut power: Vec<f64> = Vec::new();
        let total: f64 = profile.zeta1[..n].iter().map(|z| (z - pi) * (z - pi)).sum();
        for k in 0..16 {
            let (mut cr, mut ci) = (0.0, 0.0);
            for (i, z) in profile.zeta1[..n].iter().enumerate() {
                let ang = 2.0 * pi * (k as f64) * (i as f64) / (n as f64);
                cr += (z - pi) * ang.cos();
                ci += (z - pi) * ang.sin();
            }
            power.push((cr * cr + ci * ci) / (n as f64));
        }
        let mut captured = power[0];
        print!("delta={delta}: residual after K: ");
        for k in 1..10 {
            captured += 2.0 * power[k];
            let resid = ((total - captured).max(0.0) / total).sqrt();
            print!("K={k}:{resid:.4} ");
        }
        println!();
    }
}
