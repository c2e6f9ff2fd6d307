use coorb::acceptance::trajectory_report;
use coorb::system::MassConfig;
use coorb::three_body::Scheme;
fn main() {
    for eps in [1e-4, 3e-5] {
        let cfg = MassConfig::new(1.0, 1.0, 0.3, eps, 2.0 * std::f64::consts::PI).unwrap();
        let dt = cfg.fast_period() / 200.0;
        let t0 = std::time::Instant::now();
        match trajectory_report(&cfg, 0.05, 1000.0, dt, Scheme::Splitting) {
            Ok((r, _)) => println!(
                "eps={eps:.0e}: energy {:.1e} angmom {:.1e} C {:.1e} | nu {:.5} vs model {:.5} ({:+.2}%) | ups {:.6} vs {:.6} ({:+.3}%) | amp {:.2} deg | resid {:.4} | librates {} [{:.1?}]",
                r.energy_drift, r.angmom_drift, r.dalembert_drift,
                r.nu_recovered, r.nu_model, 100.0 * (r.nu_recovered - r.nu_model) / r.nu_model,
                r.upsilon_recovered, r.upsilon_model, 100.0 * (r.upsilon_recovered - r.upsilon_model) / r.upsilon_model,
                r.libration_amplitude_deg, r.quasiperiodic_residual, r.librates_about_pi, t0.elapsed()
            ),
            Err(e) => println!("eps={eps:.0e}: {e}"),
        }
    }
}
