//! `coorb` — command-line laboratory for the planar 1:1 co-orbital resonance.
//!
//! Subcommands cover the phase portraits, separatrix geometry, semi-fast
//! frequency sweeps, the secular spectrum, the 2d torus export, full-problem
//! integration with verification, and the acceptance battery. All physical
//! parameters come from a `key = value` configuration file; flags never
//! override masses.

use clap::{Parser, Subcommand, ValueEnum};
use coorb::acceptance;
use coorb::action_angle::{nu_asymptotic, period, torus_embedding, QuadMode};
use coorb::exec;
use coorb::resonant::{averaged_hamiltonian_circular, keplerian_resonant, mechanical_h1};
use coorb::secular::{secular_eigs, separatrix_constants};
use coorb::separatrix::write_separatrix_csv;
use coorb::system::{derive_constants, gascheau_stable, MassConfig};
use coorb::three_body::Scheme;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "coorb", version, about = "Numerical laboratory for co-orbital (1:1 resonant) horseshoe dynamics")]
struct Cli {
    /// Number of worker threads for the data-parallel paths (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PortraitModel {
    Mechanical,
    Averaged,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Direct,
    Split,
}

impl From<Mode> for QuadMode {
    fn from(m: Mode) -> QuadMode {
        match m {
            Mode::Direct => QuadMode::Direct,
            Mode::Split => QuadMode::Split,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Splitting,
    RkAdaptive,
}

#[derive(Subcommand)]
enum Command {
    /// Print the derived constants of the configuration as JSON.
    Params {
        #[arg(long)]
        config: PathBuf,
    },
    /// Export a phase-portrait grid of Hamiltonian values as CSV.
    Portrait {
        #[arg(long, value_enum)]
        model: PortraitModel,
        /// Grid resolution per axis.
        #[arg(long, default_value_t = 128)]
        n: usize,
        /// Half-width of the Z1 axis.
        #[arg(long)]
        zmax: f64,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Export phi_min and libration amplitude for a list of energy shifts.
    Separatrix {
        /// Comma-separated delta values.
        #[arg(long, value_delimiter = ',')]
        deltas: Vec<f64>,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sweep the semi-fast frequency over a log-spaced delta range.
    Freq {
        #[arg(long)]
        delta_min: f64,
        #[arg(long)]
        delta_max: f64,
        #[arg(long, default_value_t = 25)]
        points: usize,
        #[arg(long, value_enum, default_value = "direct")]
        mode: Mode,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the secular spectrum and separatrix constants at one level as JSON.
    Secular {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        config: PathBuf,
    },
    /// Export the 2d co-orbital torus embedding at one level as CSV.
    Torus {
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Integrate the full problem from the delta-torus at theta = (0, 0) and
    /// verify drifts and recovered frequencies against the model.
    Integrate {
        #[arg(long)]
        delta: f64,
        /// Duration in fast (orbital) periods.
        #[arg(long, default_value_t = 1000.0)]
        periods: f64,
        /// Step size; defaults to fast period / 200.
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long, value_enum, default_value = "splitting")]
        scheme: SchemeArg,
        /// Local relative tolerance of the adaptive scheme.
        #[arg(long, default_value_t = 1e-10)]
        rk_tol: f64,
        #[arg(long)]
        config: PathBuf,
        /// Trajectory CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Summary JSON path.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Run the full acceptance battery and print a PASS/FAIL table.
    Verify {
        #[arg(long)]
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        #[cfg(feature = "parallel")]
        {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("coorb: could not size the thread pool: {e}");
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            eprintln!("coorb: built without the parallel feature; --threads {n} ignored");
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("coorb: {e}");
            match e {
                coorb::Error::Config(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn load(config: &PathBuf) -> coorb::Result<(MassConfig, coorb::system::DerivedConstants)> {
    let cfg = MassConfig::from_path(config)?;
    let c = derive_constants(&cfg)?;
    Ok((cfg, c))
}

fn create(path: &PathBuf) -> coorb::Result<std::io::BufWriter<std::fs::File>> {
    Ok(std::io::BufWriter::new(std::fs::File::create(path)?))
}

fn run(command: Command) -> coorb::Result<ExitCode> {
    match command {
        Command::Params { config } => {
            let (cfg, c) = load(&config)?;
            let json = serde_json::json!({
                "m0": cfg.m0,
                "m1": cfg.m1,
                "m2": cfg.m2,
                "epsilon": cfg.epsilon,
                "upsilon0": cfg.upsilon0,
                "mu1": c.mu1,
                "mu2": c.mu2,
                "mhat1": c.mhat1,
                "mhat2": c.mhat2,
                "lambda10": c.lambda10,
                "lambda20": c.lambda20,
                "a10": c.a10,
                "a20": c.a20,
                "a_star": c.a_star,
                "lambda1_star": c.lambda1_star,
                "lambda2_star": c.lambda2_star,
                "kappa": c.kappa,
                "a": c.a,
                "b": c.b,
                "d": c.d,
                "e": c.e,
                "k": c.k,
                "gascheau_stable": gascheau_stable(&cfg),
            });
            println!("{}", serde_json::to_string_pretty(&json).expect("serializable"));
        }
        Command::Portrait { model, n, zmax, config, out } => {
            let (cfg, c) = load(&config)?;
            if n < 2 || !(zmax > 0.0) {
                return Err(coorb::Error::Config("portrait needs n >= 2 and zmax > 0".to_string()));
            }
            // zeta1 on the open interval (or the collision-guarded band for
            // the averaged model), Z1 symmetric about 0; row-major rows over
            // zeta1.
            let two_pi = 2.0 * std::f64::consts::PI;
            let zeta_lo = match model {
                PortraitModel::Mechanical => two_pi / (n as f64 + 1.0),
                PortraitModel::Averaged => coorb::resonant::DEFAULT_DELTA_HAT,
            };
            let zeta_hi = two_pi - zeta_lo;
            let rows = exec::map_indexed(n, |i| {
                let zeta1 = zeta_lo + (zeta_hi - zeta_lo) * i as f64 / (n - 1) as f64;
                let mut row = Vec::with_capacity(n);
                for j in 0..n {
                    let z1 = -zmax + 2.0 * zmax * j as f64 / (n - 1) as f64;
                    let h = match model {
                        PortraitModel::Mechanical => mechanical_h1(z1, zeta1, &c, &cfg),
                        PortraitModel::Averaged => averaged_hamiltonian_circular([z1, 0.0], zeta1, &cfg, &c)
                            .map(|h| h - keplerian_resonant([0.0, 0.0], &c)),
                    };
                    row.push((zeta1, z1, h));
                }
                row
            });
            let mut w = create(&out)?;
            writeln!(w, "zeta1,Z1,H")?;
            for row in rows {
                for (zeta1, z1, h) in row {
                    writeln!(w, "{:.16e},{:.16e},{:.16e}", zeta1, z1, h?)?;
                }
            }
        }
        Command::Separatrix { deltas, config, out } => {
            let (_cfg, _c) = load(&config)?;
            if deltas.is_empty() {
                return Err(coorb::Error::Config("no deltas given".to_string()));
            }
            let w = create(&out)?;
            write_separatrix_csv(&deltas, w)?;
        }
        Command::Freq { delta_min, delta_max, points, mode, config, out } => {
            let (cfg, c) = load(&config)?;
            if !(delta_min > 0.0) || !(delta_max > delta_min) || points < 2 {
                return Err(coorb::Error::Config("freq needs 0 < delta-min < delta-max and points >= 2".to_string()));
            }
            if delta_max > 0.3 {
                eprintln!("coorb: note: delta > 0.3 lies outside the near-separatrix asymptotic window");
            }
            let qmode: QuadMode = mode.into();
            let log_lo = delta_min.ln();
            let log_hi = delta_max.ln();
            let records = exec::map_indexed(points, |i| {
                let delta = (log_lo + (log_hi - log_lo) * i as f64 / (points - 1) as f64).exp();
                period(delta, &c, &cfg, qmode)
            });
            let mut w = create(&out)?;
            writeln!(w, "delta,J1,T,nu,nu_prime,nu_asymptotic,residual")?;
            for rec in records {
                let rec = rec?;
                let nu_asym = nu_asymptotic(rec.delta, &c, &cfg);
                writeln!(
                    w,
                    "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                    rec.delta,
                    rec.j1,
                    rec.period,
                    rec.nu,
                    rec.nu_prime,
                    nu_asym,
                    rec.nu / nu_asym - 1.0
                )?;
            }
        }
        Command::Secular { delta, config } => {
            let (cfg, _c) = load(&config)?;
            let mode = if delta >= 1e-8 { QuadMode::Direct } else { QuadMode::Split };
            let spec = secular_eigs(delta, &cfg, mode)?;
            let sc = separatrix_constants()?;
            let json = serde_json::json!({
                "delta": spec.delta,
                "a_bar": spec.a_bar,
                "b_bar": spec.b_bar,
                "g1": spec.g1,
                "g2": spec.g2,
                "c_a": sc.c_a,
                "c_b": sc.c_b,
                "c2": sc.c2,
                "quadrature_error": sc.quad_error,
            });
            println!("{}", serde_json::to_string_pretty(&json).expect("serializable"));
        }
        Command::Torus { delta, samples, config, out } => {
            let (cfg, c) = load(&config)?;
            if samples < 2 {
                return Err(coorb::Error::Config("torus needs at least 2 samples".to_string()));
            }
            let two_pi = 2.0 * std::f64::consts::PI;
            let grid: Vec<f64> = (0..samples).map(|i| two_pi * i as f64 / samples as f64).collect();
            let torus = torus_embedding(delta, &grid, &c, &cfg)?;
            let w = create(&out)?;
            torus.write_csv(&cfg, w)?;
        }
        Command::Integrate { delta, periods, dt, scheme, rk_tol, config, out, summary } => {
            let (cfg, _c) = load(&config)?;
            let dt = dt.unwrap_or(cfg.fast_period() / 200.0);
            let scheme = match scheme {
                SchemeArg::Splitting => Scheme::Splitting,
                SchemeArg::RkAdaptive => Scheme::RkAdaptive { rel_tol: rk_tol },
            };
            let (report, traj) = acceptance::trajectory_report(&cfg, delta, periods, dt, scheme)?;
            let w = create(&out)?;
            traj.write_csv(w)?;
            let json = serde_json::json!({
                "delta": report.delta,
                "nu_model": report.nu_model,
                "upsilon_model": report.upsilon_model,
                "nu_recovered": report.nu_recovered,
                "upsilon_recovered": report.upsilon_recovered,
                "energy_drift": report.energy_drift,
                "angmom_drift": report.angmom_drift,
                "dalembert_drift": report.dalembert_drift,
                "libration_amplitude_deg": report.libration_amplitude_deg,
                "librates_about_pi": report.librates_about_pi,
                "quasiperiodic_residual": report.quasiperiodic_residual,
                "n_samples": report.n_samples,
            });
            let text = serde_json::to_string_pretty(&json).expect("serializable");
            match summary {
                Some(path) => {
                    let mut w = create(&path)?;
                    writeln!(w, "{text}")?;
                }
                None => println!("{text}"),
            }
        }
        Command::Verify { config } => {
            let (cfg, _c) = load(&config)?;
            let outcomes = acceptance::run_all(&cfg);
            print!("{}", acceptance::format_table(&outcomes));
            if !acceptance::all_passed(&outcomes) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
