fn main() {
    let cfg = coorb::system::MassConfig::new(1.0, 1.0, 0.3, 1e-3, 2.0 * std::f64::consts::PI).unwrap();
    let t0 = std::time::Instant::now();
    let outcomes = coorb::acceptance::run_all(&cfg);
    print!("{}", coorb::acceptance::format_table(&outcomes));
    println!("total {:.1?}", t0.elapsed());
}
