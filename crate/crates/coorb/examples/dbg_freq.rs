fn main() {
    use num_complex::Complex64;
    // constant signal
    let s = vec![Complex64::new(0.7, -0.2); 512];
    let comps = coorb::freq::fundamental_frequencies(&s, 0.05, 3).unwrap();
    println!("constant -> {} comps:", comps.len());
    for c in &comps { println!("  omega={:.3e} amp={:.3e}", c.0, c.1.norm()); }
    // negative frequency invariance
    let tone: Vec<Complex64> = (0..2048).map(|i| Complex64::new(0.8, 0.3) * Complex64::from_polar(1.0, -1.2 * 0.07 * i as f64)).collect();
    let c1 = coorb::freq::fundamental_frequencies(&tone, 0.07, 1).unwrap();
    let scaled: Vec<Complex64> = tone.iter().map(|v| v * Complex64::from_polar(3.0, 1.1)).collect();
    let c2 = coorb::freq::fundamental_frequencies(&scaled, 0.07, 1).unwrap();
    println!("neg: {} vs {} diff {:.3e}", c1[0].0, c2[0].0, (c1[0].0 - c2[0].0).abs());
    // window doubling
    for n in [512usize, 1024, 2048, 4096] {
        let mut s: Vec<Complex64> = (0..n).map(|i| Complex64::from_polar(1.0, 0.3 * 0.1 * i as f64)).collect();
        for (i, v) in s.iter_mut().enumerate() { *v += Complex64::from_polar(0.9, 0.41 * 0.1 * i as f64 + 0.2); }
        let comps = coorb::freq::fundamental_frequencies(&s, 0.1, 2).unwrap();
        let best = comps.iter().map(|c| (c.0 - 0.3).abs()).fold(f64::INFINITY, f64::min);
        println!("n={n}: err {:.3e}", best);
    }
}
