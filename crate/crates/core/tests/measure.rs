use chebosc::oscillator::{gram_matrix, orthonormality_check, MeasureSpec, DEFAULT_NODES};

#[test]
fn gram_is_identity_below_critical_coupling() {
    for a in [0.5, 1.0, 1.2] {
        let spec = MeasureSpec::new(a).unwrap();
        let g = gram_matrix(8, &spec, 400).unwrap();
        for (m, row) in g.iter().enumerate() {
            for (n, v) in row.iter().enumerate() {
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-8, "a={a} ({m},{n}) = {v}");
            }
        }
    }
}

#[test]
fn density_mass_drops_past_critical_coupling() {
    let spec = MeasureSpec::new(2.0).unwrap();
    let mass = orthonormality_check(0, 0, &spec, DEFAULT_NODES).unwrap();
    let atoms: f64 = spec.point_masses().iter().map(|(_, w)| w).sum();
    assert!((mass + atoms - 1.0).abs() < 1e-10);
    assert!(MeasureSpec::new(0.0).is_err());
    assert!(MeasureSpec::new(f64::NAN).is_err());
}
