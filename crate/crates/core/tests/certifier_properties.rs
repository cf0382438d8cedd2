use fracineq::functions::{catalog, certify, is_harmonically_s_convex, lookup, probe, DEFAULT_GRID_DENSITY};

#[test]
fn neg_log_certificate_grid() {
    let tf = lookup("neg_log").unwrap();
    for s in [0.25, 0.5, 1.0] {
        for q in [1.0, 2.0, 3.0] {
            let v = certify(&tf, 1.0, 2.0, s, q, DEFAULT_GRID_DENSITY).unwrap();
            assert!(v.passed && v.witness.is_none(), "s = {s}, q = {q}");
        }
    }
}

#[test]
fn convex_at_unit_order_implies_every_smaller_order() {
    for tf in catalog() {
        for &(a, b, q) in &[(0.5, 4.0, 1.0), (1.0, 2.0, 2.0), (2.0, 9.0, 3.0)] {
            let at_one = certify(&tf, a, b, 1.0, q, 32).unwrap();
            if !at_one.passed {
                continue;
            }
            for s in [0.1, 0.4, 0.75] {
                assert!(certify(&tf, a, b, s, q, 32).unwrap().passed, "{} s = {s}", tf.name);
            }
        }
    }
}

#[test]
fn analytic_certificates_agree_with_grid() {
    for tf in catalog().into_iter().filter(|tf| tf.analytic_certificate.is_some()) {
        for q in [1.0, 1.5, 4.0] {
            assert!(certify(&tf, 0.2, 8.0, 1.0, q, 32).unwrap().passed, "{} q = {q}", tf.name);
        }
    }
}

#[test]
fn verdicts_are_reproducible() {
    let g = probe("neg_identity").unwrap();
    let first = is_harmonically_s_convex(&*g, 1.0, 2.0, 1.0, 40).unwrap();
    let second = is_harmonically_s_convex(&*g, 1.0, 2.0, 1.0, 40).unwrap();
    assert!(!first.passed);
    assert_eq!(first, second);
    let w = first.witness.unwrap();
    assert!(w.violation > 0.1667 && w.violation <= 3.0 - 2.0 * 2f64.sqrt() + 1e-12);
}

#[test]
fn derivatives_consistent() {
    let samples: Vec<f64> = (1..=40).map(|k| 0.25 * k as f64).collect();
    for tf in catalog() {
        assert!(tf.derivative_mismatch(&samples) <= 1e-6, "{}", tf.name);
    }
    assert!(lookup("corrupt_deriv").unwrap().derivative_mismatch(&samples) > 1e-2);
}
