use fracineq::coefficients::{lambda1, lambda3, lambda5, lambda5_log_form, moment_alpha, moment_t_1mt, moment_ts};
use fracineq::functions::{catalog, certify, lookup};
use fracineq::ostrowski::{
    bound, bound_thm22, bound_thm23, bound_thm24, bound_thm26, classical_deviation, corollary_bound,
    evaluate_all_bounds, hh_fractional_check, identity_residual, s_f, DerivMagnitudes, Interval, Params, TheoremId,
};
use fracineq::quadrature::integrate_with;
use fracineq::{LambdaInputs, QuadConfig, TestFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel(actual: f64, expected: f64) -> f64 {
    let scale = expected.abs().max(f64::MIN_POSITIVE);
    (actual - expected).abs() / scale
}

fn tight() -> QuadConfig {
    QuadConfig::with_tolerances(1e-12, 1e-15)
}

// Moments can be tiny, so only the relative tolerance may bind.
fn moment_cfg() -> QuadConfig {
    QuadConfig::with_tolerances(1e-13, 1e-300)
}

// 0 < a <= x <= b <= 10 with b/a <= 1000.
fn random_interval(rng: &mut ChaCha8Rng) -> Interval {
    let a = rng.gen_range(0.01f64.ln()..10f64.ln()).exp();
    let b = rng.gen_range(a..=10.0);
    let x = match rng.gen_range(0..20) {
        0 => a,
        1 => b,
        _ => rng.gen_range(a..=b),
    };
    Interval::new(a, b.max(a * (1.0 + 1e-9)), x).unwrap()
}

fn random_params(rng: &mut ChaCha8Rng) -> Params {
    let alpha = rng.gen_range(0.1..=3.0);
    let s = rng.gen_range(0.1..=1.0);
    let q = if rng.gen_bool(0.25) { 1.0 } else { rng.gen_range(1.25..=4.0) };
    Params::new(alpha, s, q).unwrap()
}

#[test]
fn identity_holds_for_catalog() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = QuadConfig::default();
    for tf in catalog() {
        for _ in 0..100 {
            let iv = random_interval(&mut rng);
            let alpha = rng.gen_range(0.1..=3.0);
            let r = identity_residual(&tf, &iv, alpha, &cfg).unwrap();
            assert!(r <= 1e-8, "{} at {iv:?}, α = {alpha}: residual {r:e}", tf.name);
        }
    }
}

#[test]
fn corrupted_derivative_breaks_identity() {
    let tf = lookup("corrupt_deriv").unwrap();
    let iv = Interval::new(1.0, 2.0, 1.5).unwrap();
    assert!(identity_residual(&tf, &iv, 0.5, &QuadConfig::default()).unwrap() > 1e-3);
}

#[test]
fn unit_order_collapses_to_classical_deviation() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for tf in catalog() {
        for _ in 0..40 {
            let iv = random_interval(&mut rng);
            let scale = (iv.b() - iv.a()) / (iv.a() * iv.b());
            let sf = s_f(&tf, &iv, 1.0, &tight()).unwrap();
            let classical = scale * classical_deviation(&tf, &iv, &tight()).unwrap();
            let err = (sf - classical).abs() / classical.abs().max(1e-300);
            // exact zero happens at symmetric points; then compare absolutely
            assert!(err <= 1e-10 || (sf - classical).abs() <= 1e-13, "{}: {sf} vs {classical}", tf.name);
            assert!(identity_residual(&tf, &iv, 1.0, &QuadConfig::default()).unwrap() <= 1e-9);
        }
    }
}

// The α = 1 bounds, evaluated from their own printed form with every
// coefficient taken from a moment integral.
mod classical {
    use super::*;

    fn l1(a: f64, x: f64, s: f64, vt: f64, rho: f64) -> f64 {
        moment_ts(&LambdaInputs::new(a, x, s, vt, rho).unwrap(), &moment_cfg()).unwrap()
    }
    // The corrected λ₂ (Beta factor B(ρ+1, s+1)) is exactly this moment.
    fn l2(a: f64, x: f64, s: f64, vt: f64, rho: f64) -> f64 {
        moment_t_1mt(&LambdaInputs::new(a, x, s, vt, rho).unwrap(), &moment_cfg()).unwrap()
    }

    struct Setup {
        a: f64,
        b: f64,
        x: f64,
        fx: f64,
        fa: f64,
        fb: f64,
        s: f64,
        q: f64,
    }

    impl Setup {
        fn new(d: &DerivMagnitudes, iv: &Interval, s: f64, q: f64) -> Self {
            Self { a: iv.a(), b: iv.b(), x: iv.x(), fx: d.at_x(), fa: d.at_a(), fb: d.at_b(), s, q }
        }

        // ab/(b-a) times the printed brace; the caller divides by ab/(b-a).
        fn braces(&self, vt: f64, rho: f64, wa: f64, wb: f64) -> f64 {
            let Setup { a, b, x, fx, fa, fb, s, q } = *self;
            let left = if x > a {
                wa * (x - a).powi(2) * (l1(a, x, s, vt, rho) * fx.powf(q) + l2(a, x, s, vt, rho) * fa.powf(q)).powf(1.0 / q)
            } else {
                0.0
            };
            let right = if x < b {
                wb * (b - x).powi(2) * (l1(b, x, s, vt, rho) * fx.powf(q) + l2(b, x, s, vt, rho) * fb.powf(q)).powf(1.0 / q)
            } else {
                0.0
            };
            left + right
        }

        pub fn t16(&self) -> f64 {
            self.braces(self.q, self.q, 1.0, 1.0)
        }

        pub fn t17(&self) -> f64 {
            0.5f64.powf(1.0 - 1.0 / self.q) * self.braces(self.q, 1.0, 1.0, 1.0)
        }

        pub fn t18(&self) -> f64 {
            let e = 1.0 - 1.0 / self.q;
            let wa = if self.x > self.a { lambda5_log_form(self.a, self.x).powf(e) } else { 0.0 };
            let wb = if self.x < self.b { lambda5_log_form(self.b, self.x).powf(e) } else { 0.0 };
            self.braces(1.0, 1.0, wa, wb)
        }

        pub fn t19(&self) -> f64 {
            let p = self.q / (self.q - 1.0);
            (1.0 / (p + 1.0)).powf(1.0 / p) * self.braces(self.q, 0.0, 1.0, 1.0)
        }

        pub fn t110(&self) -> f64 {
            let Setup { a, b, x, fx, fa, fb, s, q } = *self;
            let p = q / (q - 1.0);
            let mean = |e: f64| ((fx.powf(q) + e.powf(q)) / (s + 1.0)).powf(1.0 / q);
            let left = if x > a { l1(a, x, 0.0, p, p).powf(1.0 / p) * (x - a).powi(2) * mean(fa) } else { 0.0 };
            let right = if x < b { l1(b, x, 0.0, p, p).powf(1.0 / p) * (b - x).powi(2) * mean(fb) } else { 0.0 };
            left + right
        }
    }

    #[test]
    fn bounds_collapse_at_unit_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..150 {
            let iv = random_interval(&mut rng);
            let s = rng.gen_range(0.1..=1.0);
            let q = if rng.gen_bool(0.3) { 1.0 } else { rng.gen_range(1.25..=4.0) };
            let d = DerivMagnitudes::new(rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0)).unwrap();
            let pr = Params::new(1.0, s, q).unwrap();
            let setup = Setup::new(&d, &iv, s, q);
            let mut pairs = vec![
                (TheoremId::T22, setup.t16()),
                (TheoremId::T23, setup.t17()),
                (TheoremId::T24, setup.t18()),
            ];
            if q > 1.0 {
                pairs.push((TheoremId::T25, setup.t19()));
                pairs.push((TheoremId::T26, setup.t110()));
            }
            for (id, expected) in pairs {
                let got = bound(id, &d, &iv, &pr).unwrap();
                let ok = rel(got, expected) <= 1e-10 || (got == 0.0 && expected == 0.0);
                assert!(ok, "{id} at {iv:?}, s={s}, q={q}: {got} vs {expected}");
            }
        }
    }
}

#[test]
fn unit_q_bounds_coincide() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let iv = random_interval(&mut rng);
        let pr = Params::new(rng.gen_range(0.1..=3.0), rng.gen_range(0.1..=1.0), 1.0).unwrap();
        let d = DerivMagnitudes::new(rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0)).unwrap();
        let b22 = bound_thm22(&d, &iv, &pr).unwrap();
        let b23 = bound_thm23(&d, &iv, &pr).unwrap();
        let b24 = bound_thm24(&d, &iv, &pr).unwrap();
        if b22 > 0.0 {
            assert!(rel(b23, b22) <= 1e-12 && rel(b24, b22) <= 1e-12, "{b22} {b23} {b24}");
        }
    }
}

#[test]
fn weighted_form_of_thm24_matches_moment_weight() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..100 {
        let iv = random_interval(&mut rng);
        let pr = Params::new(rng.gen_range(0.1..=3.0), rng.gen_range(0.1..=1.0), rng.gen_range(1.25..=4.0)).unwrap();
        let d = DerivMagnitudes::uniform(1.0).unwrap();
        let (a, b, x) = (iv.a(), iv.b(), iv.x());
        let (alpha, s, q) = (pr.alpha(), pr.s(), pr.q());
        let e = 1.0 - 1.0 / q;
        let (wa, wb) = iv.side_weights(alpha);
        // (λ₅/(α+1))^(1-1/q) is the t^α/(..)² moment to the same power
        let left = if wa > 0.0 {
            moment_alpha(a, x, alpha, &moment_cfg()).unwrap().powf(e)
                * wa
                * (lambda1(a, x, s, 1.0, alpha).unwrap()
                    + fracineq::coefficients::lambda2(a, x, s, 1.0, alpha).unwrap())
                .powf(1.0 / q)
        } else {
            0.0
        };
        let right = if wb > 0.0 {
            moment_alpha(b, x, alpha, &moment_cfg()).unwrap().powf(e)
                * wb
                * (lambda3(b, x, s, 1.0, alpha).unwrap()
                    + fracineq::coefficients::lambda4(b, x, s, 1.0, alpha).unwrap())
                .powf(1.0 / q)
        } else {
            0.0
        };
        let got = bound_thm24(&d, &iv, &pr).unwrap();
        assert!(rel(got, left + right) <= 1e-9, "{got} vs {}", left + right);
        if wa > 0.0 {
            let direct = (lambda5(a, x, alpha).unwrap() / (alpha + 1.0)).powf(e);
            let printed = (1.0 / (alpha + 1.0)).powf(e) * lambda5(a, x, alpha).unwrap().powf(e);
            assert!(rel(printed, direct) <= 1e-14);
        }
    }
}

#[test]
fn holder_bound_matches_factor_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..60 {
        let iv = random_interval(&mut rng);
        let (alpha, q) = (rng.gen_range(0.1..=3.0), rng.gen_range(1.25..=4.0));
        let pr = Params::new(alpha, 1.0, q).unwrap();
        let m = rng.gen_range(0.1..3.0);
        let d = DerivMagnitudes::uniform(m).unwrap();
        let p = pr.p().unwrap();
        let (wa, wb) = iv.side_weights(alpha);
        let kernel = |theta: f64| {
            integrate_with(
                |t| (t.powf(alpha) / (t * theta + (1.0 - t) * iv.x()).powi(2)).powf(p),
                0.0,
                1.0,
                &moment_cfg(),
            )
            .unwrap()
            .value
            .powf(1.0 / p)
        };
        let convex = integrate_with(|t| t * m.powf(q) + (1.0 - t) * m.powf(q), 0.0, 1.0, &tight())
            .unwrap()
            .value
            .powf(1.0 / q);
        let mut expected = 0.0;
        if wa > 0.0 {
            expected += wa * kernel(iv.a()) * convex;
        }
        if wb > 0.0 {
            expected += wb * kernel(iv.b()) * convex;
        }
        let got = bound_thm26(&d, &iv, &pr).unwrap();
        assert!(got > 0.0 && got.is_finite());
        assert!(rel(got, expected) <= 1e-9, "{got} vs {expected}");
    }
}

#[test]
fn corollaries_match_uniform_magnitudes() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let iv = random_interval(&mut rng);
        let pr = random_params(&mut rng);
        let m = rng.gen_range(0.0..5.0);
        let d = DerivMagnitudes::uniform(m).unwrap();
        for id in TheoremId::ALL {
            if id.needs_conjugate() && pr.p().is_none() {
                assert!(corollary_bound(id, m, &iv, &pr).is_err());
                continue;
            }
            let c = corollary_bound(id, m, &iv, &pr).unwrap();
            let t = bound(id, &d, &iv, &pr).unwrap();
            assert!(c == t || rel(c, t) <= 1e-12, "{id}: {c} vs {t}");
        }
    }
}

fn certified(tf: &TestFunction, iv: &Interval, pr: &Params) -> bool {
    certify(tf, iv.a(), iv.b(), pr.s(), pr.q(), 24).unwrap().passed
}

#[test]
fn bounds_hold_on_certified_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let cfg = QuadConfig::default();
    let mut checked = 0;
    for _ in 0..80 {
        let iv = random_interval(&mut rng);
        let pr = random_params(&mut rng);
        for tf in catalog() {
            if !certified(&tf, &iv, &pr) {
                continue;
            }
            let report = evaluate_all_bounds(&tf, &iv, &pr, &cfg).unwrap();
            assert!(report.violations.is_empty(), "{} at {iv:?} {pr:?}: {report:?}", tf.name);
            checked += 1;
        }
    }
    assert!(checked >= 300, "only {checked} certified points");
}

#[test]
fn hermite_hadamard_ordering() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let cfg = QuadConfig::default();
    let convex: Vec<_> = catalog()
        .into_iter()
        .filter(|tf| {
            fracineq::functions::is_harmonically_s_convex(&|u| tf.eval(u), 0.05, 10.0, 1.0, 48)
                .unwrap()
                .passed
        })
        .collect();
    let names: Vec<_> = convex.iter().map(|tf| tf.name.as_str()).collect();
    assert!(names.contains(&"identity") && names.contains(&"reciprocal"), "{names:?}");
    assert!(!names.contains(&"neg_log"));
    for _ in 0..40 {
        let iv = random_interval(&mut rng);
        let (a, b) = (iv.a(), iv.b().max(iv.a() * 1.001));
        let alpha = rng.gen_range(0.1..=3.0);
        for tf in &convex {
            let t = hh_fractional_check(tf, a, b, alpha, &cfg).unwrap();
            assert!(t.is_ordered(1e-10), "{} on [{a}, {b}], α = {alpha}: {t:?}", tf.name);
        }
    }
}
