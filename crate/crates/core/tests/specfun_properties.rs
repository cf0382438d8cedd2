use fracineq::specfun::{beta_fn, gamma_fn, hyp2f1, hyp2f1_route, SeriesRoute};
use fracineq::HypArgs;
use proptest::prelude::*;

fn rel(actual: f64, expected: f64) -> f64 {
    (actual - expected).abs() / expected.abs().max(f64::MIN_POSITIVE)
}

// Plain term-by-term summation with a Neumaier accumulator, capped at 10^6
// terms; shares nothing with the library's stopping rule.
fn series_oracle(a: f64, b: f64, c: f64, z: f64) -> f64 {
    let (mut sum, mut comp) = (1.0_f64, 0.0_f64);
    let mut term = 1.0_f64;
    for n in 0..1_000_000u32 {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        let t = sum + term;
        comp += if sum.abs() >= term.abs() { (sum - t) + term } else { (term - t) + sum };
        sum = t;
        if term.abs() < 1e-22 * sum.abs() && n > 4.0 * (a + b + c) {
            break;
        }
    }
    sum + comp
}

// (a, b, c) triples of the shapes the coefficient family produces.
fn envelope() -> impl Strategy<Value = (f64, f64, f64)> {
    (0usize..6, 0.5f64..5.0, 0.0f64..12.0, 0.05f64..=1.0, 0.1f64..3.0).prop_map(
        |(shape, vartheta, rho, s, alpha)| {
            let c = rho + s + 2.0;
            match shape {
                0 => (2.0 * vartheta, rho + s + 1.0, c),
                1 => (2.0 * vartheta, rho + 1.0, c),
                2 => (2.0 * vartheta, 1.0, c),
                3 => (2.0 * vartheta, s + 1.0, c),
                4 => (2.0, alpha + 1.0, alpha + 2.0),
                _ => (2.0, 1.0, alpha + 2.0),
            }
        },
    )
}

#[test]
fn closed_forms() {
    let v = hyp2f1(HypArgs::new(1.0, 1.0, 2.0, 0.5).unwrap()).unwrap();
    assert!(rel(v, 2.0 * std::f64::consts::LN_2) < 1e-14);
    let v = hyp2f1(HypArgs::new(2.0, 1.0, 1.0, 0.25).unwrap()).unwrap();
    assert!(rel(v, 16.0 / 9.0) < 1e-14);
}

proptest! {
    #[test]
    fn matches_series_oracle((a, b, c) in envelope(), z in 0.0f64..=0.99) {
        let v = hyp2f1(HypArgs::new(a, b, c, z).unwrap()).unwrap();
        let oracle = series_oracle(a, b, c, z);
        prop_assert!(rel(v, oracle) <= 1e-10, "2F1({a}, {b}; {c}; {z}) = {v}, oracle {oracle}");
    }

    #[test]
    fn euler_transform_consistent((a, b, c) in envelope(), z in 0.0f64..0.95) {
        let args = HypArgs::new(a, b, c, z).unwrap();
        if let (Ok(d), Ok(e)) = (hyp2f1_route(args, SeriesRoute::Direct), hyp2f1_route(args, SeriesRoute::Euler)) {
            prop_assert!(rel(d, e) <= 1e-10, "direct {d} vs euler {e} at ({a}, {b}; {c}; {z})");
        }
    }

    #[test]
    fn binomial_identity(a in 0.5f64..8.0, c in 0.5f64..10.0, z in 0.0f64..=0.9) {
        let v = hyp2f1(HypArgs::new(a, c, c, z).unwrap()).unwrap();
        prop_assert!(rel(v, (1.0 - z).powf(-a)) <= 1e-11);
    }

    #[test]
    fn beta_symmetric(x in 0.01f64..60.0, y in 0.01f64..60.0) {
        let (u, v) = (beta_fn(x, y).unwrap(), beta_fn(y, x).unwrap());
        prop_assert!(rel(u, v) <= 1e-14);
    }

    #[test]
    fn beta_gamma_ratio(x in 0.05f64..30.0, y in 0.05f64..30.0) {
        let ratio = gamma_fn(x).unwrap() * gamma_fn(y).unwrap() / gamma_fn(x + y).unwrap();
        prop_assert!(rel(beta_fn(x, y).unwrap(), ratio) <= 1e-12);
    }

    #[test]
    fn gamma_recurrence(x in 0.1f64..=80.0) {
        prop_assert!(rel(gamma_fn(x + 1.0).unwrap(), x * gamma_fn(x).unwrap()) <= 1e-12);
    }
}
