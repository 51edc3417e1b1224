// Literal decimals here are reference values, not stand-ins for library constants.
#![allow(clippy::approx_constant, clippy::excessive_precision)]

use std::f64::consts::PI;

use idverify_core::constants::*;
use idverify_core::exact::ratio;
use idverify_core::specfun::*;
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

// Independent oracles. Each is a plain textbook formula summed in the test.

fn machin_pi() -> f64 {
    let atan_recip = |q: f64| {
        let mut acc = 0.0;
        for k in (0..40).rev() {
            let n = (2 * k + 1) as f64;
            let t = q.powi(-(2 * k + 1)) / n;
            acc += if k % 2 == 0 { t } else { -t };
        }
        acc
    };
    16.0 * atan_recip(5.0) - 4.0 * atan_recip(239.0)
}

/// Repeated averaging of the partial sums of an alternating series.
fn averaged_alternating(term: impl Fn(usize) -> f64) -> f64 {
    let mut partial = Vec::new();
    let mut s = 0.0;
    for n in 0..60 {
        s += term(n);
        partial.push(s);
    }
    while partial.len() > 1 {
        partial = partial.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    partial[0]
}

fn harmonic_gamma() -> f64 {
    let n = 100.0f64;
    let h: f64 = (1..=100).rev().map(|k| 1.0 / k as f64).sum();
    h - n.ln() - 0.5 / n + 1.0 / (12.0 * n * n) - 1.0 / (120.0 * n.powi(4)) + 1.0 / (252.0 * n.powi(6)) - 1.0 / (240.0 * n.powi(8))
}

/// Direct sum to 10^6 plus the Euler-Maclaurin tail.
fn zeta_oracle(s: f64) -> f64 {
    let n = 1_000_000u64;
    let direct: f64 = (1..n).rev().map(|k| (k as f64).powf(-s)).sum();
    let nf = n as f64;
    direct + nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s) + s * nf.powf(-s - 1.0) / 12.0
}

#[test]
fn constants_match_oracles() {
    assert!(close(const_value("pi").unwrap(), machin_pi(), 1e-15));
    assert!(close(machin_pi(), 3.141592653589793, 1e-15));
    let catalan = averaged_alternating(|n| {
        let d = (2 * n + 1) as f64;
        if n % 2 == 0 {
            1.0 / (d * d)
        } else {
            -1.0 / (d * d)
        }
    });
    assert!(close(const_value("catalan").unwrap(), catalan, 1e-15));
    assert!(close(catalan, 0.9159655941772190, 1e-15));
    assert!(close(const_value("euler_gamma").unwrap(), harmonic_gamma(), 2e-15));
    assert!(close(harmonic_gamma(), 0.5772156649015329, 2e-15));
    assert!(const_value("no_such_constant").is_err());
}

#[test]
fn closed_forms_evaluate() {
    let e2 = (e().powi(2) + int(1)).log() - int(2);
    assert!(close(cf_eval(&e2).unwrap(), 0.1269280110, 1e-10));
    let apery = int(7) * zeta3() / (int(8) * pi().powi(2));
    assert!(close(cf_eval(&apery).unwrap(), 0.1065695997, 1e-10));
    let octant = (int(2) + int(2).pow(rat(2, 3))).pow(rat(3, 2));
    assert!(close(cf_eval(&octant).unwrap(), 6.794693902, 1e-9));
    assert_eq!(cf_eval(&(int(1) + int(0))).unwrap(), 1.0);
}

#[test]
fn prefix_form_round_trips() {
    let forms = [
        int(7) * zeta3() / (int(8) * pi().powi(2)),
        (int(2) + int(2).pow(rat(2, 3))).pow(rat(3, 2)),
        pi() * (int(3) * zeta3() / pi().powi(2) - rat(5, 4)).exp(),
        rat(-5, 8) * zeta3(),
    ];
    for f in forms {
        let parsed = ClosedForm::parse(&f.to_prefix()).unwrap();
        assert_eq!(parsed, f);
        assert_eq!(cf_eval(&parsed).unwrap(), cf_eval(&f).unwrap());
    }
}

#[test]
fn zeta_values() {
    assert!(close(zeta(6.0).unwrap(), PI.powi(6) / 945.0, 1e-15));
    let (z2, z3) = (zeta_oracle(2.0), zeta_oracle(3.0));
    assert!(close(zeta(2.0).unwrap(), z2, 1e-14));
    assert!(close(zeta(3.0).unwrap(), z3, 1e-14));
    assert!(close(z2, 1.6449340668482264, 1e-14));
    assert!(close(z3, 1.2020569031595943, 1e-14));
    assert!(zeta(1.0).is_err());
}

#[test]
fn eta_values() {
    assert!(close(eta(3.0).unwrap(), 0.75 * zeta(3.0).unwrap(), 1e-15));
    assert!(close(eta(2.0).unwrap(), PI * PI / 12.0, 1e-15));
    assert!(close(eta(1.0).unwrap(), 0.6931471805599453, 1e-15));
}

#[test]
fn dilog_values() {
    assert!(close(dilog(1.0).unwrap(), PI * PI / 6.0, 1e-15));
    assert!(close(dilog(0.5).unwrap(), 0.5822405264650125, 1e-15));
    assert!(close(dilog(0.5).unwrap(), PI * PI / 12.0 - 0.5 * 2f64.ln().powi(2), 1e-15));
    assert_eq!(dilog(0.0).unwrap(), 0.0);
    assert!(dilog(1.5).is_err());
}

#[test]
fn trigamma_values() {
    assert!(close(trigamma(1.0).unwrap(), PI * PI / 6.0, 1e-14));
    assert!(close(trigamma(2.0).unwrap(), PI * PI / 6.0 - 1.0, 1e-14));
    assert!(close(trigamma(3.7).unwrap() - trigamma(4.7).unwrap(), 1.0 / (3.7 * 3.7), 1e-14));
    assert!(trigamma(0.0).is_err());
}

#[test]
fn harmonic_numbers() {
    assert_eq!(harmonic(1, 1).unwrap(), ratio(1, 1));
    assert_eq!(harmonic(4, 1).unwrap(), ratio(25, 12));
    assert_eq!(harmonic(2, 2).unwrap(), ratio(5, 4));
    assert_eq!(harmonic(0, 1).unwrap(), ratio(0, 1));
    assert!(harmonic(3, 3).is_err());
}

#[test]
fn chebyshev_values() {
    assert_eq!(chebyshev(ChebyshevKind::U, 1, 3.0), 6.0);
    assert_eq!(chebyshev(ChebyshevKind::U, 5, 1.0), 6.0);
    assert!(close(chebyshev(ChebyshevKind::T, 3, 0.4f64.cos()), 1.2f64.cos(), 1e-15));
}

#[test]
fn gamma_and_beta() {
    assert!(close(beta(2.0, 2.0).unwrap(), 1.0 / 6.0, 1e-15));
    assert!(close(beta(1.0, 1.0).unwrap(), 1.0, 1e-14));
    assert!(close(log_gamma(0.5).unwrap(), PI.sqrt().ln(), 1e-15));
    assert!(log_gamma(-1.0).is_err());
}

proptest! {
    #[test]
    fn eta_is_scaled_zeta(s in 1.05f64..30.0) {
        let lhs = eta(s).unwrap();
        let rhs = (1.0 - 2f64.powf(1.0 - s)) * zeta(s).unwrap();
        prop_assert!(close(lhs, rhs, 1e-11), "s={s}: {lhs} vs {rhs}");
    }

    #[test]
    fn dilog_reflection(x in 0.001f64..0.999) {
        let lhs = dilog(x).unwrap() + dilog(1.0 - x).unwrap();
        let rhs = PI * PI / 6.0 - x.ln() * (1.0 - x).ln();
        prop_assert!(close(lhs, rhs, 1e-11), "x={x}: {lhs} vs {rhs}");
    }

    #[test]
    fn dilog_inversion(x in -200.0f64..-1.001) {
        let lhs = dilog(x).unwrap() + dilog(1.0 / x).unwrap();
        let rhs = -PI * PI / 6.0 - 0.5 * (-x).ln().powi(2);
        prop_assert!(close(lhs, rhs, 1e-11), "x={x}: {lhs} vs {rhs}");
    }

    #[test]
    fn trigamma_recurrence(x in 0.01f64..80.0) {
        let lhs = trigamma(x).unwrap() - trigamma(x + 1.0).unwrap();
        let rhs = 1.0 / (x * x);
        prop_assert!(close(lhs, rhs, 1e-11 * rhs.max(1.0)), "x={x}: {lhs} vs {rhs}");
    }

    #[test]
    fn beta_is_symmetric(a in 0.1f64..20.0, b in 0.1f64..20.0) {
        let (p, q) = (beta(a, b).unwrap(), beta(b, a).unwrap());
        prop_assert!(close(p, q, 1e-13 * p));
    }
}
