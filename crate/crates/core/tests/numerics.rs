use std::f64::consts::{E, FRAC_PI_2, PI};

use idverify_core::exact::gregory_coefficient;
use idverify_core::quad::*;
use idverify_core::seqsum::*;
use idverify_core::solve::*;
use idverify_core::specfun::{trigamma, zeta};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn opts(tol: f64) -> QuadOptions {
    QuadOptions::with_tol(tol).unwrap()
}

fn zeta3() -> f64 {
    zeta(3.0).unwrap()
}

/// Closes a smooth series with the quadrature of its own model past `terms`.
fn smooth_tail(model: fn(f64) -> f64, start: u64, terms: u64) -> TailStrategy {
    let last = (start + terms - 1) as f64;
    let tail = integrate(model, &Interval::semi_infinite(last).unwrap(), &opts(1e-15)).unwrap().value;
    TailStrategy::integral_tail(model, move |_| tail, terms)
}

mod quadrature {
    use super::*;

    #[test]
    fn published_integrals() {
        let r =
            integrate(|x: f64| (1.0 - x) * x.ln().powi(2) / (1.0 + x.powi(3)), &Interval::finite(0.0, 1.0).unwrap(), &opts(1e-12)).unwrap();
        assert!((r.value - 13.0 / 9.0 * zeta3()).abs() < 1e-11);
        assert!((r.value - 1.7363044156).abs() < 1e-10);

        let r = integrate(|t: f64| t.cos().cos() * t.sin().cosh(), &Interval::finite(0.0, 2.0 * PI).unwrap(), &opts(1e-12)).unwrap();
        assert!((r.value - 2.0 * PI).abs() < 1e-11);

        let r =
            integrate(|x: f64| x * x / ((1.0 + x * x) * (1.0 + x.powi(6))), &Interval::semi_infinite(0.0).unwrap(), &opts(1e-12)).unwrap();
        assert!((r.value - PI / 12.0).abs() < 1e-11);

        let iv = Interval::finite(0.0, 1.0).unwrap().with_splits(vec![0.5]).unwrap();
        let r = integrate(|x: f64| (x.powi(3) - (1.0 - x).powi(3)).abs().ln() / x, &iv, &opts(1e-11)).unwrap();
        assert!((r.value + 11.0 * PI * PI / 36.0).abs() < 1e-10);

        let r = integrate(|_| 0.0, &Interval::finite(0.0, 1.0).unwrap(), &opts(1e-12)).unwrap();
        assert_eq!((r.value, r.err), (0.0, 0.0));
    }

    #[test]
    fn endpoint_singularities() {
        let unit = Interval::finite(0.0, 1.0).unwrap();
        let r = integrate(|x: f64| x.ln(), &unit, &opts(1e-13)).unwrap();
        assert!((r.value + 1.0).abs() < 1e-11, "{r:?}");
        let r = integrate(|x: f64| 1.0 / x.sqrt(), &unit, &opts(1e-13)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn complex_integrands() {
        // (i/2) integral of tanh(pi t)/(1/2 + i t)^3 over the line
        let f = |t: f64| {
            let (r2, phi) = (0.25 + t * t, t.atan2(0.5));
            let m = (PI * t).tanh() * r2.powf(-1.5);
            (m * (3.0 * phi).cos(), -m * (3.0 * phi).sin())
        };
        let (_, im) = integrate_complex(f, &Interval::real_line(), &opts(1e-10)).unwrap();
        assert!((-0.5 * im.value - zeta3()).abs() < 1e-6);

        let (re, im) = integrate_complex(|t: f64| ((-t * t).exp(), 0.0), &Interval::real_line(), &opts(1e-13)).unwrap();
        assert!((re.value - PI.sqrt()).abs() < 1e-12);
        assert_eq!(im.value, 0.0);

        let (re, im) = integrate_complex(|_| (0.0, 0.0), &Interval::finite(0.0, 1.0).unwrap(), &opts(1e-12)).unwrap();
        assert_eq!((re.value, im.value), (0.0, 0.0));
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::finite(1.0, 0.0).is_err());
        assert!(Interval::finite(0.0, 1.0).unwrap().with_splits(vec![1.5]).is_err());
        assert!(Interval::finite(0.0, 1.0).unwrap().with_splits(vec![0.6, 0.4]).is_err());
        assert!(Interval::semi_infinite(f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn polynomials_are_exact(coeffs in prop::collection::vec(-5.0f64..5.0, 1..11), a in -3.0f64..1.0, len in 0.1f64..4.0) {
            let b = a + len;
            let p = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
            let antider = |x: f64| coeffs.iter().enumerate().rev().fold(0.0, |acc, (k, c)| acc * x + c / (k + 1) as f64) * x;
            let exact = antider(b) - antider(a);
            let r = integrate(p, &Interval::finite(a, b).unwrap(), &opts(1e-14)).unwrap();
            let scale = coeffs.iter().map(|c| c.abs()).sum::<f64>() * a.abs().max(b.abs()).max(1.0).powi(coeffs.len() as i32) * len;
            prop_assert!((r.value - exact).abs() <= 1e-13 * scale.max(1.0), "{} vs {exact}", r.value);
        }
    }
}

mod series {
    use super::*;

    #[test]
    fn published_series() {
        let r = sum_series(|n| 1.0 / 2f64.powi(n as i32).sinh(), 0, &TailStrategy::GeometricRatio { q: 0.5 }, 1e-14).unwrap();
        assert!((r.value - 2.0 / (E - 1.0)).abs() < 1e-14);

        // (2n - 1) trigamma(n) - 2 = -1/(6n^2) - 1/(6n^3) - 1/(15n^4) + O(n^-5)
        let terms = 4000;
        let direct =
            sum_series(|n| (2.0 * n as f64 - 1.0) * trigamma(n as f64).unwrap() - 2.0, 1, &TailStrategy::NoneTruncate { terms }, 1.0)
                .unwrap();
        let m = terms as f64 + 0.5;
        let tail = -1.0 / (6.0 * m) - 1.0 / (12.0 * m * m) - 1.0 / (45.0 * m.powi(3));
        assert!((direct.value + tail + 0.5).abs() < 1e-9);

        let r = sum_series(|n| 0.5f64.powi(n as i32), 1, &TailStrategy::GeometricRatio { q: 0.5 }, 1e-15).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);

        // H_k/(k(k+1)(k+2)) with the harmonic number continued by its asymptotic series
        let model = |x: f64| {
            let h = x.ln() + 0.5772156649015329 + 0.5 / x - 1.0 / (12.0 * x * x) + 1.0 / (120.0 * x.powi(4));
            h / (x * (x + 1.0) * (x + 2.0))
        };
        let terms = 2000;
        let harmonic = |k: u64| (1..=k).rev().map(|j| 1.0 / j as f64).sum::<f64>();
        let r = sum_series(|k| harmonic(k) / (k * (k + 1) * (k + 2)) as f64, 1, &smooth_tail(model, 1, terms), 1e-12).unwrap();
        assert!((r.value - (PI * PI / 12.0 - 0.5)).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn alternating_within_forty_terms() {
        let r = sum_alternating_with(|n| 1.0 / (n + 1) as f64, 0, 40, 1e-13).unwrap();
        assert!((r.value - 2f64.ln()).abs() < 1e-13);
        let r = sum_alternating_with(|n| 1.0 / (2 * n + 1) as f64, 0, 40, 1e-13).unwrap();
        assert!((r.value - PI / 4.0).abs() < 1e-13);
        const { assert!(CVZ_TERMS <= 40) };

        // Catalan against trigamma: G = (trigamma(1/4) - trigamma(3/4))/16
        let oracle = (trigamma(0.25).unwrap() - trigamma(0.75).unwrap()) / 16.0;
        let r = sum_alternating(|n| 1.0 / ((2 * n + 1) as f64).powi(2), 0, 1e-14).unwrap();
        assert!((r.value - oracle).abs() < 1e-14);
        assert!((oracle - 0.915965594177219).abs() < 1e-14);

        // 1 - 1/2 + sum (-1)^k a_k with a_k the Gregory coefficients from k = 2
        let a = |k: u64| gregory_coefficient(k).unwrap().to_f64().unwrap();
        let r = sum_alternating(|k| a(k + 1), 0, 1e-13).unwrap();
        assert!((-1.0 - r.value + 1.0 / 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn double_series() {
        // sum 1/(mn(m+n+1)) = 2; rows sum to H_(m+1)/(m(m+1))
        let rows = 400;
        let model = |x: f64| {
            let y = x + 1.0;
            let h = y.ln() + 0.5772156649015329 + 0.5 / y - 1.0 / (12.0 * y * y) + 1.0 / (120.0 * y.powi(4));
            h / (x * y)
        };
        let r = sum_double(
            |m, n| {
                let (m, n) = (m as f64, n as f64);
                1.0 / (m * n * (m + n + 1.0))
            },
            |m| {
                let c = m as f64 + 1.0;
                let m = m as f64;
                TailStrategy::integral_tail(move |x| 1.0 / (m * x * (c + x)), move |x| (c / x).ln_1p() / (m * c), 400)
            },
            &smooth_tail(model, 1, rows),
            1e-10,
        )
        .unwrap();
        assert!((r.value - 2.0).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn products() {
        let terms = 2000;
        let log_2147 = |x: f64| (5.0 / (x.powi(4) - 1.0)).ln_1p();
        let r = product_from_log(|n| log_2147(n as f64), 2, &smooth_tail(log_2147, 2, terms), 1e-13).unwrap();
        assert!((r.value - 2.0 * PI.sinh() / (5.0 * PI)).abs() < 1e-12, "{r:?}");

        let log_wallis = |x: f64| (-1.0 / (2.0 * x + 1.0).powi(2)).ln_1p();
        let r = product_from_log(|n| log_wallis(n as f64), 1, &smooth_tail(log_wallis, 1, terms), 1e-12).unwrap();
        assert!((r.value - PI / 4.0).abs() < 1e-11, "{r:?}");

        let log_11226 = |x: f64| (-(2.0 / PI).powi(4) / (2.0 * x + 1.0).powi(4)).ln_1p();
        let r = product_from_log(|n| log_11226(n as f64), 0, &smooth_tail(log_11226, 0, terms), 1e-13).unwrap();
        assert!((r.value - 1f64.cos() * 1f64.cosh()).abs() < 1e-12, "{r:?}");

        let r = product_infinite(|n| (n as f64).powi(4) + 4.0, 2, &TailStrategy::GeometricRatio { q: 0.5 }, 1e-10);
        assert!(r.is_err() || !r.unwrap().converged);
    }

    #[test]
    fn limits() {
        let r = limit_extrapolate(|n| 7.0 + 0.0 * n as f64, LimitGrid { n0: 4, levels: 4 }, &Extrapolation::richardson(3)).unwrap();
        assert_eq!((r.value, r.err), (7.0, 0.0));

        let s_4959 =
            |n: u64| (1..=2 * n).map(|k| (if k % 2 == 0 { 1.0 } else { -1.0 }) * (k as f64 / (2 * n) as f64).powf(1.5)).sum::<f64>();
        let basis = [1.0, 1.5, 3.0, 5.0, 7.0].map(|p| ErrorTerm::new(p, 0)).to_vec();
        let r = limit_extrapolate(s_4959, LimitGrid { n0: 16, levels: 6 }, &Extrapolation::Richardson(basis)).unwrap();
        assert!((r.value - 0.5).abs() < 1e-6, "{r:?}");

        let s_2212 = |n: u64| (1..=n).map(|k| (1.0 / ((n * n + k * k) as f64).sqrt()).asinh()).sum::<f64>();
        let r = limit_extrapolate(s_2212, LimitGrid { n0: 16, levels: 6 }, &Extrapolation::richardson(5)).unwrap();
        assert!((r.value - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-8, "{r:?}");

        // log S_n = log n + (2/n) sum log W_k with Wallis W_k = sqrt(pi) G((k+1)/2) / (2 G(k/2 + 1))
        use idverify_core::specfun::log_gamma;
        let log_s = |n: u64| {
            let sum: f64 = (1..=n)
                .map(|k| {
                    let k = k as f64;
                    0.5 * PI.ln() + log_gamma(0.5 * (k + 1.0)).unwrap() - 2f64.ln() - log_gamma(0.5 * k + 1.0).unwrap()
                })
                .sum();
            (n as f64).ln() + 2.0 * sum / n as f64
        };
        let mut basis = vec![ErrorTerm::new(1.0, 1)];
        basis.extend((1..=5).map(|p| ErrorTerm::new(p as f64, 0)));
        let r = limit_extrapolate(log_s, LimitGrid { n0: 32, levels: 7 }, &Extrapolation::Richardson(basis)).unwrap();
        assert!((r.value.exp() - FRAC_PI_2 * E).abs() < 1e-5, "{r:?}");
    }

    #[test]
    fn limit_needs_three_samples() {
        let r = limit_extrapolate(|n| 1.0 / n as f64, LimitGrid { n0: 4, levels: 1 }, &Extrapolation::Aitken);
        assert!(r.is_err());
    }
}

mod roots {
    use super::*;

    fn f_12479(x: f64) -> f64 {
        2.0 * (3f64.sqrt() * x).cos() + (-3.0 * x).exp()
    }

    fn asym(n: usize) -> f64 {
        (FRAC_PI_2 + n as f64 * PI) / 3f64.sqrt()
    }

    #[test]
    fn bracketed() {
        let r = root_bracketed(f_12479, Bracket::new(&f_12479, 0.8, 1.0).unwrap(), 1e-15).unwrap();
        assert!((r - 0.924906).abs() < 1e-6);
        let g = |x: f64| x * x - 2.0;
        let r = root_bracketed(g, Bracket::new(&g, 1.0, 2.0).unwrap(), 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
        let h = |t: f64| t + t * t + t.powi(3) + 1.0 / t + 1.0 / (t * t) + 1.0 / t.powi(3) - 70.0;
        let r = root_bracketed(h, Bracket::new(&h, 0.2, 0.3).unwrap(), 1e-15).unwrap();
        assert!((r - (2.0 - 3f64.sqrt())).abs() < 1e-14);
        assert!(Bracket::new(&g, 2.0, 3.0).is_err());
    }

    #[test]
    fn enumerated() {
        let roots = enumerate_roots(f_12479, |n| (asym(n) - 0.125, asym(n) + 0.125), 4, 1e-15).unwrap();
        assert!((roots[0] - 0.924906).abs() < 1e-6);
        assert!((roots[1] - 2.720616677).abs() < 1e-9);
        assert!((roots[2] - 4.53449876).abs() < 1e-8);
        let roots = enumerate_roots(f64::sin, |n| ((n + 1) as f64 * PI - 0.5, (n + 1) as f64 * PI + 0.5), 3, 1e-15).unwrap();
        for (i, r) in roots.iter().enumerate() {
            assert!((r - (i + 1) as f64 * PI).abs() < 1e-14);
        }
        assert!(enumerate_roots(f64::sin, |_| (1.0, 2.0), 0, 1e-15).unwrap().is_empty());
    }

    #[test]
    fn power_sums() {
        let s3 = 3f64.sqrt();
        let roots = enumerate_roots(f_12479, |n| (asym(n) - 0.125, asym(n) + 0.125), 40, 1e-15).unwrap();
        let tail = TailModel {
            asymptote: Box::new(|n| asym(n as usize)),
            deviation_bound: Box::new(move |n| (-3.0 * (asym(n as usize) - 0.125)).exp() / s3),
        };
        let r = root_power_sum(&roots, 6, &tail, 40, 1e-15).unwrap();
        assert!((r.value - 1.6).abs() < 1e-8 && r.err < 1e-8, "{r:?}");
        assert!(root_power_sum(&[2.0], 1, &tail, 1, 1e-15).is_err());

        // pure tail: sum (n + 1/2)^-6 (sqrt3/pi)^6 = 63 zeta(6) * 27/pi^6 = 9/5
        let exact = TailModel { asymptote: Box::new(|n| asym(n as usize)), deviation_bound: Box::new(|_| 0.0) };
        let r = root_power_sum(&[], 6, &exact, 0, 0.0).unwrap();
        assert!((r.value - 1.8).abs() < 1e-13, "{r:?}");
        assert!((27.0 * 63.0 * zeta(6.0).unwrap() / PI.powi(6) - 1.8).abs() < 1e-14);
    }

    #[test]
    fn multistart_minima() {
        let octant = |p: &[f64]| {
            let (st, ct) = p[0].sin_cos();
            let (sp, cp) = p[1].sin_cos();
            1.0 / (st * cp) + 1.0 / (st * sp) + 2.0 / ct
        };
        let domain = SearchDomain::boxed(vec![1e-3, 1e-3], vec![FRAC_PI_2 - 1e-3, FRAC_PI_2 - 1e-3]);
        let (_, v) = minimize_multistart(octant, &domain, 64, 1e-15, 0).unwrap();
        assert!((v - 6.794693902).abs() < 1e-9);

        let cyclic = |p: &[f64]| {
            let (a, b) = (p[0], p[1]);
            let c = 1.0 / (a * b);
            let t = |x: f64, y: f64, z: f64| (x.powi(7) + x.powi(3) + y * z) / (x + y * z + 1.0);
            t(a, b, c) + t(b, c, a) + t(c, a, b)
        };
        let domain = SearchDomain::boxed(vec![0.2, 0.2], vec![3.0, 3.0]);
        let (x, v) = minimize_multistart(cyclic, &domain, 64, 1e-15, 7).unwrap();
        assert!((v - 3.0).abs() < 1e-9 && (x[0] - 1.0).abs() < 1e-4 && (x[1] - 1.0).abs() < 1e-4);

        let domain = SearchDomain::boxed(vec![0.0], vec![2.0]);
        let (x, v) = minimize_multistart(|p: &[f64]| (p[0] - 1.0).powi(2), &domain, 8, 1e-15, 1).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-6 && v < 1e-12);

        // the constrained form of the octant problem, by penalty
        let direct = |p: &[f64]| 1.0 / p[0] + 1.0 / p[1] + 2.0 / p[2];
        let sphere =
            SearchDomain::boxed(vec![0.05; 3], vec![1.0; 3]).with_constraint(|p: &[f64]| p.iter().map(|x| x * x).sum::<f64>() - 1.0, 1e6);
        let (_, v) = minimize_multistart(direct, &sphere, 64, 1e-14, 3).unwrap();
        assert!((v - 6.794693902).abs() < 1e-3);
    }

    #[test]
    fn same_seed_same_answer() {
        let f = |p: &[f64]| (p[0] - 0.3).powi(2) + (p[1] + 0.2).powi(4) + p[0].sin();
        let domain = SearchDomain::boxed(vec![-1.0, -1.0], vec![1.0, 1.0]);
        let a = minimize_multistart(f, &domain, 16, 1e-14, 42).unwrap();
        let b = minimize_multistart(f, &domain, 16, 1e-14, 42).unwrap();
        assert_eq!(a.0.iter().map(|v| v.to_bits()).collect::<Vec<_>>(), b.0.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
        assert_eq!(a.1.to_bits(), b.1.to_bits());
    }
}
