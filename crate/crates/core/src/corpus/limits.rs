use std::cell::Cell;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

use super::util::{atanh_excess, ln1p_minus};
use super::{Budget, Category, Evaluation, Expected, Identity, Journal};
use crate::compensated::KahanSum;
use crate::constants::*;
use crate::error::Result;
use crate::quad::{integrate, Interval, NumericResult, QuadOptions};
use crate::seqsum::{exp_result, extrapolate_samples, limit_extrapolate_try, sum_alternating, ErrorTerm, Extrapolation, LimitGrid};
use crate::solve::{root_bracketed, Bracket};
use crate::specfun::log_gamma;

const LIMIT_TOL: f64 = 1e-5;

fn limit<F>(
    id: &'static str,
    source: (Journal, &'static str),
    statement: &'static str,
    expected: ClosedForm,
    quote: &'static str,
    eval: F,
) -> Identity
where
    F: Fn(&Budget) -> Result<NumericResult> + Send + Sync + 'static,
{
    Identity::new(id, source, Category::Limit, statement, Expected::Closed(expected), LIMIT_TOL, quote, move |b| {
        eval(b).map(Evaluation::from)
    })
}

/// n0 * 2^k for k up to `levels`, two levels fewer in the fast profile.
fn grid(b: &Budget, n0: u64, levels: u32) -> LimitGrid {
    LimitGrid { n0, levels: if b.is_fast() { levels - 2 } else { levels } }
}

fn powers(ps: &[f64]) -> Extrapolation {
    Extrapolation::Richardson(ps.iter().map(|&p| ErrorTerm::new(p, 0)).collect())
}

/// Extrapolates samples that carry their own error; the largest sample error,
/// amplified by a nominal factor for the elimination, is added to the result.
fn extrapolate<F>(seq: F, grid: LimitGrid, method: &Extrapolation) -> Result<NumericResult>
where
    F: Fn(u64) -> Result<NumericResult>,
{
    let worst = Cell::new(0.0f64);
    let r = limit_extrapolate_try(
        |n| {
            let s = seq(n)?;
            worst.set(worst.get().max(s.err));
            Ok(s.value)
        },
        grid,
        method,
    )?;
    let err = r.err + 100.0 * worst.get();
    Ok(NumericResult { err, ..r })
}

fn exact_samples<F: Fn(u64) -> f64>(seq: F) -> impl Fn(u64) -> Result<NumericResult> {
    move |n| Ok(NumericResult::exact(seq(n)))
}

/// Quadrature for a sequence sample, far tighter than the limit tolerance.
fn sample_quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, splits: Vec<f64>) -> Result<NumericResult> {
    let splits = splits.into_iter().filter(|&s| s > a && s < b).collect();
    integrate(f, &Interval::finite(a, b)?.with_splits(splits)?, &QuadOptions::new(1e-13, 14)?)
}

/// Split points c +- j/n, j = 0..=8, for a peak of width about 1/n at c.
fn peak_splits(c: f64, n: u64) -> Vec<f64> {
    let w = 1.0 / n as f64;
    let mut s: Vec<f64> = (-8..=8).map(|j| c + j as f64 * w).collect();
    s.dedup();
    s
}

pub(super) fn entries() -> Vec<Identity> {
    use Journal::*;
    vec![
        limit(
            "amm-12340",
            (Amm, "12340"),
            "lim (n/2^n) int_0^1 e^x/(x^n + (1-x)^n) dx",
            pi() / int(4) * rat(1, 2).exp(),
            "\\frac{\\pi}{4}\\; f\\left(\\frac{1}{2}\\right)",
            |b| {
                extrapolate(
                    |n| {
                        let nf = n as f64;
                        let r = sample_quad(
                            |x| x.exp() / ((nf * (2.0 * x).ln()).exp() + (nf * (2.0 - 2.0 * x).ln()).exp()),
                            0.0,
                            1.0,
                            peak_splits(0.5, n),
                        )?;
                        Ok(r.scale(nf))
                    },
                    grid(b, 16, 6),
                    &Extrapolation::richardson(6),
                )
            },
        ),
        limit(
            "amm-12362",
            (Amm, "12362"),
            "lim int_0^{pi/2} n/((sqrt2 cos x)^n + (sqrt2 sin x)^n) dx",
            pi() / int(2),
            "=\\frac{\\pi}{2}",
            |b| {
                extrapolate(
                    |n| {
                        let nf = n as f64;
                        let lr = 0.5 * LN_2;
                        let r = sample_quad(
                            |x| 1.0 / ((nf * (lr + x.cos().ln())).exp() + (nf * (lr + x.sin().ln())).exp()),
                            0.0,
                            FRAC_PI_2,
                            peak_splits(FRAC_PI_4, n),
                        )?;
                        Ok(r.scale(nf))
                    },
                    grid(b, 16, 6),
                    &Extrapolation::richardson(6),
                )
            },
        ),
        limit(
            "amm-12510",
            (Amm, "12510"),
            "f_n = sum_{k<=n} prod_{j=k}^n 1/R_j, R_1 = sqrt2, R_{j+1} = sqrt(2 + R_j)",
            int(1),
            "\\frac{ \\frac{1}{2}+ \\sqrt{\\frac{1}{4}+c}}{c}",
            |_| {
                // geometric convergence: the late samples agree to rounding
                let ns = [40.0, 50.0, 60.0];
                let values: Vec<f64> = ns.iter().map(|&n| nested_radical_sum(2.0, n as usize)).collect();
                extrapolate_samples(&ns, &values, &Extrapolation::Aitken)
            },
        ),
        limit("amm-12518", (Amm, "12518"), "lim n sin(4 sum_{k=1}^{6n} arctan u_k)", rat(4, 3), "the limit is $4/3$", |b| {
            extrapolate(exact_samples(arctan_sine), grid(b, 8, 6), &Extrapolation::richardson(6))
        }),
        limit("amm-11333", (Amm, "11333"), "lim prod_{n=2}^N ((n^2-1)/n^2)^(2(n^2-1)) ((n+1)/(n-1))^n", pi(), "P_N\\to \\pi", |b| {
            let r = extrapolate(
                exact_samples(|big_n| {
                    let mut acc = KahanSum::new();
                    for n in 2..=big_n {
                        let n = n as f64;
                        let y = 1.0 / (n * n);
                        // 2(n^2-1) log(1-y) + 2n atanh(1/n) with the constants cancelled
                        acc.add(2.0 * y + 2.0 * (n * n - 1.0) * ln1p_minus(-y) + 2.0 * atanh_excess(1.0 / n));
                    }
                    acc.value()
                }),
                grid(b, 32, 6),
                &Extrapolation::richardson(6),
            )?;
            Ok(exp_result(r, LIMIT_TOL))
        }),
        limit(
            "amm-11456",
            (Amm, "11456"),
            "lim n prod_{m<=n} (1 - 1/m + 5/(4m^2))",
            pi().cosh() / pi(),
            "\\frac{\\cosh \\pi}{\\pi}",
            |b| {
                let r = extrapolate(
                    exact_samples(|n| {
                        let mut acc = KahanSum::new();
                        acc.add((n as f64).ln());
                        for m in 1..=n {
                            let m = m as f64;
                            acc.add((-1.0 / m + 1.25 / (m * m)).ln_1p());
                        }
                        acc.value()
                    }),
                    grid(b, 32, 6),
                    &Extrapolation::richardson(6),
                )?;
                Ok(exp_result(r, LIMIT_TOL))
            },
        ),
        limit(
            "mm-2212",
            (MathMag, "2212"),
            "lim sum_{k=1}^n arsinh(1/sqrt(n^2 + k^2))",
            (int(1) + sqrt2()).log(),
            "\\log(1+\\sqrt 2)",
            |b| {
                extrapolate(
                    exact_samples(|n| {
                        let nf = n as f64;
                        let mut acc = KahanSum::new();
                        for k in 1..=n {
                            acc.add((1.0 / nf.hypot(k as f64)).asinh());
                        }
                        acc.value()
                    }),
                    grid(b, 16, 6),
                    &Extrapolation::richardson(6),
                )
            },
        ),
        limit("mm-2216", (MathMag, "2216"), "lim int_0^1 (1-x)^(2n) ((1+x)^n - 1)/x dx", log2(), "$\\to \\log 2$", |b| {
            extrapolate(
                |n| {
                    let nf = n as f64;
                    let splits = (1..=32).map(|j| j as f64 / (4.0 * nf)).collect();
                    sample_quad(
                        |x| {
                            if x == 0.0 {
                                return nf;
                            }
                            (2.0 * nf * (-x).ln_1p()).exp() * (nf * x.ln_1p()).exp_m1() / x
                        },
                        0.0,
                        1.0,
                        splits,
                    )
                },
                grid(b, 16, 6),
                &Extrapolation::richardson(6),
            )
        }),
        limit("cmj-1294", (Cmj, "1294"), "lim (sum_{k<=n} 2k/n^2)^n", e(), "\\lim L_n=e", |b| {
            extrapolate(
                exact_samples(|n| {
                    let nf = n as f64;
                    let s: f64 = (1..=n).map(|k| 2.0 * k as f64 / (nf * nf)).sum();
                    (nf * s.ln()).exp()
                }),
                grid(b, 16, 6),
                &Extrapolation::richardson(6),
            )
        }),
        limit("crux-4862", (Crux, "4862"), "lim 2^-n n^-2 sum_{k=0}^n C(k+2, k) C(n+3, n-k)", int(1), "\\frac{2}{m!}", |b| {
            extrapolate(
                |n| {
                    let nf = n as f64;
                    let scale = nf * LN_2 + 2.0 * nf.ln();
                    let mut acc = KahanSum::new();
                    for k in 0..=n {
                        let kf = k as f64;
                        let ln_c = ln_binomial(kf + 2.0, 2.0)? + ln_binomial(nf + 3.0, nf - kf)?;
                        acc.add((ln_c - scale).exp());
                    }
                    // log_gamma is accurate to a few ulps of its (large) value
                    Ok(NumericResult { value: acc.value(), err: 1e-14 * nf * nf.ln(), evaluations: n + 1, converged: true })
                },
                grid(b, 16, 6),
                &Extrapolation::richardson(6),
            )
        }),
        limit("crux-4870", (Crux, "4870"), "a_1 = 1, a_{n+1} = a_n + 1/(3 a_n): lim (a_n - sqrt(2n/3))", int(0), "c(q)=2/q", |b| {
            let basis = [(0.5, 0), (0.5, 1), (1.5, 0), (1.5, 1), (1.5, 2), (2.5, 0)];
            extrapolate(
                exact_samples(|n| {
                    let mut a = 1.0f64;
                    for _ in 1..n {
                        a += 1.0 / (3.0 * a);
                    }
                    a - (2.0 * n as f64 / 3.0).sqrt()
                }),
                grid(b, 64, 6),
                &Extrapolation::Richardson(basis.iter().map(|&(p, l)| ErrorTerm::new(p, l)).collect()),
            )
        })
        .tags(&["log-aware"]),
        limit(
            "crux-4909a",
            (Crux, "4909"),
            "x_n the root above 2n+1 of (x-1)^(2n+1) (x^2 - (2n+1)x - 1) = 1: lim (x_n - 2n)",
            int(1),
            "x_n-2n\\to 1",
            |b| extrapolate(|n| Ok(NumericResult::exact(1.0 + root_excess(n)?)), grid(b, 8, 6), &Extrapolation::richardson(6)),
        ),
        limit("crux-4909b", (Crux, "4909"), "same x_n: lim n (x_n - 2n - 1)", rat(1, 2), "x_n-2n\\to 1", |b| {
            extrapolate(|n| Ok(NumericResult::exact(n as f64 * root_excess(n)?)), grid(b, 8, 6), &Extrapolation::richardson(6))
        }),
        limit(
            "crux-4915",
            (Crux, "4915"),
            "S_n = sum_{k>=1} (-1)^(k+1)/(k(k+n+1)): lim n^3 S_n - (n^2 log2 - (1/2 + log2) n + log2 + 5/4)",
            int(0),
            "a=\\log 2",
            |b| {
                extrapolate(
                    |n| {
                        let nf = n as f64;
                        let s = sum_alternating(|k| 1.0 / (k as f64 * (k as f64 + nf + 1.0)), 1, 1e-18)?;
                        let cubic = nf * nf * LN_2 - (0.5 + LN_2) * nf + LN_2 + 1.25;
                        let n3 = nf * nf * nf;
                        Ok(NumericResult {
                            value: n3 * s.value - cubic,
                            err: n3 * s.err + 4.0 * f64::EPSILON * n3 * s.value.abs(),
                            evaluations: s.evaluations,
                            converged: true,
                        })
                    },
                    grid(b, 16, 5),
                    &Extrapolation::richardson(5),
                )
            },
        ),
        limit(
            "crux-4959",
            (Crux, "4959"),
            "lim sum_{k=1}^{2n} (-1)^k (k/(2n))^(3/2)",
            rat(1, 2),
            "\\lim_{n\\to\\infty} S_n=\\frac{1}{2}",
            |b| {
                extrapolate(
                    exact_samples(|n| {
                        let two_n = 2.0 * n as f64;
                        let mut acc = KahanSum::new();
                        for k in 1..=2 * n {
                            let t = (k as f64 / two_n).powf(1.5);
                            acc.add(if k % 2 == 0 { t } else { -t });
                        }
                        acc.value()
                    }),
                    grid(b, 16, 6),
                    &powers(&[1.0, 1.5, 3.0, 5.0, 7.0]),
                )
            },
        ),
        limit(
            "gaz-108G",
            (Gazette, "108.G"),
            "lim n (prod_{k<=n} int_0^{pi/2} sin^k x dx)^(2/n)",
            pi() / int(2) * e(),
            "\\lim_n S_n=\\frac{\\pi}{2}e",
            |b| {
                let basis = [(1.0, 1), (1.0, 0), (2.0, 0), (3.0, 0), (4.0, 0), (5.0, 0)];
                let r = extrapolate(
                    |n| {
                        let mut acc = KahanSum::new();
                        for k in 1..=n {
                            let k = k as f64;
                            // Wallis integral via the Gamma function
                            acc.add(0.5 * PI.ln() - LN_2 + log_gamma(0.5 * (k + 1.0))? - log_gamma(0.5 * (k + 2.0))?);
                        }
                        let nf = n as f64;
                        Ok(NumericResult::exact(nf.ln() + 2.0 / nf * acc.value()))
                    },
                    grid(b, 64, 6),
                    &Extrapolation::Richardson(basis.iter().map(|&(p, l)| ErrorTerm::new(p, l)).collect()),
                )?;
                Ok(exp_result(r, LIMIT_TOL))
            },
        )
        .tags(&["log-aware"]),
    ]
}

fn nested_radical_sum(c: f64, n: usize) -> f64 {
    let mut r = c.sqrt();
    // f_n = (f_{n-1} + 1)/R_n
    let mut f = 1.0 / r;
    for _ in 1..n {
        r = (c + r).sqrt();
        f = (f + 1.0) / r;
    }
    f
}

fn arctan_sine(n: u64) -> f64 {
    let s3 = 3f64.sqrt();
    let v = (s3 + 1.0) / (s3 - 1.0);
    let a = (3.0 * s3 - 1.0) / (s3 + 1.0);
    let c = (3.0 + s3) / (s3 - 1.0);
    let mut acc = KahanSum::new();
    for k in 1..=6 * n {
        let q = (k * k) as f64 - 2.0 * k as f64;
        acc.add(((q + a) / (q - c) * v).atan());
    }
    n as f64 * (4.0 * acc.value()).sin()
}

/// x_n - 2n - 1 = y solves y = (1 + (2n + y)^-(2n+1))/(2n + 1 + y).
fn root_excess(n: u64) -> Result<f64> {
    let m = 2.0 * n as f64;
    let h = |y: f64| y - (1.0 + (-(m + 1.0) * (m + y).ln()).exp()) / (m + 1.0 + y);
    root_bracketed(h, Bracket::new(&h, 0.0, 1.0)?, 1e-16)
}

fn ln_binomial(n: f64, k: f64) -> Result<f64> {
    Ok(log_gamma(n + 1.0)? - log_gamma(k + 1.0)? - log_gamma(n - k + 1.0)?)
}
