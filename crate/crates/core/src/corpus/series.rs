use std::f64::consts::PI;

use num_traits::ToPrimitive;

use super::util::{atanh_excess, harmonic_real, ln1p_minus, sum_smooth};
use super::{Budget, Category, Evaluation, Expected, Identity, Journal};
use crate::constants::*;
use crate::error::{Error, Result};
use crate::exact::{gregory_coefficient, primes_upto};
use crate::quad::{Interval, NumericResult};
use crate::seqsum::{exp_result, product_from_log, sum_alternating, sum_double, sum_series, sum_series_try, TailStrategy};
use crate::specfun::{expint_e1, log_integral, trigamma, zeta};

const DEFAULT_TOL: f64 = 1e-10;
/// Directly summed terms before the Euler-Maclaurin tail takes over.
const DIRECT_TERMS: u64 = 2000;

#[allow(clippy::too_many_arguments)]
fn entry<F>(
    id: &'static str,
    source: (Journal, &'static str),
    category: Category,
    statement: &'static str,
    expected: ClosedForm,
    tol: f64,
    quote: &'static str,
    eval: F,
) -> Identity
where
    F: Fn(&Budget) -> Result<NumericResult> + Send + Sync + 'static,
{
    Identity::new(id, source, category, statement, Expected::Closed(expected), tol, quote, move |b| eval(b).map(Evaluation::from))
}

fn series<F>(
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
    entry(id, source, Category::Series, statement, expected, DEFAULT_TOL, quote, eval)
}

fn product<F>(
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
    entry(id, source, Category::Product, statement, expected, DEFAULT_TOL, quote, eval)
}

/// Product over n >= start of exp(log_factor(n)), log_factor smooth.
fn smooth_product<F>(log_factor: F, start: u64, b: &Budget) -> Result<NumericResult>
where
    F: Fn(f64) -> f64 + Send + Sync + Clone + 'static,
{
    let s = sum_smooth(log_factor, start, b.count(DIRECT_TERMS), b)?;
    Ok(exp_result(s, b.tol))
}

pub(super) fn entries() -> Vec<Identity> {
    use Journal::*;
    vec![
        series("amm-12398", (Amm, "12398"), "sum_{n>=0} 1/sinh(2^n)", int(2) / (e() - int(1)), "S=\\frac{2}{e-1}", |b| {
            sum_series(|n| 1.0 / (2f64.powi(n as i32)).sinh(), 0, &TailStrategy::GeometricRatio { q: 0.5 }, b.tol)
        }),
        series(
            "amm-12470",
            (Amm, "12470"),
            "sum_{n>=1} 2^-n log(tanh 2^n / tanh 2^(n-1))",
            (e().powi(2) + int(1)).log() - int(2),
            "=\\log (e^2+1)-2",
            |b| {
                sum_series(
                    |n| 0.5f64.powi(n as i32) * (ln_tanh(2f64.powi(n as i32)) - ln_tanh(2f64.powi(n as i32 - 1))),
                    1,
                    &TailStrategy::GeometricRatio { q: 0.5 },
                    b.tol,
                )
            },
        ),
        entry(
            "amm-12494d",
            (Amm, "12494"),
            Category::DoubleSeries,
            "sum_{m,n>=1} 1/(m^2 n + m n^2)",
            int(2) * zeta3(),
            DEFAULT_TOL,
            "S(r)=\\int_0^{1} x^{r-1} \\log^2 (1-x)dx",
            double_12494,
        )
        .tags(&["harmonic"]),
        series(
            "mm-2167",
            (MathMag, "2167"),
            "sum_{m>=1} (zeta(2m) - 1)/(m + 2)",
            rat(7, 4) - pi().log() - int(3) * zeta3() / pi().powi(2),
            "\\frac{7}{4}-\\log\\pi-\\frac{3}{\\pi^2}\\zeta(3)",
            |b| sum_series_try(|m| Ok((zeta(2.0 * m as f64)? - 1.0) / (m + 2) as f64), 1, &TailStrategy::GeometricRatio { q: 0.3 }, b.tol),
        )
        .tags(&["zeta"]),
        product(
            "mm-2167L",
            (MathMag, "2167"),
            "lim e^(n/2) prod_{j=2}^n e^(j^2) (1 - 1/j^2)^(j^4)",
            pi() * (int(3) * zeta3() / pi().powi(2) - rat(5, 4)).exp(),
            "\\sim 1.2970745345",
            |b| {
                // log of each factor with the growing parts cancelled
                let s = sum_smooth(quartic_log_excess, 2, b.count(DIRECT_TERMS), b)?;
                Ok(exp_result(NumericResult { value: s.value + 0.5, ..s }, b.tol))
            },
        ),
        series(
            "mm-2171c",
            (MathMag, "2171"),
            "sum_{n>=0} (cos 1 - Taylor polynomial of cos of degree 2n at 1)",
            -(int(1).sin() / int(2)),
            "-\\frac{1}{2} x \\sin x",
            |b| sum_series(|n| taylor_remainder(1.0, n, true), 0, &TailStrategy::GeometricRatio { q: 0.1 }, b.tol),
        ),
        series(
            "mm-2171s",
            (MathMag, "2171"),
            "sum_{n>=0} (sin 1 - Taylor polynomial of sin of degree 2n+1 at 1)",
            (int(1).cos() - int(1).sin()) / int(2),
            "\\frac{x\\cos x-\\sin x}{2}",
            |b| sum_series(|n| taylor_remainder(1.0, n, false), 0, &TailStrategy::GeometricRatio { q: 0.1 }, b.tol),
        ),
        series("crux-4825", (Crux, "4825"), "sum_{n>=1} O_n/(n(n+1)), O_n = sum_{k<=n} 1/(2k-1)", int(4).log(), "=\\log 4", |b| {
            sum_smooth(|x| (harmonic_real(2.0 * x) - 0.5 * harmonic_real(x)) / (x * (x + 1.0)), 1, b.count(DIRECT_TERMS), b)
        })
        .tags(&["harmonic"]),
        series(
            "crux-4826",
            (Crux, "4826"),
            "sum_{k>=1} H_k/(k(k+1)(k+2))",
            pi().powi(2) / int(12) - rat(1, 2),
            "S=\\frac{\\pi^2}{12}-\\frac{1}{2}",
            |b| sum_smooth(|x| harmonic_real(x) / (x * (x + 1.0) * (x + 2.0)), 1, b.count(DIRECT_TERMS), b),
        )
        .tags(&["harmonic"]),
        entry("crux-4894", (Crux, "4894"), Category::Series, "sum_{n>=1} H_{n-1} H_{n+1}/(n(n+1))", int(3), 1e-5, "=3", |b| {
            sum_smooth(|x| harmonic_real(x - 1.0) * harmonic_real(x + 1.0) / (x * (x + 1.0)), 1, b.count(DIRECT_TERMS), b)
        })
        .tags(&["harmonic"]),
        series(
            "crux-4903",
            (Crux, "4903"),
            "sum_{n>=1} (-1/(4n) + sum_{k>=0} (-1)^k/(2n+2k-1))",
            log2() / int(2) + pi() / int(8),
            "\\frac{\\log 2}{2}+\\frac{\\pi}{8}",
            |b| sum_smooth(|x| alternating_tail(2.0 * x - 1.0, 2.0) - 0.25 / x, 1, b.count(DIRECT_TERMS / 4), b),
        ),
        series(
            "crux-4965a",
            (Crux, "4965"),
            "sum_{n>=1} (-1)^(n-1) S_n/n, S_n = sum_{k>=0} (-1)^k/(n+2k)",
            -(log2().powi(2) / int(8)) + int(7) * pi().powi(2) / int(96),
            "\\sim0.659602",
            |b| sum_alternating(|n| alternating_tail(n as f64, 2.0) / n as f64, 1, b.tol),
        ),
        series(
            "crux-4965b",
            (Crux, "4965"),
            "sum_{n>=1} S_n/n, S_n = sum_{k>=0} (-1)^k/(n+2k)",
            log2().powi(2) / int(8) + int(11) * pi().powi(2) / int(96),
            "\\sim 1.19095",
            |b| sum_smooth(|x| alternating_tail(x, 2.0) / x, 1, b.count(DIRECT_TERMS / 4), b),
        ),
        entry(
            "crux-4988",
            (Crux, "4988"),
            Category::Series,
            "sum_{n>=1} ((2n-1) trigamma(n) - 2)",
            rat(-1, 2),
            1e-9,
            "=-\\frac{1}{2}",
            |b| sum_smooth(|x| trigamma_excess(x).unwrap_or(f64::NAN), 1, b.count(DIRECT_TERMS).max(20), b),
        )
        .tags(&["trigamma"]),
        series(
            "elem-1434s1",
            (ElemMath, "1434"),
            "sum_{n>=0} 1/(3n+1)^3",
            rat(13, 27) * zeta3() + int(2) * pi().powi(3) / (int(81) * sqrt3()),
            "S_1= \\frac{13}{27}\\;\\zeta(3) + \\frac{2\\pi^3}{81 \\sqrt 3}",
            |b| sum_smooth(|x| (3.0 * x + 1.0).powi(-3), 0, b.count(DIRECT_TERMS / 4), b),
        ),
        series(
            "elem-1434s2",
            (ElemMath, "1434"),
            "sum_{n>=0} 1/(3n+2)^3",
            rat(13, 27) * zeta3() - int(2) * pi().powi(3) / (int(81) * sqrt3()),
            "\\sim 0.13675",
            |b| sum_smooth(|x| (3.0 * x + 2.0).powi(-3), 0, b.count(DIRECT_TERMS / 4), b),
        ),
        series(
            "elem-1434t1",
            (ElemMath, "1434"),
            "sum_{n>=0} (-1)^n/(3n+1)^3",
            rat(13, 36) * zeta3() + int(5) * pi().powi(3) / (int(162) * sqrt3()),
            "\\sim 0.98659",
            |b| sum_alternating(|n| (3.0 * n as f64 + 1.0).powi(-3), 0, b.tol),
        ),
        series(
            "elem-1434t2",
            (ElemMath, "1434"),
            "sum_{n>=0} (-1)^n/(3n+2)^3",
            int(5) * pi().powi(3) / (int(162) * sqrt3()) - rat(13, 36) * zeta3(),
            "\\sim 0.11843",
            |b| sum_alternating(|n| (3.0 * n as f64 + 2.0).powi(-3), 0, b.tol),
        ),
        entry(
            "elem-1437alt",
            (ElemMath, "1437"),
            Category::Series,
            "sum_{k>=0} (-1)^k a_k, x/log(1-x) = sum a_k x^k",
            -(int(1) / log2()),
            1e-8,
            "=-\\frac{1}{\\log 2}",
            |b| {
                // a_0 = -1, then a_k are the positive Gregory coefficients
                let a = (1..=crate::seqsum::CVZ_TERMS as u64)
                    .map(|k| gregory_coefficient(k)?.to_f64().ok_or_else(|| Error::Domain("coefficient".into())))
                    .collect::<Result<Vec<f64>>>()?;
                let r = sum_alternating(|k| a[k as usize - 1], 1, b.tol)?;
                Ok(NumericResult { value: -1.0 - r.value, ..r })
            },
        )
        .tags(&["gregory"]),
        product(
            "mm-2147",
            (MathMag, "2147"),
            "prod_{n>=2} (n^4 + 4)/(n^4 - 1)",
            int(2) * pi().sinh() / (int(5) * pi()),
            "=\\frac{2\\sinh\\pi}{5\\pi}",
            |b| smooth_product(|x| (5.0 / (x.powi(4) - 1.0)).ln_1p(), 2, b),
        ),
        product(
            "mm-2187",
            (MathMag, "2187"),
            "prod_{n>=0} (1 + cosh(2^n s)/cosh(2^n r)), r = 2, s = 1",
            int(2).sinh() / (int(2).cosh() - int(1).cosh()),
            "\\frac{\\sinh r}{\\cosh r-\\cosh s}",
            |b| {
                product_from_log(
                    |n| {
                        let k = 2f64.powi(n as i32);
                        cosh_ratio(k, 2.0 * k).ln_1p()
                    },
                    0,
                    &TailStrategy::GeometricRatio { q: 0.5 },
                    b.tol,
                )
            },
        ),
        product("amm-11226", (Amm, "11226"), "prod_{n>=0} (1 - (2/pi)^4/(2n+1)^4)", int(1).cos() * int(1).cosh(), "\\cos 1\\cosh 1", |b| {
            let c = (2.0 / PI).powi(4);
            smooth_product(move |x| (-c / (2.0 * x + 1.0).powi(4)).ln_1p(), 0, b)
        })
        .note("the closing line of the printed solution drops a factor 1/e; cos 1 cosh 1 as derived is encoded"),
        product(
            "amm-10588",
            (Amm, "10588"),
            "prod_{n>=1} e^(-1/n) (1 + 1/n + 1/(2n^2))",
            ((pi() / int(2)).exp() + (-(pi() / int(2))).exp()) / (pi() * euler_gamma().exp()),
            "\\over \\pi e^\\gamma",
            |b| smooth_product(|x| ln1p_minus(1.0 / x + 0.5 / (x * x)) + 0.5 / (x * x), 1, b),
        ),
        product(
            "amm-10605",
            (Amm, "10605"),
            "prod_{n>=2} (n^2 - 1)/(n^2 + 1)",
            pi() / pi().sinh(),
            "(-1)^{m+1}\\pi m/\\sinh(\\pi m)",
            |b| smooth_product(|x| (-2.0 / (x * x + 1.0)).ln_1p(), 2, b),
        ),
        product("crux-4836a", (Crux, "4836"), "prod_{n>=1} 4n(n+1)/(2n+1)^2", pi() / int(4), "=\\frac{\\pi}{4}", |b| {
            smooth_product(|x| (-(2.0 * x + 1.0).powi(-2)).ln_1p(), 1, b)
        }),
        product(
            "crux-4836b",
            (Crux, "4836"),
            "prod over n >= 1 with 2n+1 prime of 4n(n+1)/(2n+1)^2",
            int(8) / pi().powi(2),
            "=\\frac{4}{3}\\; \\frac{6}{\\pi^2}=\\frac{8}{\\pi^2}",
            |b| {
                let limit = b.count(10_000_000);
                let primes = primes_upto(limit)?;
                let head = log_sum(primes.iter().skip(1).map(|&p| p as f64));
                let tail = prime_tail(limit, primes.len() as u64)?;
                Ok(exp_result(head.plus(tail), b.tol))
            },
        )
        .tags(&["primes"])
        .note("the prime tail uses the Schoenfeld bound on |pi(x) - li(x)|, which assumes the Riemann hypothesis"),
        product(
            "crux-4836c",
            (Crux, "4836"),
            "prod over n >= 1 with 2n+1 composite of 4n(n+1)/(2n+1)^2",
            pi().powi(3) / int(32),
            "=\\frac{\\pi^3}{32}",
            |b| {
                let limit = b.count(10_000_000) | 1;
                let primes = primes_upto(limit)?;
                let mut is_prime = vec![false; limit as usize + 1];
                for &p in &primes {
                    is_prime[p as usize] = true;
                }
                let head = log_sum((9..=limit).step_by(2).filter(|&m| !is_prime[m as usize]).map(|m| m as f64));
                // every odd m beyond the limit, less the primes among them
                let odd = sum_smooth(|x| (-(2.0 * x + 1.0).powi(-2)).ln_1p(), limit.div_ceil(2), 100, b)?;
                let prime = prime_tail(limit, primes.len() as u64)?;
                let tail = NumericResult { value: odd.value - prime.value, err: odd.err + prime.err, ..odd };
                Ok(exp_result(head.plus(tail), b.tol))
            },
        )
        .tags(&["primes"])
        .note("the prime tail uses the Schoenfeld bound on |pi(x) - li(x)|, which assumes the Riemann hypothesis"),
        product(
            "elem-1281a",
            (ElemMath, "1281"),
            "prod_{n>=2} e^2 ((n-1)/(n+1))^n",
            int(4) * pi() / e().powi(3),
            "P= \\frac{4\\pi}{e^3}",
            |b| smooth_product(|x| -2.0 * atanh_excess(1.0 / x), 2, b),
        ),
        product(
            "elem-1281b",
            (ElemMath, "1281"),
            "prod_{n>=1} e (n/(n+1))^(n+1/2)",
            (int(2) * pi()).sqrt() / e(),
            "P^*= \\frac{\\sqrt {2\\pi}}{e}",
            |b| smooth_product(|x| -atanh_excess(1.0 / (2.0 * x + 1.0)), 1, b),
        ),
    ]
}

/// log tanh x, accurate when tanh x is close to 1.
fn ln_tanh(x: f64) -> f64 {
    (-2.0 / ((2.0 * x).exp() + 1.0)).ln_1p()
}

/// cosh a / cosh c without overflow, for 0 <= a <= c.
fn cosh_ratio(a: f64, c: f64) -> f64 {
    (a - c).exp() * (1.0 + (-2.0 * a).exp()) / (1.0 + (-2.0 * c).exp())
}

/// sum_{k>=0} (-1)^k / (x + step k), x > 0.
fn alternating_tail(x: f64, step: f64) -> f64 {
    sum_alternating(|k| 1.0 / (x + step * k as f64), 0, 0.0).map_or(f64::NAN, |r| r.value)
}

/// n th remainder of the cosine (or sine) Taylor series at x.
fn taylor_remainder(x: f64, n: u64, cosine: bool) -> f64 {
    let offset = if cosine { 0 } else { 1 };
    // first omitted power is 2(n+1) + offset
    let mut k = 2 * (n + 1) + offset;
    let mut t = x.powi(k as i32) / (1..=k).map(|j| j as f64).product::<f64>();
    if n.is_multiple_of(2) {
        t = -t;
    }
    let mut acc = 0.0f64;
    while t != 0.0 && t.abs() > 1e-20 * acc.abs() {
        acc += t;
        t *= -x * x / ((k + 1) * (k + 2)) as f64;
        k += 2;
    }
    acc
}

/// j^2 + 1/2 + j^4 log(1 - 1/j^2) = -sum_{k>=1} y^k/(k+2), y = 1/j^2.
fn quartic_log_excess(j: f64) -> f64 {
    let y = 1.0 / (j * j);
    let mut p = y;
    let mut acc = 0.0;
    for k in 1..200 {
        let t = p / (k + 2) as f64;
        acc += t;
        if t < 1e-18 * acc {
            break;
        }
        p *= y;
    }
    -acc
}

/// (2x - 1) trigamma(x) - 2, with the leading cancellation removed for large x.
fn trigamma_excess(x: f64) -> Result<f64> {
    if x < 20.0 {
        return Ok((2.0 * x - 1.0) * trigamma(x)? - 2.0);
    }
    // trigamma(x) = 1/x + 1/(2x^2) + r, r from the Bernoulli numbers
    let r2 = 1.0 / (x * x);
    let r = r2 / x * (1.0 / 6.0 + r2 * (-1.0 / 30.0 + r2 * (1.0 / 42.0 + r2 * (-1.0 / 30.0 + r2 * (5.0 / 66.0 - r2 * 691.0 / 2730.0)))));
    Ok(-0.5 * r2 + (2.0 * x - 1.0) * r)
}

fn double_12494(b: &Budget) -> Result<NumericResult> {
    let rows = b.count(400).max(80);
    let row_terms = 400;
    let model = |x: f64| harmonic_real(x) / (x * x);
    let outer_tail = super::util::quad(model, Interval::semi_infinite(rows as f64)?, b)?;
    let strategy = TailStrategy::integral_tail(model, move |_| outer_tail.value, rows);
    let r = sum_double(
        |m, n| {
            let (m, n) = (m as f64, n as f64);
            1.0 / (m * n * (m + n))
        },
        |m| {
            let m = m as f64;
            TailStrategy::integral_tail(move |x| 1.0 / (m * x * (m + x)), move |x| (m / x).ln_1p() / (m * m), row_terms)
        },
        &strategy,
        b.tol,
    )?;
    let err = r.err + outer_tail.err;
    Ok(NumericResult { err, converged: err <= b.tol, ..r })
}

/// sum of log(1 - 1/m^2) over the given m.
fn log_sum(ms: impl Iterator<Item = f64>) -> NumericResult {
    let mut acc = crate::compensated::KahanSum::new();
    let mut count = 0u64;
    let mut abs = 0.0;
    for m in ms {
        let t = (-1.0 / (m * m)).ln_1p();
        acc.add(t);
        abs += t.abs();
        count += 1;
    }
    NumericResult { value: acc.value(), err: 4.0 * f64::EPSILON * abs * (count as f64).sqrt(), evaluations: count, converged: true }
}

/// sum over primes p > limit of log(1 - 1/p^2), given pi(limit).
fn prime_tail(limit: u64, count: u64) -> Result<NumericResult> {
    let p = limit as f64;
    let lp = p.ln();
    // sum_{p > P} p^-2 = E1(log P) - (pi(P) - li(P))/P^2 + 2 int_P^inf (pi - li)/t^3
    let reciprocal_squares = expint_e1(lp)? - (count as f64 - log_integral(p)?) / (p * p);
    // |pi(t) - li(t)| <= sqrt(t) log t/(8 pi) for t >= 2657
    let bound = (lp / 1.5 + 1.0 / 2.25) * p.powf(-1.5) / (4.0 * PI);
    // the log(1 - u) = -u - u^2/2 - ... correction is below sum p^-4
    let higher = 1.0 / (3.0 * p * p * p);
    Ok(NumericResult { value: -reciprocal_squares, err: bound + higher, evaluations: 1, converged: true })
}
