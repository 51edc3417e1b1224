//! Inequalities checked over documented ranges, and consistency entries
//! where two computable quantities must agree.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{One, Pow};

use super::util::{log_gamma_shift, quad, quad_finite, quad_segments, sum_with_tail};
use super::{Budget, Category, Evaluation, Expected, Identity, Journal, EXACT_TOL};
use crate::error::{Error, Result};
use crate::exact::ratio;
use crate::quad::{Interval, NumericResult};
use crate::seqsum::sum_alternating;
use crate::specfun::{chebyshev, ChebyshevKind};

const CONSISTENCY_TOL: f64 = 1e-10;

fn inequality<F>(id: &'static str, source: (Journal, &'static str), statement: &'static str, quote: &'static str, check: F) -> Identity
where
    F: Fn(&Budget) -> Result<bool> + Send + Sync + 'static,
{
    Identity::new(id, source, Category::Inequality, statement, Expected::Holds, EXACT_TOL, quote, move |b| check(b).map(Evaluation::holds))
}

pub(super) fn entries() -> Vec<Identity> {
    use Journal::*;
    vec![
        inequality("mm-1947", (MathMag, "1947"), "sum_{k=0}^n |cos k| >= n/2 for n <= 10^5", "\\geq \\frac{n}{2}", |b| {
            let mut acc = 0.0;
            for n in 0..=b.count(100_000) {
                acc += (n as f64).cos().abs();
                // the rounding in acc is far below the margin once n > 2
                if acc < 0.5 * n as f64 {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        inequality(
            "amm-10857",
            (Amm, "10857"),
            "S_{2n-1}/C_{2n} < tanh x < S_{2n+1}/C_{2n} for x in {0.1, ..., 3}, n <= 20",
            "{S_{2n-1}\\over C_{2n}}< \\tanh",
            |_| {
                for i in 1..=30 {
                    let x = 0.1 * i as f64;
                    for n in 1..=20 {
                        if !tanh_bounds_10857(x, n) {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            },
        ),
        inequality(
            "crux-4822",
            (Crux, "4822"),
            "1/3 < integral_1^inf T_n(x)^(-2/n) dx < 4^(1/n)/3 for n <= 10",
            "\\frac{1}{3} \\sqrt[n]{4}",
            |b| {
                for n in 1..=10u32 {
                    let i = chebyshev_integral_4822(n, b)?;
                    let upper = 4f64.powf(1.0 / n as f64) / 3.0;
                    if !(i.value - i.err > 1.0 / 3.0 && i.value + i.err < upper) {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        ),
        inequality(
            "amm-12490",
            (Amm, "12490"),
            "for f = e^x: sum_n integral_0^1 sin(2 pi n x) f(x)/n dx <= 0 and sum_n integral_0^1 cos(2 pi n x) f(x) dx >= 0",
            "\\leq 0",
            |b| {
                let (sines, cosines) = fourier_sums_12490(b)?;
                Ok(sines.0 + sines.1 <= 0.0 && cosines.0 - cosines.1 >= 0.0)
            },
        ),
        inequality(
            "elem-1453",
            (ElemMath, "1453"),
            "(1 - 1/x)^(n-1) <= x/(x+n-1) for rational x > 1 on a grid, n <= 12",
            "\\frac{x}{x+n-1}",
            |_| {
                for k in 1..=60 {
                    let x = BigRational::one() + ratio(k, 8);
                    for n in 1..=12i64 {
                        let lhs = Pow::pow(BigRational::one() - x.recip(), (n - 1) as u32);
                        let rhs = &x / (&x + ratio(n - 1, 1));
                        if lhs > rhs {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            },
        ),
        inequality(
            "elem-1383",
            (ElemMath, "1383"),
            "sup over a disk grid of |(1-z)^a - (1-w)^a|/|z-w|^a matches max{1, 2^(1-a) sin(a pi/2)}",
            "\\max\\{1, 2^{1-\\alpha}\\sin(\\alpha\\pi/2)\\}",
            |_| {
                for alpha in [0.25, 0.5, 0.6, 0.75, 0.9, 1.0] {
                    let sigma = 1f64.max(2f64.powf(1.0 - alpha) * (alpha * PI / 2.0).sin());
                    let sup = holder_sup_1383(alpha);
                    if !(sup >= sigma - 0.05 && sup <= sigma + 1e-9) {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        )
        .note("the grid has 200 boundary points and 200 interior points; the supremum is approached at z, w -> 1"),
        Identity::new(
            "elem-1431",
            (ElemMath, "1431"),
            Category::Consistency,
            "sum_{k,n>=0} (-1)^(k+n+1) C(-1/2, n)/((2n+1)(2k+1)(2n+2k+3)^2) against the integral",
            Expected::Oracle("integral_0^1 arcsin x arctan x log x dx"),
            CONSISTENCY_TOL,
            "\\int_0^1 \\arcsin x\\arctan x\\log x\\; dx",
            |b| {
                let integral = quad_finite(|x: f64| if x == 0.0 { 0.0 } else { x.asin() * x.atan() * x.ln() }, 0.0, 1.0, b)?;
                Ok(Evaluation { value: double_series_1431(b)?, reference: Some(integral) })
            },
        ),
        Identity::new(
            "crux-4937",
            (Crux, "4937"),
            Category::Consistency,
            "integral_0^b integral_0^a f(x+y)/(x+y) dx dy for f(t) = |sin(pi t/a)|, (a, b) = (1, 0.7)",
            Expected::Oracle("the single-integral form"),
            CONSISTENCY_TOL,
            "b\\int_b^{a+b} \\frac{f(t)}{t} dt+a \\int_a^{a+b} \\frac{f(s)}{s}ds",
            |b| {
                let (lhs, rhs) = two_sided_4937(1.0, 0.7, b)?;
                Ok(Evaluation { value: lhs, reference: Some(rhs) })
            },
        ),
    ]
}

/// Both tanh bounds at (x, n), written so that no nearly equal quantities
/// are subtracted: with S, C the partial sums of sinh, cosh and s, c their
/// positive tails, S/C < tanh x iff S c < C s.
fn tanh_bounds_10857(x: f64, n: usize) -> bool {
    // terms[k] = x^k / k!
    let mut terms = vec![1.0f64];
    for k in 1..200 {
        let t = terms[k - 1] * x / k as f64;
        terms.push(t);
    }
    let odd = |from: usize, to: usize| (from..to).map(|j| terms[2 * j + 1]).sum::<f64>();
    let even = |from: usize, to: usize| (from..to).map(|j| terms[2 * j]).sum::<f64>();
    let c_2n = even(0, n + 1);
    let cosh_tail = even(n + 1, 99);
    // lower: S_{2n-1} = odd(0, n), sinh tail from j = n
    let lower = odd(0, n) * cosh_tail < c_2n * odd(n, 99);
    // upper: S_{2n+1} = odd(0, n + 1), sinh tail from j = n + 1
    let upper = odd(n + 1, 99) * c_2n < odd(0, n + 1) * cosh_tail;
    lower && upper
}

fn chebyshev_integral_4822(n: u32, b: &Budget) -> Result<NumericResult> {
    let p = -2.0 / n as f64;
    quad(move |x: f64| chebyshev(ChebyshevKind::T, n, x).powf(p), Interval::semi_infinite(1.0)?, b)
}

/// Partial sums of both series in 12490 by quadrature, each paired with a
/// bound on its tail from the integration-by-parts estimate.
fn fourier_sums_12490(b: &Budget) -> Result<((f64, f64), (f64, f64))> {
    let terms = b.count(200).max(20) as u32;
    // both verdicts clear zero by far more than this quadrature error
    let b = &Budget { tol: 1e-9, ..*b };
    let (mut sines, mut cosines, mut err) = (0.0, 0.0, 0.0);
    for n in 1..=terms {
        let w = 2.0 * PI * n as f64;
        let step = 1.0 / n as f64;
        let s = quad_segments(|x: f64| (w * x).sin() * x.exp() / n as f64, 0.0, step, n, b)?;
        let c = quad_segments(|x: f64| (w * x).cos() * x.exp(), 0.0, step, n, b)?;
        sines += s.value;
        cosines += c.value;
        err += s.err + c.err;
    }
    let e1 = std::f64::consts::E - 1.0;
    // |I_n| <= (f(1) - f(0))/(pi n^2), |J_n| <= 2 (f'(1) - f'(0))/(4 pi^2 n^2), and sum_{n>N} 1/n^2 < 1/N
    let sine_tail = e1 / (PI * terms as f64) + err;
    let cosine_tail = e1 / (2.0 * PI * PI * terms as f64) + err;
    Ok(((sines, sine_tail), (cosines, cosine_tail)))
}

/// sup of |(1-z)^a - (1-w)^a| / |z-w|^a over pairs from a polar grid of the disk.
fn holder_sup_1383(alpha: f64) -> f64 {
    let mut pts: Vec<(f64, f64)> = (0..200).map(|j| (2.0 * PI * j as f64 / 200.0).sin_cos()).map(|(s, c)| (c, s)).collect();
    for r in [0.25, 0.5, 0.75, 0.9] {
        pts.extend((0..50).map(|j| {
            let (s, c) = (2.0 * PI * (j as f64 + 0.5) / 50.0).sin_cos();
            (r * c, r * s)
        }));
    }
    // (1 - z)^a on the principal branch; Re(1 - z) >= 0 on the disk
    let power = |(x, y): (f64, f64)| {
        let (u, v) = (1.0 - x, -y);
        let m = u.hypot(v);
        if m == 0.0 {
            return (0.0, 0.0);
        }
        let (r, t) = (m.powf(alpha), alpha * v.atan2(u));
        (r * t.cos(), r * t.sin())
    };
    let images: Vec<_> = pts.iter().map(|&p| power(p)).collect();
    let mut sup = 0.0f64;
    for (i, &(zx, zy)) in pts.iter().enumerate() {
        for (j, &(wx, wy)) in pts.iter().enumerate().skip(i + 1) {
            let d = (zx - wx).hypot(zy - wy);
            if d == 0.0 {
                continue;
            }
            let num = (images[i].0 - images[j].0).hypot(images[i].1 - images[j].1);
            sup = sup.max(num / d.powf(alpha));
        }
    }
    sup
}

/// Rows over k alternate, so each is summed with CVZ; the sum over n is
/// smooth in n and closed with an integral tail.
fn double_series_1431(b: &Budget) -> Result<NumericResult> {
    // (-1)^n C(-1/2, n) = G(n + 1/2)/(sqrt(pi) G(n + 1))
    let row = |n: f64| sum_alternating(|k| 1.0 / ((2 * k + 1) as f64 * (2.0 * n + 2.0 * k as f64 + 3.0).powi(2)), 0, 1e-20);
    let row0 = row(0.0)?;
    if !row0.err.is_finite() {
        return Err(Error::Domain("row sum is not finite".into()));
    }
    let model = move |n: f64| {
        let weight = log_gamma_shift(n + 1.0, -0.5).exp() / PI.sqrt();
        -weight / (2.0 * n + 1.0) * row(n).map(|r| r.value).unwrap_or(f64::NAN)
    };
    let r = sum_with_tail(|n| model(n as f64), model, 0, b.count(2000).max(200), b)?;
    // row errors decrease in n and their weights sum to arcsin 1 = pi/2
    Ok(NumericResult { err: r.err + row0.err * PI / 2.0, ..r })
}

/// Left: the double integral. Right: the single-integral form.
fn two_sided_4937(a: f64, b: f64, budget: &Budget) -> Result<(NumericResult, NumericResult)> {
    let f = move |t: f64| (PI * t / a).sin().abs();
    let g = move |t: f64| f(t) / t;
    // integral of g over [lo, hi] split at the kinks of f
    let segment = move |lo: f64, hi: f64| -> Result<NumericResult> {
        let first = (lo / a).floor() as i64 + 1;
        let splits: Vec<f64> = (first..).map(|k| k as f64 * a).take_while(|&s| s < hi).filter(|&s| s > lo).collect();
        quad(g, Interval::finite(lo, hi)?.with_splits(splits)?, budget)
    };
    // inner integral over x in [0, a] is the integral of g over [y, y + a]
    let inner_err = std::cell::Cell::new(0.0f64);
    let lhs = quad(
        |y: f64| {
            let r = if y == 0.0 { segment(1e-300, a) } else { segment(y, y + a) };
            match r {
                Ok(r) => {
                    inner_err.set(inner_err.get().max(r.err));
                    r.value
                }
                Err(_) => f64::NAN,
            }
        },
        Interval::finite(0.0, b)?,
        budget,
    )?;
    let lhs = NumericResult { err: lhs.err + b * inner_err.get(), ..lhs };
    let rhs = segment(b, a + b)?.scale(b).plus(segment(a, a + b)?.scale(a));
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tanh_bounds_fail_when_swapped() {
        // n = 1, x = 1: x/(1 + x^2/2) = 0.667 < tanh 1 = 0.762 < 0.778
        assert!(tanh_bounds_10857(1.0, 1));
        let (s1, c2, s3) = (1.0, 1.5, 1.0 + 1.0 / 6.0);
        assert!(s1 / c2 < 1f64.tanh() && 1f64.tanh() < s3 / c2);
    }

    #[test]
    fn chebyshev_integral_is_one_for_n_one() {
        let r = chebyshev_integral_4822(1, &Budget::full(1e-10)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }
}
