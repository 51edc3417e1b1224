use crate::error::Result;
use crate::quad::{integrate, Interval, NumericResult, QuadOptions};
use crate::seqsum::{sum_series, TailStrategy};
use crate::specfun::log_gamma;

use super::Budget;

/// Quadrature aiming a decade below the entry tolerance.
pub(crate) fn quad<F: Fn(f64) -> f64>(f: F, iv: Interval, b: &Budget) -> Result<NumericResult> {
    let opts = QuadOptions::new((b.tol * 0.1).max(1e-15), 12)?;
    integrate(f, &iv, &opts)
}

pub(crate) fn quad_finite<F: Fn(f64) -> f64>(f: F, a: f64, bnd: f64, b: &Budget) -> Result<NumericResult> {
    quad(f, Interval::finite(a, bnd)?, b)
}

/// Integral over [a, a + pieces * step], split at every multiple of `step`.
pub(crate) fn quad_segments<F: Fn(f64) -> f64>(f: F, a: f64, step: f64, pieces: u32, b: &Budget) -> Result<NumericResult> {
    let splits = (1..pieces).map(|k| a + k as f64 * step).collect();
    quad(f, Interval::finite(a, a + pieces as f64 * step)?.with_splits(splits)?, b)
}

/// x - sin x without cancellation.
pub(crate) fn x_minus_sin(x: f64) -> f64 {
    if x.abs() < 0.5 {
        let x2 = x * x;
        // x^3/3! - x^5/5! + ... to x^17
        let mut term = x * x2 / 6.0;
        let mut acc = 0.0;
        for k in 1..9 {
            acc += term;
            term *= -x2 / ((2 * k + 2) as f64 * (2 * k + 3) as f64);
        }
        acc
    } else {
        x - x.sin()
    }
}

/// log(sin x / x) for |x| < pi, accurate near 0.
pub(crate) fn log_sinc(x: f64) -> f64 {
    if x.abs() < 0.1 {
        // -sum_{k>=1} (-1)^(k+1) 2^(2k-1) B_2k x^2k / (k (2k)!) written out
        let x2 = x * x;
        -x2 / 6.0 - x2 * x2 / 180.0 - x2 * x2 * x2 / 2835.0 - x2.powi(4) / 37800.0 - x2.powi(5) / 467775.0
    } else {
        (x.sin() / x).ln()
    }
}

/// coth y - 1/y, accurate near 0.
pub(crate) fn coth_minus_recip(y: f64) -> f64 {
    if y.abs() < 0.5 {
        let y2 = y * y;
        y * (1.0 / 3.0 - y2 / 45.0 + 2.0 * y2 * y2 / 945.0 - y2 * y2 * y2 / 4725.0 + 2.0 * y2.powi(4) / 93555.0
            - 1382.0 * y2.powi(5) / 638512875.0)
    } else {
        1.0 / y.tanh() - 1.0 / y
    }
}

/// Harmonic number H(x) = digamma(x + 1) + gamma extended to real x >= 0.
pub(crate) fn harmonic_real(x: f64) -> f64 {
    let mut shift = 0.0;
    let mut y = x;
    while y < 20.0 {
        y += 1.0;
        shift += 1.0 / y;
    }
    let r = 1.0 / (y * y);
    let series = r * (-1.0 / 12.0 + r * (1.0 / 120.0 + r * (-1.0 / 252.0 + r * (1.0 / 240.0 - r / 132.0))));
    y.ln() + crate::constants::Constant::EulerGamma.value() + 0.5 / y + series - shift
}

/// log(1 + u) - u without cancellation for small u.
pub(crate) fn ln1p_minus(u: f64) -> f64 {
    if u.abs() < 0.25 {
        let mut p = u * u;
        let mut acc = 0.0;
        for k in 2..60 {
            let t = p / k as f64;
            acc += if k % 2 == 0 { -t } else { t };
            if t.abs() < 1e-18 * acc.abs() {
                break;
            }
            p *= u;
        }
        acc
    } else {
        u.ln_1p() - u
    }
}

/// atanh(y)/y - 1 = sum_{k>=1} y^(2k)/(2k+1).
pub(crate) fn atanh_excess(y: f64) -> f64 {
    if y.abs() < 0.5 {
        let y2 = y * y;
        let mut p = y2;
        let mut acc = 0.0;
        for k in 1..80 {
            let t = p / (2 * k + 1) as f64;
            acc += t;
            if t < 1e-18 * acc {
                break;
            }
            p *= y2;
        }
        acc
    } else {
        y.atanh() / y - 1.0
    }
}

/// Sum of model(n) for n >= start: `terms` terms directly, the rest from
/// Euler-Maclaurin with the tail integral of the same smooth model by quadrature.
pub(crate) fn sum_smooth<F>(model: F, start: u64, terms: u64, b: &Budget) -> Result<NumericResult>
where
    F: Fn(f64) -> f64 + Send + Sync + Clone + 'static,
{
    sum_with_tail(
        {
            let m = model.clone();
            move |n| m(n as f64)
        },
        model,
        start,
        terms,
        b,
    )
}

/// As [`sum_smooth`] with separate exact terms and smooth tail model.
pub(crate) fn sum_with_tail<T, F>(term: T, model: F, start: u64, terms: u64, b: &Budget) -> Result<NumericResult>
where
    T: Fn(u64) -> f64,
    F: Fn(f64) -> f64 + Send + Sync + Clone + 'static,
{
    let last = (start + terms - 1) as f64;
    let tail = quad(model.clone(), Interval::semi_infinite(last)?, b)?;
    let strategy = TailStrategy::integral_tail(model, move |_| tail.value, terms);
    let r = sum_series(term, start, &strategy, b.tol)?;
    let err = r.err + tail.err;
    Ok(NumericResult { err, converged: err <= b.tol, evaluations: r.evaluations + tail.evaluations, ..r })
}

/// ln G(y + c) - ln G(y), by Stirling differences once y is large so the
/// two big logarithms never meet.
pub(crate) fn log_gamma_shift(y: f64, c: f64) -> f64 {
    if y + c.min(0.0) < 40.0 {
        return log_gamma(y + c).unwrap_or(f64::NAN) - log_gamma(y).unwrap_or(f64::NAN);
    }
    let z = y + c;
    let series = |w: f64| {
        let w2 = w * w;
        (1.0 / 12.0 - (1.0 / 360.0 - 1.0 / (1260.0 * w2)) / w2) / w
    };
    (z - 0.5) * (c / y).ln_1p() + c * y.ln() - c + series(z) - series(y)
}
