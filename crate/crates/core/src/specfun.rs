//! Special functions: Riemann zeta, alternating zeta, dilogarithm, trigamma,
//! log-gamma and Beta, Chebyshev polynomials and exact harmonic numbers.

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::compensated::KahanSum;
use crate::error::{Error, Result};

const PI2_6: f64 = PI * PI / 6.0;

/// Bernoulli numbers B_0..B_40 as exact rationals (B_1 = -1/2).
pub fn bernoulli_table() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let m_max = 40usize;
        let mut b: Vec<BigRational> = Vec::with_capacity(m_max + 1);
        b.push(BigRational::one());
        for m in 1..=m_max {
            // sum_{k<m} C(m+1, k) B_k + (m+1) B_m = 0
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one();
            for (k, bk) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bk;
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b
    })
}

fn bernoulli_f64(n: usize) -> f64 {
    bernoulli_table()[n].to_f64().unwrap_or(f64::NAN)
}

/// B_{2k} / (2k)! for k = 0..=20.
fn bernoulli_over_factorial() -> &'static [f64] {
    static T: OnceLock<Vec<f64>> = OnceLock::new();
    T.get_or_init(|| {
        let mut fact = BigInt::one();
        let mut out = Vec::new();
        for n in 0..=40usize {
            if n > 0 {
                fact *= BigInt::from(n);
            }
            if n % 2 == 0 {
                let q = &bernoulli_table()[n] / BigRational::from_integer(fact.clone());
                out.push(q.to_f64().unwrap_or(0.0));
            }
        }
        out
    })
}

/// Riemann zeta for real s > 1.
///
/// Euler-Maclaurin with 20 explicit terms and corrections through B_12.
pub fn zeta(s: f64) -> Result<f64> {
    if s.is_nan() || s <= 1.0 {
        return Err(Error::Domain(format!("zeta needs s > 1, got {s}")));
    }
    if s.is_infinite() {
        return Ok(1.0);
    }
    const N: f64 = 20.0;
    let mut acc = KahanSum::new();
    for n in 1..20 {
        acc.add((n as f64).powf(-s));
    }
    acc.add(N.powf(1.0 - s) / (s - 1.0));
    acc.add(0.5 * N.powf(-s));
    let coef = bernoulli_over_factorial();
    // rising product s (s+1) ... (s+2k-2)
    let mut rising = s;
    let mut npow = N.powf(-s - 1.0);
    for (k, c) in coef.iter().enumerate().take(7).skip(1) {
        if k > 1 {
            rising *= (s + (2 * k - 3) as f64) * (s + (2 * k - 2) as f64);
            npow /= N * N;
        }
        acc.add(c * rising * npow);
    }
    let value = acc.value();
    debug_assert!({
        let next = (coef[7] * rising * (s + 11.0) * (s + 12.0) * npow / (N * N)).abs();
        next < 1e-14 * value
    });
    Ok(value)
}

/// Alternating zeta, eta(s) = (1 - 2^{1-s}) zeta(s), with eta(1) = log 2.
pub fn eta(s: f64) -> Result<f64> {
    if s.is_nan() || s < 1.0 {
        return Err(Error::Domain(format!("eta needs s >= 1, got {s}")));
    }
    if s == 1.0 {
        return Ok(LN_2);
    }
    Ok(-((1.0 - s) * LN_2).exp_m1() * zeta(s)?)
}

/// Real dilogarithm Li_2(x) for x <= 1.
pub fn dilog(x: f64) -> Result<f64> {
    if x.is_nan() || x > 1.0 {
        return Err(Error::Domain(format!("dilog needs x <= 1, got {x}")));
    }
    if x == 1.0 {
        return Ok(PI2_6);
    }
    if x < -1.0 {
        let l = (-x).ln();
        return Ok(-PI2_6 - 0.5 * l * l - dilog_core(1.0 / x));
    }
    if x > 0.5 {
        return Ok(PI2_6 - x.ln() * (-x).ln_1p() - dilog_core(1.0 - x));
    }
    Ok(dilog_core(x))
}

// Series in u = -log(1-x) with Bernoulli coefficients, |u| <= log 2 here.
fn dilog_core(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let u = -(-x).ln_1p();
    let u2 = u * u;
    let coef = bernoulli_over_factorial();
    let mut acc = KahanSum::new();
    acc.add(u);
    acc.add(-0.25 * u2);
    let mut upow = u;
    for (k, c) in coef.iter().enumerate().skip(1) {
        upow *= u2;
        // B_{2k} u^{2k+1} / (2k+1)!
        let term = c * upow / (2 * k + 1) as f64;
        acc.add(term);
        if term.abs() < 1e-18 * acc.value().abs() {
            break;
        }
    }
    acc.value()
}

/// Trigamma psi_1(x) = sum_{j>=0} 1/(j+x)^2 for x > 0.
///
/// Shifts x up to at least 8, then applies the asymptotic expansion through
/// the x^-15 term.
pub fn trigamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("trigamma needs x > 0, got {x}")));
    }
    let mut acc = KahanSum::new();
    let mut z = x;
    while z < 8.0 {
        acc.add(1.0 / (z * z));
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = KahanSum::new();
    series.add(inv);
    series.add(0.5 * inv2);
    let mut p = inv * inv2;
    for k in 1..=7 {
        series.add(bernoulli_f64(2 * k) * p);
        p *= inv2;
    }
    acc.add(series.value());
    Ok(acc.value())
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// log Gamma(x) for x > 0 (Lanczos, g = 7).
pub fn log_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("log_gamma needs x > 0, got {x}")));
    }
    Ok(lanczos_log_gamma(x))
}

fn lanczos_log_gamma(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - lanczos_log_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Beta(a, b) = Gamma(a) Gamma(b) / Gamma(a+b); symmetric bit for bit.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    let la = log_gamma(a)?;
    let lb = log_gamma(b)?;
    let lab = log_gamma(a + b)?;
    Ok((la + lb - lab).exp())
}

/// Exact generalized harmonic number sum_{j=1}^n 1/j^order, order 1 or 2.
pub fn harmonic(n: u64, order: u32) -> Result<BigRational> {
    if order != 1 && order != 2 {
        return Err(Error::Precondition(format!("harmonic order must be 1 or 2, got {order}")));
    }
    let mut acc = BigRational::zero();
    for j in 1..=n {
        let d = BigInt::from(j).pow(order);
        acc += BigRational::new(BigInt::one(), d);
    }
    Ok(acc)
}

/// E_1(x) = integral over [x, inf) of e^(-t)/t, for x > 0.
pub fn expint_e1(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("expint_e1 needs x > 0, got {x}")));
    }
    if x <= 1.0 {
        // -gamma - ln x - sum (-x)^k / (k k!)
        let mut term = 1.0;
        let mut acc = 0.0;
        for k in 1..60 {
            term *= -x / k as f64;
            let t = term / k as f64;
            acc += t;
            if t.abs() < 1e-18 * acc.abs() {
                break;
            }
        }
        return Ok(-crate::constants::Constant::EulerGamma.value() - x.ln() - acc);
    }
    // modified Lentz on e^(-x) / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let a = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            return Ok(h * (-x).exp());
        }
    }
    Err(Error::NotConverged(format!("expint_e1 continued fraction at x = {x}")))
}

/// li(x) = Ei(ln x) for x > 1, by the power series of Ei (fine for ln x <= 40).
pub fn log_integral(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 1.0 || x.ln() > 40.0 {
        return Err(Error::Domain(format!("log_integral needs 1 < x <= e^40, got {x}")));
    }
    let y = x.ln();
    let mut term = 1.0;
    let mut acc = KahanSum::new();
    for k in 1..400 {
        term *= y / k as f64;
        let t = term / k as f64;
        acc.add(t);
        if t < 1e-17 * acc.value() {
            break;
        }
    }
    Ok(crate::constants::Constant::EulerGamma.value() + y.ln() + acc.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebyshevKind {
    T,
    U,
}

/// Chebyshev polynomial of the first (T) or second (U) kind by recurrence.
pub fn chebyshev(kind: ChebyshevKind, n: u32, x: f64) -> f64 {
    let p0 = 1.0;
    let p1 = match kind {
        ChebyshevKind::T => x,
        ChebyshevKind::U => 2.0 * x,
    };
    if n == 0 {
        return p0;
    }
    let (mut a, mut b) = (p0, p1);
    for _ in 1..n {
        let c = 2.0 * x * b - a;
        a = b;
        b = c;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_integrals() {
        assert!((expint_e1(1.0).unwrap() - 0.219_383_934_395_520_27).abs() < 1e-15);
        assert!((expint_e1(0.1).unwrap() - 1.822_923_958_419_390_6).abs() < 1e-14);
        assert!((expint_e1(16.0).unwrap() / 6.640_487_249_441_043e-9 - 1.0).abs() < 1e-13);
        assert!((log_integral(1e6).unwrap() - 78_627.549_159_462_18).abs() < 1e-8);
    }

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli_table();
        assert_eq!(b[1], BigRational::new((-1).into(), 2.into()));
        assert_eq!(b[12], BigRational::new((-691).into(), 2730.into()));
        assert!(b[13].is_zero());
    }

    #[test]
    fn zeta_even_values() {
        let z6 = PI.powi(6) / 945.0;
        assert!((zeta(6.0).unwrap() - z6).abs() < 1e-15);
        assert!((zeta(2.0).unwrap() - PI2_6).abs() < 1e-15);
        assert!(zeta(1.0).is_err());
    }

    #[test]
    fn small_cases() {
        assert_eq!(harmonic(4, 1).unwrap(), BigRational::new(25.into(), 12.into()));
        assert_eq!(harmonic(2, 2).unwrap(), BigRational::new(5.into(), 4.into()));
        assert!(harmonic(0, 1).unwrap().is_zero());
        assert_eq!(chebyshev(ChebyshevKind::U, 1, 3.0), 6.0);
        assert_eq!(chebyshev(ChebyshevKind::U, 5, 1.0), 6.0);
        assert!((chebyshev(ChebyshevKind::T, 3, 0.4f64.cos()) - 1.2f64.cos()).abs() < 1e-15);
        assert!((beta(2.0, 2.0).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!((log_gamma(0.5).unwrap() - PI.sqrt().ln()).abs() < 1e-15);
        assert_eq!(dilog(0.0).unwrap(), 0.0);
    }
}
