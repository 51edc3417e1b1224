use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{binomial, binomial_rational, ratio, rational};
use crate::constants::Constant;
use crate::error::{Error, Result};
use crate::specfun::{chebyshev, harmonic, ChebyshevKind};

/// Largest parameter accepted by the exact members.
const EXACT_CAP: u32 = 30;
const FLOAT_TOL: f64 = 1e-9;

/// Members of the finite identity suite with their parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum SuiteCheck {
    /// Double binomial sum equals 2^(3n+1).
    DblBinom12415 { n: u32 },
    /// Two alternating reciprocal binomial sums both equal (1+(-1)^(n+1))/(n+1).
    AltRecip4951 { n: u32 },
    /// sum_k (-1)^k C(m+k,k) C(m+n+1,n-k) = 1.
    Quicky1140a { n: u32, m: u32 },
    /// Alternating sum with C(k-1,2) 2^(k-3) equals n^2.
    Elem1449 { n: u32 },
    /// H_m + H_n + H_p + H_q <= 3 + H_(mnpq).
    HarmonicIneq4900 { m: u32, n: u32, p: u32, q: u32 },
    /// Squared sine sums equal n+1 or 2(n+1).
    TrigSum4854 { n: u32, r: u32, s: u32 },
    /// Partial fractions of n / cos(n t).
    ChebPartfrac1296 { n: u32, t: f64 },
    /// prod_k (x + sin^2(k pi / 2n)) against the second-kind closed form.
    ChebProduct12436 { n: u32, x: f64 },
    /// Expanded discriminant equals its completed-square form.
    Discriminant2184 { a: BigRational, b: BigRational },
}

fn cap(v: u32, max: u32) -> Result<()> {
    if v > max {
        return Err(Error::BoundExceeded { bound: v as u64, cap: max as u64 });
    }
    Ok(())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= FLOAT_TOL * b.abs().max(1.0)
}

/// True iff the named identity holds for its parameters.
pub fn binomial_identity_suite(check: &SuiteCheck) -> Result<bool> {
    match check {
        SuiteCheck::DblBinom12415 { n } => {
            cap(*n, EXACT_CAP)?;
            let n = *n as u64;
            let mut s = BigInt::zero();
            for j in 0..=2 * n {
                for k in j / 2..=j {
                    if 2 * k >= j {
                        s += binomial(2 * n + 2, 2 * k + 1) * binomial(n + 1, 2 * k - j);
                    }
                }
            }
            Ok(s == BigInt::one() << (3 * n + 1))
        }
        SuiteCheck::AltRecip4951 { n } => {
            cap(*n, EXACT_CAP)?;
            if *n == 0 {
                return Err(Error::Precondition("n must be at least 1".into()));
            }
            let n = *n as u64;
            let mut p1 = BigRational::zero();
            let mut p2 = BigRational::zero();
            for k in 1..=n {
                let sign = if k % 2 == 1 { rational(1) } else { rational(-1) };
                let kk = rational(k as i64);
                p1 += &sign * BigRational::from_integer(binomial(n, k - 1)) / &kk;
                p2 += &sign / (kk * BigRational::from_integer(binomial(n, k)));
            }
            let expected = ratio(if n % 2 == 1 { 2 } else { 0 }, n as i64 + 1);
            Ok(p1 == expected && p2 == expected)
        }
        SuiteCheck::Quicky1140a { n, m } => {
            cap(*n, EXACT_CAP)?;
            cap(*m, EXACT_CAP)?;
            let (n, m) = (*n as u64, *m as u64);
            let mut s = BigInt::zero();
            for k in 0..=n {
                let t = binomial(m + k, k) * binomial(m + n + 1, n - k);
                if k % 2 == 0 {
                    s += t;
                } else {
                    s -= t;
                }
            }
            Ok(s.is_one())
        }
        SuiteCheck::Elem1449 { n } => {
            cap(*n, EXACT_CAP)?;
            let n = *n as u64;
            let term = |k: u64| -> BigRational {
                let sign = if k % 2 == 1 { rational(1) } else { rational(-1) };
                let two = if k >= 3 {
                    BigRational::from_integer(BigInt::one() << (k - 3))
                } else {
                    BigRational::new(BigInt::one(), BigInt::one() << (3 - k))
                };
                sign * BigRational::from_integer(binomial(2 * n + 1, k)) * binomial_rational(&rational(k as i64 - 1), 2) * two
            };
            let a: BigRational = (1..=2 * n + 1).map(term).fold(BigRational::zero(), |x, y| x + y);
            // the k = 0 term closes the second-derivative evaluation 2n^2 - 1/4
            let full = rational(2) * (term(0) + &a);
            let nn = rational((n * n) as i64);
            Ok(a == nn && full == rational(2) * &nn - ratio(1, 4))
        }
        SuiteCheck::HarmonicIneq4900 { m, n, p, q } => {
            for v in [m, n, p, q] {
                cap(*v, EXACT_CAP)?;
                if *v == 0 {
                    return Err(Error::Precondition("indices start at 1".into()));
                }
            }
            let (m, n, p, q) = (*m as u64, *n as u64, *p as u64, *q as u64);
            let prod = m * n * p * q;
            // floats decide when the gap is wide; exact rationals otherwise
            let gap = 3.0 + harmonic_f64(prod) - [m, n, p, q].iter().map(|&v| harmonic_f64(v)).sum::<f64>();
            if gap.abs() > 1e-6 {
                return Ok(gap > 0.0);
            }
            let lhs = harmonic(m, 1)? + harmonic(n, 1)? + harmonic(p, 1)? + harmonic(q, 1)?;
            Ok(lhs <= rational(3) + harmonic(prod, 1)?)
        }
        SuiteCheck::TrigSum4854 { n, r, s } => {
            cap(*n, EXACT_CAP)?;
            if !(1..=*n).contains(r) || !(1..=*n).contains(s) {
                return Err(Error::Precondition("need 1 <= r, s <= n".into()));
            }
            let m = (*n + 1) as f64;
            let sum: f64 = (1..=*n)
                .map(|j| {
                    let j = j as f64;
                    ((j * *r as f64 * PI / m).sin() + (j * *s as f64 * PI / m).sin()).powi(2)
                })
                .sum();
            let expected = if r == s { 2.0 * m } else { m };
            Ok(close(sum, expected))
        }
        SuiteCheck::ChebPartfrac1296 { n, t } => {
            cap(*n, EXACT_CAP)?;
            if *n == 0 {
                return Err(Error::Precondition("n must be at least 1".into()));
            }
            let nf = *n as f64;
            let lhs = nf / chebyshev(ChebyshevKind::T, *n, t.cos());
            let mut rhs = 0.0;
            for k in 1..=*n {
                let th = (2 * k - 1) as f64 * PI / (2.0 * nf);
                let den = t.cos() - th.cos();
                if den.abs() < 1e-6 {
                    return Err(Error::Precondition(format!("t = {t} sits on a pole")));
                }
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                rhs += sign * th.sin() / den;
            }
            Ok(close(lhs, rhs))
        }
        SuiteCheck::ChebProduct12436 { n, x } => {
            cap(*n, EXACT_CAP)?;
            if *n == 0 {
                return Err(Error::Precondition("n must be at least 1".into()));
            }
            let nf = *n as f64;
            let lhs: f64 = (1..=*n).map(|k| x + (k as f64 * PI / (2.0 * nf)).sin().powi(2)).product();
            let rhs = 2f64.powi(2 - 2 * *n as i32) * (x + 1.0) * chebyshev(ChebyshevKind::U, *n - 1, 2.0 * x + 1.0);
            Ok(close(lhs, rhs))
        }
        SuiteCheck::Discriminant2184 { a, b } => {
            let (d, f) = discriminant_2184(a, b);
            Ok(d == f)
        }
    }
}

// H_n to about 1e-13: direct below 1000, asymptotic expansion above.
fn harmonic_f64(n: u64) -> f64 {
    if n < 1000 {
        return (1..=n).rev().map(|j| 1.0 / j as f64).sum();
    }
    let x = n as f64;
    let x2 = x * x;
    x.ln() + Constant::EulerGamma.value() + 0.5 / x - 1.0 / (12.0 * x2) + 1.0 / (120.0 * x2 * x2)
}

/// Expanded discriminant of a z^3 + b z^2 + (a-1) z + b and its
/// completed-square form -4[(b^2+a^2+5a/2-1/8)^2 - 8(a+1/8)^3].
pub fn discriminant_2184(a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
    let r = |v: i64| rational(v);
    let a2 = a * a;
    let b2 = b * b;
    let expanded =
        r(-4) * &a2 * &a2 - r(8) * &a2 * &b2 - r(4) * &b2 * &b2 + r(12) * &a2 * a - r(20) * a * &b2 - r(12) * &a2 + &b2 + r(4) * a;
    let inner = &b2 + &a2 + ratio(5, 2) * a - ratio(1, 8);
    let shifted = a + ratio(1, 8);
    let completed = r(-4) * (&inner * &inner - r(8) * &shifted * &shifted * &shifted);
    (expanded, completed)
}

/// Real roots of a z^3 + b z^2 + (a-1) z + b counted by sign changes between
/// the critical points inside the Cauchy bound, each change refined by
/// bisection.
pub fn real_root_count(a: f64, b: f64) -> Result<usize> {
    if a == 0.0 {
        return Err(Error::Precondition("leading coefficient must be nonzero".into()));
    }
    let p = |z: f64| ((a * z + b) * z + (a - 1.0)) * z + b;
    let bound = 1.0 + [b, a - 1.0, b].iter().map(|c| (c / a).abs()).fold(0.0, f64::max);
    let mut knots = vec![-bound, bound];
    // monotone between roots of the derivative 3a z^2 + 2b z + (a-1)
    let disc = 4.0 * b * b - 12.0 * a * (a - 1.0);
    if disc > 0.0 {
        let s = disc.sqrt();
        for z in [(-2.0 * b - s) / (6.0 * a), (-2.0 * b + s) / (6.0 * a)] {
            if z.abs() < bound {
                knots.push(z);
            }
        }
    }
    knots.sort_by(f64::total_cmp);
    let mut count = 0;
    for w in knots.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (p(lo), p(hi));
        if flo == 0.0 {
            count += 1;
            continue;
        }
        if flo * fhi < 0.0 {
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if p(lo) * p(mid) <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            count += 1;
        }
    }
    if p(bound) == 0.0 {
        count += 1;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn members() {
        assert!(binomial_identity_suite(&SuiteCheck::DblBinom12415 { n: 0 }).unwrap());
        assert!(binomial_identity_suite(&SuiteCheck::Quicky1140a { n: 3, m: 2 }).unwrap());
        assert!(binomial_identity_suite(&SuiteCheck::Elem1449 { n: 4 }).unwrap());
        assert!(binomial_identity_suite(&SuiteCheck::AltRecip4951 { n: 7 }).unwrap());
        assert!(binomial_identity_suite(&SuiteCheck::DblBinom12415 { n: 31 }).is_err());
        assert!(binomial_identity_suite(&SuiteCheck::ChebPartfrac1296 { n: 5, t: 0.37 }).unwrap());
        assert!(binomial_identity_suite(&SuiteCheck::ChebProduct12436 { n: 6, x: 0.3 }).unwrap());
    }

    #[test]
    fn harmonic_inequality_edges() {
        let h = |m, n, p, q| binomial_identity_suite(&SuiteCheck::HarmonicIneq4900 { m, n, p, q }).unwrap();
        assert!(h(1, 1, 1, 1));
        assert!(h(2, 3, 5, 25));
        assert!(h(25, 25, 25, 25));
    }

    #[test]
    fn root_counts_follow_discriminant() {
        // a = 1, b = 0 is z^3: a single (triple) root
        assert_eq!(real_root_count(1.0, 0.0).unwrap(), 1);
        assert_eq!(real_root_count(0.5, 0.1).unwrap(), 3);
    }
}
