//! Exact rational and big-integer checks: polynomial finite differences, the
//! composite-derivative coefficients, Gregory coefficients, a suite of finite
//! identities, exhaustive searches and small finite-field sums.

mod poly;
mod search;
mod suite;

pub use poly::Poly;
pub use search::{count_primes_segmented, gl_sum, primes_upto, search_diophantine, DiophantineKind, PRIME_CAP};
pub use suite::{binomial_identity_suite, discriminant_2184, real_root_count, SuiteCheck};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// C(n, k) for non-negative integers, zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized C(x, k) = x (x-1) ... (x-k+1) / k! for rational x.
pub fn binomial_rational(x: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        acc *= x - rational(i as i64);
        acc /= rational(i as i64 + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// sum_{k=0}^n (-1)^k C(n,k) p(k), computed exactly.
pub fn euler_finite_difference(p: &Poly, n: u64) -> BigRational {
    let mut acc = BigRational::zero();
    for k in 0..=n {
        let term = BigRational::from_integer(binomial(n, k)) * p.eval(&rational(k as i64));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Parts k_1 <= ... <= k_j, all >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Precondition(format!("{parts:?} is not a non-decreasing positive multi-index")));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of parts j.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |k| = sum of the parts.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// How often each distinct part occurs.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let j = self.0[i..].iter().take_while(|&&v| v == self.0[i]).count();
            out.push(j as u32);
            i += j;
        }
        out
    }
}

/// Every non-decreasing multi-index of weight n with its coefficient
/// n! / (prod k_i! * prod multiplicity!).
pub fn mo_coefficients(n: u32) -> Result<Vec<(MultiIndex, BigInt)>> {
    if n == 0 {
        return Err(Error::Precondition("order must be at least 1".into()));
    }
    let mut parts = Vec::new();
    let mut out = Vec::new();
    partitions(n, 1, &mut parts, &mut out);
    let nf = factorial(n as u64);
    Ok(out
        .into_iter()
        .map(|p| {
            let idx = MultiIndex(p);
            let mut den = BigInt::one();
            for &k in idx.parts() {
                den *= factorial(k as u64);
            }
            for m in idx.multiplicities() {
                den *= factorial(m as u64);
            }
            let c = &nf / den;
            (idx, c)
        })
        .collect())
}

fn partitions(rest: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for k in min..=rest {
        cur.push(k);
        partitions(rest - k, k, cur, out);
        cur.pop();
    }
}

/// Compares the coefficient formula for the n-th derivative of f(g(x)) with
/// direct differentiation of the composed polynomial.
pub fn compose_derivative_check(f: &Poly, g: &Poly, n: u32, x: &BigRational) -> Result<bool> {
    if n == 0 || n > 8 {
        return Err(Error::Precondition(format!("order must lie in 1..=8, got {n}")));
    }
    let gx = g.eval(x);
    let g_derivs: Vec<BigRational> = (0..=n).map(|k| g.derivative_n(k).eval(x)).collect();
    let mut lhs = BigRational::zero();
    for (idx, c) in mo_coefficients(n)? {
        let fj = f.derivative_n(idx.len() as u32).eval(&gx);
        let mut prod = BigRational::from_integer(c);
        for &k in idx.parts() {
            prod *= &g_derivs[k as usize];
        }
        lhs += fj * prod;
    }
    let rhs = f.compose(g).derivative_n(n).eval(x);
    Ok(lhs == rhs)
}

/// sum_k 1/z_k prod_{j != k} 1/(z_k - z_j) against (-1)^(n-1) / prod z_j.
pub fn lagrange_reciprocal_identity(points: &[BigRational]) -> Result<bool> {
    if points.is_empty() || points.len() > 8 {
        return Err(Error::Precondition(format!("need 1..=8 points, got {}", points.len())));
    }
    for (i, z) in points.iter().enumerate() {
        if z.is_zero() {
            return Err(Error::Precondition("points must be nonzero".into()));
        }
        if points[..i].contains(z) {
            return Err(Error::Precondition(format!("duplicate point {z}")));
        }
    }
    let mut lhs = BigRational::zero();
    for (k, zk) in points.iter().enumerate() {
        let mut den = zk.clone();
        for (j, zj) in points.iter().enumerate() {
            if j != k {
                den *= zk - zj;
            }
        }
        lhs += den.recip();
    }
    let prod = points.iter().fold(BigRational::one(), |acc, z| acc * z);
    let mut rhs = prod.recip();
    if points.len().is_multiple_of(2) {
        rhs = -rhs;
    }
    Ok(lhs == rhs)
}

/// (-1)^(k+1) * integral over [0,1] of C(s, k) ds, exactly.
pub fn gregory_coefficient(k: u64) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::Precondition("Gregory coefficients start at k = 1".into()));
    }
    // C(s, k) as a polynomial in s
    let mut p = Poly::constant(BigRational::one());
    for i in 0..k {
        p = p.mul(&Poly::new(vec![rational(-(i as i64)), rational(1)]));
    }
    let p = p.scale(&BigRational::from_integer(factorial(k)).recip());
    let v = p.integral_01();
    Ok(if k % 2 == 1 { v } else { -v })
}

/// 1/(3k^2) <= a_k <= 1/k.
pub fn gregory_bounds_hold(k: u64) -> Result<bool> {
    let a = gregory_coefficient(k)?;
    let kk = rational(k as i64);
    Ok(a.is_positive() && a >= (rational(3) * &kk * &kk).recip() && a <= kk.recip())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_difference_examples() {
        assert!(euler_finite_difference(&Poly::from_ints(&[5]), 1).is_zero());
        assert_eq!(euler_finite_difference(&Poly::from_ints(&[0, 0, 0, 1]), 3), rational(-6));
        // C(2 + k, 2) = (k^2 + 3k + 2)/2
        let p = Poly::new(vec![rational(1), ratio(3, 2), ratio(1, 2)]);
        assert_eq!(euler_finite_difference(&p, 2), rational(1));
    }

    #[test]
    fn mo_small_orders() {
        let show = |n| mo_coefficients(n).unwrap().into_iter().map(|(k, c)| (k.parts().to_vec(), c.to_string())).collect::<Vec<_>>();
        assert_eq!(show(1), vec![(vec![1], "1".to_string())]);
        assert_eq!(show(2), vec![(vec![1, 1], "1".to_string()), (vec![2], "1".to_string())]);
        let three = show(3);
        assert!(three.contains(&(vec![3], "1".into())));
        assert!(three.contains(&(vec![1, 2], "3".into())));
        assert!(three.contains(&(vec![1, 1, 1], "1".into())));
        assert_eq!(three.len(), 3);
        assert!(MultiIndex::new(vec![2, 1]).is_err());
    }

    #[test]
    fn gregory_small() {
        assert_eq!(gregory_coefficient(1).unwrap(), ratio(1, 2));
        assert_eq!(gregory_coefficient(2).unwrap(), ratio(1, 12));
        assert_eq!(gregory_coefficient(3).unwrap(), ratio(1, 24));
        assert!(gregory_bounds_hold(5).unwrap());
    }

    #[test]
    fn lagrange_small() {
        assert!(lagrange_reciprocal_identity(&[rational(5)]).unwrap());
        assert!(lagrange_reciprocal_identity(&[rational(1), rational(2)]).unwrap());
        assert!(lagrange_reciprocal_identity(&[rational(1), rational(2), rational(3)]).unwrap());
        assert!(lagrange_reciprocal_identity(&[rational(1), rational(1)]).is_err());
        assert!(lagrange_reciprocal_identity(&[rational(0)]).is_err());
    }
}
