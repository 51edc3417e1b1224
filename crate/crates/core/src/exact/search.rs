use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};

use super::factorial;
use crate::error::{Error, Result};

/// Largest sieve limit accepted by [`primes_upto`].
pub const PRIME_CAP: u64 = 100_000_000;

/// Exhaustive searches with a fixed solution shape per kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiophantineKind {
    /// (m+1)^n = m! + 1; tuples (n, m) with m <= bound.
    FactorialPower2117,
    /// 2^(2a) + 3^(2b) = (2c+1)^2; tuples (a, b, c) with a, b <= bound.
    Pow23Square4803,
    /// n, n+2, n+6, n+8, n+14 all prime; tuples (n) with n <= bound.
    Quintuplet108E,
    /// a^b + b = b^a + a; tuples (a, b) with 1 <= a, b <= bound.
    Pair4855,
    /// n^3 + 1 and n + 2 both squares; tuples (n) with 1 <= n <= bound.
    CubeSquare4811,
    /// (20 + 24 sqrt2)^n = (24 + 20 sqrt2)^m; tuples (n, m) with n, m <= bound.
    Norm1447,
}

impl DiophantineKind {
    pub fn cap(self) -> u64 {
        match self {
            Self::FactorialPower2117 => 500,
            Self::Pow23Square4803 => 200,
            Self::Quintuplet108E => PRIME_CAP - 14,
            Self::Pair4855 => 200,
            Self::CubeSquare4811 => 1_000_000,
            Self::Norm1447 => 100,
        }
    }
}

/// Every solution within `bound`, ascending in lexicographic order.
pub fn search_diophantine(kind: DiophantineKind, bound: u64) -> Result<Vec<Vec<u64>>> {
    if bound > kind.cap() {
        return Err(Error::BoundExceeded { bound, cap: kind.cap() });
    }
    let mut out = match kind {
        DiophantineKind::FactorialPower2117 => factorial_power(bound),
        DiophantineKind::Pow23Square4803 => pow23_square(bound),
        DiophantineKind::Quintuplet108E => quintuplets(bound)?,
        DiophantineKind::Pair4855 => exchange_pairs(bound),
        DiophantineKind::CubeSquare4811 => {
            (1..=bound).filter(|&n| is_square(n as u128 * n as u128 * n as u128 + 1) && is_square(n as u128 + 2)).map(|n| vec![n]).collect()
        }
        DiophantineKind::Norm1447 => norm_powers(bound),
    };
    out.sort();
    Ok(out)
}

fn factorial_power(bound: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for m in 1..=bound {
        let target = factorial(m) + 1u32;
        let base = BigInt::from(m + 1);
        let mut pow = base.clone();
        let mut n = 1;
        while pow < target {
            pow *= &base;
            n += 1;
        }
        if pow == target {
            out.push(vec![n, m]);
        }
    }
    out
}

fn pow23_square(bound: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for a in 1..=bound {
        let x = BigInt::one() << (2 * a);
        for b in 1..=bound {
            let s = &x + BigInt::from(9u32).pow(b as u32);
            let r = s.sqrt();
            if &r * &r == s {
                // s is odd, so r is odd
                let c: BigInt = (r - 1u32) / 2u32;
                out.push(vec![a, b, u64::try_from(c).unwrap_or(u64::MAX)]);
            }
        }
    }
    out
}

fn quintuplets(bound: u64) -> Result<Vec<Vec<u64>>> {
    let sieve = OddSieve::new(bound + 14)?;
    Ok((2..=bound).filter(|&n| [0, 2, 6, 8, 14].iter().all(|d| sieve.is_prime(n + d))).map(|n| vec![n]).collect())
}

fn exchange_pairs(bound: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for a in 1..=bound {
        for b in 1..=bound {
            let lhs = BigInt::from(a).pow(b as u32) + b;
            let rhs = BigInt::from(b).pow(a as u32) + a;
            if lhs == rhs {
                out.push(vec![a, b]);
            }
        }
    }
    out
}

// x + y sqrt2 as an integer pair
fn norm_powers(bound: u64) -> Vec<Vec<u64>> {
    let powers = |x: i64, y: i64| {
        let mut v = vec![(BigInt::one(), BigInt::zero())];
        for _ in 0..bound {
            let (p, q) = v.last().unwrap().clone();
            v.push((&p * x + &q * (2 * y), &p * y + &q * x));
        }
        v
    };
    let lhs = powers(20, 24);
    let rhs = powers(24, 20);
    let mut out = Vec::new();
    for (n, l) in lhs.iter().enumerate() {
        for (m, r) in rhs.iter().enumerate() {
            if l == r {
                out.push(vec![n as u64, m as u64]);
            }
        }
    }
    out
}

fn is_square(v: u128) -> bool {
    let r = Roots::sqrt(&v);
    r * r == v
}

/// Odd-only bit-packed sieve of Eratosthenes.
struct OddSieve {
    limit: u64,
    // bit i set means 2i + 1 is composite
    bits: Vec<u64>,
}

impl OddSieve {
    fn new(limit: u64) -> Result<Self> {
        if limit > PRIME_CAP {
            return Err(Error::BoundExceeded { bound: limit, cap: PRIME_CAP });
        }
        let n = (limit / 2 + 1) as usize;
        let mut bits = vec![0u64; n.div_ceil(64)];
        bits[0] |= 1; // 1 is not prime
        let mut i = 1usize;
        while (2 * i + 1) * (2 * i + 1) <= limit as usize {
            if bits[i / 64] >> (i % 64) & 1 == 0 {
                let p = 2 * i + 1;
                let mut j = p * p / 2;
                while j < n {
                    bits[j / 64] |= 1 << (j % 64);
                    j += p;
                }
            }
            i += 1;
        }
        Ok(Self { limit, bits })
    }

    fn is_prime(&self, v: u64) -> bool {
        if v > self.limit || v < 2 {
            return false;
        }
        if v.is_multiple_of(2) {
            return v == 2;
        }
        let i = (v / 2) as usize;
        self.bits[i / 64] >> (i % 64) & 1 == 0
    }
}

/// The primes up to `limit`, ascending.
pub fn primes_upto(limit: u64) -> Result<Vec<u64>> {
    let sieve = OddSieve::new(limit)?;
    let mut out = Vec::new();
    if limit >= 2 {
        out.push(2);
    }
    let mut v = 3;
    while v <= limit {
        if sieve.is_prime(v) {
            out.push(v);
        }
        v += 2;
    }
    Ok(out)
}

/// pi(limit) from a segmented sieve with the given block length. Independent
/// of [`primes_upto`] beyond the base primes up to sqrt(limit).
pub fn count_primes_segmented(limit: u64, block: u64) -> Result<u64> {
    if limit > PRIME_CAP {
        return Err(Error::BoundExceeded { bound: limit, cap: PRIME_CAP });
    }
    if block == 0 {
        return Err(Error::Precondition("block length must be positive".into()));
    }
    if limit < 2 {
        return Ok(0);
    }
    let root = Roots::sqrt(&limit) + 1;
    let base = primes_upto(root)?;
    let mut count = 0;
    let mut lo = 2;
    let mut mark = vec![false; block as usize];
    while lo <= limit {
        let hi = (lo + block - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        mark[..len].fill(true);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut j = (lo.div_ceil(p) * p).max(p * p);
            while j <= hi {
                mark[(j - lo) as usize] = false;
                j += p;
            }
        }
        count += mark[..len].iter().filter(|&&m| m).count() as u64;
        lo = hi + 1;
    }
    Ok(count)
}

/// Entrywise sum mod q of every invertible n x n matrix over F_q, row-major.
pub fn gl_sum(q: u32, n: usize) -> Result<Vec<Vec<u32>>> {
    if !matches!(q, 2 | 3 | 5 | 7) {
        return Err(Error::Precondition(format!("q = {q} must be a prime below 10")));
    }
    let cells = n * n;
    if n == 0 || (q as f64).powi(cells as i32) > 2e7 {
        return Err(Error::Precondition(format!("{q}^({n}^2) matrices is too many to enumerate")));
    }
    let total = (q as u64).pow(cells as u32);
    let mut sum = vec![0u32; cells];
    let mut m = vec![0u32; cells];
    for code in 0..total {
        let mut c = code;
        for e in m.iter_mut() {
            *e = (c % q as u64) as u32;
            c /= q as u64;
        }
        if det_mod(&m, n, q) != 0 {
            for (s, e) in sum.iter_mut().zip(&m) {
                *s = (*s + e) % q;
            }
        }
    }
    Ok(sum.chunks(n).map(<[u32]>::to_vec).collect())
}

fn det_mod(m: &[u32], n: usize, q: u32) -> u32 {
    let mut a: Vec<u32> = m.to_vec();
    let mut det = 1u32;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return 0;
        };
        if piv != col {
            for k in 0..n {
                a.swap(piv * n + k, col * n + k);
            }
            det = (q - det) % q;
        }
        let p = a[col * n + col];
        det = det * p % q;
        let inv = (1..q).find(|&x| x * p % q == 1).unwrap();
        for r in col + 1..n {
            let f = a[r * n + col] * inv % q;
            for k in col..n {
                a[r * n + k] = (a[r * n + k] + q * q - f * a[col * n + k] % q) % q;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn searches() {
        assert_eq!(search_diophantine(DiophantineKind::FactorialPower2117, 20).unwrap(), vec![vec![1, 1], vec![1, 2], vec![2, 4]]);
        assert_eq!(search_diophantine(DiophantineKind::Pow23Square4803, 12).unwrap(), vec![vec![2, 1, 2]]);
        assert_eq!(search_diophantine(DiophantineKind::CubeSquare4811, 10_000).unwrap(), vec![vec![2]]);
        assert_eq!(search_diophantine(DiophantineKind::Norm1447, 20).unwrap(), vec![vec![0, 0]]);
        assert_eq!(search_diophantine(DiophantineKind::Quintuplet108E, 10_000).unwrap(), vec![vec![5]]);
        assert!(search_diophantine(DiophantineKind::Pair4855, 1000).is_err());
    }

    #[test]
    fn sieves_agree() {
        assert_eq!(primes_upto(10).unwrap(), vec![2, 3, 5, 7]);
        assert!(primes_upto(1).unwrap().is_empty());
        assert_eq!(primes_upto(2).unwrap(), vec![2]);
        assert_eq!(count_primes_segmented(10_000, 97).unwrap(), primes_upto(10_000).unwrap().len() as u64);
    }

    #[test]
    fn gl_small() {
        assert_eq!(gl_sum(2, 1).unwrap(), vec![vec![1]]);
        assert_eq!(gl_sum(3, 1).unwrap(), vec![vec![0]]);
        assert_eq!(gl_sum(2, 2).unwrap(), vec![vec![0, 0], vec![0, 0]]);
    }
}
