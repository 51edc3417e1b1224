//! Bracketed root finding, root enumeration with asymptotic tails, root-power
//! sums and a deterministic multistart minimizer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compensated::KahanSum;
use crate::error::{Error, Result};
use crate::quad::NumericResult;

const MAX_ITER: usize = 200;

/// An interval [a, b] on which the target function changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub a: f64,
    pub b: f64,
}

impl Bracket {
    /// Checks the sign change of `f` before accepting the bracket.
    pub fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Self> {
        Self::indexed(f, a, b, 0)
    }

    fn indexed<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, index: usize) -> Result<Self> {
        if !(a < b) {
            return Err(Error::Precondition(format!("bracket needs a < b, got [{a}, {b}]")));
        }
        let (fa, fb) = (f(a), f(b));
        if !(fa.is_finite() && fb.is_finite()) || fa * fb > 0.0 {
            return Err(Error::NoSignChange { index, a, b });
        }
        Ok(Self { a, b })
    }
}

/// Brent's method. The returned root is pinned to a bracket no wider than
/// max(tol, 1e-14 |x|).
pub fn root_bracketed<F: Fn(f64) -> f64>(f: F, br: Bracket, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (br.a, br.b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa * fb > 0.0 {
        return Err(Error::NoSignChange { index: 0, a, b });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 0.5 * tol.max(1e-14 * b.abs()) + f64::EPSILON * b.abs();
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::Domain(format!("function is {fb} at {b}")));
        }
    }
    Err(Error::MaxIterations(MAX_ITER))
}

/// Roots from `count` generated brackets, ascending. A bracket without a sign
/// change is reported with its index.
pub fn enumerate_roots<F, G>(f: F, bracket_gen: G, count: usize, tol: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
    G: Fn(usize) -> (f64, f64),
{
    let mut roots = Vec::with_capacity(count);
    for i in 0..count {
        let (a, b) = bracket_gen(i);
        let br = Bracket::indexed(&f, a, b, i)?;
        roots.push(root_bracketed(&f, br, tol)?);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// Asymptotic location of the n-th root and a bound on the distance to it.
pub struct TailModel<'a> {
    pub asymptote: Box<dyn Fn(u64) -> f64 + 'a>,
    pub deviation_bound: Box<dyn Fn(u64) -> f64 + 'a>,
}

/// sum_n r_n^-exponent using the computed roots below `tail_start` and the
/// asymptote from there on.
///
/// `root_tol` is the accuracy of each computed root. The reported error adds
/// exponent * sum deviation(n) * (s_n - deviation(n))^(-exponent-1) over the
/// tail, which dominates the first-order bound on replacing r_n by s_n.
pub fn root_power_sum(roots: &[f64], exponent: u32, tail: &TailModel<'_>, tail_start: usize, root_tol: f64) -> Result<NumericResult> {
    if exponent < 2 {
        return Err(Error::Precondition(format!("exponent must be at least 2, got {exponent}")));
    }
    if tail_start > roots.len() {
        return Err(Error::Precondition(format!("tail starts at {tail_start} but only {} roots were given", roots.len())));
    }
    let p = exponent as i32;
    let pf = exponent as f64;
    let mut value = KahanSum::new();
    let mut err = KahanSum::new();
    for &r in &roots[..tail_start] {
        if !(r > 0.0) {
            return Err(Error::Precondition(format!("root {r} is not positive")));
        }
        value.add(r.powi(-p));
        err.add(pf * root_tol * (r - root_tol).powi(-p - 1));
    }
    let mut n = tail_start as u64;
    let mut evaluations = tail_start as u64;
    loop {
        let s = (tail.asymptote)(n);
        let dev = (tail.deviation_bound)(n);
        if !(s > dev && dev >= 0.0) {
            return Err(Error::Precondition(format!("asymptote {s} does not dominate deviation {dev} at {n}")));
        }
        let t = s.powi(-p);
        value.add(t);
        err.add(pf * dev * (s - dev).powi(-p - 1));
        evaluations += 1;
        if t < 1e-18 * value.value() {
            // remaining power-law tail: about t n / (p - 1)
            err.add(t * n as f64 / (pf - 1.0));
            break;
        }
        n += 1;
    }
    let err = err.value() + 4.0 * f64::EPSILON * value.value();
    Ok(NumericResult { value: value.value(), err, evaluations, converged: true })
}

/// g(x) = 0 surface for a constrained search.
pub type Constraint<'a> = Box<dyn Fn(&[f64]) -> f64 + 'a>;

/// Axis-aligned search box with an optional equality constraint enforced by a
/// quadratic penalty.
pub struct SearchDomain<'a> {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub constraint: Option<Constraint<'a>>,
    pub penalty: f64,
}

impl<'a> SearchDomain<'a> {
    pub fn boxed(lower: Vec<f64>, upper: Vec<f64>) -> Self {
        Self { lower, upper, constraint: None, penalty: 0.0 }
    }

    pub fn with_constraint<C: Fn(&[f64]) -> f64 + 'a>(mut self, c: C, penalty: f64) -> Self {
        self.constraint = Some(Box::new(c));
        self.penalty = penalty;
        self
    }

    fn clamp(&self, x: &mut [f64]) {
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = xi.clamp(self.lower[i], self.upper[i]);
        }
    }
}

/// Best of `starts` Nelder-Mead descents started from a Cranley-Patterson
/// shifted Halton set. The shift comes from `seed`, so runs are reproducible.
pub fn minimize_multistart<F: Fn(&[f64]) -> f64>(
    objective: F,
    domain: &SearchDomain<'_>,
    starts: usize,
    tol: f64,
    seed: u64,
) -> Result<(Vec<f64>, f64)> {
    let dim = domain.lower.len();
    if dim == 0 || domain.upper.len() != dim || domain.lower.iter().zip(&domain.upper).any(|(l, u)| !(l < u)) {
        return Err(Error::Precondition("search box must be non-empty with lower < upper".into()));
    }
    let penalized = |x: &[f64]| -> f64 {
        let mut v = objective(x);
        if let Some(c) = &domain.constraint {
            let g = c(x);
            v += domain.penalty * g * g;
        }
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
    let mut best: Option<(Vec<f64>, f64)> = None;
    for i in 0..starts {
        let mut x: Vec<f64> = (0..dim)
            .map(|j| {
                let u = (halton(i as u64 + 1, PRIMES[j % PRIMES.len()]) + shift[j]).fract();
                domain.lower[j] + u * (domain.upper[j] - domain.lower[j])
            })
            .collect();
        domain.clamp(&mut x);
        if !penalized(&x).is_finite() {
            continue;
        }
        let (xm, fm) = nelder_mead(&penalized, x, domain, tol);
        if best.as_ref().is_none_or(|(_, fb)| fm < *fb) {
            best = Some((xm, fm));
        }
    }
    let (x, _) = best.ok_or_else(|| Error::Precondition("no start point has a finite objective".into()))?;
    let value = objective(&x);
    Ok((x, value))
}

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn halton(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

fn nelder_mead<F: Fn(&[f64]) -> f64>(f: &F, x0: Vec<f64>, domain: &SearchDomain<'_>, tol: f64) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut simplex = vec![x0.clone()];
    for j in 0..n {
        let mut x = x0.clone();
        let step = 0.05 * (domain.upper[j] - domain.lower[j]);
        x[j] = if x[j] + step <= domain.upper[j] { x[j] + step } else { x[j] - step };
        simplex.push(x);
    }
    let mut vals: Vec<f64> = simplex.iter().map(|x| f(x)).collect();
    let max_iter = 2000 * n;
    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();
        let spread = (vals[n] - vals[0]).abs();
        let size =
            simplex[1..].iter().map(|x| x.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)).fold(0.0, f64::max);
        if spread <= tol * (1.0 + vals[0].abs()) && size <= tol.sqrt() {
            break;
        }
        let centroid: Vec<f64> = (0..n).map(|j| simplex[..n].iter().map(|x| x[j]).sum::<f64>() / n as f64).collect();
        let along = |t: f64| -> Vec<f64> {
            let mut x: Vec<f64> = (0..n).map(|j| centroid[j] + t * (simplex[n][j] - centroid[j])).collect();
            domain.clamp(&mut x);
            x
        };
        let xr = along(-1.0);
        let fr = f(&xr);
        if fr < vals[0] {
            let xe = along(-2.0);
            let fe = f(&xe);
            if fe < fr {
                simplex[n] = xe;
                vals[n] = fe;
            } else {
                simplex[n] = xr;
                vals[n] = fr;
            }
        } else if fr < vals[n - 1] {
            simplex[n] = xr;
            vals[n] = fr;
        } else {
            let (xc, fc) = if fr < vals[n] {
                let x = along(-0.5);
                let v = f(&x);
                (x, v)
            } else {
                let x = along(0.5);
                let v = f(&x);
                (x, v)
            };
            if fc < vals[n].min(fr) {
                simplex[n] = xc;
                vals[n] = fc;
            } else {
                for i in 1..=n {
                    let x: Vec<f64> = (0..n).map(|j| simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j])).collect();
                    vals[i] = f(&x);
                    simplex[i] = x;
                }
            }
        }
    }
    let i = (0..=n).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap_or(0);
    (simplex[i].clone(), vals[i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_roots() {
        let r = root_bracketed(|x| x * x - 2.0, Bracket { a: 1.0, b: 2.0 }, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
        let roots = enumerate_roots(
            f64::sin,
            |n| ((n + 1) as f64 * std::f64::consts::PI - 0.5, (n + 1) as f64 * std::f64::consts::PI + 0.5),
            3,
            1e-14,
        )
        .unwrap();
        for (i, r) in roots.iter().enumerate() {
            assert!((r - (i + 1) as f64 * std::f64::consts::PI).abs() < 1e-13);
        }
        assert!(enumerate_roots(f64::sin, |_| (0.1, 0.2), 0, 1e-12).unwrap().is_empty());
        assert_eq!(
            enumerate_roots(f64::sin, |n| if n == 1 { (0.1, 0.2) } else { (3.0, 3.3) }, 2, 1e-12),
            Err(Error::NoSignChange { index: 1, a: 0.1, b: 0.2 })
        );
    }

    #[test]
    fn exponent_guard() {
        let tail = TailModel { asymptote: Box::new(|n| n as f64 + 1.0), deviation_bound: Box::new(|_| 0.0) };
        assert!(root_power_sum(&[2.0], 1, &tail, 1, 0.0).is_err());
    }

    #[test]
    fn parabola_minimum() {
        let d = SearchDomain::boxed(vec![0.0], vec![2.0]);
        let (x, v) = minimize_multistart(|x| (x[0] - 1.0).powi(2), &d, 8, 1e-14, 7).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-6 && v < 1e-12);
    }
}
