//! Infinite series, double series, products and sequence limits.
//!
//! Every routine returns a [`NumericResult`] whose `err` covers both the
//! truncation estimate supplied by the tail strategy and accumulated rounding.

use std::cell::Cell;
use std::sync::Arc;

use crate::compensated::KahanSum;
use crate::error::{Error, Result};
use crate::quad::NumericResult;

/// Hard cap on directly summed terms.
const MAX_TERMS: u64 = 50_000_000;
/// Default number of terms for the alternating accelerator.
pub const CVZ_TERMS: usize = 40;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// How a series closes the part that is not summed term by term.
#[derive(Clone)]
pub enum TailStrategy {
    /// Terms eventually shrink at least by the factor `q` per step.
    GeometricRatio { q: f64 },
    /// Sum `terms` terms, then approximate the rest by a smooth model g(x)
    /// with known tail integral G(N) = integral of g over [N, inf).
    IntegralTail { model: RealFn, tail_integral: RealFn, terms: u64 },
    /// Terms alternate in sign; accelerate their magnitudes.
    AlternatingAccel,
    /// Terms behave like c n^-alpha, alpha > 1, beyond `terms` terms.
    AsymptoticModel { c: f64, alpha: f64, terms: u64 },
    /// Plain partial sum of `terms` terms; the error is the size of the last term.
    NoneTruncate { terms: u64 },
}

impl std::fmt::Debug for TailStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TailStrategy::GeometricRatio { q } => write!(f, "GeometricRatio({q})"),
            TailStrategy::IntegralTail { terms, .. } => write!(f, "IntegralTail(terms={terms})"),
            TailStrategy::AlternatingAccel => write!(f, "AlternatingAccel"),
            TailStrategy::AsymptoticModel { c, alpha, terms } => {
                write!(f, "AsymptoticModel(c={c}, alpha={alpha}, terms={terms})")
            }
            TailStrategy::NoneTruncate { terms } => write!(f, "NoneTruncate({terms})"),
        }
    }
}

impl TailStrategy {
    pub fn integral_tail<G, H>(model: G, tail_integral: H, terms: u64) -> Self
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
        H: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        TailStrategy::IntegralTail { model: Arc::new(model), tail_integral: Arc::new(tail_integral), terms }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            TailStrategy::GeometricRatio { q } if !(0.0..1.0).contains(&q) => {
                Err(Error::Precondition(format!("geometric ratio must lie in [0, 1), got {q}")))
            }
            TailStrategy::AsymptoticModel { alpha, .. } if !(alpha > 1.0) => {
                Err(Error::Precondition(format!("asymptotic exponent must exceed 1, got {alpha}")))
            }
            _ => Ok(()),
        }
    }
}

fn rounding(acc_abs: f64, n: u64) -> f64 {
    4.0 * f64::EPSILON * acc_abs * (n as f64).sqrt().max(1.0)
}

/// Euler-Maclaurin estimate of sum_{n >= m} n^-alpha for moderately large m.
pub fn power_tail(m: f64, alpha: f64) -> f64 {
    m.powf(1.0 - alpha) / (alpha - 1.0) + 0.5 * m.powf(-alpha) + alpha * m.powf(-alpha - 1.0) / 12.0
        - alpha * (alpha + 1.0) * (alpha + 2.0) * m.powf(-alpha - 3.0) / 720.0
}

/// Sums `term(n)` for n = start, start+1, ... closing with `tail`.
pub fn sum_series<F: Fn(u64) -> f64>(term: F, start: u64, tail: &TailStrategy, tol: f64) -> Result<NumericResult> {
    sum_series_try(|n| Ok(term(n)), start, tail, tol)
}

/// As [`sum_series`] with fallible terms.
pub fn sum_series_try<F: Fn(u64) -> Result<f64>>(term: F, start: u64, tail: &TailStrategy, tol: f64) -> Result<NumericResult> {
    tail.validate()?;
    let checked = |n: u64| -> Result<f64> {
        let t = term(n)?;
        if t.is_finite() {
            Ok(t)
        } else {
            Err(Error::Domain(format!("term {n} is {t}")))
        }
    };
    match tail {
        TailStrategy::AlternatingAccel => {
            let first = checked(start)?;
            let sign = if first < 0.0 { -1.0 } else { 1.0 };
            let mag = |k: u64| -> Result<f64> { Ok(sign * (if k.is_multiple_of(2) { 1.0 } else { -1.0 }) * checked(start + k)?) };
            let r = cvz(mag, CVZ_TERMS)?;
            let r = r.scale(sign);
            Ok(NumericResult { converged: r.err <= tol, ..r })
        }
        TailStrategy::GeometricRatio { q } => {
            let mut acc = KahanSum::new();
            let mut abs = 0.0;
            let mut prev = f64::NAN;
            let mut n = start;
            loop {
                let t = checked(n)?;
                acc.add(t);
                abs += t.abs();
                let bound = t.abs() * q / (1.0 - q);
                let count = n - start + 1;
                if bound + rounding(abs, count) <= 0.5 * tol || t == 0.0 && prev == 0.0 {
                    if prev.is_finite() && prev != 0.0 && t.abs() > q * prev.abs() * (1.0 + 1e-9) {
                        return Err(Error::Precondition(format!("observed term ratio {} exceeds q = {q}", t.abs() / prev.abs())));
                    }
                    let err = bound + rounding(abs, count);
                    return Ok(NumericResult { value: acc.value(), err, evaluations: count, converged: err <= tol });
                }
                if count >= MAX_TERMS {
                    return Err(Error::NotConverged(format!("geometric tail still {bound} after {count} terms")));
                }
                prev = t;
                n += 1;
            }
        }
        TailStrategy::NoneTruncate { terms } => {
            let mut acc = KahanSum::new();
            let mut abs = 0.0;
            let mut last = 0.0;
            for n in start..start + terms {
                let t = checked(n)?;
                acc.add(t);
                abs += t.abs();
                last = t;
            }
            let err = last.abs() + rounding(abs, *terms);
            Ok(NumericResult { value: acc.value(), err, evaluations: *terms, converged: err <= tol })
        }
        TailStrategy::AsymptoticModel { c, alpha, terms } => {
            let (c, alpha) = (*c, *alpha);
            let (sum, abs, last, count) = partial(&checked, start, *terms)?;
            let n_last = (start + terms - 1) as f64;
            let model_last = c * n_last.powf(-alpha);
            if last != 0.0 && last.signum() != model_last.signum() {
                return Err(Error::Precondition(format!("term {n_last} has sign opposite to the asymptotic model")));
            }
            let tail = c * power_tail(n_last + 1.0, alpha);
            let rel = ((last - model_last) / model_last).abs();
            let err = 2.0 * rel * c.abs() * n_last.powf(1.0 - alpha) / (alpha - 1.0)
                + (c * alpha * (alpha + 1.0) * (alpha + 2.0) * (alpha + 3.0) * (alpha + 4.0)).abs() * (n_last + 1.0).powf(-alpha - 5.0)
                    / 30240.0
                + rounding(abs, count);
            let value = sum + tail;
            Ok(NumericResult { value, err, evaluations: count, converged: err <= tol })
        }
        TailStrategy::IntegralTail { model, tail_integral, terms } => {
            let (sum, abs, last, count) = partial(&checked, start, *terms)?;
            let n_last = (start + terms - 1) as f64;
            let g = model(n_last);
            // Euler-Maclaurin through the g' term, derivatives by central differences
            let (gp1, gm1) = (model(n_last + 1.0), model(n_last - 1.0));
            let d3 = 0.5 * (model(n_last + 2.0) - 2.0 * gp1 + 2.0 * gm1 - model(n_last - 2.0));
            let d1 = 0.5 * (gp1 - gm1) - d3 / 6.0;
            let tail = tail_integral(n_last) - 0.5 * g - d1 / 12.0;
            let err = d3.abs() / 60.0 + n_last * (last - g).abs() + rounding(abs, count);
            if !(tail.is_finite() && err.is_finite()) {
                return Err(Error::Domain("tail model is not finite".into()));
            }
            Ok(NumericResult { value: sum + tail, err, evaluations: count, converged: err <= tol })
        }
    }
}

fn partial<F: Fn(u64) -> Result<f64>>(term: &F, start: u64, terms: u64) -> Result<(f64, f64, f64, u64)> {
    if terms == 0 || terms > MAX_TERMS {
        return Err(Error::Precondition(format!("term count {terms} outside 1..={MAX_TERMS}")));
    }
    let mut acc = KahanSum::new();
    let mut abs = 0.0;
    let mut last = 0.0;
    for n in start..start + terms {
        let t = term(n)?;
        acc.add(t);
        abs += t.abs();
        last = t;
    }
    Ok((acc.value(), abs, last, terms))
}

// Cohen, Rodriguez Villegas and Zagier, algorithm 1.
fn cvz<F: Fn(u64) -> Result<f64>>(mag: F, n: usize) -> Result<NumericResult> {
    let nf = n as f64;
    let mut d = (3.0 + 8f64.sqrt()).powf(nf);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut s = KahanSum::new();
    let mut abs = 0.0;
    let mut prev = f64::INFINITY;
    let mut first = 0.0;
    for k in 0..n {
        let a = mag(k as u64)?;
        if k == 0 {
            first = a.abs();
        }
        // allow a short burn-in before insisting on monotone decay
        if k >= 2 && a > prev * (1.0 + 1e-12) {
            return Err(Error::NonMonotone(k));
        }
        prev = a;
        c = b - c;
        s.add(c * a);
        abs += (c * a).abs();
        let kf = k as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    let value = s.value() / d;
    let err = 2.0 * first / d + 4.0 * f64::EPSILON * abs / d * nf.sqrt();
    Ok(NumericResult { value, err, evaluations: n as u64, converged: true })
}

/// Sum over k >= 0 of (-1)^k magnitude(start + k) with CVZ acceleration.
pub fn sum_alternating<F: Fn(u64) -> f64>(magnitude: F, start: u64, tol: f64) -> Result<NumericResult> {
    sum_alternating_with(magnitude, start, CVZ_TERMS, tol)
}

/// As [`sum_alternating`] with an explicit number of terms.
pub fn sum_alternating_with<F: Fn(u64) -> f64>(magnitude: F, start: u64, terms: usize, tol: f64) -> Result<NumericResult> {
    if terms == 0 {
        return Err(Error::Precondition("need at least one term".into()));
    }
    let r = cvz(
        |k| {
            let a = magnitude(start + k);
            if a.is_finite() {
                Ok(a)
            } else {
                Err(Error::Domain(format!("magnitude {} is {a}", start + k)))
            }
        },
        terms,
    )?;
    Ok(NumericResult { converged: r.err <= tol, ..r })
}

/// Row-wise double sum over m, n >= 1. Row m is closed by `row_tail(m)`,
/// the sequence of row sums by `outer_tail`; errors of both accumulate.
pub fn sum_double<T, R>(term: T, row_tail: R, outer_tail: &TailStrategy, tol: f64) -> Result<NumericResult>
where
    T: Fn(u64, u64) -> f64,
    R: Fn(u64) -> TailStrategy,
{
    let row_err = Cell::new(0.0);
    let evals = Cell::new(0u64);
    let row_tol = tol * 1e-3;
    let outer = sum_series_try(
        |m| {
            let r = sum_series(|n| term(m, n), 1, &row_tail(m), row_tol)?;
            row_err.set(row_err.get() + r.err);
            evals.set(evals.get() + r.evaluations);
            Ok(r.value)
        },
        1,
        outer_tail,
        tol,
    )?;
    let err = outer.err + row_err.get();
    Ok(NumericResult { value: outer.value, err, evaluations: evals.get(), converged: err <= tol })
}

/// Product of `factor(n)`, n >= start, as exp of the summed logarithms.
pub fn product_infinite<F: Fn(u64) -> f64>(factor: F, start: u64, tail: &TailStrategy, tol: f64) -> Result<NumericResult> {
    product_from_log_try(
        |n| {
            let f = factor(n);
            if f > 0.0 && f.is_finite() {
                Ok(f.ln())
            } else {
                Err(Error::Domain(format!("factor {n} is {f}, not positive")))
            }
        },
        start,
        tail,
        tol,
    )
}

/// Product given the logarithm of each factor directly, which keeps factors
/// close to 1 accurate.
pub fn product_from_log<F: Fn(u64) -> f64>(log_factor: F, start: u64, tail: &TailStrategy, tol: f64) -> Result<NumericResult> {
    product_from_log_try(|n| Ok(log_factor(n)), start, tail, tol)
}

fn product_from_log_try<F: Fn(u64) -> Result<f64>>(log_factor: F, start: u64, tail: &TailStrategy, tol: f64) -> Result<NumericResult> {
    let s = sum_series_try(log_factor, start, tail, tol)?;
    Ok(exp_result(s, tol))
}

/// Pushes a result through exp, propagating its error.
pub fn exp_result(s: NumericResult, tol: f64) -> NumericResult {
    let value = s.value.exp();
    let rounding = if s.value == 0.0 { 0.0 } else { f64::EPSILON * value };
    let err = value * s.err.exp_m1() + rounding;
    NumericResult { value, err, evaluations: s.evaluations, converged: err <= tol }
}

/// One error-model term n^-power (log n)^log_power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorTerm {
    pub power: f64,
    pub log_power: u32,
}

impl ErrorTerm {
    pub const fn new(power: f64, log_power: u32) -> Self {
        Self { power, log_power }
    }

    fn at(&self, n: f64) -> f64 {
        n.powf(-self.power) * n.ln().powi(self.log_power as i32)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Extrapolation {
    /// Richardson elimination against the listed error terms, used in order.
    Richardson(Vec<ErrorTerm>),
    WynnEpsilon,
    Aitken,
}

impl Extrapolation {
    /// Richardson against n^-1, n^-2, ... up to n^-terms.
    pub fn richardson(terms: u32) -> Self {
        Extrapolation::Richardson((1..=terms).map(|p| ErrorTerm::new(p as f64, 0)).collect())
    }
}

/// Sampling grid n = n0 * 2^k, k = 0..=levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LimitGrid {
    pub n0: u64,
    pub levels: u32,
}

impl LimitGrid {
    pub fn points(&self) -> Vec<u64> {
        (0..=self.levels).map(|k| self.n0 << k).collect()
    }
}

/// Samples `seq` on the grid and extrapolates to n -> infinity.
pub fn limit_extrapolate<F: Fn(u64) -> f64>(seq: F, grid: LimitGrid, method: &Extrapolation) -> Result<NumericResult> {
    limit_extrapolate_try(|n| Ok(seq(n)), grid, method)
}

/// As [`limit_extrapolate`] with a fallible sequence.
pub fn limit_extrapolate_try<F: Fn(u64) -> Result<f64>>(seq: F, grid: LimitGrid, method: &Extrapolation) -> Result<NumericResult> {
    let ns = grid.points();
    let values = ns.iter().map(|&n| seq(n)).collect::<Result<Vec<f64>>>()?;
    let ns: Vec<f64> = ns.into_iter().map(|n| n as f64).collect();
    extrapolate_samples(&ns, &values, method)
}

/// Extrapolates explicit samples (ascending n).
pub fn extrapolate_samples(ns: &[f64], values: &[f64], method: &Extrapolation) -> Result<NumericResult> {
    if values.len() < 3 || ns.len() != values.len() {
        return Err(Error::InsufficientSamples { need: 3, got: values.len().min(ns.len()) });
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::Divergence(format!("sample value {bad}")));
    }
    let evaluations = values.len() as u64;
    if values.iter().all(|&v| v == values[0]) {
        return Ok(NumericResult { value: values[0], err: 0.0, evaluations, converged: true });
    }
    let (last, before) = match method {
        Extrapolation::Richardson(basis) => {
            if basis.is_empty() {
                return Err(Error::Precondition("Richardson needs at least one error term".into()));
            }
            let k = values.len() - 1;
            (richardson_at(ns, values, basis, k)?, richardson_at(ns, values, basis, k - 1)?)
        }
        Extrapolation::WynnEpsilon => {
            let est = wynn(values);
            (est[est.len() - 1], est[est.len() - 2])
        }
        Extrapolation::Aitken => {
            let est = aitken(values);
            (est[est.len() - 1], est[est.len() - 2])
        }
    };
    if !(last.is_finite() && before.is_finite()) {
        return Err(Error::Divergence("extrapolant is not finite".into()));
    }
    let err = (last - before).abs() + 4.0 * f64::EPSILON * last.abs();
    Ok(NumericResult { value: last, err, evaluations, converged: true })
}

// Fits L + sum c_j phi_j(n) through the samples ending at index k, using as
// many error terms as the samples allow.
fn richardson_at(ns: &[f64], values: &[f64], basis: &[ErrorTerm], k: usize) -> Result<f64> {
    let m = basis.len().min(k);
    let rows: Vec<usize> = (k - m..=k).collect();
    let dim = m + 1;
    let mut a = vec![vec![0.0; dim + 1]; dim];
    for (r, &i) in rows.iter().enumerate() {
        a[r][0] = 1.0;
        for (j, term) in basis.iter().take(m).enumerate() {
            a[r][j + 1] = term.at(ns[i]);
        }
        a[r][dim] = values[i];
    }
    // column scaling keeps elimination well conditioned
    for j in 1..dim {
        let s = (0..dim).map(|r| a[r][j].abs()).fold(0.0, f64::max);
        if s > 0.0 {
            for row in a.iter_mut() {
                row[j] /= s;
            }
        }
    }
    let x = solve_linear(a)?;
    Ok(x[0])
}

#[allow(clippy::needless_range_loop)]
fn solve_linear(mut a: Vec<Vec<f64>>) -> Result<Vec<f64>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap_or(col);
        if a[piv][col] == 0.0 {
            return Err(Error::Divergence("singular extrapolation system".into()));
        }
        a.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..=n {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut s = a[r][n];
        for c in r + 1..n {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    Ok(x)
}

// Estimates from the even columns of the epsilon table, one per sample count.
fn wynn(values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    for len in 1..=values.len() {
        let s = &values[..len];
        let mut prev = vec![0.0; len + 1];
        let mut cur: Vec<f64> = s.to_vec();
        let mut best = s[len - 1];
        let mut col = 0;
        while cur.len() > 1 {
            let next: Vec<f64> = (0..cur.len() - 1)
                .map(|i| {
                    let d = cur[i + 1] - cur[i];
                    prev[i + 1] + if d == 0.0 { f64::INFINITY } else { 1.0 / d }
                })
                .collect();
            col += 1;
            if next.iter().any(|v| !v.is_finite()) {
                break;
            }
            if col % 2 == 0 {
                best = next[next.len() - 1];
            }
            prev = cur;
            cur = next;
        }
        out.push(best);
    }
    out
}

// Repeated Aitken delta-squared; one estimate per sample count.
fn aitken(values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    for len in 1..=values.len() {
        let mut s = values[..len].to_vec();
        while s.len() >= 3 {
            let next: Vec<f64> = (0..s.len() - 2)
                .map(|i| {
                    let d2 = s[i + 2] - 2.0 * s[i + 1] + s[i];
                    if d2 == 0.0 {
                        s[i + 2]
                    } else {
                        s[i + 2] - (s[i + 2] - s[i + 1]).powi(2) / d2
                    }
                })
                .collect();
            s = next;
        }
        out.push(s[s.len() - 1]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequence_is_exact() {
        let grid = LimitGrid { n0: 4, levels: 4 };
        for m in [Extrapolation::richardson(3), Extrapolation::WynnEpsilon, Extrapolation::Aitken] {
            let r = limit_extrapolate(|_| 7.0, grid, &m).unwrap();
            assert_eq!((r.value, r.err), (7.0, 0.0));
        }
    }

    #[test]
    fn empty_product_and_zero_double_sum() {
        let p = product_infinite(|_| 1.0, 1, &TailStrategy::NoneTruncate { terms: 0 }, 1e-12).unwrap();
        assert_eq!((p.value, p.err), (1.0, 0.0));
        let d =
            sum_double(|_, _| 0.0, |_| TailStrategy::NoneTruncate { terms: 5 }, &TailStrategy::NoneTruncate { terms: 5 }, 1e-12).unwrap();
        assert_eq!(d.value, 0.0);
    }

    #[test]
    fn rejects_bad_strategies() {
        assert!(sum_series(|n| 0.5f64.powi(n as i32), 0, &TailStrategy::GeometricRatio { q: 1.0 }, 1e-10).is_err());
        let r = sum_series(|n| 0.9f64.powi(n as i32), 0, &TailStrategy::GeometricRatio { q: 0.5 }, 1e-10);
        assert!(r.is_err());
        assert!(extrapolate_samples(&[1.0, 2.0], &[1.0, 2.0], &Extrapolation::Aitken).is_err());
    }
}
