//! Double-exponential quadrature.
//!
//! Finite pieces use the tanh-sinh map, half-lines use exp-sinh, and the real
//! line is cut at 0 (or at the declared split points) into half-lines plus
//! finite pieces. Every piece is refined by halving the step until two
//! successive estimates agree to the piece's share of the tolerance.

use std::f64::consts::FRAC_PI_2;

use crate::compensated::KahanSum;
use crate::error::{Error, Result};

/// Smallest level at which a refinement may be accepted.
const MIN_LEVEL: u32 = 3;
/// Relative weight below which a regular endpoint stops contributing nodes.
const REGULAR_CUTOFF: f64 = 1e-20;
/// Abscissa cap on half-lines whose integrand decays at least like x^-2.
const FAR_CAP: f64 = 1e30;
/// Abscissa cap when the far end is flagged as slowly decaying.
const FAR_CAP_SLOW: f64 = 1e150;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntervalKind {
    Finite { a: f64, b: f64 },
    SemiInfinite { a: f64 },
    RealLine,
}

/// Integration range with optional interior split points and endpoint flags.
///
/// A flagged endpoint keeps generating nodes until the abscissa can no longer
/// be told apart from the endpoint; an unflagged one stops once the weights
/// are negligible. On a half-line the right flag marks slow decay at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    pub kind: IntervalKind,
    pub split_points: Vec<f64>,
    pub singular: (bool, bool),
}

impl Interval {
    pub fn finite(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInterval(format!("need finite a < b, got [{a}, {b}]")));
        }
        Ok(Self { kind: IntervalKind::Finite { a, b }, split_points: vec![], singular: (true, true) })
    }

    pub fn semi_infinite(a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::InvalidInterval(format!("lower limit {a} is not finite")));
        }
        Ok(Self { kind: IntervalKind::SemiInfinite { a }, split_points: vec![], singular: (true, false) })
    }

    pub fn real_line() -> Self {
        Self { kind: IntervalKind::RealLine, split_points: vec![], singular: (false, false) }
    }

    /// Replaces the endpoint flags.
    pub fn with_singular(mut self, left: bool, right: bool) -> Self {
        self.singular = (left, right);
        self
    }

    /// Declares interior points where the integrand is not smooth.
    pub fn with_splits(mut self, splits: Vec<f64>) -> Result<Self> {
        if splits.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInterval("split points must be strictly ascending".into()));
        }
        let inside = |s: f64| match self.kind {
            IntervalKind::Finite { a, b } => s > a && s < b,
            IntervalKind::SemiInfinite { a } => s > a && s.is_finite(),
            IntervalKind::RealLine => s.is_finite(),
        };
        if let Some(bad) = splits.iter().copied().find(|&s| !inside(s)) {
            return Err(Error::InvalidInterval(format!("split point {bad} is not interior")));
        }
        self.split_points = splits;
        Ok(self)
    }

    fn pieces(&self) -> Vec<Piece> {
        let (sl, sr) = self.singular;
        let s = &self.split_points;
        let mut out = Vec::with_capacity(s.len() + 2);
        match self.kind {
            IntervalKind::Finite { a, b } => {
                let mut knots = vec![a];
                knots.extend_from_slice(s);
                knots.push(b);
                let last = knots.len() - 2;
                for (i, w) in knots.windows(2).enumerate() {
                    let left = if i == 0 { sl } else { true };
                    let right = if i == last { sr } else { true };
                    out.push(Piece::Finite { a: w[0], b: w[1], sl: left, sr: right });
                }
            }
            IntervalKind::SemiInfinite { a } => {
                let mut knots = vec![a];
                knots.extend_from_slice(s);
                for (i, w) in knots.windows(2).enumerate() {
                    out.push(Piece::Finite { a: w[0], b: w[1], sl: i > 0 || sl, sr: true });
                }
                let start = *knots.last().unwrap_or(&a);
                out.push(Piece::Upper { a: start, sl: s.is_empty() && sl || !s.is_empty(), slow: sr });
            }
            IntervalKind::RealLine => {
                let knots: Vec<f64> = if s.is_empty() { vec![0.0] } else { s.clone() };
                out.push(Piece::Lower { b: knots[0], sr: !s.is_empty(), slow: sl });
                for w in knots.windows(2) {
                    out.push(Piece::Finite { a: w[0], b: w[1], sl: true, sr: true });
                }
                out.push(Piece::Upper { a: *knots.last().unwrap_or(&0.0), sl: !s.is_empty(), slow: sr });
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    /// Target absolute error for the whole interval.
    pub tol: f64,
    pub max_level: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_level: 12 }
    }
}

impl QuadOptions {
    pub fn new(tol: f64, max_level: u32) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidOption(format!("tolerance must be positive, got {tol}")));
        }
        if !(3..=16).contains(&max_level) {
            return Err(Error::InvalidOption(format!("max_level must lie in [3, 16], got {max_level}")));
        }
        Ok(Self { tol, max_level })
    }

    pub fn with_tol(tol: f64) -> Result<Self> {
        Self::new(tol, QuadOptions::default().max_level)
    }
}

/// A computed value with its self-reported absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericResult {
    pub value: f64,
    pub err: f64,
    pub evaluations: u64,
    pub converged: bool,
}

impl NumericResult {
    pub fn exact(value: f64) -> Self {
        Self { value, err: 0.0, evaluations: 0, converged: true }
    }

    /// Sum of two results with errors added.
    pub fn plus(self, other: NumericResult) -> Self {
        Self {
            value: self.value + other.value,
            err: self.err + other.err,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    pub fn scale(self, c: f64) -> Self {
        Self { value: c * self.value, err: c.abs() * self.err, ..self }
    }
}

#[derive(Debug, Clone, Copy)]
enum Piece {
    Finite {
        a: f64,
        b: f64,
        sl: bool,
        sr: bool,
    },
    /// [a, inf)
    Upper {
        a: f64,
        sl: bool,
        slow: bool,
    },
    /// (-inf, b]
    Lower {
        b: f64,
        sr: bool,
        slow: bool,
    },
}

impl Piece {
    /// Abscissa and weight for node t, or None once t lies past the last
    /// usable node on its side. The cut is monotone in |t|.
    fn node(&self, t: f64) -> Option<(f64, f64)> {
        match *self {
            Piece::Finite { a, b, sl, sr } => {
                let half = 0.5 * (b - a);
                let u = FRAC_PI_2 * t.abs().sinh();
                let q = (-2.0 * u).exp();
                let d = half * 2.0 * q / (1.0 + q);
                let w = half * FRAC_PI_2 * t.cosh() * 4.0 * q / ((1.0 + q) * (1.0 + q));
                let (x, flagged) = if t >= 0.0 { (b - d, sr) } else { (a + d, sl) };
                if d == 0.0 || x <= a || x >= b || w == 0.0 || w < 1e-300 {
                    return None;
                }
                if !flagged && w < REGULAR_CUTOFF * half {
                    return None;
                }
                Some((x, w))
            }
            Piece::Upper { a, sl, slow } => {
                let (x, w) = exp_sinh(a, 1.0, t, sl, slow)?;
                Some((x, w))
            }
            Piece::Lower { b, sr, slow } => {
                let (x, w) = exp_sinh(b, -1.0, t, sr, slow)?;
                Some((x, w))
            }
        }
    }
}

fn exp_sinh(anchor: f64, dir: f64, t: f64, flagged: bool, slow: bool) -> Option<(f64, f64)> {
    let u = FRAC_PI_2 * t.sinh();
    let r = u.exp();
    let w = FRAC_PI_2 * t.cosh() * r;
    let x = anchor + dir * r;
    if t < 0.0 {
        if r == 0.0 || x == anchor || w < 1e-300 {
            return None;
        }
        if !flagged && w < REGULAR_CUTOFF {
            return None;
        }
    } else {
        let cap = if slow { FAR_CAP_SLOW } else { FAR_CAP };
        if r > cap || !x.is_finite() {
            return None;
        }
    }
    Some((x, w))
}

fn eval_checked<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::Evaluation { x })
    }
}

// Adds the nodes t = k h for the given k-stride on both sides of 0.
fn add_level<F: Fn(f64) -> f64>(f: &F, piece: &Piece, h: f64, first: bool, raw: &mut KahanSum, evals: &mut u64) -> Result<()> {
    if first {
        if let Some((x, w)) = piece.node(0.0) {
            raw.add(w * eval_checked(f, x)?);
            *evals += 1;
        }
    }
    let (start, step) = if first { (1u64, 1u64) } else { (1u64, 2u64) };
    for sign in [1.0, -1.0] {
        let mut k = start;
        loop {
            let t = sign * k as f64 * h;
            match piece.node(t) {
                Some((x, w)) => {
                    raw.add(w * eval_checked(f, x)?);
                    *evals += 1;
                }
                None => break,
            }
            k += step;
        }
    }
    Ok(())
}

fn integrate_piece<F: Fn(f64) -> f64>(f: &F, piece: &Piece, tol: f64, max_level: u32) -> Result<NumericResult> {
    let mut raw = KahanSum::new();
    let mut evals = 0u64;
    let mut h = 1.0;
    add_level(f, piece, h, true, &mut raw, &mut evals)?;
    let mut prev = h * raw.value();
    let mut err = f64::INFINITY;
    for level in 1..=max_level {
        h *= 0.5;
        add_level(f, piece, h, false, &mut raw, &mut evals)?;
        let cur = h * raw.value();
        err = (cur - prev).abs();
        prev = cur;
        if level >= MIN_LEVEL && err <= tol {
            return Ok(NumericResult { value: cur, err, evaluations: evals, converged: true });
        }
    }
    Ok(NumericResult { value: prev, err, evaluations: evals, converged: false })
}

/// Integrates `f` over `iv`; pieces between split points are handled
/// independently and their errors added.
pub fn integrate<F: Fn(f64) -> f64>(f: F, iv: &Interval, opts: &QuadOptions) -> Result<NumericResult> {
    let pieces = iv.pieces();
    let tol = opts.tol / pieces.len() as f64;
    let mut value = KahanSum::new();
    let mut err = KahanSum::new();
    let mut evaluations = 0;
    let mut converged = true;
    for p in &pieces {
        let r = integrate_piece(&f, p, tol, opts.max_level)?;
        value.add(r.value);
        err.add(r.err);
        evaluations += r.evaluations;
        converged &= r.converged;
    }
    let err = err.value();
    Ok(NumericResult { value: value.value(), err, evaluations, converged: converged && err <= opts.tol })
}

/// Integrates a complex-valued integrand componentwise: (real part, imaginary part).
pub fn integrate_complex<F: Fn(f64) -> (f64, f64)>(f: F, iv: &Interval, opts: &QuadOptions) -> Result<(NumericResult, NumericResult)> {
    let re = integrate(|x| f(x).0, iv, opts)?;
    let im = integrate(|x| f(x).1, iv, opts)?;
    Ok((re, im))
}
