use std::f64::consts::{FRAC_PI_2, PI};

use super::{Budget, Category, Evaluation, Expected, Identity, Journal};
use crate::constants::*;
use crate::error::{Error, Result};
use crate::quad::NumericResult;
use crate::solve::{enumerate_roots, minimize_multistart, root_bracketed, root_power_sum, Bracket, SearchDomain, TailModel};

const ROOT_TOL: f64 = 1e-8;
const EXTREMUM_TOL: f64 = 1e-9;

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

pub(super) fn entries() -> Vec<Identity> {
    use Journal::*;
    vec![
        entry(
            "amm-12479",
            (Amm, "12479"),
            Category::RootSum,
            "sum_{n>=0} r_n^-6 over the positive roots r_n of 2 cos(sqrt3 x) + e^(-3x)",
            rat(8, 5),
            ROOT_TOL,
            "S:=\\displaystyle\\sum_{n=0}^\\infty r_n^{-6}=\\frac{8}{5}",
            |b| root_sum_12479(b.count(40) as usize),
        )
        .tags(&["headline"]),
        entry(
            "crux-4905a",
            (Crux, "4905"),
            Category::RootSum,
            "smaller root in (0, pi/2) of tan x + tan^2 x + tan^3 x + cot x + cot^2 x + cot^3 x = 70",
            pi() / int(12),
            ROOT_TOL,
            "15^\\circ and 75^\\circ",
            |_| tan_cot_roots().map(|r| NumericResult::exact(r[0])),
        ),
        entry(
            "crux-4905b",
            (Crux, "4905"),
            Category::RootSum,
            "larger root in (0, pi/2) of tan x + tan^2 x + tan^3 x + cot x + cot^2 x + cot^3 x = 70",
            int(5) * pi() / int(12),
            ROOT_TOL,
            "15^\\circ and 75^\\circ",
            |_| tan_cot_roots().map(|r| NumericResult::exact(r[1])),
        ),
        entry(
            "crux-4636",
            (Crux, "4636"),
            Category::RootSum,
            "(3^x + 7)^(log_4 3) - (4^x - 7)^(log_3 4) = 4^x - 3^x - 14",
            int(2),
            ROOT_TOL,
            "the unique solution $x=2$",
            |_| {
                let a = 3f64.ln() / 4f64.ln();
                let f = move |x: f64| {
                    let (p3, p4) = (3f64.powf(x), 4f64.powf(x));
                    (p3 + 7.0).powf(a) - (p4 - 7.0).powf(1.0 / a) - (p4 - p3 - 14.0)
                };
                // the left side needs 4^x > 7
                let lo = 7f64.ln() / 4f64.ln();
                let roots = scan_roots(f, lo + 1e-9, 12.0, 4000)?;
                unique(&roots).map(NumericResult::exact)
            },
        ),
        entry(
            "elem-1442",
            (ElemMath, "1442"),
            Category::Extremum,
            "min 1/x + 1/y + 2/z over the unit sphere in the positive octant",
            (int(2) + int(2).pow(rat(2, 3))).pow(rat(3, 2)),
            EXTREMUM_TOL,
            "(2+2^{2/3})^{3/2}\\sim 6.794693902",
            |b| {
                // polar angles parametrize the octant of the sphere
                let f = |p: &[f64]| {
                    let (st, ct) = p[0].sin_cos();
                    let (sp, cp) = p[1].sin_cos();
                    1.0 / (st * cp) + 1.0 / (st * sp) + 2.0 / ct
                };
                let domain = SearchDomain::boxed(vec![1e-3, 1e-3], vec![FRAC_PI_2 - 1e-3, FRAC_PI_2 - 1e-3]);
                minimum(f, &domain, b)
            },
        ),
        entry(
            "crux-4817",
            (Crux, "4817"),
            Category::Extremum,
            "min over abc = 1 of sum_cyc (a^7 + a^3 + bc)/(a + bc + 1)",
            int(3),
            EXTREMUM_TOL,
            "the minimal value is taken at $(a,b,c)=(1,1,1)$",
            |b| {
                let f = |p: &[f64]| {
                    let (a, bb) = (p[0].exp(), p[1].exp());
                    let c = (-p[0] - p[1]).exp();
                    let term = |x: f64, y: f64, z: f64| (x.powi(7) + x.powi(3) + y * z) / (x + y * z + 1.0);
                    term(a, bb, c) + term(bb, c, a) + term(c, a, bb)
                };
                let domain = SearchDomain::boxed(vec![-2.0, -2.0], vec![2.0, 2.0]);
                minimum(f, &domain, b)
            },
        ),
    ]
}

fn root_sum_12479(count: usize) -> Result<NumericResult> {
    let s3 = 3f64.sqrt();
    let f = |x: f64| 2.0 * (s3 * x).cos() + (-3.0 * x).exp();
    let asym = move |n: u64| (FRAC_PI_2 + n as f64 * PI) / s3;
    let delta = 1.0 / (16.0 * s3);
    let roots = enumerate_roots(f, |i| (asym(i as u64) - delta, asym(i as u64) + delta), count, 1e-15)?;
    // each root sits within delta of its asymptote and consecutive roots are more than 1 apart
    for (i, r) in roots.iter().enumerate() {
        if (r - asym(i as u64)).abs() >= delta {
            return Err(Error::CheckFailed(format!("root {i} at {r} is not within 1/(16 sqrt3) of its asymptote")));
        }
    }
    if let Some(w) = roots.windows(2).find(|w| w[1] - w[0] <= 1.0) {
        return Err(Error::CheckFailed(format!("roots {} and {} are not separated by 1", w[0], w[1])));
    }
    // 2 cos(sqrt3 x) has slope of size 2 sqrt3 at its zeros, so |r_n - s_n| <= e^(-3 r_n)/sqrt3
    let tail = TailModel { asymptote: Box::new(asym), deviation_bound: Box::new(move |n| (-3.0 * (asym(n) - delta)).exp() / s3) };
    root_power_sum(&roots, 6, &tail, count, 1e-15 * roots.last().copied().unwrap_or(1.0))
}

fn tan_cot_roots() -> Result<Vec<f64>> {
    let g = |x: f64| {
        let (t, c) = (x.tan(), 1.0 / x.tan());
        t + t * t + t * t * t + c + c * c + c * c * c - 70.0
    };
    let roots = scan_roots(g, 1e-6, FRAC_PI_2 - 1e-6, 4000)?;
    if roots.len() != 2 {
        return Err(Error::CheckFailed(format!("expected two roots in (0, pi/2), found {}", roots.len())));
    }
    Ok(roots)
}

/// Every sign change of `f` on a uniform grid of [a, b], refined by Brent.
fn scan_roots<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cells: usize) -> Result<Vec<f64>> {
    let h = (b - a) / cells as f64;
    let mut roots = Vec::new();
    let mut x0 = a;
    let mut f0 = f(a);
    for i in 1..=cells {
        let x1 = a + i as f64 * h;
        let f1 = f(x1);
        if f0 == 0.0 {
            roots.push(x0);
        } else if f0 * f1 < 0.0 {
            roots.push(root_bracketed(&f, Bracket::new(&f, x0, x1)?, 1e-15)?);
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(roots)
}

fn unique(roots: &[f64]) -> Result<f64> {
    match roots {
        [r] => Ok(*r),
        _ => Err(Error::CheckFailed(format!("expected exactly one root, found {}", roots.len()))),
    }
}

/// Multistart minimum, with the Newton decrement at the minimizer as error.
fn minimum<F: Fn(&[f64]) -> f64>(f: F, domain: &SearchDomain<'_>, b: &Budget) -> Result<NumericResult> {
    let (x, value) = minimize_multistart(&f, domain, b.count(64) as usize, 1e-15, b.seed)?;
    let gap = newton_decrement(&f, &x)?;
    Ok(NumericResult { value, err: gap + 8.0 * f64::EPSILON * value.abs(), evaluations: 0, converged: true })
}

/// Half of g^T H^-1 g from central differences in two variables; the
/// predicted drop of a quadratic model from `x` to its stationary point.
fn newton_decrement<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64]) -> Result<f64> {
    if x.len() != 2 {
        return Err(Error::Precondition("the decrement is implemented for two variables".into()));
    }
    let h = 1e-4;
    let at = |dx: f64, dy: f64| f(&[x[0] + dx, x[1] + dy]);
    let f0 = at(0.0, 0.0);
    let g = [(at(h, 0.0) - at(-h, 0.0)) / (2.0 * h), (at(0.0, h) - at(0.0, -h)) / (2.0 * h)];
    let hxx = (at(h, 0.0) - 2.0 * f0 + at(-h, 0.0)) / (h * h);
    let hyy = (at(0.0, h) - 2.0 * f0 + at(0.0, -h)) / (h * h);
    let hxy = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
    let det = hxx * hyy - hxy * hxy;
    if !(hxx > 0.0 && det > 0.0) {
        return Err(Error::CheckFailed("the minimizer is not a strict local minimum".into()));
    }
    // H^-1 g for the 2x2 case
    let sx = (hyy * g[0] - hxy * g[1]) / det;
    let sy = (hxx * g[1] - hxy * g[0]) / det;
    Ok(0.5 * (g[0] * sx + g[1] * sy).abs())
}
