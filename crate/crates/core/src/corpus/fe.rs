//! Functional equations: each known solution family is substituted into its
//! equation on a grid, and a documented non-solution must visibly fail.

use super::{Budget, Category, Evaluation, Expected, Identity, Journal};
use crate::error::{Error, Result};
use crate::quad::{integrate, Interval, NumericResult, QuadOptions};

const FE_TOL: f64 = 1e-11;
/// A negative control must miss by at least this much.
const CONTROL_MIN: f64 = 0.1;

type Func = Box<dyn Fn(f64) -> f64 + Send + Sync>;

fn func(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Func {
    Box::new(f)
}

/// Largest |residual| over every solution and grid point.
pub fn check_functional_equation<S, R>(fe: R, solutions: &[S], grid: &[Vec<f64>]) -> Result<f64>
where
    R: Fn(&S, &[f64]) -> Result<f64>,
{
    if solutions.is_empty() || grid.is_empty() {
        return Err(Error::Precondition("need at least one solution and one grid point".into()));
    }
    let mut worst = 0.0f64;
    for s in solutions {
        for p in grid {
            let r = fe(s, p)?;
            if !r.is_finite() {
                return Err(Error::Domain(format!("residual is not finite at {p:?}")));
            }
            worst = worst.max(r.abs());
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeSummary {
    pub id: &'static str,
    pub max_residual: f64,
    /// Residual of the non-solution on the same grid.
    pub control_residual: f64,
}

struct FeCase {
    id: &'static str,
    source: (Journal, &'static str),
    statement: &'static str,
    quote: &'static str,
    /// (family residual, control residual)
    run: fn() -> Result<(f64, f64)>,
}

/// Runs every equation and its control.
pub fn fe_suite() -> Result<Vec<FeSummary>> {
    cases()
        .into_iter()
        .map(|c| {
            let (max_residual, control_residual) = (c.run)()?;
            Ok(FeSummary { id: c.id, max_residual, control_residual })
        })
        .collect()
}

pub(super) fn entries() -> Vec<Identity> {
    cases()
        .into_iter()
        .map(|c| {
            let (id, run) = (c.id, c.run);
            Identity::new(
                id,
                c.source,
                Category::FunctionalEquation,
                c.statement,
                Expected::Residual,
                FE_TOL,
                c.quote,
                move |_: &Budget| {
                    let (residual, control) = run()?;
                    if !(control > CONTROL_MIN) {
                        return Err(Error::CheckFailed(format!(
                            "{id}: the non-solution leaves residual {control:.3e}, not above {CONTROL_MIN}"
                        )));
                    }
                    Ok(Evaluation::from(NumericResult::exact(residual)))
                },
            )
        })
        .collect()
}

fn points(xs: &[f64]) -> Vec<Vec<f64>> {
    xs.iter().map(|&x| vec![x]).collect()
}

fn pairs(xs: &[f64], ys: &[f64]) -> Vec<Vec<f64>> {
    xs.iter().flat_map(|&x| ys.iter().map(move |&y| vec![x, y])).collect()
}

fn triples(xs: &[f64]) -> Vec<Vec<f64>> {
    xs.iter().flat_map(|&x| pairs(xs, xs).into_iter().map(move |p| vec![x, p[0], p[1]])).collect()
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// Runs the family and the control through the same equation and grid.
fn with_control<S, R>(fe: R, family: &[S], control: S, grid: &[Vec<f64>]) -> Result<(f64, f64)>
where
    R: Fn(&S, &[f64]) -> Result<f64>,
{
    Ok((check_functional_equation(&fe, family, grid)?, check_functional_equation(&fe, &[control], grid)?))
}

fn integral(f: impl Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    let (lo, hi, sign) = if a <= b { (a, b, 1.0) } else { (b, a, -1.0) };
    if lo == hi {
        return Ok(0.0);
    }
    let r = integrate(f, &Interval::finite(lo, hi)?, &QuadOptions::with_tol(1e-15)?)?;
    Ok(sign * r.value)
}

/// a + bi as a pair.
type Complex = (f64, f64);

fn sin_c((x, y): Complex) -> Complex {
    (x.sin() * y.cosh(), x.cos() * y.sinh())
}

fn sinh_c((x, y): Complex) -> Complex {
    (x.sinh() * y.cos(), x.cosh() * y.sin())
}

fn norm2((x, y): Complex) -> f64 {
    x * x + y * y
}

fn cases() -> Vec<FeCase> {
    use Journal::*;
    vec![
        FeCase {
            id: "amm-12347",
            source: (Amm, "12347"),
            statement: "f(f(x)) - (a+b) f(x) + ab x = 0 with 0 < a < 1 < b",
            quote: "$F_1(x)=ax$, $F_2(x)=bx$",
            run: || {
                let fe = |(a, b, f): &(f64, f64, Func), p: &[f64]| Ok(f(f(p[0])) - (a + b) * f(p[0]) + a * b * p[0]);
                let mut family = Vec::new();
                for (a, b) in [(0.5, 2.0), (0.3, 3.5)] {
                    family.push((a, b, func(move |x| a * x)));
                    family.push((a, b, func(move |x| b * x)));
                    family.push((a, b, func(move |x| if x <= 0.0 { a * x } else { b * x })));
                    family.push((a, b, func(move |x| if x <= 0.0 { b * x } else { a * x })));
                }
                with_control(fe, &family, (0.5, 2.0, func(|x| x * x)), &points(&linspace(-3.0, 3.0, 25)))
            },
        },
        FeCase {
            id: "amm-12406",
            source: (Amm, "12406"),
            statement: "f(x^2) + 2p f(x) = (x+p)^2 on [0, 1]",
            quote: "f(x)= x+ \\frac{p^2}{1+2p}",
            run: || {
                let fe = |(p, f): &(f64, Func), x: &[f64]| Ok(f(x[0] * x[0]) + 2.0 * p * f(x[0]) - (x[0] + p).powi(2));
                let family: Vec<_> = [1.0, 0.5, 2.0].into_iter().map(|p: f64| (p, func(move |x| x + p * p / (1.0 + 2.0 * p)))).collect();
                with_control(fe, &family, (1.0, func(|x| x)), &points(&linspace(0.0, 1.0, 21)))
            },
        },
        FeCase {
            id: "amm-12460",
            source: (Amm, "12460"),
            statement: "f(x+h) - h g(-h) = f(x), the shift relation forced by convergence of f(a_n) + b_n g(b_n)",
            quote: "f(x)=mx+c",
            run: || {
                let fe = |(f, g): &(Func, Func), p: &[f64]| Ok(f(p[0] + p[1]) - p[1] * g(-p[1]) - f(p[0]));
                let family: Vec<_> = [(2.0, 0.3), (-1.5, 4.0), (0.0, -1.0)]
                    .into_iter()
                    .map(|(m, c): (f64, f64)| (func(move |x| m * x + c), func(move |_| m)))
                    .collect();
                let grid = pairs(&linspace(-2.0, 2.0, 9), &[-1.0, -0.25, 0.5, 1.5]);
                with_control(fe, &family, (func(|x| x * x), func(|x| 2.0 * x)), &grid)
            },
        },
        FeCase {
            id: "amm-12290",
            source: (Amm, "12290"),
            statement: "|f(x+iy)|^2 = |f(x)|^2 + |f(iy)|^2 for entire f",
            quote: "\\sin ^2 x+\\sinh^2 y",
            run: || {
                type CFunc = Box<dyn Fn(Complex) -> Complex + Send + Sync>;
                let fe = |f: &CFunc, p: &[f64]| Ok(norm2(f((p[0], p[1]))) - norm2(f((p[0], 0.0))) - norm2(f((0.0, p[1]))));
                let family: Vec<CFunc> = vec![
                    Box::new(|(x, y)| (1.5 * x, 1.5 * y)),
                    Box::new(|(x, y)| {
                        let (s, t) = sin_c((0.7 * x, 0.7 * y));
                        (2.0 * s, 2.0 * t)
                    }),
                    Box::new(|(x, y)| sinh_c((1.3 * x, 1.3 * y))),
                ];
                let grid = pairs(&linspace(-1.5, 1.5, 7), &linspace(-1.5, 1.5, 7));
                with_control(fe, &family, Box::new(|(x, y)| (x * x - y * y, 2.0 * x * y)), &grid)
            },
        },
        FeCase {
            id: "amm-10747",
            source: (Amm, "10747"),
            statement: "f(f(x)) = f(x)^2 with f = x^2 on x >= 0 and any positive continuation on x < 0",
            quote: "f\\circ f=f^2",
            run: || {
                let fe = |f: &Func, x: &[f64]| Ok(f(f(x[0])) - f(x[0]).powi(2));
                let family = vec![
                    func(|x| x * x),
                    func(|x| if x >= 0.0 { x * x } else { x.powi(4) }),
                    func(|x| if x >= 0.0 { x * x } else { x * x * (1.0 - x).exp() }),
                ];
                with_control(fe, &family, func(|x| x.powi(3)), &points(&linspace(-2.0, 2.0, 17)))
            },
        },
        FeCase {
            id: "amm-10854",
            source: (Amm, "10854"),
            statement: "f(x + 2 f(y)) = f(x) + f(y) + y",
            quote: "f(x)=x$ or $f(x)=-{x\\over 2}",
            run: || {
                let fe = |f: &Func, p: &[f64]| Ok(f(p[0] + 2.0 * f(p[1])) - f(p[0]) - f(p[1]) - p[1]);
                let family = vec![func(|x| x), func(|x| -0.5 * x)];
                let g = linspace(-3.0, 3.0, 13);
                with_control(fe, &family, func(|x| -x), &pairs(&g, &g))
            },
        },
        FeCase {
            id: "crux-4747",
            source: (Crux, "4747"),
            statement: "f(x^2 f(x) + f(y)) = f(f(x^3)) + y",
            quote: "f(x)=x and f(x)=-x",
            run: || {
                let fe = |f: &Func, p: &[f64]| {
                    let (x, y) = (p[0], p[1]);
                    Ok(f(x * x * f(x) + f(y)) - f(f(x * x * x)) - y)
                };
                let family = vec![func(|x| x), func(|x| -x)];
                let g = linspace(-2.0, 2.0, 9);
                with_control(fe, &family, func(|x| 2.0 * x), &pairs(&g, &g))
            },
        },
        FeCase {
            id: "crux-4772",
            source: (Crux, "4772"),
            statement: "f(ax + f(y)) = (y/a) f(xy + 1) on the positive reals",
            quote: "f(x)=a/x",
            run: || {
                let fe = |(a, f): &(f64, Func), p: &[f64]| {
                    let (x, y) = (p[0], p[1]);
                    if !(x > 0.0 && y > 0.0) {
                        return Err(Error::Domain(format!("({x}, {y}) is not in the positive quadrant")));
                    }
                    Ok(f(a * x + f(y)) - y / a * f(x * y + 1.0))
                };
                let family: Vec<_> = [2.0, 0.5, 3.0].into_iter().map(|a: f64| (a, func(move |x| a / x))).collect();
                let g = [0.25, 0.5, 1.0, 2.0, 3.5];
                with_control(fe, &family, (2.0, func(|x| x * x)), &pairs(&g, &g))
            },
        },
        FeCase {
            id: "crux-4801",
            source: (Crux, "4801"),
            statement: "f(x + 1/y) = y f(xy + y) on the positive reals",
            quote: "f(x)= \\frac{C}{1+x}",
            run: || {
                let fe = |f: &Func, p: &[f64]| {
                    let (x, y) = (p[0], p[1]);
                    if !(x > 0.0 && y > 0.0) || x == 1.0 {
                        return Err(Error::Domain(format!("({x}, {y}) is outside the derivation domain")));
                    }
                    Ok(f(x + 1.0 / y) - y * f(x * y + y))
                };
                let family: Vec<_> = [1.0, 2.5, -0.75].into_iter().map(|c: f64| func(move |x| c / (1.0 + x))).collect();
                let g = [0.25, 0.5, 1.5, 2.0, 3.0];
                with_control(fe, &family, func(|x| 1.0 / x), &pairs(&g, &g))
            },
        },
        FeCase {
            id: "crux-4889",
            source: (Crux, "4889"),
            statement: "the mean of f(g(t)) over [x, y] equals f((x+y)/2)",
            quote: "f(x)=ax+b",
            run: || {
                let fe = |f: &Func, p: &[f64]| {
                    let (x, y) = (p[0], p[1]);
                    if x >= y {
                        return Err(Error::Domain(format!("need x < y, got ({x}, {y})")));
                    }
                    Ok(integral(f, x, y)? / (y - x) - f(0.5 * (x + y)))
                };
                let family = vec![func(|t| 2.0 * t - 1.0), func(|t| -0.5 * t + 3.0), func(|_| 1.25)];
                let grid: Vec<_> = pairs(&[-2.0, -0.5, 0.0, 1.0], &[-1.0, 0.5, 2.0, 3.0]).into_iter().filter(|p| p[0] < p[1]).collect();
                with_control(fe, &family, func(|t| t * t), &grid)
            },
        },
        FeCase {
            id: "crux-4893",
            source: (Crux, "4893"),
            statement: "x^2 + integral_1^(1/x) f(x^2 t) dt = 1 on [-1, 1] without 0",
            quote: "f(x)=2x",
            run: || {
                let fe = |f: &Func, p: &[f64]| {
                    let x = p[0];
                    if x == 0.0 || x.abs() > 1.0 {
                        return Err(Error::Domain(format!("{x} is outside [-1, 1] without 0")));
                    }
                    Ok(x * x + integral(|t| f(x * x * t), 1.0, 1.0 / x)? - 1.0)
                };
                let grid: Vec<f64> = linspace(-1.0, 1.0, 20);
                with_control(fe, &[func(|x| 2.0 * x)], func(|x| x), &points(&grid))
            },
        },
        FeCase {
            id: "crux-4896",
            source: (Crux, "4896"),
            statement: "f(f(x) + y f(z) - 1) + f(z + 1) = z f(y) + f(x + z)",
            quote: "f\\equiv 0$ or $f(x)=x",
            run: || {
                let fe = |f: &Func, p: &[f64]| {
                    let (x, y, z) = (p[0], p[1], p[2]);
                    Ok(f(f(x) + y * f(z) - 1.0) + f(z + 1.0) - z * f(y) - f(x + z))
                };
                let family = vec![func(|_| 0.0), func(|x| x)];
                with_control(fe, &family, func(|_| 1.0), &triples(&[-2.0, -0.5, 0.0, 1.0, 3.0]))
            },
        },
        FeCase {
            id: "crux-4914",
            source: (Crux, "4914"),
            statement: "f(x^2 + y + 1) = x f(x) + f(y) + 1 for x, y >= 0",
            quote: "the {\\it identity} is the only",
            run: || {
                let fe = |f: &Func, p: &[f64]| {
                    let (x, y) = (p[0], p[1]);
                    Ok(f(x * x + y + 1.0) - x * f(x) - f(y) - 1.0)
                };
                let g = linspace(0.0, 3.0, 7);
                with_control(fe, &[func(|x| x)], func(|x| 2.0 * x), &pairs(&g, &g))
            },
        },
        FeCase {
            id: "crux-4925",
            source: (Crux, "4925"),
            statement: "f(x+y) + x f(f(y)) = f(f(x)) + f(y) + axy",
            quote: "a\\in \\{0,1\\}",
            run: || {
                let fe = |(a, f): &(f64, Func), p: &[f64]| {
                    let (x, y) = (p[0], p[1]);
                    Ok(f(x + y) + x * f(f(y)) - f(f(x)) - f(y) - a * x * y)
                };
                let family = vec![(1.0, func(|x| x)), (0.0, func(|_| 0.0))];
                let g = linspace(-2.0, 2.0, 9);
                with_control(fe, &family, (1.0, func(|_| 0.0)), &pairs(&g, &g))
            },
        },
        FeCase {
            id: "crux-4953",
            source: (Crux, "4953"),
            statement: "(x+y) f(x+y) - x f(x) - y f(y) = a (y f(x) + x f(y)) at a = 3",
            quote: "f(x)= cx^2",
            run: || {
                let a = 3.0;
                let fe = move |f: &Func, p: &[f64]| {
                    let (x, y) = (p[0], p[1]);
                    Ok((x + y) * f(x + y) - x * f(x) - y * f(y) - a * (y * f(x) + x * f(y)))
                };
                let family: Vec<_> = [2.0, -0.7, 0.0].into_iter().map(|c: f64| func(move |x| c * x * x)).collect();
                let g = [-2.0, -1.0, 0.5, 1.0, 3.0];
                with_control(fe, &family, func(|x| x), &pairs(&g, &g))
            },
        },
        FeCase {
            id: "gaz-108C",
            source: (Gazette, "108.C"),
            statement: "f(x) f(a-x) does not depend on x in [0, a]",
            quote: "\\lambda\\, e^{\\beta x}",
            run: || {
                let a = 2.0;
                let fe = move |f: &Func, p: &[f64]| Ok(f(p[0]) * f(a - p[0]) - f(0.0) * f(a));
                let family: Vec<_> =
                    [(1.5, 0.4), (0.3, -1.2), (-2.0, 0.0)].into_iter().map(|(l, b): (f64, f64)| func(move |x| l * (b * x).exp())).collect();
                with_control(fe, &family, func(|x| 1.0 + x), &points(&linspace(0.0, a, 21)))
            },
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_equation_example() {
        // f(x) = 2x^2 at a = 3 on the documented grid
        let g = [-2.0, -1.0, 0.5, 1.0, 3.0];
        let fe = |c: &f64, p: &[f64]| {
            let f = |x: f64| c * x * x;
            let (x, y) = (p[0], p[1]);
            Ok((x + y) * f(x + y) - x * f(x) - y * f(y) - 3.0 * (y * f(x) + x * f(y)))
        };
        assert!(check_functional_equation(fe, &[2.0], &pairs(&g, &g)).unwrap() <= 1e-11);
    }

    #[test]
    fn grid_outside_domain_is_an_error() {
        let fe = |_: &(), p: &[f64]| if p[0] > 0.0 { Ok(0.0) } else { Err(Error::Domain("x <= 0".into())) };
        assert!(check_functional_equation(fe, &[()], &points(&[1.0, -1.0])).is_err());
        assert!(check_functional_equation(fe, &[()], &[]).is_err());
    }

    #[test]
    fn every_control_fails_visibly() {
        for s in fe_suite().unwrap() {
            assert!(s.max_residual <= FE_TOL, "{} residual {}", s.id, s.max_residual);
            assert!(s.control_residual > CONTROL_MIN, "{} control {}", s.id, s.control_residual);
        }
    }
}
