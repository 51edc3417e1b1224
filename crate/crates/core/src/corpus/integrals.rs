use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use num_rational::BigRational;
use num_traits::Zero;

use super::util::{coth_minus_recip, log_sinc, quad, quad_finite, quad_segments, x_minus_sin};
use super::{Budget, Category, Evaluation, Expected, Identity, Journal};
use crate::constants::*;
use crate::error::{Error, Result};
use crate::exact::{ratio, rational, Poly};
use crate::quad::{integrate_complex, Interval, NumericResult, QuadOptions};
use crate::seqsum::sum_alternating;
use crate::specfun::{dilog, trigamma};

const DEFAULT_TOL: f64 = 1e-10;

fn integral<F>(
    id: &'static str,
    source: (Journal, &'static str),
    statement: &'static str,
    expected: ClosedForm,
    quote: &'static str,
    eval: F,
) -> Identity
where
    F: Fn(&Budget) -> Result<NumericResult> + Send + Sync + 'static,
{
    Identity::new(id, source, Category::Integral, statement, Expected::Closed(expected), DEFAULT_TOL, quote, move |b| {
        eval(b).map(Evaluation::from)
    })
}

pub(super) fn entries() -> Vec<Identity> {
    use Journal::*;
    let mut v = vec![
        integral("amm-12256", (Amm, "12256"), "int_0^1 log(1+x) log(1-x) / x dx", -(rat(5, 8) * zeta3()), "-\\frac{5}{8}\\xi(3)", |b| {
            quad_finite(|x| x.ln_1p() * (-x).ln_1p() / x, 0.0, 1.0, b)
        })
        .note("the printed right side writes xi(3); the derivation computes zeta(3), which is what is encoded"),
        integral(
            "amm-12288",
            (Amm, "12288"),
            "int_0^inf (x^2 - sin^2 x)^2 / x^6 dx",
            pi() / int(5),
            "original integral J is pi/5",
            oscillating_12288,
        ),
        integral(
            "amm-12308",
            (Amm, "12308"),
            "extremal quartic f: int_0^1 f'^2 with int f = int x^2 f = 1",
            rat(105, 2),
            "minimal value is given by $105/2$",
            |_| extremal_quartic(),
        ),
        integral(
            "amm-12338",
            (Amm, "12338"),
            "int_0^inf (cos x - 1) / (x (e^x - 1)) dx",
            rat(1, 2) * (pi() / pi().sinh()).log(),
            "\\frac{1}{2} \\log\\left(\\frac{\\pi}{\\sinh \\pi}\\right)",
            |b| {
                quad(
                    |x| {
                        if x < 1e-8 {
                            return -0.5 + 0.25 * x;
                        }
                        let s = (0.5 * x).sin();
                        -2.0 * s * s / (x * x.exp_m1())
                    },
                    Interval::semi_infinite(0.0)?,
                    b,
                )
            },
        ),
        integral(
            "amm-12372",
            (Amm, "12372"),
            "int_0^1 log|x^3 - (1-x)^3| / x dx",
            -(rat(11, 36) * pi().powi(2)),
            "-\\frac{a^2+2}{12 a}\\;\\pi^2",
            |b| {
                let iv = Interval::finite(0.0, 1.0)?.with_splits(vec![0.5])?;
                quad(|x| (x.powi(3) - (1.0 - x).powi(3)).abs().ln() / x, iv, b)
            },
        )
        .tags(&["parametric"]),
        integral(
            "amm-12388",
            (Amm, "12388"),
            "int_0^inf log^2 x arctan x / (1 + x^2) dx  (a = pi/2)",
            pi().powi(4) / int(32),
            "\\frac{(2\\pi-a)(\\pi-a)}{12}",
            |b| {
                let iv = Interval::semi_infinite(0.0)?.with_splits(vec![1.0])?;
                quad(|x| x.ln().powi(2) * x.atan() / (1.0 + x * x), iv, b)
            },
        )
        .tags(&["parametric"]),
        integral(
            "amm-12407",
            (Amm, "12407"),
            "int_0^inf x^2 / ((1 + x^2)(1 + x^6)) dx  (r = 3)",
            pi() / int(12),
            "I(r)=\\frac{\\pi}{4r}",
            |b| quad(|x| x * x / ((1.0 + x * x) * (1.0 + x.powi(6))), Interval::semi_infinite(0.0)?, b),
        )
        .tags(&["parametric"]),
        integral(
            "amm-12459",
            (Amm, "12459"),
            "int_0^inf (Li2(-x^2) + Li2(-x^-2)) / (1 + x^2) dx",
            -(pi().powi(3) / int(3)),
            "\\frac{\\pi^3}{3a}  \\left( \\frac{\\sin^2(\\pi/a)-3}{\\sin^3 (\\pi/a)}\\right)",
            |b| {
                let iv = Interval::semi_infinite(0.0)?.with_splits(vec![1.0])?;
                let f = |x: f64| -> Result<f64> {
                    let y = x * x;
                    let inv = if y > 1e-300 {
                        dilog(-1.0 / y)?
                    } else {
                        // inversion, written out where 1/y would overflow
                        let l = 2.0 * x.ln();
                        -PI * PI / 6.0 - 0.5 * l * l - dilog(-y)?
                    };
                    Ok((dilog(-y)? + inv) / (1.0 + y))
                };
                quad(|x| f(x).unwrap_or(f64::NAN), iv, b)
            },
        )
        .tags(&["parametric", "dilog"]),
        integral("amm-12494", (Amm, "12494"), "int_0^1 x^2 log^2(1-x) dx  (r = 3)", rat(85, 54), "(H_r)^2+H_r^{(2)}", |b| {
            quad_finite(|x| x * x * (-x).ln_1p().powi(2), 0.0, 1.0, b)
        })
        .tags(&["parametric"]),
        integral(
            "amm-12501",
            (Amm, "12501"),
            "int_0^inf log^4(x/(1+x)) log(x^3 (1+x)^17) / (1+x) dx",
            -(int(240) * zeta3().powi(2)),
            "=-240 \\zeta(3)^2",
            |b| {
                let iv = Interval::semi_infinite(0.0)?.with_splits(vec![1.0])?;
                quad(
                    |x| {
                        let l = if x > 1.0 { -(1.0 / x).ln_1p() } else { x.ln() - x.ln_1p() };
                        l.powi(4) * (3.0 * x.ln() + 17.0 * x.ln_1p()) / (1.0 + x)
                    },
                    iv,
                    b,
                )
            },
        )
        .tags(&["headline"])
        .note("the integrand carries the factor 1/(1+x) that the substitution line divides out; without it the value is -348.739..."),
        integral(
            "amm-12509",
            (Amm, "12509"),
            "int_0^inf log x / ((x^2 + 1)(x^2 + 9)) dx  (n = 1, a = 1)",
            -(pi() * int(3).log() / int(48)),
            "\\frac{\\pi }{{{2}^{2n+1}}}\\sum",
            |b| {
                let iv = Interval::semi_infinite(0.0)?.with_splits(vec![1.0])?;
                quad(|x| x.ln() / ((x * x + 1.0) * (x * x + 9.0)), iv, b)
            },
        )
        .tags(&["parametric"]),
        integral(
            "amm-12521",
            (Amm, "12521"),
            "int_0^inf 1 / (1 + x^3) dx  (a = 3, m = 0)",
            int(2) * pi() / (int(3) * sqrt3()),
            "F(s)=\\frac{\\pi}{a} \\csc",
            |b| quad(|x| 1.0 / (1.0 + x.powi(3)), Interval::semi_infinite(0.0)?, b),
        )
        .tags(&["parametric"]),
        integral(
            "amm-12527",
            (Amm, "12527"),
            "int_0^{pi/2} tanh(tan^2 t) / (sin 2t (1 + cosh(2 tan^2 t))) dt",
            int(7) * zeta3() / (int(8) * pi().powi(2)),
            "\\frac{7\\zeta(3)}{8\\pi^2}",
            |b| {
                quad_finite(
                    |t| {
                        let y = t.tan().powi(2);
                        // 1 + cosh 2y = 2 cosh^2 y; the quotient underflows to 0 for large y
                        let c = y.cosh();
                        y.tanh() / ((2.0 * t).sin() * 2.0 * c * c)
                    },
                    0.0,
                    FRAC_PI_2,
                    b,
                )
            },
        )
        .tags(&["headline"]),
        integral(
            "amm-12534",
            (Amm, "12534"),
            "int_0^1 (6 log^2(1+x) log^2(1-x) + log^4(1+x)) / x dx",
            rat(21, 4) * zeta5(),
            "\\frac{21}{4}\\zeta(5)",
            |b| {
                quad_finite(
                    |x| {
                        let p = x.ln_1p();
                        let m = (-x).ln_1p();
                        (6.0 * p * p * m * m + p.powi(4)) / x
                    },
                    0.0,
                    1.0,
                    b,
                )
            },
        ),
        integral(
            "amm-11548",
            (Amm, "11548"),
            "extremal piecewise quartic p: (int_{-1}^1 p)^2 = (1/10) int p''^2",
            rat(1, 25),
            "=\\frac{1}{10}\\int_{-1}^1 (p''(x))^2 dx=\\frac{1}{25}",
            |_| piecewise_quartic(),
        ),
        integral(
            "mm-2141",
            (MathMag, "2141"),
            "int_0^inf log(1 + 2 cos(phi)/x^2 + 1/x^4) dx  (phi = pi/3)",
            pi() * sqrt3(),
            "2\\pi \\cos(\\varphi/2)",
            |b| {
                let c = 2.0 * (PI / 3.0).cos();
                let iv = Interval::semi_infinite(0.0)?.with_splits(vec![1.0])?;
                quad(
                    |x| {
                        if x < 1.0 {
                            (x.powi(4) + c * x * x + 1.0).ln() - 4.0 * x.ln()
                        } else {
                            let u = 1.0 / (x * x);
                            (c * u + u * u).ln_1p()
                        }
                    },
                    iv,
                    b,
                )
            },
        )
        .tags(&["parametric"]),
        integral(
            "mm-2176",
            (MathMag, "2176"),
            "int_0^1 log(1 + x + x^2) / (1 + x^2) dx",
            -(catalan() / int(3)) + pi() / int(6) * (int(2) + sqrt3()).log(),
            "-\\frac{1}{3} C +\\frac{\\pi}{6} \\log(2+\\sqrt 3)",
            |b| quad_finite(|x| (x + x * x).ln_1p() / (1.0 + x * x), 0.0, 1.0, b),
        ),
        integral(
            "mm-2181",
            (MathMag, "2181"),
            "int_0^inf e^-x (cos x - 1) / x dx",
            -(rat(1, 2) * log2()),
            "J=- \\frac{1}{2}\\log 2",
            |b| {
                quad(
                    |x| {
                        let s = (0.5 * x).sin();
                        -2.0 * s * s * (-x).exp() / x
                    },
                    Interval::semi_infinite(0.0)?,
                    b,
                )
            },
        ),
        integral(
            "mm-2185",
            (MathMag, "2185"),
            "int_{-1}^1 P_4(x) dx, P_n = (-1)^n (1+x^2)^(n+1) D^n (1/(1+x^2)) / n!",
            rat(-8, 3),
            "\\varepsilon_n\\, \\frac{2^\\frac{n+4}{2}}{n+2}",
            |_| reciprocal_derivative_integral(4),
        )
        .tags(&["parametric", "exact-arithmetic"]),
        integral(
            "mm-2186a",
            (MathMag, "2186"),
            "int_0^1 artanh(x sqrt(2 - x^2)) / x dx",
            rat(3, 16) * pi().powi(2),
            "\\frac{3}{16}\\pi^2\\sim 1.850550825204",
            |b| {
                quad_finite(
                    |x| {
                        let y = x * (2.0 - x * x).sqrt();
                        // 1 - y = (1 - x^2)^2 / (1 + y)
                        let one_minus_x2 = (1.0 - x) * (1.0 + x);
                        ((1.0 + y) / one_minus_x2).ln() / x
                    },
                    0.0,
                    1.0,
                    b,
                )
            },
        ),
        integral(
            "mm-2186b",
            (MathMag, "2186"),
            "int_0^1 arctan(x sqrt(2 - x^2)) / x dx",
            catalan() / int(2) + pi() / int(4) * (int(1) + sqrt2()).log(),
            "\\sim 1.15021199360",
            |b| quad_finite(|x| (x * (2.0 - x * x).sqrt()).atan() / x, 0.0, 1.0, b),
        ),
        integral("mm-2191", (MathMag, "2191"), "int_0^pi |cos x - cos 3x| dx", rat(8, 3), "A_3=\\frac{8}{3}", |b| {
            let iv = Interval::finite(0.0, PI)?.with_splits(vec![FRAC_PI_2])?;
            quad(|x| (x.cos() - (3.0 * x).cos()).abs(), iv, b)
        })
        .tags(&["parametric"]),
        integral("mm-2202a", (MathMag, "2202"), "int_0^{2 pi} cos(cos t) cosh(sin t) dt", int(2) * pi(), "=2\\pi", |b| {
            quad_finite(|t| t.cos().cos() * t.sin().cosh(), 0.0, 2.0 * PI, b)
        })
        .tags(&["headline"]),
        integral("mm-2202b", (MathMag, "2202"), "int_0^{2 pi} sin(cos t) cosh(sin t) dt", int(0), "I_2=...=0", |b| {
            quad_finite(|t| t.cos().sin() * t.sin().cosh(), 0.0, 2.0 * PI, b)
        }),
        integral("mm-2223", (MathMag, "2223"), "int_0^1 (1 - x) log^2 x / (1 + x^3) dx", rat(13, 9) * zeta3(), "\\sim 1.7363044156", |b| {
            quad_finite(|x| (1.0 - x) * x.ln().powi(2) / (1.0 + x.powi(3)), 0.0, 1.0, b)
        })
        .tags(&["headline"]),
        integral(
            "cmj-1295",
            (Cmj, "1295"),
            "int_0^inf (coth(pi x)/x - 1/(pi x^2))^2 dx",
            int(4) * zeta3() / pi(),
            "\\frac{4 \\zeta(3)}{\\pi}",
            |b| {
                quad(
                    |x| {
                        let y = PI * x;
                        let g = PI / y * coth_minus_recip(y);
                        g * g
                    },
                    Interval::semi_infinite(0.0)?,
                    b,
                )
            },
        ),
        integral(
            "crux-4828",
            (Crux, "4828"),
            "int_0^{pi/4} int_0^{pi/4} cos x cos y / (cos(x+y) cos(x-y)) dy dx",
            catalan(),
            "=C",
            double_4828,
        ),
        integral(
            "crux-4920",
            (Crux, "4920"),
            "int_0^1 log(1 + x^2 + x^4 + x^6) / x dx  (k = 2, n = 3)",
            pi().powi(2) / int(16),
            "\\frac{\\pi^2}{6} \\frac{n}{k(n+1)}",
            |b| {
                quad_finite(
                    |x| {
                        let y = x * x;
                        (y + y * y + y * y * y).ln_1p() / x
                    },
                    0.0,
                    1.0,
                    b,
                )
            },
        )
        .tags(&["parametric"]),
        integral(
            "crux-4929",
            (Crux, "4929"),
            "int_0^1 log(1 + sqrt(1 - u^2)) / (1 + u) du",
            pi().powi(2) / int(24),
            "\\frac{\\pi^2}{24}\\sim 0.4112335167",
            |b| quad_finite(|u| ((1.0 - u) * (1.0 + u)).sqrt().ln_1p() / (1.0 + u), 0.0, 1.0, b),
        )
        .tags(&["headline"]),
        integral(
            "elem-1443",
            (ElemMath, "1443"),
            "int_1^{sqrt 2} log((v+1)/(v-1)) / sqrt(2 - v^2) dv, taken with v = sqrt2 cos x",
            int(2) * catalan(),
            "2C= \\int_1^{\\sqrt 2}",
            |b| {
                quad_finite(
                    |x| {
                        // sqrt2 cos x - 1 = -2 sqrt2 sin((x + pi/4)/2) sin((x - pi/4)/2)
                        let den = -2.0 * SQRT_2 * (0.5 * (x + FRAC_PI_4)).sin() * (0.5 * (x - FRAC_PI_4)).sin();
                        ((SQRT_2 * x.cos() + 1.0) / den).ln()
                    },
                    0.0,
                    FRAC_PI_4,
                    b,
                )
            },
        ),
        integral(
            "elem-1455",
            (ElemMath, "1455"),
            "int_0^1 arctan x log x / (1 + x^2) dx",
            rat(7, 16) * zeta3() - pi() / int(4) * catalan(),
            "\\frac{7}{16}\\zeta(3)-\\frac{\\pi}{4}\\; C",
            |b| quad_finite(|x| x.atan() * x.ln() / (1.0 + x * x), 0.0, 1.0, b),
        ),
        integral(
            "gaz-108Da",
            (Gazette, "108.D"),
            "int_0^inf (1 - e^-2x) sin^2 x / x^3 dx",
            pi() / int(2),
            "Consequently, $I=\\frac{\\pi}{2}$",
            oscillating_108da,
        ),
        integral(
            "gaz-108Db",
            (Gazette, "108.D"),
            "int_R cos^2(tan x) sin^2 x / x^2 dx",
            pi() / int(2) * (int(1) + (-int(2)).exp()),
            "\\frac{\\pi}{2}\\left(1+ \\frac{1}{e^2}\\right)",
            folded_108db,
        )
        .note("folded onto one period of tan; the periodized kernel is evaluated with trigamma, not assumed"),
        integral("gaz-108Ha", (Gazette, "108.H"), "int_0^pi x (pi - x) / sin x dx", int(7) * zeta3(), "=7\\zeta(3)", |b| {
            quad_finite(
                |x| {
                    if x > FRAC_PI_2 {
                        let u = PI - x;
                        x * u / u.sin()
                    } else {
                        x * (PI - x) / x.sin()
                    }
                },
                0.0,
                PI,
                b,
            )
        })
        .tags(&["headline"]),
        integral(
            "gaz-108Hb",
            (Gazette, "108.H"),
            "int_R arctan(e^x) arctan(e^-x) dx",
            rat(7, 4) * zeta3(),
            "I_2 ... \\frac{1}{4}  I_1",
            |b| quad(|x| x.exp().atan() * (-x).exp().atan(), Interval::real_line(), b),
        ),
    ];
    for (m, id, value) in
        [(1u32, "crux-4910a", -(pi() / int(4))), (2, "crux-4910b", -(pi() / int(3))), (3, "crux-4910c", -(rat(13, 32) * pi()))]
    {
        v.push(
            integral(
                id,
                (Crux, "4910"),
                "int_0^inf ((sin x / x)^m - 1) / x^2 dx  (m = 1, 2, 3)",
                value,
                "I(1)=-\\frac{\\pi}{4}",
                move |b| sinc_power_4910(m, b),
            )
            .tags(&["parametric"]),
        );
    }
    for (x, id, value) in [(2u32, "amm-12433a", konst(Constant::Pi).powi(2) / int(6)), (3, "amm-12433b", zeta3())] {
        let mut e = integral(id, (Amm, "12433"), "(i/2) int_R tanh(pi t) / (1/2 + i t)^x dt  (x = 2, 3)", value, "=\\zeta(x)", move |b| {
            complex_12433(x as f64, b)
        })
        .tags(&["complex", "parametric"]);
        e.tol = 1e-6;
        v.push(e);
    }
    v
}

// Integrates over [0, N pi] in periods and closes with the tail
// 1/X - 1/(3 X^3); the remaining oscillatory part is O(X^-5).
fn oscillating_12288(b: &Budget) -> Result<NumericResult> {
    let n = 1000;
    let f = |x: f64| {
        if x < 1e-5 {
            return x * x / 9.0;
        }
        let d = x_minus_sin(x) / (x * x) * (x + x.sin()) / x;
        d * d
    };
    let body = quad_segments(f, 0.0, PI, n, b)?;
    let big_x = n as f64 * PI;
    let tail = 1.0 / big_x - 1.0 / (3.0 * big_x.powi(3));
    Ok(body.plus(NumericResult { value: tail, err: 4.0 / big_x.powi(5), evaluations: 0, converged: true }))
}

fn oscillating_108da(b: &Budget) -> Result<NumericResult> {
    let n = 1000;
    let f = |x: f64| {
        if x < 1e-6 {
            return 2.0 - 2.0 * x;
        }
        let s = x.sin();
        -(-2.0 * x).exp_m1() / x * (s / x) * (s / x)
    };
    let body = quad_segments(f, 0.0, PI, n, b)?;
    let big_x = n as f64 * PI;
    let tail = 1.0 / (4.0 * big_x * big_x) - 3.0 / (8.0 * big_x.powi(4));
    Ok(body.plus(NumericResult { value: tail, err: 8.0 / big_x.powi(6), evaluations: 0, converged: true }))
}

fn sinc_power_4910(m: u32, b: &Budget) -> Result<NumericResult> {
    let n = 400;
    let f = |x: f64| {
        if x < 1e-6 {
            -(m as f64) / 6.0
        } else if x < 0.5 {
            (m as f64 * log_sinc(x)).exp_m1() / (x * x)
        } else {
            ((x.sin() / x).powi(m as i32) - 1.0) / (x * x)
        }
    };
    let body = quad_segments(f, 0.0, PI, n, b)?;
    // N even, so cos X = 1 and sin X = 0
    let big_x = n as f64 * PI;
    let (osc, err) = match m {
        1 => (1.0 / big_x.powi(3), 13.0 / big_x.powi(5)),
        2 => (1.0 / (6.0 * big_x.powi(3)), 2.0 / big_x.powi(5)),
        _ => (0.0, 1.0 / big_x.powi(5)),
    };
    Ok(body.plus(NumericResult { value: osc - 1.0 / big_x, err, evaluations: 0, converged: true }))
}

fn complex_12433(x: f64, b: &Budget) -> Result<NumericResult> {
    let opts = QuadOptions::new(b.tol * 0.1, 12)?;
    let iv = Interval::real_line().with_singular(true, true);
    let (re, im) = integrate_complex(
        |t| {
            // (i/2) tanh(pi t) r^-x e^{-i x theta}
            let r2 = 0.25 + t * t;
            let theta = t.atan2(0.5);
            let amp = 0.5 * (PI * t).tanh() * r2.powf(-0.5 * x);
            (amp * (x * theta).sin(), amp * (x * theta).cos())
        },
        &iv,
        &opts,
    )?;
    // the imaginary part must vanish; any residue counts against the value
    Ok(NumericResult { err: re.err + im.err + im.value.abs(), ..re })
}

// Symmetric in x and y, so twice the triangle y >= x. With x = pi/4 - u and
// y = pi/4 - u w the corner singularity cancels against the Jacobian u.
fn double_4828(b: &Budget) -> Result<NumericResult> {
    let inner_budget = Budget { tol: b.tol * 1e-2, ..*b };
    let inner_err = std::cell::Cell::new(0.0f64);
    let g = |u: f64, w: f64| {
        let x = FRAC_PI_4 - u;
        let y = FRAC_PI_4 - u * w;
        let ratio = if u == 0.0 { 1.0 / (1.0 + w) } else { u / (u * (1.0 + w)).sin() };
        x.cos() * y.cos() * ratio / (u * (1.0 - w)).cos()
    };
    let outer = quad_finite(
        |u| match quad_finite(|w| g(u, w), 0.0, 1.0, &inner_budget) {
            Ok(r) => {
                inner_err.set(inner_err.get().max(r.err));
                r.value
            }
            Err(_) => f64::NAN,
        },
        0.0,
        FRAC_PI_4,
        b,
    )?;
    Ok(NumericResult { err: 2.0 * (outer.err + FRAC_PI_4 * inner_err.get()), value: 2.0 * outer.value, ..outer })
}

// Folding onto (-pi/2, pi/2) gives int cos^2(tan u) W(u) du with
// W(u) = sin^2 u sum_k (u + k pi)^-2; then s = tan u.
fn folded_108db(b: &Budget) -> Result<NumericResult> {
    let w = |u: f64| -> f64 {
        let u = u.abs();
        if u == 0.0 {
            return 1.0;
        }
        let z = u / PI;
        let s = u.sin();
        let rest = trigamma(1.0 + z).unwrap_or(f64::NAN) + trigamma(1.0 - z).unwrap_or(f64::NAN);
        (s / u).powi(2) + s * s * rest / (PI * PI)
    };
    // cos^2 = (1 + cos 2s)/2; the smooth half stays in u
    let smooth = quad_finite(|u| 0.5 * w(u), -FRAC_PI_2, FRAC_PI_2, b)?;
    // oscillatory half: int_R cos(2s) W(atan s) / (1 + s^2) ds / 2, even in s
    let h = |s: f64| (2.0 * s).cos() * w(s.atan()) / (1.0 + s * s);
    let head = quad_finite(h, 0.0, FRAC_PI_4, b)?;
    let seg_budget = Budget { tol: b.tol * 1e-2, ..*b };
    let seg_err = std::cell::Cell::new(0.0f64);
    // segment k spans the k-th half period after pi/4; signs alternate from negative
    let alt = sum_alternating(
        |k| {
            let a = FRAC_PI_4 + k as f64 * FRAC_PI_2;
            match quad_finite(h, a, a + FRAC_PI_2, &seg_budget) {
                Ok(r) => {
                    seg_err.set(seg_err.get() + r.err);
                    r.value.abs()
                }
                Err(_) => f64::NAN,
            }
        },
        0,
        b.tol,
    )?;
    let osc = head.value - alt.value;
    let err = smooth.err + head.err + alt.err + seg_err.get();
    Ok(NumericResult {
        value: smooth.value + osc,
        err,
        evaluations: smooth.evaluations + head.evaluations + alt.evaluations,
        converged: true,
    })
}

fn exact_value(v: &BigRational) -> NumericResult {
    use num_traits::ToPrimitive;
    NumericResult::exact(v.to_f64().unwrap_or(f64::NAN))
}

// f = -105/16 x^4 + 105/8 x^2 - 33/16. Checks both constraints, the value, and
// that the first variation vanishes against x^k corrected into the
// constraint-free directions.
fn extremal_quartic() -> Result<NumericResult> {
    let f = Poly::new(vec![ratio(-33, 16), rational(0), ratio(105, 8), rational(0), ratio(-105, 16)]);
    let x2 = Poly::from_ints(&[0, 0, 1]);
    let one = rational(1);
    if f.integral_01() != one || x2.mul(&f).integral_01() != one {
        return Err(Error::CheckFailed("quartic misses a constraint".into()));
    }
    let df = f.derivative();
    let value = df.mul(&df).integral_01();
    // h = x^k - alpha - beta x^2 with int h = int x^2 h = 0
    for k in 1..=8u32 {
        let mut c = vec![rational(0); k as usize + 1];
        c[k as usize] = rational(1);
        let xk = Poly::new(c);
        let m0 = xk.integral_01();
        let m2 = x2.mul(&xk).integral_01();
        // [1, 1/3; 1/3, 1/5] (alpha, beta) = (m0, m2)
        let det = ratio(1, 5) - ratio(1, 9);
        let alpha = (ratio(1, 5) * &m0 - ratio(1, 3) * &m2) / &det;
        let beta = (&m2 - ratio(1, 3) * &m0) / &det;
        let h = xk.add(&Poly::constant(-alpha)).add(&x2.scale(&(-beta)));
        if !df.mul(&h.derivative()).integral_01().is_zero() {
            return Err(Error::CheckFailed(format!("first variation along x^{k} is nonzero")));
        }
    }
    Ok(exact_value(&value))
}

// p(t) = t^4/12 - |t|^3/3 + t^2/2 on [-1, 1]; both halves by symmetry.
fn piecewise_quartic() -> Result<NumericResult> {
    let p = Poly::new(vec![rational(0), rational(0), ratio(1, 2), ratio(-1, 3), ratio(1, 12)]);
    let p2 = p.derivative_n(2);
    if p2 != Poly::from_ints(&[1, -2, 1]) {
        return Err(Error::CheckFailed("p'' is not (1 - t)^2".into()));
    }
    let two = rational(2);
    let mass = &two * p.integral_01();
    let energy = &two * p2.mul(&p2).integral_01();
    let lhs = &mass * &mass;
    if lhs != energy / rational(10) {
        return Err(Error::CheckFailed("(int p)^2 differs from int p''^2 / 10".into()));
    }
    Ok(exact_value(&lhs))
}

// D^n (1/(1+x^2)) = Q_n / (1+x^2)^(n+1) with Q_{n+1} = (1+x^2) Q_n' - 2(n+1) x Q_n.
fn reciprocal_derivative_integral(n: u32) -> Result<NumericResult> {
    let mut q = Poly::from_ints(&[1]);
    let one_plus = Poly::from_ints(&[1, 0, 1]);
    for k in 0..n {
        let lhs = one_plus.mul(&q.derivative());
        let rhs = Poly::from_ints(&[0, -2 * (k as i64 + 1)]).mul(&q);
        q = lhs.add(&rhs);
    }
    let sign = if n.is_multiple_of(2) { rational(1) } else { rational(-1) };
    let p = q.scale(&(sign / BigRational::from_integer(crate::exact::factorial(n as u64))));
    // integral over [-1, 1] from the antiderivative
    let mut anti = vec![rational(0)];
    for (i, c) in p.coeffs().iter().enumerate() {
        anti.push(c / rational(i as i64 + 1));
    }
    let anti = Poly::new(anti);
    let value = anti.eval(&rational(1)) - anti.eval(&rational(-1));
    Ok(exact_value(&value))
}
