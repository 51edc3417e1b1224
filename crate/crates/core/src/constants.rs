//! Named constants and the closed-form expression tree that every identity
//! compares against.
//!
//! Expressions serialize to a fully parenthesized prefix form such as
//! `(div (mul 7 zeta3) (mul 8 (pow pi 2)))`. The parser accepts exactly what
//! [`ClosedForm::to_prefix`] emits, so a round trip is lossless.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constant {
    Pi,
    E,
    EulerGamma,
    Log2,
    Catalan,
    Zeta3,
    Zeta5,
    Sqrt2,
    Sqrt3,
}

impl Constant {
    pub const ALL: [Constant; 9] = [
        Constant::Pi,
        Constant::E,
        Constant::EulerGamma,
        Constant::Log2,
        Constant::Catalan,
        Constant::Zeta3,
        Constant::Zeta5,
        Constant::Sqrt2,
        Constant::Sqrt3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::E => "e",
            Constant::EulerGamma => "euler_gamma",
            Constant::Log2 => "log2",
            Constant::Catalan => "catalan",
            Constant::Zeta3 => "zeta3",
            Constant::Zeta5 => "zeta5",
            Constant::Sqrt2 => "sqrt2",
            Constant::Sqrt3 => "sqrt3",
        }
    }

    pub fn from_name(name: &str) -> Option<Constant> {
        Constant::ALL.into_iter().find(|c| c.name() == name)
    }

    /// 17 significant digits; each literal is checked against an independent
    /// series in the test suite.
    #[allow(clippy::approx_constant, clippy::excessive_precision)]
    pub fn value(self) -> f64 {
        match self {
            Constant::Pi => 3.1415926535897932,
            Constant::E => 2.7182818284590452,
            Constant::EulerGamma => 0.57721566490153286,
            Constant::Log2 => 0.69314718055994531,
            Constant::Catalan => 0.91596559417721902,
            Constant::Zeta3 => 1.2020569031595943,
            Constant::Zeta5 => 1.0369277551433699,
            Constant::Sqrt2 => 1.4142135623730950,
            Constant::Sqrt3 => 1.7320508075688773,
        }
    }
}

/// Looks up a registered constant by its serialized name.
pub fn const_value(name: &str) -> Result<f64> {
    Constant::from_name(name).map(Constant::value).ok_or_else(|| Error::UnknownConstant(name.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Sqrt,
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Arctan,
    Arcsinh,
}

impl UnaryOp {
    const ALL: [UnaryOp; 10] = [
        UnaryOp::Sqrt,
        UnaryOp::Exp,
        UnaryOp::Log,
        UnaryOp::Sin,
        UnaryOp::Cos,
        UnaryOp::Tan,
        UnaryOp::Sinh,
        UnaryOp::Cosh,
        UnaryOp::Arctan,
        UnaryOp::Arcsinh,
    ];

    pub fn token(self) -> &'static str {
        match self {
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Exp => "exp",
            UnaryOp::Log => "log",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Tan => "tan",
            UnaryOp::Sinh => "sinh",
            UnaryOp::Cosh => "cosh",
            UnaryOp::Arctan => "arctan",
            UnaryOp::Arcsinh => "arcsinh",
        }
    }

    fn apply(self, x: f64) -> Result<f64> {
        let y = match self {
            UnaryOp::Sqrt => {
                if x < 0.0 {
                    return Err(Error::Domain(format!("sqrt of {x}")));
                }
                x.sqrt()
            }
            UnaryOp::Exp => x.exp(),
            UnaryOp::Log => {
                if x <= 0.0 {
                    return Err(Error::Domain(format!("log of {x}")));
                }
                x.ln()
            }
            UnaryOp::Sin => x.sin(),
            UnaryOp::Cos => x.cos(),
            UnaryOp::Tan => {
                if x.cos() == 0.0 {
                    return Err(Error::Domain(format!("tan pole at {x}")));
                }
                x.tan()
            }
            UnaryOp::Sinh => x.sinh(),
            UnaryOp::Cosh => x.cosh(),
            UnaryOp::Arctan => x.atan(),
            UnaryOp::Arcsinh => x.asinh(),
        };
        finite(y, self.token())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    const ALL: [BinaryOp; 5] = [BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div, BinaryOp::Pow];

    pub fn token(self) -> &'static str {
        match self {
            BinaryOp::Add => "add",
            BinaryOp::Sub => "sub",
            BinaryOp::Mul => "mul",
            BinaryOp::Div => "div",
            BinaryOp::Pow => "pow",
        }
    }
}

fn finite(y: f64, what: &str) -> Result<f64> {
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::Domain(format!("{what} produced {y}")))
    }
}

/// Expression tree over rational literals, named constants and elementary
/// functions.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedForm {
    /// Numerator and denominator, lowest terms, denominator positive.
    Rational(i64, i64),
    Const(Constant),
    Unary(UnaryOp, Box<ClosedForm>),
    Binary(BinaryOp, Box<ClosedForm>, Box<ClosedForm>),
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn int(n: i64) -> ClosedForm {
    ClosedForm::Rational(n, 1)
}

/// Rational literal `num/den`, reduced. Panics on a zero denominator since
/// literals are authored in code.
pub fn rat(num: i64, den: i64) -> ClosedForm {
    assert!(den != 0, "zero denominator in rational literal");
    let g = gcd(num, den).max(1);
    let s = if den < 0 { -1 } else { 1 };
    ClosedForm::Rational(s * num / g, s * den / g)
}

pub fn konst(c: Constant) -> ClosedForm {
    ClosedForm::Const(c)
}

pub fn pi() -> ClosedForm {
    konst(Constant::Pi)
}
pub fn e() -> ClosedForm {
    konst(Constant::E)
}
pub fn euler_gamma() -> ClosedForm {
    konst(Constant::EulerGamma)
}
pub fn log2() -> ClosedForm {
    konst(Constant::Log2)
}
pub fn catalan() -> ClosedForm {
    konst(Constant::Catalan)
}
pub fn zeta3() -> ClosedForm {
    konst(Constant::Zeta3)
}
pub fn zeta5() -> ClosedForm {
    konst(Constant::Zeta5)
}
pub fn sqrt2() -> ClosedForm {
    konst(Constant::Sqrt2)
}
pub fn sqrt3() -> ClosedForm {
    konst(Constant::Sqrt3)
}

impl ClosedForm {
    fn unary(self, op: UnaryOp) -> ClosedForm {
        ClosedForm::Unary(op, Box::new(self))
    }

    pub fn binary(op: BinaryOp, a: ClosedForm, b: ClosedForm) -> ClosedForm {
        ClosedForm::Binary(op, Box::new(a), Box::new(b))
    }

    pub fn pow(self, exponent: ClosedForm) -> ClosedForm {
        ClosedForm::binary(BinaryOp::Pow, self, exponent)
    }
    pub fn powi(self, n: i64) -> ClosedForm {
        self.pow(int(n))
    }
    pub fn sqrt(self) -> ClosedForm {
        self.unary(UnaryOp::Sqrt)
    }
    pub fn exp(self) -> ClosedForm {
        self.unary(UnaryOp::Exp)
    }
    pub fn log(self) -> ClosedForm {
        self.unary(UnaryOp::Log)
    }
    pub fn sin(self) -> ClosedForm {
        self.unary(UnaryOp::Sin)
    }
    pub fn cos(self) -> ClosedForm {
        self.unary(UnaryOp::Cos)
    }
    pub fn tan(self) -> ClosedForm {
        self.unary(UnaryOp::Tan)
    }
    pub fn sinh(self) -> ClosedForm {
        self.unary(UnaryOp::Sinh)
    }
    pub fn cosh(self) -> ClosedForm {
        self.unary(UnaryOp::Cosh)
    }
    pub fn arctan(self) -> ClosedForm {
        self.unary(UnaryOp::Arctan)
    }
    pub fn arcsinh(self) -> ClosedForm {
        self.unary(UnaryOp::Arcsinh)
    }

    pub fn depth(&self) -> usize {
        match self {
            ClosedForm::Rational(..) | ClosedForm::Const(_) => 1,
            ClosedForm::Unary(_, a) => 1 + a.depth(),
            ClosedForm::Binary(_, a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn eval(&self) -> Result<f64> {
        cf_eval(self)
    }

    pub fn to_prefix(&self) -> String {
        let mut out = String::new();
        self.write_prefix(&mut out);
        out
    }

    fn write_prefix(&self, out: &mut String) {
        match self {
            ClosedForm::Rational(p, 1) => out.push_str(&p.to_string()),
            ClosedForm::Rational(p, q) => {
                out.push_str(&p.to_string());
                out.push('/');
                out.push_str(&q.to_string());
            }
            ClosedForm::Const(c) => out.push_str(c.name()),
            ClosedForm::Unary(op, a) => {
                out.push('(');
                out.push_str(op.token());
                out.push(' ');
                a.write_prefix(out);
                out.push(')');
            }
            ClosedForm::Binary(op, a, b) => {
                out.push('(');
                out.push_str(op.token());
                out.push(' ');
                a.write_prefix(out);
                out.push(' ');
                b.write_prefix(out);
                out.push(')');
            }
        }
    }

    /// Parses the prefix form produced by [`ClosedForm::to_prefix`].
    pub fn parse(src: &str) -> Result<ClosedForm> {
        let mut p = Parser { src: src.as_bytes(), pos: 0 };
        let expr = p.expr()?;
        if p.pos != p.src.len() {
            return Err(p.fail("trailing input"));
        }
        Ok(expr)
    }
}

/// Evaluates a closed form in binary64.
pub fn cf_eval(expr: &ClosedForm) -> Result<f64> {
    match expr {
        ClosedForm::Rational(p, q) => Ok(*p as f64 / *q as f64),
        ClosedForm::Const(c) => Ok(c.value()),
        ClosedForm::Unary(op, a) => op.apply(cf_eval(a)?),
        ClosedForm::Binary(op, a, b) => {
            let x = cf_eval(a)?;
            match (op, b.as_ref()) {
                (BinaryOp::Pow, ClosedForm::Rational(n, 1)) if n.unsigned_abs() <= i32::MAX as u64 => {
                    if x == 0.0 && *n < 0 {
                        return Err(Error::Domain("zero to a negative power".into()));
                    }
                    finite(x.powi(*n as i32), "pow")
                }
                _ => {
                    let y = cf_eval(b)?;
                    match op {
                        BinaryOp::Add => finite(x + y, "add"),
                        BinaryOp::Sub => finite(x - y, "sub"),
                        BinaryOp::Mul => finite(x * y, "mul"),
                        BinaryOp::Div => {
                            if y == 0.0 {
                                return Err(Error::Domain("division by zero".into()));
                            }
                            finite(x / y, "div")
                        }
                        BinaryOp::Pow => {
                            if x < 0.0 && y.fract() != 0.0 {
                                return Err(Error::Domain(format!("{x} to the power {y}")));
                            }
                            if x == 0.0 && y < 0.0 {
                                return Err(Error::Domain("zero to a negative power".into()));
                            }
                            finite(x.powf(y), "pow")
                        }
                    }
                }
            }
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_prefix())
    }
}

impl FromStr for ClosedForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClosedForm::parse(s)
    }
}

macro_rules! arith {
    ($tr:ident, $method:ident, $op:expr) => {
        impl std::ops::$tr for ClosedForm {
            type Output = ClosedForm;
            fn $method(self, rhs: ClosedForm) -> ClosedForm {
                ClosedForm::binary($op, self, rhs)
            }
        }
    };
}
arith!(Add, add, BinaryOp::Add);
arith!(Sub, sub, BinaryOp::Sub);
arith!(Mul, mul, BinaryOp::Mul);
arith!(Div, div, BinaryOp::Div);

impl std::ops::Neg for ClosedForm {
    type Output = ClosedForm;
    fn neg(self) -> ClosedForm {
        match self {
            ClosedForm::Rational(p, q) => ClosedForm::Rational(-p, q),
            other => int(-1) * other,
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn fail(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && !matches!(self.src[self.pos], b' ' | b'(' | b')') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.src.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.fail(&format!("expected `{}`", b as char)))
        }
    }

    fn expr(&mut self) -> Result<ClosedForm> {
        if self.src.get(self.pos) == Some(&b'(') {
            self.pos += 1;
            let at = self.pos;
            let tok = self.word().to_string();
            let node = if let Some(op) = UnaryOp::ALL.into_iter().find(|o| o.token() == tok) {
                self.expect(b' ')?;
                ClosedForm::Unary(op, Box::new(self.expr()?))
            } else if let Some(op) = BinaryOp::ALL.into_iter().find(|o| o.token() == tok) {
                self.expect(b' ')?;
                let a = self.expr()?;
                self.expect(b' ')?;
                let b = self.expr()?;
                ClosedForm::binary(op, a, b)
            } else {
                self.pos = at;
                return Err(self.fail(&format!("unknown operator `{tok}`")));
            };
            self.expect(b')')?;
            return Ok(node);
        }
        let at = self.pos;
        let tok = self.word().to_string();
        if tok.is_empty() {
            return Err(self.fail("expected an operand"));
        }
        if let Some(c) = Constant::from_name(&tok) {
            return Ok(ClosedForm::Const(c));
        }
        self.literal(&tok).ok_or_else(|| Error::Parse { pos: at, msg: format!("bad literal or unknown constant `{tok}`") })
    }

    // Only canonical literals are accepted: no `+`, no leading zeros, reduced
    // fractions with denominator > 1.
    fn literal(&self, tok: &str) -> Option<ClosedForm> {
        fn integer(s: &str, signed: bool) -> Option<i64> {
            let digits = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            if digits.len() > 1 && digits.starts_with('0') {
                return None;
            }
            if s == "-0" {
                return None;
            }
            s.parse().ok()
        }
        match tok.split_once('/') {
            None => integer(tok, true).map(int),
            Some((p, q)) => {
                let p = integer(p, true)?;
                let q = integer(q, false)?;
                (q > 1 && gcd(p, q) == 1).then_some(ClosedForm::Rational(p, q))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_matches_reference_text() {
        let expr = int(7) * zeta3() / (int(8) * pi().powi(2));
        assert_eq!(expr.to_prefix(), "(div (mul 7 zeta3) (mul 8 (pow pi 2)))");
        assert_eq!(ClosedForm::parse(&expr.to_prefix()).unwrap(), expr);
    }

    #[test]
    fn parser_rejects_non_canonical_text() {
        for bad in ["(add 1  2)", "(add 1 2", "4/2", "07", "+3", "(neg 1)", "zeta7", "(add 1 2) "] {
            assert!(ClosedForm::parse(bad).is_err(), "{bad}");
        }
        assert_eq!(ClosedForm::parse("-3/4").unwrap(), rat(-3, 4));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(cf_eval(&int(-1).log()), Err(Error::Domain(_))));
        assert!(matches!(cf_eval(&(int(1) / int(0))), Err(Error::Domain(_))));
        assert!(matches!(cf_eval(&int(-2).sqrt()), Err(Error::Domain(_))));
        assert!(const_value("tau").is_err());
    }

    #[test]
    fn reference_values() {
        let v = cf_eval(&((e().powi(2) + int(1)).log() - int(2))).unwrap();
        assert!((v - 0.1269280110).abs() < 1e-10);
        let v = cf_eval(&(int(7) * zeta3() / (int(8) * pi().powi(2)))).unwrap();
        assert!((v - 0.1065695997).abs() < 1e-10);
        let v = cf_eval(&((int(2) + int(2).pow(rat(2, 3))).pow(rat(3, 2)))).unwrap();
        assert!((v - 6.794693902).abs() < 1e-9);
        assert_eq!(cf_eval(&(int(1) + int(0))).unwrap(), 1.0);
    }
}
