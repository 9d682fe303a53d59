//! The two arithmetic contracts: exact rationals and big floats with a
//! tracked absolute error bound (midpoint-radius "balls").

use super::mag::Mag;
use crate::error::{Error, Result};
use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Default working precision for float mode, in bits.
pub const DEFAULT_PRECISION: u32 = 256;

/// Big float `mid` with an absolute error bound `rad`: the true value lies in
/// `[mid - rad, mid + rad]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    mid: Float,
    rad: Mag,
}

fn rounding_err(mid: &Float, ord: Ordering) -> Mag {
    if ord == Ordering::Equal {
        Mag::ZERO
    } else {
        Mag::from_float(mid).shl(-i64::from(mid.prec()))
    }
}

impl Ball {
    pub fn new(mid: Float, rad: Mag) -> Ball {
        Ball { mid, rad }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Ball {
        let (mid, ord) = Float::with_val_round(prec, r, Round::Nearest);
        let rad = rounding_err(&mid, ord);
        Ball { mid, rad }
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    /// Widens the radius by `extra`.
    pub fn inflate(mut self, extra: Mag) -> Ball {
        self.rad = self.rad.add(extra);
        self
    }

    pub fn with_prec(&self, prec: u32) -> Ball {
        let (mid, ord) = Float::with_val_round(prec, &self.mid, Round::Nearest);
        let rad = self.rad.add(rounding_err(&mid, ord));
        Ball { mid, rad }
    }

    fn abs_upper(&self) -> Mag {
        Mag::from_float(&self.mid).add(self.rad)
    }

    /// True when zero cannot be excluded from the ball.
    pub fn contains_zero(&self) -> bool {
        !self.rad.is_finite() || Mag::from_float_lower(&self.mid).cmp_value(&self.rad) != Ordering::Greater
    }

    fn add(&self, other: &Ball) -> Ball {
        let prec = self.prec().max(other.prec());
        let (mid, ord) = Float::with_val_round(prec, &self.mid + &other.mid, Round::Nearest);
        let rad = self.rad.add(other.rad).add(rounding_err(&mid, ord));
        Ball { mid, rad }
    }

    fn sub(&self, other: &Ball) -> Ball {
        let prec = self.prec().max(other.prec());
        let (mid, ord) = Float::with_val_round(prec, &self.mid - &other.mid, Round::Nearest);
        let rad = self.rad.add(other.rad).add(rounding_err(&mid, ord));
        Ball { mid, rad }
    }

    fn mul(&self, other: &Ball) -> Ball {
        let prec = self.prec().max(other.prec());
        let (mid, ord) = Float::with_val_round(prec, &self.mid * &other.mid, Round::Nearest);
        let a = Mag::from_float(&self.mid);
        let b = Mag::from_float(&other.mid);
        let rad = a.mul(other.rad).add(b.mul(self.rad)).add(self.rad.mul(other.rad)).add(rounding_err(&mid, ord));
        Ball { mid, rad }
    }

    fn div(&self, other: &Ball) -> Ball {
        let prec = self.prec().max(other.prec());
        if other.mid.is_zero() {
            return Ball { mid: Float::new(prec), rad: Mag::INF };
        }
        let (mid, ord) = Float::with_val_round(prec, &self.mid / &other.mid, Round::Nearest);
        let b_low = Mag::from_float_lower(&other.mid);
        let rad = match b_low.sub_lower(other.rad) {
            None => Mag::INF,
            Some(shrunk) => {
                let a = Mag::from_float(&self.mid);
                let b = Mag::from_float(&other.mid);
                a.mul(other.rad).add(b.mul(self.rad)).div_by_lower(b_low.mul_lower(shrunk)).add(rounding_err(&mid, ord))
            }
        };
        Ball { mid, rad }
    }
}

/// A number under one of the two arithmetic contracts.
///
/// Mixed operations promote the exact operand to the float operand's
/// precision. Exact values never pick up transcendental content: anything
/// irrational must be requested in float mode.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(Ball),
}

/// Arithmetic mode selected for a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arithmetic {
    Exact,
    Float { prec: u32 },
}

impl Arithmetic {
    pub fn float(prec: u32) -> Arithmetic {
        Arithmetic::Float { prec }
    }

    pub fn precision(&self) -> Option<u32> {
        match self {
            Arithmetic::Exact => None,
            Arithmetic::Float { prec } => Some(*prec),
        }
    }

    /// Brings `x` under this contract; float values are rejected in exact mode.
    pub fn lift(&self, x: &Scalar) -> Result<Scalar> {
        match self {
            Arithmetic::Exact => match x {
                Scalar::Exact(_) => Ok(x.clone()),
                Scalar::Float(_) => Err(Error::ExactModeUnavailable(format!("value {x} is not an exact rational"))),
            },
            Arithmetic::Float { prec } => Ok(x.to_float(*prec)),
        }
    }
}

impl Default for Arithmetic {
    fn default() -> Self {
        Arithmetic::Float { prec: DEFAULT_PRECISION }
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Exact(Rational::new())
    }

    pub fn one() -> Scalar {
        Scalar::Exact(Rational::from(1))
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::Exact(Rational::from(n))
    }

    pub fn ratio(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Exact(Rational::from((num, den)))
    }

    /// An `f64` value rounded to a `prec`-bit ball (exact if representable).
    pub fn from_f64(x: f64, prec: u32) -> Scalar {
        let (mid, ord) = Float::with_val_round(prec, x, Round::Nearest);
        let rad = rounding_err(&mid, ord);
        Scalar::Float(Ball { mid, rad })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn precision(&self) -> Option<u32> {
        match self {
            Scalar::Exact(_) => None,
            Scalar::Float(b) => Some(b.prec()),
        }
    }

    pub fn to_float(&self, prec: u32) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Float(Ball::from_rational(r, prec)),
            Scalar::Float(b) if b.prec() == prec => self.clone(),
            Scalar::Float(b) => Scalar::Float(b.with_prec(prec)),
        }
    }

    fn as_ball(&self, prec: u32) -> Ball {
        match self {
            Scalar::Exact(r) => Ball::from_rational(r, prec),
            Scalar::Float(b) => b.clone(),
        }
    }

    /// Definitely zero: exact zero, or a zero-radius ball at zero.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(b) => b.mid.is_zero() && b.rad.is_zero(),
        }
    }

    /// Zero cannot be excluded (always false for nonzero exact values).
    pub fn may_be_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(b) => b.contains_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(r) => *r == 1,
            Scalar::Float(b) => b.mid == 1 && b.rad.is_zero(),
        }
    }

    /// Upper bound on the absolute error; zero in exact mode.
    pub fn err(&self) -> Mag {
        match self {
            Scalar::Exact(_) => Mag::ZERO,
            Scalar::Float(b) => b.rad,
        }
    }

    /// Upper bound on `|self|` (value plus error).
    pub fn abs_bound(&self) -> Mag {
        match self {
            Scalar::Exact(r) => {
                let f = Float::with_val(64, r);
                Mag::from_float(&f)
            }
            Scalar::Float(b) => b.abs_upper(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64(),
            Scalar::Float(b) => b.mid.to_f64(),
        }
    }

    /// The value as a big float (midpoint for balls).
    pub fn to_big_float(&self, prec: u32) -> Float {
        match self {
            Scalar::Exact(r) => Float::with_val(prec, r),
            Scalar::Float(b) => Float::with_val(prec, &b.mid),
        }
    }

    /// `Some(n)` when the value is exactly the integer `n`.
    pub fn as_integer(&self) -> Option<Integer> {
        match self {
            Scalar::Exact(r) => (*r.denom() == 1).then(|| r.numer().clone()),
            Scalar::Float(b) => {
                if b.rad.is_zero() && b.mid.is_integer() {
                    b.mid.to_integer()
                } else {
                    None
                }
            }
        }
    }

    /// `Some(m)` when the value is exactly `-m` for `m = 0, 1, 2, ...`.
    pub fn as_nonpositive_integer(&self) -> Option<u64> {
        let n = self.as_integer()?;
        if n <= 0 {
            (-n).to_u64()
        } else {
            None
        }
    }

    /// The midpoint as an exactly known ball (radius dropped).
    pub fn midpoint(&self) -> Scalar {
        match self {
            Scalar::Exact(_) => self.clone(),
            Scalar::Float(b) => Scalar::Float(Ball::new(b.mid.clone(), Mag::ZERO)),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.clone().abs()),
            Scalar::Float(b) => Scalar::Float(Ball { mid: b.mid.clone().abs(), rad: b.rad }),
        }
    }

    /// Ordering when it can be certified (always for exact pairs).
    pub fn certain_cmp(&self, other: &Scalar) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Some(a.cmp(b)),
            _ => {
                let d = self - other;
                if d.may_be_zero() {
                    None
                } else {
                    d.to_f64().partial_cmp(&0.0).or_else(|| match &d {
                        Scalar::Float(b) => b.mid.cmp0(),
                        Scalar::Exact(_) => None,
                    })
                }
            }
        }
    }

    pub fn certainly_positive(&self) -> bool {
        self.certain_cmp(&Scalar::zero()) == Some(Ordering::Greater)
    }

    pub fn recip(&self) -> Result<Scalar> {
        Scalar::one().checked_div(self)
    }

    /// Division that reports a zero (or possibly-zero) divisor instead of
    /// producing an unbounded result.
    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if other.may_be_zero() {
            return Err(Error::InvalidParameter(format!("division by {} (zero or indeterminate)", other.display_short())));
        }
        Ok(self / other)
    }

    pub fn powu(&self, n: u32) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(Rational::from(r.pow(n))),
            Scalar::Float(_) => {
                let mut acc = Scalar::one();
                let mut base = self.clone();
                let mut e = n;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = &acc * &base;
                    }
                    e >>= 1;
                    if e > 0 {
                        base = &base * &base;
                    }
                }
                acc
            }
        }
    }

    /// Decimal rendering with `digits` significant digits (trailing zeros
    /// trimmed); exact values are rounded the same way.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        let f = match self {
            Scalar::Exact(r) => {
                let prec = (digits as f64 * 3.33) as u32 + 64;
                Float::with_val(prec, r)
            }
            Scalar::Float(b) => b.mid.clone(),
        };
        format_float(&f, digits)
    }

    fn display_short(&self) -> String {
        match self {
            Scalar::Exact(r) => r.to_string(),
            Scalar::Float(_) => self.to_decimal(12),
        }
    }
}

/// Formats a float with `digits` significant digits, trailing zeros removed.
/// Plain notation for decimal exponents in `-5..=20`, scientific otherwise.
pub fn format_float(f: &Float, digits: usize) -> String {
    if f.is_nan() {
        return "NaN".into();
    }
    if f.is_infinite() {
        return if f.is_sign_negative() { "-inf" } else { "inf" }.into();
    }
    if f.is_zero() {
        return "0".into();
    }
    let (neg, s, exp) = f.to_sign_string_exp(10, Some(digits));
    let exp = exp.unwrap_or(0);
    let s = s.trim_end_matches('0');
    let s = if s.is_empty() { "0" } else { s };
    let n = s.len() as i32;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if (-4..=21).contains(&exp) {
        if exp <= 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-exp) as usize));
            out.push_str(s);
        } else if exp >= n {
            out.push_str(s);
            out.extend(std::iter::repeat_n('0', (exp - n) as usize));
        } else {
            out.push_str(&s[..exp as usize]);
            out.push('.');
            out.push_str(&s[exp as usize..]);
        }
    } else {
        out.push_str(&s[..1]);
        if n > 1 {
            out.push('.');
            out.push_str(&s[1..]);
        }
        out.push('e');
        out.push_str(&(exp - 1).to_string());
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(b) => {
                let digits = ((b.prec() as f64) * std::f64::consts::LOG10_2) as usize;
                write!(f, "{}", format_float(&b.mid, digits.clamp(1, 40)))
            }
        }
    }
}

fn binop(a: &Scalar, b: &Scalar, exact: impl Fn(&Rational, &Rational) -> Rational, ball: impl Fn(&Ball, &Ball) -> Ball) -> Scalar {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => Scalar::Exact(exact(x, y)),
        (Scalar::Float(x), Scalar::Float(y)) => Scalar::Float(ball(x, y)),
        (Scalar::Exact(_), Scalar::Float(y)) => Scalar::Float(ball(&a.as_ball(y.prec()), y)),
        (Scalar::Float(x), Scalar::Exact(_)) => Scalar::Float(ball(x, &b.as_ball(x.prec()))),
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        binop(self, rhs, |x, y| Rational::from(x + y), Ball::add)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        binop(self, rhs, |x, y| Rational::from(x - y), Ball::sub)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        binop(self, rhs, |x, y| Rational::from(x * y), Ball::mul)
    }
}

/// Panics on an exact zero divisor; a float divisor containing zero yields
/// an unbounded radius. Use [`Scalar::checked_div`] where zero is possible.
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        if let Scalar::Exact(r) = rhs {
            assert!(!r.is_zero(), "exact division by zero");
        }
        binop(self, rhs, |x, y| Rational::from(x / y), Ball::div)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(Rational::from(-r)),
            Scalar::Float(b) => Scalar::Float(Ball { mid: Float::with_val(b.prec(), -&b.mid), rad: b.rad }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Exact(r)
    }
}

impl From<Integer> for Scalar {
    fn from(n: Integer) -> Self {
        Scalar::Exact(Rational::from(n))
    }
}
