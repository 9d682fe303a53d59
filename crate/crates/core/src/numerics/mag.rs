//! Upper bounds on magnitudes with an unbounded exponent range.
//!
//! A [`Mag`] is a nonnegative number `man * 2^exp` with `man` in `[0.5, 1)`.
//! Every operation rounds its result upward, so a `Mag` computed from upper
//! bounds is again an upper bound. Only the lower-bound helpers round down.

use rug::Float;
use std::cmp::Ordering;

// Relative slack applied after each f64 operation; covers one rounding step.
const UP: f64 = 1.0 + 4.0 * f64::EPSILON;
const DOWN: f64 = 1.0 - 4.0 * f64::EPSILON;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mag {
    man: f64,
    exp: i64,
}

#[allow(clippy::should_implement_trait)]
impl Mag {
    pub const ZERO: Mag = Mag { man: 0.0, exp: 0 };
    pub const INF: Mag = Mag { man: f64::INFINITY, exp: 0 };

    fn normalize(mut man: f64, mut exp: i64) -> Mag {
        if man == 0.0 {
            return Mag::ZERO;
        }
        if !man.is_finite() {
            return Mag::INF;
        }
        debug_assert!(man > 0.0);
        while man >= 1.0 {
            man *= 0.5;
            exp += 1;
        }
        while man < 0.5 {
            man *= 2.0;
            exp -= 1;
        }
        Mag { man, exp }
    }

    pub fn from_f64(x: f64) -> Mag {
        Mag::normalize(x.abs() * UP, 0)
    }

    /// Upper bound of `|x|`.
    pub fn from_float(x: &Float) -> Mag {
        if x.is_zero() {
            return Mag::ZERO;
        }
        if !x.is_finite() {
            return Mag::INF;
        }
        let (f, e) = x.to_f64_exp();
        Mag::normalize(f.abs() * UP, i64::from(e))
    }

    /// Lower bound of `|x|`.
    pub fn from_float_lower(x: &Float) -> Mag {
        if x.is_zero() || !x.is_finite() {
            return Mag::ZERO;
        }
        let (f, e) = x.to_f64_exp();
        Mag::normalize(f.abs() * DOWN, i64::from(e))
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.man.is_finite()
    }

    /// Multiplies by `2^k` (exact).
    pub fn shl(self, k: i64) -> Mag {
        if self.is_zero() || !self.is_finite() {
            return self;
        }
        Mag { man: self.man, exp: self.exp + k }
    }

    pub fn add(self, other: Mag) -> Mag {
        if !self.is_finite() || !other.is_finite() {
            return Mag::INF;
        }
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (big, small) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let shift = big.exp - small.exp;
        let man = if shift > 60 { big.man + 2f64.powi(-60) } else { big.man + small.man * 2f64.powi(-(shift as i32)) };
        Mag::normalize(man * UP, big.exp)
    }

    pub fn mul(self, other: Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        if !self.is_finite() || !other.is_finite() {
            return Mag::INF;
        }
        Mag::normalize(self.man * other.man * UP, self.exp + other.exp)
    }

    /// Product of two lower bounds, rounded down.
    pub fn mul_lower(self, other: Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        if !self.is_finite() || !other.is_finite() {
            return Mag::INF;
        }
        Mag::normalize(self.man * other.man * DOWN, self.exp + other.exp)
    }

    /// Upper bound of `self / den`, where `den` must be a lower bound of the divisor.
    pub fn div_by_lower(self, den: Mag) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        if den.is_zero() || !self.is_finite() {
            return Mag::INF;
        }
        if !den.is_finite() {
            return Mag::ZERO;
        }
        Mag::normalize(self.man / den.man * UP, self.exp - den.exp)
    }

    /// Lower bound of `self - other` (treating both as exact), or `None` if it
    /// cannot be certified positive.
    pub fn sub_lower(self, other: Mag) -> Option<Mag> {
        if !self.is_finite() || !other.is_finite() {
            return None;
        }
        if other.is_zero() {
            return (!self.is_zero()).then_some(self);
        }
        if self.exp < other.exp {
            return None;
        }
        let shift = self.exp - other.exp;
        let sub = if shift > 60 { 2f64.powi(-60) } else { other.man * 2f64.powi(-(shift as i32)) };
        let man = (self.man - sub) * DOWN;
        (man > 0.0).then(|| Mag::normalize(man, self.exp))
    }

    pub fn max(self, other: Mag) -> Mag {
        if self.cmp_value(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    pub fn cmp_value(&self, other: &Mag) -> Ordering {
        match (self.is_finite(), other.is_finite()) {
            (false, false) => return Ordering::Equal,
            (false, true) => return Ordering::Greater,
            (true, false) => return Ordering::Less,
            _ => {}
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.exp.cmp(&other.exp).then(self.man.partial_cmp(&other.man).unwrap_or(Ordering::Equal)),
        }
    }

    /// The bound as an `f64`; saturates to infinity or zero outside its range.
    pub fn to_f64(&self) -> f64 {
        if !self.is_finite() {
            return f64::INFINITY;
        }
        if self.is_zero() {
            return 0.0;
        }
        if self.exp > 1100 {
            return f64::INFINITY;
        }
        if self.exp < -1100 {
            return 0.0;
        }
        let e = self.exp as i32;
        // split the scaling so subnormal-range results do not flush early
        self.man * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }

    /// Base-2 exponent such that the bound is below `2^exp`.
    pub fn exponent(&self) -> i64 {
        self.exp
    }
}
