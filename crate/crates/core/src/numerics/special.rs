//! Pochhammer symbols, truncated hypergeometric series with certified tail
//! bounds, and the Gauss sum for ₂F₁ at unit argument.

use super::mag::Mag;
use super::scalar::{Ball, Scalar};
use crate::error::{Error, Result};
use rug::Float;

/// Hard cap on summed terms before declaring non-convergence.
pub const MAX_TERMS: usize = 2_000_000;

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Scalar, n: usize) -> Scalar {
    let mut acc = Scalar::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc = &acc * &term;
        term = &term + &Scalar::one();
    }
    acc
}

/// A truncated series value; `value.err()` already includes `tail_bound`.
#[derive(Clone, Debug)]
pub struct SeriesResult {
    pub value: Scalar,
    pub terms_used: usize,
    pub tail_bound: f64,
}

/// Interval data for one series parameter, used by the ratio bound.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ParamRange {
    /// upper bound of `|p|`
    pub abs_hi: f64,
    /// lower bound of `p`
    pub lo: f64,
}

impl ParamRange {
    pub(crate) fn of(x: &Scalar) -> ParamRange {
        let v = x.to_f64();
        let e = x.err().to_f64() + v.abs() * 1e-14 + 1e-300;
        ParamRange { abs_hi: v.abs() + e, lo: v - e }
    }

    pub(crate) fn exact(v: f64) -> ParamRange {
        ParamRange { abs_hi: v.abs(), lo: v }
    }
}

/// Upper bound of `sup_{k >= start} |z| prod |k + a_i| / prod (k + d_j)` where the
/// denominators `d_j` satisfy `start + d_j > 0`. Returns `None` when no finite
/// bound exists (more numerator than denominator factors, or a denominator
/// that may vanish).
///
/// Each numerator factor is paired with a denominator factor; `(k+α)/(k+δ)` is
/// monotone in `k`, so its supremum is either its value at `start` or the
/// limit 1. Unpaired denominators contribute `1/(start + δ)`.
pub(crate) fn ratio_sup(num: &[ParamRange], den: &[ParamRange], zabs: f64, start: f64) -> Option<f64> {
    if num.len() > den.len() {
        return None;
    }
    let mut bound = zabs;
    for (i, d) in den.iter().enumerate() {
        let low = start + d.lo;
        if low <= 0.0 {
            return None;
        }
        match num.get(i) {
            Some(a) => {
                let r = (start + a.abs_hi) / low;
                bound *= r.max(1.0);
            }
            None => bound /= low,
        }
    }
    Some(bound * (1.0 + 1e-12))
}

fn is_float_mode(xs: &[&Scalar]) -> Option<u32> {
    xs.iter().filter_map(|x| x.precision()).max()
}

/// Generalized hypergeometric series `Σ_k ∏(a_i)_k / ∏(b_j)_k · z^k / k!`.
///
/// Terminating series (some `a_i = -m`) are summed exactly, including in
/// exact mode. Otherwise terms are summed until the certified geometric tail
/// bound drops below `target_err`; this requires float inputs.
pub fn hyp_pfq(num: &[Scalar], den: &[Scalar], z: &Scalar, target_err: f64) -> Result<SeriesResult> {
    let truncation = num.iter().filter_map(Scalar::as_nonpositive_integer).min();
    for b in den {
        if let Some(m) = b.as_nonpositive_integer() {
            // (b)_k vanishes from k = m + 1 on; the series must stop before that.
            if truncation.is_none_or(|t| t > m) {
                return Err(Error::InvalidParameter(format!("denominator parameter {b} is a nonpositive integer")));
            }
        }
    }
    if z.is_zero() {
        let one = match is_float_mode(&num.iter().chain(den).chain([z]).collect::<Vec<_>>()) {
            Some(p) => Scalar::one().to_float(p),
            None => Scalar::one(),
        };
        return Ok(SeriesResult { value: one, terms_used: 1, tail_bound: 0.0 });
    }
    if let Some(m) = truncation {
        let (value, terms) = sum_terms(num, den, z, m as usize, |_, _| false);
        return Ok(SeriesResult { value, terms_used: terms, tail_bound: 0.0 });
    }

    let (p, q) = (num.len(), den.len());
    let zabs = z.to_f64().abs() + z.err().to_f64();
    if p > q + 1 {
        return Err(Error::DivergentSeries(format!("{p}F{q} with z != 0 diverges")));
    }
    if p == q + 1 && zabs >= 1.0 {
        return Err(Error::DivergentSeries(format!("{p}F{q} needs |z| < 1, got |z| <= {zabs}")));
    }
    let all: Vec<&Scalar> = num.iter().chain(den).chain([z]).collect();
    if is_float_mode(&all).is_none() {
        return Err(Error::ExactModeUnavailable("non-terminating hypergeometric series needs float inputs".into()));
    }

    let num_r: Vec<ParamRange> = num.iter().map(ParamRange::of).collect();
    // the k! in the term ratio contributes a (k + 1) denominator factor
    let den_r: Vec<ParamRange> = std::iter::once(ParamRange::exact(1.0)).chain(den.iter().map(ParamRange::of)).collect();
    let mut tail = f64::INFINITY;
    let (value, terms) = sum_terms(num, den, z, MAX_TERMS, |k, term| {
        let Some(r) = ratio_sup(&num_r, &den_r, zabs, k as f64) else {
            return false;
        };
        if r >= 1.0 {
            return false;
        }
        let t = term.abs_bound().to_f64();
        tail = t * r / (1.0 - r);
        tail <= target_err
    });
    if tail > target_err {
        return Err(Error::DivergentSeries(format!("no convergence to {target_err:e} within {MAX_TERMS} terms")));
    }
    let value = match value {
        Scalar::Float(b) => Scalar::Float(b.inflate(Mag::from_f64(tail))),
        exact => exact,
    };
    Ok(SeriesResult { value, terms_used: terms, tail_bound: tail })
}

// Sums terms t_0..t_K, stopping after t_K when `done(K, t_K)` or K == max_k.
fn sum_terms(num: &[Scalar], den: &[Scalar], z: &Scalar, max_k: usize, mut done: impl FnMut(usize, &Scalar) -> bool) -> (Scalar, usize) {
    let mut term = Scalar::one();
    let mut sum = Scalar::one();
    let mut k = 0usize;
    if done(0, &term) {
        return (sum, 1);
    }
    while k < max_k {
        let kk = Scalar::int(k as i64);
        let mut ratio = z / &Scalar::int(k as i64 + 1);
        for a in num {
            ratio = ratio * (a + &kk);
        }
        for b in den {
            ratio = ratio / (b + &kk);
        }
        term = &term * &ratio;
        k += 1;
        sum = &sum + &term;
        if term.is_zero() || done(k, &term) {
            break;
        }
    }
    (sum, k + 1)
}

fn gamma_ratio_integer_offset(top: &Scalar, bottom: &Scalar, offset: i64) -> Result<Scalar> {
    // Γ(top)/Γ(bottom) with top = bottom + offset
    if offset >= 0 {
        Ok(pochhammer(bottom, offset as usize))
    } else {
        pochhammer(top, (-offset) as usize).recip()
    }
}

fn small_integer(x: &Scalar) -> Option<i64> {
    x.as_integer()?.to_i64().filter(|v| v.abs() <= 100_000)
}

/// Γ(x) as a ball at `prec` bits. The MPFR value is correctly rounded; an
/// input radius is propagated to first order through |Γ'(x)| = |Γ(x) ψ(x)|,
/// doubled for slack.
pub fn gamma(x: &Scalar, prec: u32) -> Result<Scalar> {
    if let Some(m) = x.as_nonpositive_integer() {
        return Err(Error::PoleEncountered(format!("-{m}")));
    }
    let xf = x.to_big_float(prec);
    let g = Float::with_val(prec, xf.gamma_ref());
    let mut rad = Mag::from_float(&g).shl(-i64::from(prec));
    let input_err = x.err();
    if !input_err.is_zero() {
        let psi = Float::with_val(64, x.to_big_float(prec).digamma_ref());
        rad = rad.add(Mag::from_float(&g).mul(Mag::from_float(&psi)).mul(input_err).shl(1));
    }
    if !g.is_finite() {
        return Err(Error::PoleEncountered(x.to_string()));
    }
    Ok(Scalar::Float(Ball::new(g, rad)))
}

/// Gauss's sum ₂F₁(a, b; c; 1) = Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b)), valid for
/// c − a − b > 0.
///
/// When `a` or `b` is an integer the Gamma quotient collapses to rising
/// factorials and stays exact for exact inputs; a nonpositive integer `a` or
/// `b` terminates the series, which is then summed directly.
pub fn gauss_2f1_at_1(a: &Scalar, b: &Scalar, c: &Scalar, prec: u32) -> Result<Scalar> {
    let lift = |x: Scalar| -> Scalar {
        if a.is_exact() && b.is_exact() && c.is_exact() {
            x
        } else {
            x.to_float(prec)
        }
    };
    if a.is_zero() || b.is_zero() {
        return Ok(lift(Scalar::one()));
    }
    let excess = &(c - a) - b;
    if !excess.certainly_positive() {
        return Err(Error::DivergencePrecondition(format!("c - a - b = {excess} must be positive")));
    }
    if a.as_nonpositive_integer().is_some() || b.as_nonpositive_integer().is_some() {
        let target = 2f64.powi(-(prec as i32));
        let r = hyp_pfq(&[a.clone(), b.clone()], std::slice::from_ref(c), &Scalar::one(), target)?;
        return Ok(lift(r.value));
    }
    let c_minus_a = c - a;
    let c_minus_b = c - b;
    for (shift, x) in [(a, &c_minus_a), (b, &c_minus_b)] {
        if let Some(k) = small_integer(shift) {
            // pair Γ(c)/Γ(c−shift) and Γ(c−a−b)/Γ(c−a−b+shift)
            let other = if std::ptr::eq(shift, a) { &c_minus_b } else { &c_minus_a };
            let first = gamma_ratio_integer_offset(c, x, k)?;
            let second = gamma_ratio_integer_offset(&excess, other, -k)?;
            return Ok(lift(first * second));
        }
    }
    // a Gamma pole in the denominator makes the quotient vanish
    if c_minus_a.as_nonpositive_integer().is_some() || c_minus_b.as_nonpositive_integer().is_some() {
        return Ok(Scalar::zero().to_float(prec));
    }
    let work = prec + 32;
    let value = gamma(c, work)? * gamma(&excess, work)? / (gamma(&c_minus_a, work)? * gamma(&c_minus_b, work)?);
    Ok(value.to_float(prec))
}
