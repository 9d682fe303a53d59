//! Recurrence coefficients from moments: the O(N²) reference path.
//!
//! The monic orthogonal polynomials are carried as dense monomial
//! coefficient vectors. With `P_n = x^n + c_{n-1} x^{n-1} + ...`,
//!
//! ```text
//! h_n       = L[x^n P_n]
//! L[x P_n²] = L[x^{n+1} P_n] + c_{n-1} h_n
//! β_n = L[x P_n²] / h_n,   γ_n = h_n / h_{n-1}
//! ```
//!
//! so `β_N` needs `μ_0, ..., μ_{2N+1}`.

use crate::error::{Error, Result};
use crate::moments::{default_moments, MomentSequence};
use crate::numerics::{Arithmetic, Scalar};
use crate::weights::WeightSpec;

/// Which path produced a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Oracle,
    LfMeixner,
    LfGhahn1,
    LfHahn,
    ClosedForm,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::LfMeixner => "lf_meixner",
            Method::LfGhahn1 => "lf_ghahn1",
            Method::LfHahn => "lf_hahn",
            Method::ClosedForm => "closed_form",
        }
    }
}

/// `β_0..β_N`, `γ_0..γ_N` (with `γ_0 = 0`) and optionally `h_0..h_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceTable {
    pub beta: Vec<Scalar>,
    pub gamma: Vec<Scalar>,
    pub h: Option<Vec<Scalar>>,
    pub method: Method,
}

impl RecurrenceTable {
    /// Largest index `N` in the table.
    pub fn n_max(&self) -> usize {
        self.beta.len().saturating_sub(1)
    }

    /// Keeps entries `0..=n`.
    pub fn truncated(&self, n: usize) -> RecurrenceTable {
        let k = (n + 1).min(self.beta.len());
        RecurrenceTable {
            beta: self.beta[..k].to_vec(),
            gamma: self.gamma[..k].to_vec(),
            h: self.h.as_ref().map(|h| h[..k.min(h.len())].to_vec()),
            method: self.method,
        }
    }

    /// Upper bounds of `max_n |β_n - β'_n|` and `max_n |γ_n - γ'_n|` over the
    /// common range, including both tables' error radii.
    pub fn max_diff(&self, other: &RecurrenceTable) -> (f64, f64) {
        let diff = |a: &[Scalar], b: &[Scalar]| a.iter().zip(b).map(|(x, y)| (x - y).abs_bound().to_f64()).fold(0.0, f64::max);
        (diff(&self.beta, &other.beta), diff(&self.gamma, &other.gamma))
    }

    /// Largest error radius among the entries.
    pub fn max_err(&self) -> f64 {
        self.beta.iter().chain(&self.gamma).map(|v| v.err().to_f64()).fold(0.0, f64::max)
    }

    pub fn is_exact(&self) -> bool {
        self.beta.iter().chain(&self.gamma).all(Scalar::is_exact)
    }
}

/// `L[Σ c_k x^k] = Σ c_k μ_k`
pub fn functional_apply(mom: &MomentSequence, poly_coeffs: &[Scalar]) -> Result<Scalar> {
    if poly_coeffs.len() > mom.values.len() {
        return Err(Error::InsufficientMoments { needed: poly_coeffs.len(), available: mom.values.len() });
    }
    Ok(dot(poly_coeffs, &mom.values))
}

fn dot(c: &[Scalar], mu: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (a, b) in c.iter().zip(mu) {
        if !a.is_zero() {
            acc = &acc + &(a * b);
        }
    }
    acc
}

/// Multiplier on a float value's error radius below which `h_n` counts as
/// indeterminate.
const INDETERMINACY_FACTOR: f64 = 10.0;

fn check_h(h: &Scalar, n: usize) -> Result<()> {
    let bad = match h {
        Scalar::Exact(r) => r.is_zero(),
        Scalar::Float(_) => {
            let err = h.err();
            let mag = h.abs().to_f64();
            h.may_be_zero() || mag <= INDETERMINACY_FACTOR * err.to_f64() || (err.to_f64().is_infinite())
        }
    };
    if bad {
        Err(Error::QuasiDefiniteFailure { n })
    } else {
        Ok(())
    }
}

/// `β_0..β_N`, `γ_0..γ_N`, `h_0..h_N` from `μ_0..μ_{2N+1}`.
pub fn recurrence_from_moments(mom: &MomentSequence, n_max: usize) -> Result<RecurrenceTable> {
    let needed = 2 * n_max + 2;
    if mom.values.len() < needed {
        return Err(Error::InsufficientMoments { needed, available: mom.values.len() });
    }
    let mu = &mom.values;
    let mut beta = Vec::with_capacity(n_max + 1);
    let mut gamma = Vec::with_capacity(n_max + 1);
    let mut h = Vec::with_capacity(n_max + 1);
    // P_{n-1} and P_n, ascending monomial coefficients
    let mut prev: Vec<Scalar> = Vec::new();
    let mut cur: Vec<Scalar> = vec![Scalar::one()];
    for n in 0..=n_max {
        let hn = dot(&cur, &mu[n..]);
        check_h(&hn, n)?;
        let shifted = dot(&cur, &mu[n + 1..]);
        let sub = if n == 0 { Scalar::zero() } else { &cur[n - 1] * &hn };
        let bn = (shifted + sub) / &hn;
        let gn = if n == 0 { Scalar::zero() } else { &hn / &h[n - 1] };
        if n < n_max {
            // P_{n+1} = (x - β_n) P_n - γ_n P_{n-1}
            let mut next = vec![Scalar::zero(); n + 2];
            for (k, c) in cur.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(&bn * c);
            }
            if n > 0 {
                for (k, c) in prev.iter().enumerate() {
                    next[k] = &next[k] - &(&gn * c);
                }
            }
            prev = std::mem::replace(&mut cur, next);
        }
        beta.push(bn);
        gamma.push(gn);
        h.push(hn);
    }
    Ok(RecurrenceTable { beta, gamma, h: Some(h), method: Method::Oracle })
}

/// Largest float precision tried before giving up.
pub const MAX_ORACLE_PRECISION: u32 = 1 << 16;

/// Moments plus [`recurrence_from_moments`] for a weight.
///
/// In float mode the precision starts at the requested value and doubles
/// while the functional looks indeterminate or the largest error radius
/// exceeds `max_err`. Exact mode runs once.
pub fn oracle_table(spec: &WeightSpec, n_max: usize, arith: Arithmetic, max_err: f64) -> Result<RecurrenceTable> {
    let Arithmetic::Float { mut prec } = arith else {
        let mom = default_moments(spec, 2 * n_max + 1, arith)?;
        return recurrence_from_moments(&mom, n_max);
    };
    loop {
        let attempt = default_moments(spec, 2 * n_max + 1, Arithmetic::float(prec)).and_then(|mom| recurrence_from_moments(&mom, n_max));
        let escalate = prec < MAX_ORACLE_PRECISION;
        match attempt {
            Ok(t) if t.max_err() <= max_err || !escalate => return Ok(t),
            Err(e) if !(e.is_numerical_failure() && escalate) => return Err(e),
            _ => prec *= 2,
        }
    }
}
