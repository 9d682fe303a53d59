//! O(N) engines for the recurrence coefficients: Meixner, generalized Hahn
//! of type I (`|z| < 1`) and Hahn (`z = 1`), each with its closed form where
//! one exists.

mod ghahn;
mod hahn;
mod meixner;

pub use ghahn::{first_lf_residuals, ghahn_lf_run, ghahn_seed_beta0, ghahn_seed_gamma1, second_lf_residuals, GHahnParams, GHahnState};
pub use hahn::{beta_recursion_residuals, hahn_beta0, hahn_closed_form, hahn_gamma1, hahn_lf_run};
pub use meixner::{meixner_closed_form, meixner_lf_run};

use crate::error::{Error, Result};
use crate::numerics::{Arithmetic, Scalar};
use crate::oracle::RecurrenceTable;

/// Rejects a table with `γ_n = 0` for some `n >= 1`: then `h_n = 0` and
/// `β_n` is not defined by the functional.
pub(crate) fn quasi_definite(t: RecurrenceTable) -> Result<RecurrenceTable> {
    match t.gamma.iter().skip(1).position(Scalar::is_zero) {
        Some(i) => Err(Error::QuasiDefiniteFailure { n: i + 1 }),
        None => Ok(t),
    }
}

/// `1 - z`, rejecting `z = 0` and `z = 1`.
pub(crate) fn one_minus_z(z: &Scalar) -> Result<Scalar> {
    let omz = &Scalar::one() - z;
    if z.may_be_zero() || omz.may_be_zero() {
        return Err(Error::InvalidZ(z.to_string()));
    }
    Ok(omz)
}

pub(crate) fn lift_all<const K: usize>(arith: Arithmetic, xs: [&Scalar; K]) -> Result<[Scalar; K]> {
    let mut out: [Scalar; K] = std::array::from_fn(|_| Scalar::zero());
    for (o, x) in out.iter_mut().zip(xs) {
        *o = arith.lift(x)?;
    }
    Ok(out)
}

/// Arithmetic implied by a set of inputs: exact if all are exact, otherwise
/// float at the highest precision present.
pub(crate) fn arithmetic_of(xs: &[&Scalar]) -> Arithmetic {
    match xs.iter().filter_map(|x| x.precision()).max() {
        Some(p) => Arithmetic::float(p),
        None => Arithmetic::Exact,
    }
}
