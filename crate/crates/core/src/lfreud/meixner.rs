use super::{one_minus_z, quasi_definite};
use crate::error::Result;
use crate::numerics::Scalar;
use crate::oracle::{Method, RecurrenceTable};

/// `β_n = (n + (n+a)z)/(1-z)`, `γ_n = n(n+a-1)z/(1-z)²`.
pub fn meixner_closed_form(a: &Scalar, z: &Scalar, n_max: usize) -> Result<RecurrenceTable> {
    let omz = one_minus_z(z)?;
    let omz2 = &omz * &omz;
    let mut beta = Vec::with_capacity(n_max + 1);
    let mut gamma = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let n = Scalar::int(n as i64);
        beta.push((&n + &(&(&n + a) * z)) / &omz);
        gamma.push(&(&n * &(&(&n + a) - &Scalar::one())) * z / &omz2);
    }
    quasi_definite(RecurrenceTable { beta, gamma, h: None, method: Method::ClosedForm })
}

/// Iterates the summed structure relations from the seeds
/// `β_0 = az/(1-z)`, `γ_1 = az/(1-z)²`:
///
/// ```text
/// β_{n+1} = β_n + (1+z)/(1-z)
/// γ_{n+1} = γ_n + γ_1 + 2nz/(1-z)²
/// ```
pub fn meixner_lf_run(a: &Scalar, z: &Scalar, n_max: usize) -> Result<RecurrenceTable> {
    let omz = one_minus_z(z)?;
    let omz2 = &omz * &omz;
    let slope = (&Scalar::one() + z) / &omz;
    let step = &(z + z) / &omz2;
    let beta0 = &(a * z) / &omz;
    let gamma1 = &(a * z) / &omz2;
    let mut beta = vec![beta0];
    let mut gamma = vec![Scalar::zero()];
    if n_max >= 1 {
        gamma.push(gamma1.clone());
    }
    for n in 1..=n_max {
        let b = &beta[n - 1] + &slope;
        beta.push(b);
    }
    // increment γ_{n+1} - γ_n, starting at n = 1
    let mut inc = &gamma1 + &step;
    for n in 1..n_max {
        let g = &gamma[n] + &inc;
        gamma.push(g);
        inc = &inc + &step;
    }
    quasi_definite(RecurrenceTable { beta, gamma, h: None, method: Method::LfMeixner })
}
