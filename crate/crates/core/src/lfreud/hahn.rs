//! Hahn polynomials: the generalized Hahn weight at `z = 1`. The two
//! Laguerre-Freud equations decouple; with `K = a₁ + a₂ - b`,
//!
//! ```text
//! β_n = [(2n+K-4) β_{n-1} - (a₁+a₂+b)] / (2n+K)
//! (b-a₁-a₂-2n-1) γ_{n+1} + (K+2n-3) γ_n + (K+1) γ_1
//!     = -Σ_{k<n} β_k + β_n² - β_0² + b(β_n - β_0 - n) - nβ_n + n(n-1)/2
//! ```

use super::{arithmetic_of, lift_all, quasi_definite};
use crate::error::{Error, Result};
use crate::numerics::Scalar;
use crate::oracle::{Method, RecurrenceTable};

fn nonzero(x: Scalar, n: usize) -> Result<Scalar> {
    if x.may_be_zero() {
        Err(Error::DegenerateParameters { n })
    } else {
        Ok(x)
    }
}

/// `β_0 = a₁a₂/(b - a₁ - a₂)`
pub fn hahn_beta0(a1: &Scalar, a2: &Scalar, b: &Scalar) -> Result<Scalar> {
    let den = nonzero(&(b - a1) - a2, 0)?;
    Ok(&(a1 * a2) / &den)
}

/// `γ_1 = a₁a₂(b-a₁)(b-a₂) / ((b-a₁-a₂)² (b-a₁-a₂-1))`
pub fn hahn_gamma1(a1: &Scalar, a2: &Scalar, b: &Scalar) -> Result<Scalar> {
    let s = &(b - a1) - a2;
    let den = nonzero(&(&s * &s) * &(&s - &Scalar::one()), 1)?;
    Ok(&(&(a1 * a2) * &(&(b - a1) * &(b - a2))) / &den)
}

fn params(a1: &Scalar, a2: &Scalar, b: &Scalar) -> Result<[Scalar; 3]> {
    lift_all(arithmetic_of(&[a1, a2, b]), [a1, a2, b])
}

/// Closed forms, `n ≥ 1`:
///
/// ```text
/// β_n = [(b+2-a₁-a₂) a₁a₂ - n(a₁+a₂+b)(n+a₁+a₂-b-1)] / ((2n+K)(2n+K-2))
/// γ_n = -n(n+a₁-1)(n+a₂-1)(n+a₁-b-1)(n+a₂-b-1)(n+K-2)
///       / ((2n+K-1)(2n+K-3)(2n+K-2)²)
/// ```
///
/// `β_0` and `γ_1` come from their seed formulas, which avoid the removable
/// 0/0 cases of the general display.
pub fn hahn_closed_form(a1: &Scalar, a2: &Scalar, b: &Scalar, n_max: usize) -> Result<RecurrenceTable> {
    let [a1, a2, b] = params(a1, a2, b)?;
    let one = Scalar::one();
    let k = &(&a1 + &a2) - &b;
    let mut beta = vec![hahn_beta0(&a1, &a2, &b)?];
    let mut gamma = vec![Scalar::zero()];
    let lead = &(&(&b + &Scalar::int(2)) - &(&a1 + &a2)) * &(&a1 * &a2);
    let sab = &(&a1 + &a2) + &b;
    for n in 1..=n_max {
        let ns = Scalar::int(n as i64);
        let two_n_k = &Scalar::int(2 * n as i64) + &k;
        let den = nonzero(&two_n_k * &(&two_n_k - &Scalar::int(2)), n)?;
        let num = &lead - &(&(&ns * &sab) * &(&(&ns + &k) - &one));
        beta.push(num / den);
        if n == 1 {
            gamma.push(hahn_gamma1(&a1, &a2, &b)?);
            continue;
        }
        let m1 = &two_n_k - &Scalar::int(2);
        let den = nonzero(&(&(&two_n_k - &one) * &(&two_n_k - &Scalar::int(3))) * &(&m1 * &m1), n)?;
        let nm1 = &ns - &one;
        let num = &(&(&(&ns * &(&nm1 + &a1)) * &(&nm1 + &a2)) * &(&(&nm1 + &a1) - &b))
            * &(&(&(&nm1 + &a2) - &b) * &(&(&ns + &k) - &Scalar::int(2)));
        gamma.push(-(num / den));
    }
    quasi_definite(RecurrenceTable { beta, gamma, h: None, method: Method::ClosedForm })
}

/// The decoupled recursions, O(N) with a running sum of `β`.
pub fn hahn_lf_run(a1: &Scalar, a2: &Scalar, b: &Scalar, n_max: usize) -> Result<RecurrenceTable> {
    let [a1, a2, b] = params(a1, a2, b)?;
    let one = Scalar::one();
    let k = &(&a1 + &a2) - &b;
    let sab = &(&a1 + &a2) + &b;
    let beta0 = hahn_beta0(&a1, &a2, &b)?;
    let mut beta = vec![beta0.clone()];
    for n in 1..=n_max {
        let two_n_k = &Scalar::int(2 * n as i64) + &k;
        let den = nonzero(two_n_k.clone(), n)?;
        let num = &(&(&two_n_k - &Scalar::int(4)) * &beta[n - 1]) - &sab;
        beta.push(num / den);
    }
    let mut gamma = vec![Scalar::zero()];
    if n_max == 0 {
        return quasi_definite(table(beta, gamma));
    }
    let gamma1 = hahn_gamma1(&a1, &a2, &b)?;
    gamma.push(gamma1.clone());
    let b0sq = &beta0 * &beta0;
    let k1_g1 = &(&k + &one) * &gamma1;
    let mut beta_sum = Scalar::zero();
    for n in 1..n_max {
        beta_sum = &beta_sum + &beta[n - 1];
        let ns = Scalar::int(n as i64);
        let bn = &beta[n];
        let rhs = &(&(&(&(bn * bn) - &b0sq) - &beta_sum) + &(&b * &(&(bn - &beta0) - &ns)))
            + &(&Scalar::ratio((n * (n - 1)) as i64, 2) - &(&ns * bn));
        let coeff_n = &(&k + &Scalar::int(2 * n as i64)) - &Scalar::int(3);
        let lhs_rest = &(&coeff_n * &gamma[n]) + &k1_g1;
        let den = nonzero(&(&(&b - &a1) - &a2) - &Scalar::int(2 * n as i64 + 1), n)?;
        gamma.push((rhs - lhs_rest) / den);
    }
    quasi_definite(table(beta, gamma))
}

fn table(beta: Vec<Scalar>, gamma: Vec<Scalar>) -> RecurrenceTable {
    RecurrenceTable { beta, gamma, h: None, method: Method::LfHahn }
}

/// Residuals of the first-order `β` recursion at `n = 1..N`.
pub fn beta_recursion_residuals(a1: &Scalar, a2: &Scalar, b: &Scalar, t: &RecurrenceTable) -> Vec<Scalar> {
    let k = &(a1 + a2) - b;
    let sab = &(a1 + a2) + b;
    (1..t.beta.len())
        .map(|n| {
            let two_n_k = &Scalar::int(2 * n as i64) + &k;
            &(&two_n_k * &t.beta[n]) - &(&(&(&two_n_k - &Scalar::int(4)) * &t.beta[n - 1]) - &sab)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Arithmetic;
    use crate::oracle::oracle_table;
    use crate::weights::WeightSpec;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn stops_past_finite_support() {
        let (a1, a2, b) = (Scalar::int(1), Scalar::int(-4), Scalar::int(-5));
        assert_eq!(hahn_lf_run(&a1, &a2, &b, 5), Err(Error::QuasiDefiniteFailure { n: 5 }));
        assert_eq!(hahn_closed_form(&a1, &a2, &b, 5), Err(Error::QuasiDefiniteFailure { n: 5 }));
        assert!(hahn_lf_run(&a1, &a2, &b, 4).is_ok());
    }

    #[test]
    fn discrete_chebyshev() {
        let (a1, a2, b) = (r(1, 1), r(-4, 1), r(-5, 1));
        let cf = hahn_closed_form(&a1, &a2, &b, 4).unwrap();
        let lf = hahn_lf_run(&a1, &a2, &b, 4).unwrap();
        assert_eq!(cf.beta, vec![Scalar::int(2); 5]);
        assert_eq!(cf.gamma, vec![r(0, 1), r(2, 1), r(7, 5), r(36, 35), r(4, 7)]);
        assert_eq!(lf.beta, cf.beta);
        assert_eq!(lf.gamma, cf.gamma);
        // n²((N+1)² - n²)/(4(4n² - 1)) with N = 4
        for n in 1..=4i64 {
            assert_eq!(cf.gamma[n as usize], r(n * n * (25 - n * n), 4 * (4 * n * n - 1)));
        }
    }

    #[test]
    fn seeds() {
        assert_eq!(hahn_beta0(&r(1, 1), &r(1, 1), &r(11, 2)).unwrap(), r(2, 7));
        assert_eq!(hahn_beta0(&r(1, 1), &r(1, 1), &r(9, 2)).unwrap(), r(2, 5));
        // (3.5)²/((2.5)²·1.5)
        assert_eq!(hahn_gamma1(&r(1, 1), &r(1, 1), &r(9, 2)).unwrap(), r(98, 75));
        assert_eq!(hahn_gamma1(&r(1, 1), &r(1, 1), &r(11, 2)).unwrap(), r(162, 245));
        assert_eq!(hahn_beta0(&r(1, 1), &r(1, 1), &r(2, 1)), Err(Error::DegenerateParameters { n: 0 }));
        assert_eq!(hahn_gamma1(&r(1, 1), &r(1, 1), &r(3, 1)), Err(Error::DegenerateParameters { n: 1 }));
    }

    #[test]
    fn matches_oracle_on_limited_moments() {
        let (a1, a2, b) = (r(1, 2), r(1, 3), r(23, 2));
        let spec = WeightSpec::hahn(a1.clone(), a2.clone(), b.clone()).unwrap();
        let or = oracle_table(&spec, 4, Arithmetic::Exact, 0.0).unwrap();
        let lf = hahn_lf_run(&a1, &a2, &b, 4).unwrap();
        assert_eq!(lf.beta, or.beta);
        assert_eq!(lf.gamma, or.gamma);
    }

    fn param() -> impl Strategy<Value = Scalar> {
        (-30i64..30, 1i64..7).prop_map(|(n, d)| r(n, d))
    }

    proptest! {
        #[test]
        fn closed_beta_solves_recursion((a1, a2, b) in (param(), param(), param())) {
            if let Ok(cf) = hahn_closed_form(&a1, &a2, &b, 20) {
                prop_assert!(beta_recursion_residuals(&a1, &a2, &b, &cf).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn lf_equals_closed_form((a1, a2, b) in (param(), param(), param())) {
            if let (Ok(cf), Ok(lf)) = (hahn_closed_form(&a1, &a2, &b, 15), hahn_lf_run(&a1, &a2, &b, 15)) {
                prop_assert_eq!(cf.beta, lf.beta);
                prop_assert_eq!(cf.gamma, lf.gamma);
            }
        }
    }
}
