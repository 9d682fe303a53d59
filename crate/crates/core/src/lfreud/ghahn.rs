//! Generalized Hahn polynomials of type I: `ρ(x) = (a₁)_x (a₂)_x / (b+1)_x · z^x / x!`.
//!
//! The Laguerre-Freud system in `u_n = β_n + β_{n-1} - n + b + 1` and
//! `v_n = β_n + β_{n-1} + n - 1 + a₁ + a₂` reads
//!
//! ```text
//! (1-z) ∇(γ_{n+1} + γ_n) = z v_n ∇(β_n + n) - u_n ∇(β_n - n)            (first)
//! Δ∇[(u_n - z v_n) γ_n] = u_n ∇(β_n - n) + ∇(γ_{n+1} + γ_n)             (second)
//! ```
//!
//! The engine does not step the second equation. It carries the auxiliary
//! band coefficient `A_0(n)` through
//!
//! ```text
//! A_0(n)  = (u_{n+1} - z v_{n+1}) γ_{n+1} - (u_n - z v_n) γ_n
//! ∇A_0(n) = u_n ∇(β_n - n) + ∇(γ_{n+1} + γ_n)
//! A_0(0)  = β_0² + b β_0 + γ_1
//! ```
//!
//! and solves the first relation (linear in `β_{n+1}`) for the next `β`, so
//! the second equation remains an independent check.

use super::{arithmetic_of, lift_all, one_minus_z, quasi_definite};
use crate::error::{Error, Result};
use crate::numerics::{hyp_pfq, Arithmetic, Scalar};
use crate::oracle::{Method, RecurrenceTable};

#[derive(Clone, Debug, PartialEq)]
pub struct GHahnParams {
    pub a1: Scalar,
    pub a2: Scalar,
    pub b: Scalar,
    pub z: Scalar,
}

impl GHahnParams {
    pub fn new(a1: Scalar, a2: Scalar, b: Scalar, z: Scalar) -> GHahnParams {
        GHahnParams { a1, a2, b, z }
    }

    fn lift(&self, arith: Arithmetic) -> Result<GHahnParams> {
        let [a1, a2, b, z] = lift_all(arith, [&self.a1, &self.a2, &self.b, &self.z])?;
        Ok(GHahnParams { a1, a2, b, z })
    }

    fn sum_a(&self) -> Scalar {
        &self.a1 + &self.a2
    }

    fn u(&self, n: usize, beta_n: &Scalar, beta_prev: &Scalar) -> Scalar {
        &(&(beta_n + beta_prev) - &Scalar::int(n as i64)) + &(&self.b + &Scalar::one())
    }

    fn v(&self, n: usize, beta_n: &Scalar, beta_prev: &Scalar) -> Scalar {
        &(beta_n + beta_prev) + &(&Scalar::int(n as i64 - 1) + &self.sum_a())
    }
}

/// One step of the engine: `(β_{n-1}, β_n)`, `(γ_{n-1}, γ_n)` and `A_0(n-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GHahnState {
    pub n: usize,
    pub beta_prev: Scalar,
    pub beta_cur: Scalar,
    pub gamma_prev: Scalar,
    pub gamma_cur: Scalar,
    pub a0_prev: Scalar,
}

/// `γ_1 = [(a₁+a₂-b)β_0 + a₁a₂]/(1-z) - (β_0+a₁)(β_0+a₂)`
pub fn ghahn_seed_gamma1(p: &GHahnParams, beta0: &Scalar) -> Result<Scalar> {
    let omz = one_minus_z(&p.z)?;
    let num = &(&(&p.sum_a() - &p.b) * beta0) + &(&p.a1 * &p.a2);
    Ok(&(num / &omz) - &(&(beta0 + &p.a1) * &(beta0 + &p.a2)))
}

/// `β_0 = μ_1/μ_0 = z a₁a₂/(b+1) · ₂F₁(a₁+1, a₂+1; b+2; z) / ₂F₁(a₁, a₂; b+1; z)`.
///
/// Exact inputs give an exact value only when the series terminate (finite
/// support); otherwise float arithmetic is required.
pub fn ghahn_seed_beta0(p: &GHahnParams, arith: Arithmetic) -> Result<Scalar> {
    let p = p.lift(arith)?;
    let one = Scalar::one();
    let target = match arith {
        Arithmetic::Exact => 0.0,
        Arithmetic::Float { prec } => 2f64.powi(-(prec as i32 + 16).min(1060)),
    };
    let seed_err = |e: Error| match e {
        Error::DivergentSeries(m) | Error::InvalidParameter(m) => Error::SeedFailure(m),
        Error::ExactModeUnavailable(_) => {
            Error::ExactModeUnavailable("seed β_0 = μ_1/μ_0 is a non-terminating hypergeometric ratio".into())
        }
        other => other,
    };
    let b1 = &p.b + &one;
    let mu0 = hyp_pfq(&[p.a1.clone(), p.a2.clone()], std::slice::from_ref(&b1), &p.z, target).map_err(seed_err)?;
    let mu1 = hyp_pfq(&[&p.a1 + &one, &p.a2 + &one], &[&b1 + &one], &p.z, target).map_err(seed_err)?;
    let lead = (&(&p.z * &p.a1) * &p.a2).checked_div(&b1).map_err(|e| Error::SeedFailure(e.to_string()))?;
    (lead * mu1.value).checked_div(&mu0.value).map_err(|e| Error::SeedFailure(e.to_string()))
}

// Float values within INDETERMINACY of their radius count as zero.
fn singular(x: &Scalar) -> bool {
    x.may_be_zero() || (!x.is_exact() && x.abs().to_f64() <= 10.0 * x.err().to_f64())
}

/// Steps the system from `β_0`, `γ_1` (computed from the moments when
/// `seeds` is `None`) up to `β_N`, `γ_N`.
///
/// Arithmetic follows the parameters and seeds: exact when all are exact,
/// float otherwise. `arith` sets the mode for automatic seeds.
pub fn ghahn_lf_run(p: &GHahnParams, n_max: usize, seeds: Option<(Scalar, Scalar)>, arith: Arithmetic) -> Result<RecurrenceTable> {
    let omz = one_minus_z(&p.z)?;
    let (beta0, gamma1) = match seeds {
        Some(s) => s,
        None => {
            let b0 = ghahn_seed_beta0(p, arith)?;
            let g1 = ghahn_seed_gamma1(&p.lift(arith)?, &b0)?;
            (b0, g1)
        }
    };
    let work = arithmetic_of(&[&p.a1, &p.a2, &p.b, &p.z, &beta0, &gamma1]);
    let p = p.lift(work)?;
    let omz = work.lift(&omz)?;
    let [beta0, gamma1] = lift_all(work, [&beta0, &gamma1])?;

    let mut beta = vec![beta0.clone()];
    let mut gamma = vec![Scalar::zero()];
    if n_max == 0 {
        return quasi_definite(table(beta, gamma));
    }
    if singular(&gamma1) {
        return Err(Error::SingularRun { n: 1 });
    }
    gamma.push(gamma1.clone());
    let sum_a = p.sum_a();

    // β_1 from A_0(0) = (u_1 - z v_1) γ_1, u_1 - z v_1 = (1-z)(β_1+β_0) + b - z(a₁+a₂)
    let mut a0 = &(&(&beta0 * &beta0) + &(&p.b * &beta0)) + &gamma1;
    let pair = &(&(&(&a0 / &gamma1) - &p.b) + &(&p.z * &sum_a)) / &omz;
    beta.push(&pair - &beta0);

    for n in 1..n_max {
        let (bn, bp) = (&beta[n], &beta[n - 1]);
        let (gn, gp) = (&gamma[n], &gamma[n - 1]);
        let u = p.u(n, bn, bp);
        let v = p.v(n, bn, bp);
        let d = bn - bp;
        let one = Scalar::one();
        let zv = &p.z * &v;
        let g_next = gp + &(&(&(&zv * &(&d + &one)) - &(&u * &(&d - &one))) / &omz);
        if singular(&g_next) {
            return Err(Error::SingularRun { n: n + 1 });
        }
        a0 = &(&a0 + &(&u * &(&d - &one))) + &(&g_next - gp);
        // (1-z)(β_{n+1}+β_n) + (b-n) - z(n+a₁+a₂) = (A_0(n) + (u_n - z v_n)γ_n)/γ_{n+1}
        let ns = Scalar::int(n as i64);
        let rhs = &(&a0 + &(&(&u - &zv) * gn)) / &g_next;
        let pair = &(&(&rhs - &(&p.b - &ns)) + &(&p.z * &(&ns + &sum_a))) / &omz;
        let b_next = &pair - bn;
        beta.push(b_next);
        gamma.push(g_next);
    }
    quasi_definite(table(beta, gamma))
}

fn table(beta: Vec<Scalar>, gamma: Vec<Scalar>) -> RecurrenceTable {
    RecurrenceTable { beta, gamma, h: None, method: Method::LfGhahn1 }
}

fn check_len(t: &RecurrenceTable) -> usize {
    t.beta.len().min(t.gamma.len())
}

/// Residuals of the first equation at `n = 1..N-1`.
pub fn first_lf_residuals(p: &GHahnParams, t: &RecurrenceTable) -> Vec<Scalar> {
    let len = check_len(t);
    let omz = &Scalar::one() - &p.z;
    let one = Scalar::one();
    (1..len.saturating_sub(1))
        .map(|n| {
            let (bn, bp) = (&t.beta[n], &t.beta[n - 1]);
            let u = p.u(n, bn, bp);
            let v = p.v(n, bn, bp);
            let d = bn - bp;
            let lhs = &omz * &(&t.gamma[n + 1] - &t.gamma[n - 1]);
            let rhs = &(&(&p.z * &v) * &(&d + &one)) - &(&u * &(&d - &one));
            lhs - rhs
        })
        .collect()
}

/// Residuals of the second equation at `n = 1..N-1` (with `γ_0 = 0`, the
/// `n = 0` term of `(u_n - z v_n) γ_n` vanishes).
pub fn second_lf_residuals(p: &GHahnParams, t: &RecurrenceTable) -> Vec<Scalar> {
    let len = check_len(t);
    let one = Scalar::one();
    let w = |m: usize| -> Scalar {
        if m == 0 {
            return Scalar::zero();
        }
        let (bm, bp) = (&t.beta[m], &t.beta[m - 1]);
        &(&p.u(m, bm, bp) - &(&p.z * &p.v(m, bm, bp))) * &t.gamma[m]
    };
    (1..len.saturating_sub(1))
        .map(|n| {
            let (bn, bp) = (&t.beta[n], &t.beta[n - 1]);
            let u = p.u(n, bn, bp);
            let wn = w(n);
            let lhs = &(&w(n + 1) - &(&wn + &wn)) + &w(n - 1);
            let rhs = &(&u * &(&(bn - bp) - &one)) + &(&t.gamma[n + 1] - &t.gamma[n - 1]);
            lhs - rhs
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_table;
    use crate::weights::WeightSpec;

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn p1111() -> GHahnParams {
        GHahnParams::new(r(1, 1), r(1, 1), r(1, 1), r(1, 2))
    }

    #[test]
    fn seeds_at_unit_parameters() {
        let b0 = ghahn_seed_beta0(&p1111(), Arithmetic::float(256)).unwrap();
        assert!((b0.to_f64() - (1.0 / std::f64::consts::LN_2 - 1.0)).abs() < 1e-15);
        let g1 = ghahn_seed_gamma1(&p1111(), &b0).unwrap();
        assert!((g1.to_f64() - 0.804_021_1).abs() < 1e-7);
        // A_0(0) = β_0² + bβ_0 + γ_1 = β_0 + 1 = 1/ln 2 here
        let a0 = &(&(&b0 * &b0) + &b0) + &g1;
        assert!((a0.to_f64() - std::f64::consts::LOG2_E).abs() < 1e-7);
    }

    #[test]
    fn seed_gamma_vanishes() {
        // β_0 = -a₁ and b = a₁ make both terms vanish
        let p = GHahnParams::new(r(2, 1), r(1, 1), r(2, 1), r(1, 3));
        assert_eq!(ghahn_seed_gamma1(&p, &r(-2, 1)).unwrap(), Scalar::zero());
    }

    #[test]
    fn exact_seed_needs_terminating_series() {
        assert!(matches!(ghahn_seed_beta0(&p1111(), Arithmetic::Exact), Err(Error::ExactModeUnavailable(_))));
        let fin = GHahnParams::new(r(1, 1), r(-3, 1), r(1, 2), r(1, 3));
        assert!(ghahn_seed_beta0(&fin, Arithmetic::Exact).unwrap().is_exact());
        let bad = GHahnParams::new(r(1, 1), r(1, 1), r(1, 1), r(3, 2));
        assert!(matches!(ghahn_seed_beta0(&bad, Arithmetic::float(128)), Err(Error::SeedFailure(_))));
    }

    #[test]
    fn second_step_matches_oracle() {
        let t = ghahn_lf_run(&p1111(), 3, None, Arithmetic::float(256)).unwrap();
        assert!((t.beta[1].to_f64() - 3.146_004_4).abs() < 1e-6);
        assert!((t.gamma[2].to_f64() - 5.064_733_5).abs() < 1e-6);
    }

    #[test]
    fn rejects_z_one() {
        let p = GHahnParams::new(r(1, 1), r(1, 1), r(11, 2), r(1, 1));
        assert!(matches!(ghahn_lf_run(&p, 3, None, Arithmetic::float(128)), Err(Error::InvalidZ(_))));
    }

    #[test]
    fn finite_support_exact_run_matches_oracle() {
        let (a1, a2, b, z) = (r(1, 1), r(-6, 1), r(1, 2), r(1, 3));
        let p = GHahnParams::new(a1.clone(), a2.clone(), b.clone(), z.clone());
        let lf = ghahn_lf_run(&p, 5, None, Arithmetic::Exact).unwrap();
        assert!(lf.is_exact());
        let spec = WeightSpec::ghahn1(a1, a2, b, z).unwrap();
        let or = oracle_table(&spec, 5, Arithmetic::Exact, 0.0).unwrap();
        assert_eq!(lf.beta, or.beta);
        assert_eq!(lf.gamma, or.gamma);
        assert!(first_lf_residuals(&p, &lf).iter().all(Scalar::is_zero));
        assert!(second_lf_residuals(&p, &lf).iter().all(Scalar::is_zero));
    }

    #[test]
    fn singular_run_is_reported() {
        let p = GHahnParams::new(r(1, 1), r(1, 1), r(1, 1), r(1, 2));
        assert_eq!(ghahn_lf_run(&p, 4, Some((r(1, 1), r(0, 1))), Arithmetic::Exact), Err(Error::SingularRun { n: 1 }));
    }
}
