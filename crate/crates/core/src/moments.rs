//! Moment sequences `μ_n = Σ_x x^n ρ(x)`.
//!
//! The main route instantiates the Pearson identity `L[λ π] = L[φ π(x-1)]` at
//! `π = x^n`, which links `μ_0, ..., μ_{n+d}` (`d = max(p, q+1)`) and
//! determines the highest unknown moment from lower ones. Direct weighted
//! summation provides seeds and an independent cross-check.

use crate::error::{Error, Result};
use crate::numerics::{gauss_2f1_at_1, Arithmetic, Mag, Scalar};
use crate::weights::{classify_convergence, pearson_data, Convergence, PearsonData, TailRatio, WeightIter, WeightSpec};
use rug::Integer;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentSource {
    PearsonRecurrence,
    DirectSum,
    GammaRatio,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence {
    pub values: Vec<Scalar>,
    /// values are `ν_n = μ_n / μ_0`
    pub normalized: bool,
    pub source: MomentSource,
}

impl MomentSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Per-entry absolute error bounds (zero for exact values).
    pub fn err_bounds(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.err().to_f64()).collect()
    }

    /// Divides every entry by `μ_0`.
    pub fn normalize(self) -> Result<MomentSequence> {
        if self.normalized {
            return Ok(self);
        }
        let Some(mu0) = self.values.first().cloned() else {
            return Ok(MomentSequence { normalized: true, ..self });
        };
        if mu0.may_be_zero() {
            return Err(Error::QuasiDefiniteFailure { n: 0 });
        }
        Ok(MomentSequence { values: self.values.iter().map(|v| v / &mu0).collect(), normalized: true, source: self.source })
    }

    /// Multiplies every entry by `c` (the result is not normalized).
    pub fn scaled(&self, c: &Scalar) -> MomentSequence {
        MomentSequence { values: self.values.iter().map(|v| v * c).collect(), normalized: false, source: self.source }
    }
}

/// Number of seed moments the Pearson recurrence needs: `d = max(p, q+1)`,
/// one less when the leading coefficients of `λ` and `φ` cancel (`p = q+1`,
/// `z = 1`).
pub fn recurrence_order(pd: &PearsonData) -> usize {
    let d = pd.lambda.len().max(pd.phi.len()) - 1;
    if (pd.lambda.coeff(d) - pd.phi.coeff(d)).is_zero() {
        d - 1
    } else {
        d
    }
}

// Coefficients c_0..c_{n+d} of Σ c_m μ_m = 0, the Pearson identity at π = x^n.
// `binom` holds C(n, 0..=n).
fn relation_coeffs(pd: &PearsonData, n: usize, binom: &[Integer]) -> Vec<Scalar> {
    let d = pd.lambda.len().max(pd.phi.len()) - 1;
    let mut c = vec![Scalar::zero(); n + d + 1];
    for (i, l) in pd.lambda.coeffs().iter().enumerate() {
        c[n + i] = &c[n + i] + l;
    }
    for (j, f) in pd.phi.coeffs().iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        for (k, bk) in binom.iter().enumerate() {
            let term = f * &Scalar::from(bk.clone());
            // (x - 1)^n = Σ C(n,k) (-1)^(n-k) x^k
            c[k + j] = if (n - k).is_multiple_of(2) { &c[k + j] - &term } else { &c[k + j] + &term };
        }
    }
    c
}

fn next_binomial_row(row: &mut Vec<Integer>) {
    row.push(Integer::from(1));
    for k in (1..row.len() - 1).rev() {
        let prev = row[k - 1].clone();
        row[k] += prev;
    }
}

/// `μ_0, ..., μ_N` from `s` seed moments, where `s` is [`recurrence_order`]
/// (Meixner 1, generalized Hahn 2, Hahn 1). The seeds' arithmetic carries
/// through; with exact parameters and exact seeds the result is exact.
pub fn moments_pearson(spec: &WeightSpec, n_max: usize, seeds: &[Scalar]) -> Result<MomentSequence> {
    let pd = pearson_data(spec);
    let s = recurrence_order(&pd);
    if seeds.len() != s {
        return Err(Error::SeedCountMismatch { expected: s, got: seeds.len() });
    }
    if let Some(m) = classify_convergence(spec)?.max_order() {
        if n_max as u64 > m {
            return Err(Error::Divergent(format!("only moments up to order {m} converge")));
        }
    }
    let mut mu: Vec<Scalar> = seeds.iter().take(n_max + 1).cloned().collect();
    let mut binom = vec![Integer::from(1)];
    let mut n = 0usize;
    while mu.len() <= n_max {
        let top = n + s;
        let c = relation_coeffs(&pd, n, &binom);
        let lead = &c[top];
        if lead.may_be_zero() {
            return Err(Error::DegenerateRecurrence { n });
        }
        let mut acc = Scalar::zero();
        for (cm, m) in c[..top].iter().zip(&mu) {
            if !cm.is_zero() {
                acc = &acc + &(cm * m);
            }
        }
        mu.push(-(acc / lead));
        n += 1;
        next_binomial_row(&mut binom);
    }
    Ok(MomentSequence { values: mu, normalized: seeds.first().is_some_and(Scalar::is_one), source: MomentSource::PearsonRecurrence })
}

/// Largest `x` visited before giving up on a tail bound.
const MAX_SUMMATION_POINTS: u64 = 20_000_000;

/// `μ_n = Σ_x x^n ρ(x)` for `n = 0..=N` by summation over the support.
///
/// Finite support sums exactly in exact mode. Otherwise each entry's
/// discarded tail is bounded by `target_err` through the certified ratio
/// `sup_{x >= X} t(x+1)/t(x) <= (1 + 1/X)^n · sup ρ(x+1)/ρ(x)` and is added to
/// the entry's error radius.
pub fn moments_direct(spec: &WeightSpec, n_max: usize, target_err: f64, arith: Arithmetic) -> Result<MomentSequence> {
    let conv = classify_convergence(spec)?;
    if let Convergence::MomentLimited(m) = conv {
        return Err(Error::TailBoundUnavailable(format!("z = 1 weight decays algebraically (moments up to order {m} converge)")));
    }
    let spec = spec.lift(arith)?;
    if arith == Arithmetic::Exact && !matches!(conv, Convergence::FiniteSupport(_)) {
        return Err(Error::ExactModeUnavailable("moments of an infinite-support weight are not finite sums".into()));
    }
    let mut sums = vec![Scalar::zero(); n_max + 1];
    let mut iter = WeightIter::new(&spec, arith.precision());
    let ratio = TailRatio::new(&iter);
    let mut tails = vec![Mag::INF; n_max + 1];
    let finite = matches!(conv, Convergence::FiniteSupport(_));
    for (x, rho) in iter.by_ref() {
        let xs = Scalar::int(x as i64);
        let mut t = rho;
        let mut last_terms = Vec::with_capacity(n_max + 1);
        for sum in sums.iter_mut() {
            *sum = &*sum + &t;
            last_terms.push(t.abs_bound());
            t = &t * &xs;
        }
        if finite || x == 0 {
            continue;
        }
        let Some(base) = ratio.at(x) else {
            continue;
        };
        let mut done = true;
        for (n, tail) in tails.iter_mut().enumerate() {
            let r = base * (1.0 + 1.0 / x as f64).powi(n as i32) * (1.0 + 1e-12);
            *tail = if r < 1.0 { last_terms[n].mul(Mag::from_f64(r / (1.0 - r))) } else { Mag::INF };
            done &= tail.to_f64() <= target_err;
        }
        if done {
            break;
        }
        if x >= MAX_SUMMATION_POINTS {
            return Err(Error::TailBoundUnavailable(format!("tail not below {target_err:e} after {x} points")));
        }
    }
    let values = if finite {
        sums
    } else {
        sums.into_iter()
            .zip(&tails)
            .map(|(s, &t)| match s {
                Scalar::Float(b) => Scalar::Float(b.inflate(t)),
                exact => exact,
            })
            .collect()
    };
    Ok(MomentSequence { values, normalized: false, source: MomentSource::DirectSum })
}

/// Hahn (`z = 1`) moments: `μ_0 = ₂F₁(a₁, a₂; b+1; 1)` by Gauss's sum, the
/// rest through the Pearson recurrence. Needs `N < b - a₁ - a₂ + 1`.
pub fn moments_hahn_gamma(a1: &Scalar, a2: &Scalar, b: &Scalar, n_max: usize, arith: Arithmetic) -> Result<MomentSequence> {
    let bound = &(b - a1) - a2;
    let n_s = Scalar::int(n_max as i64);
    if !(&bound + &Scalar::one() - &n_s).certainly_positive() {
        return Err(Error::DivergencePrecondition(format!(
            "moments up to order {n_max} need b - a1 - a2 + 1 > {n_max}, got {}",
            &bound + &Scalar::one()
        )));
    }
    let spec = WeightSpec::hahn(a1.clone(), a2.clone(), b.clone())?;
    let prec = arith.precision().unwrap_or(crate::numerics::DEFAULT_PRECISION);
    let mu0 = gauss_2f1_at_1(a1, a2, &(b + &Scalar::one()), prec)?;
    let mu0 = arith.lift(&mu0)?;
    let mut out = moments_pearson(&spec, n_max, &[mu0])?;
    out.normalized = false;
    out.source = MomentSource::GammaRatio;
    Ok(out)
}

/// Normalized moments `ν_0..ν_N` by the cheapest exact-where-possible route.
///
/// Finite support is summed directly. With one seed the recurrence starts
/// from `ν_0 = 1`, which keeps rational families exact even when `μ_0` is
/// irrational. Two or more seeds come from direct summation at extra
/// precision, which requires float arithmetic.
pub fn default_moments(spec: &WeightSpec, n_max: usize, arith: Arithmetic) -> Result<MomentSequence> {
    let conv = classify_convergence(spec)?;
    if let Convergence::FiniteSupport(_) = conv {
        return moments_direct(spec, n_max, 0.0, arith)?.normalize();
    }
    let pd = pearson_data(spec);
    let s = recurrence_order(&pd);
    let one = match arith {
        Arithmetic::Exact => Scalar::one(),
        Arithmetic::Float { prec } => Scalar::one().to_float(prec),
    };
    if s <= 1 {
        let seeds = if s == 1 { vec![one] } else { vec![] };
        return moments_pearson(spec, n_max, &seeds)?.normalize();
    }
    let Arithmetic::Float { prec } = arith else {
        return Err(Error::ExactModeUnavailable("seed moment ratio ν_1 = μ_1/μ_0 is a transcendental series value".into()));
    };
    let work = prec + 64;
    let target = 2f64.powi(-(work as i32).min(1000));
    let direct = moments_direct(spec, s - 1, target, Arithmetic::float(work))?.normalize()?;
    let seeds: Vec<Scalar> = direct.values.iter().map(|v| v.to_float(prec)).collect();
    moments_pearson(spec, n_max, &seeds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn orders() {
        let ord = |s: WeightSpec| recurrence_order(&pearson_data(&s));
        assert_eq!(ord(WeightSpec::meixner(r(1, 1), r(1, 2)).unwrap()), 1);
        assert_eq!(ord(WeightSpec::ghahn1(r(1, 1), r(1, 1), r(1, 1), r(1, 2)).unwrap()), 2);
        assert_eq!(ord(WeightSpec::hahn(r(1, 1), r(1, 1), r(11, 2)).unwrap()), 1);
        assert_eq!(ord(WeightSpec::gen_charlier(r(1, 1), r(1, 2)).unwrap()), 2);
        assert_eq!(ord(WeightSpec::charlier(r(1, 2)).unwrap()), 1);
    }

    #[test]
    fn meixner_first_moment() {
        let s = WeightSpec::meixner(r(1, 1), r(1, 2)).unwrap();
        let m = moments_pearson(&s, 3, &[Scalar::one()]).unwrap();
        assert_eq!(m.values[1], Scalar::one());
        assert!(m.normalized);
        // ν_n for the geometric weight (1/2)^x: Σ x^n 2^-x / 2 = 1, 1, 3, 13
        assert_eq!(m.values, [1, 1, 3, 13].map(Scalar::int).to_vec());
    }

    #[test]
    fn hahn_first_moment() {
        let s = WeightSpec::hahn(r(1, 1), r(1, 1), r(11, 2)).unwrap();
        let m = moments_pearson(&s, 1, &[Scalar::one()]).unwrap();
        assert_eq!(m.values[1], r(2, 7));
        let s = WeightSpec::hahn(r(1, 1), r(1, 1), r(9, 2)).unwrap();
        let m = moments_pearson(&s, 1, &[Scalar::one()]).unwrap();
        assert_eq!(m.values[1], r(2, 5));
    }

    #[test]
    fn ghahn_second_moment_from_seeds() {
        let s = WeightSpec::ghahn1(r(1, 1), r(1, 1), r(1, 1), r(1, 2)).unwrap();
        let nu1 = Scalar::from_f64(1.0 / LN2 - 1.0, 256);
        let m = moments_pearson(&s, 2, &[Scalar::one().to_float(256), nu1]).unwrap();
        assert!((m.values[2].to_f64() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn seed_count_and_degeneracy() {
        let s = WeightSpec::ghahn1(r(1, 1), r(1, 1), r(1, 1), r(1, 2)).unwrap();
        assert_eq!(moments_pearson(&s, 3, &[Scalar::one()]), Err(Error::SeedCountMismatch { expected: 2, got: 1 }));
        // a1 + a2 - b + n = 0 at n = 3 on a finite support
        let s = WeightSpec::hahn(r(1, 1), r(-4, 1), r(0, 1)).unwrap();
        assert_eq!(moments_pearson(&s, 5, &[Scalar::one()]), Err(Error::DegenerateRecurrence { n: 3 }));
        let s = WeightSpec::hahn(r(1, 1), r(1, 1), r(11, 2)).unwrap();
        assert!(matches!(moments_pearson(&s, 5, &[Scalar::one()]), Err(Error::Divergent(_))));
    }

    #[test]
    fn direct_sums() {
        let h = WeightSpec::hahn(r(1, 1), r(-4, 1), r(-5, 1)).unwrap();
        let m = moments_direct(&h, 4, 0.0, Arithmetic::Exact).unwrap();
        assert_eq!(m.values, [5, 10, 30, 100, 354].map(Scalar::int).to_vec());

        let g = WeightSpec::ghahn1(r(1, 1), r(1, 1), r(1, 1), r(1, 2)).unwrap();
        let m = moments_direct(&g, 2, 1e-40, Arithmetic::float(256)).unwrap();
        assert!((m.values[0].to_f64() - 2.0 * LN2).abs() < 1e-15);
        assert!((m.values[1].to_f64() - (2.0 - 2.0 * LN2)).abs() < 1e-15);
        assert!((m.values[2].to_f64() - 2.0 * LN2).abs() < 1e-15);
        assert!(m.err_bounds().iter().all(|&e| e <= 1e-39));

        let point = WeightSpec::meixner(r(0, 1), r(1, 2)).unwrap();
        let m = moments_direct(&point, 3, 0.0, Arithmetic::Exact).unwrap();
        assert_eq!(m.values, [1, 0, 0, 0].map(Scalar::int).to_vec());

        let hl = WeightSpec::hahn(r(1, 1), r(1, 1), r(11, 2)).unwrap();
        assert!(matches!(moments_direct(&hl, 1, 1e-10, Arithmetic::float(128)), Err(Error::TailBoundUnavailable(_))));
        assert!(matches!(moments_direct(&g, 1, 1e-10, Arithmetic::Exact), Err(Error::ExactModeUnavailable(_))));
    }

    #[test]
    fn pearson_agrees_with_direct() {
        let specs = [
            WeightSpec::meixner(r(3, 2), r(1, 3)).unwrap(),
            WeightSpec::gen_charlier(r(1, 1), r(1, 2)).unwrap(),
            WeightSpec::ghahn1(r(2, 1), r(3, 2), r(1, 1), r(1, 4)).unwrap(),
            WeightSpec::charlier(r(3, 1)).unwrap(),
        ];
        for s in &specs {
            let direct = moments_direct(s, 12, 1e-50, Arithmetic::float(256)).unwrap().normalize().unwrap();
            let rec = default_moments(s, 12, Arithmetic::float(256)).unwrap();
            for (a, b) in direct.values.iter().zip(&rec.values) {
                let d = (a - b).abs().to_f64();
                assert!(d <= a.err().to_f64() + b.err().to_f64() + 1e-60, "{s:?}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn hahn_gamma_moments() {
        let m = moments_hahn_gamma(&r(1, 1), &r(2, 1), &r(5, 1), 1, Arithmetic::Exact).unwrap();
        assert_eq!(m.values[0], r(5, 3));
        let m = moments_hahn_gamma(&r(1, 1), &r(1, 1), &r(11, 2), 4, Arithmetic::Exact).unwrap();
        // ₂F₁(1, 1; 13/2; 1) = Γ(13/2)Γ(9/2)/Γ(11/2)² = 11/9
        assert_eq!(m.values[0], r(11, 9));
        assert_eq!(&m.values[1] / &m.values[0], r(2, 7));
        let m = moments_hahn_gamma(&r(1, 1), &r(1, 1), &r(9, 2), 3, Arithmetic::Exact).unwrap();
        assert_eq!(&m.values[1] / &m.values[0], r(2, 5));
        let z = moments_hahn_gamma(&r(0, 1), &r(1, 2), &r(7, 2), 3, Arithmetic::Exact).unwrap();
        assert_eq!(z.values, [1, 0, 0, 0].map(Scalar::int).to_vec());
        assert!(matches!(moments_hahn_gamma(&r(1, 1), &r(1, 1), &r(11, 2), 5, Arithmetic::Exact), Err(Error::DivergencePrecondition(_))));
        let f = moments_hahn_gamma(&r(1, 2), &r(1, 3), &r(7, 2), 2, Arithmetic::float(256)).unwrap();
        assert!(f.values[0].err().to_f64() < 1e-60);
        assert!(matches!(moments_hahn_gamma(&r(1, 2), &r(1, 3), &r(7, 2), 2, Arithmetic::Exact), Err(Error::ExactModeUnavailable(_))));
    }

    #[test]
    fn default_moments_modes() {
        let m = default_moments(&WeightSpec::meixner(r(3, 2), r(1, 3)).unwrap(), 6, Arithmetic::Exact).unwrap();
        assert!(m.values.iter().all(Scalar::is_exact));
        // ν_1 = β_0 = az/(1-z) = 3/4
        assert_eq!(m.values[1], r(3, 4));
        let g = WeightSpec::ghahn1(r(1, 1), r(1, 1), r(1, 1), r(1, 2)).unwrap();
        assert!(matches!(default_moments(&g, 4, Arithmetic::Exact), Err(Error::ExactModeUnavailable(_))));
        let h = WeightSpec::hahn(r(1, 1), r(-4, 1), r(-5, 1)).unwrap();
        let m = default_moments(&h, 4, Arithmetic::Exact).unwrap();
        assert_eq!(m.values[4], r(354, 5));
    }
}
