//! Weights of generalized hypergeometric type on `{0, 1, 2, ...}`,
//!
//! ```text
//! ρ(x) = ∏(a_i)_x / ∏(b_j + 1)_x · z^x / x!
//! ```
//!
//! and their Pearson pair `λ(x) = z ∏(x + a_i)`, `φ(x) = x ∏(x + b_j)`, with
//! `ρ(x+1)/ρ(x) = λ(x)/φ(x+1)`.

use crate::error::{Error, Result};
use crate::numerics::{ratio_sup, Arithmetic, ParamRange, Scalar};
use crate::poly::Poly;
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq)]
pub struct WeightSpec {
    num_params: Vec<Scalar>,
    den_params: Vec<Scalar>,
    z: Scalar,
    support_cutoff: Option<u64>,
}

impl WeightSpec {
    /// Validates the parameters. A numerator parameter `-m` cuts the support
    /// down to `{0, ..., m}`; a denominator parameter `-m` (m ≥ 1) is only
    /// allowed when such a cutoff keeps `(b + 1)_x` nonzero on the support.
    pub fn new(num_params: Vec<Scalar>, den_params: Vec<Scalar>, z: Scalar) -> Result<WeightSpec> {
        if z.may_be_zero() {
            return Err(Error::InvalidParameter("z must be nonzero".into()));
        }
        let support_cutoff = num_params.iter().filter_map(Scalar::as_nonpositive_integer).min();
        for b in &den_params {
            if let Some(m) = b.as_nonpositive_integer().filter(|&m| m >= 1) {
                if support_cutoff.is_none_or(|c| c >= m) {
                    return Err(Error::InvalidParameter(format!("denominator parameter b = {b} makes (b+1)_x vanish on the support")));
                }
            }
        }
        Ok(WeightSpec { num_params, den_params, z, support_cutoff })
    }

    /// `(a)_x z^x / x!`
    pub fn meixner(a: Scalar, z: Scalar) -> Result<WeightSpec> {
        WeightSpec::new(vec![a], vec![], z)
    }

    /// `z^x / x!`
    pub fn charlier(z: Scalar) -> Result<WeightSpec> {
        WeightSpec::new(vec![], vec![], z)
    }

    /// `z^x / ((b+1)_x x!)`
    pub fn gen_charlier(b: Scalar, z: Scalar) -> Result<WeightSpec> {
        WeightSpec::new(vec![], vec![b], z)
    }

    /// `(a1)_x (a2)_x / (b+1)_x · z^x / x!`
    pub fn ghahn1(a1: Scalar, a2: Scalar, b: Scalar, z: Scalar) -> Result<WeightSpec> {
        WeightSpec::new(vec![a1, a2], vec![b], z)
    }

    /// Generalized Hahn of type I at `z = 1`.
    pub fn hahn(a1: Scalar, a2: Scalar, b: Scalar) -> Result<WeightSpec> {
        WeightSpec::new(vec![a1, a2], vec![b], Scalar::one())
    }

    pub fn num_params(&self) -> &[Scalar] {
        &self.num_params
    }

    pub fn den_params(&self) -> &[Scalar] {
        &self.den_params
    }

    pub fn z(&self) -> &Scalar {
        &self.z
    }

    pub fn support_cutoff(&self) -> Option<u64> {
        self.support_cutoff
    }

    pub fn p(&self) -> usize {
        self.num_params.len()
    }

    pub fn q(&self) -> usize {
        self.den_params.len()
    }

    /// Every parameter brought under `arith`.
    pub fn lift(&self, arith: Arithmetic) -> Result<WeightSpec> {
        let lift_all = |v: &[Scalar]| v.iter().map(|x| arith.lift(x)).collect::<Result<Vec<_>>>();
        Ok(WeightSpec {
            num_params: lift_all(&self.num_params)?,
            den_params: lift_all(&self.den_params)?,
            z: arith.lift(&self.z)?,
            support_cutoff: self.support_cutoff,
        })
    }

    /// True when all parameters are exact rationals.
    pub fn is_exact(&self) -> bool {
        self.num_params.iter().chain(&self.den_params).chain([&self.z]).all(Scalar::is_exact)
    }

    /// Numerator and shifted denominator parameters with matched pairs
    /// `a_i = b_j + 1` removed, so `(a_i)_x / (b_j + 1)_x = 1` is never
    /// formed as a 0/0 quotient.
    fn reduced_params(&self) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut num = self.num_params.clone();
        let mut den = Vec::new();
        for b in &self.den_params {
            let shifted = b + &Scalar::one();
            match num.iter().position(|a| *a == shifted) {
                Some(i) => {
                    num.remove(i);
                }
                None => den.push(shifted),
            }
        }
        (num, den)
    }

    /// `ρ(0), ..., ρ(upto)`; zero beyond the support cutoff.
    pub fn weights(&self, upto: u64) -> Vec<Scalar> {
        let (num, den) = self.reduced_params();
        let mut out = Vec::with_capacity(upto as usize + 1);
        let mut rho = Scalar::one();
        for x in 0..=upto {
            if self.support_cutoff.is_some_and(|c| x > c) {
                out.push(Scalar::zero());
                continue;
            }
            out.push(rho.clone());
            rho = &rho * &ratio_at(&num, &den, &self.z, x);
        }
        out
    }

    /// `ρ(x)`
    pub fn weight_eval(&self, x: u64) -> Scalar {
        self.weights(x).pop().unwrap_or_else(Scalar::one)
    }
}

// ρ(x+1)/ρ(x) with the reduced parameter lists.
pub(crate) fn ratio_at(num: &[Scalar], den: &[Scalar], z: &Scalar, x: u64) -> Scalar {
    let xs = Scalar::int(x as i64);
    let mut r = z / &Scalar::int(x as i64 + 1);
    for a in num {
        r = r * (a + &xs);
    }
    for d in den {
        r = r / (d + &xs);
    }
    r
}

/// Iterates `ρ(0), ρ(1), ...` (stops after the support cutoff).
pub(crate) struct WeightIter<'a> {
    spec: &'a WeightSpec,
    num: Vec<Scalar>,
    den: Vec<Scalar>,
    next_x: u64,
    rho: Scalar,
}

impl<'a> WeightIter<'a> {
    pub(crate) fn new(spec: &'a WeightSpec, prec: Option<u32>) -> WeightIter<'a> {
        let (num, den) = spec.reduced_params();
        let rho = match prec {
            Some(p) => Scalar::one().to_float(p),
            None => Scalar::one(),
        };
        WeightIter { spec, num, den, next_x: 0, rho }
    }

    /// Reduced parameter lists (numerators, shifted denominators).
    pub(crate) fn params(&self) -> (&[Scalar], &[Scalar]) {
        (&self.num, &self.den)
    }
}

/// Certified upper bound of `sup_{x' >= x} |ρ(x'+1)/ρ(x')|` from the
/// reduced parameters of a [`WeightIter`].
pub(crate) struct TailRatio {
    num: Vec<ParamRange>,
    den: Vec<ParamRange>,
    zabs: f64,
}

impl TailRatio {
    pub(crate) fn new(iter: &WeightIter<'_>) -> TailRatio {
        let (num, den) = iter.params();
        TailRatio {
            num: num.iter().map(ParamRange::of).collect(),
            den: std::iter::once(ParamRange::exact(1.0)).chain(den.iter().map(ParamRange::of)).collect(),
            zabs: iter.spec.z.abs_bound().to_f64(),
        }
    }

    pub(crate) fn at(&self, x: u64) -> Option<f64> {
        ratio_sup(&self.num, &self.den, self.zabs, x as f64)
    }
}

impl Iterator for WeightIter<'_> {
    type Item = (u64, Scalar);

    fn next(&mut self) -> Option<(u64, Scalar)> {
        let x = self.next_x;
        if self.spec.support_cutoff.is_some_and(|c| x > c) {
            return None;
        }
        let out = self.rho.clone();
        self.rho = &self.rho * &ratio_at(&self.num, &self.den, &self.spec.z, x);
        self.next_x += 1;
        Some((x, out))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PearsonData {
    /// `λ(x) = z ∏(x + a_i)`, ascending coefficients
    pub lambda: Poly,
    /// `φ(x) = x ∏(x + b_j)`, ascending coefficients
    pub phi: Poly,
    pub class_c: i64,
}

fn degree_or_minus_one(p: &Poly) -> i64 {
    p.degree().map_or(-1, |d| d as i64)
}

pub fn pearson_data(spec: &WeightSpec) -> PearsonData {
    let lambda = Poly::from_shifts(&spec.z, &spec.num_params);
    let phi = Poly::from_shifts(&Scalar::one(), &spec.den_params).mul_linear(&Scalar::zero());
    let diff = &phi - &lambda;
    let class_c = (degree_or_minus_one(&phi) - 2).max(degree_or_minus_one(&diff) - 1);
    PearsonData { lambda, phi, class_c }
}

/// Which moments of the weight exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convergence {
    /// `p <= q`: all moments converge for every `z`
    Entire,
    /// `p = q + 1`, `|z| < 1`
    UnitDisk,
    /// finite support `{0, ..., n_sup}`
    FiniteSupport(u64),
    /// `p = q + 1`, `z = 1`: only `μ_0, ..., μ_m` converge
    MomentLimited(u64),
}

impl Convergence {
    /// Largest convergent moment order, if bounded.
    pub fn max_order(&self) -> Option<u64> {
        match self {
            Convergence::MomentLimited(m) => Some(*m),
            _ => None,
        }
    }
}

/// For `p = q + 1` and `z = 1`, `ρ(x) ~ C x^(Σa - Σb - p)`, so `μ_n` converges
/// iff `n < Σb - Σa + p - 1`.
pub fn classify_convergence(spec: &WeightSpec) -> Result<Convergence> {
    if let Some(c) = spec.support_cutoff {
        return Ok(Convergence::FiniteSupport(c));
    }
    let (p, q) = (spec.p(), spec.q());
    if p <= q {
        return Ok(Convergence::Entire);
    }
    if p > q + 1 {
        return Err(Error::Divergent(format!("p = {p} > q + 1 = {}", q + 1)));
    }
    match spec.z.abs().certain_cmp(&Scalar::one()) {
        Some(Ordering::Less) => Ok(Convergence::UnitDisk),
        _ if spec.z.is_one() => {
            let sum = |v: &[Scalar]| v.iter().fold(Scalar::zero(), |acc, x| acc + x);
            let bound = sum(&spec.den_params) - sum(&spec.num_params) + Scalar::int(p as i64 - 1);
            let m = largest_integer_below(&bound);
            match m {
                Some(m) if m >= 0 => Ok(Convergence::MomentLimited(m as u64)),
                _ => Err(Error::Divergent(format!("z = 1 needs Σb - Σa + p - 1 > 0, got {bound}"))),
            }
        }
        _ => Err(Error::Divergent(format!("p = q + 1 needs |z| < 1 (or z = 1), got z = {}", spec.z))),
    }
}

fn largest_integer_below(s: &Scalar) -> Option<i64> {
    match s {
        Scalar::Exact(r) => {
            let c = r.clone().ceil();
            (c.numer().clone() - 1u32).to_i64()
        }
        Scalar::Float(_) => {
            let v = s.to_f64();
            v.is_finite().then(|| v.ceil() as i64 - 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn pearson_polynomials() {
        let m = pearson_data(&WeightSpec::meixner(r(1, 1), r(1, 2)).unwrap());
        assert_eq!(m.lambda.coeffs(), &[r(1, 2), r(1, 2)]);
        assert_eq!(m.phi.coeffs(), &[r(0, 1), r(1, 1)]);
        assert_eq!(m.class_c, 0);

        let g = pearson_data(&WeightSpec::ghahn1(r(1, 1), r(2, 1), r(3, 1), r(1, 4)).unwrap());
        // λ = (1/4)(x+1)(x+2), φ = x(x+3)
        assert_eq!(g.lambda.coeffs(), &[r(1, 2), r(3, 4), r(1, 4)]);
        assert_eq!(g.phi.coeffs(), &[r(0, 1), r(3, 1), r(1, 1)]);
        assert_eq!(g.class_c, 1);

        let c = pearson_data(&WeightSpec::charlier(r(2, 1)).unwrap());
        assert_eq!(c.lambda.coeffs(), &[r(2, 1)]);
        assert_eq!(c.phi.coeffs(), &[r(0, 1), r(1, 1)]);
        assert_eq!(c.class_c, 0);
    }

    #[test]
    fn weight_values() {
        let m = WeightSpec::meixner(r(1, 1), r(1, 2)).unwrap();
        assert_eq!(m.weight_eval(0), Scalar::one());
        assert_eq!(m.weight_eval(3), r(1, 8));
        let g = WeightSpec::ghahn1(r(1, 1), r(1, 1), r(1, 1), r(1, 2)).unwrap();
        assert_eq!(g.weight_eval(2), r(1, 12));
    }

    #[test]
    fn finite_support_cancels_matched_pair() {
        let h = WeightSpec::hahn(r(1, 1), r(-4, 1), r(-5, 1)).unwrap();
        assert_eq!(h.support_cutoff(), Some(4));
        let w = h.weights(6);
        assert_eq!(w, [1, 1, 1, 1, 1, 0, 0].map(Scalar::int).to_vec());
        assert_eq!(classify_convergence(&h).unwrap(), Convergence::FiniteSupport(4));
        let it: Vec<_> = WeightIter::new(&h, None).map(|(_, w)| w).collect();
        assert_eq!(it.len(), 5);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(WeightSpec::meixner(r(1, 1), r(0, 1)).is_err());
        assert!(WeightSpec::gen_charlier(r(-2, 1), r(1, 2)).is_err());
        // cutoff 4 keeps (b+1)_x away from zero only if b <= -5
        assert!(WeightSpec::hahn(r(1, 1), r(-4, 1), r(-4, 1)).is_err());
    }

    #[test]
    fn convergence_classes() {
        let cls = |s: WeightSpec| classify_convergence(&s);
        assert_eq!(cls(WeightSpec::meixner(r(1, 1), r(1, 2)).unwrap()).unwrap(), Convergence::UnitDisk);
        assert_eq!(cls(WeightSpec::charlier(r(5, 1)).unwrap()).unwrap(), Convergence::Entire);
        assert_eq!(cls(WeightSpec::hahn(r(1, 1), r(1, 1), r(11, 2)).unwrap()).unwrap(), Convergence::MomentLimited(4));
        assert_eq!(cls(WeightSpec::hahn(r(1, 1), r(1, 1), r(9, 2)).unwrap()).unwrap(), Convergence::MomentLimited(3));
        assert!(matches!(cls(WeightSpec::meixner(r(1, 1), r(3, 2)).unwrap()), Err(Error::Divergent(_))));
        assert!(matches!(cls(WeightSpec::new(vec![r(1, 1); 3], vec![r(1, 1)], r(1, 2)).unwrap()), Err(Error::Divergent(_))));
        assert!(matches!(cls(WeightSpec::hahn(r(1, 1), r(1, 1), r(1, 2)).unwrap()), Err(Error::Divergent(_))));
    }

    #[test]
    fn pearson_ratio_and_difference_identities() {
        let specs = [
            WeightSpec::meixner(r(3, 2), r(1, 3)).unwrap(),
            WeightSpec::gen_charlier(r(1, 1), r(1, 2)).unwrap(),
            WeightSpec::ghahn1(r(2, 1), r(3, 2), r(1, 1), r(1, 4)).unwrap(),
            WeightSpec::hahn(r(1, 1), r(-4, 1), r(-5, 1)).unwrap(),
            WeightSpec::hahn(r(1, 2), r(1, 3), r(7, 2)).unwrap(),
        ];
        for s in &specs {
            let pd = pearson_data(s);
            let w = s.weights(21);
            for x in 0..=20u64 {
                let xs = Scalar::int(x as i64);
                let x1 = Scalar::int(x as i64 + 1);
                // ρ(x+1)φ(x+1) = ρ(x)λ(x)
                assert_eq!(&w[x as usize + 1] * &pd.phi.eval(&x1), &w[x as usize] * &pd.lambda.eval(&xs));
                // Δ(φρ)(x) = (λ - φ)(x) ρ(x)
                let delta = &(&pd.phi.eval(&x1) * &w[x as usize + 1]) - &(&pd.phi.eval(&xs) * &w[x as usize]);
                assert_eq!(delta, (pd.lambda.eval(&xs) - pd.phi.eval(&xs)) * &w[x as usize]);
            }
        }
    }

    #[test]
    fn float_weights_enclose_exact() {
        let s = WeightSpec::ghahn1(r(2, 1), r(3, 2), r(1, 1), r(1, 4)).unwrap();
        let f = s.lift(Arithmetic::float(128)).unwrap();
        for (e, b) in s.weights(15).iter().zip(f.weights(15)) {
            let d = (e - &b).abs().to_f64();
            assert!(d <= b.err().to_f64());
        }
        assert!(matches!(f.lift(Arithmetic::Exact), Err(Error::ExactModeUnavailable(_))));
    }
}
