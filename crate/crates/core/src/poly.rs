//! Dense univariate polynomials over [`Scalar`], coefficients in ascending order.

use crate::numerics::Scalar;
use std::ops::{Add, Mul, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(coeffs: Vec<Scalar>) -> Poly {
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly { coeffs: vec![c] }
    }

    pub fn one() -> Poly {
        Poly::constant(Scalar::one())
    }

    /// `x`
    pub fn x() -> Poly {
        Poly::new(vec![Scalar::zero(), Scalar::one()])
    }

    /// `lead * (x + r_1) ... (x + r_k)`
    pub fn from_shifts(lead: &Scalar, shifts: &[Scalar]) -> Poly {
        let mut p = Poly::constant(lead.clone());
        for r in shifts {
            p = p.mul_linear(r);
        }
        p
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the stored length).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the highest coefficient that is not definitely zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `(x + r) * self`
    pub fn mul_linear(&self, r: &Scalar) -> Poly {
        let mut out = vec![Scalar::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] = &out[i + 1] + c;
            out[i] = &out[i] + &(c * r);
        }
        Poly::new(out)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `self(x + c)` by repeated synthetic division (Taylor shift).
    pub fn shift(&self, c: &Scalar) -> Poly {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                a[j] = &a[j] + &(c * &a[j + 1]);
            }
        }
        Poly::new(a)
    }

    /// Sum of the absolute-value bounds of the coefficients; bounds `|p(x)|`
    /// by this times `|x|^deg` for `|x| >= 1`.
    pub fn abs_coeff_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs_bound().to_f64()).sum()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_empty() || rhs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }
}
