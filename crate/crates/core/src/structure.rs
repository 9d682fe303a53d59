//! Structure relations of a weight with Pearson pair `(λ, φ)`:
//!
//! ```text
//! λ(x) P_n(x+1) = Σ_{k=-q-1}^{p}   A_k(n) P_{n+k}(x)
//! φ(x) P_n(x-1) = Σ_{k=-p}^{q+1}   B_k(n) P_{n+k}(x)
//! ```
//!
//! The bands are computed from the functional, independently of any
//! Laguerre-Freud engine, and the identities linking them to `β_n`, `γ_n`
//! are checked as residuals:
//!
//! ```text
//! γ_{n+k+1} A_{k+1}(n) - γ_n A_{k+1}(n-1) + A_{k-1}(n) - A_{k-1}(n+1)
//!     = (β_n - β_{n+k} - 1) A_k(n)
//! h_{n+k} A_k(n) = h_n B_{-k}(n+k)
//! A_p(n) = z,   B_{q+1}(n) = 1,   A_{-q-1}(n) = γ_n γ_{n-1} ⋯ γ_{n-q}
//! ```

use crate::error::{Error, Result};
use crate::lfreud::arithmetic_of;
use crate::moments::default_moments;
use crate::numerics::{Arithmetic, Mag, Scalar, DEFAULT_PRECISION};
use crate::oracle::RecurrenceTable;
use crate::poly::Poly;
use crate::weights::{classify_convergence, pearson_data, Convergence, TailRatio, WeightIter, WeightSpec};
use rug::Float;
use std::ops::RangeInclusive;

/// Extra bits carried by the moments behind the bands.
const GUARD_BITS: u32 = 64;

/// `P_0(x), ..., P_N(x)` from the three-term recurrence. Needs
/// `β_0..β_{N-1}` and `γ_1..γ_{N-1}`.
pub fn eval_polys(rec: &RecurrenceTable, x: &Scalar, n_max: usize) -> Vec<Scalar> {
    assert!(n_max <= rec.beta.len(), "recurrence table too short for P_{n_max}");
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(Scalar::one());
    if n_max == 0 {
        return out;
    }
    out.push(x - &rec.beta[0]);
    for n in 1..n_max {
        let next = &(&(x - &rec.beta[n]) * &out[n]) - &(&rec.gamma[n] * &out[n - 1]);
        out.push(next);
    }
    out
}

/// `P_0, ..., P_N` as monomial coefficient vectors.
pub fn monic_polys(rec: &RecurrenceTable, n_max: usize) -> Vec<Poly> {
    assert!(n_max <= rec.beta.len(), "recurrence table too short for P_{n_max}");
    let mut out = vec![Poly::one()];
    if n_max == 0 {
        return out;
    }
    out.push(Poly::x().shift(&-&rec.beta[0]));
    for n in 1..n_max {
        let next = &out[n].mul_linear(&-&rec.beta[n]) - &out[n - 1].scale(&rec.gamma[n]);
        out.push(next);
    }
    out
}

/// A band table `T_k(n)` for `k` in a fixed range and `0 <= n <= N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Band {
    k_min: i64,
    k_max: i64,
    rows: Vec<Vec<Option<Scalar>>>,
}

impl Band {
    pub fn k_range(&self) -> RangeInclusive<i64> {
        self.k_min..=self.k_max
    }

    pub fn n_max(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    /// `T_k(n)`. Zero outside the band and wherever `n + k < 0`; `None` where
    /// the entry could not be computed (index beyond the recurrence table or
    /// vanishing `h_{n+k}`).
    pub fn get(&self, n: usize, k: i64) -> Option<Scalar> {
        let row = self.rows.get(n)?;
        if k < self.k_min || k > self.k_max || n as i64 + k < 0 {
            return Some(Scalar::zero());
        }
        row[(k - self.k_min) as usize].clone()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureCoeffs {
    /// `A_k(n)`, `-q-1 <= k <= p`
    pub a: Band,
    /// `B_k(n)`, `-p <= k <= q+1`
    pub b: Band,
    /// `h_n = L[P_n²]` relative to `μ_0 = 1`, for every index the table covers
    pub h: Vec<Scalar>,
    pub p: usize,
    pub q: usize,
}

/// `A_k(n) = L[λ P_n(x+1) P_{n+k}] / h_{n+k}` and
/// `B_k(n) = L[φ P_n(x-1) P_{n+k}] / h_{n+k}` for `n <= N`.
///
/// `P_m` is built from `rec` for `m <= rec.n_max() + 1`; entries reaching
/// past that, or dividing by a vanishing `h`, are left empty. A complete band
/// needs `rec.n_max() >= N + max(p, q+1) - 1`.
pub fn structure_coeffs(spec: &WeightSpec, rec: &RecurrenceTable, n_max: usize) -> Result<StructureCoeffs> {
    let r = rec.n_max() + 1;
    if n_max > r {
        return Err(Error::InvalidParameter(format!("structure bands up to n = {n_max} need a recurrence table to n = {}", n_max - 1)));
    }
    match work_arithmetic(spec, rec) {
        Arithmetic::Exact => bands_at(spec, rec, n_max, Arithmetic::Exact),
        Arithmetic::Float { prec } => {
            // Bands belong to the polynomials the table's midpoints define;
            // precision grows until cancellation in the moment sums is covered.
            let mid = RecurrenceTable {
                beta: rec.beta.iter().map(Scalar::midpoint).collect(),
                gamma: rec.gamma.iter().map(Scalar::midpoint).collect(),
                h: None,
                method: rec.method,
            };
            let mut work = prec + GUARD_BITS;
            loop {
                let sc = bands_at(spec, &mid, n_max, Arithmetic::float(work))?;
                if work >= MAX_WORK_BITS || sc.tight(prec) {
                    return Ok(sc);
                }
                work = (work * 2).min(MAX_WORK_BITS);
            }
        }
    }
}

const MAX_WORK_BITS: u32 = 65536;

impl StructureCoeffs {
    /// Every band entry and norm known to about `prec` bits.
    fn tight(&self, prec: u32) -> bool {
        let ok = |v: &Scalar| v.err().shl(i64::from(prec)).cmp_value(&v.abs_bound().add(Mag::from_f64(1.0))) != std::cmp::Ordering::Greater;
        let bands = [&self.a, &self.b];
        self.h.iter().all(ok) && bands.iter().all(|band| band.rows.iter().flatten().flatten().all(ok))
    }
}

fn bands_at(spec: &WeightSpec, rec: &RecurrenceTable, n_max: usize, ar: Arithmetic) -> Result<StructureCoeffs> {
    let r = rec.n_max() + 1;
    let (p, q) = (spec.p(), spec.q());
    let d = p.max(q + 1);
    let degree = (n_max + r + d).max(2 * r);
    let mom = default_moments(spec, degree, ar)?;
    let mu = &mom.values;
    let polys = monic_polys(rec, r);
    // ip[m][i] = L[x^i P_m]
    let ip: Vec<Vec<Scalar>> =
        polys.iter().enumerate().map(|(m, pm)| (0..=degree - m).map(|i| dot(pm.coeffs(), &mu[i..])).collect()).collect();
    let h: Vec<Option<Scalar>> = (0..=r)
        .map(|m| {
            let hm = ip[m][m].clone();
            (!indeterminate(&hm)).then_some(hm)
        })
        .collect();
    let pd = pearson_data(spec);
    let one = Scalar::one();
    let band = |weight: &Poly, shift: &Scalar, k_min: i64, k_max: i64| -> Band {
        let rows = (0..=n_max)
            .map(|n| {
                let f = weight * &polys[n].shift(shift);
                (k_min..=k_max)
                    .map(|k| {
                        let m = n as i64 + k;
                        if m < 0 {
                            return Some(Scalar::zero());
                        }
                        let m = m as usize;
                        let hm = h.get(m)?.as_ref()?;
                        Some(&dot(f.coeffs(), &ip[m]) / hm)
                    })
                    .collect()
            })
            .collect();
        Band { k_min, k_max, rows }
    };
    let (pi, qi) = (p as i64, q as i64);
    let a = band(&pd.lambda, &one, -qi - 1, pi);
    let b = band(&pd.phi, &-&one, -pi, qi + 1);
    let h = h.into_iter().map_while(|x| x).collect();
    Ok(StructureCoeffs { a, b, h, p, q })
}

fn work_arithmetic(spec: &WeightSpec, rec: &RecurrenceTable) -> Arithmetic {
    let entries: Vec<&Scalar> =
        rec.beta.iter().chain(&rec.gamma).chain(spec.num_params()).chain(spec.den_params()).chain([spec.z()]).collect();
    match arithmetic_of(&entries) {
        Arithmetic::Exact => Arithmetic::Exact,
        Arithmetic::Float { prec } => Arithmetic::float(prec + GUARD_BITS),
    }
}

const NOMINAL_BITS: u32 = 64;

/// `|v|` to a few digits, for scaling residuals.
fn nominal(v: &Scalar) -> Float {
    v.to_big_float(NOMINAL_BITS).abs()
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

fn indeterminate(h: &Scalar) -> bool {
    h.may_be_zero() || (!h.is_exact() && h.abs().to_f64() <= 10.0 * h.err().to_f64())
}

/// Largest residual of one identity over the instances checked.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual {
    /// upper bound of `max |residual|`, including error radii
    pub max: f64,
    pub instances: usize,
}

impl Residual {
    pub fn new() -> Residual {
        Residual { max: 0.0, instances: 0 }
    }

    pub fn record(&mut self, r: &Scalar) {
        self.max = self.max.max(r.abs_bound().to_f64());
        self.instances += 1;
    }

    /// Records `|r| / scale`; a zero scale records `|r|`.
    pub fn record_scaled(&mut self, r: &Scalar, scale: &Float) {
        let s = Mag::from_float_lower(scale);
        let v = if s.is_zero() { r.abs_bound() } else { r.abs_bound().div_by_lower(s) };
        self.max = self.max.max(v.to_f64());
        self.instances += 1;
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max <= tol
    }
}

impl Default for Residual {
    fn default() -> Self {
        Residual::new()
    }
}

/// Per-identity residuals; a field stays `None` until its check runs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub n_max: usize,
    /// `None` in exact mode
    pub precision_bits: Option<u32>,
    pub req: Option<Residual>,
    /// `A_k(n) h_{n+k} - B_{-k}(n+k) h_n`, divided by `sqrt|h_n h_{n+k}|`
    pub ab: Option<Residual>,
    pub ap: Option<Residual>,
    pub aq: Option<Residual>,
    pub bq: Option<Residual>,
    /// pointwise relations, each divided by the sum of its term magnitudes
    pub de1: Option<Residual>,
    pub de2: Option<Residual>,
    /// normalized off-diagonal `|L[P_n P_m]| / sqrt(h_n h_m)`
    pub orthogonality: Option<Residual>,
}

impl VerificationReport {
    pub fn new(n_max: usize, precision_bits: Option<u32>) -> VerificationReport {
        VerificationReport { n_max, precision_bits, ..Default::default() }
    }

    /// Takes every check present in `other`.
    pub fn merge(&mut self, other: VerificationReport) {
        let pairs = [
            (&mut self.req, other.req),
            (&mut self.ab, other.ab),
            (&mut self.ap, other.ap),
            (&mut self.aq, other.aq),
            (&mut self.bq, other.bq),
            (&mut self.de1, other.de1),
            (&mut self.de2, other.de2),
            (&mut self.orthogonality, other.orthogonality),
        ];
        for (mine, theirs) in pairs {
            if theirs.is_some() {
                *mine = theirs;
            }
        }
    }

    /// `(name, residual)` for each identity, in a fixed order.
    pub fn entries(&self) -> [(&'static str, Option<Residual>); 8] {
        [
            ("req", self.req),
            ("ab", self.ab),
            ("ap", self.ap),
            ("aq", self.aq),
            ("bq", self.bq),
            ("de1", self.de1),
            ("de2", self.de2),
            ("orthogonality", self.orthogonality),
        ]
    }

    /// Every check that ran has `max <= tol`.
    pub fn passes(&self, tol: f64) -> bool {
        self.entries().iter().all(|(_, r)| r.is_none_or(|r| r.passes(tol)))
    }

    /// Largest residual over all checks that ran.
    pub fn max_residual(&self) -> f64 {
        self.entries().iter().filter_map(|(_, r)| r.map(|r| r.max)).fold(0.0, f64::max)
    }
}

fn precision_of(rec: &RecurrenceTable) -> Option<u32> {
    rec.beta.iter().chain(&rec.gamma).filter_map(Scalar::precision).max()
}

/// Residuals of the band recurrence, the `A`/`B` duality and the boundary
/// bands, at every `(n, k)` whose entries are all available.
pub fn band_identity_residuals(sc: &StructureCoeffs, rec: &RecurrenceTable, z: &Scalar) -> VerificationReport {
    let n_max = sc.a.n_max();
    let mut rep = VerificationReport::new(n_max, precision_of(rec));
    let (p, q) = (sc.p as i64, sc.q as i64);
    let gamma = |i: i64| -> Option<Scalar> {
        match i {
            0 => Some(Scalar::zero()),
            i if i > 0 => rec.gamma.get(i as usize).cloned(),
            _ => None,
        }
    };
    let beta = |i: i64| (i >= 0).then(|| rec.beta.get(i as usize).cloned()).flatten();

    let mut req = Residual::new();
    for n in 0..=n_max {
        let ni = n as i64;
        for k in -q - 1..=p {
            if ni + k < 0 {
                continue;
            }
            let prev = if n == 0 { Some(Scalar::zero()) } else { sc.a.get(n - 1, k + 1) };
            let terms = (|| {
                let lhs = &(&gamma(ni + k + 1)? * &sc.a.get(n, k + 1)?) - &(&gamma(ni)? * &prev?);
                let lhs = &(&lhs + &sc.a.get(n, k - 1)?) - &sc.a.get(n + 1, k - 1)?;
                let coeff = &(&beta(ni)? - &beta(ni + k)?) - &Scalar::one();
                Some(&lhs - &(&coeff * &sc.a.get(n, k)?))
            })();
            if let Some(res) = terms {
                req.record(&res);
            }
        }
    }
    rep.req = Some(req);

    let mut ab = Residual::new();
    for n in 0..=n_max {
        for k in -q - 1..=p {
            let m = n as i64 + k;
            if m < 0 || m as usize > n_max {
                continue;
            }
            let m = m as usize;
            let (Some(a), Some(b), Some(hn), Some(hm)) = (sc.a.get(n, k), sc.b.get(m, -k), sc.h.get(n), sc.h.get(m)) else {
                continue;
            };
            let scale = (nominal(hn) * nominal(hm)).sqrt();
            ab.record_scaled(&(&(&a * hm) - &(&b * hn)), &scale);
        }
    }
    rep.ab = Some(ab);

    let mut ap = Residual::new();
    let mut bq = Residual::new();
    let mut aq = Residual::new();
    for n in 0..=n_max {
        if let Some(a) = sc.a.get(n, p) {
            ap.record(&(&a - z));
        }
        if let Some(b) = sc.b.get(n, q + 1) {
            bq.record(&(&b - &Scalar::one()));
        }
        if n > sc.q {
            let prod = (0..=sc.q).try_fold(Scalar::one(), |acc, i| gamma((n - i) as i64).map(|g| &acc * &g));
            if let (Some(a), Some(prod)) = (sc.a.get(n, -q - 1), prod) {
                aq.record(&(&a - &prod));
            }
        }
    }
    rep.ap = Some(ap);
    rep.bq = Some(bq);
    rep.aq = Some(aq);
    rep
}

/// Both structure relations evaluated at integer points `x = 0..=X`, with
/// `X >= n + max(p, q+1)` so that the sampled values determine each
/// polynomial identity. Rows with an incomplete band are skipped.
#[allow(clippy::needless_range_loop)]
pub fn de_pointwise_check(spec: &WeightSpec, rec: &RecurrenceTable, sc: &StructureCoeffs, n_max: usize, x_max: u64) -> VerificationReport {
    let mut rep = VerificationReport::new(n_max, precision_of(rec));
    let pd = pearson_data(spec);
    let d = sc.p.max(sc.q + 1);
    let top = (rec.n_max() + 1).min(n_max.min(sc.a.n_max()) + d);
    let mut de1 = Residual::new();
    let mut de2 = Residual::new();
    let last_x = x_max.max((n_max + d) as u64);
    let mut at = Vec::with_capacity(last_x as usize + 2);
    for x in -1..=last_x as i64 + 1 {
        at.push(eval_polys(rec, &Scalar::int(x), top));
    }
    // at[x + 1] = P(x)
    let p_at = |x: u64| &at[x as usize + 1];
    for n in 0..=n_max.min(sc.a.n_max()) {
        // the sum and the sum of term magnitudes
        let expand = |band: &Band, x: u64| -> Option<(Scalar, Float)> {
            let vals = p_at(x);
            let mut acc = Scalar::zero();
            let mut size = Float::new(NOMINAL_BITS);
            for k in band.k_range() {
                let m = n as i64 + k;
                if m < 0 {
                    continue;
                }
                let term = &band.get(n, k)? * vals.get(m as usize)?;
                size += nominal(&term);
                acc = &acc + &term;
            }
            Some((acc, size))
        };
        for x in 0..=last_x {
            let xs = Scalar::int(x as i64);
            if let Some((sum, size)) = expand(&sc.a, x) {
                let lhs = &pd.lambda.eval(&xs) * &at[x as usize + 2][n];
                de1.record_scaled(&(&lhs - &sum), &(size + nominal(&lhs)));
            }
            if let Some((sum, size)) = expand(&sc.b, x) {
                let lhs = &pd.phi.eval(&xs) * &at[x as usize][n];
                de2.record_scaled(&(&lhs - &sum), &(size + nominal(&lhs)));
            }
        }
    }
    rep.de1 = Some(de1);
    rep.de2 = Some(de2);
    rep
}

/// Gram matrix `L[P_n P_m]` by weighted summation over the support.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalityReport {
    /// `h_n = L[P_n²]` for the unnormalized weight
    pub h: Vec<Scalar>,
    /// max over `m < n` of `|L[P_n P_m]| / sqrt(h_n h_m)`, error radii included
    pub max_offdiag: f64,
    /// bound on the discarded tail, in the same normalization (0 for finite support)
    pub tail: f64,
    /// max over `n >= 1` of `|γ_n - h_n/h_{n-1}| / |γ_n|`
    pub gamma_ratio: f64,
    /// exact-mode check through exact moments: every off-diagonal is zero
    pub exact_functional: Option<bool>,
}

/// Most points summed before giving up on the tail target.
pub const MAX_GRAM_POINTS: u64 = 5_000_000;

/// `L[P_n P_m]` for `m <= n <= N` by summing `ρ(x) P_n(x) P_m(x)`.
///
/// Finite support is summed exactly when `rec` is exact. Infinite support is
/// summed in float arithmetic at the table's precision (256 bits for exact
/// tables) until the normalized tail bound is at most `target_err`; exact
/// tables are then also checked against exact moments where those exist.
pub fn orthogonality_check(spec: &WeightSpec, rec: &RecurrenceTable, n_max: usize, target_err: f64) -> Result<OrthogonalityReport> {
    let conv = classify_convergence(spec)?;
    if let Some(m) = conv.max_order() {
        if (m as usize) < 2 * n_max {
            return Err(Error::Divergent(format!("L[P_n P_m] to n = {n_max} needs moments to order {}, only {m} converge", 2 * n_max)));
        }
    }
    let finite = matches!(conv, Convergence::FiniteSupport(_));
    let prec = match precision_of(rec) {
        Some(p) => Some(p),
        None if finite && spec.is_exact() => None,
        None => Some(DEFAULT_PRECISION),
    };
    let lifted;
    let (fspec, frec) = match prec {
        None => (spec, rec),
        Some(p) => {
            lifted = (spec.lift(Arithmetic::float(p))?, lift_table(rec, p));
            (&lifted.0, &lifted.1)
        }
    };
    let polys = monic_polys(frec, n_max);
    let coeff_sum: Vec<f64> = polys.iter().map(Poly::abs_coeff_sum).collect();
    let mut gram = vec![vec![Scalar::zero(); n_max + 1]; n_max + 1];
    let mut iter = WeightIter::new(fspec, prec);
    let ratio = TailRatio::new(&iter);
    // bound on Σ_{x' > x} |ρ(x')| x'^{2N}
    let mut raw_tail = Mag::ZERO;
    let mut tail = 0.0;
    for (x, rho) in iter.by_ref() {
        let vals = eval_polys(frec, &Scalar::int(x as i64), n_max);
        let wv: Vec<Scalar> = vals.iter().map(|v| &rho * v).collect();
        for n in 0..=n_max {
            for m in 0..=n {
                gram[n][m] = &gram[n][m] + &(&wv[n] * &vals[m]);
            }
        }
        if finite || x == 0 {
            continue;
        }
        let Some(base) = ratio.at(x) else { continue };
        let e = 2 * n_max as i32;
        let r = base * (1.0 + 1.0 / x as f64).powi(e) * (1.0 + 1e-12);
        let t = (&rho * &Scalar::int(x as i64).powu(e as u32)).abs_bound();
        raw_tail = if r < 1.0 { t.mul(Mag::from_f64(r / (1.0 - r))) } else { Mag::INF };
        // |P_n(x)| <= C_n x^n for x >= 1
        let scale = (0..=n_max).map(|n| coeff_sum[n] / gram[n][n].abs().to_f64().sqrt()).fold(0.0, f64::max);
        tail = raw_tail.mul(Mag::from_f64(scale * scale)).to_f64();
        if tail <= target_err {
            break;
        }
        if x >= MAX_GRAM_POINTS {
            return Err(Error::TailBoundUnavailable(format!("Gram tail not below {target_err:e} after {x} points")));
        }
    }
    if !finite {
        for n in 0..=n_max {
            for m in 0..=n {
                if let Scalar::Float(b) = &gram[n][m] {
                    let extra = raw_tail.mul(Mag::from_f64(coeff_sum[n] * coeff_sum[m]));
                    gram[n][m] = Scalar::Float(b.clone().inflate(extra));
                }
            }
        }
    }
    let h: Vec<Scalar> = (0..=n_max).map(|n| gram[n][n].clone()).collect();
    let mut max_offdiag: f64 = 0.0;
    for n in 1..=n_max {
        for m in 0..n {
            let norm = (h[n].abs().to_f64() * h[m].abs().to_f64()).sqrt();
            max_offdiag = max_offdiag.max(gram[n][m].abs_bound().to_f64() / norm);
        }
    }
    let mut gamma_ratio: f64 = 0.0;
    for n in 1..=n_max.min(frec.n_max()) {
        let g = &frec.gamma[n];
        let dev = (g - &(&h[n] / &h[n - 1])).abs_bound().to_f64() / g.abs().to_f64();
        gamma_ratio = gamma_ratio.max(dev);
    }
    let exact_functional = (!finite && rec.is_exact() && spec.is_exact()).then(|| exact_functional_check(spec, rec, n_max)).flatten();
    Ok(OrthogonalityReport { h, max_offdiag, tail: if finite { 0.0 } else { tail }, gamma_ratio, exact_functional })
}

/// `L[P_n P_m] = 0` for `m < n <= N` through exact normalized moments, when
/// the weight admits them.
fn exact_functional_check(spec: &WeightSpec, rec: &RecurrenceTable, n_max: usize) -> Option<bool> {
    let mom = default_moments(spec, 2 * n_max, Arithmetic::Exact).ok()?;
    let polys = monic_polys(rec, n_max);
    // L[P_n P_m] = Σ_i c_{n,i} L[x^i P_m]
    let ok = (0..n_max).all(|m| {
        let ip: Vec<Scalar> = (0..=n_max).map(|i| dot(polys[m].coeffs(), &mom.values[i..])).collect();
        (m + 1..=n_max).all(|n| dot(polys[n].coeffs(), &ip).is_zero())
    });
    Some(ok)
}

fn lift_table(rec: &RecurrenceTable, prec: u32) -> RecurrenceTable {
    RecurrenceTable {
        beta: rec.beta.iter().map(|v| v.to_float(prec)).collect(),
        gamma: rec.gamma.iter().map(|v| v.to_float(prec)).collect(),
        h: rec.h.as_ref().map(|h| h.iter().map(|v| v.to_float(prec)).collect()),
        method: rec.method,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfreud::{hahn_closed_form, meixner_closed_form};
    use crate::oracle::oracle_table;

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn meixner(n: usize) -> (WeightSpec, RecurrenceTable) {
        let spec = WeightSpec::meixner(r(1, 1), r(1, 2)).unwrap();
        (spec, meixner_closed_form(&r(1, 1), &r(1, 2), n).unwrap())
    }

    #[test]
    fn polynomial_values() {
        let (_, rec) = meixner(3);
        let x = r(7, 3);
        let v = eval_polys(&rec, &x, 3);
        assert_eq!(v[0], Scalar::one());
        assert_eq!(v[1], &x - &rec.beta[0]);
        assert_eq!(eval_polys(&rec, &Scalar::zero(), 2)[2], Scalar::int(2));
        let polys = monic_polys(&rec, 3);
        for (p, val) in polys.iter().zip(&v) {
            assert_eq!(&p.eval(&x), val);
        }
    }

    #[test]
    fn meixner_bands() {
        let (spec, rec) = meixner(11);
        let sc = structure_coeffs(&spec, &rec, 10).unwrap();
        assert_eq!(sc.a.k_range(), -1..=1);
        assert_eq!(sc.b.k_range(), -1..=1);
        let z = r(1, 2);
        for n in 0..=10usize {
            let g = |i: usize| rec.gamma[i].clone();
            assert_eq!(sc.a.get(n, 1), Some(z.clone()));
            assert_eq!(sc.a.get(n, -1), Some(if n == 0 { Scalar::zero() } else { g(n) }));
            assert_eq!(sc.a.get(n, -1).unwrap(), Scalar::int(2 * (n * n) as i64));
            let b0 = &(&Scalar::one() - &z) * &(&g(n + 1) - &g(n));
            assert_eq!(sc.b.get(n, 1), Some(Scalar::one()));
            assert_eq!(sc.b.get(n, 0), Some(b0));
            assert_eq!(sc.b.get(n, -1), Some(&z * &g(n)));
        }
        assert_eq!(sc.a.get(1, 0), Some(Scalar::int(3)));
    }

    #[test]
    fn meixner_identities_exact() {
        let (spec, rec) = meixner(11);
        let sc = structure_coeffs(&spec, &rec, 10).unwrap();
        let mut rep = band_identity_residuals(&sc, &rec, spec.z());
        rep.merge(de_pointwise_check(&spec, &rec, &sc, 10, 0));
        for (name, res) in rep.entries().iter().take(7) {
            let res = res.unwrap();
            assert_eq!(res.max, 0.0, "{name}");
            assert!(res.instances > 0, "{name}");
        }
        assert_eq!(rep.precision_bits, None);
        assert!(rep.passes(0.0));
    }

    #[test]
    fn meixner_n0_relations() {
        // z(x+a) = (1-z)γ_1 + z(x - β_0) and x = (1-z)γ_1 + x - β_0
        let (spec, rec) = meixner(2);
        let sc = structure_coeffs(&spec, &rec, 0).unwrap();
        let half = r(1, 2);
        assert_eq!(sc.a.get(0, 0), Some(&half * &rec.gamma[1]));
        assert_eq!(sc.b.get(0, 0), Some(&half * &rec.gamma[1]));
        assert_eq!(&half * &rec.gamma[1], rec.beta[0]);
    }

    #[test]
    fn ghahn_identities_float() {
        let (a1, a2, b, z) = (r(1, 1), r(1, 1), r(1, 1), r(1, 2));
        let spec = WeightSpec::ghahn1(a1.clone(), a2.clone(), b.clone(), z.clone()).unwrap();
        let rec = oracle_table(&spec, 12, Arithmetic::float(256), 1e-40).unwrap();
        let sc = structure_coeffs(&spec, &rec, 10).unwrap();
        let mut rep = band_identity_residuals(&sc, &rec, &z);
        rep.merge(de_pointwise_check(&spec, &rec, &sc, 10, 0));
        assert!(rep.passes(1e-20), "{rep:?}");
        assert!(rep.max_residual() > 0.0);
        let sa = &a1 + &a2;
        for n in 1..=10usize {
            let ns = Scalar::int(n as i64);
            let (bn, bp, bx) = (&rec.beta[n], &rec.beta[n - 1], &rec.beta[n + 1]);
            let a1n = &z * &(&(&(bx + bn) + &ns) + &sa);
            let am1 = &rec.gamma[n] * &(&(&(bn + bp) - &ns) + &(&b + &Scalar::one()));
            assert!((&sc.a.get(n, 1).unwrap() - &a1n).abs_bound().to_f64() < 1e-20);
            assert!((&sc.a.get(n, -1).unwrap() - &am1).abs_bound().to_f64() < 1e-20);
        }
    }

    #[test]
    fn generalized_charlier_band_shape() {
        let spec = WeightSpec::gen_charlier(r(1, 1), r(1, 2)).unwrap();
        let rec = oracle_table(&spec, 10, Arithmetic::float(256), 1e-40).unwrap();
        let sc = structure_coeffs(&spec, &rec, 8).unwrap();
        assert_eq!(sc.a.k_range(), -2..=0);
        assert_eq!(sc.b.k_range(), 0..=2);
        let mut rep = band_identity_residuals(&sc, &rec, spec.z());
        rep.merge(de_pointwise_check(&spec, &rec, &sc, 8, 0));
        assert!(rep.passes(1e-20), "{rep:?}");
    }

    #[test]
    fn finite_hahn_exact() {
        let (a1, a2, b) = (r(1, 1), r(-4, 1), r(-5, 1));
        let spec = WeightSpec::hahn(a1.clone(), a2.clone(), b.clone()).unwrap();
        let rec = hahn_closed_form(&a1, &a2, &b, 4).unwrap();
        let sc = structure_coeffs(&spec, &rec, 4).unwrap();
        // h_5 = 0: P_5 vanishes on the support
        assert_eq!(sc.h.len(), 5);
        assert_eq!(sc.a.get(4, 1), None);
        let mut rep = band_identity_residuals(&sc, &rec, spec.z());
        rep.merge(de_pointwise_check(&spec, &rec, &sc, 4, 0));
        assert!(rep.passes(0.0), "{rep:?}");
        assert!(rep.req.unwrap().instances > 0);
    }

    #[test]
    fn orthogonality_finite_exact() {
        let (a1, a2, b) = (r(1, 1), r(-4, 1), r(-5, 1));
        let spec = WeightSpec::hahn(a1.clone(), a2.clone(), b.clone()).unwrap();
        let rec = hahn_closed_form(&a1, &a2, &b, 4).unwrap();
        let o = orthogonality_check(&spec, &rec, 4, 0.0).unwrap();
        assert_eq!(o.max_offdiag, 0.0);
        assert_eq!(o.h[0], Scalar::int(5));
        assert_eq!(o.h[1], Scalar::int(10));
        assert_eq!(o.gamma_ratio, 0.0);
        let o = orthogonality_check(&spec, &rec, 0, 0.0).unwrap();
        assert_eq!(o.h, vec![Scalar::int(5)]);
    }

    #[test]
    fn orthogonality_meixner() {
        let (spec, rec) = meixner(6);
        let o = orthogonality_check(&spec, &rec, 6, 1e-25).unwrap();
        assert!(o.tail <= 1e-25);
        assert!(o.max_offdiag < 1e-20, "{}", o.max_offdiag);
        assert!(o.gamma_ratio < 1e-20);
        assert_eq!(o.exact_functional, Some(true));
        // μ_0 = Σ 2^{-x} = 2
        assert!((&o.h[0] - &Scalar::int(2)).abs_bound().to_f64() < 1e-20);
    }

    #[test]
    fn orthogonality_detects_wrong_table() {
        let (spec, mut rec) = meixner(4);
        rec.gamma[2] = &rec.gamma[2] + &r(1, 100);
        let o = orthogonality_check(&spec, &rec, 4, 1e-25).unwrap();
        assert!(o.max_offdiag > 1e-6);
        assert_eq!(o.exact_functional, Some(false));
    }
}
