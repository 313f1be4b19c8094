//! Coefficient-space calculus for the Hermite operator `H(λ) = −Δ + λ²|x|²`.
//!
//! A [`CoeffVec`] holds coefficients against the normalized Hermite functions
//! `Φ_α^λ` on the truncated simplex `|α| ≤ K`. In that basis
//!
//! * `A_j(λ) = −∂_j + λξ_j` maps `Φ_α ↦ ((2α_j+2)λ)^{1/2} Φ_{α+e_j}`,
//! * `A_j*(λ) = ∂_j + λξ_j` maps `Φ_α ↦ (2α_jλ)^{1/2} Φ_{α−e_j}`,
//! * `H(λ)` is diagonal with eigenvalue `(2|α|+n)|λ|`.
//!
//! Raises that would leave the simplex drop their mass, and the dropped
//! squared norm is reported alongside the result.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::special_fn::MultiIndex;
use crate::{Error, Result};

/// `κ⁺(a, λ) = ((2a+2)λ)^{1/2}`, the creation constant.
pub fn raise_constant(a: u32, lambda: f64) -> f64 {
    ((2.0 * a as f64 + 2.0) * lambda).sqrt()
}

/// `κ⁻(a, λ) = (2aλ)^{1/2}`, the annihilation constant.
pub fn lower_constant(a: u32, lambda: f64) -> f64 {
    (2.0 * a as f64 * lambda).sqrt()
}

/// Hermite eigenvalue `(2|α|+n)|λ|`.
pub fn hermite_eigenvalue(alpha: &MultiIndex, lambda: f64) -> f64 {
    (2.0 * alpha.order() as f64 + alpha.len() as f64) * lambda.abs()
}

/// Truncated Hermite coefficient vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVec {
    n: usize,
    trunc: u32,
    lambda: f64,
    data: BTreeMap<MultiIndex, Complex64>,
}

impl CoeffVec {
    pub fn zero(n: usize, trunc: u32, lambda: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "dimension must be at least 1".into(),
            ));
        }
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "λ must be nonzero and finite, got {lambda}"
            )));
        }
        Ok(CoeffVec {
            n,
            trunc,
            lambda,
            data: BTreeMap::new(),
        })
    }

    /// Builds from explicit entries; every key must have length `n` and order `≤ trunc`.
    pub fn from_entries(
        n: usize,
        trunc: u32,
        lambda: f64,
        entries: impl IntoIterator<Item = (MultiIndex, Complex64)>,
    ) -> Result<Self> {
        let mut c = Self::zero(n, trunc, lambda)?;
        for (alpha, value) in entries {
            c.check_key(&alpha)?;
            if value != Complex64::new(0.0, 0.0) {
                *c.data.entry(alpha).or_default() += value;
            }
        }
        Ok(c)
    }

    /// The basis vector `e_α`.
    pub fn basis(n: usize, trunc: u32, lambda: f64, alpha: MultiIndex) -> Result<Self> {
        Self::from_entries(n, trunc, lambda, [(alpha, Complex64::new(1.0, 0.0))])
    }

    fn check_key(&self, alpha: &MultiIndex) -> Result<()> {
        if alpha.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: alpha.len(),
            });
        }
        if alpha.order() > self.trunc {
            return Err(Error::SupportViolation {
                index: alpha.entries().to_vec(),
                order: alpha.order(),
                limit: self.trunc,
            });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn get(&self, alpha: &MultiIndex) -> Complex64 {
        self.data.get(alpha).copied().unwrap_or_default()
    }

    /// Nonzero entries in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.data.iter()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest order present in the support, `None` for the zero vector.
    pub fn max_order(&self) -> Option<u32> {
        self.data.keys().map(|a| a.order()).max()
    }

    /// `⟨self, other⟩ = Σ c_α conj(d_α)`.
    pub fn inner(&self, other: &CoeffVec) -> Complex64 {
        self.data.iter().map(|(a, c)| c * other.get(a).conj()).sum()
    }

    fn empty_like(&self) -> CoeffVec {
        CoeffVec {
            n: self.n,
            trunc: self.trunc,
            lambda: self.lambda,
            data: BTreeMap::new(),
        }
    }

    fn map_diagonal(&self, f: impl Fn(&MultiIndex) -> f64) -> CoeffVec {
        let mut out = self.empty_like();
        out.data = self
            .data
            .iter()
            .map(|(a, c)| (a.clone(), c * f(a)))
            .collect();
        out
    }

    pub fn scale(&self, factor: Complex64) -> CoeffVec {
        let mut out = self.empty_like();
        out.data = self
            .data
            .iter()
            .map(|(a, c)| (a.clone(), c * factor))
            .collect();
        out
    }

    /// `self + factor · other`.
    pub fn axpy(&self, factor: Complex64, other: &CoeffVec) -> CoeffVec {
        let mut out = self.clone();
        for (a, c) in &other.data {
            *out.data.entry(a.clone()).or_default() += c * factor;
        }
        out
    }

    pub fn sub(&self, other: &CoeffVec) -> CoeffVec {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if axis < self.n {
            Ok(())
        } else {
            Err(Error::AxisOutOfRange { axis, n: self.n })
        }
    }

    fn check_positive_lambda(&self) -> Result<()> {
        if self.lambda > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "ladder operators need λ > 0, got {}",
                self.lambda
            )))
        }
    }
}

/// Output of a raise: the truncated image and the squared norm that left the simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct Raised {
    pub coeffs: CoeffVec,
    pub dropped_norm_sqr: f64,
}

/// `A_j(λ)`: `e_α ↦ κ⁺(α_j, λ) e_{α+e_j}`.
pub fn raise(axis: usize, c: &CoeffVec) -> Result<Raised> {
    c.check_axis(axis)?;
    c.check_positive_lambda()?;
    let mut out = c.empty_like();
    let mut dropped = 0.0;
    for (alpha, value) in &c.data {
        let target = alpha.add_unit(axis);
        let v = value * raise_constant(alpha.get(axis), c.lambda);
        if target.order() > c.trunc {
            dropped += v.norm_sqr();
        } else {
            out.data.insert(target, v);
        }
    }
    Ok(Raised {
        coeffs: out,
        dropped_norm_sqr: dropped,
    })
}

/// `A_j*(λ)`: `e_α ↦ κ⁻(α_j, λ) e_{α−e_j}`, annihilating `α_j = 0`.
pub fn lower(axis: usize, c: &CoeffVec) -> Result<CoeffVec> {
    c.check_axis(axis)?;
    c.check_positive_lambda()?;
    let mut out = c.empty_like();
    for (alpha, value) in &c.data {
        if let Some(target) = alpha.sub_unit(axis) {
            out.data
                .insert(target, value * lower_constant(alpha.get(axis), c.lambda));
        }
    }
    Ok(out)
}

/// `H(λ)^s`, diagonal with `((2|α|+n)|λ|)^s`.
pub fn h_power(s: f64, c: &CoeffVec) -> CoeffVec {
    let lambda = c.lambda;
    c.map_diagonal(|a| hermite_eigenvalue(a, lambda).powf(s))
}

/// Raise that refuses to lose mass.
fn raise_exact(axis: usize, c: &CoeffVec) -> Result<CoeffVec> {
    let Raised {
        coeffs,
        dropped_norm_sqr,
    } = raise(axis, c)?;
    if dropped_norm_sqr > 0.0 {
        let offender = c
            .data
            .keys()
            .find(|a| a.order() + 1 > c.trunc)
            .expect("dropped mass implies a boundary index");
        return Err(Error::SupportViolation {
            index: offender.entries().to_vec(),
            order: offender.order(),
            limit: c.trunc - 1,
        });
    }
    Ok(coeffs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RieszSide {
    /// Multiplier `A_j(λ) H(λ)^{−1/2}`, the fiber of `R_j = Z_j ℒ^{−1/2}`.
    Annihilate,
    /// Multiplier `A_j*(λ) H(λ)^{−1/2}`, the fiber of `R̄_j = Z̄_j ℒ^{−1/2}`.
    Create,
}

/// First-order Riesz multiplier on coefficients. Raises that exit the
/// simplex are dropped; use interior inputs (`|α| ≤ K−1`) for exact identities.
pub fn riesz_first(axis: usize, side: RieszSide, c: &CoeffVec) -> Result<CoeffVec> {
    let damped = h_power(-0.5, c);
    match side {
        RieszSide::Annihilate => Ok(raise(axis, &damped)?.coeffs),
        RieszSide::Create => lower(axis, &damped),
    }
}

/// `Σ_j (‖A_j H^{−1/2} c‖² + ‖A_j* H^{−1/2} c‖²)`. Equals `2‖c‖²` whenever
/// `c` is supported on `|α| ≤ K−1`, since `((2α_j+2) + 2α_j)λ` summed over `j`
/// is `2(2|α|+n)λ`.
pub fn square_function_sum(c: &CoeffVec) -> Result<f64> {
    (0..c.n).try_fold(0.0, |acc, j| {
        let a = riesz_first(j, RieszSide::Annihilate, c)?.norm_sqr();
        let b = riesz_first(j, RieszSide::Create, c)?.norm_sqr();
        Ok(acc + a + b)
    })
}

/// Random coefficients, real and imaginary parts uniform in `[−1, 1)`, on
/// every index with `|α| ≤ support`.
pub fn random_coeffs<R: Rng>(
    n: usize,
    trunc: u32,
    lambda: f64,
    support: u32,
    rng: &mut R,
) -> Result<CoeffVec> {
    if support > trunc {
        return Err(Error::InvalidParameter(format!(
            "support {support} exceeds truncation {trunc}"
        )));
    }
    let mut c = CoeffVec::zero(n, trunc, lambda)?;
    for alpha in MultiIndex::simplex(n, support) {
        let v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        c.data.insert(alpha, v);
    }
    Ok(c)
}

fn check_interior(c: &CoeffVec, margin: u32) -> Result<()> {
    let limit = c.trunc.saturating_sub(margin);
    if margin > c.trunc {
        return Err(Error::InvalidParameter(format!(
            "truncation {} too small for {margin} raises",
            c.trunc
        )));
    }
    match c.data.keys().find(|a| a.order() > limit) {
        Some(a) => Err(Error::SupportViolation {
            index: a.entries().to_vec(),
            order: a.order(),
            limit,
        }),
        None => Ok(()),
    }
}

/// `A_k^q A_j^{*p} H^{−(p+q)/2}` for `j ≠ k`; the multiplier of the Riesz
/// transform attached to the solid harmonic `z_j^p z̄_k^q`.
pub fn riesz_monomial(p: u32, q: u32, j: usize, k: usize, c: &CoeffVec) -> Result<CoeffVec> {
    if c.n < 2 {
        return Err(Error::InvalidParameter(
            "monomial Riesz transforms need n >= 2".into(),
        ));
    }
    c.check_axis(j)?;
    c.check_axis(k)?;
    if j == k {
        return Err(Error::InvalidParameter("axes j and k must differ".into()));
    }
    check_interior(c, q)?;
    let mut out = h_power(-0.5 * (p + q) as f64, c);
    for _ in 0..p {
        out = lower(j, &out)?;
    }
    for _ in 0..q {
        out = raise_exact(k, &out)?;
    }
    Ok(out)
}

/// `‖LHS c − RHS c‖ / ‖c‖` for the factorization
/// `A_2^q A_1^{*p} H^{−(p+q)/2} = A_2^{q−p} H^{−(q−p)/2} (H^{−1/2} A_2 A_1* H^{−1/2})^p`,
/// with axes 1, 2 taken as the first two coordinates.
pub fn factorization_defect(p: u32, q: u32, c: &CoeffVec) -> Result<f64> {
    if p < 1 || q < p {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= p <= q, got p={p}, q={q}"
        )));
    }
    if c.norm_sqr() == 0.0 {
        return Ok(0.0);
    }
    let lhs = riesz_monomial(p, q, 0, 1, c)?;

    let mut rhs = c.clone();
    for _ in 0..p {
        rhs = h_power(-0.5, &rhs);
        rhs = lower(0, &rhs)?;
        rhs = raise_exact(1, &rhs)?;
        rhs = h_power(-0.5, &rhs);
    }
    rhs = h_power(-0.5 * (q - p) as f64, &rhs);
    for _ in 0..(q - p) {
        rhs = raise_exact(1, &rhs)?;
    }
    Ok(lhs.sub(&rhs).norm() / c.norm())
}

/// Result of measuring `A_j A_j* − A_j* A_j` on the interior basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorReport {
    /// Best constant `c*` in the max-norm sense.
    pub constant: f64,
    /// `max_α ‖[A_j, A_j*] e_α − c* e_α‖`.
    pub residual: f64,
    /// `max_α ‖(H A_j − A_j H + c* A_j) e_α‖`: the shift `H A_j = A_j H − c* A_j`.
    pub shift_defect: f64,
}

/// Measures the commutator constant on basis vectors `e_α`, `|α| ≤ K−1`, in dimension `n`.
pub fn commutator_measure(
    axis: usize,
    lambda: f64,
    trunc: u32,
    n: usize,
) -> Result<CommutatorReport> {
    if trunc < 2 {
        return Err(Error::InvalidParameter(
            "commutator measurement needs K >= 2".into(),
        ));
    }
    if axis >= n {
        return Err(Error::AxisOutOfRange { axis, n });
    }
    let interior = MultiIndex::simplex(n, trunc - 1);
    let mut diag = Vec::with_capacity(interior.len());
    let mut images = Vec::with_capacity(interior.len());
    for alpha in &interior {
        let e = CoeffVec::basis(n, trunc, lambda, alpha.clone())?;
        let up_down = raise_exact(axis, &lower(axis, &e)?)?;
        let down_up = lower(axis, &raise_exact(axis, &e)?)?;
        let comm = up_down.sub(&down_up);
        diag.push(comm.get(alpha).re);
        images.push((e, comm));
    }
    let lo = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let constant = 0.5 * (lo + hi);

    let mut residual: f64 = 0.0;
    let mut shift_defect: f64 = 0.0;
    let h = |v: &CoeffVec| h_power(1.0, v);
    for (e, comm) in &images {
        let r = comm.axpy(Complex64::new(-constant, 0.0), e).norm();
        residual = residual.max(r);
        if e.max_order().unwrap_or(0) + 2 <= trunc {
            let ha = h(&raise_exact(axis, e)?);
            let ah = raise_exact(axis, &h(e))?;
            let a = raise_exact(axis, e)?;
            let d = ha.sub(&ah).axpy(Complex64::new(constant, 0.0), &a).norm();
            shift_defect = shift_defect.max(d);
        }
    }
    Ok(CommutatorReport {
        constant,
        residual,
        shift_defect,
    })
}

fn check_unitary(u: &DMatrix<Complex64>, n: usize) -> Result<()> {
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: u.nrows(),
        });
    }
    let gram = u * u.adjoint();
    let defect = (gram - DMatrix::<Complex64>::identity(n, n))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if defect > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "matrix not unitary: defect {defect:e}"
        )));
    }
    Ok(())
}

/// ℓ²-aggregated norms of the full first-order Riesz vector of `c`, before and
/// after the substitution `A_j ↦ Σ_k U_{jk} A_k`, `A_j* ↦ Σ_k conj(U_{jk}) A_k*`.
pub fn rotation_norm_equality(u: &DMatrix<Complex64>, c: &CoeffVec) -> Result<(f64, f64)> {
    let n = c.n;
    check_unitary(u, n)?;
    let ann: Vec<CoeffVec> = (0..n)
        .map(|j| riesz_first(j, RieszSide::Annihilate, c))
        .collect::<Result<_>>()?;
    let cre: Vec<CoeffVec> = (0..n)
        .map(|j| riesz_first(j, RieszSide::Create, c))
        .collect::<Result<_>>()?;

    let plain: f64 = ann.iter().chain(&cre).map(CoeffVec::norm_sqr).sum();
    let mut rotated = 0.0;
    for j in 0..n {
        let mut a = c.empty_like();
        let mut b = c.empty_like();
        for k in 0..n {
            a = a.axpy(u[(j, k)], &ann[k]);
            b = b.axpy(u[(j, k)].conj(), &cre[k]);
        }
        rotated += a.norm_sqr() + b.norm_sqr();
    }
    Ok((plain.sqrt(), rotated.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::hermite_fn;
    use approx::assert_relative_eq;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    /// Projection of a finite-difference ladder image onto a neighbouring
    /// Hermite function. `sign = −1` gives `−d/dξ + λξ`, `+1` gives `d/dξ + λξ`.
    fn ladder_projection(k: u32, target: u32, lambda: f64, sign: f64) -> f64 {
        let step = 1e-4;
        let width = 14.0 / lambda.sqrt();
        let samples = 20_000;
        let dx = 2.0 * width / samples as f64;
        (0..=samples)
            .map(|i| {
                let x = -width + i as f64 * dx;
                let deriv = (hermite_fn(k, lambda, x + step) - hermite_fn(k, lambda, x - step))
                    / (2.0 * step);
                let image = sign * deriv + lambda * x * hermite_fn(k, lambda, x);
                let w = if i == 0 || i == samples { 0.5 } else { 1.0 };
                w * image * hermite_fn(target, lambda, x)
            })
            .sum::<f64>()
            * dx
    }

    #[test]
    fn ladder_constants_match_finite_difference_oracle() {
        for &lambda in &[0.5, 1.0, 2.0] {
            for k in 0..=5u32 {
                let up = ladder_projection(k, k + 1, lambda, -1.0);
                assert_relative_eq!(up, raise_constant(k, lambda), max_relative = 1e-6);
                if k > 0 {
                    let down = ladder_projection(k, k - 1, lambda, 1.0);
                    assert_relative_eq!(down, lower_constant(k, lambda), max_relative = 1e-6);
                }
            }
        }
        assert_relative_eq!(
            ladder_projection(0, 1, 1.0, -1.0),
            2f64.sqrt(),
            max_relative = 1e-6
        );
    }

    #[test]
    fn raise_and_lower_basics() {
        let z = CoeffVec::zero(2, 5, 1.0).unwrap();
        assert_eq!(raise(0, &z).unwrap().coeffs, z);
        let e0 = CoeffVec::basis(1, 5, 1.0, mi(&[0])).unwrap();
        assert_eq!(lower(0, &e0).unwrap().norm(), 0.0);
        let up = raise(0, &e0).unwrap().coeffs;
        assert_relative_eq!(up.get(&mi(&[1])).re, raise_constant(0, 1.0));
        let back = lower(0, &up).unwrap();
        assert_relative_eq!(
            back.get(&mi(&[0])).re,
            raise_constant(0, 1.0) * lower_constant(1, 1.0),
            max_relative = 1e-15
        );
    }

    #[test]
    fn raise_reports_dropped_mass() {
        let c = CoeffVec::basis(2, 3, 1.0, mi(&[2, 1])).unwrap();
        let r = raise(0, &c).unwrap();
        assert_eq!(r.coeffs.norm(), 0.0);
        assert_relative_eq!(r.dropped_norm_sqr, 6.0, max_relative = 1e-15);
    }

    #[test]
    fn ladder_rejects_nonpositive_lambda_and_bad_axis() {
        let c = CoeffVec::basis(2, 3, -1.0, mi(&[0, 0])).unwrap();
        assert!(raise(0, &c).is_err());
        assert!(lower(0, &c).is_err());
        let c = CoeffVec::basis(2, 3, 1.0, mi(&[0, 0])).unwrap();
        assert!(matches!(raise(2, &c), Err(Error::AxisOutOfRange { .. })));
        assert!(CoeffVec::basis(2, 3, 1.0, mi(&[3, 1])).is_err());
    }

    #[test]
    fn h_power_examples() {
        let c = CoeffVec::basis(2, 4, 1.0, mi(&[0, 0])).unwrap();
        assert_eq!(h_power(0.0, &c), c);
        assert_relative_eq!(
            h_power(-0.5, &c).get(&mi(&[0, 0])).re,
            0.5f64.sqrt(),
            max_relative = 1e-15
        );
        let neg = CoeffVec::basis(1, 4, -2.0, mi(&[1])).unwrap();
        assert_relative_eq!(h_power(1.0, &neg).get(&mi(&[1])).re, 6.0);
    }

    #[test]
    fn riesz_first_examples() {
        let e0 = CoeffVec::basis(1, 4, 1.0, mi(&[0])).unwrap();
        assert_eq!(riesz_first(0, RieszSide::Create, &e0).unwrap().norm(), 0.0);
        let e1 = CoeffVec::basis(1, 4, 1.0, mi(&[1])).unwrap();
        let out = riesz_first(0, RieszSide::Create, &e1).unwrap();
        assert_relative_eq!(
            out.get(&mi(&[0])).re,
            lower_constant(1, 1.0) / 3f64.sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn riesz_monomial_examples() {
        let c = CoeffVec::basis(2, 6, 1.0, mi(&[1, 0])).unwrap();
        assert_eq!(riesz_monomial(0, 0, 0, 1, &c).unwrap(), c);
        let e0 = CoeffVec::basis(2, 6, 1.0, mi(&[0, 0])).unwrap();
        assert_eq!(riesz_monomial(1, 0, 0, 1, &e0).unwrap().norm(), 0.0);
        let out = riesz_monomial(1, 1, 0, 1, &c).unwrap();
        let want = lower_constant(1, 1.0) * raise_constant(0, 1.0) / 4.0;
        assert_relative_eq!(out.get(&mi(&[0, 1])).re, want, max_relative = 1e-15);
        let edge = CoeffVec::basis(2, 6, 1.0, mi(&[6, 0])).unwrap();
        match riesz_monomial(1, 1, 0, 1, &edge) {
            Err(Error::SupportViolation { index, .. }) => assert_eq!(index, vec![6, 0]),
            other => panic!("expected support violation, got {other:?}"),
        }
        let one_d = CoeffVec::basis(1, 6, 1.0, mi(&[1])).unwrap();
        assert!(riesz_monomial(1, 1, 0, 1, &one_d).is_err());
    }

    #[test]
    fn factorization_examples() {
        let c = CoeffVec::from_entries(
            2,
            8,
            1.0,
            [
                (mi(&[1, 0]), one()),
                (mi(&[2, 3]), Complex64::new(0.3, -1.1)),
                (mi(&[3, 2]), Complex64::new(-0.7, 0.2)),
            ],
        )
        .unwrap();
        assert!(factorization_defect(1, 1, &c).unwrap() < 1e-12);
        let e20 = CoeffVec::basis(2, 6, 1.0, mi(&[2, 0])).unwrap();
        assert!(factorization_defect(1, 2, &e20).unwrap() < 1e-12);
        let z = CoeffVec::zero(2, 6, 1.0).unwrap();
        assert_eq!(factorization_defect(1, 1, &z).unwrap(), 0.0);
        assert!(factorization_defect(2, 1, &e20).is_err());
    }

    #[test]
    fn commutator_constant_is_minus_two_lambda() {
        let base = commutator_measure(0, 1.0, 8, 2).unwrap();
        assert!(base.residual <= 1e-12);
        assert!(base.shift_defect <= 1e-12);
        // direct bookkeeping from the ladder constants: 2α_jλ − (2α_j+2)λ
        assert_relative_eq!(base.constant, -2.0, max_relative = 1e-14);
        for &lambda in &[0.5, 2.0] {
            let r = commutator_measure(1, lambda, 8, 2).unwrap();
            assert!(((r.constant / base.constant) - lambda).abs() <= 1e-12);
        }
    }

    #[test]
    fn square_function_is_twice_the_norm() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in 1..=3 {
            for &lambda in &[0.5, 2.0] {
                let c = random_coeffs(n, 7, lambda, 6, &mut rng).unwrap();
                let s = square_function_sum(&c).unwrap();
                assert!((s - 2.0 * c.norm_sqr()).abs() <= 1e-12 * s);
            }
        }
        // a boundary index loses its raise
        let edge = CoeffVec::basis(1, 3, 1.0, mi(&[3])).unwrap();
        assert!(square_function_sum(&edge).unwrap() < 2.0);
        assert!(random_coeffs(2, 3, 1.0, 4, &mut rng).is_err());
    }

    #[test]
    fn rotation_examples() {
        let c = CoeffVec::from_entries(
            2,
            6,
            1.0,
            [
                (mi(&[1, 2]), one()),
                (mi(&[0, 1]), Complex64::new(0.0, 2.0)),
            ],
        )
        .unwrap();
        let id = DMatrix::<Complex64>::identity(2, 2);
        let (a, b) = rotation_norm_equality(&id, &c).unwrap();
        assert_eq!(a, b);
        let swap = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 0.0),
                one(),
                one(),
                Complex64::new(0.0, 0.0),
            ],
        );
        let (a, b) = rotation_norm_equality(&swap, &c).unwrap();
        assert!((a - b).abs() <= 1e-12 * a);
        let phase = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::from_polar(1.0, 0.7),
            Complex64::from_polar(1.0, -2.1),
        ]));
        let (a, b) = rotation_norm_equality(&phase, &c).unwrap();
        assert!((a - b).abs() <= 1e-12 * a);
        let bad = DMatrix::from_element(2, 2, one());
        assert!(rotation_norm_equality(&bad, &c).is_err());
    }
}
