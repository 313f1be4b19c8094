//! Kernel integrals behind dimension-free bounds: the fundamental solution of
//! the sublaplacian, the bound integral for `∂_t ℒ^{−1}`, the Gamma-ratio
//! identity and the Hecke–Bochner radial coefficients.
//!
//! Every integral over `ℂⁿ` is reduced by polar coordinates, with the surface
//! measure `|S^{2n−1}| = 2πⁿ/Γ(n)` taken through log-Gamma.

mod quad;

pub use quad::{half_line, half_line_ln, half_line_signed, HalfLine};

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use crate::special_fn::{laguerre_fn, ln_gamma};
use crate::{Error, Result};
use quad::ln_add;

/// Relative refinement target for the adaptive quadratures.
pub const QUAD_TOL: f64 = 1e-12;

/// An integral over the half line or quadrant with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialIntegralResult {
    pub n: u32,
    pub value: f64,
    pub error: f64,
    pub nodes: usize,
}

impl RadialIntegralResult {
    /// Whether the error estimate meets `1e−8·max(1, |value|)`.
    pub fn converged(&self) -> bool {
        self.error <= 1e-8 * self.value.abs().max(1.0)
    }
}

fn check_dim(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameter(
            "dimension n must be at least 1".into(),
        ))
    } else {
        Ok(())
    }
}

/// `ln |S^{2N−1}| = ln(2π^N/Γ(N))`.
pub fn ln_sphere_area(dim_complex: u32) -> f64 {
    let nf = dim_complex as f64;
    2.0f64.ln() + nf * PI.ln() - ln_gamma(nf)
}

/// `∫_0^∞ ∫_0^∞ (1+t²+r⁴)^{−(n+4)/2} r^{2n+1} dt dr` by nested adaptive quadrature.
pub fn quadrant_integral(n: u32, rel_tol: f64) -> Result<RadialIntegralResult> {
    check_dim(n)?;
    let a = 0.5 * (n as f64 + 4.0);
    let inner_nodes = std::cell::Cell::new(0usize);
    let inner_err = std::cell::Cell::new(0.0f64);
    let outer = half_line_ln(
        |ln_r| {
            let base = ln_add(0.0, 4.0 * ln_r);
            // t = (1+r²)s keeps the inner integrand O(1) wide; (1+r⁴)^{−a} is pulled out
            let ln_w = ln_add(0.0, 2.0 * ln_r);
            let inner = half_line_ln(
                |ln_s| -a * (ln_add(base, 2.0 * (ln_w + ln_s)) - base),
                rel_tol,
            );
            match inner {
                Ok(v) => {
                    inner_nodes.set(inner_nodes.get() + v.nodes);
                    inner_err.set(inner_err.get().max(v.error / v.value));
                    (2.0 * n as f64 + 1.0) * ln_r - a * base + ln_w + v.value.ln()
                }
                Err(_) => f64::NAN,
            }
        },
        rel_tol,
    )?;
    if !outer.value.is_finite() {
        return Err(Error::QuadratureNonConvergence {
            value: outer.value,
            error: f64::INFINITY,
        });
    }
    Ok(RadialIntegralResult {
        n,
        value: outer.value,
        error: outer.error + inner_err.get() * outer.value,
        nodes: outer.nodes + inner_nodes.get(),
    })
}

/// `∫_0^∞ (1+r⁴)^{−n/2−1} r^{2n−1} dr`.
pub fn bound_radial_integral(n: u32, rel_tol: f64) -> Result<RadialIntegralResult> {
    check_dim(n)?;
    let nf = n as f64;
    let v = half_line_ln(
        |ln_r| (2.0 * nf - 1.0) * ln_r - (0.5 * nf + 1.0) * ln_add(0.0, 4.0 * ln_r),
        rel_tol,
    )?;
    Ok(RadialIntegralResult {
        n,
        value: v.value,
        error: v.error,
        nodes: v.nodes,
    })
}

/// `c_n^{−1} = n(n+2) ∫_{ℂⁿ×ℝ} (1+t²+|z|⁴)^{−(n+4)/2} |z|² dz dt` at the given
/// refinement target, returned as the integral result for `c_n^{−1}`.
pub fn folland_c_inverse(n: u32, rel_tol: f64) -> Result<RadialIntegralResult> {
    let q = quadrant_integral(n, rel_tol)?;
    let nf = n as f64;
    // t ranges over ℝ: twice the quadrant
    let factor = nf * (nf + 2.0) * 2.0 * ln_sphere_area(n).exp();
    Ok(RadialIntegralResult {
        value: factor * q.value,
        error: factor * q.error,
        ..q
    })
}

fn c_cache() -> &'static Mutex<BTreeMap<u32, f64>> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// Normalizing constant `c_n` of `φ_0 = c_n (|z|⁴+t²)^{−n/2}`, computed once
/// per `n` and cached for the process.
pub fn folland_c(n: u32) -> Result<f64> {
    check_dim(n)?;
    if let Some(&c) = c_cache().lock().expect("cache poisoned").get(&n) {
        return Ok(c);
    }
    let inv = folland_c_inverse(n, QUAD_TOL)?;
    if !inv.converged() {
        return Err(Error::QuadratureNonConvergence {
            value: inv.value,
            error: inv.error,
        });
    }
    let c = 1.0 / inv.value;
    c_cache().lock().expect("cache poisoned").insert(n, c);
    Ok(c)
}

fn check_off_origin(r: f64, t: f64) -> Result<()> {
    if r < 0.0 || !r.is_finite() || !t.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "need finite r ≥ 0 and t, got ({r}, {t})"
        )));
    }
    if r == 0.0 && t == 0.0 {
        return Err(Error::Origin);
    }
    Ok(())
}

/// `φ_0(z, t) = c_n (|z|⁴ + t²)^{−n/2}` at `|z| = r`.
pub fn folland_phi0(n: u32, r: f64, t: f64) -> Result<f64> {
    check_off_origin(r, t)?;
    Ok(folland_c(n)? * (r.powi(4) + t * t).powf(-0.5 * n as f64))
}

/// `K = ∂_t φ_0 = −n c_n t (|z|⁴ + t²)^{−n/2−1}`.
pub fn kernel_k(n: u32, r: f64, t: f64) -> Result<f64> {
    check_off_origin(r, t)?;
    let nf = n as f64;
    Ok(-nf * folland_c(n)? * t * (r.powi(4) + t * t).powf(-0.5 * nf - 1.0))
}

/// `∫_{ℂⁿ} |K(z, 1)| dz = n c_n ∫_{ℂⁿ} (1+|z|⁴)^{−n/2−1} dz`.
pub fn christ_bound(n: u32) -> Result<f64> {
    let radial = bound_radial_integral(n, QUAD_TOL)?;
    Ok(n as f64 * folland_c(n)? * ln_sphere_area(n).exp() * radial.value)
}

/// Independent evaluation of the Gamma-ratio identity for the kernel norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma34Report {
    pub n: u32,
    /// `∫_0^∞ (1+r⁴)^{−n/2−1} r^{2n−1} dr`.
    pub numerator: RadialIntegralResult,
    /// `∫_0^∞∫_0^∞ (1+t²+r⁴)^{−(n+4)/2} r^{2n+1} dr dt`.
    pub quadrant: RadialIntegralResult,
    /// `∫_0^∞ (1+t²)^{−3/2} dt`.
    pub middle: RadialIntegralResult,
    /// `∫_0^∞ (1+u⁴)^{−(n+4)/2} u^{2n+1} du`.
    pub radial: RadialIntegralResult,
    /// `Γ(1)Γ(n/2)/(4Γ(n/2+1))`.
    pub numerator_closed: f64,
    /// `Γ(1/2)Γ(1)/(2Γ(3/2))`.
    pub middle_closed: f64,
    /// `Γ(3/2)Γ((n+1)/2)/(4Γ((n+4)/2))`.
    pub radial_closed: f64,
    /// `numerator / (2(n+2) · quadrant)`.
    pub ratio: RadialIntegralResult,
    /// Largest relative disagreement between a quadrature factor and its closed form.
    pub factor_defect: f64,
}

/// Numerator and denominator of the reduced kernel-norm ratio by independent
/// adaptive quadratures, together with the closed-form factors of the
/// beta-integral reduction, compared factor by factor.
pub fn lemma34_numeric(n: u32) -> Result<Lemma34Report> {
    check_dim(n)?;
    let nf = n as f64;
    let numerator = bound_radial_integral(n, QUAD_TOL)?;
    let quadrant = quadrant_integral(n, QUAD_TOL)?;
    let m = half_line_ln(|ln_t| -1.5 * ln_add(0.0, 2.0 * ln_t), QUAD_TOL)?;
    let middle = RadialIntegralResult {
        n,
        value: m.value,
        error: m.error,
        nodes: m.nodes,
    };
    let a = 0.5 * (nf + 4.0);
    let u = half_line_ln(
        |ln_u| (2.0 * nf + 1.0) * ln_u - a * ln_add(0.0, 4.0 * ln_u),
        QUAD_TOL,
    )?;
    let radial = RadialIntegralResult {
        n,
        value: u.value,
        error: u.error,
        nodes: u.nodes,
    };
    let numerator_closed =
        (ln_gamma(1.0) + ln_gamma(0.5 * nf) - ln_gamma(0.5 * nf + 1.0)).exp() / 4.0;
    let middle_closed = (ln_gamma(0.5) + ln_gamma(1.0) - ln_gamma(1.5)).exp() / 2.0;
    let radial_closed =
        (ln_gamma(1.5) + ln_gamma(0.5 * (nf + 1.0)) - ln_gamma(0.5 * (nf + 4.0))).exp() / 4.0;
    let rel = |x: f64, y: f64| (x - y).abs() / y.abs();
    let factor_defect = rel(numerator.value, numerator_closed)
        .max(rel(middle.value, middle_closed))
        .max(rel(radial.value, radial_closed))
        .max(rel(quadrant.value, middle_closed * radial_closed));

    let denom = 2.0 * (nf + 2.0) * quadrant.value;
    let value = numerator.value / denom;
    let rel_err = numerator.error / numerator.value + quadrant.error / quadrant.value;
    Ok(Lemma34Report {
        n,
        numerator,
        quadrant,
        middle,
        radial,
        numerator_closed,
        middle_closed,
        radial_closed,
        ratio: RadialIntegralResult {
            n,
            value,
            error: rel_err * value,
            nodes: numerator.nodes + quadrant.nodes,
        },
        factor_defect,
    })
}

/// The product of the closed-form beta factors,
/// `[Γ(n/2)/(4Γ(n/2+1))] / [2(n+2) · Γ(1/2)/(2Γ(3/2)) · Γ(3/2)Γ((n+1)/2)/(4Γ((n+4)/2))]`,
/// which equals `gamma_ratio(n)/2`.
pub fn lemma34_closed_ratio(n: u32) -> f64 {
    let nf = n as f64;
    let num = (ln_gamma(0.5 * nf) - ln_gamma(0.5 * nf + 1.0)).exp() / 4.0;
    let mid = (ln_gamma(0.5) - ln_gamma(1.5)).exp() / 2.0;
    let rad = (ln_gamma(1.5) + ln_gamma(0.5 * (nf + 1.0)) - ln_gamma(0.5 * (nf + 4.0))).exp() / 4.0;
    num / (2.0 * (nf + 2.0) * mid * rad)
}

/// `R_k^λ(f) = Γ(k−p+1)Γ(n)/Γ(k+q+n) ∫_{ℂ^{n+p+q}} f(|z|) φ_{k,λ}^{n+p+q−1}(z) dz`,
/// with `φ_{k,λ}^ν(z) = L_k^ν(λ|z|²/2) e^{−λ|z|²/4}`.
pub fn hecke_radial_coeff(
    f: impl Fn(f64) -> f64,
    k: u32,
    pdeg: u32,
    qdeg: u32,
    n: u32,
    lambda: f64,
) -> Result<f64> {
    check_dim(n)?;
    if k < pdeg {
        return Err(Error::InvalidParameter(format!(
            "need k ≥ p, got k = {k}, p = {pdeg}"
        )));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "λ must be positive, got {lambda}"
        )));
    }
    let big_n = n + pdeg + qdeg;
    let nu = (big_n - 1) as f64;
    laguerre_fn(k, nu, lambda, 1.0)?;
    let integral = half_line(
        |r| {
            let v = f(r);
            if v == 0.0 {
                return 0.0;
            }
            v * laguerre_fn(k, nu, lambda, r).unwrap_or(f64::NAN) * r.powi(2 * big_n as i32 - 1)
        },
        QUAD_TOL,
        1e-300,
    )?;
    let ln_pref =
        ln_gamma((k - pdeg + 1) as f64) + ln_gamma(n as f64) - ln_gamma((k + qdeg + n) as f64);
    Ok((ln_pref + ln_sphere_area(big_n)).exp() * integral.value)
}

/// Least-squares slope of `ln|R_k^{λr²}(f_r)|` against `ln r`, where
/// `f_r(s) = r^{2n+p+q} f(r s)`.
pub fn hecke_scaling_exponent(
    f: impl Fn(f64) -> f64 + Copy,
    k: u32,
    pdeg: u32,
    qdeg: u32,
    n: u32,
    lambda: f64,
    radii: &[f64],
) -> Result<f64> {
    if radii.len() < 2 {
        return Err(Error::InvalidParameter(
            "need at least two radii for a fit".into(),
        ));
    }
    let power = (2 * n + pdeg + qdeg) as i32;
    let points: Vec<(f64, f64)> = radii
        .iter()
        .map(|&r| {
            let v = hecke_radial_coeff(
                move |s| r.powi(power) * f(r * s),
                k,
                pdeg,
                qdeg,
                n,
                lambda * r * r,
            )?;
            Ok((r.ln(), v.abs().ln()))
        })
        .collect::<Result<_>>()?;
    let len = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / len;
    let my = points.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn folland_constant_is_positive_and_stable() {
        for n in 1..=20 {
            assert!(folland_c(n).unwrap() > 0.0);
        }
        for n in [1, 4] {
            let coarse = folland_c_inverse(n, 1e-10).unwrap().value;
            let fine = folland_c_inverse(n, 1e-13).unwrap().value;
            assert!((coarse - fine).abs() <= 1e-8 * fine);
        }
    }

    #[test]
    fn folland_c_matches_closed_form() {
        // c_n^{-1} = n(n+2)·2|S^{2n−1}|·Γ(3/2)Γ((n+1)/2)/(4Γ((n+4)/2))
        for n in 1..=6u32 {
            let nf = n as f64;
            let rad = (ln_gamma(1.5) + ln_gamma(0.5 * (nf + 1.0)) - ln_gamma(0.5 * (nf + 4.0)))
                .exp()
                / 4.0;
            let inv = nf * (nf + 2.0) * 2.0 * ln_sphere_area(n).exp() * rad;
            assert_relative_eq!(folland_c(n).unwrap(), 1.0 / inv, max_relative = 1e-10);
        }
    }

    #[test]
    fn phi0_examples() {
        let c1 = folland_c(1).unwrap();
        assert_relative_eq!(folland_phi0(1, 1.0, 0.0).unwrap(), c1, max_relative = 1e-15);
        assert_relative_eq!(
            folland_phi0(1, 1.0, 1.0).unwrap(),
            c1 / 2f64.sqrt(),
            max_relative = 1e-15
        );
        for n in [1, 3] {
            for s in [0.5, 2.0] {
                let a = folland_phi0(n, s * 0.7, s * s * 1.3).unwrap();
                let b = s.powi(-2 * n as i32) * folland_phi0(n, 0.7, 1.3).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-12);
            }
        }
        assert_eq!(folland_phi0(2, 0.0, 0.0), Err(Error::Origin));
    }

    #[test]
    fn kernel_k_properties() {
        assert_eq!(kernel_k(2, 1.0, 0.0).unwrap(), 0.0);
        assert_eq!(
            kernel_k(2, 0.8, -1.7).unwrap(),
            -kernel_k(2, 0.8, 1.7).unwrap()
        );
        let h = 1e-5;
        let fd = (folland_phi0(2, 1.0, 1.0 + h).unwrap() - folland_phi0(2, 1.0, 1.0 - h).unwrap())
            / (2.0 * h);
        assert!((fd - kernel_k(2, 1.0, 1.0).unwrap()).abs() < 1e-6);
        for s in [0.5, 2.0] {
            let a = kernel_k(3, s * 0.9, s * s * 0.4).unwrap();
            let b = s.powi(-8) * kernel_k(3, 0.9, 0.4).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
        assert_eq!(kernel_k(1, 0.0, 0.0), Err(Error::Origin));
    }

    #[test]
    fn lemma_factors_match_beta_integrals() {
        for n in 1..=20 {
            let rep = lemma34_numeric(n).unwrap();
            assert!(rep.factor_defect < 1e-9, "n={n}: {}", rep.factor_defect);
            assert_relative_eq!(
                rep.ratio.value,
                lemma34_closed_ratio(n),
                max_relative = 1e-9
            );
            assert!(rep.ratio.converged());
        }
        let two = lemma34_numeric(2).unwrap();
        assert!((two.numerator.value - 0.25).abs() < 1e-8);
        assert!((two.middle.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bound_integral_tracks_lemma_ratio() {
        let mut prev = f64::INFINITY;
        for n in 1..=10 {
            let b = christ_bound(n).unwrap();
            assert_relative_eq!(b, lemma34_closed_ratio(n), max_relative = 1e-9);
            assert!(b < prev);
            prev = b;
        }
    }

    #[test]
    fn hecke_zero_and_scaling() {
        assert_eq!(hecke_radial_coeff(|_| 0.0, 2, 1, 0, 2, 1.0).unwrap(), 0.0);
        assert!(hecke_radial_coeff(|_| 1.0, 0, 1, 0, 2, 1.0).is_err());
        let f = |s: f64| (-s * s / 2.0).exp();
        let radii = [0.25, 0.5, 1.0, 2.0, 4.0];
        for (p, q) in [(1, 0), (1, 1), (2, 1)] {
            let slope = hecke_scaling_exponent(f, p + 1, p, q, 2, 1.0, &radii).unwrap();
            assert!((slope + (p + q) as f64).abs() < 1e-6, "({p},{q}): {slope}");
        }
        // λ-family g^λ(s) = λ^{(2n+p+q)/2} g(√λ s)
        let (p, q, n) = (1u32, 1u32, 2u32);
        let base = hecke_radial_coeff(f, 2, p, q, n, 1.0).unwrap();
        for lam in [0.25, 4.0] {
            let pow = 0.5 * (2 * n + p + q) as f64;
            let v =
                hecke_radial_coeff(|s| lam.powf(pow) * f(lam.sqrt() * s), 2, p, q, n, lam).unwrap();
            assert_relative_eq!(
                v,
                base * lam.powf(-0.5 * (p + q) as f64),
                max_relative = 1e-7
            );
        }
    }
}
