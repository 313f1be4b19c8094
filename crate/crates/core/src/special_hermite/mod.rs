//! Special Hermite functions `Φ_{α,α+m}` on `ℂⁿ`, the Riesz transform `T_{z̄_j}`
//! on `m`-homogeneous functions, its intertwining with `R_{j,m}`, twisted
//! convolution on a planar grid and the kernel series `K_m`.

mod twisted;

pub use twisted::{
    boundary_integrand, phi_k_grid, project_k, twisted_conv, twisted_conv_with_tol, PlaneGridFn,
    DECAY_TOL,
};

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::laguerre_riesz::{
    analyze, riesz_laguerre, riesz_laguerre_factor, LaguerreBasisSpec, LaguerreRieszImage,
};
use crate::special_fn::{
    check_len, grids_for_type, laguerre_fn_value, laguerre_values_upto, ln_psi_norm, psi_unchecked,
    MultiIndex, QuadGrid, DEFAULT_QUAD_POINTS,
};
use crate::{Error, Result};

/// `i^k`.
fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `z^m = ∏ z_j^{m_j}`.
pub fn z_pow(z: &[Complex64], m: &MultiIndex) -> Complex64 {
    z.iter()
        .zip(m.entries())
        .map(|(zj, &mj)| zj.powu(mj))
        .product()
}

fn moduli(z: &[Complex64]) -> Vec<f64> {
    z.iter().map(|zj| zj.norm()).collect()
}

/// `Φ_{α,α+m}(z) = (2π)^{−n/2} (α!/(α+m)!)^{1/2} 2^{−|m|/2} (−i)^{|m|} z^m ∏ φ_{α_j}^{m_j}(|z_j|)`.
pub fn phi_special(alpha: &MultiIndex, m: &MultiIndex, z: &[Complex64]) -> Result<Complex64> {
    check_len(alpha.len(), m.len())?;
    check_len(alpha.len(), z.len())?;
    Ok(phi_special_unchecked(alpha, m, z))
}

fn phi_special_unchecked(alpha: &MultiIndex, m: &MultiIndex, z: &[Complex64]) -> Complex64 {
    let n = alpha.len() as f64;
    let r = moduli(z);
    let radial = psi_unchecked(alpha, m, &r);
    (2.0 * PI).powf(-0.5 * n) * radial * i_pow(3 * (m.order() % 4)) * z_pow(z, m)
}

/// Polyradial profile evaluator.
pub type Profile = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// `g(z) = z^m f(|z_1|, …, |z_n|)`.
#[derive(Clone)]
pub struct MHomogeneous {
    m: MultiIndex,
    profile: Profile,
}

impl fmt::Debug for MHomogeneous {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MHomogeneous")
            .field("m", &self.m)
            .finish_non_exhaustive()
    }
}

impl MHomogeneous {
    pub fn new(m: MultiIndex, profile: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        MHomogeneous {
            m,
            profile: Arc::new(profile),
        }
    }

    /// Profile `e^{−c|r|²}`.
    pub fn gaussian(m: MultiIndex, c: f64) -> Self {
        Self::new(m, move |r| {
            (-c * r.iter().map(|x| x * x).sum::<f64>()).exp()
        })
    }

    /// Profile `Σ w_k Ψ_{β_k}^m`.
    pub fn psi_mixture(m: MultiIndex, terms: Vec<(MultiIndex, f64)>) -> Self {
        let mm = m.clone();
        Self::new(m, move |r| {
            terms
                .iter()
                .map(|(b, w)| w * psi_unchecked(b, &mm, r))
                .sum()
        })
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn m(&self) -> &MultiIndex {
        &self.m
    }

    pub fn profile(&self, r: &[f64]) -> f64 {
        (self.profile)(r)
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        check_len(self.dim(), z.len())?;
        Ok(z_pow(z, &self.m) * self.profile(&moduli(z)))
    }
}

/// `(g, Φ_{α,α+m})` over `ℂⁿ`, reduced to radial integrals:
/// `(2π)^{n/2} i^{|m|} (α!/(α+m)!)^{1/2} 2^{−|m|/2} ∫ f ∏ φ_{α_j}^{m_j} dμ_m`.
pub fn coeff_reduce(g: &MHomogeneous, alpha: &MultiIndex) -> Result<Complex64> {
    let grids = grids_for_type(&g.m, DEFAULT_QUAD_POINTS)?;
    coeff_reduce_with(g, alpha, &grids)
}

pub fn coeff_reduce_with(
    g: &MHomogeneous,
    alpha: &MultiIndex,
    grids: &[QuadGrid],
) -> Result<Complex64> {
    check_len(g.dim(), alpha.len())?;
    let radial = crate::special_fn::inner_mu(
        |r| g.profile(r),
        |r| psi_unchecked(alpha, &g.m, r),
        &g.m,
        grids,
    )?;
    Ok(coeff_from_radial(g.dim(), &g.m, radial))
}

fn coeff_from_radial(n: usize, m: &MultiIndex, radial: f64) -> Complex64 {
    (2.0 * PI).powf(0.5 * n as f64) * i_pow(m.order() % 4) * radial
}

/// `T_{z̄_j} g` truncated to `|α| ≤ K`, with the coefficients
/// `(g, Φ_{α,α+m})` computed once so the sum can be evaluated at many points.
#[derive(Debug, Clone)]
pub struct TZbar {
    axis: usize,
    m: MultiIndex,
    /// `(α − e_j, i (2α_j)^{1/2}(2|α|+n)^{−1/2} (g, Φ_{α,α+m}))`
    terms: Vec<(MultiIndex, Complex64)>,
}

impl TZbar {
    pub fn new(axis: usize, g: &MHomogeneous, trunc: u32, quad_points: usize) -> Result<Self> {
        let n = g.dim();
        if axis >= n {
            return Err(Error::AxisOutOfRange { axis, n });
        }
        let grids = grids_for_type(&g.m, quad_points)?;
        let nodes: Vec<Vec<f64>> = grids.iter().map(|q| q.radial_nodes()).collect();
        let weights: Vec<Vec<f64>> = grids.iter().map(|q| q.radial_weights()).collect();

        // weighted profile samples and per-axis Laguerre tables on the tensor grid
        let mut points: Vec<(Vec<usize>, f64)> = Vec::new();
        let mut idx = vec![0usize; n];
        loop {
            let r: Vec<f64> = (0..n).map(|j| nodes[j][idx[j]]).collect();
            let w: f64 = (0..n).map(|j| weights[j][idx[j]]).product();
            points.push((idx.clone(), w * g.profile(&r)));
            let mut axis_pos = n;
            let done = loop {
                if axis_pos == 0 {
                    break true;
                }
                axis_pos -= 1;
                idx[axis_pos] += 1;
                if idx[axis_pos] < nodes[axis_pos].len() {
                    break false;
                }
                idx[axis_pos] = 0;
            };
            if done {
                break;
            }
        }
        let tables: Vec<Vec<Vec<f64>>> = (0..n)
            .map(|j| {
                nodes[j]
                    .iter()
                    .map(|&r| {
                        let s = 0.5 * r * r;
                        let e = (-0.5 * s).exp();
                        laguerre_values_upto(trunc, g.m.get(j) as f64, s)
                            .into_iter()
                            .map(|l| l * e)
                            .collect()
                    })
                    .collect()
            })
            .collect();

        let terms = MultiIndex::simplex(n, trunc)
            .into_iter()
            .filter_map(|alpha| {
                let beta = alpha.sub_unit(axis)?;
                let radial: f64 = points
                    .iter()
                    .map(|(ix, wf)| {
                        wf * (0..n)
                            .map(|j| tables[j][ix[j]][alpha.get(j) as usize])
                            .product::<f64>()
                    })
                    .sum::<f64>()
                    * ln_psi_norm(&alpha, &g.m).exp();
                let c = coeff_from_radial(n, &g.m, radial);
                let factor = riesz_laguerre_factor(&alpha, axis);
                Some((beta, Complex64::i() * factor * c))
            })
            .collect();
        Ok(TZbar {
            axis,
            m: g.m.clone(),
            terms,
        })
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    /// `Σ_α i (2α_j)^{1/2}(2|α|+n)^{−1/2} (g, Φ_{α,α+m}) Φ_{α−e_j,α+m}(z)`,
    /// where `Φ_{α−e_j,α+m}` is the special Hermite function with first
    /// index `α − e_j` and bidegree gap `m + e_j`.
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        check_len(self.m.len(), z.len())?;
        let gap = self.m.add_unit(self.axis);
        Ok(self
            .terms
            .iter()
            .map(|(beta, c)| c * phi_special_unchecked(beta, &gap, z))
            .sum())
    }
}

/// Single-point `T_{z̄_j} g(z)` with `|α| ≤ K`.
pub fn t_zbar(axis: usize, g: &MHomogeneous, z: &[Complex64], trunc: u32) -> Result<Complex64> {
    TZbar::new(axis, g, trunc, DEFAULT_QUAD_POINTS)?.eval(z)
}

/// Outcome of the dual-path comparison of `T_{z̄_j} g` with
/// `i z^m (z_j/|z_j|) R_{j,m} f(|z|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntertwineReport {
    /// `max |T g(z) − i z^m (z_j/|z_j|) R_{j,m} f(|z|)|`.
    pub defect: f64,
    /// `max |T g(z)|`.
    pub scale: f64,
    /// `defect / scale`, or `defect` when the scale vanishes.
    pub relative: f64,
    /// Same comparison with the leading `i` on the right side removed, relative.
    pub unit_phase_relative: f64,
    /// `T g(z) / (z^m (z_j/|z_j|) R_{j,m} f(|z|))` averaged over the samples.
    pub mean_ratio: Complex64,
}

pub fn intertwine_report(
    axis: usize,
    g: &MHomogeneous,
    samples: &[Vec<Complex64>],
    trunc: u32,
    quad_points: usize,
) -> Result<IntertwineReport> {
    let n = g.dim();
    if axis >= n {
        return Err(Error::AxisOutOfRange { axis, n });
    }
    for z in samples {
        check_len(n, z.len())?;
        if z[axis] == Complex64::new(0.0, 0.0) {
            return Err(Error::SingularSample { axis });
        }
    }
    let left = TZbar::new(axis, g, trunc, quad_points)?;
    let spec = LaguerreBasisSpec::new(g.m.clone(), trunc, quad_points)?;
    let image: LaguerreRieszImage = riesz_laguerre(axis, &analyze(|r| g.profile(r), &spec)?)?;

    let mut defect: f64 = 0.0;
    let mut unit_defect: f64 = 0.0;
    let mut scale: f64 = 0.0;
    let mut ratio_sum = Complex64::new(0.0, 0.0);
    let mut ratio_count = 0usize;
    for z in samples {
        let lhs = left.eval(z)?;
        let zj = z[axis];
        let base = z_pow(z, &g.m) * (zj / zj.norm()) * image.eval(&moduli(z))?;
        let rhs = Complex64::i() * base;
        defect = defect.max((lhs - rhs).norm());
        unit_defect = unit_defect.max((lhs - base).norm());
        scale = scale.max(lhs.norm());
        if base.norm() > 1e-300 {
            ratio_sum += lhs / base;
            ratio_count += 1;
        }
    }
    let rel = |d: f64| if scale > 0.0 { d / scale } else { d };
    Ok(IntertwineReport {
        defect,
        scale,
        relative: rel(defect),
        unit_phase_relative: rel(unit_defect),
        mean_ratio: if ratio_count > 0 {
            ratio_sum / ratio_count as f64
        } else {
            Complex64::new(0.0, 0.0)
        },
    })
}

/// `max_z |T_{z̄_j} g(z) − i z^m (z_j/|z_j|) R_{j,m} f(|z|)|` over `samples`.
pub fn intertwine_defect(
    axis: usize,
    g: &MHomogeneous,
    samples: &[Vec<Complex64>],
    trunc: u32,
) -> Result<f64> {
    Ok(intertwine_report(axis, g, samples, trunc, DEFAULT_QUAD_POINTS)?.defect)
}

/// Seeded points of `ℂⁿ` with every `|z_k|` uniform in `[r_min, r_max]`
/// and uniform arguments (ChaCha8 stream).
pub fn annulus_samples(
    n: usize,
    count: usize,
    r_min: f64,
    r_max: f64,
    seed: u64,
) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let rho = rng.gen_range(r_min..=r_max);
                    let theta = rng.gen_range(0.0..2.0 * PI);
                    Complex64::from_polar(rho, theta)
                })
                .collect()
        })
        .collect()
}

/// Truncated `K_m(r) = Σ_{k<K} (2k+2p+n)^{−m/2} φ_k^{n+p+q−1}(r)`, `m = p+q`.
///
/// After `K` terms the last term must be below `1e−12·max(|sum|, 1)`;
/// otherwise the series is reported as not converged at `r`.
#[allow(non_snake_case)]
pub fn kernel_Km(pdeg: u32, qdeg: u32, n: u32, r: f64, trunc: u32) -> Result<f64> {
    let m = pdeg + qdeg;
    if m == 0 {
        return Err(Error::InvalidParameter("K_m needs p + q ≥ 1".into()));
    }
    if n == 0 || trunc == 0 {
        return Err(Error::InvalidParameter("K_m needs n ≥ 1 and K ≥ 1".into()));
    }
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "r must be finite and ≥ 0, got {r}"
        )));
    }
    let nu = (n + m - 1) as f64;
    let s = 0.5 * r * r;
    let decay = (-0.5 * s).exp();
    let lag = laguerre_values_upto(trunc - 1, nu, s);
    let mut sum = 0.0;
    let mut last = 0.0;
    for (k, l) in lag.iter().enumerate() {
        let eig = (2 * k as u32 + 2 * pdeg + n) as f64;
        last = eig.powf(-0.5 * m as f64) * l * decay;
        sum += last;
    }
    if last.abs() <= 1e-12 * sum.abs().max(1.0) {
        Ok(sum)
    } else {
        Err(Error::SeriesNonConvergence {
            r,
            last_term: last,
            partial_sum: sum,
        })
    }
}

/// Laguerre function `φ_k^ν(r)` at `λ = 1`.
pub(crate) fn phi_k(k: u32, nu: f64, r: f64) -> f64 {
    laguerre_fn_value(k, nu, 1.0, r)
}
