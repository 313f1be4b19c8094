//! Multiple Laguerre expansions of type `m` and the Laguerre Riesz transforms
//! `R_{j,m}`.
//!
//! Coefficients are taken against `Ψ_α^m`, orthonormal in `L²(ℝ₊ⁿ, dμ_m)`.
//! Integrals use tensor Gauss–Laguerre grids; analysis and grid synthesis are
//! sum-factorized one axis at a time.

use std::collections::BTreeMap;

use crate::special_fn::{
    check_grids, check_len, gauss_laguerre, grids_for_type, laguerre_fn_value, ln_psi_norm,
    psi_unchecked, MultiIndex, QuadGrid,
};
use crate::{Error, Result};

/// Basis `{Ψ_α^m : |α| ≤ K}` together with its quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreBasisSpec {
    m: MultiIndex,
    trunc: u32,
    grids: Vec<QuadGrid>,
}

impl LaguerreBasisSpec {
    pub fn new(m: MultiIndex, trunc: u32, quad_points: usize) -> Result<Self> {
        let grids = grids_for_type(&m, quad_points)?;
        Ok(LaguerreBasisSpec { m, trunc, grids })
    }

    pub fn with_grids(m: MultiIndex, trunc: u32, grids: Vec<QuadGrid>) -> Result<Self> {
        check_grids(&m, &grids)?;
        Ok(LaguerreBasisSpec { m, trunc, grids })
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn m(&self) -> &MultiIndex {
        &self.m
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn grids(&self) -> &[QuadGrid] {
        &self.grids
    }

    pub fn indices(&self) -> Vec<MultiIndex> {
        MultiIndex::simplex(self.dim(), self.trunc)
    }

    /// Quadrature Gram matrix `⟨Ψ_α^m, Ψ_β^m⟩` over [`Self::indices`].
    ///
    /// The tensor rule applied to a product of tensor-product functions
    /// factors into one-dimensional sums, so this equals the full tensor
    /// quadrature of `Ψ_α Ψ_β` up to rounding.
    pub fn gram(&self) -> Vec<Vec<f64>> {
        let k = self.trunc as usize;
        let axis_gram: Vec<Vec<Vec<f64>>> = self
            .grids
            .iter()
            .zip(self.m.entries())
            .map(|(grid, &mj)| {
                let table = axis_table(grid, mj as f64, self.trunc);
                let w = grid.radial_weights();
                (0..=k)
                    .map(|a| {
                        (0..=k)
                            .map(|b| {
                                table[a]
                                    .iter()
                                    .zip(&table[b])
                                    .zip(&w)
                                    .map(|((x, y), w)| w * x * y)
                                    .sum()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let idx = self.indices();
        let norms: Vec<f64> = idx.iter().map(|a| ln_psi_norm(a, &self.m).exp()).collect();
        idx.iter()
            .zip(&norms)
            .map(|(a, na)| {
                idx.iter()
                    .zip(&norms)
                    .map(|(b, nb)| {
                        let prod: f64 = (0..self.dim())
                            .map(|j| axis_gram[j][a.get(j) as usize][b.get(j) as usize])
                            .product();
                        na * nb * prod
                    })
                    .collect()
            })
            .collect()
    }
}

/// `table[k][i] = φ_k^ν(r_i)` on the radial nodes of `grid`, `k ≤ kmax`.
fn axis_table(grid: &QuadGrid, nu: f64, kmax: u32) -> Vec<Vec<f64>> {
    let r = grid.radial_nodes();
    (0..=kmax)
        .map(|k| {
            r.iter()
                .map(|&ri| laguerre_fn_value(k, nu, 1.0, ri))
                .collect()
        })
        .collect()
}

/// Contracts (or expands) axis `axis` of a row-major array: the extent
/// `shape[axis]` is replaced by `table.len()` and
/// `out[o, t, i] = Σ_q table[t][q] · data[o, q, i]`.
fn apply_axis(data: &[f64], shape: &mut [usize], axis: usize, table: &[Vec<f64>]) -> Vec<f64> {
    let outer: usize = shape[..axis].iter().product();
    let inner: usize = shape[axis + 1..].iter().product();
    let len_in = shape[axis];
    let len_out = table.len();
    let mut out = vec![0.0; outer * len_out * inner];
    for o in 0..outer {
        for (t, row) in table.iter().enumerate() {
            let dst = &mut out[(o * len_out + t) * inner..(o * len_out + t + 1) * inner];
            for (q, &coef) in row.iter().enumerate().take(len_in) {
                if coef == 0.0 {
                    continue;
                }
                let src = &data[(o * len_in + q) * inner..(o * len_in + q + 1) * inner];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += coef * s;
                }
            }
        }
    }
    shape[axis] = len_out;
    out
}

fn transpose(table: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let cols = table.first().map_or(0, Vec::len);
    (0..cols)
        .map(|c| table.iter().map(|row| row[c]).collect())
        .collect()
}

/// Evaluates `f` at every tensor node, row-major with the last axis fastest.
fn sample_on_grid(grids: &[QuadGrid], f: impl Fn(&[f64]) -> f64) -> Vec<f64> {
    let nodes: Vec<Vec<f64>> = grids.iter().map(|g| g.radial_nodes()).collect();
    let total: usize = nodes.iter().map(Vec::len).product();
    let n = grids.len();
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; n];
    let mut r: Vec<f64> = nodes.iter().map(|v| v[0]).collect();
    for _ in 0..total {
        out.push(f(&r));
        for axis in (0..n).rev() {
            idx[axis] += 1;
            if idx[axis] < nodes[axis].len() {
                r[axis] = nodes[axis][idx[axis]];
                break;
            }
            idx[axis] = 0;
            r[axis] = nodes[axis][0];
        }
    }
    out
}

fn tensor_weights(grids: &[QuadGrid]) -> Vec<f64> {
    let w: Vec<Vec<f64>> = grids.iter().map(|g| g.radial_weights()).collect();
    let mut out = vec![1.0];
    for wj in &w {
        out = out
            .iter()
            .flat_map(|a| wj.iter().map(move |b| a * b))
            .collect();
    }
    out
}

fn box_offset(alpha: &MultiIndex, extent: usize) -> usize {
    alpha
        .entries()
        .iter()
        .fold(0, |acc, &a| acc * extent + a as usize)
}

/// Coefficients `(f, Ψ_α^m)` for `|α| ≤ K`.
#[derive(Debug, Clone, PartialEq)]
pub struct LagCoeffs {
    spec: LaguerreBasisSpec,
    data: BTreeMap<MultiIndex, f64>,
}

impl LagCoeffs {
    pub fn zero(spec: &LaguerreBasisSpec) -> Self {
        LagCoeffs {
            spec: spec.clone(),
            data: BTreeMap::new(),
        }
    }

    pub fn from_entries(
        spec: &LaguerreBasisSpec,
        entries: impl IntoIterator<Item = (MultiIndex, f64)>,
    ) -> Result<Self> {
        let mut c = Self::zero(spec);
        for (alpha, v) in entries {
            check_len(spec.dim(), alpha.len())?;
            if alpha.order() > spec.trunc {
                return Err(Error::SupportViolation {
                    index: alpha.entries().to_vec(),
                    order: alpha.order(),
                    limit: spec.trunc,
                });
            }
            *c.data.entry(alpha).or_default() += v;
        }
        Ok(c)
    }

    pub fn spec(&self) -> &LaguerreBasisSpec {
        &self.spec
    }

    pub fn get(&self, alpha: &MultiIndex) -> f64 {
        self.data.get(alpha).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &f64)> {
        self.data.iter()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.values().map(|c| c * c).sum()
    }
}

/// `data[α] = ∫ f Ψ_α^m dμ_m` for every `|α| ≤ K`.
pub fn analyze(f: impl Fn(&[f64]) -> f64, spec: &LaguerreBasisSpec) -> Result<LagCoeffs> {
    let grids = &spec.grids;
    let weights = tensor_weights(grids);
    let mut data: Vec<f64> = sample_on_grid(grids, f)
        .into_iter()
        .zip(&weights)
        .map(|(v, w)| v * w)
        .collect();
    if data.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(
            "integrand is not finite on the quadrature grid".into(),
        ));
    }
    let mut shape: Vec<usize> = grids.iter().map(QuadGrid::len).collect();
    for (axis, (grid, &mj)) in grids.iter().zip(spec.m.entries()).enumerate() {
        let table = axis_table(grid, mj as f64, spec.trunc);
        data = apply_axis(&data, &mut shape, axis, &table);
    }
    let extent = spec.trunc as usize + 1;
    let coeffs = spec
        .indices()
        .into_iter()
        .map(|alpha| {
            let v = ln_psi_norm(&alpha, &spec.m).exp() * data[box_offset(&alpha, extent)];
            (alpha, v)
        })
        .collect();
    Ok(LagCoeffs {
        spec: spec.clone(),
        data: coeffs,
    })
}

/// `Σ_α c_α Ψ_α^m(r)`.
pub fn synthesize(c: &LagCoeffs, r: &[f64]) -> Result<f64> {
    check_len(c.spec.dim(), r.len())?;
    Ok(c.data
        .iter()
        .map(|(alpha, v)| v * psi_unchecked(alpha, &c.spec.m, r))
        .sum())
}

/// Values of `Σ_α c_α Ψ_α^{m}(r)` on every node of `grids` (any exponents),
/// row-major with the last axis fastest.
fn synthesize_on_grid(
    coeffs: &BTreeMap<MultiIndex, f64>,
    m: &MultiIndex,
    trunc: u32,
    grids: &[QuadGrid],
) -> Vec<f64> {
    let extent = trunc as usize + 1;
    let n = m.len();
    let mut data = vec![0.0; extent.pow(n as u32)];
    for (alpha, v) in coeffs {
        data[box_offset(alpha, extent)] = v * ln_psi_norm(alpha, m).exp();
    }
    let mut shape = vec![extent; n];
    for (axis, grid) in grids.iter().enumerate() {
        let table = transpose(&axis_table(grid, m.get(axis) as f64, trunc));
        data = apply_axis(&data, &mut shape, axis, &table);
    }
    data
}

/// Image of `R_{j,m}`: coefficients against `Ψ_β^{m+e_j}` with the value rule
/// `R_{j,m}f(r) = r_j Σ_β d_β Ψ_β^{m+e_j}(r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreRieszImage {
    axis: usize,
    m_out: MultiIndex,
    trunc: u32,
    data: BTreeMap<MultiIndex, f64>,
}

impl LaguerreRieszImage {
    pub fn axis(&self) -> usize {
        self.axis
    }

    /// Output type `m + e_j`.
    pub fn m_out(&self) -> &MultiIndex {
        &self.m_out
    }

    pub fn get(&self, beta: &MultiIndex) -> f64 {
        self.data.get(beta).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &f64)> {
        self.data.iter()
    }

    /// Equals `‖R_{j,m} f‖²_{L²(dμ_m)}`, since `r_j² dμ_m = dμ_{m+e_j}`.
    pub fn norm_sqr(&self) -> f64 {
        self.data.values().map(|d| d * d).sum()
    }

    pub fn eval(&self, r: &[f64]) -> Result<f64> {
        check_len(self.m_out.len(), r.len())?;
        let sum: f64 = self
            .data
            .iter()
            .map(|(beta, d)| d * psi_unchecked(beta, &self.m_out, r))
            .sum();
        Ok(r[self.axis] * sum)
    }

    /// Values on every node of `grids`, row-major with the last axis fastest.
    pub fn eval_on_grid(&self, grids: &[QuadGrid]) -> Vec<f64> {
        let raw = synthesize_on_grid(&self.data, &self.m_out, self.trunc, grids);
        let nodes: Vec<Vec<f64>> = grids.iter().map(|g| g.radial_nodes()).collect();
        let inner: usize = nodes[self.axis + 1..].iter().map(Vec::len).product();
        let len = nodes[self.axis].len();
        raw.iter()
            .enumerate()
            .map(|(flat, v)| v * nodes[self.axis][(flat / inner) % len])
            .collect()
    }
}

/// Multiplier `(2α_j)^{1/2} (2|α|+n)^{−1/2}` of `R_{j,m}`.
pub fn riesz_laguerre_factor(alpha: &MultiIndex, axis: usize) -> f64 {
    let n = alpha.len() as f64;
    (2.0 * alpha.get(axis) as f64 / (2.0 * alpha.order() as f64 + n)).sqrt()
}

/// `R_{j,m}` on coefficients: `d_{α−e_j} = (2α_j)^{1/2}(2|α|+n)^{−1/2} c_α`.
pub fn riesz_laguerre(axis: usize, c: &LagCoeffs) -> Result<LaguerreRieszImage> {
    let n = c.spec.dim();
    if axis >= n {
        return Err(Error::AxisOutOfRange { axis, n });
    }
    let data = c
        .data
        .iter()
        .filter_map(|(alpha, v)| {
            alpha
                .sub_unit(axis)
                .map(|beta| (beta, riesz_laguerre_factor(alpha, axis) * v))
        })
        .collect();
    Ok(LaguerreRieszImage {
        axis,
        m_out: c.spec.m.add_unit(axis),
        trunc: c.spec.trunc,
        data,
    })
}

/// Weighted `L^p` pair for `R_{j,m}`:
/// `lhs = ∫ |R_{j,m} f|^p ∏ r_j^{m_j(p−2)} dμ_m`, `rhs = ∫ |f|^p ∏ r_j^{m_j(p−2)} dμ_m`.
///
/// `f` is expanded in `spec` first; both integrals use Gauss–Laguerre grids
/// with exponent `m_j + m_j(p−2)/2` and the node count of `spec`.
pub fn weighted_probe(
    axis: usize,
    p: f64,
    f: impl Fn(&[f64]) -> f64,
    spec: &LaguerreBasisSpec,
) -> Result<(f64, f64)> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "p must lie in (1, ∞), got {p}"
        )));
    }
    let n = spec.dim();
    if axis >= n {
        return Err(Error::AxisOutOfRange { axis, n });
    }
    let probe_grids: Vec<QuadGrid> = spec
        .grids
        .iter()
        .zip(spec.m.entries())
        .map(|(g, &mj)| {
            let mu = mj as f64 + mj as f64 * (p - 2.0) / 2.0;
            gauss_laguerre(g.len(), mu)
        })
        .collect::<Result<_>>()?;

    let image = riesz_laguerre(axis, &analyze(&f, spec)?)?;
    let weights = tensor_weights(&probe_grids);
    let lhs: f64 = image
        .eval_on_grid(&probe_grids)
        .iter()
        .zip(&weights)
        .map(|(v, w)| w * v.abs().powf(p))
        .sum();
    let rhs: f64 = sample_on_grid(&probe_grids, &f)
        .iter()
        .zip(&weights)
        .map(|(v, w)| w * v.abs().powf(p))
        .sum();
    Ok((lhs, rhs))
}
