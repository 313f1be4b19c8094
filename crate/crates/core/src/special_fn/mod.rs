//! Special functions: Laguerre and Hermite functions, the multiple Laguerre
//! basis `Ψ_α^m`, generalized Gauss–Laguerre quadrature and Gamma ratios.

mod gamma;
mod gauss_laguerre;
mod multi_index;
mod polynomials;

pub use gamma::{gamma, gamma_ratio, ln_factorial, ln_gamma};
pub use gauss_laguerre::{gauss_laguerre, QuadGrid, DEFAULT_QUAD_POINTS};
pub use multi_index::MultiIndex;
pub use polynomials::{hermite_fn, laguerre_fn, laguerre_poly};

pub(crate) use polynomials::{laguerre_fn_value, laguerre_values_upto};

use crate::{Error, Result};

/// `ln` of the normalization `(2^{−|m|} α!/(α+m)!)^{1/2}` of `Ψ_α^m`.
pub(crate) fn ln_psi_norm(alpha: &MultiIndex, m: &MultiIndex) -> f64 {
    0.5 * (-(m.order() as f64) * std::f64::consts::LN_2 + alpha.ln_factorial()
        - alpha.plus(m).ln_factorial())
}

/// Multiple Laguerre function of type `m`:
/// `Ψ_α^m(r) = (2^{−|m|} α!/(α+m)!)^{1/2} ∏_j φ_{α_j}^{m_j}(r_j)`,
/// with `φ_k^ν(r) = L_k^ν(r²/2) e^{−r²/4}`.
pub fn psi(alpha: &MultiIndex, m: &MultiIndex, r: &[f64]) -> Result<f64> {
    check_len(alpha.len(), m.len())?;
    check_len(alpha.len(), r.len())?;
    Ok(psi_unchecked(alpha, m, r))
}

pub(crate) fn psi_unchecked(alpha: &MultiIndex, m: &MultiIndex, r: &[f64]) -> f64 {
    let prod: f64 = (0..alpha.len())
        .map(|j| laguerre_fn_value(alpha.get(j), m.get(j) as f64, 1.0, r[j]))
        .product();
    ln_psi_norm(alpha, m).exp() * prod
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, got })
    }
}

/// One quadrature grid per axis, with exponent `μ_j = m_j`.
pub fn grids_for_type(m: &MultiIndex, count: usize) -> Result<Vec<QuadGrid>> {
    m.entries()
        .iter()
        .map(|&mj| gauss_laguerre(count, mj as f64))
        .collect()
}

pub(crate) fn check_grids(m: &MultiIndex, grids: &[QuadGrid]) -> Result<()> {
    check_len(m.len(), grids.len())?;
    for (axis, (grid, &mj)) in grids.iter().zip(m.entries()).enumerate() {
        if (grid.mu() - mj as f64).abs() > 1e-12 {
            return Err(Error::GridMismatch {
                axis,
                grid_mu: grid.mu(),
                expected_mu: mj as f64,
            });
        }
    }
    Ok(())
}

/// Tensor-product radial quadrature: `Σ ∏_j W_{j,i_j} · F(r_{1,i_1}, …, r_{n,i_n})`,
/// approximating `∫_{ℝ₊ⁿ} F(r) ∏_j r_j^{2μ_j+1} dr_j`.
pub fn tensor_radial_sum(grids: &[QuadGrid], mut f: impl FnMut(&[f64]) -> f64) -> f64 {
    let nodes: Vec<Vec<f64>> = grids.iter().map(|g| g.radial_nodes()).collect();
    let weights: Vec<Vec<f64>> = grids.iter().map(|g| g.radial_weights()).collect();
    let n = grids.len();
    let mut idx = vec![0usize; n];
    let mut r: Vec<f64> = nodes.iter().map(|v| v[0]).collect();
    let mut total = 0.0;
    loop {
        let w: f64 = (0..n).map(|j| weights[j][idx[j]]).product();
        total += w * f(&r);
        // odometer, last axis fastest
        let mut axis = n;
        loop {
            if axis == 0 {
                return total;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < nodes[axis].len() {
                r[axis] = nodes[axis][idx[axis]];
                break;
            }
            idx[axis] = 0;
            r[axis] = nodes[axis][0];
        }
    }
}

/// `∫_{ℝ₊ⁿ} f g dμ_m`, `dμ_m = ∏ r_j^{2m_j+1} dr_j`, by tensor Gauss–Laguerre
/// quadrature after `s_j = r_j²/2`. Grid `j` must carry exponent `m_j`.
pub fn inner_mu(
    f: impl Fn(&[f64]) -> f64,
    g: impl Fn(&[f64]) -> f64,
    m: &MultiIndex,
    grids: &[QuadGrid],
) -> Result<f64> {
    check_grids(m, grids)?;
    Ok(tensor_radial_sum(grids, |r| f(r) * g(r)))
}
