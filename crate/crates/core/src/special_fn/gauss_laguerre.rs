//! Generalized Gauss–Laguerre rules for the weight `s^μ e^{−s}` on `(0, ∞)`.
//!
//! Nodes are the eigenvalues of the Jacobi matrix of the generalized Laguerre
//! recurrence (Golub–Welsch). The weight of node `x_i` is `μ₀ v_{0i}²`, where
//! `v_{·i}` is the normalized eigenvector; that vector is proportional to the
//! orthonormal polynomials `(p_0(x_i), …, p_{n−1}(x_i))`, so the weight is
//! evaluated as the Christoffel number `1 / Σ_k p_k(x_i)²`, which keeps full
//! relative precision for the tiny weights at the largest nodes.

use super::gamma::ln_gamma;
use crate::{Error, Result};

/// Default number of nodes per axis.
pub const DEFAULT_QUAD_POINTS: usize = 64;

const MAX_QL_ITERATIONS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadGrid {
    mu: f64,
    nodes: Vec<f64>,
    ln_weights: Vec<f64>,
}

impl QuadGrid {
    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes in `s`, ascending.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> Vec<f64> {
        self.ln_weights.iter().map(|w| w.exp()).collect()
    }

    /// `Σ_i w_i g(s_i) ≈ ∫ g(s) s^μ e^{−s} ds`.
    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.ln_weights)
            .map(|(&s, &lw)| lw.exp() * g(s))
            .sum()
    }

    /// Radial nodes `r_i = √(2 s_i)`.
    pub fn radial_nodes(&self) -> Vec<f64> {
        self.nodes.iter().map(|s| (2.0 * s).sqrt()).collect()
    }

    /// Weights `W_i` with `Σ_i W_i F(r_i) ≈ ∫_0^∞ F(r) r^{2μ+1} dr`.
    ///
    /// With `s = r²/2` one has `r^{2μ+1} dr = 2^μ s^μ ds`, so
    /// `W_i = 2^μ w_i e^{s_i}`.
    pub fn radial_weights(&self) -> Vec<f64> {
        let ln2mu = self.mu * std::f64::consts::LN_2;
        self.nodes
            .iter()
            .zip(&self.ln_weights)
            .map(|(&s, &lw)| (lw + s + ln2mu).exp())
            .collect()
    }
}

/// Builds the `count`-point rule for `s^μ e^{−s}`, `μ > −1`.
pub fn gauss_laguerre(count: usize, mu: f64) -> Result<QuadGrid> {
    if count == 0 {
        return Err(Error::InvalidParameter(
            "quadrature needs at least one node".into(),
        ));
    }
    if !(mu > -1.0) {
        return Err(Error::InvalidParameter(format!(
            "quadrature exponent must exceed -1, got {mu}"
        )));
    }

    let diag: Vec<f64> = (0..count).map(|k| 2.0 * k as f64 + mu + 1.0).collect();
    let off: Vec<f64> = (1..count)
        .map(|k| {
            let k = k as f64;
            (k * (k + mu)).sqrt()
        })
        .collect();
    let nodes = symmetric_tridiagonal_eigenvalues(diag, &off)?;

    let ln_mu0 = ln_gamma(mu + 1.0);
    let ln_weights = nodes
        .iter()
        .map(|&x| ln_mu0 - christoffel_sum(count, mu, x).ln())
        .collect();

    Ok(QuadGrid {
        mu,
        nodes,
        ln_weights,
    })
}

/// `Σ_{k<count} p̃_k(x)²` with `p̃_k = p_k √Γ(μ+1)` the orthonormal Laguerre
/// polynomials rescaled so that `p̃_0 = 1`.
fn christoffel_sum(count: usize, mu: f64, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut sum = 1.0;
    for k in 0..count.saturating_sub(1) {
        let kf = k as f64;
        let b_next = ((kf + 1.0) * (kf + 1.0 + mu)).sqrt();
        let b_cur = (kf * (kf + mu)).sqrt();
        let next = ((x - (2.0 * kf + mu + 1.0)) * cur - b_cur * prev) / b_next;
        prev = cur;
        cur = next;
        sum += cur * cur;
    }
    sum
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `off` (implicit QL with Wilkinson-type shifts), ascending.
fn symmetric_tridiagonal_eigenvalues(mut d: Vec<f64>, off: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    let mut e = vec![0.0; n];
    e[..off.len()].copy_from_slice(off);

    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::EigenNonConvergence { iterations });
            }

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    d.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(d)
}
