use std::f64::consts::PI;

use num_complex::Complex64;

use super::phi_k;
use crate::{Error, Result};

/// Default bound on the boundary integrand of [`twisted_conv`], relative to
/// `max|F|·max|G|`.
pub const DECAY_TOL: f64 = 1e-4;

/// Complex samples on the square grid `x_a = (a − N/2)h`, `h = 2R/N`, over
/// `[−R, R)²`, stored row-major with index `a·N + b` at `z = x_a + i x_b`.
///
/// The grid contains the origin and is closed under differences that stay in
/// range, which the twisted convolution relies on.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneGridFn {
    half_width: f64,
    points: usize,
    data: Vec<Complex64>,
}

impl PlaneGridFn {
    pub fn from_fn(
        half_width: f64,
        points: usize,
        f: impl Fn(Complex64) -> Complex64,
    ) -> Result<Self> {
        check_shape(half_width, points)?;
        let h = 2.0 * half_width / points as f64;
        let coord = |a: usize| (a as f64 - (points / 2) as f64) * h;
        let mut data = Vec::with_capacity(points * points);
        for a in 0..points {
            for b in 0..points {
                data.push(f(Complex64::new(coord(a), coord(b))));
            }
        }
        Self::from_samples(half_width, points, data)
    }

    pub fn from_samples(half_width: f64, points: usize, data: Vec<Complex64>) -> Result<Self> {
        check_shape(half_width, points)?;
        if data.len() != points * points {
            return Err(Error::LengthMismatch {
                expected: points * points,
                got: data.len(),
            });
        }
        if data.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidParameter(
                "grid samples must be finite".into(),
            ));
        }
        Ok(PlaneGridFn {
            half_width,
            points,
            data,
        })
    }

    pub fn zeros(half_width: f64, points: usize) -> Result<Self> {
        Self::from_samples(
            half_width,
            points,
            vec![Complex64::new(0.0, 0.0); points * points],
        )
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    pub fn coord(&self, a: usize) -> f64 {
        (a as f64 - (self.points / 2) as f64) * self.spacing()
    }

    pub fn get(&self, a: usize, b: usize) -> Complex64 {
        self.data[a * self.points + b]
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.data
    }

    /// Value at the grid origin.
    pub fn at_origin(&self) -> Complex64 {
        self.get(self.points / 2, self.points / 2)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    /// Trapezoid `∫|F|`.
    pub fn l1_norm(&self) -> f64 {
        let h = self.spacing();
        self.data.iter().map(|v| v.norm()).sum::<f64>() * h * h
    }

    pub fn same_grid(&self, other: &PlaneGridFn) -> bool {
        self.points == other.points && self.half_width == other.half_width
    }

    pub fn max_abs_diff(&self, other: &PlaneGridFn) -> Result<f64> {
        self.check_same(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (x, y)| m.max((x - y).norm())))
    }

    pub fn add(&self, other: &PlaneGridFn) -> Result<PlaneGridFn> {
        self.check_same(other)?;
        Ok(self.zip_map(other, |x, y| x + y))
    }

    pub fn sub(&self, other: &PlaneGridFn) -> Result<PlaneGridFn> {
        self.check_same(other)?;
        Ok(self.zip_map(other, |x, y| x - y))
    }

    pub fn scale(&self, factor: Complex64) -> PlaneGridFn {
        PlaneGridFn {
            data: self.data.iter().map(|v| v * factor).collect(),
            ..self.clone()
        }
    }

    fn zip_map(
        &self,
        other: &PlaneGridFn,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> PlaneGridFn {
        PlaneGridFn {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| f(*x, *y))
                .collect(),
            ..self.clone()
        }
    }

    fn check_same(&self, other: &PlaneGridFn) -> Result<()> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(Error::InvalidParameter(
                "plane functions live on different grids".into(),
            ))
        }
    }
}

fn check_shape(half_width: f64, points: usize) -> Result<()> {
    if !(half_width > 0.0) || !half_width.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "grid half-width must be positive, got {half_width}"
        )));
    }
    if points < 32 || points % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "grid needs an even point count ≥ 32, got {points}"
        )));
    }
    Ok(())
}

/// Largest `|F(−w) G(w)|` over the outer ring of the grid, relative to
/// `max|F|·max|G|`: the integrand of `(F×G)(0)` at the boundary.
pub fn boundary_integrand(f: &PlaneGridFn, g: &PlaneGridFn) -> f64 {
    let n = f.points;
    let scale = f.max_abs() * g.max_abs();
    if scale == 0.0 {
        return 0.0;
    }
    let mut worst: f64 = 0.0;
    for a in 1..n {
        for b in 1..n {
            if a != 1 && a != n - 1 && b != 1 && b != n - 1 {
                continue;
            }
            worst = worst.max((f.get(n - a, n - b) * g.get(a, b)).norm());
        }
    }
    worst / scale
}

/// Twisted convolution `(F×G)(z) = ∫ F(z−w) G(w) e^{(i/2) Im(z·w̄)} dw` by the
/// trapezoid rule at every grid point, with the default decay tolerance.
pub fn twisted_conv(f: &PlaneGridFn, g: &PlaneGridFn) -> Result<PlaneGridFn> {
    twisted_conv_with_tol(f, g, DECAY_TOL)
}

/// [`twisted_conv`] with an explicit bound on the boundary integrand.
/// Samples of `F(z−w)` falling outside the grid count as zero.
pub fn twisted_conv_with_tol(
    f: &PlaneGridFn,
    g: &PlaneGridFn,
    decay_tol: f64,
) -> Result<PlaneGridFn> {
    f.check_same(g)?;
    let found = boundary_integrand(f, g);
    if found > decay_tol {
        return Err(Error::BoundaryDecay {
            found,
            limit: decay_tol,
        });
    }
    let n = f.points;
    let half = n / 2;
    let h = f.spacing();
    // e^{(i/2) x_p x_q}; Im(z·w̄) = y_z x_w − x_z y_w
    let coords: Vec<f64> = (0..n).map(|a| f.coord(a)).collect();
    let phase: Vec<Complex64> = coords
        .iter()
        .flat_map(|&p| {
            coords
                .iter()
                .map(move |&q| Complex64::from_polar(1.0, 0.5 * p * q))
        })
        .collect();

    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    let mut weighted = vec![Complex64::new(0.0, 0.0); n];
    for a in 0..n {
        for c in 0..n {
            let fa = a + half;
            if fa < c || fa - c >= n {
                continue;
            }
            let f_row = &f.data[(fa - c) * n..(fa - c + 1) * n];
            let g_row = &g.data[c * n..(c + 1) * n];
            let mut any = false;
            for d in 0..n {
                weighted[d] = g_row[d] * phase[a * n + d].conj();
                any |= g_row[d] != Complex64::new(0.0, 0.0);
            }
            if !any {
                continue;
            }
            for b in 0..n {
                // F index b − d + N/2 must lie in [0, N)
                let d_lo = (b + half + 1).saturating_sub(n);
                let d_hi = (b + half).min(n - 1);
                let mut acc = Complex64::new(0.0, 0.0);
                for d in d_lo..=d_hi {
                    acc += f_row[b + half - d] * weighted[d];
                }
                out[a * n + b] += phase[b * n + c] * acc;
            }
        }
    }
    for v in &mut out {
        *v *= h * h;
    }
    Ok(PlaneGridFn {
        half_width: f.half_width,
        points: n,
        data: out,
    })
}

/// Samples of `φ_k^0(|z|) = L_k(|z|²/2) e^{−|z|²/4}` on the grid of shape `(R, N)`.
pub fn phi_k_grid(half_width: f64, points: usize, k: u32) -> Result<PlaneGridFn> {
    PlaneGridFn::from_fn(half_width, points, |z| {
        Complex64::new(phi_k(k, 0.0, z.norm()), 0.0)
    })
}

/// Spectral projection `P_k F = (2π)^{−1} F × φ_k^0`.
pub fn project_k(f: &PlaneGridFn, k: u32) -> Result<PlaneGridFn> {
    let kernel = phi_k_grid(f.half_width, f.points, k)?;
    Ok(twisted_conv(f, &kernel)?.scale(Complex64::new(1.0 / (2.0 * PI), 0.0)))
}
