//! Periodization of Fourier multipliers: a multiplier `m` on the line against
//! its restriction to the integers acting on the circle, in the scalar case.
//!
//! Conventions: `f̂(λ) = ∫ f(t) e^{iλt} dt` and
//! `Tf(t) = (2π)^{−1} ∫ e^{−iλt} m(λ) f̂(λ) dλ`, so `m(λ) = e^{iaλ}` translates
//! by `+a` and on the circle `e^{−ikt} ↦ m(k) e^{−ikt}`.
//! A signal of `N` samples with spacing `h` uses bin `k ↦ λ_k = 2π k_s/(N h)`,
//! where `k_s = k` for `k < N/2` and `k − N` otherwise.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::{FftDirection, FftPlanner};

use crate::{Error, Result};

/// Relative bound on the outer `N/64` samples of a line signal.
pub const EDGE_TOL: f64 = 1e-10;

/// Version tag of the [`norm_compare`] ensemble.
pub const ENSEMBLE_VERSION: u32 = 1;
/// Members in the [`norm_compare`] ensemble.
pub const ENSEMBLE_SIZE: usize = 200;
/// Circle samples per ensemble member.
pub const CIRCLE_POINTS: usize = 128;
/// Line samples per ensemble member, on `[−32π, 32π)`.
pub const LINE_POINTS: usize = 4096;
const LINE_HALF_WIDTH: f64 = 32.0 * PI;
const ENVELOPE_SIGMA: f64 = 4.0 * PI;

pub type Symbol = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A bounded symbol `λ ↦ m(λ)`.
#[derive(Clone)]
pub struct MultiplierSpec {
    label: String,
    symbol: Symbol,
    bound: f64,
    continuous_at_integers: bool,
}

impl fmt::Debug for MultiplierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplierSpec")
            .field("label", &self.label)
            .field("bound", &self.bound)
            .field("continuous_at_integers", &self.continuous_at_integers)
            .finish_non_exhaustive()
    }
}

impl MultiplierSpec {
    pub fn new(
        label: impl Into<String>,
        bound: f64,
        continuous_at_integers: bool,
        symbol: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        MultiplierSpec {
            label: label.into(),
            symbol: Arc::new(symbol),
            bound,
            continuous_at_integers,
        }
    }

    /// `m ≡ 1`.
    pub fn identity() -> Self {
        Self::new("identity", 1.0, true, |_| Complex64::new(1.0, 0.0))
    }

    /// `m(λ) = e^{iaλ}`, translation by `a`.
    pub fn shift(a: f64) -> Self {
        Self::new(format!("shift({a})"), 1.0, true, move |l| {
            Complex64::from_polar(1.0, a * l)
        })
    }

    /// `m(λ) = −i sgn λ`, with `m(0) = 0`. Discontinuous at `0`.
    pub fn hilbert() -> Self {
        Self::new("hilbert", 1.0, false, |l| {
            if l > 0.0 {
                Complex64::new(0.0, -1.0)
            } else if l < 0.0 {
                Complex64::new(0.0, 1.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn continuous_at_integers(&self) -> bool {
        self.continuous_at_integers
    }

    pub fn eval(&self, lambda: f64) -> Complex64 {
        (self.symbol)(lambda)
    }

    /// Symbol values on the bins of an `N`-point grid with spacing `h`,
    /// checked against the declared bound.
    fn on_bins(&self, points: usize, h: f64) -> Result<Vec<Complex64>> {
        (0..points)
            .map(|k| {
                let v = self.eval(bin_frequency(k, points, h));
                if !v.re.is_finite() || !v.im.is_finite() || v.norm() > self.bound * (1.0 + 1e-12) {
                    Err(Error::InvalidParameter(format!(
                        "symbol {} exceeds its bound {} at bin {k}",
                        self.label, self.bound
                    )))
                } else {
                    Ok(v)
                }
            })
            .collect()
    }
}

/// `λ_k = 2π k_s/(N h)`.
pub fn bin_frequency(k: usize, points: usize, h: f64) -> f64 {
    let signed = if k < points / 2 {
        k as f64
    } else {
        k as f64 - points as f64
    };
    2.0 * PI * signed / (points as f64 * h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpretation {
    /// Samples at `t_j = (j − N/2) h` of a function on the line.
    Line,
    /// Samples at `t_j = 2πj/N` of a `2π`-periodic function.
    Circle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    samples: Vec<Complex64>,
    spacing: f64,
    kind: Interpretation,
}

impl SampledSignal {
    pub fn new(samples: Vec<Complex64>, spacing: f64, kind: Interpretation) -> Result<Self> {
        let n = samples.len();
        if n < 64 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "signal length must be a power of two ≥ 64, got {n}"
            )));
        }
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "spacing must be positive, got {spacing}"
            )));
        }
        if kind == Interpretation::Circle
            && (spacing * n as f64 - 2.0 * PI).abs() > 1e-12 * 2.0 * PI
        {
            return Err(Error::InvalidParameter(format!(
                "circle signal needs h·N = 2π, got {}",
                spacing * n as f64
            )));
        }
        Ok(SampledSignal {
            samples,
            spacing,
            kind,
        })
    }

    /// Samples `f((j − N/2)h)`.
    pub fn sample_line(points: usize, spacing: f64, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let samples = (0..points)
            .map(|j| f((j as f64 - (points / 2) as f64) * spacing))
            .collect();
        Self::new(samples, spacing, Interpretation::Line)
    }

    /// Samples `f(2πj/N)`.
    pub fn sample_circle(points: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let h = 2.0 * PI / points as f64;
        let samples = (0..points).map(|j| f(j as f64 * h)).collect();
        Self::new(samples, h, Interpretation::Circle)
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn kind(&self) -> Interpretation {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sample time of index `j`.
    pub fn time(&self, j: usize) -> f64 {
        match self.kind {
            Interpretation::Line => (j as f64 - (self.len() / 2) as f64) * self.spacing,
            Interpretation::Circle => j as f64 * self.spacing,
        }
    }

    /// Discrete `‖s‖_p = (h Σ |s_j|^p)^{1/p}`.
    pub fn lp_norm(&self, p: f64) -> f64 {
        (self.spacing * self.samples.iter().map(|v| v.norm().powf(p)).sum::<f64>()).powf(1.0 / p)
    }

    pub fn max_abs_diff(&self, other: &SampledSignal) -> f64 {
        self.samples
            .iter()
            .zip(&other.samples)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// Largest `|s_j|` over the outer `N/64` samples on each side, relative to `max |s|`.
    pub fn edge_mass(&self) -> f64 {
        let n = self.len();
        let band = n / 64;
        let peak = self.samples.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        if peak == 0.0 {
            return 0.0;
        }
        let edge = self.samples[..band]
            .iter()
            .chain(&self.samples[n - band..])
            .fold(0.0f64, |m, v| m.max(v.norm()));
        edge / peak
    }
}

/// `s ↦ (1/N) Σ_k m(λ_k) e^{−2πi jk/N} Σ_l s_l e^{2πi kl/N}`.
fn apply_symbol(m: &MultiplierSpec, s: &SampledSignal) -> Result<SampledSignal> {
    let n = s.len();
    let symbol = m.on_bins(n, s.spacing)?;
    let mut planner = FftPlanner::new();
    let mut buf = s.samples.clone();
    // f̂ uses e^{+iλt}, which is rustfft's inverse direction
    planner.plan_fft(n, FftDirection::Inverse).process(&mut buf);
    for (b, mk) in buf.iter_mut().zip(&symbol) {
        *b *= mk;
    }
    planner.plan_fft(n, FftDirection::Forward).process(&mut buf);
    let scale = 1.0 / n as f64;
    for b in &mut buf {
        *b *= scale;
    }
    Ok(SampledSignal {
        samples: buf,
        spacing: s.spacing,
        kind: s.kind,
    })
}

/// Line multiplier by discrete Fourier transform on the sampling window.
pub fn apply_line(m: &MultiplierSpec, s: &SampledSignal) -> Result<SampledSignal> {
    if s.kind != Interpretation::Line {
        return Err(Error::InvalidParameter(
            "apply_line needs a line signal".into(),
        ));
    }
    let found = s.edge_mass();
    if found > EDGE_TOL {
        return Err(Error::EdgeMass {
            found,
            limit: EDGE_TOL,
        });
    }
    apply_symbol(m, s)
}

/// Periodized multiplier: Fourier coefficients times `m(k)` at integer `k`.
pub fn apply_circle(m: &MultiplierSpec, s: &SampledSignal) -> Result<SampledSignal> {
    if s.kind != Interpretation::Circle {
        return Err(Error::InvalidParameter(
            "apply_circle needs a circle signal".into(),
        ));
    }
    apply_symbol(m, s)
}

/// Embeds one period of a circle signal into a line window of `periods`
/// periods (zero elsewhere), applies the line multiplier, sums the output
/// over periods and compares with [`apply_circle`]. Returns the largest
/// pointwise difference.
pub fn periodization_defect(m: &MultiplierSpec, s: &SampledSignal, periods: usize) -> Result<f64> {
    if s.kind != Interpretation::Circle {
        return Err(Error::InvalidParameter(
            "periodization needs a circle signal".into(),
        ));
    }
    if periods == 0 || !periods.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "period count must be a power of two, got {periods}"
        )));
    }
    let n = s.len();
    let total = n * periods;
    // line index j sits at t = (j − total/2) h; the embedded period starts at t = 0
    let start = total / 2;
    let mut line = vec![Complex64::new(0.0, 0.0); total];
    line[start..start + n].copy_from_slice(&s.samples);
    let line = SampledSignal::new(line, s.spacing, Interpretation::Line)?;
    let out = apply_symbol(m, &line)?;
    let mut folded = vec![Complex64::new(0.0, 0.0); n];
    for (j, v) in out.samples.iter().enumerate() {
        folded[(j + total - start) % n] += v;
    }
    let circ = apply_circle(m, s)?;
    Ok(folded
        .iter()
        .zip(&circ.samples)
        .fold(0.0, |acc, (a, b)| acc.max((a - b).norm())))
}

/// The seeded comparison ensemble: zero-mean circle signals of
/// [`CIRCLE_POINTS`] samples and their line counterparts, periodic copies
/// under a Gaussian envelope of width `4π` on `[−32π, 32π)`.
///
/// Members 0–79 are random trigonometric polynomials of degree ≤ 8,
/// 80–139 periodic bumps `e^{κ cos(t − t₀)}`, 140–199 chirps
/// `e^{i(kt + β sin(νt))}`; each has its mean removed.
pub fn ensemble(seed: u64) -> Result<Vec<(SampledSignal, SampledSignal)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(ENSEMBLE_SIZE);
    for member in 0..ENSEMBLE_SIZE {
        let f: Box<dyn Fn(f64) -> Complex64> = if member < 80 {
            let coeffs: Vec<(i32, Complex64)> = (-8..=8)
                .filter(|&k| k != 0)
                .map(|k| {
                    (
                        k,
                        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    )
                })
                .collect();
            Box::new(move |t| {
                coeffs
                    .iter()
                    .map(|(k, c)| c * Complex64::from_polar(1.0, *k as f64 * t))
                    .sum()
            })
        } else if member < 140 {
            let kappa = rng.gen_range(1.0..12.0);
            let t0 = rng.gen_range(0.0..2.0 * PI);
            Box::new(move |t| Complex64::new((kappa * ((t - t0).cos() - 1.0)).exp(), 0.0))
        } else {
            let k = rng.gen_range(-6i32..=6) as f64;
            let nu = rng.gen_range(1u32..=3) as f64;
            let beta = rng.gen_range(0.5..4.0);
            Box::new(move |t| Complex64::from_polar(1.0, k * t + beta * (nu * t).sin()))
        };
        let raw = SampledSignal::sample_circle(CIRCLE_POINTS, &f)?;
        let mean = raw.samples.iter().sum::<Complex64>() / CIRCLE_POINTS as f64;
        let circle = SampledSignal::new(
            raw.samples.iter().map(|v| v - mean).collect(),
            raw.spacing,
            Interpretation::Circle,
        )?;
        let h = 2.0 * LINE_HALF_WIDTH / LINE_POINTS as f64;
        let line = SampledSignal::sample_line(LINE_POINTS, h, |t| {
            let env = (-t * t / (2.0 * ENVELOPE_SIGMA * ENVELOPE_SIGMA)).exp();
            (f(t) - mean) * env
        })?;
        out.push((line, circle));
    }
    Ok(out)
}

/// Empirical lower bounds `max ‖Ts‖_p/‖s‖_p` for the line and circle
/// operators over the seeded [`ensemble`].
pub fn norm_compare(m: &MultiplierSpec, p: f64, ensemble_seed: u64) -> Result<(f64, f64)> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "p must lie in (1, ∞), got {p}"
        )));
    }
    let mut line_est: f64 = 0.0;
    let mut circle_est: f64 = 0.0;
    for (line, circle) in ensemble(ensemble_seed)? {
        let tl = apply_line(m, &line)?;
        line_est = line_est.max(tl.lp_norm(p) / line.lp_norm(p));
        let tc = apply_circle(m, &circle)?;
        circle_est = circle_est.max(tc.lp_norm(p) / circle.lp_norm(p));
    }
    Ok((line_est, circle_est))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bump(points: usize, h: f64, center: f64) -> SampledSignal {
        SampledSignal::sample_line(points, h, |t| c((-(t - center).powi(2) / 2.0).exp(), 0.0))
            .unwrap()
    }

    #[test]
    fn signal_validation() {
        assert!(SampledSignal::new(vec![c(0.0, 0.0); 32], 0.1, Interpretation::Line).is_err());
        assert!(SampledSignal::new(vec![c(0.0, 0.0); 100], 0.1, Interpretation::Line).is_err());
        assert!(SampledSignal::new(vec![c(0.0, 0.0); 64], 0.1, Interpretation::Circle).is_err());
        assert!(SampledSignal::sample_circle(64, |_| c(1.0, 0.0)).is_ok());
    }

    #[test]
    fn identity_symbol() {
        let s = bump(256, 0.1, 0.3);
        let out = apply_line(&MultiplierSpec::identity(), &s).unwrap();
        assert!(out.max_abs_diff(&s) < 1e-12);
        let circ = SampledSignal::sample_circle(128, |t| c(t.sin(), (3.0 * t).cos())).unwrap();
        let out = apply_circle(&MultiplierSpec::identity(), &circ).unwrap();
        assert!(out.max_abs_diff(&circ) < 1e-14);
    }

    #[test]
    fn shift_symbol_translates() {
        let h = 0.05;
        let s = bump(1024, h, 0.0);
        for a in [1.3, -2.0] {
            let out = apply_line(&MultiplierSpec::shift(a), &s).unwrap();
            let peak = (0..out.len())
                .max_by(|&i, &j| out.samples()[i].norm().total_cmp(&out.samples()[j].norm()))
                .unwrap();
            assert!((out.time(peak) - a).abs() <= h);
        }
    }

    #[test]
    fn hilbert_parity() {
        let s = bump(1024, 0.05, 0.0);
        let out = apply_line(&MultiplierSpec::hilbert(), &s).unwrap();
        let v = out.samples();
        let n = v.len();
        let mut worst: f64 = 0.0;
        for j in 1..n {
            // t_j ↔ −t_j is index j ↔ n − j
            worst = worst.max((v[j] + v[n - j]).norm());
            worst = worst.max(v[j].im.abs());
        }
        assert!(worst < 1e-8, "{worst}");
        assert!(v[n / 2 + 20].re.abs() > 1e-3);
    }

    #[test]
    fn circle_modes_are_eigenfunctions() {
        let m = MultiplierSpec::shift(0.7);
        for k in [-5i32, 0, 3] {
            let kf = k as f64;
            let s =
                SampledSignal::sample_circle(128, |t| Complex64::from_polar(1.0, -kf * t)).unwrap();
            let out = apply_circle(&m, &s).unwrap();
            let want: Vec<Complex64> = s.samples().iter().map(|v| v * m.eval(kf)).collect();
            let err = out
                .samples()
                .iter()
                .zip(&want)
                .fold(0.0f64, |a, (x, y)| a.max((x - y).norm()));
            assert!(err < 1e-13);
        }
        let cos3 = SampledSignal::sample_circle(128, |t| c((3.0 * t).cos(), 0.0)).unwrap();
        let out = apply_circle(&MultiplierSpec::hilbert(), &cos3).unwrap();
        let sin3 = SampledSignal::sample_circle(128, |t| c(-(3.0 * t).sin(), 0.0)).unwrap();
        assert!(out.max_abs_diff(&sin3) < 1e-12);
    }

    #[test]
    fn edge_mass_is_rejected() {
        let wide = bump(256, 0.1, 12.0);
        assert!(matches!(
            apply_line(&MultiplierSpec::identity(), &wide),
            Err(Error::EdgeMass { .. })
        ));
        assert!(apply_line(
            &MultiplierSpec::identity(),
            &SampledSignal::sample_circle(64, |_| c(1.0, 0.0)).unwrap()
        )
        .is_err());
    }

    #[test]
    fn periodization_matches_circle() {
        let s = SampledSignal::sample_circle(128, |t| {
            c((4.0 * (t - 1.0).cos()).exp(), (2.0 * t).sin())
        })
        .unwrap();
        for m in [
            MultiplierSpec::identity(),
            MultiplierSpec::shift(0.4),
            MultiplierSpec::hilbert(),
        ] {
            assert!(
                periodization_defect(&m, &s, 16).unwrap() < 1e-10,
                "{}",
                m.label()
            );
        }
    }

    #[test]
    fn line_and_circle_agree_for_compact_bump() {
        // a bump well inside one period, translated by a band-flat unimodular symbol
        let f = |t: f64| c((-(t - PI).powi(2) / (2.0 * 0.2 * 0.2)).exp(), 0.0);
        let circ = SampledSignal::sample_circle(256, f).unwrap();
        let line = SampledSignal::new(
            circ.samples().to_vec(),
            circ.spacing(),
            Interpretation::Line,
        )
        .unwrap();
        let m = MultiplierSpec::shift(0.5);
        let a = apply_line(&m, &line).unwrap();
        let b = apply_circle(&m, &circ).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-6);
    }

    #[test]
    fn ensemble_is_deterministic_and_clean() {
        let a = ensemble(3).unwrap();
        let b = ensemble(3).unwrap();
        assert_eq!(a.len(), ENSEMBLE_SIZE);
        assert!(a.iter().zip(&b).all(|(x, y)| x == y));
        assert!(a.iter().all(|(l, _)| l.edge_mass() < EDGE_TOL));
        let mean: Complex64 = a[100].1.samples().iter().sum();
        assert!(mean.norm() < 1e-12);
    }

    #[test]
    fn norm_compare_cases() {
        let (l, c1) = norm_compare(&MultiplierSpec::identity(), 3.0, 1).unwrap();
        assert!((l - 1.0).abs() < 1e-10 && (c1 - 1.0).abs() < 1e-10);
        let (l2, c2) = norm_compare(&MultiplierSpec::hilbert(), 2.0, 1).unwrap();
        assert!(l2 <= 1.0 + 1e-9 && c2 <= 1.0 + 1e-9);
        let (l4, c4) = norm_compare(&MultiplierSpec::hilbert(), 4.0, 1).unwrap();
        assert!(c4 <= l4 * 1.05, "{c4} vs {l4}");
        assert!(norm_compare(&MultiplierSpec::identity(), 1.0, 1).is_err());
    }
}
