//! Log-Gamma via the Lanczos approximation (g = 7, nine terms).

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln |Γ(x)|` for real `x` away from the non-positive integers.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Γ(x)Γ(1−x) = π / sin(πx)
        return (PI / (PI * x).sin().abs()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

pub fn ln_factorial(k: u32) -> f64 {
    match k {
        0 | 1 => 0.0,
        _ => ln_gamma(k as f64 + 1.0),
    }
}

/// `π^{-1/2} Γ(n/2) / Γ((n+1)/2)`, the closed form attached to the
/// Christ–Strichartz kernel bound.
pub fn gamma_ratio(n: u32) -> f64 {
    assert!(n >= 1, "gamma_ratio needs n >= 1");
    let n = n as f64;
    (ln_gamma(n / 2.0) - ln_gamma((n + 1.0) / 2.0) - 0.5 * PI.ln()).exp()
}
