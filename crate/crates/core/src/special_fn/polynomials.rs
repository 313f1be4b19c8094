use std::f64::consts::PI;

use crate::{Error, Result};

/// Generalized Laguerre polynomial `L_k^ν(x)` by the forward three-term recurrence
/// `(k+1) L_{k+1} = (2k+ν+1−x) L_k − (k+ν) L_{k−1}`.
pub fn laguerre_poly(k: u32, nu: f64, x: f64) -> Result<f64> {
    check_nu(nu)?;
    Ok(laguerre_value(k, nu, x))
}

/// Laguerre function of type `ν`: `L_k^ν(λr²/2) · exp(−λr²/4)`.
pub fn laguerre_fn(k: u32, nu: f64, lambda: f64, r: f64) -> Result<f64> {
    check_nu(nu)?;
    if lambda <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "λ must be positive, got {lambda}"
        )));
    }
    Ok(laguerre_fn_value(k, nu, lambda, r))
}

fn check_nu(nu: f64) -> Result<()> {
    if nu > -1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "Laguerre parameter must exceed -1, got {nu}"
        )))
    }
}

pub(crate) fn laguerre_value(k: u32, nu: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 1.0 + nu - x;
    for j in 1..k {
        let j = j as f64;
        let next = ((2.0 * j + nu + 1.0 - x) * cur - (j + nu) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// All of `L_0^ν(x), …, L_{k_max}^ν(x)` in one recurrence pass.
pub(crate) fn laguerre_values_upto(k_max: u32, nu: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(k_max as usize + 1);
    out.push(1.0);
    if k_max == 0 {
        return out;
    }
    out.push(1.0 + nu - x);
    for j in 1..k_max as usize {
        let jf = j as f64;
        let next = ((2.0 * jf + nu + 1.0 - x) * out[j] - (jf + nu) * out[j - 1]) / (jf + 1.0);
        out.push(next);
    }
    out
}

pub(crate) fn laguerre_fn_value(k: u32, nu: f64, lambda: f64, r: f64) -> f64 {
    let s = 0.5 * lambda * r * r;
    laguerre_value(k, nu, s) * (-0.5 * s).exp()
}

/// L²-normalized one-dimensional Hermite function
/// `(λ/π)^{1/4} (2^k k!)^{-1/2} H_k(√λ x) e^{−λx²/2}`.
///
/// Evaluated through the normalized recurrence, which is the physicists'
/// recurrence `H_{k+1} = 2y H_k − 2k H_{k−1}` with the normalization folded in.
pub fn hermite_fn(k: u32, lambda: f64, x: f64) -> f64 {
    let y = lambda.sqrt() * x;
    let mut prev = (lambda / PI).powf(0.25) * (-0.5 * y * y).exp();
    if k == 0 {
        return prev;
    }
    let mut cur = 2f64.sqrt() * y * prev;
    for j in 1..k {
        let j = j as f64;
        let next = (2.0 / (j + 1.0)).sqrt() * y * cur - (j / (j + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}
