//! Acceptance criteria, one verdict line each. Exits non-zero if any fails.

use std::panic;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hriesz::hermite_ops::{
    commutator_measure, factorization_defect, random_coeffs, square_function_sum,
};
use hriesz::kernel_bounds::{christ_bound, hecke_scaling_exponent, lemma34_numeric};
use hriesz::laguerre_riesz::{riesz_laguerre, riesz_laguerre_factor, LagCoeffs, LaguerreBasisSpec};
use hriesz::special_hermite::{
    annulus_samples, intertwine_report, phi_special, project_k, twisted_conv, MHomogeneous,
    PlaneGridFn,
};
use hriesz::transference::{norm_compare, MultiplierSpec};
use hriesz::MultiIndex;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LEMMA_REL_TOL: f64 = 1e-6;
const LEMMA_N1_TOL: f64 = 1e-9;
const LEMMA_TIME: Duration = Duration::from_secs(10);
const CHRIST_TOL: f64 = 1e-6;
const CHRIST_TIME: Duration = Duration::from_secs(30);
const SQUARE_TOL: f64 = 1e-10;
const SQUARE_TIME: Duration = Duration::from_secs(5);
const FACTOR_TOL: f64 = 1e-12;
const FACTOR_TIME: Duration = Duration::from_secs(5);
const COMMUTATOR_TOL: f64 = 1e-12;
const INTERTWINE_TOL: f64 = 1e-6;
const INTERTWINE_TIME: Duration = Duration::from_secs(60);
const ORTHO_TOL: f64 = 1e-9;
const ORTHO_TIME: Duration = Duration::from_secs(20);
const PROJECTION_TOL: f64 = 2e-3;
const SELF_CONV_REL_TOL: f64 = 1e-3;
const HECKE_TOL: f64 = 1e-6;
const TRANSFER_SLACK: f64 = 1.05;
const IDENTITY_TOL: f64 = 1e-10;

type Outcome = (bool, String);

/// `π^{-1/2}Γ(n/2)/Γ((n+1)/2)` by its recurrence `r(n+1) = 2/(πn r(n))`, `r(1) = 1`.
fn gamma_ratio_oracle(n: u32) -> f64 {
    let mut r = 1.0;
    for k in 1..n {
        r = 2.0 / (std::f64::consts::PI * k as f64 * r);
    }
    r
}

fn criterion_01_gamma_ratio_lemma() -> Outcome {
    let start = Instant::now();
    let mut worst_rel: f64 = 0.0;
    let mut worst_n = 0;
    let mut n1 = f64::NAN;
    for n in 1..=20 {
        let ratio = lemma34_numeric(n).unwrap().ratio.value;
        if n == 1 {
            n1 = ratio;
        }
        let rel = (ratio - gamma_ratio_oracle(n)).abs() / gamma_ratio_oracle(n);
        if rel > worst_rel {
            worst_rel = rel;
            worst_n = n;
        }
    }
    let elapsed = start.elapsed();
    let ok = worst_rel <= LEMMA_REL_TOL && (n1 - 1.0).abs() <= LEMMA_N1_TOL && elapsed < LEMMA_TIME;
    (
        ok,
        format!("max rel err {worst_rel:.3e} at n={worst_n}, n=1 value {n1:.15}, {elapsed:.2?}"),
    )
}

fn criterion_02_kernel_bound_integral() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut max_bound: f64 = 0.0;
    for n in 1..=10 {
        let b = christ_bound(n).unwrap();
        worst = worst.max((b - gamma_ratio_oracle(n)).abs());
        max_bound = max_bound.max(b);
    }
    let elapsed = start.elapsed();
    let ok = worst <= CHRIST_TOL && max_bound <= 1.0 && elapsed < CHRIST_TIME;
    (
        ok,
        format!("max abs err {worst:.3e}, max value {max_bound:.6}, {elapsed:.2?}"),
    )
}

fn criterion_03_square_function_identity() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        for (i, lambda) in [0.5, 1.0, 2.0].into_iter().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(300 + 10 * n as u64 + i as u64);
            for _ in 0..100 {
                let c = random_coeffs(n, 8, lambda, 7, &mut rng).unwrap();
                let two = 2.0 * c.norm_sqr();
                worst = worst.max((square_function_sum(&c).unwrap() - two).abs() / two);
            }
        }
    }
    let elapsed = start.elapsed();
    (
        worst <= SQUARE_TOL && elapsed < SQUARE_TIME,
        format!("max rel defect {worst:.3e}, {elapsed:.2?}"),
    )
}

fn criterion_04_factorization() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let trunc = 10;
    for (p, q) in [(1, 1), (1, 2), (2, 2)] {
        for n in [2, 3] {
            let mut rng =
                ChaCha8Rng::seed_from_u64(400 + 10 * p as u64 + q as u64 + 100 * n as u64);
            for _ in 0..20 {
                let c = random_coeffs(n, trunc, 1.0, trunc - q, &mut rng).unwrap();
                worst = worst.max(factorization_defect(p, q, &c).unwrap());
            }
        }
    }
    let elapsed = start.elapsed();
    (
        worst <= FACTOR_TOL && elapsed < FACTOR_TIME,
        format!("max defect {worst:.3e}, {elapsed:.2?}"),
    )
}

fn criterion_05_commutator() -> Outcome {
    let unit = commutator_measure(0, 1.0, 10, 2).unwrap();
    let mut residual: f64 = 0.0;
    let mut linearity: f64 = 0.0;
    for lambda in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let rep = commutator_measure(0, lambda, 10, 2).unwrap();
        residual = residual.max(rep.residual).max(rep.shift_defect);
        linearity = linearity.max((rep.constant - lambda * unit.constant).abs());
    }
    let ok = residual <= COMMUTATOR_TOL && linearity <= COMMUTATOR_TOL;
    (ok,
        format!(
            "residual {residual:.3e}, linearity {linearity:.3e}, measured constant {:.15}·λ (reference -4·λ differs by a factor of 2)",
            unit.constant
        ),
    )
}

fn criterion_06_intertwining() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut unit_phase: f64 = 0.0;
    let mut cells = 0;
    for n in 1..=2usize {
        let samples = annulus_samples(n, 100, 0.2, 3.0, 42);
        for entries in (0..3u32.pow(n as u32)).map(|code| {
            (0..n)
                .map(|i| (code / 3u32.pow(i as u32)) % 3)
                .collect::<Vec<_>>()
        }) {
            let m = MultiIndex::new(entries);
            let mut mixture = vec![(MultiIndex::zeros(n), 1.0), (MultiIndex::unit(n, 0), 0.5)];
            mixture.push((MultiIndex::unit(n, n - 1).add_unit(0), -0.25));
            let profiles = [
                MHomogeneous::gaussian(m.clone(), 0.5),
                MHomogeneous::psi_mixture(m.clone(), mixture),
            ];
            for g in &profiles {
                for axis in 0..n {
                    let rep = intertwine_report(axis, g, &samples, 20, 64).unwrap();
                    worst = worst.max(rep.relative);
                    unit_phase = unit_phase.max(rep.unit_phase_relative);
                    cells += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    (worst <= INTERTWINE_TOL && elapsed < INTERTWINE_TIME,
        format!("{cells} cells, max rel defect {worst:.6e} (without leading i: {unit_phase:.3e}), {elapsed:.2?}"),
    )
}

fn criterion_07_orthonormality() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut types = 0;
    for n in 1..=3usize {
        for code in 0..4u32.pow(n as u32) {
            let m = MultiIndex::new((0..n).map(|i| (code / 4u32.pow(i as u32)) % 4).collect());
            let gram = LaguerreBasisSpec::new(m, 6, 64).unwrap().gram();
            for (a, row) in gram.iter().enumerate() {
                for (b, v) in row.iter().enumerate() {
                    worst = worst.max((v - if a == b { 1.0 } else { 0.0 }).abs());
                }
            }
            types += 1;
        }
    }
    let elapsed = start.elapsed();
    (
        worst <= ORTHO_TOL && elapsed < ORTHO_TIME,
        format!("{types} types, max Gram defect {worst:.3e}, {elapsed:.2?}"),
    )
}

fn criterion_08_contraction() -> Outcome {
    let mut worst_factor: f64 = 0.0;
    let mut worst_ratio: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 1..=4usize {
        let indices = MultiIndex::simplex(n, 10);
        for a in &indices {
            for j in 0..n {
                let closed = 2.0 * a.get(j) as f64 / (2 * a.order() + n as u32) as f64;
                let f = riesz_laguerre_factor(a, j).powi(2);
                if (f - closed).abs() > 1e-15 {
                    return (
                        false,
                        format!("factor mismatch at α={a}, j={j}: {f} vs {closed}"),
                    );
                }
                worst_factor = worst_factor.max(f);
            }
        }
        let spec = LaguerreBasisSpec::new(MultiIndex::new(vec![1; n]), 10, 8).unwrap();
        for _ in 0..10 {
            let c = LagCoeffs::from_entries(
                &spec,
                indices
                    .iter()
                    .map(|a| (a.clone(), rng.gen_range(-1.0..1.0))),
            )
            .unwrap();
            for j in 0..n {
                worst_ratio =
                    worst_ratio.max(riesz_laguerre(j, &c).unwrap().norm_sqr() / c.norm_sqr());
            }
        }
    }
    (
        worst_factor <= 1.0 && worst_ratio <= 1.0,
        format!("max factor {worst_factor:.15}, max norm ratio² {worst_ratio:.6}"),
    )
}

fn criterion_09_projection_algebra() -> Outcome {
    let (half, points) = (8.0, 128);
    let g = PlaneGridFn::from_fn(half, points, |z| {
        Complex64::new((-z.norm_sqr() / 4.0).exp(), 0.0)
    })
    .unwrap();
    let origin = twisted_conv(&g, &g).unwrap().at_origin().re;
    let two_pi = 2.0 * std::f64::consts::PI;
    let self_conv_ok = (origin - two_pi).abs() <= SELF_CONV_REL_TOL * two_pi;

    let f = PlaneGridFn::from_fn(half, points, |z| {
        let term = |a: u32, m: u32| {
            phi_special(&MultiIndex::new(vec![a]), &MultiIndex::new(vec![m]), &[z]).unwrap()
        };
        let diag: Complex64 = (0..=4).map(|k| term(k, 0) / (1.0 + k as f64)).sum();
        (diag + term(1, 1) * 0.5) * two_pi.sqrt()
    })
    .unwrap();
    let scale = f.max_abs();
    let projected: Vec<PlaneGridFn> = (0..=4).map(|k| project_k(&f, k).unwrap()).collect();
    let mut idem: f64 = 0.0;
    let mut ortho: f64 = 0.0;
    for (k, pk) in projected.iter().enumerate() {
        for l in 0..=4u32 {
            let plk = project_k(pk, l).unwrap();
            if l as usize == k {
                idem = idem.max(plk.max_abs_diff(pk).unwrap() / scale);
            } else {
                ortho = ortho.max(plk.max_abs() / scale);
            }
        }
    }
    let ok = self_conv_ok && idem <= PROJECTION_TOL && ortho <= PROJECTION_TOL;
    (
        ok,
        format!("self-convolution {origin:.12} vs 2π, idempotence {idem:.3e}, cross {ortho:.3e}"),
    )
}

fn criterion_10_hecke_scaling() -> Outcome {
    let radii = [0.25, 0.5, 1.0, 2.0, 4.0];
    let mut worst: f64 = 0.0;
    for (p, q) in [(1u32, 0u32), (1, 1), (2, 1)] {
        let slope =
            hecke_scaling_exponent(|s: f64| (-s * s / 2.0).exp(), p + 1, p, q, 2, 1.0, &radii)
                .unwrap();
        worst = worst.max((slope + (p + q) as f64).abs());
    }
    (
        worst <= HECKE_TOL,
        format!("max exponent error {worst:.3e}"),
    )
}

fn criterion_11_transference() -> Outcome {
    let mut ok = true;
    let mut detail = String::new();
    for p in [2.0, 4.0] {
        let (line, circle) = norm_compare(&MultiplierSpec::hilbert(), p, 42).unwrap();
        ok &= circle <= line * TRANSFER_SLACK;
        detail.push_str(&format!(
            "hilbert p={p}: circle {circle:.6} line {line:.6}; "
        ));
        let (il, ic) = norm_compare(&MultiplierSpec::identity(), p, 42).unwrap();
        ok &= (il - 1.0).abs() <= IDENTITY_TOL && (ic - 1.0).abs() <= IDENTITY_TOL;
        detail.push_str(&format!(
            "identity p={p}: {:.1e}/{:.1e}; ",
            (il - 1.0).abs(),
            (ic - 1.0).abs()
        ));
    }
    (ok, detail)
}

fn criterion_12_reproducible_output() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hriesz"))
            .args(["all", "--seed", "42"])
            .env_remove("HRIESZ_CONFIG")
            .output()
            .unwrap()
    };
    let first = run();
    let second = run();
    let code = first.status.code();
    let ok =
        !first.stdout.is_empty() && first.stdout == second.stdout && code == second.status.code();
    (
        ok,
        format!(
            "{} bytes, identical: {}, exit code {code:?}",
            first.stdout.len(),
            first.stdout == second.stdout
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 12] = [
        (1, criterion_01_gamma_ratio_lemma),
        (2, criterion_02_kernel_bound_integral),
        (3, criterion_03_square_function_identity),
        (4, criterion_04_factorization),
        (5, criterion_05_commutator),
        (6, criterion_06_intertwining),
        (7, criterion_07_orthonormality),
        (8, criterion_08_contraction),
        (9, criterion_09_projection_algebra),
        (10, criterion_10_hecke_scaling),
        (11, criterion_11_transference),
        (12, criterion_12_reproducible_output),
    ];
    let mut failed = 0;
    for (id, check) in criteria {
        let (ok, detail) =
            panic::catch_unwind(check).unwrap_or_else(|_| (false, "panicked".to_string()));
        println!(
            "criterion {id:>2}: {} {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
