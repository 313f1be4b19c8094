//! Verification suites. Each returns rows in a fixed generation order.

use hriesz::hermite_ops::{
    commutator_measure, factorization_defect, random_coeffs, square_function_sum,
};
use hriesz::kernel_bounds::{
    christ_bound, hecke_radial_coeff, hecke_scaling_exponent, lemma34_closed_ratio, lemma34_numeric,
};
use hriesz::laguerre_riesz::{
    riesz_laguerre, riesz_laguerre_factor, weighted_probe, LagCoeffs, LaguerreBasisSpec,
};
use hriesz::special_fn::{gamma_ratio, psi};
use hriesz::special_hermite::{
    annulus_samples, intertwine_report, kernel_Km, phi_special, project_k, twisted_conv,
    MHomogeneous, PlaneGridFn,
};
use hriesz::transference::{norm_compare, MultiplierSpec};
use hriesz::MultiIndex;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::table::Row;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Every multi-index of length `n` with entries in `0..=max`.
pub fn box_indices(n: usize, max: u32) -> Vec<MultiIndex> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..=max).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(MultiIndex::new).collect()
}

/// `r(1) = 1`, `r(k+1) = 2/(πk·r(k))`.
pub fn gamma_ratio_recurrence(n_max: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max as usize);
    let mut r = 1.0;
    for k in 1..=n_max {
        out.push(r);
        r = 2.0 / (std::f64::consts::PI * k as f64 * r);
    }
    out
}

pub fn gamma_ratio_rows(n_max: u32, cfg: &RunConfig) -> Vec<Row> {
    gamma_ratio_recurrence(n_max)
        .into_iter()
        .enumerate()
        .map(|(i, reference)| {
            let n = i as u32 + 1;
            Row::rel(
                "gamma_ratio",
                format!("n={n}"),
                gamma_ratio(n),
                reference,
                cfg.tol("gamma_ratio"),
            )
        })
        .collect()
}

pub fn kernel_bound_rows(n_max: u32, cfg: &RunConfig) -> Vec<Row> {
    let tol = cfg.tol("christ_bound");
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let params = format!("n={n}");
        match christ_bound(n) {
            Ok(b) => {
                rows.push(Row::rel(
                    "christ_bound",
                    params.clone(),
                    b,
                    gamma_ratio(n),
                    tol,
                ));
                rows.push(Row::at_most(
                    "christ_bound_at_most_one",
                    params.clone(),
                    b,
                    1.0,
                    0.0,
                ));
                rows.push(
                    Row::rel(
                        "christ_bound_closed_factors",
                        params,
                        b,
                        lemma34_closed_ratio(n),
                        tol,
                    )
                    .with_note("product of the closed-form beta factors"),
                );
            }
            Err(e) => rows.push(Row::error("christ_bound", params, e)),
        }
    }
    rows
}

pub fn lemma34_rows(n_max: u32, cfg: &RunConfig) -> Vec<Row> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let params = format!("n={n}");
        match lemma34_numeric(n) {
            Ok(rep) => {
                let ratio = rep.ratio.value;
                if n == 1 {
                    rows.push(Row::abs(
                        "lemma34_ratio",
                        params.clone(),
                        ratio,
                        1.0,
                        cfg.tol("lemma34_ratio_n1"),
                    ));
                } else {
                    rows.push(Row::rel(
                        "lemma34_ratio",
                        params.clone(),
                        ratio,
                        gamma_ratio(n),
                        cfg.tol("lemma34_ratio"),
                    ));
                }
                rows.push(Row::defect(
                    "lemma34_factors",
                    params.clone(),
                    rep.factor_defect,
                    cfg.tol("lemma34_factors"),
                ));
                rows.push(
                    Row::rel(
                        "lemma34_closed_factors",
                        params,
                        ratio,
                        lemma34_closed_ratio(n),
                        cfg.tol("lemma34_ratio"),
                    )
                    .with_note("product of the closed-form beta factors"),
                );
            }
            Err(e) => rows.push(Row::error("lemma34_ratio", params, e)),
        }
    }
    rows
}

pub fn ortho_rows(
    ns: &[usize],
    ms: Option<&MultiIndex>,
    trunc: u32,
    quad: usize,
    cfg: &RunConfig,
) -> Vec<Row> {
    let mut rows = Vec::new();
    for &n in ns {
        let types = match ms {
            Some(m) => vec![m.clone()],
            None => box_indices(n, 3),
        };
        for m in types {
            let params = format!("n={n} m={m} K={trunc} Q={quad}");
            match LaguerreBasisSpec::new(m, trunc, quad) {
                Ok(spec) => {
                    let gram = spec.gram();
                    let mut defect: f64 = 0.0;
                    for (a, row) in gram.iter().enumerate() {
                        for (b, v) in row.iter().enumerate() {
                            let delta = if a == b { 1.0 } else { 0.0 };
                            defect = defect.max((v - delta).abs());
                        }
                    }
                    rows.push(Row::defect("ortho", params, defect, cfg.tol("ortho")));
                }
                Err(e) => rows.push(Row::error("ortho", params, e)),
            }
        }
    }
    rows
}

pub fn square_function_rows(
    ns: &[usize],
    trunc: u32,
    trials: usize,
    seed: u64,
    cfg: &RunConfig,
) -> Vec<Row> {
    let mut rows = Vec::new();
    for &n in ns {
        for (li, lambda) in [0.5, 1.0, 2.0].into_iter().enumerate() {
            let params = format!("n={n} lambda={lambda} K={trunc} trials={trials}");
            let mut rng = rng_for(seed, 100 * n as u64 + li as u64);
            let worst = (0..trials).try_fold(0.0_f64, |acc, _| {
                let c = random_coeffs(n, trunc, lambda, trunc - 1, &mut rng)?;
                let two = 2.0 * c.norm_sqr();
                Ok::<f64, hriesz::Error>(acc.max((square_function_sum(&c)? - two).abs() / two))
            });
            rows.push(match worst {
                Ok(d) => Row::defect("square_function", params, d, cfg.tol("square_function")),
                Err(e) => Row::error("square_function", params, e),
            });
        }
    }
    rows
}

/// Per-factor bound over `|α| ≤ order_max`, and norm ratios of random inputs.
pub fn contraction_rows(
    n_max: usize,
    order_max: u32,
    trials: usize,
    seed: u64,
    cfg: &RunConfig,
) -> Vec<Row> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let indices = MultiIndex::simplex(n, order_max);
        let worst = indices
            .iter()
            .flat_map(|a| (0..n).map(move |j| riesz_laguerre_factor(a, j)))
            .fold(0.0_f64, f64::max);
        rows.push(Row::at_most(
            "contraction_factor",
            format!("n={n} order<={order_max}"),
            worst,
            1.0,
            0.0,
        ));

        let m = MultiIndex::new(vec![1; n]);
        let params = format!("n={n} m={m} K={order_max} trials={trials}");
        let result = (|| {
            let spec = LaguerreBasisSpec::new(m.clone(), order_max, 8)?;
            let mut rng = rng_for(seed, 1000 + n as u64);
            let mut worst: f64 = 0.0;
            for _ in 0..trials {
                let entries: Vec<(MultiIndex, f64)> = indices
                    .iter()
                    .map(|a| (a.clone(), rng.gen_range(-1.0..1.0)))
                    .collect();
                let c = LagCoeffs::from_entries(&spec, entries)?;
                for j in 0..n {
                    worst = worst.max(riesz_laguerre(j, &c)?.norm_sqr() / c.norm_sqr());
                }
            }
            Ok::<f64, hriesz::Error>(worst.sqrt())
        })();
        rows.push(match result {
            Ok(r) => Row::at_most("contraction_norm", params, r, 1.0, cfg.tol("contraction")),
            Err(e) => Row::error("contraction_norm", params, e),
        });
    }
    rows
}

pub fn factorize_rows(
    pqs: &[(u32, u32)],
    ns: &[usize],
    trunc: u32,
    seed: u64,
    cfg: &RunConfig,
) -> Vec<Row> {
    let mut rows = Vec::new();
    for &(p, q) in pqs {
        for &n in ns {
            let params = format!("p={p} q={q} n={n} K={trunc}");
            let mut rng = rng_for(seed, 10_000 + 100 * p as u64 + 10 * q as u64 + n as u64);
            let result = (|| {
                if q > trunc {
                    return Err(hriesz::Error::InvalidParameter(format!(
                        "q = {q} exceeds K = {trunc}"
                    )));
                }
                let mut worst: f64 = 0.0;
                for lambda in [0.5, 1.0, 2.0] {
                    for _ in 0..10 {
                        let c = random_coeffs(n, trunc, lambda, trunc - q, &mut rng)?;
                        worst = worst.max(factorization_defect(p, q, &c)?);
                    }
                }
                Ok(worst)
            })();
            rows.push(match result {
                Ok(d) => Row::defect("factorization", params, d, cfg.tol("factorization")),
                Err(e) => Row::error("factorization", params, e),
            });
        }
    }
    rows
}

pub fn commutator_rows(lambdas: &[f64], trunc: u32, cfg: &RunConfig) -> Vec<Row> {
    let tol = cfg.tol("commutator");
    let n = 2;
    let mut rows = Vec::new();
    let unit = commutator_measure(0, 1.0, trunc, n);
    for &lambda in lambdas {
        let params = format!("lambda={lambda} K={trunc} n={n}");
        let rep = match commutator_measure(0, lambda, trunc, n) {
            Ok(r) => r,
            Err(e) => {
                rows.push(Row::error("commutator", params, e));
                continue;
            }
        };
        rows.push(Row::defect(
            "commutator_residual",
            params.clone(),
            rep.residual,
            tol,
        ));
        rows.push(Row::defect(
            "commutator_shift",
            params.clone(),
            rep.shift_defect,
            tol,
        ));
        match &unit {
            Ok(u) => rows.push(
                Row::abs(
                    "commutator_linearity",
                    params.clone(),
                    rep.constant,
                    lambda * u.constant,
                    tol,
                )
                .with_note("reference is lambda times the constant measured at lambda=1"),
            ),
            Err(e) => rows.push(Row::error("commutator_linearity", params.clone(), e)),
        }
        rows.push(
            Row::info(
                "commutator_constant",
                params,
                rep.constant,
                Some(-4.0 * lambda),
            )
            .with_note("measured -2*lambda; reference -4*lambda differs by a factor of 2"),
        );
    }
    rows
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileKind {
    Gauss,
    Psi,
}

impl ProfileKind {
    fn build(self, m: &MultiIndex) -> MHomogeneous {
        let n = m.len();
        match self {
            ProfileKind::Gauss => MHomogeneous::gaussian(m.clone(), 0.5),
            ProfileKind::Psi => {
                let mut terms = vec![(MultiIndex::zeros(n), 1.0)];
                for j in 0..n {
                    terms.push((MultiIndex::unit(n, j), 0.5));
                }
                terms.push((MultiIndex::unit(n, 0).add_unit(0), -0.25));
                MHomogeneous::psi_mixture(m.clone(), terms)
            }
        }
    }

    fn name(self) -> &'static str {
        match self {
            ProfileKind::Gauss => "gauss",
            ProfileKind::Psi => "psi",
        }
    }
}

pub struct IntertwineCell {
    pub m: MultiIndex,
    /// Zero-based.
    pub axis: usize,
    pub profile: ProfileKind,
}

/// The full matrix: n ∈ {1,2}, m entries ≤ 2, every axis, both profiles.
pub fn intertwine_matrix() -> Vec<IntertwineCell> {
    let mut cells = Vec::new();
    for n in 1..=2 {
        for m in box_indices(n, 2) {
            for axis in 0..n {
                for profile in [ProfileKind::Gauss, ProfileKind::Psi] {
                    cells.push(IntertwineCell {
                        m: m.clone(),
                        axis,
                        profile,
                    });
                }
            }
        }
    }
    cells
}

pub fn intertwine_rows(
    cells: &[IntertwineCell],
    trunc: u32,
    count: usize,
    seed: u64,
    cfg: &RunConfig,
) -> Vec<Row> {
    let tol = cfg.tol("intertwine");
    let mut rows = Vec::new();
    for cell in cells {
        let n = cell.m.len();
        let params = format!(
            "n={n} m={} j={} profile={} K={trunc} samples={count}",
            cell.m,
            cell.axis + 1,
            cell.profile.name()
        );
        let samples = annulus_samples(n, count, 0.2, 3.0, seed);
        let g = cell.profile.build(&cell.m);
        match intertwine_report(cell.axis, &g, &samples, trunc, cfg.quad_points) {
            Ok(rep) => {
                rows.push(Row::defect("intertwine", params.clone(), rep.relative, tol));
                rows.push(
                    Row::defect(
                        "intertwine_unit_phase",
                        params.clone(),
                        rep.unit_phase_relative,
                        tol,
                    )
                    .with_note("leading factor i removed"),
                );
                rows.push(Row::info(
                    "intertwine_phase_re",
                    params.clone(),
                    rep.mean_ratio.re,
                    Some(0.0),
                ));
                rows.push(Row::info(
                    "intertwine_phase_im",
                    params,
                    rep.mean_ratio.im,
                    Some(1.0),
                ));
            }
            Err(e) => rows.push(Row::error("intertwine", params, e)),
        }
    }
    rows
}

pub struct ProbeCell {
    pub m: MultiIndex,
    /// Zero-based.
    pub axis: usize,
    pub p: f64,
}

pub fn probe_matrix() -> Vec<ProbeCell> {
    let mut cells = Vec::new();
    for p in [2.0, 4.0] {
        for n in 1..=3 {
            for k in 0..=2 {
                cells.push(ProbeCell {
                    m: MultiIndex::new(vec![k; n]),
                    axis: 0,
                    p,
                });
            }
        }
    }
    cells
}

pub fn weighted_probe_rows(cells: &[ProbeCell], cfg: &RunConfig) -> Vec<Row> {
    let mut rows = Vec::new();
    let mut spread: Vec<(f64, f64, f64)> = Vec::new();
    for cell in cells {
        let n = cell.m.len();
        let j = cell.axis;
        let params = format!("n={n} m={} j={} p={}", cell.m, j + 1, cell.p);
        let m = cell.m.clone();
        let e_j = MultiIndex::unit(n, j);
        let terms = [
            (MultiIndex::zeros(n), 1.0),
            (e_j.clone(), 1.0),
            (e_j.add_unit(j), 0.5),
        ];
        let f = |r: &[f64]| {
            terms
                .iter()
                .map(|(b, w)| w * psi(b, &m, r).unwrap_or(f64::NAN))
                .sum::<f64>()
        };
        let result = LaguerreBasisSpec::new(cell.m.clone(), cfg.trunc, cfg.quad_points)
            .and_then(|spec| weighted_probe(j, cell.p, f, &spec));
        match result {
            Ok((lhs, rhs)) => {
                let ratio = (lhs / rhs).powf(1.0 / cell.p);
                if cell.p == 2.0 {
                    rows.push(Row::at_most(
                        "weighted_probe",
                        params,
                        ratio,
                        1.0,
                        cfg.tol("weighted_probe_l2"),
                    ));
                } else {
                    rows.push(Row::info("weighted_probe", params, ratio, None));
                    match spread.iter_mut().find(|s| s.0 == cell.p) {
                        Some(s) => {
                            s.1 = s.1.min(ratio);
                            s.2 = s.2.max(ratio);
                        }
                        None => spread.push((cell.p, ratio, ratio)),
                    }
                }
            }
            Err(e) => rows.push(Row::error("weighted_probe", params, e)),
        }
    }
    for (p, lo, hi) in spread {
        rows.push(
            Row::info(
                "weighted_probe_spread",
                format!("p={p}"),
                (hi - lo) / lo,
                Some(0.5),
            )
            .with_note("relative spread of the ratio across cells"),
        );
    }
    rows
}

/// Idempotence, cross-orthogonality and completeness of the projections
/// `f ↦ (2π)^{-1} f × φ_k` on a `points²` grid over `[−half_width, half_width]²`.
pub fn projection_rows(half_width: f64, points: usize, k_max: u32, cfg: &RunConfig) -> Vec<Row> {
    let tol = cfg.tol("projection");
    let params_grid = format!("R={half_width} N={points}");
    let mut rows = Vec::new();

    let gauss = PlaneGridFn::from_fn(half_width, points, |z| {
        Complex64::new((-z.norm_sqr() / 4.0).exp(), 0.0)
    });
    let self_conv = gauss.and_then(|g| twisted_conv(&g, &g));
    let two_pi = 2.0 * std::f64::consts::PI;
    rows.push(match self_conv {
        Ok(c) => Row::rel(
            "gaussian_self_conv",
            params_grid.clone(),
            c.at_origin().re,
            two_pi,
            cfg.tol("gaussian_self_conv"),
        ),
        Err(e) => Row::error("gaussian_self_conv", params_grid.clone(), e),
    });

    let norm = (2.0 * std::f64::consts::PI).sqrt();
    // content on every level up to k_max
    let test_fn = PlaneGridFn::from_fn(half_width, points, |z| {
        let zs = [z];
        let term = |a: u32, m: u32| {
            phi_special(&MultiIndex::new(vec![a]), &MultiIndex::new(vec![m]), &zs)
                .unwrap_or(Complex64::new(f64::NAN, 0.0))
        };
        let diagonal: Complex64 = (0..=k_max).map(|k| term(k, 0) / (1.0 + k as f64)).sum();
        (diagonal + term(1, 1) * 0.5) * norm
    });
    let f = match test_fn {
        Ok(f) => f,
        Err(e) => {
            rows.push(Row::error("projection", params_grid, e));
            return rows;
        }
    };
    let projected: Vec<_> = (0..=k_max).map(|k| project_k(&f, k)).collect();
    for (k, pk) in projected.iter().enumerate() {
        let pk = match pk {
            Ok(p) => p,
            Err(e) => {
                rows.push(Row::error("projection", format!("{params_grid} k={k}"), e));
                continue;
            }
        };
        for l in 0..=k_max {
            let params = format!("{params_grid} k={k} l={l}");
            let check = if l as usize == k {
                "projection_idempotent"
            } else {
                "projection_orthogonal"
            };
            let defect = project_k(pk, l).and_then(|plk| {
                if l as usize == k {
                    plk.max_abs_diff(pk)
                } else {
                    Ok(plk.max_abs())
                }
            });
            rows.push(match defect {
                Ok(d) => Row::defect(check, params, d / f.max_abs(), tol),
                Err(e) => Row::error(check, params, e),
            });
        }
    }
    let params = format!("{params_grid} k<={k_max}");
    let complete = PlaneGridFn::zeros(half_width, points).and_then(|zero| {
        projected
            .iter()
            .try_fold(zero, |acc, p| acc.add(p.as_ref().map_err(Clone::clone)?))
    });
    rows.push(match complete.and_then(|s| s.max_abs_diff(&f)) {
        Ok(d) => Row::defect("projection_completeness", params, d / f.max_abs(), tol),
        Err(e) => Row::error("projection_completeness", params, e),
    });
    rows
}

pub fn hecke_rows(cfg: &RunConfig) -> Vec<Row> {
    let radii = [0.25, 0.5, 1.0, 2.0, 4.0];
    let n = 2;
    let gauss = |s: f64| (-s * s / 2.0).exp();
    let mut rows = Vec::new();
    for (p, q) in [(1u32, 0u32), (1, 1), (2, 1)] {
        let k = p + 1;
        let params = format!("p={p} q={q} n={n} k={k} lambda=1");
        rows.push(
            match hecke_scaling_exponent(gauss, k, p, q, n, 1.0, &radii) {
                Ok(slope) => Row::abs(
                    "hecke_scaling",
                    params,
                    slope,
                    -((p + q) as f64),
                    cfg.tol("hecke_scaling"),
                ),
                Err(e) => Row::error("hecke_scaling", params, e),
            },
        );
    }
    // R_k^λ(f_r) = r^{-(p+q)} R_k^{λ/r²}(f) pointwise in λ.
    let (p, q, k) = (1u32, 1u32, 2u32);
    for lambda in [0.5, 1.0, 3.0] {
        let r = 2.0_f64;
        let params = format!("p={p} q={q} n={n} k={k} lambda={lambda} r={r}");
        let power = (2 * n + p + q) as i32;
        let lhs = hecke_radial_coeff(
            move |s| r.powi(power) * gauss(r * s),
            k,
            p,
            q,
            n,
            lambda * r * r,
        );
        let rhs = hecke_radial_coeff(gauss, k, p, q, n, lambda);
        rows.push(match (lhs, rhs) {
            (Ok(a), Ok(b)) => Row::rel(
                "hecke_family",
                params,
                a,
                r.powi(-((p + q) as i32)) * b,
                cfg.tol("hecke_family"),
            ),
            (Err(e), _) | (_, Err(e)) => Row::error("hecke_family", params, e),
        });
    }
    rows
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum MultiplierKind {
    Identity,
    Shift,
    Hilbert,
}

impl MultiplierKind {
    fn spec(self) -> MultiplierSpec {
        match self {
            MultiplierKind::Identity => MultiplierSpec::identity(),
            MultiplierKind::Shift => MultiplierSpec::shift(1.0),
            MultiplierKind::Hilbert => MultiplierSpec::hilbert(),
        }
    }
}

pub fn transference_rows(
    kinds: &[MultiplierKind],
    ps: &[f64],
    seed: u64,
    cfg: &RunConfig,
) -> Vec<Row> {
    let mut rows = Vec::new();
    for &kind in kinds {
        let spec = kind.spec();
        for &p in ps {
            let params = format!("multiplier={} p={p} seed={seed}", spec.label());
            let (line, circle) = match norm_compare(&spec, p, seed) {
                Ok(v) => v,
                Err(e) => {
                    rows.push(Row::error("transference", params, e));
                    continue;
                }
            };
            if kind == MultiplierKind::Identity {
                let tol = cfg.tol("transference_identity");
                rows.push(Row::abs(
                    "transference_identity_line",
                    params.clone(),
                    line,
                    1.0,
                    tol,
                ));
                rows.push(Row::abs(
                    "transference_identity_circle",
                    params.clone(),
                    circle,
                    1.0,
                    tol,
                ));
            } else if p == 2.0 {
                let tol = cfg.tol("transference_plancherel");
                rows.push(Row::at_most(
                    "transference_plancherel_line",
                    params.clone(),
                    line,
                    spec.bound(),
                    tol,
                ));
                rows.push(Row::at_most(
                    "transference_plancherel_circle",
                    params.clone(),
                    circle,
                    spec.bound(),
                    tol,
                ));
            } else {
                rows.push(Row::info("transference_line", params.clone(), line, None));
                rows.push(Row::info(
                    "transference_circle",
                    params.clone(),
                    circle,
                    None,
                ));
            }
            let slack = cfg.tol("transference_slack");
            rows.push(
                Row::at_most("transference_compare", params, circle / line, 1.0, slack)
                    .with_note("circle estimate over line estimate"),
            );
        }
    }
    rows
}

pub fn kernel_km_rows(cfg: &RunConfig) -> Vec<Row> {
    let mut rows = Vec::new();
    for trunc in [2000u32, 4000] {
        let params = format!("p=1 q=0 n=2 r=1 K={trunc}");
        rows.push(match kernel_Km(1, 0, 2, 1.0, trunc) {
            Ok(v) => Row::info("kernel_km", params, v, None),
            Err(e) => Row::info("kernel_km", params, f64::NAN, None).with_note(e.to_string()),
        });
    }
    let params = "p=1 q=0 n=2 r=20 K=20".to_string();
    rows.push(match kernel_Km(1, 0, 2, 20.0, 20) {
        Ok(v) => Row::abs("kernel_km_far", params, v, 0.0, cfg.tol("kernel_km_far")),
        Err(e) => Row::error("kernel_km_far", params, e),
    });
    rows
}

/// Everything, in a fixed order.
pub fn all_rows(cfg: &RunConfig) -> Vec<Row> {
    let seed = cfg.seed;
    let mut rows = gamma_ratio_rows(20, cfg);
    rows.extend(kernel_bound_rows(10, cfg));
    rows.extend(lemma34_rows(20, cfg));
    rows.extend(square_function_rows(&[1, 2, 3, 4], 8, 100, seed, cfg));
    rows.extend(factorize_rows(
        &[(1, 1), (1, 2), (2, 2)],
        &[2, 3],
        10,
        seed,
        cfg,
    ));
    rows.extend(commutator_rows(&[0.5, 1.0, 2.0], 10, cfg));
    rows.extend(ortho_rows(&[1, 2, 3], None, 6, cfg.quad_points, cfg));
    rows.extend(contraction_rows(4, 10, 5, seed, cfg));
    rows.extend(intertwine_rows(
        &intertwine_matrix(),
        cfg.trunc,
        100,
        seed,
        cfg,
    ));
    rows.extend(weighted_probe_rows(&probe_matrix(), cfg));
    rows.extend(projection_rows(8.0, 128, 4, cfg));
    rows.extend(hecke_rows(cfg));
    rows.extend(transference_rows(
        &[
            MultiplierKind::Identity,
            MultiplierKind::Shift,
            MultiplierKind::Hilbert,
        ],
        &[2.0, 4.0],
        seed,
        cfg,
    ));
    rows.extend(kernel_km_rows(cfg));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_matches_library() {
        let r = gamma_ratio_recurrence(5);
        assert_eq!(r[0], 1.0);
        assert!((r[1] - 2.0 / std::f64::consts::PI).abs() < 1e-15);
        for (i, v) in r.iter().enumerate() {
            assert!((gamma_ratio(i as u32 + 1) - v).abs() < 1e-13);
        }
    }

    #[test]
    fn box_enumeration() {
        let b = box_indices(2, 2);
        assert_eq!(b.len(), 9);
        assert_eq!(b[1], MultiIndex::new(vec![0, 1]));
    }

    #[test]
    fn factorize_example_passes() {
        let cfg = RunConfig::default();
        let rows = factorize_rows(&[(1, 1)], &[2], 10, 42, &cfg);
        assert!(rows.iter().all(|r| !r.failed()), "{rows:?}");
    }

    #[test]
    fn commutator_rows_flag_the_reference_constant() {
        let cfg = RunConfig::default();
        let rows = commutator_rows(&[1.0], 6, &cfg);
        let info = rows
            .iter()
            .find(|r| r.check == "commutator_constant")
            .unwrap();
        assert!((info.value + 2.0).abs() < 1e-12);
        assert!(rows.iter().all(|r| !r.failed()));
    }
}
