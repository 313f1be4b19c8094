//! `hriesz`: verification suites and sweeps emitted as CSV or JSON tables.

mod checks;
mod config;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hriesz::MultiIndex;

use checks::{IntertwineCell, MultiplierKind, ProbeCell, ProfileKind};
use config::{Format, RunConfig};
use table::Row;

#[derive(Parser, Debug)]
#[command(
    name = "hriesz",
    version,
    about = "Identity checks for Riesz transforms on the Heisenberg group"
)]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format (overrides the config file).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the table to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Seed for every random stream (overrides the config file).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Gauss–Laguerre nodes per axis (overrides the config file).
    #[arg(long, global = true)]
    quad: Option<usize>,
    /// Override one tolerance, NAME=VALUE; repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE", value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// π^{-1/2}Γ(n/2)/Γ((n+1)/2) against its two-step recurrence.
    GammaRatio {
        #[arg(long, default_value_t = 20)]
        n_max: u32,
    },
    /// Kernel bound integral against the Gamma ratio.
    KernelBound {
        #[arg(long, default_value_t = 10)]
        n_max: u32,
    },
    /// Quadrature ratio and beta factors of the kernel-norm reduction.
    Lemma34 {
        #[arg(long, default_value_t = 20)]
        n_max: u32,
    },
    /// Gram matrix of the Laguerre basis of type m.
    Ortho {
        /// Dimension; omitted sweeps n = 1..3.
        #[arg(long)]
        n: Option<usize>,
        /// Type, comma separated; omitted sweeps every m with entries ≤ 3.
        #[arg(long, value_parser = parse_index)]
        m: Option<MultiIndex>,
        #[arg(long, default_value_t = 6)]
        trunc: u32,
    },
    /// Square-function identity on random interior coefficient vectors.
    RieszL2 {
        /// Dimension; omitted sweeps n = 1..4.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 8)]
        trunc: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Factorization of the monomial Riesz transforms.
    Factorize {
        #[arg(long, requires = "q")]
        p: Option<u32>,
        #[arg(long, requires = "p")]
        q: Option<u32>,
        /// Dimension; omitted sweeps n = 2, 3.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 10)]
        trunc: u32,
    },
    /// Commutator [A_j, A_j*] measured on the interior basis.
    Commutator {
        /// Omitted sweeps 0.5, 1, 2.
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, default_value_t = 10)]
        trunc: u32,
    },
    /// Dual-path intertwining of the special Hermite and Laguerre Riesz transforms.
    Intertwine {
        /// Omitted (with m and j) runs the full matrix.
        #[arg(long, requires_all = ["m", "j"])]
        n: Option<usize>,
        #[arg(long, value_parser = parse_index)]
        m: Option<MultiIndex>,
        /// One-based axis.
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        trunc: Option<u32>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Weighted L^p ratio of the Laguerre Riesz transform.
    WeightedProbe {
        /// Omitted (with m, j and p) runs the full matrix.
        #[arg(long, requires_all = ["m", "j", "p"])]
        n: Option<usize>,
        #[arg(long, value_parser = parse_index)]
        m: Option<MultiIndex>,
        /// One-based axis.
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Line versus circle multiplier norm estimates.
    Transference {
        /// Omitted sweeps all three symbols.
        #[arg(long, value_enum)]
        multiplier: Option<MultiplierKind>,
        /// Omitted sweeps p = 2, 4.
        #[arg(long)]
        p: Option<f64>,
    },
    /// Projection algebra of twisted convolution with φ_k.
    Projection {
        #[arg(long, default_value_t = 8.0)]
        half_width: f64,
        #[arg(long, default_value_t = 128)]
        points: usize,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
    },
    /// Dilation exponent of the Hecke–Bochner radial coefficients.
    Hecke,
    /// The full suite.
    All,
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or("expected NAME=VALUE")?;
    let v: f64 = value
        .parse()
        .map_err(|e| format!("bad tolerance value: {e}"))?;
    Ok((name.to_string(), v))
}

fn parse_index(s: &str) -> Result<MultiIndex, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad entry '{t}': {e}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(MultiIndex::new)
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("hriesz: {msg}");
    ExitCode::from(2)
}

fn axis_from(j: usize, n: usize) -> Result<usize, String> {
    if j == 0 || j > n {
        Err(format!("j must lie in 1..={n}, got {j}"))
    } else {
        Ok(j - 1)
    }
}

fn check_type(m: &MultiIndex, n: usize) -> Result<(), String> {
    if m.len() != n {
        Err(format!("m has {} entries but n = {n}", m.len()))
    } else {
        Ok(())
    }
}

fn rows_for(command: &Command, cfg: &RunConfig) -> Result<Vec<Row>, String> {
    let seed = cfg.seed;
    Ok(match command {
        Command::GammaRatio { n_max } => checks::gamma_ratio_rows(*n_max, cfg),
        Command::KernelBound { n_max } => checks::kernel_bound_rows(*n_max, cfg),
        Command::Lemma34 { n_max } => checks::lemma34_rows(*n_max, cfg),
        Command::Ortho { n, m, trunc } => {
            let ns = match (n, m) {
                (Some(n), _) => vec![*n],
                (None, Some(m)) => vec![m.len()],
                (None, None) => vec![1, 2, 3],
            };
            if let Some(m) = m {
                check_type(m, ns[0])?;
            }
            checks::ortho_rows(&ns, m.as_ref(), *trunc, cfg.quad_points, cfg)
        }
        Command::RieszL2 { n, trunc, trials } => {
            if *trunc < 1 {
                return Err("trunc must be at least 1".into());
            }
            let ns = n.map(|n| vec![n]).unwrap_or_else(|| vec![1, 2, 3, 4]);
            checks::square_function_rows(&ns, *trunc, *trials, seed, cfg)
        }
        Command::Factorize { p, q, n, trunc } => {
            let pqs = match (p, q) {
                (Some(p), Some(q)) => vec![(*p, *q)],
                _ => vec![(1, 1), (1, 2), (2, 2)],
            };
            let ns = n.map(|n| vec![n]).unwrap_or_else(|| vec![2, 3]);
            checks::factorize_rows(&pqs, &ns, *trunc, seed, cfg)
        }
        Command::Commutator { lambda, trunc } => {
            let ls = lambda
                .map(|l| vec![l])
                .unwrap_or_else(|| vec![0.5, 1.0, 2.0]);
            checks::commutator_rows(&ls, *trunc, cfg)
        }
        Command::Intertwine {
            n,
            m,
            j,
            trunc,
            samples,
        } => {
            let cells = match (n, m, j) {
                (Some(n), Some(m), Some(j)) => {
                    check_type(m, *n)?;
                    let axis = axis_from(*j, *n)?;
                    [ProfileKind::Gauss, ProfileKind::Psi]
                        .into_iter()
                        .map(|profile| IntertwineCell {
                            m: m.clone(),
                            axis,
                            profile,
                        })
                        .collect()
                }
                _ => checks::intertwine_matrix(),
            };
            checks::intertwine_rows(&cells, trunc.unwrap_or(cfg.trunc), *samples, seed, cfg)
        }
        Command::WeightedProbe { n, m, j, p } => {
            let cells = match (n, m, j, p) {
                (Some(n), Some(m), Some(j), Some(p)) => {
                    check_type(m, *n)?;
                    vec![ProbeCell {
                        m: m.clone(),
                        axis: axis_from(*j, *n)?,
                        p: *p,
                    }]
                }
                _ => checks::probe_matrix(),
            };
            checks::weighted_probe_rows(&cells, cfg)
        }
        Command::Transference { multiplier, p } => {
            let kinds = multiplier.map(|k| vec![k]).unwrap_or_else(|| {
                vec![
                    MultiplierKind::Identity,
                    MultiplierKind::Shift,
                    MultiplierKind::Hilbert,
                ]
            });
            let ps = p.map(|p| vec![p]).unwrap_or_else(|| vec![2.0, 4.0]);
            checks::transference_rows(&kinds, &ps, seed, cfg)
        }
        Command::Projection {
            half_width,
            points,
            k_max,
        } => checks::projection_rows(*half_width, *points, *k_max, cfg),
        Command::Hecke => checks::hecke_rows(cfg),
        Command::All => checks::all_rows(cfg),
    })
}

fn build_config(global: &Global) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::from_env()?;
    if let Some(f) = global.format {
        cfg.format = f;
    }
    if let Some(s) = global.seed {
        cfg.seed = s;
    }
    if let Some(q) = global.quad {
        cfg.quad_points = q;
    }
    for (name, value) in &global.tol {
        cfg.set_tolerance(name, *value)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cfg = match build_config(&cli.global) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    let rows = match rows_for(&cli.command, &cfg) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    let written = match &cli.global.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            table::write_rows(&rows, cfg.format, &mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            table::write_rows(&rows, cfg.format, &mut lock)
        }
    };
    if let Err(e) = written {
        eprintln!("hriesz: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if rows.iter().any(Row::failed) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
