//! Run configuration: JSON file named by `HRIESZ_CONFIG`, then flags.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

pub const CONFIG_ENV: &str = "HRIESZ_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Tolerance names and their defaults.
pub const DEFAULT_TOLERANCES: &[(&str, f64)] = &[
    ("gamma_ratio", 1e-12),
    ("christ_bound", 1e-6),
    ("lemma34_ratio", 1e-6),
    ("lemma34_ratio_n1", 1e-9),
    ("lemma34_factors", 1e-8),
    ("square_function", 1e-10),
    ("factorization", 1e-12),
    ("commutator", 1e-12),
    ("intertwine", 1e-6),
    ("ortho", 1e-9),
    ("contraction", 1e-15),
    ("projection", 2e-3),
    ("gaussian_self_conv", 1e-3),
    ("hecke_scaling", 1e-6),
    ("hecke_family", 1e-7),
    ("transference_identity", 1e-10),
    ("transference_plancherel", 1e-9),
    ("transference_slack", 0.05),
    ("weighted_probe_l2", 1e-9),
    ("kernel_km_far", 1e-10),
];

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    quad_points: Option<usize>,
    trunc: Option<u32>,
    #[serde(default)]
    tolerances: BTreeMap<String, f64>,
    seed: Option<u64>,
    format: Option<Format>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub quad_points: usize,
    pub trunc: u32,
    pub tolerances: BTreeMap<String, f64>,
    pub seed: u64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            quad_points: 64,
            trunc: 20,
            tolerances: DEFAULT_TOLERANCES
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
            seed: 42,
            format: Format::Csv,
        }
    }
}

impl RunConfig {
    /// Defaults overlaid with the file named by `HRIESZ_CONFIG`, if set.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) => Self::from_file(Path::new(&path)),
            None => Ok(Self::default()),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let file: FileConfig =
            serde_json::from_str(text).map_err(|e| format!("invalid config: {e}"))?;
        let mut cfg = Self::default();
        if let Some(q) = file.quad_points {
            cfg.quad_points = q;
        }
        if let Some(k) = file.trunc {
            cfg.trunc = k;
        }
        if let Some(s) = file.seed {
            cfg.seed = s;
        }
        if let Some(f) = file.format {
            cfg.format = f;
        }
        for (name, value) in file.tolerances {
            cfg.set_tolerance(&name, value)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set_tolerance(&mut self, name: &str, value: f64) -> Result<(), String> {
        if !self.tolerances.contains_key(name) {
            return Err(format!("unknown tolerance '{name}'"));
        }
        if !(value > 0.0) || !value.is_finite() {
            return Err(format!("tolerance '{name}' must be positive, got {value}"));
        }
        self.tolerances.insert(name.to_string(), value);
        Ok(())
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.quad_points == 0 {
            return Err("quad_points must be positive".into());
        }
        Ok(())
    }

    pub fn tol(&self, name: &str) -> f64 {
        self.tolerances[name]
    }
}
