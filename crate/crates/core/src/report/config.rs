//! `key = value` configuration for thresholds and pipeline settings.
//!
//! Blank lines and lines starting with `#` are ignored. Unknown keys are
//! errors.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::DegreeKind;
use crate::modules::Algorithm;

/// Cut-offs turning observed values into verdicts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Thresholds {
    pub ks_max: f64,
    pub tail_fraction_min: f64,
    pub k_in_mean_min: f64,
    pub k_out_max_fraction: f64,
    pub k_out_fail_fraction: f64,
    pub d_min: f64,
    pub d_max: f64,
    pub l_gap_max: f64,
    pub l_gap_fail: f64,
    pub e_max: f64,
    pub e_fail: f64,
    pub nd_min: f64,
    pub gamma_pass: f64,
    /// Share of classes flagged per class indicator.
    pub flag_fraction: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            ks_max: 0.08,
            tail_fraction_min: 0.3,
            k_in_mean_min: 1.0,
            k_out_max_fraction: 0.1,
            k_out_fail_fraction: 0.25,
            d_min: 0.1,
            d_max: 0.9,
            l_gap_max: 0.0,
            l_gap_fail: 1.0,
            e_max: 0.05,
            e_fail: 0.25,
            nd_min: 0.1,
            gamma_pass: 3.0,
            flag_fraction: 0.05,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Config {
    pub thresholds: Thresholds,
    pub seed: u64,
    pub er_samples: usize,
    pub degree: DegreeKind,
    pub algorithms: Vec<Algorithm>,
    pub min_module: usize,
    pub top: usize,
    /// Package levels scored by the prediction stage.
    pub levels: usize,
    pub undirected_bc: bool,
    pub fold_nested: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            thresholds: Thresholds::default(),
            seed: 0,
            er_samples: 20,
            degree: DegreeKind::Total,
            algorithms: Algorithm::ALL.to_vec(),
            min_module: 5,
            top: 10,
            levels: 4,
            undirected_bc: false,
            fold_nested: false,
        }
    }
}

fn num<T: std::str::FromStr>(value: &str) -> std::result::Result<T, String> {
    value.parse().map_err(|_| format!("invalid value `{value}`"))
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Config::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, origin: &str) -> Result<Config> {
        let mut c = Config::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse {
                origin: origin.to_string(),
                line: idx + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`".into()))?;
            c.set(key.trim(), value.trim()).map_err(err)?;
        }
        Ok(c)
    }

    /// Applies one setting.
    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        let t = &mut self.thresholds;
        match key {
            "ks_max" => t.ks_max = num(value)?,
            "tail_fraction_min" => t.tail_fraction_min = num(value)?,
            "k_in_mean_min" => t.k_in_mean_min = num(value)?,
            "k_out_max_fraction" => t.k_out_max_fraction = num(value)?,
            "k_out_fail_fraction" => t.k_out_fail_fraction = num(value)?,
            "d_min" => t.d_min = num(value)?,
            "d_max" => t.d_max = num(value)?,
            "l_gap_max" => t.l_gap_max = num(value)?,
            "l_gap_fail" => t.l_gap_fail = num(value)?,
            "e_max" => t.e_max = num(value)?,
            "e_fail" => t.e_fail = num(value)?,
            "nd_min" => t.nd_min = num(value)?,
            "gamma_pass" => t.gamma_pass = num(value)?,
            "flag_fraction" => t.flag_fraction = num(value)?,
            "seed" => self.seed = num(value)?,
            "er_samples" => self.er_samples = num(value)?,
            "degree" => self.degree = value.parse().map_err(|e| format!("{e}"))?,
            "algorithms" => {
                self.algorithms = value
                    .split(',')
                    .map(|a| a.trim().parse::<Algorithm>().map_err(|e| format!("{e}")))
                    .collect::<std::result::Result<_, _>>()?
            }
            "min_module" => self.min_module = num(value)?,
            "top" => self.top = num(value)?,
            "levels" => self.levels = num(value)?,
            "undirected_bc" => self.undirected_bc = num(value)?,
            "fold_nested" => self.fold_nested = num(value)?,
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }
}
