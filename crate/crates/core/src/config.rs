//! Run configuration shared by the suite runner and the command line.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    /// Largest weight 2p + 3q for the e_{p,q} checks.
    pub max_weight: u32,
    /// Total-degree truncation for the generating-series identities.
    pub series_order: u32,
    /// Total-degree truncation for the KLT identities.
    pub klt_order: u32,
    pub precision_digits: u32,
    pub z_sum_limit: u64,
    pub grid_n: usize,
    /// Largest ℓ for the Laurent-polynomial checks.
    pub max_l: u32,
    /// Im τ for the torus oracle.
    pub tau_im: f64,
    /// Tolerance for certified high-precision comparisons.
    pub tolerance: f64,
    /// Tolerance for f64 and heuristic comparisons.
    pub oracle_tolerance: f64,
    /// Summation limit for the V^cl product series.
    pub an_terms: u64,
    /// Seed for the randomized property checks.
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_weight: 24,
            series_order: 12,
            klt_order: 8,
            precision_digits: 30,
            z_sum_limit: 10_000,
            grid_n: 512,
            max_l: 8,
            tau_im: 6.0,
            tolerance: 1e-20,
            oracle_tolerance: 1e-6,
            an_terms: 10_000,
            seed: 20240501,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad value {v:?} for {key}")))
}

impl SuiteConfig {
    /// Applies one `key = value` setting. Keys use snake_case or kebab-case.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let k = key.trim().replace('-', "_");
        match k.as_str() {
            "max_weight" => self.max_weight = parse(&k, value)?,
            "order" | "series_order" => self.series_order = parse(&k, value)?,
            "klt_order" => self.klt_order = parse(&k, value)?,
            "precision" | "precision_digits" => self.precision_digits = parse(&k, value)?,
            "z_limit" | "z_sum_limit" => self.z_sum_limit = parse(&k, value)?,
            "grid" | "grid_n" => self.grid_n = parse(&k, value)?,
            "max_l" => self.max_l = parse(&k, value)?,
            "tau" | "tau_im" => self.tau_im = parse(&k, value)?,
            "tolerance" => self.tolerance = parse(&k, value)?,
            "oracle_tolerance" => self.oracle_tolerance = parse(&k, value)?,
            "an_terms" => self.an_terms = parse(&k, value)?,
            "seed" => self.seed = parse(&k, value)?,
            _ => return Err(Error::Parse(format!("unknown config key {key:?}"))),
        }
        Ok(())
    }

    /// Reads `key = value` lines; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", i + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let positive = self.max_weight > 0
            && self.series_order >= 2
            && self.klt_order >= 2
            && self.precision_digits > 0
            && self.z_sum_limit > 0
            && self.grid_n >= 64
            && self.tau_im >= 2.0
            && self.tolerance > 0.0
            && self.oracle_tolerance > 0.0
            && self.an_terms > 0;
        if positive {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("invalid configuration {self:?}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_value_file() {
        let mut c = SuiteConfig::default();
        c.apply_text("# comment\norder = 10\nz-limit=20000\n\ntau = 4.5 # inline\n").unwrap();
        assert_eq!(c.series_order, 10);
        assert_eq!(c.z_sum_limit, 20000);
        assert_eq!(c.tau_im, 4.5);
        assert!(c.apply_text("nonsense").is_err());
        assert!(c.apply_text("colour = red").is_err());
        c.grid_n = 8;
        assert!(c.validate().is_err());
    }
}
