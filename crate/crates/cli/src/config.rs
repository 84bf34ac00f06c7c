//! Job configuration: TOML or JSON file, overridden field by field by flags.

use std::sync::Arc;

use qgroup_core::parse::{parse_cartan, parse_root_vec, parse_weight, parse_weight_list};
use qgroup_core::{CartanDatum, CycField, EllData, RootVec, Weight};
use serde::{Deserialize, Serialize};

use crate::UsageError;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cartan: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ext: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skew: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

/// Decodes a config file. Text starting with `{` is JSON, anything else TOML.
pub fn decode_config(text: &str) -> Result<JobConfig, UsageError> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| UsageError(format!("config (JSON): {}", e)))
    } else {
        toml::from_str(text).map_err(|e| UsageError(format!("config (TOML): {}", e)))
    }
}

impl JobConfig {
    /// Fields set in `flags` replace those in `self`.
    pub fn merged(self, flags: JobConfig) -> JobConfig {
        JobConfig {
            cartan: flags.cartan.or(self.cartan),
            l: flags.l.or(self.l),
            k: flags.k.or(self.k),
            weight: flags.weight.or(self.weight),
            weights: flags.weights.or(self.weights),
            nu: flags.nu.or(self.nu),
            max_depth: flags.max_depth.or(self.max_depth),
            ext: flags.ext.or(self.ext),
            skew: flags.skew.or(self.skew),
            suite: flags.suite.or(self.suite),
            out: flags.out.or(self.out),
        }
    }
}

/// Validated Cartan datum and field.
pub struct Job {
    pub cfg: JobConfig,
    pub cartan: CartanDatum,
    pub field: Arc<CycField>,
}

fn usage(e: impl std::fmt::Display) -> UsageError {
    UsageError(e.to_string())
}

impl Job {
    pub fn new(mut cfg: JobConfig) -> Result<Job, UsageError> {
        let cartan = parse_cartan(cfg.cartan.as_deref().ok_or_else(|| usage("--cartan is required"))?).map_err(usage)?;
        let l = cfg.l.ok_or_else(|| usage("--l is required"))?;
        let k = *cfg.k.get_or_insert(1);
        if l > 1000 {
            return Err(usage("l above 1000 is not supported"));
        }
        let field = CycField::new(l, k, cartan.varpi()).map_err(usage)?;
        Ok(Job { cfg, cartan, field })
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn l(&self) -> u64 {
        self.field.l()
    }

    pub fn ell(&self) -> Result<EllData, UsageError> {
        EllData::new(&self.cartan, self.l()).map_err(usage)
    }

    pub fn weight(&self) -> Result<Option<Weight>, UsageError> {
        self.cfg.weight.as_deref().map(|s| parse_weight(s, self.rank()).map_err(usage)).transpose()
    }

    pub fn weights(&self) -> Result<Vec<Weight>, UsageError> {
        match self.cfg.weights.as_deref().or(self.cfg.weight.as_deref()) {
            Some(s) => parse_weight_list(s, self.rank()).map_err(usage),
            None => Err(usage("--weights is required")),
        }
    }

    pub fn nu(&self) -> Result<RootVec, UsageError> {
        let s = self.cfg.nu.as_deref().ok_or_else(|| usage("--nu is required"))?;
        parse_root_vec(s, self.rank()).map_err(usage)
    }

    /// `Lambda . i'` for an integral weight.
    pub fn lam_dots(&self, w: &Weight) -> Result<Vec<i64>, UsageError> {
        self.cartan.lambda_dots(w).map_err(usage)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_and_json_agree() {
        let t = decode_config("cartan = \"A1\"\nl = 10\nweights = \"2,2,3,3\"\n").unwrap();
        let j = decode_config(r#"{"cartan": "A1", "l": 10, "weights": "2,2,3,3"}"#).unwrap();
        assert_eq!(t, j);
        assert!(decode_config("colour = 1").is_err());
    }

    #[test]
    fn flags_win() {
        let file = JobConfig { cartan: Some("A2".into()), l: Some(5), ..Default::default() };
        let flags = JobConfig { l: Some(7), ..Default::default() };
        let m = file.merged(flags);
        assert_eq!(m.cartan.as_deref(), Some("A2"));
        assert_eq!(m.l, Some(7));
    }

    #[test]
    fn validation() {
        assert!(Job::new(JobConfig { cartan: Some("A1".into()), l: Some(10), k: Some(2), ..Default::default() }).is_err());
        assert!(Job::new(JobConfig { l: Some(5), ..Default::default() }).is_err());
        let j = Job::new(JobConfig { cartan: Some("A1".into()), l: Some(5), ..Default::default() }).unwrap();
        assert_eq!(j.cfg.k, Some(1));
    }
}
