//! Run configuration: a flat `key=value` file (with `#` comments) or a JSON
//! object over the keys `M, omega, rho, s1, s2, m, k, s, n_r`.
//!
//! `M, omega, rho, s1, m, k` are required; `s2 = 0`, `s = +1` and `n_r = 0`
//! by default. Unknown or repeated keys are rejected before any computation.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ModelParams, QuantumNumbers, Sign};

pub const KEYS: [&str; 9] = ["M", "omega", "rho", "s1", "s2", "m", "k", "s", "n_r"];

/// Partially specified configuration; later layers override earlier ones.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ConfigValues {
    pub mass: Option<f64>,
    pub omega: Option<f64>,
    pub rho: Option<f64>,
    pub s1: Option<f64>,
    pub s2: Option<f64>,
    pub m: Option<i64>,
    pub k: Option<f64>,
    pub s: Option<i64>,
    pub n_r: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelConfig {
    pub params: ModelParams,
    pub qn: QuantumNumbers,
}

fn config_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}

fn integral(key: &str, x: f64) -> Result<i64> {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 1e15 {
        Ok(x as i64)
    } else {
        config_err(format!("{key} must be an integer, got {x}"))
    }
}

impl ConfigValues {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// JSON when the first non-blank character is `{`, `key=value` otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_pairs(text)
        }
    }

    fn parse_pairs(text: &str) -> Result<Self> {
        let mut out = ConfigValues::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return config_err(format!("line {}: expected key=value, got {line:?}", i + 1));
            };
            let (key, value) = (key.trim(), value.trim());
            let x: f64 = value
                .parse()
                .map_err(|_| Error::Config(format!("line {}: {key} = {value:?} is not a number", i + 1)))?;
            out.set(key, x)?;
        }
        Ok(out)
    }

    fn parse_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid JSON: {e}")))?;
        let Some(map) = value.as_object() else {
            return config_err("JSON config must be an object");
        };
        let mut out = ConfigValues::default();
        for (key, v) in map {
            let Some(x) = v.as_f64() else {
                return config_err(format!("{key} must be a number, got {v}"));
            };
            out.set(key, x)?;
        }
        Ok(out)
    }

    pub fn set(&mut self, key: &str, x: f64) -> Result<()> {
        let slot_taken = match key {
            "M" => self.mass.replace(x).is_some(),
            "omega" => self.omega.replace(x).is_some(),
            "rho" => self.rho.replace(x).is_some(),
            "s1" => self.s1.replace(x).is_some(),
            "s2" => self.s2.replace(x).is_some(),
            "k" => self.k.replace(x).is_some(),
            "m" => self.m.replace(integral(key, x)?).is_some(),
            "s" => self.s.replace(integral(key, x)?).is_some(),
            "n_r" => {
                let n = integral(key, x)?;
                if !(0..=u32::MAX as i64).contains(&n) {
                    return config_err(format!("n_r must be a nonnegative integer, got {x}"));
                }
                self.n_r.replace(n as u32).is_some()
            }
            _ => return config_err(format!("unknown key {key:?}; expected one of {}", KEYS.join(", "))),
        };
        if slot_taken {
            return config_err(format!("key {key} is given twice"));
        }
        Ok(())
    }

    /// `self` with every value present in `top` replaced.
    pub fn overlay(self, top: &ConfigValues) -> Self {
        ConfigValues {
            mass: top.mass.or(self.mass),
            omega: top.omega.or(self.omega),
            rho: top.rho.or(self.rho),
            s1: top.s1.or(self.s1),
            s2: top.s2.or(self.s2),
            m: top.m.or(self.m),
            k: top.k.or(self.k),
            s: top.s.or(self.s),
            n_r: top.n_r.or(self.n_r),
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == ConfigValues::default()
    }

    pub fn resolve(&self) -> Result<ModelConfig> {
        fn need<T>(v: Option<T>, key: &str) -> Result<T> {
            v.ok_or_else(|| Error::Config(format!("missing required key {key}")))
        }
        let params = ModelParams::new(
            need(self.mass, "M")?,
            need(self.omega, "omega")?,
            need(self.rho, "rho")?,
            need(self.s1, "s1")?,
            self.s2.unwrap_or(0.0),
        )?;
        let k = need(self.k, "k")?;
        if !k.is_finite() {
            return config_err("k must be finite");
        }
        let s = Sign::from_int(self.s.unwrap_or(1))?;
        let qn = QuantumNumbers::new(need(self.m, "m")?, k, s, self.n_r.unwrap_or(0));
        Ok(ModelConfig { params, qn })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAIRS: &str = "# test model\nM = 1\nomega=4\nrho = 0.8  # deficit\ns1=0.7\ns2=0.1\nm=1\nk=0.3\ns=-1\n";

    #[test]
    fn key_value_and_json_agree() {
        let a = ConfigValues::parse(PAIRS).unwrap().resolve().unwrap();
        let json = r#"{"M": 1, "omega": 4, "rho": 0.8, "s1": 0.7, "s2": 0.1, "m": 1, "k": 0.3, "s": -1}"#;
        let b = ConfigValues::parse(json).unwrap().resolve().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.qn.s, Sign::Minus);
        assert_eq!(a.qn.n_r, 0);
    }

    #[test]
    fn flags_override_file_values() {
        let file = ConfigValues::parse(PAIRS).unwrap();
        let mut flags = ConfigValues::default();
        flags.set("rho", 0.5).unwrap();
        let c = file.overlay(&flags).resolve().unwrap();
        assert_eq!(c.params.rho, 0.5);
        assert_eq!(c.params.omega, 4.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(ConfigValues::parse("mass = 1"), Err(Error::Config(_))));
        assert!(matches!(ConfigValues::parse("M = 1\nM = 2"), Err(Error::Config(_))));
        assert!(matches!(ConfigValues::parse("m = 0.5"), Err(Error::Config(_))));
        assert!(matches!(ConfigValues::parse("n_r = -1"), Err(Error::Config(_))));
        assert!(matches!(ConfigValues::parse("M 1"), Err(Error::Config(_))));
        assert!(matches!(ConfigValues::parse(r#"{"M": "one"}"#), Err(Error::Config(_))));
        assert!(matches!(ConfigValues::parse("[1]"), Err(Error::Config(_))));
        let missing = ConfigValues::parse("M=1\nomega=1\nrho=1\ns1=0\nm=0").unwrap();
        assert!(matches!(missing.resolve(), Err(Error::Config(_))));
        let bad_sign = ConfigValues::parse("M=1\nomega=1\nrho=1\ns1=0\nm=0\nk=0\ns=2").unwrap();
        assert!(matches!(bad_sign.resolve(), Err(Error::Parameter(_))));
    }
}
