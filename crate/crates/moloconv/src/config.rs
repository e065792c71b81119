//! JSON parameter files.
//!
//! A config is one JSON object. Keys may be written flat (`"drive.mode"`)
//! or nested (`"drive": {"mode": ...}`); both spellings flatten to the same
//! dotted key. Unknown keys are rejected.
//!
//! | key | meaning |
//! |---|---|
//! | `omega_b_thz`, `omega_c_thz` | vibrational and infrared mode frequencies |
//! | `kappa_a_thz`, `kappa_c_thz`, `gamma_B_thz` | decay rates |
//! | `g_c_thz` | single-molecule infrared coupling |
//! | `n_molecules` | molecule count |
//! | `drive.mode` | `"direct"` or `"physical"` |
//! | `drive.delta_thz`, `drive.g_a_enh_thz` | direct drive; the coupling is a number or `[re, im]` |
//! | `drive.delta0_thz`, `drive.g_a_thz`, `drive.eps_p_thz` | physical drive |

use std::collections::BTreeMap;
use std::path::Path;

use moloconv_core::{DriveSpec, Freq, SystemParams, ValidationError, C64};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{0}")]
    Read(#[from] std::io::Error),
    #[error("{0}")]
    Syntax(#[from] serde_json::Error),
    #[error("top level must be a JSON object")]
    NotObject,
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("key `{0}` given twice")]
    Duplicate(String),
    #[error("missing key `{0}`")]
    Missing(&'static str),
    #[error("key `{key}` {reason}")]
    Type { key: &'static str, reason: &'static str },
    #[error("key `{key}` does not apply to drive.mode \"{mode}\"")]
    WrongMode { key: String, mode: &'static str },
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

const SYSTEM_KEYS: [&str; 7] =
    ["omega_b_thz", "omega_c_thz", "kappa_a_thz", "kappa_c_thz", "gamma_B_thz", "g_c_thz", "n_molecules"];
const DIRECT_KEYS: [&str; 2] = ["drive.delta_thz", "drive.g_a_enh_thz"];
const PHYSICAL_KEYS: [&str; 3] = ["drive.delta0_thz", "drive.g_a_thz", "drive.eps_p_thz"];

fn flatten(prefix: &str, obj: &Map<String, Value>, out: &mut BTreeMap<String, Value>) -> Result<(), ConfigError> {
    for (k, v) in obj {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(inner) => flatten(&key, inner, out)?,
            _ => {
                if out.insert(key.clone(), v.clone()).is_some() {
                    return Err(ConfigError::Duplicate(key));
                }
            }
        }
    }
    Ok(())
}

struct Keys(BTreeMap<String, Value>);

impl Keys {
    fn take(&mut self, key: &'static str) -> Result<Value, ConfigError> {
        self.0.remove(key).ok_or(ConfigError::Missing(key))
    }

    fn number(&mut self, key: &'static str) -> Result<f64, ConfigError> {
        self.take(key)?
            .as_f64()
            .ok_or(ConfigError::Type { key, reason: "must be a number" })
    }

    fn freq(&mut self, key: &'static str) -> Result<Freq, ConfigError> {
        self.number(key).map(Freq::thz)
    }
}

pub fn parse_str(text: &str) -> Result<SystemParams, ConfigError> {
    let Value::Object(top) = serde_json::from_str::<Value>(text)? else {
        return Err(ConfigError::NotObject);
    };
    let mut flat = BTreeMap::new();
    flatten("", &top, &mut flat)?;
    let mut keys = Keys(flat);

    let n = keys.number("n_molecules")?;
    if !(n.is_finite() && n >= 0.0 && n.fract() == 0.0 && n <= u64::MAX as f64) {
        return Err(ConfigError::Type { key: "n_molecules", reason: "must be a non-negative integer" });
    }
    let mode = match keys.take("drive.mode")? {
        Value::String(s) if s == "direct" => "direct",
        Value::String(s) if s == "physical" => "physical",
        _ => return Err(ConfigError::Type { key: "drive.mode", reason: "must be \"direct\" or \"physical\"" }),
    };
    let drive = if mode == "direct" {
        let delta = keys.freq("drive.delta_thz")?;
        let g = match keys.take("drive.g_a_enh_thz")? {
            Value::Number(x) => C64::new(x.as_f64().unwrap_or(f64::NAN), 0.0),
            Value::Array(a) if a.len() == 2 && a.iter().all(Value::is_number) => {
                C64::new(a[0].as_f64().unwrap_or(f64::NAN), a[1].as_f64().unwrap_or(f64::NAN))
            }
            _ => return Err(ConfigError::Type { key: "drive.g_a_enh_thz", reason: "must be a number or [re, im]" }),
        };
        DriveSpec::Direct { delta, g_a_enh: g }
    } else {
        DriveSpec::Physical {
            delta0: keys.freq("drive.delta0_thz")?,
            g_a: keys.freq("drive.g_a_thz")?,
            eps_p: keys.freq("drive.eps_p_thz")?,
        }
    };
    let p = SystemParams {
        omega_b: keys.freq("omega_b_thz")?,
        omega_c: keys.freq("omega_c_thz")?,
        kappa_a: keys.freq("kappa_a_thz")?,
        kappa_c: keys.freq("kappa_c_thz")?,
        gamma_b: keys.freq("gamma_B_thz")?,
        g_c: keys.freq("g_c_thz")?,
        n_molecules: n as u64,
        drive,
    };
    if let Some(key) = keys.0.into_keys().next() {
        let other_mode = if mode == "direct" { &PHYSICAL_KEYS[..] } else { &DIRECT_KEYS[..] };
        return Err(if other_mode.contains(&key.as_str()) {
            ConfigError::WrongMode { key, mode }
        } else {
            ConfigError::UnknownKey(key)
        });
    }
    p.validate()?;
    Ok(p)
}

pub fn load(path: &Path) -> Result<SystemParams, ConfigError> {
    parse_str(&std::fs::read_to_string(path)?)
}

/// Flat, key-sorted JSON object describing `p`.
pub fn to_value(p: &SystemParams) -> Value {
    let mut m = Map::new();
    let values = [
        p.omega_b.value(),
        p.omega_c.value(),
        p.kappa_a.value(),
        p.kappa_c.value(),
        p.gamma_b.value(),
        p.g_c.value(),
    ];
    for (k, v) in SYSTEM_KEYS.iter().zip(values) {
        m.insert((*k).into(), json!(v));
    }
    m.insert("n_molecules".into(), json!(p.n_molecules));
    match p.drive {
        DriveSpec::Direct { delta, g_a_enh } => {
            m.insert("drive.mode".into(), json!("direct"));
            m.insert("drive.delta_thz".into(), json!(delta.value()));
            m.insert("drive.g_a_enh_thz".into(), json!([g_a_enh.re, g_a_enh.im]));
        }
        DriveSpec::Physical { delta0, g_a, eps_p } => {
            m.insert("drive.mode".into(), json!("physical"));
            m.insert("drive.delta0_thz".into(), json!(delta0.value()));
            m.insert("drive.g_a_thz".into(), json!(g_a.value()));
            m.insert("drive.eps_p_thz".into(), json!(eps_p.value()));
        }
    }
    Value::Object(m)
}

/// Canonical text: compact JSON, keys sorted, trailing newline.
pub fn canonical(p: &SystemParams) -> String {
    let mut s = to_value(p).to_string();
    s.push('\n');
    s
}

/// Hex SHA-256 of the canonical text.
pub fn hash(p: &SystemParams) -> String {
    hex::encode(Sha256::digest(canonical(p).as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const FLAT: &str = r#"{
        "omega_b_thz": 30, "omega_c_thz": 30, "kappa_a_thz": 30, "kappa_c_thz": 0.5,
        "gamma_B_thz": 0.1, "g_c_thz": 1e-4, "n_molecules": 1e7,
        "drive.mode": "direct", "drive.delta_thz": -30, "drive.g_a_enh_thz": 2.0
    }"#;

    #[test]
    fn flat_and_nested_agree() {
        let nested = r#"{
            "omega_b_thz": 30, "omega_c_thz": 30, "kappa_a_thz": 30, "kappa_c_thz": 0.5,
            "gamma_B_thz": 0.1, "g_c_thz": 1e-4, "n_molecules": 10000000,
            "drive": {"mode": "direct", "delta_thz": -30, "g_a_enh_thz": [2.0, 0.0]}
        }"#;
        let a = parse_str(FLAT).unwrap();
        assert_eq!(a, parse_str(nested).unwrap());
        assert_eq!(a.n_molecules, 10_000_000);
        assert_eq!(a.drive, DriveSpec::Direct { delta: Freq::thz(-30.0), g_a_enh: C64::new(2.0, 0.0) });
    }

    #[test]
    fn canonical_round_trip() {
        let p = parse_str(FLAT).unwrap();
        let text = canonical(&p);
        assert_eq!(parse_str(&text).unwrap(), p);
        assert_eq!(canonical(&parse_str(&text).unwrap()), text);
        assert_eq!(hash(&p).len(), 64);
    }

    #[test]
    fn rejects_unknown_and_misplaced_keys() {
        let extra = FLAT.replace("\"n_molecules\"", "\"temperature\": 4, \"n_molecules\"");
        assert!(matches!(parse_str(&extra), Err(ConfigError::UnknownKey(k)) if k == "temperature"));
        let wrong = FLAT.replace("\"n_molecules\"", "\"drive.eps_p_thz\": 4, \"n_molecules\"");
        assert!(matches!(parse_str(&wrong), Err(ConfigError::WrongMode { .. })));
        let missing = FLAT.replace("\"g_c_thz\": 1e-4,", "");
        assert!(matches!(parse_str(&missing), Err(ConfigError::Missing("g_c_thz"))));
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse_str("{\n  \"omega_b_thz\": 30,\n  oops\n}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "{msg}");
        assert!(msg.contains("column"), "{msg}");
    }

    #[test]
    fn validation_runs_after_parsing() {
        let bad = FLAT.replace("\"kappa_a_thz\": 30", "\"kappa_a_thz\": 0");
        assert_eq!(parse_str(&bad).unwrap_err().to_string(), "kappa_a must be > 0");
        let frac = FLAT.replace("1e7", "2.5");
        assert!(matches!(parse_str(&frac), Err(ConfigError::Type { key: "n_molecules", .. })));
    }
}
