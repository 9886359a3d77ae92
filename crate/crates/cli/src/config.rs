//! JSON run configuration.
//!
//! Numeric leaves accept either plain JSON numbers or strings in the
//! constant-expression language of [`crate::expr`], so configurations can
//! carry exact algebraic values. The shipped default configuration is the
//! bundled counterexample of [`euler_action::fixture`].

use std::path::{Path, PathBuf};

use serde::Deserialize;

use euler_action::eos::{EosParams, State};
use euler_action::riemann::RiemannData;
use euler_action::subsolution::FanSubsolution;
use euler_action::Tolerances;

use crate::expr;

/// The configuration shipped with the binary (also at `configs/default.json`).
pub const DEFAULT_CONFIG: &str = include_str!("../configs/default.json");

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("config parse error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("config field {field}: {source}")]
    Expr {
        field: String,
        source: expr::SyntaxError,
    },
    #[error("config field {field}: {message}")]
    Invalid { field: String, message: String },
}

/// A numeric leaf: plain number or constant expression.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RawNum {
    Number(f64),
    Text(String),
}

impl RawNum {
    fn resolve(&self, field: &str) -> Result<f64, ConfigError> {
        let value = match self {
            RawNum::Number(x) => *x,
            RawNum::Text(text) => expr::eval(text).map_err(|source| ConfigError::Expr {
                field: field.to_string(),
                source,
            })?,
        };
        if !value.is_finite() {
            return Err(ConfigError::Invalid {
                field: field.to_string(),
                message: format!("evaluates to non-finite value {value}"),
            });
        }
        Ok(value)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEos {
    k: RawNum,
    gamma: RawNum,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    rho: RawNum,
    u: RawNum,
    v: RawNum,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRiemann {
    left: RawState,
    right: RawState,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubsolution {
    mu0: RawNum,
    mu1: RawNum,
    rho1: RawNum,
    u1: RawNum,
    v1: RawNum,
    gamma1: RawNum,
    delta1: RawNum,
    c1: RawNum,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTimes {
    t0: RawNum,
    t: RawNum,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWindow {
    l1: Option<RawNum>,
    l2: Option<RawNum>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    eos: RawEos,
    riemann: RawRiemann,
    #[serde(default)]
    subsolution: Option<RawSubsolution>,
    times: RawTimes,
    #[serde(default)]
    window: Option<RawWindow>,
    #[serde(default)]
    tolerances: Option<Tolerances>,
    #[serde(default)]
    out: Option<String>,
}

/// Fully evaluated and validated configuration.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub eos: EosParams,
    pub data: RiemannData,
    pub sub: Option<FanSubsolution>,
    /// Gluing time for two-part solutions.
    pub t0: f64,
    /// End of the observation window.
    pub t_end: f64,
    pub l1: f64,
    /// Explicit window half-width; `None` means "derive from the solutions".
    pub l2: Option<f64>,
    pub tol: Tolerances,
    pub out: Option<PathBuf>,
}

fn state(raw: &RawState, field: &str) -> Result<State, ConfigError> {
    let rho = raw.rho.resolve(&format!("{field}.rho"))?;
    let u = raw.u.resolve(&format!("{field}.u"))?;
    let v = raw.v.resolve(&format!("{field}.v"))?;
    State::new(rho, u, v).map_err(|e| ConfigError::Invalid {
        field: field.to_string(),
        message: e.to_string(),
    })
}

/// Parse and resolve a configuration document.
pub fn parse_config(text: &str) -> Result<Resolved, ConfigError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| ConfigError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let k = raw.eos.k.resolve("eos.k")?;
    let gamma = raw.eos.gamma.resolve("eos.gamma")?;
    let eos = EosParams::new(k, gamma).map_err(|e| ConfigError::Invalid {
        field: "eos".to_string(),
        message: e.to_string(),
    })?;

    let left = state(&raw.riemann.left, "riemann.left")?;
    let right = state(&raw.riemann.right, "riemann.right")?;
    let data = RiemannData { left, right, eos };

    let sub = match &raw.subsolution {
        None => None,
        Some(s) => {
            let sub = FanSubsolution {
                mu0: s.mu0.resolve("subsolution.mu0")?,
                mu1: s.mu1.resolve("subsolution.mu1")?,
                rho1: s.rho1.resolve("subsolution.rho1")?,
                u1: s.u1.resolve("subsolution.u1")?,
                v1: s.v1.resolve("subsolution.v1")?,
                gamma1: s.gamma1.resolve("subsolution.gamma1")?,
                delta1: s.delta1.resolve("subsolution.delta1")?,
                c1: s.c1.resolve("subsolution.c1")?,
            };
            sub.validate().map_err(|e| ConfigError::Invalid {
                field: "subsolution".to_string(),
                message: e.to_string(),
            })?;
            Some(sub)
        }
    };

    let t0 = raw.times.t0.resolve("times.t0")?;
    let t_end = raw.times.t.resolve("times.t")?;
    if !(t_end > 0.0) {
        return Err(ConfigError::Invalid {
            field: "times.t".to_string(),
            message: format!("final time must be positive, got {t_end}"),
        });
    }
    if sub.is_some() && !(t0 > 0.0 && t0 < t_end) {
        return Err(ConfigError::Invalid {
            field: "times.t0".to_string(),
            message: format!("gluing time must satisfy 0 < t0 < t, got t0 = {t0}, t = {t_end}"),
        });
    }

    let (l1, l2) = match &raw.window {
        None => (1.0, None),
        Some(w) => {
            let l1 = match &w.l1 {
                None => 1.0,
                Some(raw) => raw.resolve("window.l1")?,
            };
            let l2 = match &w.l2 {
                None => None,
                Some(raw) => Some(raw.resolve("window.l2")?),
            };
            (l1, l2)
        }
    };
    for (name, value) in [("window.l1", Some(l1)), ("window.l2", l2)] {
        if let Some(value) = value {
            if !(value > 0.0) {
                return Err(ConfigError::Invalid {
                    field: name.to_string(),
                    message: format!("window extent must be positive, got {value}"),
                });
            }
        }
    }

    Ok(Resolved {
        eos,
        data,
        sub,
        t0,
        t_end,
        l1,
        l2,
        tol: raw.tolerances.unwrap_or_default(),
        out: raw.out.map(PathBuf::from),
    })
}

/// Load a configuration file, or the embedded default when `path` is `None`.
pub fn load(path: Option<&Path>) -> Result<Resolved, ConfigError> {
    match path {
        None => parse_config(DEFAULT_CONFIG),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
                path: path.display().to_string(),
                source,
            })?;
            parse_config(&text)
        }
    }
}
