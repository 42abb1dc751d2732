//! `key = value` run configuration.
//!
//! ```text
//! # third preset, more terms
//! case = case3
//! orders = 6
//! grid_x = 1, 2, 3
//! grid_t = 0.1, 0.3, 0.4
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::hpm::{BhProblem, Branch, Case};
use crate::scalar::QuadraticNumber;

pub const DEFAULT_ORDER: usize = 5;
pub const DEFAULT_PRECISION: u32 = 30;
pub const MAX_ORDER: usize = 20;
pub const PRECISION_RANGE: std::ops::RangeInclusive<u32> = 16..=2000;

const KEYS: [&str; 14] = [
    "case", "alpha", "beta", "gamma", "n", "branch", "x0", "orders", "report_orders", "grid_x", "grid_t", "precision",
    "format", "out",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "md" | "markdown" => Ok(OutputFormat::Markdown),
            other => Err(format!("unknown format {other:?} (expected csv or md)")),
        }
    }
}

impl std::fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Markdown => "md",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown key {key:?} at line {line}")]
    UnknownKey { line: usize, key: String },
    #[error("duplicate key {key:?} at line {line} (first set at line {first})")]
    DuplicateKey { line: usize, key: String, first: usize },
    #[error("key {key:?} at line {line} conflicts with the preset: {message}")]
    Conflict { line: usize, key: String, message: String },
    #[error("invalid number literal at line {line}: {text:?}")]
    InvalidNumber { line: usize, text: String },
    #[error("invalid value for {key:?} at line {line}: {message}")]
    InvalidValue { line: usize, key: String, message: String },
    #[error("constraint violated{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Constraint { line: Option<usize>, message: String },
    #[error("invalid problem: {0}")]
    Problem(String),
}

impl ConfigError {
    /// Short class name, stable for scripts and tests.
    pub fn class(&self) -> &'static str {
        match self {
            ConfigError::Syntax { .. } => "syntax",
            ConfigError::UnknownKey { .. } => "unknown-key",
            ConfigError::DuplicateKey { .. } => "duplicate-key",
            ConfigError::Conflict { .. } => "conflict",
            ConfigError::InvalidNumber { .. } => "invalid-number",
            ConfigError::InvalidValue { .. } => "invalid-value",
            ConfigError::Constraint { .. } => "constraint",
            ConfigError::Problem(_) => "problem",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub problem: BhProblem,
    /// Highest expansion order K; terms `v₀..v_K` are computed.
    pub orders: usize,
    /// Partial sums `S_m` to tabulate, each in `1..=K+1`.
    pub report_orders: Vec<usize>,
    pub grid_x: Vec<BigRational>,
    pub grid_t: Vec<BigRational>,
    pub precision: u32,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

/// Orders printed for each preset: S₁, S₂, S₃, S₆ for the first, S₁, S₃, S₅, S₆ otherwise.
pub fn preset_report_orders(case: Case) -> Vec<usize> {
    match case {
        Case::I => vec![1, 2, 3, 6],
        Case::II | Case::III => vec![1, 3, 5, 6],
    }
}

pub fn default_grid_x() -> Vec<BigRational> {
    (1..=3).map(|v| BigRational::from_integer(v.into())).collect()
}

pub fn default_grid_t() -> Vec<BigRational> {
    [1, 3, 4].iter().map(|&v| BigRational::new(v.into(), 10.into())).collect()
}

impl RunConfig {
    /// The preset's parameters with every other setting at its default.
    pub fn preset(case: Case) -> Self {
        Self {
            problem: case.problem(),
            orders: DEFAULT_ORDER,
            report_orders: preset_report_orders(case),
            grid_x: default_grid_x(),
            grid_t: default_grid_t(),
            precision: DEFAULT_PRECISION,
            format: OutputFormat::Csv,
            out: None,
        }
    }

    /// The preset whose parameters this config uses, if any.
    pub fn case(&self) -> Option<Case> {
        Case::ALL.into_iter().find(|c| c.problem() == self.problem)
    }

    /// Checks orders, precision and grid against each other.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let constraint = |message: String| Err(ConfigError::Constraint { line: None, message });
        if self.orders == 0 || self.orders > MAX_ORDER {
            return constraint(format!("orders must be in 1..={MAX_ORDER}, got {}", self.orders));
        }
        if let Some(m) = self.report_orders.iter().find(|&&m| m == 0 || m > self.orders + 1) {
            return constraint(format!("report order {m} is outside 1..={}", self.orders + 1));
        }
        if !PRECISION_RANGE.contains(&self.precision) {
            return constraint(format!(
                "precision must be in {}..={}, got {}",
                PRECISION_RANGE.start(),
                PRECISION_RANGE.end(),
                self.precision
            ));
        }
        Ok(())
    }
}

/// Renders a rational as an exact decimal when it has one, else as `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    let den = r.denom();
    let mut rest = den.clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0usize, 0usize);
    while rest.is_even() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{}/{}", r.numer(), den);
    }
    let digits = twos.max(fives);
    if digits == 0 {
        return r.numer().to_string();
    }
    let scaled = (r * BigRational::from_integer(BigInt::from(10).pow(digits as u32))).to_integer();
    let neg = scaled < BigInt::zero();
    let s = scaled.magnitude().to_string();
    let s = format!("{s:0>width$}", width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{}{int}.{frac}", if neg { "-" } else { "" })
}

/// Renders a config that [`parse_config`] maps back to an equal value.
pub fn render_config(config: &RunConfig) -> String {
    let mut out = String::new();
    let p = &config.problem;
    match config.case() {
        Some(case) => writeln!(out, "case = case{}", case.number()).unwrap(),
        None => {
            writeln!(out, "alpha = {}", p.alpha()).unwrap();
            writeln!(out, "beta = {}", p.beta()).unwrap();
            writeln!(out, "gamma = {}", p.gamma()).unwrap();
            writeln!(out, "n = {}", p.n()).unwrap();
            writeln!(out, "branch = {}", p.branch()).unwrap();
            writeln!(out, "x0 = {}", p.x0()).unwrap();
        }
    }
    let list = |v: &[BigRational]| v.iter().map(format_rational).collect::<Vec<_>>().join(", ");
    writeln!(out, "orders = {}", config.orders).unwrap();
    let orders: Vec<String> = config.report_orders.iter().map(usize::to_string).collect();
    writeln!(out, "report_orders = {}", orders.join(", ")).unwrap();
    writeln!(out, "grid_x = {}", list(&config.grid_x)).unwrap();
    writeln!(out, "grid_t = {}", list(&config.grid_t)).unwrap();
    writeln!(out, "precision = {}", config.precision).unwrap();
    writeln!(out, "format = {}", config.format).unwrap();
    if let Some(path) = &config.out {
        writeln!(out, "out = {}", path.display()).unwrap();
    }
    out
}

struct Entry {
    line: usize,
    value: String,
}

fn number(e: &Entry) -> Result<QuadraticNumber, ConfigError> {
    e.value.parse().map_err(|_| ConfigError::InvalidNumber { line: e.line, text: e.value.clone() })
}

fn integer<T: FromStr>(key: &str, e: &Entry) -> Result<T, ConfigError> {
    e.value.parse().map_err(|_| ConfigError::InvalidValue {
        line: e.line,
        key: key.into(),
        message: format!("expected a non-negative integer, got {:?}", e.value),
    })
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn rational_list(key: &str, e: &Entry) -> Result<Vec<BigRational>, ConfigError> {
    split_list(&e.value)
        .map(|item| {
            let q: QuadraticNumber =
                item.parse().map_err(|_| ConfigError::InvalidNumber { line: e.line, text: item.to_string() })?;
            q.as_rational().cloned().ok_or_else(|| ConfigError::InvalidValue {
                line: e.line,
                key: key.into(),
                message: format!("grid values must be rational, got {item}"),
            })
        })
        .collect()
}

fn parse_case(e: &Entry) -> Result<Case, ConfigError> {
    let v = e.value.to_ascii_lowercase();
    let v = v.strip_prefix("case").map(|s| s.trim_start_matches(['_', ' '])).unwrap_or(&v);
    v.parse().map_err(|message| ConfigError::InvalidValue { line: e.line, key: "case".into(), message })
}

/// Parses a configuration. Every error carries the offending line.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut entries: HashMap<&'static str, Entry> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Syntax { line, message: format!("expected `key = value`, got {content:?}") });
        };
        let key = key.trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(ConfigError::Syntax { line, message: format!("malformed key {key:?}") });
        }
        let Some(&known) = KEYS.iter().find(|k| **k == key) else {
            return Err(ConfigError::UnknownKey { line, key: key.into() });
        };
        let value = value.trim().to_string();
        let list_key = matches!(known, "report_orders" | "grid_x" | "grid_t");
        if value.is_empty() && !list_key {
            return Err(ConfigError::Syntax { line, message: format!("missing value for {key:?}") });
        }
        if let Some(first) = entries.get(known) {
            return Err(ConfigError::DuplicateKey { line, key: key.into(), first: first.line });
        }
        entries.insert(known, Entry { line, value });
    }

    let case = entries.get("case").map(parse_case).transpose()?;
    let preset = case.map(Case::problem);

    // Explicit parameters may restate the preset's value but not change it.
    let param = |key: &str, preset_value: Option<QuadraticNumber>| -> Result<Option<QuadraticNumber>, ConfigError> {
        let Some(e) = entries.get(key) else { return Ok(preset_value) };
        let v = number(e)?;
        if let Some(p) = preset_value {
            if p != v {
                return Err(ConfigError::Conflict { line: e.line, key: key.into(), message: format!("preset has {p}, config says {v}") });
            }
        }
        Ok(Some(v))
    };
    let alpha = param("alpha", preset.as_ref().map(|p| p.alpha().clone()))?;
    let beta = param("beta", preset.as_ref().map(|p| p.beta().clone()))?;
    let gamma = param("gamma", preset.as_ref().map(|p| p.gamma().clone()))?;
    let x0 = param("x0", preset.as_ref().map(|p| p.x0().clone()))?.unwrap_or_else(QuadraticNumber::zero);

    let n = match entries.get("n") {
        Some(e) => {
            let n: u32 = integer("n", e)?;
            if let Some(p) = &preset {
                if p.n() != n {
                    return Err(ConfigError::Conflict { line: e.line, key: "n".into(), message: format!("preset has {}, config says {n}", p.n()) });
                }
            }
            n
        }
        None => preset.as_ref().map_or(1, BhProblem::n),
    };
    let branch = match entries.get("branch") {
        Some(e) => {
            let b: Branch = e.value.parse().map_err(|message| ConfigError::InvalidValue { line: e.line, key: "branch".into(), message })?;
            if let Some(p) = &preset {
                if p.branch() != b {
                    return Err(ConfigError::Conflict { line: e.line, key: "branch".into(), message: format!("preset has {}, config says {b}", p.branch()) });
                }
            }
            b
        }
        None => preset.as_ref().map_or(Branch::Upper, BhProblem::branch),
    };

    let missing: Vec<&str> = [("alpha", &alpha), ("beta", &beta), ("gamma", &gamma)]
        .iter()
        .filter(|(_, v)| v.is_none())
        .map(|(k, _)| *k)
        .collect();
    if !missing.is_empty() {
        return Err(ConfigError::Constraint { line: None, message: format!("no case preset and missing {}", missing.join(", ")) });
    }
    let problem = BhProblem::new(alpha.unwrap(), beta.unwrap(), gamma.unwrap(), n, branch, x0)
        .map_err(|e| ConfigError::Problem(e.to_string()))?;

    let orders = match entries.get("orders") {
        Some(e) => integer("orders", e)?,
        None => DEFAULT_ORDER,
    };
    if orders == 0 || orders > MAX_ORDER {
        let line = entries.get("orders").map(|e| e.line);
        return Err(ConfigError::Constraint { line, message: format!("orders must be in 1..={MAX_ORDER}, got {orders}") });
    }
    let detected = Case::ALL.into_iter().find(|c| c.problem() == problem);
    let report_orders = match entries.get("report_orders") {
        Some(e) => {
            let list = split_list(&e.value).map(|item| {
                item.parse::<usize>().map_err(|_| ConfigError::InvalidValue {
                    line: e.line,
                    key: "report_orders".into(),
                    message: format!("expected a positive integer, got {item:?}"),
                })
            });
            let list = list.collect::<Result<Vec<_>, _>>()?;
            if let Some(m) = list.iter().find(|&&m| m == 0 || m > orders + 1) {
                return Err(ConfigError::Constraint { line: Some(e.line), message: format!("report order {m} is outside 1..={}", orders + 1) });
            }
            list
        }
        None => match detected {
            Some(c) => preset_report_orders(c).into_iter().filter(|&m| m <= orders + 1).collect(),
            None => (1..=orders + 1).collect(),
        },
    };
    let grid_x = entries.get("grid_x").map(|e| rational_list("grid_x", e)).transpose()?.unwrap_or_else(default_grid_x);
    let grid_t = entries.get("grid_t").map(|e| rational_list("grid_t", e)).transpose()?.unwrap_or_else(default_grid_t);
    let precision = match entries.get("precision") {
        Some(e) => {
            let p: u32 = integer("precision", e)?;
            if !PRECISION_RANGE.contains(&p) {
                return Err(ConfigError::Constraint {
                    line: Some(e.line),
                    message: format!("precision must be in {}..={}, got {p}", PRECISION_RANGE.start(), PRECISION_RANGE.end()),
                });
            }
            p
        }
        None => DEFAULT_PRECISION,
    };
    let format = match entries.get("format") {
        Some(e) => e.value.parse().map_err(|message| ConfigError::InvalidValue { line: e.line, key: "format".into(), message })?,
        None => OutputFormat::Csv,
    };
    let out = entries.get("out").map(|e| PathBuf::from(&e.value));

    Ok(RunConfig { problem, orders, report_orders, grid_x, grid_t, precision, format, out })
}
