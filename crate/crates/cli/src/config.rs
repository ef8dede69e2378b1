//! Line-oriented `key=value` run configuration.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Characteristic equation with a built-in right-hand side.
    Characteristic,
    /// Full equation with kernel K0 = kernel_coeff * cos(x t).
    Full,
    /// Crack opening in a porous elastic plane.
    Crack,
    /// Porosity sweep of centre opening and tip coefficient.
    Sweep,
    /// Collocation error of the characteristic solve against its exact solution.
    Convergence,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rhs {
    /// `f'(x) = -c pi`.
    ConstantPi,
    /// `f'(x) = -c pi u`, `u` the point mapped onto (-1, 1).
    LinearPi,
    /// `f'(x) = -c pi (k+1) U_k(u)`.
    ChebyshevU(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Collocation,
    Inversion,
    Fredholm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    None,
    InverseCube,
}

/// Description of one accepted key, as printed by `--help`.
pub struct KeySpec {
    pub name: &'static str,
    pub default: &'static str,
    pub constraint: &'static str,
}

pub const KEYS: &[KeySpec] = &[
    KeySpec { name: "a", default: "-1", constraint: "finite real, a < b" },
    KeySpec { name: "b", default: "1", constraint: "finite real, b > a" },
    KeySpec { name: "n", default: "100", constraint: "integer >= 1 (crack, sweep: >= 30)" },
    KeySpec { name: "m", default: "200", constraint: "integer >= 4, principal-value quadrature nodes" },
    KeySpec { name: "rhs", default: "constant_pi", constraint: "one of constant_pi, linear_pi, chebyshev_u" },
    KeySpec { name: "rhs_k", default: "0", constraint: "integer >= 0, degree for chebyshev_u" },
    KeySpec { name: "rhs_coeff", default: "1", constraint: "finite real" },
    KeySpec {
        name: "method",
        default: "collocation",
        constraint: "collocation | inversion (characteristic) | fredholm (full)",
    },
    KeySpec { name: "kernel_coeff", default: "1", constraint: "finite real, scales K0 = cos(x t)" },
    KeySpec { name: "nystrom_nodes", default: "64", constraint: "integer >= 2" },
    KeySpec { name: "lambda", default: "1", constraint: "finite real, lambda + 2 mu > 0" },
    KeySpec { name: "mu", default: "1", constraint: "finite real > 0" },
    KeySpec { name: "alpha", default: "1", constraint: "finite real > 0" },
    KeySpec { name: "beta", default: "0", constraint: "finite real >= 0, porosity N < 1" },
    KeySpec { name: "xi", default: "1", constraint: "finite real > 0" },
    KeySpec { name: "sigma0", default: "1", constraint: "finite real >= 0" },
    KeySpec { name: "half_length", default: "1", constraint: "finite real > 0" },
    KeySpec { name: "s_max", default: "200", constraint: "finite real > 0" },
    KeySpec { name: "panels_per_period", default: "8", constraint: "integer >= 4" },
    KeySpec { name: "tail_order", default: "inverse_cube", constraint: "none | inverse_cube" },
    KeySpec { name: "porosity_list", default: "0,0.2,0.4", constraint: "comma-separated reals in [0, 1)" },
    KeySpec {
        name: "n_list",
        default: "25,50,100,200",
        constraint: "comma-separated strictly increasing integers >= 1",
    },
];

/// Fully validated settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub a: f64,
    pub b: f64,
    pub n: usize,
    pub m: usize,
    pub rhs: Rhs,
    pub rhs_coeff: f64,
    pub method: Method,
    pub kernel_coeff: f64,
    pub nystrom_nodes: usize,
    pub lambda: f64,
    pub mu: f64,
    pub alpha: f64,
    pub beta: f64,
    pub xi: f64,
    pub sigma0: f64,
    pub half_length: f64,
    pub s_max: f64,
    pub panels_per_period: usize,
    pub tail_order: Tail,
    pub porosity_list: Vec<f64>,
    pub n_list: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigIssue {
    Syntax { line: usize, text: String },
    UnknownKey(String),
    Unparseable { key: String, value: String },
    Constraint { key: String, value: String, constraint: &'static str },
}

impl fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigIssue::Syntax { line, text } => write!(f, "line {line}: expected key=value, got '{text}'"),
            ConfigIssue::UnknownKey(k) => write!(f, "unknown key '{k}'"),
            ConfigIssue::Unparseable { key, value } => write!(f, "{key}: cannot parse '{value}'"),
            ConfigIssue::Constraint { key, value, constraint } => {
                write!(f, "{key} = {value} violates: {constraint}")
            }
        }
    }
}

/// All problems found in a configuration, reported together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub Vec<ConfigIssue>);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

impl std::error::Error for ConfigError {}

/// Splits config text into `(key, value)` pairs in file order.
pub fn parse_lines(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut pairs = Vec::new();
    let mut issues = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.split_once('=') {
            Some((k, v)) if !k.trim().is_empty() => pairs.push((k.trim().to_string(), v.trim().to_string())),
            _ => issues.push(ConfigIssue::Syntax { line: i + 1, text: line.to_string() }),
        }
    }
    if issues.is_empty() {
        Ok(pairs)
    } else {
        Err(ConfigError(issues))
    }
}

/// Parses an override of the form `key=value`.
pub fn parse_override(s: &str) -> Result<(String, String), String> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(format!("expected key=value, got '{s}'")),
    }
}

struct Lookup {
    values: Vec<(&'static str, String)>,
    issues: Vec<ConfigIssue>,
}

impl Lookup {
    fn raw(&self, key: &str) -> &str {
        self.values.iter().find(|(k, _)| *k == key).map(|(_, v)| v.as_str()).unwrap_or("")
    }

    fn constraint_of(key: &str) -> &'static str {
        KEYS.iter().find(|k| k.name == key).map(|k| k.constraint).unwrap_or("")
    }

    fn parsed<T: FromStr>(&mut self, key: &str) -> Option<T> {
        let raw = self.raw(key).to_string();
        match raw.parse::<T>() {
            Ok(v) => Some(v),
            Err(_) => {
                self.issues.push(ConfigIssue::Unparseable { key: key.into(), value: raw });
                None
            }
        }
    }

    fn real(&mut self, key: &str, ok: impl Fn(f64) -> bool) -> f64 {
        match self.parsed::<f64>(key) {
            Some(v) if v.is_finite() && ok(v) => v,
            Some(_) => {
                self.violate(key);
                f64::NAN
            }
            None => f64::NAN,
        }
    }

    fn int(&mut self, key: &str, min: usize) -> usize {
        match self.parsed::<usize>(key) {
            Some(v) if v >= min => v,
            Some(_) => {
                self.violate(key);
                min
            }
            None => min,
        }
    }

    fn violate(&mut self, key: &str) {
        let value = self.raw(key).to_string();
        self.issues.push(ConfigIssue::Constraint { key: key.into(), value, constraint: Self::constraint_of(key) });
    }

    fn list<T: FromStr>(&mut self, key: &str) -> Vec<T> {
        let raw = self.raw(key).to_string();
        let items: Result<Vec<T>, _> = raw.split(',').map(|s| s.trim().parse::<T>()).collect();
        items.unwrap_or_else(|_| {
            self.issues.push(ConfigIssue::Unparseable { key: key.into(), value: raw });
            Vec::new()
        })
    }
}

/// Merges file pairs and overrides (later entries win) over the defaults
/// and validates every key.
pub fn build_config(
    command: Command,
    file: &[(String, String)],
    overrides: &[(String, String)],
) -> Result<RunConfig, ConfigError> {
    let mut lk = Lookup { values: KEYS.iter().map(|k| (k.name, k.default.to_string())).collect(), issues: Vec::new() };
    for (key, value) in file.iter().chain(overrides) {
        match lk.values.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value.clone(),
            None => lk.issues.push(ConfigIssue::UnknownKey(key.clone())),
        }
    }

    let a = lk.real("a", |_| true);
    let b = lk.real("b", |_| true);
    if a.is_finite() && b.is_finite() && a >= b {
        lk.violate("b");
    }
    let min_cells = if matches!(command, Command::Crack | Command::Sweep) { 30 } else { 1 };
    let n = lk.int("n", min_cells);
    let m = lk.int("m", 4);
    let rhs_k = lk.int("rhs_k", 0);
    let rhs = match lk.raw("rhs") {
        "constant_pi" => Rhs::ConstantPi,
        "linear_pi" => Rhs::LinearPi,
        "chebyshev_u" => Rhs::ChebyshevU(rhs_k),
        _ => {
            lk.violate("rhs");
            Rhs::ConstantPi
        }
    };
    let rhs_coeff = lk.real("rhs_coeff", |_| true);
    let method = match (lk.raw("method"), command) {
        ("collocation", _) => Method::Collocation,
        ("inversion", Command::Characteristic) => Method::Inversion,
        ("fredholm", Command::Full) => Method::Fredholm,
        _ => {
            lk.violate("method");
            Method::Collocation
        }
    };
    let kernel_coeff = lk.real("kernel_coeff", |_| true);
    let nystrom_nodes = lk.int("nystrom_nodes", 2);
    let lambda = lk.real("lambda", |_| true);
    let mu = lk.real("mu", |v| v > 0.0);
    if lambda.is_finite() && mu.is_finite() && lambda + 2.0 * mu <= 0.0 {
        lk.violate("lambda");
    }
    let alpha = lk.real("alpha", |v| v > 0.0);
    let beta = lk.real("beta", |v| v >= 0.0);
    let xi = lk.real("xi", |v| v > 0.0);
    let sigma0 = lk.real("sigma0", |v| v >= 0.0);
    let half_length = lk.real("half_length", |v| v > 0.0);
    let s_max = lk.real("s_max", |v| v > 0.0);
    let panels_per_period = lk.int("panels_per_period", 4);
    let tail_order = match lk.raw("tail_order") {
        "none" => Tail::None,
        "inverse_cube" => Tail::InverseCube,
        _ => {
            lk.violate("tail_order");
            Tail::InverseCube
        }
    };
    let porosity_list: Vec<f64> = lk.list("porosity_list");
    if porosity_list.iter().any(|p| !(0.0..1.0).contains(p)) {
        lk.violate("porosity_list");
    }
    let n_list: Vec<usize> = lk.list("n_list");
    if n_list.first() == Some(&0) || n_list.windows(2).any(|w| w[0] >= w[1]) {
        lk.violate("n_list");
    }

    if !lk.issues.is_empty() {
        return Err(ConfigError(lk.issues));
    }
    Ok(RunConfig {
        command,
        a,
        b,
        n,
        m,
        rhs,
        rhs_coeff,
        method,
        kernel_coeff,
        nystrom_nodes,
        lambda,
        mu,
        alpha,
        beta,
        xi,
        sigma0,
        half_length,
        s_max,
        panels_per_period,
        tail_order,
        porosity_list,
        n_list,
    })
}

/// Parses config text and applies overrides in one step.
pub fn parse_config(command: Command, text: &str, overrides: &[(String, String)]) -> Result<RunConfig, ConfigError> {
    build_config(command, &parse_lines(text)?, overrides)
}

/// The key table as shown in `--help`.
pub fn keys_help() -> String {
    let mut out = String::from("Configuration keys (key=value, '#' starts a comment):\n");
    for k in KEYS {
        out.push_str(&format!("  {:<18} default {:<14} {}\n", k.name, k.default, k.constraint));
    }
    out
}
