//! Scenario configuration for parameter sweeps.
//!
//! The file format is flat `key = value` lines. `#` starts a comment, blank
//! lines are ignored and list values are comma separated:
//!
//! ```text
//! mass = 1000
//! spin_ratio = 0.8      # a/M
//! charge_ratio = 0.2    # Q/M
//! speed = 0.3, 0.5, 0.7, 0.9
//! r_scale = horizon
//! r_min = 1.001
//! r_max = 10
//! r_count = 200
//! ```
//!
//! With `r_scale = horizon`, `r_min` and `r_max` are multiples of r₊ and the
//! points are spaced geometrically in r/r₊ − 1. `linear` and `log` take
//! absolute radii.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::PhysicsError;
use crate::spacetime::BlackHoleParams;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("invalid value {value:?} for {key}: {reason}")]
    Value {
        key: String,
        value: String,
        reason: String,
    },
    #[error("{0}")]
    Invalid(String),
}

type Result<T> = std::result::Result<T, ConfigError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusScale {
    Linear,
    Log,
    Horizon,
}

impl FromStr for RadiusScale {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "linear" => Ok(RadiusScale::Linear),
            "log" => Ok(RadiusScale::Log),
            "horizon" => Ok(RadiusScale::Horizon),
            _ => Err("expected linear, log or horizon".into()),
        }
    }
}

/// Column groups that can be requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Output {
    Lambda,
    Theta,
    Delta,
    Chsh,
    ChshPrimed,
    ChshCorrected,
    Doran,
}

impl Output {
    pub const ORBIT: [Output; 6] = [
        Output::Lambda,
        Output::Theta,
        Output::Delta,
        Output::Chsh,
        Output::ChshPrimed,
        Output::ChshCorrected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Output::Lambda => "lambda",
            Output::Theta => "theta",
            Output::Delta => "delta",
            Output::Chsh => "chsh",
            Output::ChshPrimed => "chsh_primed",
            Output::ChshCorrected => "chsh_corrected",
            Output::Doran => "doran",
        }
    }
}

impl FromStr for Output {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let all = Output::ORBIT.iter().chain(std::iter::once(&Output::Doran));
        all.copied()
            .find(|o| o.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                "expected lambda, theta, delta, chsh, chsh_primed, chsh_corrected or doran".into()
            })
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: RadiusScale,
    /// Insert r₋ and r₊ when they fall inside [min, max].
    pub include_horizons: bool,
}

impl RadiusGrid {
    /// Radii in ascending order.
    pub fn radii(&self, params: &BlackHoleParams) -> std::result::Result<Vec<f64>, ConfigError> {
        let r_plus = params.r_plus();
        let (lo, hi) = match self.scale {
            RadiusScale::Horizon => {
                if r_plus <= 0.0 {
                    return Err(ConfigError::Invalid(
                        "r_scale = horizon needs a black hole with r+ > 0".into(),
                    ));
                }
                (self.min * r_plus, self.max * r_plus)
            }
            _ => (self.min, self.max),
        };
        let n = self.count;
        let t = |i: usize| {
            if n == 1 {
                0.0
            } else {
                i as f64 / (n - 1) as f64
            }
        };
        let mut radii: Vec<f64> = match self.scale {
            RadiusScale::Linear => (0..n).map(|i| lo + (hi - lo) * t(i)).collect(),
            RadiusScale::Log => {
                let (a, b) = (lo.ln(), hi.ln());
                (0..n).map(|i| (a + (b - a) * t(i)).exp()).collect()
            }
            RadiusScale::Horizon => {
                let (a, b) = ((self.min - 1.0).ln(), (self.max - 1.0).ln());
                (0..n)
                    .map(|i| r_plus * (1.0 + (a + (b - a) * t(i)).exp()))
                    .collect()
            }
        };
        // Pin the endpoints against rounding in exp/ln.
        if n > 1 {
            radii[0] = lo;
            radii[n - 1] = hi;
        }
        if self.include_horizons && !params.is_flat() {
            let h = params.horizons();
            for r in [h.minus, h.plus] {
                if r >= lo && r <= hi && !radii.contains(&r) {
                    radii.push(r);
                }
            }
            radii.sort_by(f64::total_cmp);
        }
        Ok(radii)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub mass: f64,
    pub spin_ratio: f64,
    pub charge_ratio: f64,
    /// Local orbital speeds, |v| < 1.
    pub speeds: Vec<f64>,
    /// Observer azimuth Φ.
    pub phi: f64,
    pub particle_mass: f64,
    pub grid: RadiusGrid,
    pub outputs: BTreeSet<Output>,
    /// Destination path; `-` or `None` means standard output.
    pub output: Option<String>,
    pub threads: Option<usize>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            mass: 1000.0,
            spin_ratio: 0.8,
            charge_ratio: 0.2,
            speeds: vec![0.5],
            phi: 1.0,
            particle_mass: 1.0,
            grid: RadiusGrid {
                min: 1.001,
                max: 10.0,
                count: 200,
                scale: RadiusScale::Horizon,
                include_horizons: true,
            },
            outputs: Output::ORBIT.into_iter().collect(),
            output: None,
            threads: None,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    value.parse::<T>().map_err(|e| ConfigError::Value {
        key: key.into(),
        value: value.into(),
        reason: e.to_string(),
    })
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>>
where
    T::Err: fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_num(key, s))
        .collect()
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(ConfigError::Value {
            key: key.into(),
            value: value.into(),
            reason: "expected true or false".into(),
        }),
    }
}

impl ScenarioConfig {
    /// Parse a config file on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ScenarioConfig::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: idx + 1,
                text: raw.to_string(),
            })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Set one key; used for both file lines and command-line overrides.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "mass" => self.mass = parse_num(key, value)?,
            "spin_ratio" => self.spin_ratio = parse_num(key, value)?,
            "charge_ratio" => self.charge_ratio = parse_num(key, value)?,
            "speed" => self.speeds = parse_list(key, value)?,
            "rapidity" => {
                self.speeds = parse_list::<f64>(key, value)?
                    .into_iter()
                    .map(f64::tanh)
                    .collect()
            }
            "phi" => self.phi = parse_num(key, value)?,
            "particle_mass" => self.particle_mass = parse_num(key, value)?,
            "r_min" => self.grid.min = parse_num(key, value)?,
            "r_max" => self.grid.max = parse_num(key, value)?,
            "r_count" => self.grid.count = parse_num(key, value)?,
            "r_scale" => self.grid.scale = parse_num(key, value)?,
            "include_horizons" => self.grid.include_horizons = parse_bool(key, value)?,
            "outputs" => self.outputs = parse_list(key, value)?.into_iter().collect(),
            "output" => self.output = Some(value.to_string()),
            "threads" => self.threads = Some(parse_num(key, value)?),
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    pub fn is_doran_scan(&self) -> bool {
        self.outputs.contains(&Output::Doran)
    }

    /// Checks everything that does not depend on the black-hole geometry.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(ConfigError::Invalid(msg));
        if !(self.mass.is_finite() && self.mass >= 0.0) {
            return bad(format!(
                "mass must be finite and non-negative, got {}",
                self.mass
            ));
        }
        for (name, x) in [
            ("spin_ratio", self.spin_ratio),
            ("charge_ratio", self.charge_ratio),
        ] {
            if !(0.0..1.0).contains(&x) {
                return bad(format!("{name} must lie in [0, 1), got {x}"));
            }
        }
        if self.speeds.is_empty() {
            return bad("at least one speed is required".into());
        }
        if let Some(v) = self.speeds.iter().find(|v| !(v.abs() < 1.0)) {
            return bad(format!("speed must satisfy |v| < 1, got {v}"));
        }
        if !(self.phi > 0.0 && self.phi <= TAU) {
            return bad(format!("phi must lie in (0, 2pi], got {}", self.phi));
        }
        if !(self.particle_mass > 0.0 && self.particle_mass.is_finite()) {
            return bad(format!(
                "particle_mass must be positive, got {}",
                self.particle_mass
            ));
        }
        let g = &self.grid;
        if g.count == 0 {
            return bad("radius grid is empty (r_count = 0)".into());
        }
        if !(g.min.is_finite() && g.max.is_finite() && g.min > 0.0 && g.min <= g.max) {
            return bad(format!(
                "need 0 < r_min <= r_max, got [{}, {}]",
                g.min, g.max
            ));
        }
        if g.scale == RadiusScale::Horizon && g.min <= 1.0 {
            return bad(format!(
                "with r_scale = horizon r_min is a multiple of r+ and must exceed 1, got {}",
                g.min
            ));
        }
        if self.outputs.is_empty() {
            return bad("no outputs requested".into());
        }
        if self.is_doran_scan() && self.outputs.len() > 1 {
            return bad("doran cannot be combined with orbit outputs".into());
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1".into());
        }
        Ok(())
    }

    /// Black-hole parameters; fails for naked or extremal configurations.
    pub fn params(&self) -> std::result::Result<BlackHoleParams, PhysicsError> {
        let p = BlackHoleParams::from_ratios(self.mass, self.spin_ratio, self.charge_ratio)?;
        p.require_subextremal()?;
        Ok(p)
    }
}
