//! Run configuration, assembled from a JSON file and command-line overrides.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::complex::{format_complex, parse_complex};
use crate::dynamics::SystemParams;
use crate::error::{Error, Result};
use crate::integrator::{Branch, IntegratorConfig};
use crate::wells::{well_center, Side, WellIndex};

/// Typical `E₂·τ` for tunneling orbits, used to size `t_max`.
pub const TAU_PRODUCT_ESTIMATE: f64 = 16.0;
/// Expected tunneling times covered by the default `t_max`.
pub const DEFAULT_CYCLES: f64 = 40.0;
pub const MIN_T_MAX: f64 = 200.0;

/// Drift abort guard for experiment runs.
///
/// Tunneling and near-separatrix orbits make short excursions to `|V| ~ 1e7..1e9`,
/// where one ulp of `z` already moves `H` by about `5e-15 |V|`. The library
/// default of `1e-8` would stop those runs on roundoff alone, so drivers use
/// this looser guard and report the observed drift instead.
pub const DRIVER_DRIFT_LIMIT: f64 = 1e-4;

/// `40 × (16 / |E₂|)`, never below 200.
pub fn default_t_max(energy: Complex64) -> f64 {
    if energy.im == 0.0 {
        MIN_T_MAX
    } else {
        (DEFAULT_CYCLES * TAU_PRODUCT_ESTIMATE / energy.im.abs()).max(MIN_T_MAX)
    }
}

/// Where the particle starts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StartMode {
    Origin,
    Well(WellIndex),
    Point(Complex64),
}

impl StartMode {
    pub fn position(&self, params: &SystemParams) -> Complex64 {
        match *self {
            StartMode::Origin => Complex64::new(0.0, 0.0),
            StartMode::Well(w) => well_center(w, params),
            StartMode::Point(z) => z,
        }
    }
}

impl FromStr for StartMode {
    type Err = Error;

    /// `origin`, `well:left,-2`, `well:right,3`, `point:-2.04731,-0.3114`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("origin") {
            return Ok(StartMode::Origin);
        }
        let bad = || {
            Error::Parse(format!(
                "bad start {s:?}; use origin | well:<left|right>,<n> | point:<x>,<y>"
            ))
        };
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let (a, b) = rest.split_once(',').ok_or_else(bad)?;
        match kind.trim() {
            "well" => Ok(StartMode::Well(WellIndex::new(
                parse_side(a)?,
                b.trim().parse().map_err(|_| bad())?,
            ))),
            "point" => {
                let x: f64 = a.trim().parse().map_err(|_| bad())?;
                let y: f64 = b.trim().parse().map_err(|_| bad())?;
                Ok(StartMode::Point(Complex64::new(x, y)))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for StartMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StartMode::Origin => f.write_str("origin"),
            StartMode::Well(w) => write!(f, "well:{},{}", w.side, w.n),
            StartMode::Point(z) => write!(f, "point:{},{}", z.re, z.im),
        }
    }
}

pub fn parse_side(s: &str) -> Result<Side> {
    match s.trim().to_ascii_lowercase().as_str() {
        "left" | "l" => Ok(Side::Left),
        "right" | "r" => Ok(Side::Right),
        other => Err(Error::Parse(format!("bad side {other:?}"))),
    }
}

/// `left,-2` style well label.
pub fn parse_well(s: &str) -> Result<WellIndex> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("bad well {s:?}; use <left|right>,<n>")))?;
    let n = b
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad well index in {s:?}")))?;
    Ok(WellIndex::new(parse_side(a)?, n))
}

pub fn parse_branch(s: &str) -> Result<Branch> {
    match s.trim().to_ascii_lowercase().as_str() {
        "principal" | "+" => Ok(Branch::Principal),
        "negated" | "-" => Ok(Branch::Negated),
        other => Err(Error::Parse(format!("bad branch {other:?}"))),
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputPaths {
    pub trajectory: Option<PathBuf>,
    pub events: Option<PathBuf>,
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    pub energy: Complex64,
    pub start: StartMode,
    pub branch: Branch,
    pub integrator: IntegratorConfig,
    pub outputs: OutputPaths,
}

impl RunConfig {
    /// Origin start, principal branch, driver integrator defaults.
    pub fn new(params: SystemParams, energy: Complex64) -> Self {
        Self {
            params,
            energy,
            start: StartMode::Origin,
            branch: Branch::Principal,
            integrator: IntegratorOverrides::default().resolve(energy),
            outputs: OutputPaths::default(),
        }
    }
}

/// Integrator settings where every field may be absent.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorOverrides {
    pub dt_init: Option<f64>,
    pub dt_max: Option<f64>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub t_max: Option<f64>,
    pub max_steps: Option<usize>,
    pub energy_drift_limit: Option<f64>,
    pub energy_tol: Option<f64>,
    pub escape_radius: Option<f64>,
    pub escape_imag: Option<f64>,
}

macro_rules! take_first {
    ($a:expr, $b:expr, $($f:ident),*) => {
        IntegratorOverrides { $($f: $a.$f.or($b.$f)),* }
    };
}

impl IntegratorOverrides {
    /// Fields of `self` win over `base`.
    pub fn over(self, base: IntegratorOverrides) -> Self {
        take_first!(
            self,
            base,
            dt_init,
            dt_max,
            rel_tol,
            abs_tol,
            t_max,
            max_steps,
            energy_drift_limit,
            energy_tol,
            escape_radius,
            escape_imag
        )
    }

    /// Fills gaps from the library defaults, except `t_max` from
    /// [`default_t_max`] and the drift guard [`DRIVER_DRIFT_LIMIT`].
    pub fn resolve(&self, energy: Complex64) -> IntegratorConfig {
        let d = IntegratorConfig::default();
        IntegratorConfig {
            dt_init: self.dt_init.unwrap_or(d.dt_init),
            dt_max: self.dt_max.unwrap_or(d.dt_max),
            rel_tol: self.rel_tol.unwrap_or(d.rel_tol),
            abs_tol: self.abs_tol.unwrap_or(d.abs_tol),
            t_max: self.t_max.unwrap_or_else(|| default_t_max(energy)),
            max_steps: self.max_steps.unwrap_or(d.max_steps),
            energy_drift_limit: self.energy_drift_limit.unwrap_or(DRIVER_DRIFT_LIMIT),
            energy_tol: self.energy_tol.unwrap_or(d.energy_tol),
            escape_radius: self.escape_radius.unwrap_or(d.escape_radius),
            escape_imag: self.escape_imag.or(d.escape_imag),
        }
    }
}

/// The JSON file form of a run. Every field is optional so that flags can fill gaps.
///
/// ```json
/// { "zeta": 0.1, "M": 3, "energy": "1+1i", "start": "origin",
///   "branch": "principal", "integrator": { "rel_tol": 1e-10 },
///   "trajectory_out": "traj.csv", "events_out": "events.jsonl",
///   "summary_out": "summary.json" }
/// ```
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    pub zeta: Option<f64>,
    #[serde(rename = "M")]
    pub m_int: Option<u32>,
    pub energy: Option<String>,
    pub start: Option<String>,
    pub branch: Option<String>,
    #[serde(default)]
    pub integrator: IntegratorOverrides,
    pub trajectory_out: Option<PathBuf>,
    pub events_out: Option<PathBuf>,
    pub summary_out: Option<PathBuf>,
}

impl RunConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Fields of `self` win over `base`.
    pub fn over(self, base: RunConfigFile) -> Self {
        Self {
            zeta: self.zeta.or(base.zeta),
            m_int: self.m_int.or(base.m_int),
            energy: self.energy.or(base.energy),
            start: self.start.or(base.start),
            branch: self.branch.or(base.branch),
            integrator: self.integrator.over(base.integrator),
            trajectory_out: self.trajectory_out.or(base.trajectory_out),
            events_out: self.events_out.or(base.events_out),
            summary_out: self.summary_out.or(base.summary_out),
        }
    }

    pub fn resolve(&self) -> Result<RunConfig> {
        let zeta = self
            .zeta
            .ok_or_else(|| Error::Parse("missing zeta".into()))?;
        let m_int = self.m_int.ok_or_else(|| Error::Parse("missing M".into()))?;
        let params = SystemParams::new(zeta, m_int)?;
        let energy = parse_complex(
            self.energy
                .as_deref()
                .ok_or_else(|| Error::Parse("missing energy".into()))?,
        )?;
        let start = self
            .start
            .as_deref()
            .map_or(Ok(StartMode::Origin), str::parse)?;
        let branch = self
            .branch
            .as_deref()
            .map_or(Ok(Branch::Principal), parse_branch)?;
        let integrator = self.integrator.resolve(energy);
        integrator.validate()?;
        Ok(RunConfig {
            params,
            energy,
            start,
            branch,
            integrator,
            outputs: OutputPaths {
                trajectory: self.trajectory_out.clone(),
                events: self.events_out.clone(),
                summary: self.summary_out.clone(),
            },
        })
    }
}

/// Echo of a resolved configuration for run summaries.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub zeta: f64,
    #[serde(rename = "M")]
    pub m_int: u32,
    pub energy: String,
    pub start: String,
    pub branch: &'static str,
    pub integrator: IntegratorConfig,
}

impl From<&RunConfig> for ConfigEcho {
    fn from(c: &RunConfig) -> Self {
        Self {
            zeta: c.params.zeta,
            m_int: c.params.m_int,
            energy: format_complex(c.energy),
            start: c.start.to_string(),
            branch: c.branch.as_str(),
            integrator: c.integrator,
        }
    }
}
