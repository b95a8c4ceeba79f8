//! Experiment drivers behind the CLI subcommands.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use super::complex::format_complex;
use super::config::{ConfigEcho, IntegratorOverrides, RunConfig};
use super::output::{
    write_events_jsonl, write_summary_json, write_trajectory_csv, RunSummary, SweepRow, WellPair,
};
use crate::analysis::{
    classify_orbit, closed_orbit_boundary_in, detect_axis_crossings, measure_tunneling,
    BoundaryResult, CrossingEvent, OrbitClass, OrbitKind, TunnelingStats, DEFAULT_RECUR_TOL,
};
use crate::dynamics::SystemParams;
use crate::error::{Error, Result};
use crate::integrator::{initial_momentum, integrate, IntegratorConfig, Termination, Trajectory};
use crate::wells::WellIndex;

/// Everything one `simulate` run produces.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub config: RunConfig,
    pub p0: Complex64,
    pub trajectory: Trajectory,
    pub crossings: Vec<CrossingEvent>,
    pub class: Result<OrbitClass>,
    /// Present only for tunneling orbits.
    pub tunneling: Option<Result<TunnelingStats>>,
}

impl RunOutcome {
    pub fn well_pair(&self) -> Option<(WellIndex, WellIndex)> {
        match self.class {
            Ok(OrbitClass {
                kind: OrbitKind::Tunneling { left, right },
                ..
            }) => Some((left, right)),
            _ => None,
        }
    }

    /// The first failure, in pipeline order: drift, classification, tunneling stats.
    pub fn status(&self) -> Result<()> {
        if self.trajectory.termination == Termination::DriftExceeded {
            return Err(Error::AbnormalTermination(format!(
                "energy drift exceeded {} at t = {}",
                self.config.integrator.energy_drift_limit,
                self.trajectory.last().t
            )));
        }
        self.class.as_ref().map_err(Clone::clone)?;
        if let Some(Err(e)) = &self.tunneling {
            return Err(e.clone());
        }
        Ok(())
    }

    pub fn summary(&self) -> RunSummary {
        let traj = &self.trajectory;
        RunSummary {
            config: ConfigEcho::from(&self.config),
            initial_momentum: format_complex(self.p0),
            termination: traj.termination,
            t_final: traj.last().t,
            samples: traj.samples.len(),
            integration: traj.stats,
            max_energy_drift: traj.stats.max_drift,
            n_crossings: self.crossings.len(),
            classification: self.class.as_ref().ok().copied(),
            classification_error: self.class.as_ref().err().map(ToString::to_string),
            well_pair: self.well_pair().map(|(l, r)| WellPair {
                left: l.n,
                right: r.n,
            }),
            tunneling: self
                .tunneling
                .as_ref()
                .and_then(|t| t.as_ref().ok().copied()),
        }
    }

    /// Writes whichever of the trajectory, events and summary files are configured.
    pub fn write_outputs(&self) -> Result<()> {
        let out = &self.config.outputs;
        if let Some(p) = &out.trajectory {
            write_trajectory_csv(create(p)?, &self.trajectory)?;
        }
        if let Some(p) = &out.events {
            write_events_jsonl(create(p)?, &self.crossings, &self.class)?;
        }
        if let Some(p) = &out.summary {
            write_summary_json(create(p)?, &self.summary())?;
        }
        Ok(())
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Integrate, classify, and measure tunneling when the orbit tunnels.
///
/// Errors only for invalid input. Numerical and classification failures are
/// kept inside the outcome; see [`RunOutcome::status`].
pub fn simulate(config: &RunConfig) -> Result<RunOutcome> {
    config.integrator.validate()?;
    let params = &config.params;
    let z0 = config.start.position(params);
    let p0 = initial_momentum(z0, config.energy, config.branch, params)?;
    let trajectory = integrate(z0, p0, &config.integrator, params)?;
    let crossings = detect_axis_crossings(&trajectory);
    let class = classify_orbit(&trajectory, params, DEFAULT_RECUR_TOL);
    let tunneling = match class {
        Ok(OrbitClass {
            kind: OrbitKind::Tunneling { .. },
            ..
        }) => Some(measure_tunneling(&trajectory, params)),
        _ => None,
    };
    Ok(RunOutcome {
        config: config.clone(),
        p0,
        trajectory,
        crossings,
        class,
        tunneling,
    })
}

/// The run a sweep row stands for: origin start, principal branch.
pub fn sweep_config(
    params: SystemParams,
    e1: f64,
    e2: f64,
    overrides: &IntegratorOverrides,
) -> RunConfig {
    let energy = Complex64::new(e1, e2);
    RunConfig {
        integrator: overrides.resolve(energy),
        ..RunConfig::new(params, energy)
    }
}

/// One tunneling-time measurement per `E₂`, run in parallel, returned in input order.
pub fn sweep_e2(
    params: SystemParams,
    e1: f64,
    e2_list: &[f64],
    overrides: &IntegratorOverrides,
) -> Result<Vec<SweepRow>> {
    if e2_list.is_empty() {
        return Err(Error::InvalidConfig("empty E2 list".into()));
    }
    let all_pos = e2_list.iter().all(|&e| e > 0.0);
    let all_neg = e2_list.iter().all(|&e| e < 0.0);
    if !(all_pos || all_neg) {
        return Err(Error::InvalidConfig(
            "E2 values must be all positive or all negative".into(),
        ));
    }
    overrides
        .resolve(Complex64::new(e1, e2_list[0]))
        .validate()?;

    Ok(e2_list
        .par_iter()
        .map(|&e2| {
            let cfg = sweep_config(params, e1, e2, overrides);
            let stats = simulate(&cfg).and_then(|out| {
                out.status()?;
                out.tunneling.unwrap_or_else(|| {
                    Err(Error::ClassificationMismatch(
                        out.class.map_or("none", |c| c.kind.name()).into(),
                    ))
                })
            });
            SweepRow {
                e2,
                stats: stats.map_err(|e| e.to_string()),
            }
        })
        .collect())
}

/// Closed-orbit boundary above (or, with a negative bracket, below) a well.
pub fn threshold(
    params: SystemParams,
    energy_real: f64,
    well: WellIndex,
    cfg: &IntegratorConfig,
    bracket: (f64, f64),
) -> Result<BoundaryResult> {
    closed_orbit_boundary_in(well, energy_real, &params, cfg, bracket.0, bracket.1)
}

/// Process exit code for an error: 1 usage or config, 2 numerical, 3 classification.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonFinite(_)
        | Error::InvalidParams(_)
        | Error::InvalidConfig(_)
        | Error::UnsupportedOrder(_)
        | Error::Parse(_)
        | Error::Io(_) => 1,
        Error::NonFiniteState { .. } | Error::AbnormalTermination(_) => 2,
        Error::InsufficientCrossings { .. }
        | Error::NoCapturedDwell(_)
        | Error::ClassificationMismatch(_)
        | Error::AmbiguousClassification(_)
        | Error::BracketFailure { .. }
        | Error::DegenerateSpiral(_) => 3,
    }
}
