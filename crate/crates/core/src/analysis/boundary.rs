//! Critical starting offset separating closed orbits from open ones at real energy.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::classify::{classify_orbit, OrbitKind, DEFAULT_RECUR_TOL};
use crate::dynamics::SystemParams;
use crate::error::{Error, Result};
use crate::integrator::{initial_momentum, integrate, Branch, IntegratorConfig};
use crate::wells::{well_center, WellIndex};

/// Final bracket width of the bisection.
pub const BOUNDARY_WIDTH: f64 = 1e-4;
/// Default bracket: an offset known to stay closed and one known to escape.
pub const DEFAULT_CLOSED_OFFSET: f64 = 0.3;
pub const DEFAULT_OPEN_OFFSET: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Probe {
    Closed,
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryResult {
    pub well: WellIndex,
    pub energy: f64,
    /// Midpoint of the final bracket.
    pub critical_offset: f64,
    /// Largest offset seen closed and smallest seen open (signed).
    pub closed_offset: f64,
    pub open_offset: f64,
    pub probes: usize,
}

fn describe(r: &Result<Probe>) -> String {
    match r {
        Ok(p) => format!("{p:?}"),
        Err(e) => e.to_string(),
    }
}

/// Classifies the orbit started at `well + i·offset` with real energy.
///
/// Escapes run off vertically, so probes use a vertical escape window of
/// one lattice period pair (2π) unless `cfg` sets a tighter one.
pub fn probe_offset(
    well: WellIndex,
    offset: f64,
    energy: f64,
    params: &SystemParams,
    cfg: &IntegratorConfig,
) -> Result<Probe> {
    let z0 = well_center(well, params) + Complex64::new(0.0, offset);
    let p0 = initial_momentum(z0, Complex64::new(energy, 0.0), Branch::Principal, params)?;
    let cfg = IntegratorConfig {
        escape_imag: Some(cfg.escape_imag.map_or(TAU, |v| v.min(TAU))),
        ..*cfg
    };
    let traj = integrate(z0, p0, &cfg, params)?;
    let class = classify_orbit(&traj, params, DEFAULT_RECUR_TOL)?;
    match class.kind {
        OrbitKind::Closed { .. } => Ok(Probe::Closed),
        OrbitKind::OpenEscape { .. } => Ok(Probe::Open),
        k => Err(Error::AmbiguousClassification(format!(
            "real-energy probe classified {}",
            k.name()
        ))),
    }
}

/// Bisection on the vertical starting offset from the well center with the
/// default bracket `[0.3, 0.6]` above the well.
pub fn closed_orbit_boundary(
    well: WellIndex,
    energy_real: f64,
    params: &SystemParams,
    cfg: &IntegratorConfig,
) -> Result<BoundaryResult> {
    closed_orbit_boundary_in(
        well,
        energy_real,
        params,
        cfg,
        DEFAULT_CLOSED_OFFSET,
        DEFAULT_OPEN_OFFSET,
    )
}

/// Bisection between a closed offset and an open offset; both signed, so a
/// negative bracket searches below the well.
pub fn closed_orbit_boundary_in(
    well: WellIndex,
    energy_real: f64,
    params: &SystemParams,
    cfg: &IntegratorConfig,
    closed_offset: f64,
    open_offset: f64,
) -> Result<BoundaryResult> {
    let probe = |off: f64| probe_offset(well, off, energy_real, params, cfg);
    let inner = probe(closed_offset);
    let outer = probe(open_offset);
    if !(matches!(inner, Ok(Probe::Closed)) && matches!(outer, Ok(Probe::Open))) {
        // Any fatal error that is not a classification outcome surfaces as-is.
        for r in [&inner, &outer] {
            if let Err(
                e @ (Error::InvalidConfig(_) | Error::InvalidParams(_) | Error::NonFinite(_)),
            ) = r
            {
                return Err(e.clone());
            }
        }
        return Err(Error::BracketFailure {
            inner: closed_offset,
            inner_class: describe(&inner),
            outer: open_offset,
            outer_class: describe(&outer),
        });
    }

    let (mut closed, mut open) = (closed_offset, open_offset);
    let mut probes = 2;
    while (open - closed).abs() > BOUNDARY_WIDTH {
        let mid = 0.5 * (closed + open);
        probes += 1;
        match probe(mid)? {
            Probe::Closed => closed = mid,
            Probe::Open => open = mid,
        }
    }
    Ok(BoundaryResult {
        well,
        energy: energy_real,
        critical_offset: 0.5 * (closed + open),
        closed_offset: closed,
        open_offset: open,
        probes,
    })
}
