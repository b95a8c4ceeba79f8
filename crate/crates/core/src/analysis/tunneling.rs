use serde::{Deserialize, Serialize};

use super::classify::{classify_orbit, OrbitKind, DEFAULT_RECUR_TOL};
use super::crossings::{detect_axis_crossings, CrossingEvent};
use super::dwell::{dwell_segments, side_after, DwellSegment};
use crate::dynamics::SystemParams;
use crate::error::{Error, Result};
use crate::integrator::Trajectory;
use crate::wells::{Side, WellIndex};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TunnelingStats {
    pub dwell_left_mean: f64,
    pub dwell_right_mean: f64,
    /// Average of the two side means.
    pub tunneling_time: f64,
    /// Complete left+right dwell pairs.
    pub n_cycles: usize,
    pub n_left: usize,
    pub n_right: usize,
    /// Uncaptured dwells left out of the means.
    pub n_transit: usize,
}

impl TunnelingStats {
    fn from_dwells(dwells: impl Iterator<Item = (Side, f64)>, n_transit: usize) -> Result<Self> {
        let (mut sl, mut nl, mut sr, mut nr) = (0.0, 0usize, 0.0, 0usize);
        for (side, d) in dwells {
            match side {
                Side::Left => {
                    sl += d;
                    nl += 1;
                }
                Side::Right => {
                    sr += d;
                    nr += 1;
                }
            }
        }
        if nl == 0 {
            return Err(Error::NoCapturedDwell("left"));
        }
        if nr == 0 {
            return Err(Error::NoCapturedDwell("right"));
        }
        let (ml, mr) = (sl / nl as f64, sr / nr as f64);
        Ok(Self {
            dwell_left_mean: ml,
            dwell_right_mean: mr,
            tunneling_time: 0.5 * (ml + mr),
            n_cycles: nl.min(nr),
            n_left: nl,
            n_right: nr,
            n_transit,
        })
    }

    /// Statistics from bare crossing events, every interval counted as a dwell.
    pub fn from_crossings(events: &[CrossingEvent]) -> Result<Self> {
        if events.len() < 3 {
            return Err(Error::InsufficientCrossings {
                needed: 3,
                found: events.len(),
            });
        }
        Self::from_dwells(
            events
                .windows(2)
                .map(|w| (side_after(w[0].direction), w[1].t_cross - w[0].t_cross)),
            0,
        )
    }
}

/// Mean dwell times left and right of the axis and their average.
///
/// Only captured dwells enter the means; see [`super::dwell`].
pub fn measure_tunneling(traj: &Trajectory, params: &SystemParams) -> Result<TunnelingStats> {
    let crossings = detect_axis_crossings(traj);
    if crossings.len() < 3 {
        return Err(Error::InsufficientCrossings {
            needed: 3,
            found: crossings.len(),
        });
    }
    let segments = dwell_segments(traj, &crossings, params);
    stats_from_segments(&segments)
}

pub(crate) fn stats_from_segments(segments: &[DwellSegment]) -> Result<TunnelingStats> {
    let n_transit = segments.iter().filter(|s| !s.captured).count();
    TunnelingStats::from_dwells(
        segments
            .iter()
            .filter(|s| s.captured)
            .map(|s| (s.side, s.duration())),
        n_transit,
    )
}

/// Wells of the first captured dwell on each side.
///
/// Long runs walk the pair slowly up the lattice, one step every few
/// cycles, so later dwells describe a different pair.
pub(crate) fn first_capture_pair(segments: &[DwellSegment]) -> Option<(WellIndex, WellIndex)> {
    let first = |side: Side| {
        segments
            .iter()
            .find(|s| s.captured && s.side == side)
            .map(|s| s.well)
    };
    Some((first(Side::Left)?, first(Side::Right)?))
}

/// The `(left, right)` wells the particle tunnels between.
pub fn tunnel_well_pair(
    traj: &Trajectory,
    params: &SystemParams,
) -> Result<(WellIndex, WellIndex)> {
    let class = classify_orbit(traj, params, DEFAULT_RECUR_TOL)?;
    match class.kind {
        OrbitKind::Tunneling { left, right } => Ok((left, right)),
        other => Err(Error::ClassificationMismatch(other.name().into())),
    }
}
