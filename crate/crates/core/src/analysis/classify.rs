//! Orbit classification: closed, escaping, or tunneling.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::crossings::{detect_axis_crossings, directions_alternate};
use super::dwell::dwell_segments;
use super::tunneling::first_capture_pair;
use crate::dynamics::SystemParams;
use crate::error::{Error, Result};
use crate::integrator::{single_step, PhaseState, Termination, Trajectory};
use crate::wells::{nearest_well, Side, WellIndex};

/// Phase-space distance at which a return counts as recurrence.
pub const DEFAULT_RECUR_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum OrbitKind {
    Closed { period: f64, anchor: WellIndex },
    OpenEscape { side: Side },
    Tunneling { left: WellIndex, right: WellIndex },
}

impl OrbitKind {
    pub fn name(&self) -> &'static str {
        match self {
            OrbitKind::Closed { .. } => "Closed",
            OrbitKind::OpenEscape { .. } => "OpenEscape",
            OrbitKind::Tunneling { .. } => "Tunneling",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitClass {
    #[serde(flatten)]
    pub kind: OrbitKind,
    pub n_crossings: usize,
}

/// First return of the phase point to its initial state.
///
/// Returns are located on the line through `z₀` perpendicular to the initial
/// velocity, crossed in the same sense as at `t = 0`; each candidate is
/// refined by re-stepping from the preceding sample onto the section.
/// Yields `(period, distance)` for the first return within `tol`.
pub fn find_recurrence(traj: &Trajectory, tol: f64) -> Option<(f64, f64)> {
    let s0 = *traj.initial();
    let v0 = 2.0 * s0.p;
    if v0.norm() == 0.0 {
        return None;
    }
    let g = |s: &PhaseState| ((s.z - s0.z) * v0.conj()).re;
    let params = &traj.params;

    for w in traj.samples.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if !(g(a) < 0.0 && g(b) >= 0.0) {
            continue;
        }
        let (mut lo, mut hi) = (0.0, b.t - a.t);
        let mut hit = *b;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            let s = single_step(a, mid, params);
            if g(&s) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
                hit = s;
            }
        }
        let d = hit.phase_distance(&s0);
        if d <= tol {
            return Some((hit.t - s0.t, d));
        }
    }
    None
}

fn centroid(samples: &[PhaseState]) -> Complex64 {
    let sum: Complex64 = samples.iter().map(|s| s.z).sum();
    sum / samples.len() as f64
}

/// Classifies a trajectory that ended on its time limit or by escaping.
///
/// - `Closed`: no axis crossing and the phase point returns within `recur_tol`.
/// - `OpenEscape`: the run escaped without completing a captured dwell on both
///   sides (this covers zero or single crossings, and real-energy runs that
///   jitter along the axis while running away).
/// - `Tunneling`: at least three alternating crossings, captured dwells on both
///   sides, still going at the time limit.
///
/// Anything else is reported as [`Error::AmbiguousClassification`].
pub fn classify_orbit(
    traj: &Trajectory,
    params: &SystemParams,
    recur_tol: f64,
) -> Result<OrbitClass> {
    match traj.termination {
        Termination::TimeLimit | Termination::Escaped => {}
        t => return Err(Error::AbnormalTermination(format!("{t:?}"))),
    }
    let crossings = detect_axis_crossings(traj);
    let n_crossings = crossings.len();
    let class = |kind| Ok(OrbitClass { kind, n_crossings });

    if crossings.is_empty() {
        if let Some((period, _)) = find_recurrence(traj, recur_tol) {
            let one_period: Vec<PhaseState> = traj
                .samples
                .iter()
                .take_while(|s| s.t - traj.initial().t <= period)
                .copied()
                .collect();
            let (anchor, _) = nearest_well(centroid(&one_period), params);
            return class(OrbitKind::Closed { period, anchor });
        }
    }

    let segments = dwell_segments(traj, &crossings, params);
    let pair = first_capture_pair(&segments);

    if traj.termination == Termination::Escaped {
        if pair.is_none() {
            return class(OrbitKind::OpenEscape {
                side: Side::of(traj.last().z.re),
            });
        }
        return Err(Error::AmbiguousClassification(format!(
            "escaped after tunneling between wells ({n_crossings} crossings)"
        )));
    }

    if n_crossings >= 3 && directions_alternate(&crossings) {
        if let Some((left, right)) = pair {
            return class(OrbitKind::Tunneling { left, right });
        }
    }
    Err(Error::AmbiguousClassification(format!(
        "no recurrence, no escape, {n_crossings} crossings by t = {}",
        traj.last().t
    )))
}
