use serde::{Deserialize, Serialize};

use crate::integrator::{PhaseState, Trajectory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::LeftToRight => "LeftToRight",
            Direction::RightToLeft => "RightToLeft",
        }
    }
}

/// A crossing of the imaginary axis, located on the linear interpolant
/// between the two samples that bracket the sign change of `Re z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossingEvent {
    pub t_cross: f64,
    pub y_at_cross: f64,
    pub direction: Direction,
    /// Index of the first sample on the new side.
    pub sample_index: usize,
}

/// `|Re z|` below which a refined crossing counts as on the axis.
pub const CROSSING_TOL: f64 = 1e-9;

pub fn detect_axis_crossings(traj: &Trajectory) -> Vec<CrossingEvent> {
    detect_crossings_in(&traj.samples)
}

/// Crossing detection over a bare sample list.
///
/// Samples lying exactly on the axis carry no side; a crossing is reported
/// between two off-axis samples of opposite sign.
pub fn detect_crossings_in(samples: &[PhaseState]) -> Vec<CrossingEvent> {
    let mut events = Vec::new();
    let mut prev: Option<usize> = None;
    for (k, s) in samples.iter().enumerate() {
        if s.z.re == 0.0 {
            continue;
        }
        if let Some(j) = prev {
            let a = &samples[j];
            if (a.z.re < 0.0) != (s.z.re < 0.0) {
                events.push(refine(a, s, k));
            }
        }
        prev = Some(k);
    }
    events
}

fn refine(a: &PhaseState, b: &PhaseState, sample_index: usize) -> CrossingEvent {
    let x_at = |u: f64| a.z.re + u * (b.z.re - a.z.re);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut u = 0.5;
    for _ in 0..200 {
        u = 0.5 * (lo + hi);
        let x = x_at(u);
        if x.abs() <= CROSSING_TOL {
            break;
        }
        if (x < 0.0) == (a.z.re < 0.0) {
            lo = u;
        } else {
            hi = u;
        }
    }
    let lerp = |p: f64, q: f64| p + u * (q - p);
    let vx = 2.0 * lerp(a.p.re, b.p.re);
    let direction = if vx > 0.0 || (vx == 0.0 && a.z.re < 0.0) {
        Direction::LeftToRight
    } else {
        Direction::RightToLeft
    };
    CrossingEvent {
        t_cross: lerp(a.t, b.t),
        y_at_cross: lerp(a.z.im, b.z.im),
        direction,
        sample_index,
    }
}

/// True when consecutive events never repeat a direction.
pub fn directions_alternate(events: &[CrossingEvent]) -> bool {
    events.windows(2).all(|w| w[0].direction != w[1].direction)
}
