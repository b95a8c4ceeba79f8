use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dwell::DwellSegment;
use crate::dynamics::SystemParams;
use crate::error::{Error, Result};
use crate::integrator::{PhaseState, Trajectory};
use crate::wells::{well_center, WellIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chirality {
    Clockwise,
    Anticlockwise,
}

/// Radius around a well center inside which a segment counts as spiralling.
pub const SPIRAL_RADIUS: f64 = FRAC_PI_4;
pub const MIN_SPIRAL_SAMPLES: usize = 10;

/// Sense of rotation of `segment` about `center` from its accumulated winding angle.
pub fn spiral_chirality(segment: &[PhaseState], center: Complex64) -> Result<Chirality> {
    if segment.len() < MIN_SPIRAL_SAMPLES {
        return Err(Error::DegenerateSpiral(format!(
            "{} samples, need {MIN_SPIRAL_SAMPLES}",
            segment.len()
        )));
    }
    if let Some(s) = segment
        .iter()
        .find(|s| (s.z - center).norm() > SPIRAL_RADIUS)
    {
        return Err(Error::DegenerateSpiral(format!(
            "sample at t = {} lies {} from the center",
            s.t,
            (s.z - center).norm()
        )));
    }
    let winding: f64 = segment
        .windows(2)
        .map(|w| ((w[1].z - center) / (w[0].z - center)).arg())
        .sum();
    if winding < 0.0 {
        Ok(Chirality::Clockwise)
    } else if winding > 0.0 {
        Ok(Chirality::Anticlockwise)
    } else {
        Err(Error::DegenerateSpiral("zero net winding".into()))
    }
}

/// The inward and outward spiral arms of one captured dwell.
#[derive(Debug, Clone)]
pub struct CaptureSpiral {
    pub well: WellIndex,
    pub center: Complex64,
    pub inward: Vec<PhaseState>,
    pub outward: Vec<PhaseState>,
}

/// Splits a captured dwell at its closest approach to the well center and
/// keeps the contiguous samples within [`SPIRAL_RADIUS`] on either side.
pub fn capture_spiral(
    traj: &Trajectory,
    seg: &DwellSegment,
    params: &SystemParams,
) -> CaptureSpiral {
    let center = well_center(seg.well, params);
    let inside = |i: usize| (traj.samples[i].z - center).norm() <= SPIRAL_RADIUS;
    let k = seg.closest_index;
    let mut lo = k;
    while lo > seg.first && inside(lo - 1) {
        lo -= 1;
    }
    let mut hi = k;
    while hi + 1 < seg.end && inside(hi + 1) {
        hi += 1;
    }
    CaptureSpiral {
        well: seg.well,
        center,
        inward: traj.samples[lo..=k].to_vec(),
        outward: traj.samples[k..=hi].to_vec(),
    }
}
