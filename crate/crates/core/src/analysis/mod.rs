//! Trajectory analysis: axis crossings, dwell and tunneling times, well
//! pairs, orbit classes, the closed-orbit boundary, spiral sense and
//! self-intersection.

pub mod boundary;
pub mod chirality;
pub mod classify;
pub mod crossings;
pub mod dwell;
pub mod intersect;
pub mod tunneling;

pub use boundary::{
    closed_orbit_boundary, closed_orbit_boundary_in, probe_offset, BoundaryResult, Probe,
};
pub use chirality::{capture_spiral, spiral_chirality, CaptureSpiral, Chirality};
pub use classify::{classify_orbit, find_recurrence, OrbitClass, OrbitKind, DEFAULT_RECUR_TOL};
pub use crossings::{
    detect_axis_crossings, detect_crossings_in, directions_alternate, CrossingEvent, Direction,
};
pub use dwell::{dwell_segments, DwellSegment, CAPTURE_RADIUS};
pub use intersect::{polyline_intersection_pairs, polyline_self_intersections, self_intersections};
pub use tunneling::{measure_tunneling, tunnel_well_pair, TunnelingStats};
