//! Classical dynamics of a particle in the complexified potential
//! `V(z) = -(ζ cosh 2z - iM)²`, with tools to measure tunneling between
//! wells, classify orbits, and evaluate the quasi-exactly-solvable spectrum.
//!
//! ```
//! use num_complex::Complex64;
//! use qes_classical::{integrate, initial_momentum, Branch, IntegratorConfig, SystemParams};
//!
//! let params = SystemParams::new(0.1, 3).unwrap();
//! let z0 = Complex64::new(0.0, 0.0);
//! let e = Complex64::new(1.0, 1.0);
//! let p0 = initial_momentum(z0, e, Branch::Principal, &params).unwrap();
//! let cfg = IntegratorConfig { t_max: 10.0, ..Default::default() };
//! let traj = integrate(z0, p0, &cfg, &params).unwrap();
//! assert!(traj.stats.max_drift < 1e-8);
//! ```

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod integrator;
pub mod io;
pub mod spectrum;
pub mod wells;

pub use dynamics::{energy_components, hamiltonian, potential, potential_gradient, SystemParams};
pub use error::{Error, Result};
pub use integrator::{
    derivative, initial_momentum, integrate, Branch, IntegratorConfig, PhaseState, Termination,
    Trajectory,
};
pub use spectrum::{pt_phase, qes_levels, PtPhase, QesLevel};
pub use wells::{nearest_well, well_center, well_x, Side, WellIndex};
