//! A real-energy orbit started just above a well stays on a closed loop.
//!
//! ```bash
//! cargo run --release --example closed_orbit
//! ```

use num_complex::Complex64;
use qes_classical::analysis::{classify_orbit, OrbitKind, DEFAULT_RECUR_TOL};
use qes_classical::{
    initial_momentum, integrate, well_center, Branch, IntegratorConfig, SystemParams, WellIndex,
};

fn main() -> qes_classical::Result<()> {
    let params = SystemParams::new(0.1, 3)?;
    let energy = Complex64::new(0.8, 0.0);
    let cfg = IntegratorConfig {
        t_max: 60.0,
        ..Default::default()
    };

    for offset in [0.1, 0.3, 0.5] {
        let z0 = well_center(WellIndex::left(0), &params) + Complex64::new(0.0, offset);
        let p0 = initial_momentum(z0, energy, Branch::Principal, &params)?;
        let traj = integrate(z0, p0, &cfg, &params)?;
        let class = classify_orbit(&traj, &params, DEFAULT_RECUR_TOL)?;
        match class.kind {
            OrbitKind::Closed { period, anchor } => println!(
                "offset {offset:.1}: closed, period {period:.6}, around {anchor}, drift {:.1e}",
                traj.stats.max_drift
            ),
            k => println!("offset {offset:.1}: {}", k.name()),
        }
    }
    Ok(())
}
