//! Bisection for the starting height above a well where closed orbits turn into escapes.
//!
//! ```bash
//! cargo run --release --example closed_orbit_boundary
//! ```

use num_complex::Complex64;
use qes_classical::analysis::closed_orbit_boundary;
use qes_classical::io::IntegratorOverrides;
use qes_classical::{SystemParams, WellIndex};

fn main() -> qes_classical::Result<()> {
    let params = SystemParams::new(0.1, 3)?;
    let energy = 0.8;
    let cfg = IntegratorOverrides::default().resolve(Complex64::new(energy, 0.0));
    for n in [0, 1] {
        let r = closed_orbit_boundary(WellIndex::left(n), energy, &params, &cfg)?;
        println!(
            "{}: critical offset {:.6} (closed {:.6}, open {:.6}, {} probes)",
            r.well, r.critical_offset, r.closed_offset, r.open_offset, r.probes
        );
    }
    Ok(())
}
