//! Well centers: zeros of both V and V', on two vertical columns.
//!
//! ```bash
//! cargo run --example well_lattice
//! ```

use qes_classical::{potential, potential_gradient, well_center, well_x, SystemParams, WellIndex};

fn main() -> qes_classical::Result<()> {
    for (zeta, m) in [(0.1, 3), (1.0, 3), (1.0, 5)] {
        let params = SystemParams::new(zeta, m)?;
        println!("zeta={zeta} M={m}: columns at x = ±{:.6}", well_x(&params));
        let mut worst: f64 = 0.0;
        for n in -3..=3 {
            for w in [WellIndex::left(n), WellIndex::right(n)] {
                let z = well_center(w, &params);
                worst = worst.max(potential(z, &params)?.norm());
                worst = worst.max(potential_gradient(z, &params)?.norm());
            }
        }
        let z = well_center(WellIndex::right(0), &params);
        println!("  right 0 at {z:.6}, max |V|, |V'| over |n| <= 3: {worst:.1e}");
    }
    Ok(())
}
