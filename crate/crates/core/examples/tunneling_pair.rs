//! Tunneling from the origin at complex energy: which wells, and how long per side.
//!
//! ```bash
//! cargo run --release --example tunneling_pair -- 0.1 3
//! ```

use num_complex::Complex64;
use qes_classical::io::{simulate, RunConfig};
use qes_classical::SystemParams;

fn main() -> qes_classical::Result<()> {
    let mut args = std::env::args().skip(1);
    let zeta: f64 = args.next().map_or(Ok(0.1), |s| s.parse()).expect("zeta");
    let m: u32 = args.next().map_or(Ok(3), |s| s.parse()).expect("M");

    let params = SystemParams::new(zeta, m)?;
    for e2 in [1.0, -1.0] {
        let out = simulate(&RunConfig::new(params, Complex64::new(1.0, e2)))?;
        out.status()?;
        let (left, right) = out.well_pair().expect("tunneling orbit");
        let stats = out.tunneling.expect("tunneling stats")?;
        println!(
            "E = 1{:+}i: {left} <-> {right}, tau {:.4} over {} cycles, drift {:.1e}",
            e2, stats.tunneling_time, stats.n_cycles, out.trajectory.stats.max_drift
        );
    }
    Ok(())
}
