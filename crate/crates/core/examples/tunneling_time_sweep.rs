//! Tunneling time against the imaginary part of the energy; E₂·τ stays near 16.
//!
//! ```bash
//! cargo run --release --example tunneling_time_sweep
//! ```

use qes_classical::io::{sweep_e2, IntegratorOverrides};
use qes_classical::SystemParams;

fn main() -> qes_classical::Result<()> {
    let params = SystemParams::new(0.1, 3)?;
    let e2 = [0.5, 1.0, 2.0, 4.0, 6.7];
    let rows = sweep_e2(params, 1.0, &e2, &IntegratorOverrides::default())?;
    println!("{:>6} {:>10} {:>8}", "E2", "tau", "E2*tau");
    for r in rows {
        match r.stats {
            Ok(s) => println!(
                "{:>6} {:>10.4} {:>8.3}",
                r.e2,
                s.tunneling_time,
                r.e2 * s.tunneling_time
            ),
            Err(e) => println!("{:>6} failed: {e}", r.e2),
        }
    }
    Ok(())
}
