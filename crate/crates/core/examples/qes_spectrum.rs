//! Closed-form QES levels and the PT phase across ζ.
//!
//! ```bash
//! cargo run --example qes_spectrum
//! ```

use qes_classical::{pt_phase, qes_levels};

fn main() -> qes_classical::Result<()> {
    for m in 1..=4 {
        for zeta in [0.1, 0.5, 1.0] {
            let phase = pt_phase(m, zeta)?;
            let levels: Vec<String> = qes_levels(m, zeta)?
                .iter()
                .map(|l| format!("{}={:.4}", l.label, l.energy))
                .collect();
            println!(
                "M={m} zeta={zeta}: {:?}  {}",
                phase.phase,
                levels.join("  ")
            );
        }
    }
    Ok(())
}
