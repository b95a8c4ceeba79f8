//! Sense of rotation while falling into and climbing out of each captured well.
//!
//! ```bash
//! cargo run --release --example spiral_chirality
//! ```

use num_complex::Complex64;
use qes_classical::analysis::{
    capture_spiral, detect_axis_crossings, dwell_segments, spiral_chirality,
};
use qes_classical::io::{simulate, RunConfig};
use qes_classical::SystemParams;

fn main() -> qes_classical::Result<()> {
    let params = SystemParams::new(0.1, 3)?;
    for e2 in [1.0, -1.0] {
        let out = simulate(&RunConfig::new(params, Complex64::new(1.0, e2)))?;
        let crossings = detect_axis_crossings(&out.trajectory);
        println!("E2 = {e2:+}");
        for seg in dwell_segments(&out.trajectory, &crossings, &params)
            .iter()
            .filter(|s| s.captured)
            .take(4)
        {
            let sp = capture_spiral(&out.trajectory, seg, &params);
            println!(
                "  {} t {:7.3}..{:7.3}: in {:?}, out {:?}",
                sp.well,
                seg.t_start,
                seg.t_end,
                spiral_chirality(&sp.inward, sp.center)?,
                spiral_chirality(&sp.outward, sp.center)?
            );
        }
    }
    Ok(())
}
