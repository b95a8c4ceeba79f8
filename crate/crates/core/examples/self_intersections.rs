//! Counts crossings of the path with itself over the first three tunneling cycles.
//!
//! ```bash
//! cargo run --release --example self_intersections
//! ```

use num_complex::Complex64;
use qes_classical::analysis::{detect_axis_crossings, dwell_segments, polyline_self_intersections};
use qes_classical::io::{simulate, RunConfig};
use qes_classical::SystemParams;

fn main() -> qes_classical::Result<()> {
    for (zeta, m) in [(0.1, 2), (0.1, 3), (1.0, 4)] {
        let params = SystemParams::new(zeta, m)?;
        let out = simulate(&RunConfig::new(params, Complex64::new(1.0, 1.0)))?;
        let traj = &out.trajectory;
        let crossings = detect_axis_crossings(traj);
        let segs = dwell_segments(traj, &crossings, &params);
        let Some(sixth) = segs.iter().filter(|s| s.captured).nth(5) else {
            println!("zeta={zeta} M={m}: fewer than three cycles");
            continue;
        };
        let pts: Vec<(f64, f64)> = traj.samples[..sixth.end]
            .iter()
            .map(|s| (s.z.re, s.z.im))
            .collect();
        println!(
            "zeta={zeta} M={m}: {} self-intersections up to t = {:.2}",
            polyline_self_intersections(&pts),
            sixth.t_end
        );
    }
    Ok(())
}
