//! A JSON run file resolved to a run, with trajectory, events and summary written out.
//!
//! ```bash
//! cargo run --release --example run_files
//! ```

use std::fs;

use qes_classical::io::{simulate, RunConfigFile};

fn main() -> qes_classical::Result<()> {
    let dir = std::env::temp_dir().join("qes-run-files");
    fs::create_dir_all(&dir).map_err(|e| qes_classical::Error::Io(e.to_string()))?;
    let json = format!(
        r#"{{
  "zeta": 0.1, "M": 3, "energy": "1+2i", "start": "origin", "branch": "principal",
  "integrator": {{ "t_max": 60 }},
  "trajectory_out": "{0}/trajectory.csv",
  "events_out": "{0}/events.jsonl",
  "summary_out": "{0}/summary.json"
}}"#,
        dir.display()
    );
    let path = dir.join("run.json");
    fs::write(&path, json).map_err(|e| qes_classical::Error::Io(e.to_string()))?;

    let cfg = RunConfigFile::load(&path)?.resolve()?;
    let out = simulate(&cfg)?;
    out.write_outputs()?;
    let s = out.summary();
    println!(
        "{} samples, {} crossings, written to {}",
        s.samples,
        s.n_crossings,
        dir.display()
    );
    if let Some(t) = s.tunneling {
        println!("tau {:.4}", t.tunneling_time);
    }
    Ok(())
}
