//! File writers. Numbers use Rust's shortest round-trip decimal form, so equal
//! runs give byte-identical files.

use std::io::Write;

use serde::Serialize;

use crate::analysis::{CrossingEvent, OrbitClass, OrbitKind, TunnelingStats};
use crate::dynamics::{energy_components, SystemParams};
use crate::error::Result;
use crate::integrator::{IntegrationStats, Termination, Trajectory};
use crate::spectrum::{PtPhaseReport, QesLevel};
use crate::wells::{well_center, Side, WellIndex};

use super::config::ConfigEcho;

/// Shortest round-trip form; exponent notation outside `[1e-4, 1e15)`.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub const TRAJECTORY_HEADER: &str = "t,re_z,im_z,re_p,im_p,e1_err,e2_err";
pub const SWEEP_HEADER: &str = "e2,tau,dwell_left,dwell_right,n_left,n_right,error";
pub const WELLS_HEADER: &str = "side,n,x,y";
pub const SPECTRUM_HEADER: &str = "label,re_E,im_E,is_real";

/// One row per retained sample; energy errors are against the initial components.
pub fn write_trajectory_csv<W: Write>(mut w: W, traj: &Trajectory) -> Result<()> {
    writeln!(w, "{TRAJECTORY_HEADER}")?;
    let (e1, e2) = (traj.energy.re, traj.energy.im);
    for s in &traj.samples {
        let e = energy_components(s.z, s.p, &traj.params)?;
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            fmt_num(s.t),
            fmt_num(s.z.re),
            fmt_num(s.z.im),
            fmt_num(s.p.re),
            fmt_num(s.p.im),
            fmt_num(e.e1 - e1),
            fmt_num(e.e2 - e2)
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CrossingLine {
    #[serde(rename = "type")]
    ty: &'static str,
    t: f64,
    y: f64,
    dir: &'static str,
}

#[derive(Serialize, Default)]
struct ClassificationLine {
    #[serde(rename = "type")]
    ty: &'static str,
    kind: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    period: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    anchor: Option<WellIndex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    side: Option<Side>,
    #[serde(skip_serializing_if = "Option::is_none")]
    left: Option<WellIndex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    right: Option<WellIndex>,
    n_crossings: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Crossing events in time order, then one classification line.
pub fn write_events_jsonl<W: Write>(
    mut w: W,
    crossings: &[CrossingEvent],
    class: &Result<OrbitClass>,
) -> Result<()> {
    for c in crossings {
        let line = CrossingLine {
            ty: "crossing",
            t: c.t_cross,
            y: c.y_at_cross,
            dir: c.direction.as_str(),
        };
        serde_json::to_writer(&mut w, &line)?;
        writeln!(w)?;
    }
    let mut line = ClassificationLine {
        ty: "classification",
        n_crossings: crossings.len(),
        ..Default::default()
    };
    match class {
        Ok(c) => {
            line.kind = Some(c.kind.name());
            match c.kind {
                OrbitKind::Closed { period, anchor } => {
                    line.period = Some(period);
                    line.anchor = Some(anchor);
                }
                OrbitKind::OpenEscape { side } => line.side = Some(side),
                OrbitKind::Tunneling { left, right } => {
                    line.left = Some(left);
                    line.right = Some(right);
                }
            }
        }
        Err(e) => line.error = Some(e.to_string()),
    }
    serde_json::to_writer(&mut w, &line)?;
    writeln!(w)?;
    Ok(())
}

/// Run summary written as pretty JSON.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub config: ConfigEcho,
    pub initial_momentum: String,
    pub termination: Termination,
    pub t_final: f64,
    pub samples: usize,
    pub integration: IntegrationStats,
    pub max_energy_drift: f64,
    pub n_crossings: usize,
    pub classification: Option<OrbitClass>,
    pub classification_error: Option<String>,
    pub well_pair: Option<WellPair>,
    pub tunneling: Option<TunnelingStats>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WellPair {
    pub left: i64,
    pub right: i64,
}

pub fn write_summary_json<W: Write>(mut w: W, summary: &RunSummary) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, summary)?;
    writeln!(w)?;
    Ok(())
}

/// One `sweep-e2` row. Numeric fields are empty when `error` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub e2: f64,
    pub stats: std::result::Result<TunnelingStats, String>,
}

pub fn write_sweep_csv<W: Write>(mut w: W, rows: &[SweepRow]) -> Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for r in rows {
        match &r.stats {
            Ok(s) => writeln!(
                w,
                "{},{},{},{},{},{},",
                fmt_num(r.e2),
                fmt_num(s.tunneling_time),
                fmt_num(s.dwell_left_mean),
                fmt_num(s.dwell_right_mean),
                s.n_left,
                s.n_right
            )?,
            Err(e) => writeln!(w, "{},,,,,,{}", fmt_num(r.e2), csv_field(e))?,
        }
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Left and right wells for `n` in `-n_max..=n_max`, left column first.
pub fn write_wells_csv<W: Write>(mut w: W, params: &SystemParams, n_max: i64) -> Result<()> {
    writeln!(w, "{WELLS_HEADER}")?;
    for side in [Side::Left, Side::Right] {
        for n in -n_max..=n_max {
            let c = well_center(WellIndex::new(side, n), params);
            writeln!(w, "{},{},{},{}", side, n, fmt_num(c.re), fmt_num(c.im))?;
        }
    }
    Ok(())
}

/// Levels as CSV, then a `# phase=...` comment line.
pub fn write_spectrum_csv<W: Write>(
    mut w: W,
    levels: &[QesLevel],
    phase: &PtPhaseReport,
) -> Result<()> {
    writeln!(w, "{SPECTRUM_HEADER}")?;
    for l in levels {
        writeln!(
            w,
            "{},{},{},{}",
            l.label,
            fmt_num(l.energy.re),
            fmt_num(l.energy.im),
            l.is_real
        )?;
    }
    let zc = phase
        .zeta_critical
        .map_or_else(|| "none".to_string(), |z| z.to_string());
    writeln!(w, "# phase={:?} zeta_critical={zc}", phase.phase)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Direction;
    use crate::error::Error;
    use crate::spectrum::{pt_phase, qes_levels};

    #[test]
    fn numbers_round_trip() {
        for x in [
            0.0,
            -0.0,
            1.5,
            2.220446049250313e-16,
            -3.5e-7,
            1e20,
            12345.678,
            1e-4,
        ] {
            assert_eq!(fmt_num(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
        assert_eq!(fmt_num(2.220446049250313e-16), "2.220446049250313e-16");
        assert_eq!(fmt_num(0.5), "0.5");
    }

    #[test]
    fn spectrum_table() {
        let mut buf = Vec::new();
        write_spectrum_csv(
            &mut buf,
            &qes_levels(2, 0.5).unwrap(),
            &pt_phase(2, 0.5).unwrap(),
        )
        .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "label,re_E,im_E,is_real\nE+,2.75,1,false\nE-,2.75,-1,false\n# phase=Broken zeta_critical=none\n"
        );
    }

    #[test]
    fn wells_table() {
        let params = SystemParams::new(0.1, 3).unwrap();
        let mut buf = Vec::new();
        write_wells_csv(&mut buf, &params, 1).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7);
        assert!(lines[1].starts_with("left,-1,-2.0473"));
        assert!(lines[5].starts_with("right,0,2.0473"));
    }

    #[test]
    fn events_lines() {
        let crossings = [CrossingEvent {
            t_cross: 1.5,
            y_at_cross: -0.25,
            direction: Direction::LeftToRight,
            sample_index: 3,
        }];
        let mut buf = Vec::new();
        let class = Err(Error::AmbiguousClassification("x".into()));
        write_events_jsonl(&mut buf, &crossings, &class).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            r#"{"type":"crossing","t":1.5,"y":-0.25,"dir":"LeftToRight"}"#
        );
        assert_eq!(
            lines.next().unwrap(),
            r#"{"type":"classification","kind":null,"n_crossings":1,"error":"ambiguous orbit classification: x"}"#
        );
    }

    #[test]
    fn sweep_error_rows_keep_going() {
        let rows = [SweepRow {
            e2: 0.5,
            stats: Err("bad, worse".into()),
        }];
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &rows).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "e2,tau,dwell_left,dwell_right,n_left,n_right,error\n0.5,,,,,,\"bad, worse\"\n"
        );
    }
}
