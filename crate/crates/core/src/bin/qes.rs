use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use qes_classical::io::config::{parse_well, IntegratorOverrides, RunConfigFile};
use qes_classical::io::output::{write_spectrum_csv, write_sweep_csv, write_wells_csv};
use qes_classical::io::{exit_code, simulate, sweep_e2, threshold};
use qes_classical::{pt_phase, qes_levels, Error, Result, SystemParams};

#[derive(Parser)]
#[command(
    name = "qes",
    version,
    about = "Complex-plane classical dynamics for V(z) = -(zeta cosh 2z - iM)^2"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Integrate one trajectory, classify it, and measure tunneling.
    Simulate(SimulateArgs),
    /// Tunneling time for each E2 at fixed E1 (origin start, principal branch).
    #[command(name = "sweep-e2")]
    SweepE2(SweepArgs),
    /// Closed-orbit boundary above a well at real energy.
    Threshold(ThresholdArgs),
    /// Well-lattice centers as CSV.
    Wells(WellsArgs),
    /// Closed-form QES levels and the PT phase.
    Spectrum(SpectrumArgs),
}

#[derive(Args, Default)]
struct IntegratorFlags {
    #[arg(long)]
    dt_init: Option<f64>,
    #[arg(long)]
    dt_max: Option<f64>,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    abs_tol: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    max_steps: Option<usize>,
    /// Abort when relative energy drift exceeds this.
    #[arg(long)]
    drift_limit: Option<f64>,
    /// Energy error targeted by step control.
    #[arg(long)]
    energy_tol: Option<f64>,
    #[arg(long)]
    escape_radius: Option<f64>,
    #[arg(long)]
    escape_imag: Option<f64>,
}

impl From<IntegratorFlags> for IntegratorOverrides {
    fn from(f: IntegratorFlags) -> Self {
        Self {
            dt_init: f.dt_init,
            dt_max: f.dt_max,
            rel_tol: f.rel_tol,
            abs_tol: f.abs_tol,
            t_max: f.t_max,
            max_steps: f.max_steps,
            energy_drift_limit: f.drift_limit,
            energy_tol: f.energy_tol,
            escape_radius: f.escape_radius,
            escape_imag: f.escape_imag,
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    /// JSON run file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    zeta: Option<f64>,
    #[arg(long = "M")]
    m: Option<u32>,
    /// Complex energy, e.g. 1+1i.
    #[arg(long = "e", allow_hyphen_values = true)]
    energy: Option<String>,
    /// origin | well:<left|right>,<n> | point:<x>,<y>
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    /// principal | negated
    #[arg(long)]
    branch: Option<String>,
    #[arg(long)]
    trajectory_out: Option<PathBuf>,
    #[arg(long)]
    events_out: Option<PathBuf>,
    #[arg(long)]
    summary_out: Option<PathBuf>,
    #[command(flatten)]
    integrator: IntegratorFlags,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    zeta: f64,
    #[arg(long = "M")]
    m: u32,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    e1: f64,
    /// Comma-separated E2 values.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    e2: Vec<f64>,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    integrator: IntegratorFlags,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    zeta: f64,
    #[arg(long = "M")]
    m: u32,
    /// Real energy.
    #[arg(long = "e", allow_hyphen_values = true)]
    energy: f64,
    /// <left|right>,<n>
    #[arg(long, allow_hyphen_values = true)]
    well: String,
    /// Offset known to give a closed orbit.
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    closed: f64,
    /// Offset known to give an escaping orbit.
    #[arg(long, default_value_t = 0.6, allow_hyphen_values = true)]
    open: f64,
    #[command(flatten)]
    integrator: IntegratorFlags,
}

#[derive(Args)]
struct WellsArgs {
    #[arg(long)]
    zeta: f64,
    #[arg(long = "M")]
    m: u32,
    /// Largest |n| listed.
    #[arg(long, default_value_t = 10)]
    n_max: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    zeta: f64,
    #[arg(long = "M")]
    m: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn sink(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn run_simulate(a: SimulateArgs) -> Result<()> {
    let flags = RunConfigFile {
        zeta: a.zeta,
        m_int: a.m,
        energy: a.energy,
        start: a.start,
        branch: a.branch,
        integrator: a.integrator.into(),
        trajectory_out: a.trajectory_out,
        events_out: a.events_out,
        summary_out: a.summary_out,
    };
    let file = match &a.config {
        Some(p) => RunConfigFile::load(p)?,
        None => RunConfigFile::default(),
    };
    let cfg = flags.over(file).resolve()?;
    let out = simulate(&cfg)?;
    out.write_outputs()?;
    let mut w = io::stdout().lock();
    serde_json::to_writer_pretty(&mut w, &out.summary())?;
    writeln!(w)?;
    out.status()
}

fn run_sweep(a: SweepArgs) -> Result<()> {
    let params = SystemParams::new(a.zeta, a.m)?;
    let rows = sweep_e2(params, a.e1, &a.e2, &a.integrator.into())?;
    let mut w = sink(a.out.as_ref())?;
    write_sweep_csv(&mut w, &rows)?;
    w.flush()?;
    Ok(())
}

fn run_threshold(a: ThresholdArgs) -> Result<()> {
    let params = SystemParams::new(a.zeta, a.m)?;
    let well = parse_well(&a.well)?;
    let overrides: IntegratorOverrides = a.integrator.into();
    let cfg = overrides.resolve(Complex64::new(a.energy, 0.0));
    cfg.validate()?;
    let r = threshold(params, a.energy, well, &cfg, (a.closed, a.open))?;
    println!("well={} energy={}", r.well, r.energy);
    println!("critical_offset={}", r.critical_offset);
    println!("closed_offset={}", r.closed_offset);
    println!("open_offset={}", r.open_offset);
    println!("probes={}", r.probes);
    Ok(())
}

fn run_wells(a: WellsArgs) -> Result<()> {
    let params = SystemParams::new(a.zeta, a.m)?;
    if a.n_max < 0 {
        return Err(Error::InvalidConfig("n_max must be >= 0".into()));
    }
    let mut w = sink(a.out.as_ref())?;
    write_wells_csv(&mut w, &params, a.n_max)?;
    w.flush()?;
    Ok(())
}

fn run_spectrum(a: SpectrumArgs) -> Result<()> {
    let levels = qes_levels(a.m, a.zeta)?;
    let phase = pt_phase(a.m, a.zeta)?;
    let mut w = sink(a.out.as_ref())?;
    write_spectrum_csv(&mut w, &levels, &phase)?;
    w.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.cmd {
        Cmd::Simulate(a) => run_simulate(a),
        Cmd::SweepE2(a) => run_sweep(a),
        Cmd::Threshold(a) => run_threshold(a),
        Cmd::Wells(a) => run_wells(a),
        Cmd::Spectrum(a) => run_spectrum(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qes: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
