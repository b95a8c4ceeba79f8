//! Adaptive integration of Hamilton's equations `ż = ∂H/∂p = 2p`,
//! `ṗ = -∂H/∂z = -V'(z)` in the complex plane.
//!
//! The stepper is the Dormand–Prince 5(4) embedded pair with PI step-size
//! control. Every accepted step is retained as a sample, and the complex
//! energy is checked against its initial value after each one.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{gradient_unchecked, hamiltonian, potential, SystemParams};
use crate::error::{Error, Result};

/// One point of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseState {
    pub t: f64,
    pub z: Complex64,
    pub p: Complex64,
}

impl PhaseState {
    pub fn new(t: f64, z: Complex64, p: Complex64) -> Self {
        Self { t, z, p }
    }

    fn is_finite(&self) -> bool {
        self.t.is_finite() && self.z.is_finite() && self.p.is_finite()
    }

    /// Euclidean distance between the `(z, p)` parts of two states.
    pub fn phase_distance(&self, other: &PhaseState) -> f64 {
        ((self.z - other.z).norm_sqr() + (self.p - other.p).norm_sqr()).sqrt()
    }
}

/// Sign choice for the initial momentum `p₀ = ±√(E - V(z₀))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[default]
    Principal,
    Negated,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Principal => "principal",
            Branch::Negated => "negated",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IntegratorConfig {
    pub dt_init: f64,
    /// Upper bound on the step size; keeps the sampled polyline dense.
    pub dt_max: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub t_max: f64,
    pub max_steps: usize,
    /// Relative energy drift `|H - E| / max(1, |E|)` that aborts the run.
    pub energy_drift_limit: f64,
    /// Relative energy error the step controller aims for over `[0, t_max]`.
    pub energy_tol: f64,
    /// Escape when `|Re z|` exceeds this.
    pub escape_radius: f64,
    /// Escape when `|Im z - Im z₀|` exceeds this; unlimited when `None`.
    pub escape_imag: Option<f64>,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            dt_init: 1e-3,
            dt_max: 1e-3,
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            t_max: 200.0,
            max_steps: 5_000_000,
            energy_drift_limit: 1e-8,
            energy_tol: 1e-8,
            escape_radius: 8.0,
            escape_imag: None,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("dt_init", self.dt_init),
            ("dt_max", self.dt_max),
            ("rel_tol", self.rel_tol),
            ("abs_tol", self.abs_tol),
            ("t_max", self.t_max),
            ("energy_drift_limit", self.energy_drift_limit),
            ("energy_tol", self.energy_tol),
            ("escape_radius", self.escape_radius),
        ];
        for (name, v) in positive {
            if v.is_nan() || v <= 0.0 {
                return Err(Error::InvalidConfig(format!("{name} must be > 0, got {v}")));
            }
        }
        if let Some(v) = self.escape_imag {
            if v.is_nan() || v <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "escape_imag must be > 0, got {v}"
                )));
            }
        }
        if self.max_steps < 1 {
            return Err(Error::InvalidConfig("max_steps must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    TimeLimit,
    StepLimit,
    Escaped,
    DriftExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct IntegrationStats {
    pub accepted: usize,
    pub rejected: usize,
    /// Largest relative energy drift over the retained samples.
    pub max_drift: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub params: SystemParams,
    /// Conserved energy `H(z₀, p₀)`.
    pub energy: Complex64,
    pub samples: Vec<PhaseState>,
    pub termination: Termination,
    pub stats: IntegrationStats,
}

impl Trajectory {
    pub fn initial(&self) -> &PhaseState {
        &self.samples[0]
    }

    pub fn last(&self) -> &PhaseState {
        self.samples
            .last()
            .expect("trajectory always holds its initial state")
    }

    pub fn duration(&self) -> f64 {
        self.last().t - self.initial().t
    }

    /// Relative drift `|H - E| / max(1, |E|)` at one sample.
    pub fn drift_at(&self, s: &PhaseState) -> f64 {
        relative_drift(s, self.energy, &self.params)
    }
}

fn relative_drift(s: &PhaseState, energy: Complex64, params: &SystemParams) -> f64 {
    let h = s.p * s.p + crate::dynamics::potential_unchecked(s.z, params);
    (h - energy).norm() / energy.norm().max(1.0)
}

/// `p₀ = ±√(E - V(z₀))` on the principal square-root branch.
pub fn initial_momentum(
    z0: Complex64,
    energy: Complex64,
    branch: Branch,
    params: &SystemParams,
) -> Result<Complex64> {
    if !energy.is_finite() {
        return Err(Error::NonFinite("energy"));
    }
    let p = (energy - potential(z0, params)?).sqrt();
    Ok(match branch {
        Branch::Principal => p,
        Branch::Negated => -p,
    })
}

/// Right-hand side of Hamilton's equations: `(dz/dt, dp/dt) = (2p, -V'(z))`.
pub fn derivative(state: &PhaseState, params: &SystemParams) -> Result<(Complex64, Complex64)> {
    if !state.is_finite() {
        return Err(Error::NonFinite("state"));
    }
    Ok(rhs(state.z, state.p, params))
}

#[inline]
fn rhs(z: Complex64, p: Complex64, params: &SystemParams) -> (Complex64, Complex64) {
    (2.0 * p, -gradient_unchecked(z, params))
}

// Dormand–Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

type Pair = [Complex64; 2];

#[inline]
fn f(y: &Pair, params: &SystemParams) -> Pair {
    let (dz, dp) = rhs(y[0], y[1], params);
    [dz, dp]
}

#[inline]
fn comb(y: &Pair, h: f64, terms: &[(f64, &Pair)]) -> Pair {
    let mut out = *y;
    for (c, k) in terms {
        out[0] += k[0] * (h * c);
        out[1] += k[1] * (h * c);
    }
    out
}

struct StepResult {
    /// `h·Σ bᵢkᵢ`, kept apart from `y` for compensated summation.
    inc: Pair,
    y: Pair,
    k7: Pair,
    err: f64,
}

/// Energy part of the error norm.
#[derive(Clone, Copy)]
struct EnergyControl {
    /// Allowed local energy error per unit time.
    rate: f64,
    energy: Complex64,
}

/// Roundoff multiple below which the energy error is not resolved.
const ENERGY_FLOOR_ULPS: f64 = 64.0;

fn dp_step(
    y: &Pair,
    k1: &Pair,
    h: f64,
    cfg: &IntegratorConfig,
    energy: Option<EnergyControl>,
    params: &SystemParams,
) -> StepResult {
    let k2 = f(&comb(y, h, &[(A21, k1)]), params);
    let k3 = f(&comb(y, h, &[(A31, k1), (A32, &k2)]), params);
    let k4 = f(&comb(y, h, &[(A41, k1), (A42, &k2), (A43, &k3)]), params);
    let k5 = f(
        &comb(y, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        params,
    );
    let k6 = f(
        &comb(
            y,
            h,
            &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        ),
        params,
    );
    let zero = [Complex64::new(0.0, 0.0); 2];
    let inc = comb(
        &zero,
        h,
        &[(A71, k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
    );
    let ynew = [y[0] + inc[0], y[1] + inc[1]];
    let k7 = f(&ynew, params);

    let mut sum = 0.0;
    let mut errs = [Complex64::new(0.0, 0.0); 2];
    for i in 0..2 {
        let e = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7) * h;
        errs[i] = e;
        for (ec, yo, yn) in [(e.re, y[i].re, ynew[i].re), (e.im, y[i].im, ynew[i].im)] {
            let sc = cfg.abs_tol + cfg.rel_tol * yo.abs().max(yn.abs());
            sum += (ec / sc) * (ec / sc);
        }
    }
    let mut err = (sum / 4.0).sqrt();
    if let Some(ec) = energy {
        // First-order energy error: dH = H_p·δp + H_z·δz = 2p·δp + V'·δz.
        let dh = k7[0] * errs[1] - k7[1] * errs[0];
        // Never ask for more than the roundoff level of H = p² + V itself.
        let p = ynew[1];
        let v = ec.energy - p * p;
        let floor = ENERGY_FLOOR_ULPS * f64::EPSILON * (p.norm_sqr() + v.norm() + 1.0);
        err = err.max(dh.norm() / (ec.rate * h).max(floor));
    }
    StepResult {
        inc,
        y: ynew,
        k7,
        err,
    }
}

/// Advances `state` by exactly `h` with a single Dormand–Prince step, no error control.
pub(crate) fn single_step(state: &PhaseState, h: f64, params: &SystemParams) -> PhaseState {
    let y = [state.z, state.p];
    let k1 = f(&y, params);
    let r = dp_step(&y, &k1, h, &IntegratorConfig::default(), None, params);
    PhaseState::new(state.t + h, r.y[0], r.y[1])
}

const SAFE: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;
const BETA: f64 = 0.04;

/// Integrates from `(z0, p0)` at `t = 0` until a termination condition fires.
pub fn integrate(
    z0: Complex64,
    p0: Complex64,
    config: &IntegratorConfig,
    params: &SystemParams,
) -> Result<Trajectory> {
    config.validate()?;
    let energy = hamiltonian(z0, p0, params)?;
    if !energy.is_finite() {
        return Err(Error::NonFinite("initial energy"));
    }

    // Spread the energy tolerance evenly over [0, t_max].
    let control = EnergyControl {
        rate: config.energy_tol * energy.norm().max(1.0) / config.t_max,
        energy,
    };
    // Compensated summation of the state updates.
    let mut comp: Pair = [Complex64::new(0.0, 0.0); 2];
    let expo1 = 0.2 - BETA * 0.75;
    let mut facold: f64 = 1e-4;
    let mut t = 0.0;
    let mut y: Pair = [z0, p0];
    let mut k1 = f(&y, params);
    let mut h = config.dt_init.min(config.dt_max).min(config.t_max);
    let mut samples = vec![PhaseState::new(t, z0, p0)];
    let mut stats = IntegrationStats::default();
    let mut reject_streak = false;

    let termination = loop {
        if t >= config.t_max {
            break Termination::TimeLimit;
        }
        if stats.accepted + stats.rejected >= config.max_steps {
            break Termination::StepLimit;
        }
        let last_step = t + h >= config.t_max;
        if last_step {
            h = config.t_max - t;
        }

        let step = dp_step(&y, &k1, h, config, Some(control), params);
        let err = step.err;
        if !err.is_finite() {
            // A blown-up stage: shrink hard and retry.
            stats.rejected += 1;
            h *= FAC_MIN;
            if h < 1e-300 {
                return Err(Error::NonFiniteState { t });
            }
            continue;
        }

        let fac11 = err.powf(expo1);
        if err <= 1.0 {
            let fac = (fac11 / facold.powf(BETA) / SAFE).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
            facold = err.max(1e-4);
            let t_new = if last_step { config.t_max } else { t + h };
            let mut y_new = y;
            let mut comp_new = comp;
            for i in 0..2 {
                let inc = step.inc[i] + comp[i];
                y_new[i] = y[i] + inc;
                comp_new[i] = (y[i] - y_new[i]) + inc;
            }
            let state = PhaseState::new(t_new, y_new[0], y_new[1]);
            if !state.is_finite() {
                return Err(Error::NonFiniteState { t: t_new });
            }
            stats.accepted += 1;

            let drift = relative_drift(&state, energy, params);
            if drift > config.energy_drift_limit {
                break Termination::DriftExceeded;
            }
            stats.max_drift = stats.max_drift.max(drift);

            t = t_new;
            y = y_new;
            comp = comp_new;
            k1 = step.k7;
            samples.push(state);

            let escaped = state.z.re.abs() > config.escape_radius
                || config
                    .escape_imag
                    .is_some_and(|lim| (state.z.im - z0.im).abs() > lim);
            if escaped {
                break Termination::Escaped;
            }

            let mut h_new = h / fac;
            if reject_streak {
                h_new = h_new.min(h);
            }
            reject_streak = false;
            h = h_new.min(config.dt_max);
        } else {
            stats.rejected += 1;
            reject_streak = true;
            h /= (fac11 / SAFE).min(1.0 / FAC_MIN);
        }
    };

    Ok(Trajectory {
        params: *params,
        energy,
        samples,
        termination,
        stats,
    })
}
