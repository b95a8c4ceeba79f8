//! The complexified potential `V(z) = -(ζ cosh 2z - iM)²`, its derivative,
//! and the Hamiltonian `H = p² + V(z)` in units where `2m = ħ = 1`.
//!
//! Every function here is a pure function of its arguments.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coupling `ζ` and integer order `M` of the potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub zeta: f64,
    pub m_int: u32,
}

impl SystemParams {
    pub fn new(zeta: f64, m_int: u32) -> Result<Self> {
        if !(zeta.is_finite() && zeta > 0.0) {
            return Err(Error::InvalidParams(format!(
                "zeta must be > 0, got {zeta}"
            )));
        }
        if m_int < 1 {
            return Err(Error::InvalidParams("M must be >= 1".into()));
        }
        Ok(Self { zeta, m_int })
    }

    pub fn m(&self) -> f64 {
        f64::from(self.m_int)
    }
}

/// Real and imaginary parts of the complex energy `E = E₁ + iE₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyComponents {
    pub e1: f64,
    pub e2: f64,
}

/// `cosh(2z)` from its real decomposition `cosh 2x cos 2y + i sinh 2x sin 2y`.
#[inline]
pub(crate) fn cosh2(z: Complex64) -> Complex64 {
    let (x2, y2) = (2.0 * z.re, 2.0 * z.im);
    let (s, c) = y2.sin_cos();
    Complex64::new(x2.cosh() * c, x2.sinh() * s)
}

/// `sinh(2z)` from its real decomposition `sinh 2x cos 2y + i cosh 2x sin 2y`.
#[inline]
pub(crate) fn sinh2(z: Complex64) -> Complex64 {
    let (x2, y2) = (2.0 * z.re, 2.0 * z.im);
    let (s, c) = y2.sin_cos();
    Complex64::new(x2.sinh() * c, x2.cosh() * s)
}

/// The bracket `ζ cosh 2z - iM`; it vanishes at the well centers.
#[inline]
fn bracket(z: Complex64, params: &SystemParams) -> Complex64 {
    params.zeta * cosh2(z) - Complex64::new(0.0, params.m())
}

#[inline]
pub(crate) fn potential_unchecked(z: Complex64, params: &SystemParams) -> Complex64 {
    let b = bracket(z, params);
    -(b * b)
}

#[inline]
pub(crate) fn gradient_unchecked(z: Complex64, params: &SystemParams) -> Complex64 {
    -4.0 * params.zeta * sinh2(z) * bracket(z, params)
}

fn check_finite(z: Complex64, what: &'static str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// `V(z) = -(ζ cosh 2z - iM)²`.
pub fn potential(z: Complex64, params: &SystemParams) -> Result<Complex64> {
    check_finite(z, "z")?;
    Ok(potential_unchecked(z, params))
}

/// `dV/dz = -4ζ sinh(2z) (ζ cosh 2z - iM)`.
pub fn potential_gradient(z: Complex64, params: &SystemParams) -> Result<Complex64> {
    check_finite(z, "z")?;
    Ok(gradient_unchecked(z, params))
}

/// `H(z, p) = p² + V(z)`.
pub fn hamiltonian(z: Complex64, p: Complex64, params: &SystemParams) -> Result<Complex64> {
    check_finite(z, "z")?;
    check_finite(p, "p")?;
    Ok(p * p + potential_unchecked(z, params))
}

/// Splits the energy into `E₁ = p₁² - p₂² + V₁` and `E₂ = 2p₁p₂ + V₂`.
///
/// The result equals the real and imaginary parts of [`hamiltonian`] bit for bit.
pub fn energy_components(
    z: Complex64,
    p: Complex64,
    params: &SystemParams,
) -> Result<EnergyComponents> {
    check_finite(z, "z")?;
    check_finite(p, "p")?;
    let v = potential_unchecked(z, params);
    let (p1, p2) = (p.re, p.im);
    Ok(EnergyComponents {
        e1: (p1 * p1 - p2 * p2) + v.re,
        e2: (p1 * p2 + p2 * p1) + v.im,
    })
}

/// The Hermitian counterpart on the real line, `-(ζ cosh 2x - M)²`.
pub fn real_axis_hermitian_potential(x: f64, params: &SystemParams) -> f64 {
    let b = params.zeta * (2.0 * x).cosh() - params.m();
    -(b * b)
}
