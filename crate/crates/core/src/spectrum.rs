//! Closed-form quasi-exactly-solvable levels for `M = 1..=4` and the PT phase.
//!
//! | M | levels |
//! |---|--------|
//! | 1 | `1 - ζ²` |
//! | 2 | `3 - ζ² ± 2iζ` |
//! | 3 | `7 - ζ² ± √(1 - 4ζ²)`, `5 - ζ²` |
//! | 4 | `11 - ζ² - 2iζ ± √(1 - iζ - ζ²)` |

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `|Im E|` at or below which a level counts as real.
pub const REAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QesLevel {
    pub m_int: u32,
    pub label: String,
    pub energy: Complex64,
    pub is_real: bool,
}

impl QesLevel {
    fn new(m_int: u32, label: &str, energy: Complex64) -> Self {
        Self {
            m_int,
            label: label.to_string(),
            energy,
            is_real: energy.im.abs() <= REAL_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PtPhase {
    Unbroken,
    Broken,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PtPhaseReport {
    pub phase: PtPhase,
    pub zeta_critical: Option<f64>,
    /// Fixed point `a` of the parity map `x → a - x`, here `iπ/2`.
    pub parity_point: Complex64,
}

fn check(m_int: u32, zeta: f64) -> Result<()> {
    if !(1..=4).contains(&m_int) {
        return Err(Error::UnsupportedOrder(m_int));
    }
    if !(zeta.is_finite() && zeta > 0.0) {
        return Err(Error::InvalidParams(format!(
            "zeta must be > 0, got {zeta}"
        )));
    }
    Ok(())
}

pub fn qes_levels(m_int: u32, zeta: f64) -> Result<Vec<QesLevel>> {
    check(m_int, zeta)?;
    let z2 = zeta * zeta;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let levels = match m_int {
        1 => vec![QesLevel::new(1, "E", c(1.0 - z2, 0.0))],
        2 => vec![
            QesLevel::new(2, "E+", c(3.0 - z2, 2.0 * zeta)),
            QesLevel::new(2, "E-", c(3.0 - z2, -2.0 * zeta)),
        ],
        3 => {
            let root = c(1.0 - 4.0 * z2, 0.0).sqrt();
            let base = c(7.0 - z2, 0.0);
            vec![
                QesLevel::new(3, "E+", base + root),
                QesLevel::new(3, "E-", base - root),
                QesLevel::new(3, "E0", c(5.0 - z2, 0.0)),
            ]
        }
        4 => {
            let root = c(1.0 - z2, -zeta).sqrt();
            let base = c(11.0 - z2, -2.0 * zeta);
            vec![
                QesLevel::new(4, "E1+", base + root),
                QesLevel::new(4, "E1-", base - root),
            ]
        }
        _ => unreachable!("checked above"),
    };
    Ok(levels)
}

/// Even `M` is always broken. `M = 3` is unbroken up to `ζ_c = ½`.
/// `M = 1` has a single real level and no finite `ζ_c`.
pub fn pt_phase(m_int: u32, zeta: f64) -> Result<PtPhaseReport> {
    check(m_int, zeta)?;
    let (phase, zeta_critical) = match m_int {
        1 => (PtPhase::Unbroken, None),
        3 => {
            let zc = 0.5;
            let phase = if zeta <= zc {
                PtPhase::Unbroken
            } else {
                PtPhase::Broken
            };
            (phase, Some(zc))
        }
        _ => (PtPhase::Broken, None),
    };
    Ok(PtPhaseReport {
        phase,
        zeta_critical,
        parity_point: Complex64::new(0.0, FRAC_PI_2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m3_small_zeta_all_real() {
        let l = qes_levels(3, 0.1).unwrap();
        let s = 0.96f64.sqrt();
        assert!((l[0].energy.re - (6.99 + s)).abs() < 1e-14);
        assert!((l[1].energy.re - (6.99 - s)).abs() < 1e-14);
        assert!((l[0].energy.re - 7.9698).abs() < 1e-4);
        assert!((l[1].energy.re - 6.0102).abs() < 1e-4);
        assert!((l[2].energy.re - 4.99).abs() < 1e-14);
        assert!(l.iter().all(|x| x.is_real));
    }

    #[test]
    fn m2_conjugate_pair() {
        let l = qes_levels(2, 0.1).unwrap();
        assert!((l[0].energy - Complex64::new(2.99, 0.2)).norm() < 1e-14);
        assert_eq!(l[1].energy, l[0].energy.conj());
        assert!(l.iter().all(|x| !x.is_real));
    }

    #[test]
    fn m1_single_real() {
        for zeta in [0.1, 1.0, 3.0] {
            let l = qes_levels(1, zeta).unwrap();
            assert_eq!(l.len(), 1);
            assert!(l[0].is_real);
            assert_eq!(l[0].energy.re, 1.0 - zeta * zeta);
        }
    }

    #[test]
    fn unsupported_orders() {
        assert_eq!(qes_levels(5, 0.1), Err(Error::UnsupportedOrder(5)));
        assert_eq!(qes_levels(0, 0.1), Err(Error::UnsupportedOrder(0)));
        assert!(pt_phase(6, 0.1).is_err());
        assert!(qes_levels(3, -0.1).is_err());
    }

    #[test]
    fn phases() {
        assert_eq!(pt_phase(2, 0.1).unwrap().phase, PtPhase::Broken);
        let r = pt_phase(3, 0.1).unwrap();
        assert_eq!(r.phase, PtPhase::Unbroken);
        assert_eq!(r.zeta_critical, Some(0.5));
        assert_eq!(pt_phase(3, 1.0).unwrap().phase, PtPhase::Broken);
        let r = pt_phase(1, 2.0).unwrap();
        assert_eq!(r.phase, PtPhase::Unbroken);
        assert_eq!(r.zeta_critical, None);
        assert_eq!(r.parity_point, Complex64::new(0.0, FRAC_PI_2));
    }

    #[test]
    fn m3_at_critical_coupling_is_real() {
        let l = qes_levels(3, 0.5).unwrap();
        assert!(l.iter().all(|x| x.is_real));
        assert_eq!(pt_phase(3, 0.5).unwrap().phase, PtPhase::Unbroken);
    }
}
