//! The periodic lattice of wells where `ζ cosh 2z = iM`.
//!
//! Right wells sit at `x = +½ arsinh(M/ζ)`, `y = (4n+1)π/4`; left wells at
//! `x = -½ arsinh(M/ζ)`, `y = (4n-1)π/4`. Both columns have vertical period π.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// Side of the imaginary axis for a given real part; `x = 0` counts as right.
    pub fn of(x: f64) -> Self {
        if x < 0.0 {
            Side::Left
        } else {
            Side::Right
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Side::Left => -1.0,
            Side::Right => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Label of one well: which column and the lattice index `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WellIndex {
    pub side: Side,
    pub n: i64,
}

impl WellIndex {
    pub fn new(side: Side, n: i64) -> Self {
        Self { side, n }
    }

    pub fn left(n: i64) -> Self {
        Self::new(Side::Left, n)
    }

    pub fn right(n: i64) -> Self {
        Self::new(Side::Right, n)
    }
}

impl fmt::Display for WellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.side, self.n)
    }
}

/// Distance of either well column from the imaginary axis.
pub fn well_x(params: &SystemParams) -> f64 {
    0.5 * (params.m() / params.zeta).asinh()
}

fn column_offset(side: Side) -> f64 {
    side.sign() * FRAC_PI_4
}

/// `π/4 - FRAC_PI_4`, the part of π/4 a double drops.
const FRAC_PI_4_LO: f64 = 3.061616997868383e-17;

/// `y = (4n ± 1)·π/4`, rounded once from the two-part π/4 so far wells stay on the lattice.
pub fn well_center(idx: WellIndex, params: &SystemParams) -> Complex64 {
    let x = idx.side.sign() * well_x(params);
    let k = (4 * idx.n) as f64 + idx.side.sign();
    let y = k.mul_add(FRAC_PI_4, k * FRAC_PI_4_LO);
    Complex64::new(x, y)
}

/// Closest well in the `(x, y)` plane.
///
/// Ties go to the smaller `|n|`, then to the right column.
pub fn nearest_well(z: Complex64, params: &SystemParams) -> (WellIndex, f64) {
    let mut best: Option<(WellIndex, f64)> = None;
    for side in [Side::Right, Side::Left] {
        let base = ((z.im - column_offset(side)) / PI).floor() as i64;
        for n in [base, base + 1] {
            let idx = WellIndex::new(side, n);
            let d = (z - well_center(idx, params)).norm();
            best = match best {
                None => Some((idx, d)),
                Some((b, bd)) => {
                    let better = d < bd
                        || (d == bd
                            && (n.abs() < b.n.abs()
                                || (n.abs() == b.n.abs()
                                    && side == Side::Right
                                    && b.side == Side::Left)));
                    if better {
                        Some((idx, d))
                    } else {
                        Some((b, bd))
                    }
                }
            };
        }
    }
    best.expect("candidate set is never empty")
}

/// Closest well restricted to one column.
pub fn nearest_well_on_side(z: Complex64, side: Side, params: &SystemParams) -> (WellIndex, f64) {
    let n = ((z.im - column_offset(side)) / PI).round() as i64;
    let idx = WellIndex::new(side, n);
    (idx, (z - well_center(idx, params)).norm())
}
