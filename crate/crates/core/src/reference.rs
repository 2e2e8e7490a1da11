//! Casimir pressure between two perfectly conducting plates. This is the
//! textbook electrodynamic result, not a prediction of the toy model; it is
//! only evaluated for orientation.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// SI reduced Planck constant, J s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// SI speed of light, m/s.
pub const C_SI: f64 = 2.997_924_58e8;

/// π²/240
pub fn coefficient() -> f64 {
    PI * PI / 240.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdealConductorReport {
    pub separation: f64,
    pub coefficient: f64,
    /// Force per unit plate area, negative for attraction.
    pub pressure: f64,
    /// Pressure times area, when an area was given.
    pub total_force: Option<f64>,
}

/// F/A = -(π²/240) ħc / y⁴.
pub fn ideal_conductor(y: f64, hbar: f64, c: f64, area: Option<f64>) -> Result<IdealConductorReport> {
    if !(y > 0.0) {
        return Err(Error::NonpositiveSeparation(y));
    }
    let coefficient = coefficient();
    let pressure = -coefficient * hbar * c / y.powi(4);
    Ok(IdealConductorReport { separation: y, coefficient, pressure, total_force: area.map(|a| a * pressure) })
}
