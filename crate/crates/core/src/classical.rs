//! Classical solutions of the three-degree-of-freedom model.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{normal_coordinates, Spectrum, ValidatedModel};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct PhaseState {
    pub t: f64,
    pub x1: f64,
    pub x2: f64,
    pub y: f64,
    pub p1: f64,
    pub p2: f64,
    pub p_y: f64,
}

/// Real amplitudes and phases of the two normal modes.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModeAmplitudes {
    pub c_plus: f64,
    pub c_minus: f64,
    pub phi_plus: f64,
    pub phi_minus: f64,
}

/// Where a trajectory left the coupling domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DomainExit {
    pub t: f64,
    pub y: f64,
}

impl From<DomainExit> for Error {
    fn from(e: DomainExit) -> Self {
        Error::DomainExit { t: e.t, y: e.y }
    }
}

/// Fixed-y superposition of the symmetric (x1 = x2) and antisymmetric
/// (x1 = -x2) modes.
pub fn normal_mode_solution(spectrum: &Spectrum, amps: &ModeAmplitudes, t: f64) -> (f64, f64) {
    let plus = amps.c_plus * (spectrum.omega_plus * t + amps.phi_plus).cos();
    let minus = amps.c_minus * (spectrum.omega_minus * t + amps.phi_minus).cos();
    (plus + minus, plus - minus)
}

/// F = -∂H/∂y = -g'(y) x1 x2.
pub fn classical_force(model: &ValidatedModel, state: &PhaseState) -> Result<f64> {
    Ok(-model.g_prime(state.y)? * state.x1 * state.x2)
}

/// The same force written in normal coordinates, -g'(y)(x₊² - x₋²)/2.
pub fn classical_force_normal(model: &ValidatedModel, state: &PhaseState) -> Result<f64> {
    let (xp, xm) = normal_coordinates(state.x1, state.x2);
    Ok(-model.g_prime(state.y)? * (xp * xp - xm * xm) / 2.0)
}

/// Total classical energy H(x, p, y, p_y).
pub fn energy(model: &ValidatedModel, s: &PhaseState) -> Result<f64> {
    let m = model.mass();
    let k = model.stiffness();
    let g = model.g(s.y)?;
    Ok((s.p1 * s.p1 + s.p2 * s.p2) / (2.0 * m)
        + k * (s.x1 * s.x1 + s.x2 * s.x2) / 2.0
        + s.p_y * s.p_y / (2.0 * model.slow_mass())
        + g * s.x1 * s.x2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalTrajectory {
    pub states: Vec<PhaseState>,
    /// Set when integration stopped because y left the coupling domain.
    pub domain_exit: Option<DomainExit>,
}

impl ClassicalTrajectory {
    /// Largest |H(t) - H(0)| / |H(0)| along the trajectory.
    pub fn max_energy_drift(&self, model: &ValidatedModel) -> Result<f64> {
        let first = self.states.first().ok_or(Error::EmptyTrajectory)?;
        let e0 = energy(model, first)?;
        let mut worst: f64 = 0.0;
        for s in &self.states {
            worst = worst.max((energy(model, s)? - e0).abs() / e0.abs());
        }
        Ok(worst)
    }
}

// Sixth-order Yoshida composition (solution A) of the kick-drift-kick step.
const YOSHIDA6_W1: f64 = -1.177_679_984_178_87;
const YOSHIDA6_W2: f64 = 0.235_573_213_359_357;
const YOSHIDA6_W3: f64 = 0.784_513_610_477_560;

fn yoshida6_weights() -> [f64; 7] {
    let w0 = 1.0 - 2.0 * (YOSHIDA6_W1 + YOSHIDA6_W2 + YOSHIDA6_W3);
    [YOSHIDA6_W3, YOSHIDA6_W2, YOSHIDA6_W1, w0, YOSHIDA6_W1, YOSHIDA6_W2, YOSHIDA6_W3]
}

struct Forces {
    f1: f64,
    f2: f64,
    fy: f64,
}

fn forces(model: &ValidatedModel, s: &PhaseState) -> Forces {
    let k = model.stiffness();
    let c = model.coupling();
    let g = c.value_unchecked(s.y);
    let dg = c.derivative_unchecked(s.y);
    Forces { f1: -k * s.x1 - g * s.x2, f2: -k * s.x2 - g * s.x1, fy: -dg * s.x1 * s.x2 }
}

/// Integrates Hamilton's equations for the full model with a symplectic
/// composition of leapfrog steps. One state is recorded per step of `dt`.
///
/// Leaving the coupling domain stops the run; the states up to the last
/// complete step are returned together with [`ClassicalTrajectory::domain_exit`].
pub fn evolve_classical(
    model: &ValidatedModel,
    initial: PhaseState,
    dt: f64,
    t_max: f64,
) -> Result<ClassicalTrajectory> {
    if !(dt > 0.0) {
        return Err(Error::NonpositiveParameter { name: "dt", value: dt });
    }
    if !(t_max > 0.0) {
        return Err(Error::NonpositiveParameter { name: "t_max", value: t_max });
    }
    let coupling = model.coupling();
    if !coupling.contains(initial.y) {
        return Err(Error::Domain { y: initial.y, y_min: coupling.y_min(), y_max: coupling.y_max() });
    }

    let m = model.mass();
    let big_m = model.slow_mass();
    let weights = yoshida6_weights();
    let n_steps = (t_max / dt).round() as usize;

    let mut states = Vec::with_capacity(n_steps + 1);
    states.push(initial);
    let mut s = initial;
    for step in 1..=n_steps {
        let mut f = forces(model, &s);
        for w in weights {
            let h = w * dt;
            s.p1 += 0.5 * h * f.f1;
            s.p2 += 0.5 * h * f.f2;
            s.p_y += 0.5 * h * f.fy;
            s.x1 += h * s.p1 / m;
            s.x2 += h * s.p2 / m;
            s.y += h * s.p_y / big_m;
            if !coupling.contains(s.y) {
                let exit = DomainExit { t: (step - 1) as f64 * dt + h, y: s.y };
                return Ok(ClassicalTrajectory { states, domain_exit: Some(exit) });
            }
            f = forces(model, &s);
            s.p1 += 0.5 * h * f.f1;
            s.p2 += 0.5 * h * f.f2;
            s.p_y += 0.5 * h * f.fy;
        }
        s.t = initial.t + step as f64 * dt;
        states.push(s);
    }
    Ok(ClassicalTrajectory { states, domain_exit: None })
}
