//! Semiclassical motion of the slow coordinate: M ÿ = F(y), with the fast
//! pair held in the interacting vacuum at the instantaneous y.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::classical::DomainExit;
use crate::error::{Error, Result};
use crate::fock::{oracle_force, TruncatedBasis};
use crate::model::ValidatedModel;
use crate::quantum::{casimir_force, lifshitz_force, vacuum_energy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ForceRoute {
    /// -dE_vac/dy in closed form
    #[default]
    Casimir,
    /// -g'(y)⟨x1x2⟩ from the closed-form fluctuations
    Lifshitz,
    /// -g'(y)⟨x1x2⟩ from a truncated-Fock diagonalization at every step
    Oracle,
}

fn default_oracle_n_max() -> usize {
    40
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DynamicsConfig {
    pub y0: f64,
    #[serde(default)]
    pub v0: f64,
    pub dt: f64,
    pub t_max: f64,
    #[serde(default)]
    pub force_route: ForceRoute,
    /// Fock cutoff for the oracle route.
    #[serde(default = "default_oracle_n_max")]
    pub oracle_n_max: usize,
    /// Wall-clock budget for the oracle route, in seconds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_budget_s: Option<f64>,
}

impl DynamicsConfig {
    pub fn new(y0: f64, v0: f64, dt: f64, t_max: f64, force_route: ForceRoute) -> Self {
        Self { y0, v0, dt, t_max, force_route, oracle_n_max: default_oracle_n_max(), oracle_budget_s: None }
    }

    pub fn steps(&self) -> usize {
        (self.t_max / self.dt).round() as usize
    }

    pub fn validate(&self, model: &ValidatedModel) -> Result<()> {
        if !(self.dt > 0.0) {
            return Err(Error::NonpositiveParameter { name: "dt", value: self.dt });
        }
        if !(self.t_max > 0.0) {
            return Err(Error::NonpositiveParameter { name: "t_max", value: self.t_max });
        }
        let c = model.coupling();
        if !c.contains(self.y0) {
            return Err(Error::Domain { y: self.y0, y_min: c.y_min(), y_max: c.y_max() });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryRow {
    pub t: f64,
    pub y: f64,
    pub p_y: f64,
    #[serde(rename = "F")]
    pub force: f64,
    #[serde(rename = "E_vac")]
    pub e_vac: f64,
    #[serde(rename = "E_total")]
    pub e_total: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub rows: Vec<TrajectoryRow>,
    pub domain_exit: Option<DomainExit>,
}

struct ForceField<'a> {
    model: &'a ValidatedModel,
    route: ForceRoute,
    basis: Option<TruncatedBasis>,
}

impl ForceField<'_> {
    fn at(&self, y: f64) -> Result<f64> {
        match self.route {
            ForceRoute::Casimir => casimir_force(self.model, y),
            ForceRoute::Lifshitz => lifshitz_force(self.model, y),
            ForceRoute::Oracle => oracle_force(self.model, y, self.basis.expect("oracle basis")),
        }
    }
}

fn row(model: &ValidatedModel, t: f64, y: f64, p_y: f64, force: f64) -> Result<TrajectoryRow> {
    let e_vac = vacuum_energy(model, y)?;
    Ok(TrajectoryRow { t, y, p_y, force, e_vac, e_total: p_y * p_y / (2.0 * model.slow_mass()) + e_vac })
}

/// Kick-drift-kick leapfrog for M ÿ = F(y), one row per step. The force at
/// the new position is reused as the next step's opening kick, so each step
/// costs one force evaluation.
pub fn evolve(model: &ValidatedModel, config: &DynamicsConfig) -> Result<Trajectory> {
    config.validate(model)?;
    let basis = match config.force_route {
        ForceRoute::Oracle => Some(TruncatedBasis::new(config.oracle_n_max)?),
        _ => None,
    };
    let field = ForceField { model, route: config.force_route, basis };
    let big_m = model.slow_mass();
    let steps = config.steps();
    let coupling = model.coupling();

    let mut y = config.y0;
    let mut p = big_m * config.v0;
    let started = Instant::now();
    let mut force = field.at(y)?;
    if let (ForceRoute::Oracle, Some(budget_s)) = (config.force_route, config.oracle_budget_s) {
        let projected_s = started.elapsed().as_secs_f64() * (steps + 1) as f64;
        if projected_s > budget_s {
            return Err(Error::OracleTooSlow { projected_s, budget_s });
        }
    }

    let mut rows = Vec::with_capacity(steps + 1);
    rows.push(row(model, 0.0, y, p, force)?);
    for step in 1..=steps {
        let t = step as f64 * config.dt;
        p += 0.5 * config.dt * force;
        y += config.dt * p / big_m;
        if !coupling.contains(y) {
            return Ok(Trajectory { rows, domain_exit: Some(DomainExit { t, y }) });
        }
        force = field.at(y)?;
        p += 0.5 * config.dt * force;
        rows.push(row(model, t, y, p, force)?);
    }
    Ok(Trajectory { rows, domain_exit: None })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyAudit {
    pub max_rel_drift: f64,
    /// |E_total(t) - E_total(0)| / |E_total(0)| per row
    pub drift_series: Vec<f64>,
}

pub fn energy_audit(trajectory: &Trajectory) -> Result<EnergyAudit> {
    let e0 = trajectory.rows.first().ok_or(Error::EmptyTrajectory)?.e_total;
    let drift_series: Vec<f64> = trajectory.rows.iter().map(|r| (r.e_total - e0).abs() / e0.abs()).collect();
    let max_rel_drift = drift_series.iter().copied().fold(0.0, f64::max);
    Ok(EnergyAudit { max_rel_drift, drift_series })
}
