use std::path::PathBuf;

use serde::Serialize;

use super::config::{OracleConfig, RunConfig};
use super::output::{write_json, write_table, Cell, Table};
use crate::classical::{energy, evolve_classical, ClassicalTrajectory, DomainExit, PhaseState};
use crate::dynamics::{energy_audit, evolve, Trajectory};
use crate::error::{Error, Result};
use crate::fock::{
    ground_state_structure_checks, oracle_force, oracle_observables, verify_annihilation, TruncatedBasis,
};
use crate::model::ValidatedModel;
use crate::quantum::{
    bogoliubov_coefficients, casimir_force, finite_difference_force, lifshitz_force, mean_free_quanta,
    squeezed_vacuum_expansion, vacuum_energy, vacuum_fluctuations, Branch,
};
use crate::reference::{ideal_conductor, IdealConductorReport};

/// Annihilation residuals below this are treated as rounding noise.
pub const RESIDUAL_FLOOR: f64 = 1e-15;
/// Allowed relative mismatch between the measured residual decay and |β/α|.
pub const RATIO_TOLERANCE: f64 = 0.05;
/// Exchange-symmetry bound on ground-state amplitudes.
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;
/// Bound on ground-state weight in the odd n + n' sector.
pub const ODD_PARITY_TOLERANCE: f64 = 1e-20;

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub message: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(files: Vec<PathBuf>, message: String) -> Self {
        Self { files, message, exit_code: 0 }
    }
}

/// 2 for configuration problems, 3 for domain problems, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_)
        | Error::NonpositiveParameter { .. }
        | Error::ConstraintViolation(_)
        | Error::NonpositiveSeparation(_) => 2,
        Error::Domain { .. } | Error::DomainExit { .. } => 3,
        _ => 1,
    }
}

/// Finite-difference step as a fraction of the coupling length λ.
pub const FD_STEP: f64 = 1e-4;

pub fn spectrum_table(model: &ValidatedModel, ys: &[f64]) -> Result<Table> {
    let mut t = Table::new(vec!["y", "g", "omega", "omega_plus", "omega_minus"]);
    for &y in ys {
        let s = model.spectrum(y)?;
        t.push(vec![y.into(), model.g(y)?.into(), s.omega.into(), s.omega_plus.into(), s.omega_minus.into()]);
    }
    Ok(t)
}

pub fn force_curve_table(model: &ValidatedModel, ys: &[f64], oracle: Option<TruncatedBasis>) -> Result<Table> {
    let mut header = vec!["y", "E_vac", "F_casimir", "F_lifshitz", "F_finite_diff"];
    if oracle.is_some() {
        header.push("F_oracle");
    }
    let h = FD_STEP * model.coupling().lambda;
    let mut t = Table::new(header);
    for &y in ys {
        let mut row: Vec<Cell> = vec![
            y.into(),
            vacuum_energy(model, y)?.into(),
            casimir_force(model, y)?.into(),
            lifshitz_force(model, y)?.into(),
            finite_difference_force(model, y, h)?.into(),
        ];
        if let Some(basis) = oracle {
            row.push(oracle_force(model, y, basis)?.into());
        }
        t.push(row);
    }
    Ok(t)
}

pub fn vacuum_content_table(model: &ValidatedModel, ys: &[f64], branch: Branch) -> Result<Table> {
    let mut t = Table::new(vec!["y", "beta_1p", "beta_1m", "N_mean", "c0"]);
    for &y in ys {
        let c = bogoliubov_coefficients(model, y)?;
        let (n1, _) = mean_free_quanta(&c);
        let e = squeezed_vacuum_expansion(&c, branch, 0)?;
        t.push(vec![y.into(), c.beta_1p.into(), c.beta_1m.into(), n1.into(), e.c0.into()]);
    }
    Ok(t)
}

/// Rows (n, c_n, c_n²) for n = 0..=n_max followed by a `tail` row carrying
/// the summed weight of all omitted pairs.
pub fn pair_distribution_table(model: &ValidatedModel, y: f64, branch: Branch, n_max: usize) -> Result<Table> {
    let e = squeezed_vacuum_expansion(&bogoliubov_coefficients(model, y)?, branch, n_max)?;
    let mut t = Table::new(vec!["n", "c_n", "c_n_squared"]);
    for (n, c) in e.coefficients.iter().enumerate() {
        t.push(vec![n.into(), (*c).into(), (c * c).into()]);
    }
    t.push(vec![Cell::Text("tail".into()), Cell::Empty, e.tail_mass().into()]);
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualPoint {
    #[serde(rename = "N_max")]
    pub n_max: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub y: f64,
    pub n_max: usize,
    pub convergence_tol: f64,
    #[serde(rename = "E0_analytic")]
    pub e0_analytic: f64,
    #[serde(rename = "E0_oracle")]
    pub e0_oracle: f64,
    pub rel_err_energy: f64,
    pub rel_err_x1x2: f64,
    #[serde(rename = "rel_err_N")]
    pub rel_err_n: f64,
    pub rel_err_force: f64,
    pub annihilation_residuals: Vec<ResidualPoint>,
    pub annihilation_ratio_expected: f64,
    pub annihilation_ratio_measured: Option<f64>,
    pub symmetry_violation: f64,
    pub odd_parity_mass: f64,
    pub single_branch_deviation: f64,
    pub pass: bool,
}

/// |a - b| / |a|, or |a - b| when the reference value a is zero.
pub fn relative_error(reference: f64, value: f64) -> f64 {
    let diff = (value - reference).abs();
    if reference == 0.0 {
        diff
    } else {
        diff / reference.abs()
    }
}

/// Per-step decay of the residuals between the first and last order, or
/// `None` when the last residual is indistinguishable from rounding.
pub fn measured_decay_ratio(points: &[ResidualPoint]) -> Option<f64> {
    let (first, last) = (points.first()?, points.last()?);
    if last.n_max <= first.n_max || last.residual <= RESIDUAL_FLOOR {
        return None;
    }
    Some((last.residual / first.residual).powf(1.0 / (last.n_max - first.n_max) as f64))
}

pub fn oracle_check(model: &ValidatedModel, y: f64, cfg: &OracleConfig) -> Result<OracleReport> {
    let basis = TruncatedBasis::new(cfg.n_max)?;
    let analytic = vacuum_fluctuations(model, y)?;
    let (oracle, gs) = oracle_observables(model, y, basis)?;
    let analytic_force = lifshitz_force(model, y)?;

    let coeffs = bogoliubov_coefficients(model, y)?;
    let mut orders = cfg.annihilation_orders.clone();
    orders.sort_unstable();
    orders.dedup();
    let residual_basis = TruncatedBasis::new(orders.last().copied().unwrap_or(0) + 2)?;
    let mut annihilation_residuals = Vec::with_capacity(orders.len());
    for &order in &orders {
        let e = squeezed_vacuum_expansion(&coeffs, Branch::Plus, order)?;
        annihilation_residuals.push(ResidualPoint { n_max: order, residual: verify_annihilation(&e, residual_basis)? });
    }
    let expected_ratio = (coeffs.beta_1p / coeffs.alpha_1p).abs();
    let measured = measured_decay_ratio(&annihilation_residuals);
    let annihilation_ok = match measured {
        Some(r) => ((r - expected_ratio) / expected_ratio).abs() < RATIO_TOLERANCE,
        None => annihilation_residuals.iter().all(|p| p.residual <= RESIDUAL_FLOOR),
    };

    let structure = ground_state_structure_checks(&gs, coeffs.beta_1p / coeffs.alpha_1p, 8);
    let rel_err_energy = relative_error(analytic.e_vac, oracle.observables.e_vac);
    let rel_err_x1x2 = relative_error(analytic.x1x2, oracle.observables.x1x2);
    let rel_err_n =
        relative_error(analytic.n1, oracle.observables.n1).max(relative_error(analytic.n2, oracle.observables.n2));
    let rel_err_force = relative_error(analytic_force, oracle.force);
    let tol = cfg.convergence_tol;
    let pass = rel_err_energy < tol
        && rel_err_x1x2 < tol
        && rel_err_n < tol
        && rel_err_force < tol
        && annihilation_ok
        && structure.symmetry_violation < SYMMETRY_TOLERANCE
        && structure.odd_parity_mass < ODD_PARITY_TOLERANCE;

    Ok(OracleReport {
        y,
        n_max: cfg.n_max,
        convergence_tol: tol,
        e0_analytic: analytic.e_vac,
        e0_oracle: oracle.observables.e_vac,
        rel_err_energy,
        rel_err_x1x2,
        rel_err_n,
        rel_err_force,
        annihilation_residuals,
        annihilation_ratio_expected: expected_ratio,
        annihilation_ratio_measured: measured,
        symmetry_violation: structure.symmetry_violation,
        odd_parity_mass: structure.odd_parity_mass,
        single_branch_deviation: structure.single_branch_deviation,
        pass,
    })
}

pub fn trajectory_table(traj: &Trajectory) -> Table {
    let mut t = Table::new(vec!["t", "y", "p_y", "F", "E_vac", "E_total"]);
    for r in &traj.rows {
        t.push(vec![r.t.into(), r.y.into(), r.p_y.into(), r.force.into(), r.e_vac.into(), r.e_total.into()]);
    }
    t
}

pub fn classical_table(model: &ValidatedModel, traj: &ClassicalTrajectory) -> Result<Table> {
    let mut t = Table::new(vec!["t", "x1", "x2", "y", "p1", "p2", "p_y", "H"]);
    for s in &traj.states {
        t.push(vec![
            s.t.into(),
            s.x1.into(),
            s.x2.into(),
            s.y.into(),
            s.p1.into(),
            s.p2.into(),
            s.p_y.into(),
            energy(model, s)?.into(),
        ]);
    }
    Ok(t)
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Outcome> {
    let model = cfg.validate()?;
    let table = spectrum_table(&model, &cfg.grid.values())?;
    let path = write_table(&cfg.output, "spectrum", &table)?;
    Ok(Outcome::ok(vec![path], format!("{} grid points", table.rows.len())))
}

pub fn cmd_force_curve(cfg: &RunConfig, with_oracle: bool) -> Result<Outcome> {
    let model = cfg.validate()?;
    let basis = if with_oracle { Some(TruncatedBasis::new(cfg.oracle.n_max)?) } else { None };
    let table = force_curve_table(&model, &cfg.grid.values(), basis)?;
    let path = write_table(&cfg.output, "force_curve", &table)?;
    Ok(Outcome::ok(vec![path], format!("{} grid points", table.rows.len())))
}

pub fn cmd_vacuum_content(cfg: &RunConfig, pair_y: Option<f64>, pairs: usize, branch: Branch) -> Result<Outcome> {
    let model = cfg.validate()?;
    let table = vacuum_content_table(&model, &cfg.grid.values(), branch)?;
    let content = write_table(&cfg.output, "vacuum_content", &table)?;
    let y = pair_y.unwrap_or(cfg.grid.y_min);
    let dist = pair_distribution_table(&model, y, branch, pairs)?;
    let pairs_path = write_table(&cfg.output, "pair_distribution", &dist)?;
    Ok(Outcome::ok(vec![content, pairs_path], format!("pair distribution at y = {y}")))
}

pub fn cmd_oracle_check(cfg: &RunConfig) -> Result<Outcome> {
    let model = cfg.validate()?;
    let y = cfg.oracle.y.unwrap_or(cfg.grid.y_min);
    let report = oracle_check(&model, y, &cfg.oracle)?;
    let path = write_json(&cfg.output, "oracle_check", &report)?;
    let message = format!(
        "oracle check at y = {y}, n_max = {}: rel_err_energy = {:e}, pass = {}",
        report.n_max, report.rel_err_energy, report.pass
    );
    Ok(Outcome { files: vec![path], message, exit_code: if report.pass { 0 } else { 4 } })
}

/// A trajectory that left the domain is still written, but the run reports
/// the domain error's exit code.
fn partial_on_exit(mut outcome: Outcome, exit: Option<DomainExit>) -> Outcome {
    if let Some(exit) = exit {
        outcome.message.push_str(&format!("\nDOMAIN_EXIT: y = {} left the coupling domain at t = {}", exit.y, exit.t));
        outcome.exit_code = 3;
    }
    outcome
}

pub fn cmd_evolve(cfg: &RunConfig) -> Result<Outcome> {
    let model = cfg.validate()?;
    let dyn_cfg = cfg.dynamics.as_ref().ok_or_else(|| Error::Config("missing `dynamics` section".into()))?;
    let traj = evolve(&model, dyn_cfg)?;
    let path = write_table(&cfg.output, "trajectory", &trajectory_table(&traj))?;
    let audit = energy_audit(&traj)?;
    let mut message = format!("final energy drift {:e} over {} rows", audit.max_rel_drift, traj.rows.len());
    if model.adiabatic_warning() {
        message.push_str(&format!("\nwarning: M/m = {} is small for the adiabatic treatment", model.mass_ratio()));
    }
    Ok(partial_on_exit(Outcome::ok(vec![path], message), traj.domain_exit))
}

pub fn cmd_classical(cfg: &RunConfig) -> Result<Outcome> {
    let model = cfg.validate()?;
    let c = cfg.classical.as_ref().ok_or_else(|| Error::Config("missing `classical` section".into()))?;
    let initial = PhaseState { t: 0.0, x1: c.x1, x2: c.x2, y: c.y, p1: c.p1, p2: c.p2, p_y: c.p_y };
    let traj = evolve_classical(&model, initial, c.dt, c.t_max)?;
    let path = write_table(&cfg.output, "classical", &classical_table(&model, &traj)?)?;
    let message = format!("max relative energy drift {:e}", traj.max_energy_drift(&model)?);
    Ok(partial_on_exit(Outcome::ok(vec![path], message), traj.domain_exit))
}

pub fn reference_casimir_text(report: &IdealConductorReport) -> String {
    let mut s = String::new();
    s.push_str("ideal-conductor Casimir force (perfect parallel plates; not the toy model)\n");
    s.push_str(&format!("coefficient pi^2/240 = {:.15e}\n", report.coefficient));
    s.push_str(&format!("separation = {:e}\n", report.separation));
    s.push_str(&format!("force per unit area = {:.12e}\n", report.pressure));
    if let Some(f) = report.total_force {
        s.push_str(&format!("total force = {f:.12e}\n"));
    }
    s
}

pub fn cmd_reference_casimir(y: f64, area: Option<f64>, c: f64, hbar: f64) -> Result<Outcome> {
    let report = ideal_conductor(y, hbar, c, area)?;
    Ok(Outcome::ok(vec![], reference_casimir_text(&report)))
}
