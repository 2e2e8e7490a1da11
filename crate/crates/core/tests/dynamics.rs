mod common;

use std::f64::consts::PI;

use casimir_lab::classical::{evolve_classical, PhaseState};
use casimir_lab::dynamics::*;
use casimir_lab::model::normal_coordinates;
use casimir_lab::{CouplingSpec, Error};
use common::{reference_model, unit_model};

fn reference_config(steps: usize, route: ForceRoute) -> DynamicsConfig {
    let dt = 0.01 * 1000f64.sqrt();
    DynamicsConfig::new(0.5, 0.005, dt, dt * steps as f64, route)
}

#[test]
fn classical_energy_is_conserved_over_long_runs() {
    let model = reference_model();
    let s0 = PhaseState { x1: 0.1, x2: 0.05, y: 2.0, p_y: 0.5, ..Default::default() };
    let dt = 0.01 * 2.0 * PI / model.spectrum(2.0).unwrap().omega_plus;
    let traj = evolve_classical(&model, s0, dt, 1e5 * dt).unwrap();
    assert!(traj.domain_exit.is_none());
    assert_eq!(traj.states.len(), 100_001);
    let drift = traj.max_energy_drift(&model).unwrap();
    assert!(drift < 1e-6, "drift {drift}");
}

#[test]
fn fast_mode_follows_the_instantaneous_frequency() {
    let model = unit_model(CouplingSpec::exponential(0.5, 1.0, [0.0, 50.0]), 1e4);
    let y0 = 1.0;
    let s0 = PhaseState { x1: 0.1, x2: 0.06, y: y0, p_y: 1e4 * 0.01, ..Default::default() };
    let dt = 0.01 * 2.0 * PI / model.spectrum(y0).unwrap().omega_plus;
    let traj = evolve_classical(&model, s0, dt, 800.0).unwrap();
    assert!(traj.domain_exit.is_none());

    let crossings: Vec<(f64, f64)> = traj
        .states
        .windows(2)
        .filter_map(|w| {
            let (a, _) = normal_coordinates(w[0].x1, w[0].x2);
            let (b, _) = normal_coordinates(w[1].x1, w[1].x2);
            (a.signum() != b.signum()).then(|| {
                let f = a / (a - b);
                (w[0].t + f * (w[1].t - w[0].t), w[0].y + f * (w[1].y - w[0].y))
            })
        })
        .collect();
    assert!(crossings.len() > 200);
    let mut worst: f64 = 0.0;
    for pair in crossings.windows(2) {
        let ((ta, ya), (tb, yb)) = (pair[0], pair[1]);
        let local = model.spectrum(0.5 * (ya + yb)).unwrap().omega_plus;
        worst = worst.max(((tb - ta) * local / PI - 1.0).abs());
    }
    assert!(worst < 0.01, "worst half-period mismatch {worst}");

    // the frequency itself moves by several percent over the run
    let y_end = traj.states.last().unwrap().y;
    let change = model.spectrum(y0).unwrap().omega_plus / model.spectrum(y_end).unwrap().omega_plus - 1.0;
    assert!(change > 0.05, "Ω₊ changed by only {change}");
}

#[test]
fn reference_run_conserves_adiabatic_energy() {
    let model = reference_model();
    let traj = evolve(&model, &reference_config(100_000, ForceRoute::Casimir)).unwrap();
    assert!(traj.domain_exit.is_none());
    assert_eq!(traj.rows.len(), 100_001);
    let audit = energy_audit(&traj).unwrap();
    assert!(audit.max_rel_drift < 1e-6, "{}", audit.max_rel_drift);
    assert!(traj.rows.windows(2).all(|w| w[1].t > w[0].t));
}

#[test]
fn casimir_and_lifshitz_routes_give_the_same_trajectory() {
    let model = reference_model();
    let a = evolve(&model, &reference_config(20_000, ForceRoute::Casimir)).unwrap();
    let b = evolve(&model, &reference_config(20_000, ForceRoute::Lifshitz)).unwrap();
    assert_eq!(a.rows.len(), b.rows.len());
    let worst = a.rows.iter().zip(&b.rows).map(|(r, s)| (r.y - s.y).abs()).fold(0.0, f64::max);
    assert!(worst < 1e-12, "{worst}");
}

#[test]
fn reversing_momentum_retraces_the_path() {
    let model = reference_model();
    let forward = evolve(&model, &reference_config(10_000, ForceRoute::Casimir)).unwrap();
    let end = forward.rows.last().unwrap();
    let mut back = reference_config(10_000, ForceRoute::Casimir);
    back.y0 = end.y;
    back.v0 = -end.p_y / model.slow_mass();
    let backward = evolve(&model, &back).unwrap();
    let lambda = model.coupling().lambda;
    assert!((backward.rows.last().unwrap().y - 0.5).abs() < 1e-8 * lambda);
}

#[test]
fn oracle_route_tracks_the_closed_form() {
    let model = reference_model();
    let steps = 5;
    let exact = evolve(&model, &reference_config(steps, ForceRoute::Casimir)).unwrap();
    let oracle = evolve(&model, &reference_config(steps, ForceRoute::Oracle)).unwrap();
    assert_eq!(oracle.rows.len(), steps + 1);
    for (a, b) in exact.rows.iter().zip(&oracle.rows) {
        assert!((a.y - b.y).abs() < 1e-4 * model.coupling().lambda);
        assert!((a.force - b.force).abs() < 1e-6 * a.force.abs());
    }
}

#[test]
fn oracle_route_refuses_an_infeasible_budget() {
    let mut cfg = reference_config(100_000, ForceRoute::Oracle);
    cfg.oracle_n_max = 20;
    cfg.oracle_budget_s = Some(1.0);
    assert!(matches!(evolve(&reference_model(), &cfg), Err(Error::OracleTooSlow { .. })));
}

#[test]
fn constant_coupling_moves_uniformly() {
    let model = unit_model(CouplingSpec::constant(0.3, [0.0, 100.0]), 1000.0);
    let cfg = DynamicsConfig::new(1.0, 0.25, 0.125, 100.0, ForceRoute::Casimir);
    let traj = evolve(&model, &cfg).unwrap();
    for r in &traj.rows {
        assert_eq!(r.force, 0.0);
        assert_eq!(r.p_y, 250.0);
        assert!((r.y - (1.0 + 0.25 * r.t)).abs() < 1e-12);
    }
    assert_eq!(energy_audit(&traj).unwrap().max_rel_drift, 0.0);
}

#[test]
fn released_from_rest_it_falls_toward_smaller_separation() {
    let model = reference_model();
    let mut cfg = reference_config(2000, ForceRoute::Casimir);
    cfg.v0 = 0.0;
    let traj = evolve(&model, &cfg).unwrap();
    assert!(traj.rows[1].y < 0.5);
    assert!(traj.rows.windows(2).all(|w| w[1].y < w[0].y));
    let exit = traj.domain_exit.expect("reaches the lower edge of the domain");
    assert!(exit.y < 0.0);
}
