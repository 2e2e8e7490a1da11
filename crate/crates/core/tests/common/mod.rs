#![allow(dead_code)]

use casimir_lab::{validate, CouplingSpec, ModelParams, ValidatedModel};
use proptest::prelude::*;
use rand::Rng;

/// k = m = ħ = 1, M = 1000, g = 0.5 e^{-y}.
pub fn reference_model() -> ValidatedModel {
    validate(ModelParams {
        m: 1.0,
        big_m: 1000.0,
        k: 1.0,
        hbar: 1.0,
        coupling: CouplingSpec::exponential(0.5, 1.0, [0.0, 50.0]),
    })
    .unwrap()
}

pub fn unit_model(coupling: CouplingSpec, big_m: f64) -> ValidatedModel {
    validate(ModelParams { m: 1.0, big_m, k: 1.0, hbar: 1.0, coupling }).unwrap()
}

/// Raw draws in [0, 1) mapped onto a valid model plus a point in its domain.
fn model_from_unit(u: [f64; 8], inverse_power: bool) -> (ValidatedModel, f64) {
    let m = 0.1 * 100f64.powf(u[0]);
    let k = 0.1 * 100f64.powf(u[1]);
    let big_m = m * 100.0 * 100f64.powf(u[2]);
    let hbar = 0.1 + 1.9 * u[3];
    let lambda = 0.2 + 4.8 * u[4];
    let g0 = 0.95 * k * u[5];
    let coupling = if inverse_power {
        let exponent = 1 + (u[6] * 4.0) as u32;
        CouplingSpec::inverse_power(g0, lambda, exponent, [0.0, 20.0 * lambda])
    } else {
        CouplingSpec::exponential(g0, lambda, [0.0, 20.0 * lambda])
    };
    let y = u[7] * 10.0 * lambda;
    (validate(ModelParams { m, big_m, k, hbar, coupling }).unwrap(), y)
}

pub fn random_model<R: Rng>(rng: &mut R) -> (ValidatedModel, f64) {
    let u: [f64; 8] = std::array::from_fn(|_| rng.gen::<f64>());
    model_from_unit(u, rng.gen_bool(0.5))
}

pub fn arb_model() -> impl Strategy<Value = (ValidatedModel, f64)> {
    (prop::array::uniform8(0.0..1.0f64), any::<bool>()).prop_map(|(u, ip)| model_from_unit(u, ip))
}

pub fn rel(reference: f64, value: f64) -> f64 {
    (value - reference).abs() / reference.abs().max(1e-30)
}
