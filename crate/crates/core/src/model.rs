//! Model parameters, the coupling family g(y), and the normal-mode spectrum.
//!
//! The Hamiltonian is
//!
//! ```text
//! H = p1²/2m + k x1²/2 + p2²/2m + k x2²/2 + p_y²/2M + g(y) x1 x2
//! ```
//!
//! with 0 ≤ g(y) < k on the declared domain. Every coupling family shipped
//! here is non-increasing in y, so the bound is checked once at `y_min`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this M/m ratio the slow/fast separation is questionable.
pub const ADIABATIC_MASS_RATIO: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CouplingFamily {
    /// g(y) = g0
    Constant,
    /// g(y) = g0 exp(-y/λ)
    Exponential,
    /// g(y) = g0 / (1 + (y/λ)^n)
    InversePower,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingSpec {
    pub family: CouplingFamily,
    pub g0: f64,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u32>,
    /// `[y_min, y_max]`
    pub domain: [f64; 2],
}

fn default_lambda() -> f64 {
    1.0
}

fn default_hbar() -> f64 {
    1.0
}

impl CouplingSpec {
    pub fn constant(g0: f64, domain: [f64; 2]) -> Self {
        Self { family: CouplingFamily::Constant, g0, lambda: 1.0, exponent: None, domain }
    }

    pub fn exponential(g0: f64, lambda: f64, domain: [f64; 2]) -> Self {
        Self { family: CouplingFamily::Exponential, g0, lambda, exponent: None, domain }
    }

    pub fn inverse_power(g0: f64, lambda: f64, exponent: u32, domain: [f64; 2]) -> Self {
        Self { family: CouplingFamily::InversePower, g0, lambda, exponent: Some(exponent), domain }
    }

    pub fn y_min(&self) -> f64 {
        self.domain[0]
    }

    pub fn y_max(&self) -> f64 {
        self.domain[1]
    }

    pub fn contains(&self, y: f64) -> bool {
        y >= self.domain[0] && y <= self.domain[1]
    }

    fn check_domain(&self, y: f64) -> Result<()> {
        if self.contains(y) {
            Ok(())
        } else {
            Err(Error::Domain { y, y_min: self.domain[0], y_max: self.domain[1] })
        }
    }

    fn power(&self) -> i32 {
        self.exponent.unwrap_or(1) as i32
    }

    /// g(y). Evaluating outside the declared domain is an error.
    pub fn value(&self, y: f64) -> Result<f64> {
        self.check_domain(y)?;
        Ok(self.value_unchecked(y))
    }

    /// g'(y), analytic.
    pub fn derivative(&self, y: f64) -> Result<f64> {
        self.check_domain(y)?;
        Ok(self.derivative_unchecked(y))
    }

    pub(crate) fn value_unchecked(&self, y: f64) -> f64 {
        match self.family {
            CouplingFamily::Constant => self.g0,
            CouplingFamily::Exponential => self.g0 * (-y / self.lambda).exp(),
            CouplingFamily::InversePower => self.g0 / (1.0 + (y / self.lambda).powi(self.power())),
        }
    }

    pub(crate) fn derivative_unchecked(&self, y: f64) -> f64 {
        match self.family {
            CouplingFamily::Constant => 0.0,
            CouplingFamily::Exponential => -self.g0 / self.lambda * (-y / self.lambda).exp(),
            CouplingFamily::InversePower => {
                let n = self.power();
                let s = y / self.lambda;
                let denom = 1.0 + s.powi(n);
                -self.g0 * n as f64 * s.powi(n - 1) / (self.lambda * denom * denom)
            }
        }
    }

    fn validate(&self, k: f64) -> Result<()> {
        let [y_min, y_max] = self.domain;
        if !(y_min.is_finite() && y_max.is_finite()) || y_min >= y_max {
            return Err(Error::ConstraintViolation(format!(
                "coupling domain [{y_min}, {y_max}] must be finite with y_min < y_max"
            )));
        }
        if !self.g0.is_finite() || self.g0 < 0.0 {
            return Err(Error::ConstraintViolation(format!("g0 = {} must be >= 0", self.g0)));
        }
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(Error::NonpositiveParameter { name: "lambda", value: self.lambda });
        }
        match (self.family, self.exponent) {
            (CouplingFamily::InversePower, None | Some(0)) => {
                return Err(Error::ConstraintViolation(
                    "inverse-power coupling needs a positive integer exponent".into(),
                ));
            }
            (CouplingFamily::InversePower, Some(_)) if y_min < 0.0 => {
                return Err(Error::ConstraintViolation(format!(
                    "inverse-power coupling needs y_min >= 0, got {y_min}"
                )));
            }
            _ => {}
        }
        // non-increasing families: the supremum sits at y_min
        let sup = self.value_unchecked(y_min);
        if sup >= k {
            return Err(Error::ConstraintViolation(format!(
                "g(y_min) = {sup} >= k = {k}; the energy would not be bounded below"
            )));
        }
        Ok(())
    }
}

/// Raw, unvalidated model input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
    pub k: f64,
    #[serde(default = "default_hbar")]
    pub hbar: f64,
    pub coupling: CouplingSpec,
}

impl ModelParams {
    pub fn validate(self) -> Result<ValidatedModel> {
        validate(self)
    }
}

/// A model whose invariants have been checked. Immutable.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedModel {
    params: ModelParams,
}

pub fn validate(params: ModelParams) -> Result<ValidatedModel> {
    for (name, value) in [("m", params.m), ("M", params.big_m), ("k", params.k), ("hbar", params.hbar)] {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonpositiveParameter { name, value });
        }
    }
    params.coupling.validate(params.k)?;
    Ok(ValidatedModel { params })
}

impl ValidatedModel {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn mass(&self) -> f64 {
        self.params.m
    }

    pub fn slow_mass(&self) -> f64 {
        self.params.big_m
    }

    pub fn stiffness(&self) -> f64 {
        self.params.k
    }

    pub fn hbar(&self) -> f64 {
        self.params.hbar
    }

    pub fn coupling(&self) -> &CouplingSpec {
        &self.params.coupling
    }

    pub fn mass_ratio(&self) -> f64 {
        self.params.big_m / self.params.m
    }

    /// Set when M/m is too small for the adiabatic treatment of y.
    pub fn adiabatic_warning(&self) -> bool {
        self.mass_ratio() < ADIABATIC_MASS_RATIO
    }

    /// Free oscillator frequency ω = sqrt(k/m).
    pub fn omega(&self) -> f64 {
        (self.params.k / self.params.m).sqrt()
    }

    pub fn g(&self, y: f64) -> Result<f64> {
        self.params.coupling.value(y)
    }

    pub fn g_prime(&self, y: f64) -> Result<f64> {
        self.params.coupling.derivative(y)
    }

    pub fn spectrum(&self, y: f64) -> Result<Spectrum> {
        let g = self.g(y)?;
        Ok(Spectrum::new(self.params.k, self.params.m, g))
    }
}

/// Frequencies of the coupled pair at fixed y.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Spectrum {
    pub omega: f64,
    pub omega_g: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
}

impl Spectrum {
    /// Ω±² = (k ± g)/m. Requires 0 ≤ g < k.
    pub fn new(k: f64, m: f64, g: f64) -> Self {
        Self {
            omega: (k / m).sqrt(),
            omega_g: (g / m).sqrt(),
            omega_plus: ((k + g) / m).sqrt(),
            omega_minus: ((k - g) / m).sqrt(),
        }
    }

    /// Ω₊ - Ω₋ = 2ω_g²/(Ω₊ + Ω₋), free of cancellation at weak coupling.
    pub fn splitting(&self) -> f64 {
        2.0 * self.omega_g * self.omega_g / (self.omega_plus + self.omega_minus)
    }

    /// Ω± - ω = ±ω_g²/(Ω± + ω).
    pub fn detuning_plus(&self) -> f64 {
        self.omega_g * self.omega_g / (self.omega_plus + self.omega)
    }

    pub fn detuning_minus(&self) -> f64 {
        -self.omega_g * self.omega_g / (self.omega_minus + self.omega)
    }
}

/// (x1, x2) -> (x₊, x₋) with x± = (x1 ± x2)/√2.
pub fn normal_coordinates(x1: f64, x2: f64) -> (f64, f64) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (s * (x1 + x2), s * (x1 - x2))
}

/// Inverse of [`normal_coordinates`].
pub fn from_normal_coordinates(x_plus: f64, x_minus: f64) -> (f64, f64) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (s * (x_plus + x_minus), s * (x_plus - x_minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(m: f64, coupling: CouplingSpec) -> ModelParams {
        ModelParams { m, big_m: 1000.0, k: 1.0, hbar: 1.0, coupling }
    }

    #[test]
    fn reference_model_validates() {
        let model = validate(params(1.0, CouplingSpec::exponential(0.5, 1.0, [0.0, 10.0]))).unwrap();
        assert!(!model.adiabatic_warning());
        assert_eq!(model.mass_ratio(), 1000.0);
    }

    #[test]
    fn coupling_at_or_above_k_is_rejected() {
        let err = validate(params(1.0, CouplingSpec::exponential(1.5, 1.0, [0.0, 10.0]))).unwrap_err();
        assert!(matches!(err, Error::ConstraintViolation(ref msg) if msg.contains("g(y_min)")));
        let err = validate(params(1.0, CouplingSpec::constant(1.0, [0.0, 1.0]))).unwrap_err();
        assert!(matches!(err, Error::ConstraintViolation(_)));
    }

    #[test]
    fn negative_mass_is_rejected() {
        let err = validate(params(-1.0, CouplingSpec::constant(0.1, [0.0, 1.0]))).unwrap_err();
        assert_eq!(err, Error::NonpositiveParameter { name: "m", value: -1.0 });
    }

    #[test]
    fn small_mass_ratio_sets_warning() {
        let mut p = params(1.0, CouplingSpec::constant(0.1, [0.0, 1.0]));
        p.big_m = 10.0;
        assert!(validate(p).unwrap().adiabatic_warning());
    }

    #[test]
    fn inverse_power_needs_exponent_and_nonnegative_domain() {
        let mut c = CouplingSpec::inverse_power(0.5, 1.0, 2, [-1.0, 1.0]);
        assert!(validate(params(1.0, c.clone())).is_err());
        c.domain = [0.0, 1.0];
        c.exponent = None;
        assert!(validate(params(1.0, c)).is_err());
    }

    #[test]
    fn coupling_values() {
        let e = CouplingSpec::exponential(0.5, 1.0, [0.0, 10.0]);
        assert_eq!(e.value(0.0).unwrap(), 0.5);
        assert_relative_eq!(e.value(std::f64::consts::LN_2).unwrap(), 0.25, max_relative = 1e-15);
        let p = CouplingSpec::inverse_power(0.5, 1.0, 2, [0.0, 10.0]);
        assert_eq!(p.value(1.0).unwrap(), 0.25);
        assert!(matches!(e.value(-0.1), Err(Error::Domain { .. })));
        assert!(matches!(e.derivative(10.5), Err(Error::Domain { .. })));
    }

    #[test]
    fn coupling_derivatives() {
        let e = CouplingSpec::exponential(0.5, 1.0, [0.0, 10.0]);
        assert_eq!(e.derivative(0.0).unwrap(), -0.5);
        let c = CouplingSpec::constant(0.3, [0.0, 10.0]);
        assert_eq!(c.derivative(4.0).unwrap(), 0.0);
        let p = CouplingSpec::inverse_power(0.5, 1.0, 2, [0.0, 10.0]);
        // central difference of the value, step 1e-5 λ
        let h = 1e-5;
        let fd = (p.value(1.0 + h).unwrap() - p.value(1.0 - h).unwrap()) / (2.0 * h);
        assert_relative_eq!(fd, -0.25, max_relative = 1e-9);
        assert_relative_eq!(p.derivative(1.0).unwrap(), fd, max_relative = 1e-6);
    }

    #[test]
    fn spectrum_free_and_coupled() {
        let s = Spectrum::new(1.0, 1.0, 0.0);
        assert_eq!((s.omega, s.omega_plus, s.omega_minus), (1.0, 1.0, 1.0));
        let s = Spectrum::new(1.0, 1.0, 0.5);
        assert_relative_eq!(s.omega_plus, 1.224_744_871_391_589, max_relative = 1e-15);
        assert_relative_eq!(s.omega_minus, 0.707_106_781_186_547_5, max_relative = 1e-15);
        let soft = Spectrum::new(1.0, 1.0, 1.0 - 1e-12);
        assert!(soft.omega_minus > 0.0 && soft.omega_minus < 1e-5);
    }

    #[test]
    fn normal_coordinate_examples() {
        let (p, m) = normal_coordinates(1.0, 1.0);
        assert_relative_eq!(p, std::f64::consts::SQRT_2, max_relative = 1e-15);
        assert_eq!(m, 0.0);
        let (p, m) = normal_coordinates(1.0, -1.0);
        assert_eq!(p, 0.0);
        assert_relative_eq!(m, std::f64::consts::SQRT_2, max_relative = 1e-15);
        let (x1, x2) = from_normal_coordinates(normal_coordinates(0.3, -0.7).0, normal_coordinates(0.3, -0.7).1);
        assert!((x1 - 0.3).abs() < 1e-15 && (x2 + 0.7).abs() < 1e-15);
    }

    #[test]
    fn model_params_parse_from_json() {
        let json = r#"{"m":1,"M":1000,"k":1,
            "coupling":{"family":"inverse-power","g0":0.5,"lambda":2,"exponent":3,"domain":[0,5]}}"#;
        let p: ModelParams = serde_json::from_str(json).unwrap();
        assert_eq!(p.hbar, 1.0);
        assert_eq!(p.coupling.family, CouplingFamily::InversePower);
        assert_eq!(p.coupling.exponent, Some(3));
        assert!(p.validate().is_ok());
    }
}
