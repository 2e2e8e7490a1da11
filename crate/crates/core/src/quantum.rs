//! Closed-form quantum results for the interacting effective vacuum: vacuum
//! energy, the force by differentiating that energy and by averaging the
//! force operator, vacuum fluctuations, and the Bogoliubov structure relating
//! the free and interacting ladder operators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Spectrum, ValidatedModel};

/// E_vac(y) = ħΩ₊/2 + ħΩ₋/2.
pub fn vacuum_energy(model: &ValidatedModel, y: f64) -> Result<f64> {
    let s = model.spectrum(y)?;
    Ok(model.hbar() * (s.omega_plus + s.omega_minus) / 2.0)
}

/// E_vac(y) - ħω, the shift of the vacuum energy relative to the free
/// vacuum, written without cancellation: Ω± - ω = ±g / (m(Ω± + ω)).
/// Differs from [`vacuum_energy`] by a y-independent constant only.
pub fn vacuum_energy_shift(model: &ValidatedModel, y: f64) -> Result<f64> {
    let s = model.spectrum(y)?;
    Ok(model.hbar() * (s.detuning_plus() + s.detuning_minus()) / 2.0)
}

/// -dE_vac/dy by finite differences of [`vacuum_energy_shift`] with step
/// `h`: central where y ± h lies in the domain, otherwise the second-order
/// one-sided stencil pointing inward.
pub fn finite_difference_force(model: &ValidatedModel, y: f64, h: f64) -> Result<f64> {
    let c = model.coupling();
    if !c.contains(y) {
        return Err(Error::Domain { y, y_min: c.y_min(), y_max: c.y_max() });
    }
    let e = |y| vacuum_energy_shift(model, y);
    let slope = if c.contains(y - h) && c.contains(y + h) {
        (e(y + h)? - e(y - h)?) / (2.0 * h)
    } else if c.contains(y + 2.0 * h) {
        (-3.0 * e(y)? + 4.0 * e(y + h)? - e(y + 2.0 * h)?) / (2.0 * h)
    } else {
        (3.0 * e(y)? - 4.0 * e(y - h)? + e(y - 2.0 * h)?) / (2.0 * h)
    };
    Ok(-slope)
}

/// Force from the y-dependence of the vacuum energy,
/// F = -ħg'/(4mΩ₊) + ħg'/(4mΩ₋), with 1/Ω₊ - 1/Ω₋ taken through the
/// splitting so weak couplings keep full precision.
pub fn casimir_force(model: &ValidatedModel, y: f64) -> Result<f64> {
    let s = model.spectrum(y)?;
    let dg = model.g_prime(y)?;
    let scale = model.hbar() * dg / (4.0 * model.mass());
    let inverse_gap = -s.splitting() / (s.omega_plus * s.omega_minus);
    Ok(-scale * inverse_gap)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VacuumObservables {
    pub e_vac: f64,
    pub x_plus_sq: f64,
    pub x_minus_sq: f64,
    pub x1x2: f64,
    pub n1: f64,
    pub n2: f64,
}

/// Second moments of the interacting vacuum, ⟨x±²⟩ = ħ/(2mΩ±).
/// The quanta counts are filled from the Bogoliubov coefficients.
pub fn vacuum_fluctuations(model: &ValidatedModel, y: f64) -> Result<VacuumObservables> {
    let s = model.spectrum(y)?;
    let hbar = model.hbar();
    let m = model.mass();
    let x_plus_sq = hbar / (2.0 * m * s.omega_plus);
    let x_minus_sq = hbar / (2.0 * m * s.omega_minus);
    // (x₊² - x₋²)/2 without subtracting the two
    let x1x2 = -hbar * s.splitting() / (4.0 * m * s.omega_plus * s.omega_minus);
    let (n1, n2) = mean_free_quanta(&BogoliubovCoeffs::from_spectrum(&s));
    Ok(VacuumObservables { e_vac: hbar * (s.omega_plus + s.omega_minus) / 2.0, x_plus_sq, x_minus_sq, x1x2, n1, n2 })
}

/// Force as the vacuum expectation of the force operator, -g'(y)⟨x1x2⟩.
/// Goes through the fluctuations only, never the vacuum energy.
pub fn lifshitz_force(model: &ValidatedModel, y: f64) -> Result<f64> {
    let obs = vacuum_fluctuations(model, y)?;
    Ok(-model.g_prime(y)? * obs.x1x2)
}

/// Coefficients of a± = Σ_j (α_{j±} a_j + β_{j±} a_j†).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BogoliubovCoeffs {
    pub alpha_1p: f64,
    pub alpha_2p: f64,
    pub alpha_1m: f64,
    pub alpha_2m: f64,
    pub beta_1p: f64,
    pub beta_2p: f64,
    pub beta_1m: f64,
    pub beta_2m: f64,
}

impl BogoliubovCoeffs {
    pub fn from_spectrum(s: &Spectrum) -> Self {
        let w = s.omega;
        let coeffs = |big: f64, detuning: f64| {
            let d = 2.0 * (2.0 * big * w).sqrt();
            ((big + w) / d, detuning / d)
        };
        let (alpha_1p, beta_1p) = coeffs(s.omega_plus, s.detuning_plus());
        let (alpha_1m, beta_1m) = coeffs(s.omega_minus, s.detuning_minus());
        Self {
            alpha_1p,
            alpha_2p: alpha_1p,
            alpha_1m,
            alpha_2m: -alpha_1m,
            beta_1p,
            beta_2p: beta_1p,
            beta_1m,
            beta_2m: -beta_1m,
        }
    }

    /// Σ_j (α_{j+}² - β_{j+}²), equal to one for a canonical transformation.
    pub fn norm_plus(&self) -> f64 {
        self.alpha_1p.powi(2) - self.beta_1p.powi(2) + self.alpha_2p.powi(2) - self.beta_2p.powi(2)
    }

    pub fn norm_minus(&self) -> f64 {
        self.alpha_1m.powi(2) - self.beta_1m.powi(2) + self.alpha_2m.powi(2) - self.beta_2m.powi(2)
    }

    /// (α, β) of the chosen branch, mode 1.
    pub fn branch(&self, branch: Branch) -> (f64, f64) {
        match branch {
            Branch::Plus => (self.alpha_1p, self.beta_1p),
            Branch::Minus => (self.alpha_1m, self.beta_1m),
        }
    }
}

pub fn bogoliubov_coefficients(model: &ValidatedModel, y: f64) -> Result<BogoliubovCoeffs> {
    Ok(BogoliubovCoeffs::from_spectrum(&model.spectrum(y)?))
}

/// ⟨N_j⟩ = β_{j+}² + β_{j-}² in the interacting vacuum.
pub fn mean_free_quanta(c: &BogoliubovCoeffs) -> (f64, f64) {
    (c.beta_1p.powi(2) + c.beta_1m.powi(2), c.beta_2p.powi(2) + c.beta_2m.powi(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

/// Pair expansion |0̃⟩ = Σ_n c_n |n, n⟩ of the vacuum of the single-branch
/// operator a = α(a1 + a2) + β(a1† + a2†).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VacuumExpansion {
    pub alpha: f64,
    pub beta: f64,
    pub c0: f64,
    pub coefficients: Vec<f64>,
    pub n_max: usize,
}

impl VacuumExpansion {
    pub fn ratio(&self) -> f64 {
        self.beta / self.alpha
    }

    /// Probability mass beyond `n_max`, summed in closed form.
    pub fn tail_mass(&self) -> f64 {
        let r2 = self.ratio().powi(2);
        self.c0 * self.c0 * r2.powi(self.n_max as i32 + 1) / (1.0 - r2)
    }

    pub fn retained_mass(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum()
    }
}

/// c_n = (-β/α)ⁿ √(1 - (β/α)²), n = 0..=n_max.
pub fn squeezed_vacuum_expansion(coeffs: &BogoliubovCoeffs, branch: Branch, n_max: usize) -> Result<VacuumExpansion> {
    let (alpha, beta) = coeffs.branch(branch);
    let r = beta / alpha;
    if !(r.abs() < 1.0) {
        return Err(Error::InvalidRatio(r.abs()));
    }
    let c0 = (1.0 - r * r).sqrt();
    let mut coefficients = Vec::with_capacity(n_max + 1);
    let mut c = c0;
    for _ in 0..=n_max {
        coefficients.push(c);
        c *= -r;
    }
    Ok(VacuumExpansion { alpha, beta, c0, coefficients, n_max })
}
