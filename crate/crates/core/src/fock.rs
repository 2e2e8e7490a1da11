//! Brute-force oracle in the truncated product Fock basis |n, n'⟩ of the two
//! free oscillators.
//!
//! Nothing here uses the normal-mode solution: operators are assembled from
//! the free ladder matrices, the Hamiltonian at fixed y is diagonalized
//! numerically, and expectation values are taken in the resulting ground
//! state. The closed forms in [`crate::quantum`] are then checked against it.

use std::fmt;

use ndarray::linalg::kron;
use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ValidatedModel;
use crate::quantum::{VacuumExpansion, VacuumObservables};

/// Product basis with a per-mode occupation cutoff, n, n' ∈ 0..=n_max.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TruncatedBasis {
    n_max: usize,
}

impl TruncatedBasis {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::Config("Fock cutoff n_max must be at least 1".into()));
        }
        Ok(Self { n_max })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// States per mode.
    pub fn levels(&self) -> usize {
        self.n_max + 1
    }

    pub fn dimension(&self) -> usize {
        self.levels() * self.levels()
    }

    pub fn index(&self, n: usize, n_prime: usize) -> usize {
        debug_assert!(n <= self.n_max && n_prime <= self.n_max);
        n * self.levels() + n_prime
    }

    pub fn occupations(&self, index: usize) -> (usize, usize) {
        (index / self.levels(), index % self.levels())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OperatorLabel {
    H,
    X1X2,
    N1,
    N2,
    XPlusSq,
    XMinusSq,
}

impl fmt::Display for OperatorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OperatorLabel::H => "H",
            OperatorLabel::X1X2 => "x1x2",
            OperatorLabel::N1 => "N1",
            OperatorLabel::N2 => "N2",
            OperatorLabel::XPlusSq => "x_plus_sq",
            OperatorLabel::XMinusSq => "x_minus_sq",
        };
        f.write_str(s)
    }
}

/// Dense real symmetric operator on a [`TruncatedBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub label: OperatorLabel,
    pub basis: TruncatedBasis,
    pub matrix: Array2<f64>,
}

impl OperatorMatrix {
    pub fn element(&self, (n, np): (usize, usize), (m, mp): (usize, usize)) -> f64 {
        self.matrix[[self.basis.index(n, np), self.basis.index(m, mp)]]
    }

    /// max |A - Aᵀ|
    pub fn symmetry_violation(&self) -> f64 {
        let a = &self.matrix;
        let mut worst: f64 = 0.0;
        for i in 0..a.nrows() {
            for j in 0..i {
                worst = worst.max((a[[i, j]] - a[[j, i]]).abs());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    /// ⟨v|A|v⟩ for a real vector.
    pub fn expectation(&self, v: &Array1<f64>) -> f64 {
        v.dot(&self.matrix.dot(v))
    }
}

/// Lowering operator on one mode, ⟨n-1|a|n⟩ = √n.
pub fn lowering(levels: usize) -> Array2<f64> {
    let mut a = Array2::zeros((levels, levels));
    for n in 1..levels {
        a[[n - 1, n]] = (n as f64).sqrt();
    }
    a
}

/// Raising operator on one mode, the transpose of [`lowering`].
pub fn raising(levels: usize) -> Array2<f64> {
    lowering(levels).reversed_axes()
}

fn number(levels: usize) -> Array2<f64> {
    Array2::from_diag(&Array1::from_iter((0..levels).map(|n| n as f64)))
}

/// Position on one mode in units where x = √(ħ/2mω)(a† + a) with the given
/// prefactor.
fn position(levels: usize, scale: f64) -> Array2<f64> {
    (lowering(levels) + raising(levels)) * scale
}

fn oscillator_length_sq(model: &ValidatedModel) -> f64 {
    model.hbar() / (2.0 * model.mass() * model.omega())
}

/// Mode-1 and mode-2 embeddings A ⊗ 1 and 1 ⊗ A.
fn on_mode1(a: &Array2<f64>) -> Array2<f64> {
    kron(a, &Array2::<f64>::eye(a.nrows()))
}

fn on_mode2(a: &Array2<f64>) -> Array2<f64> {
    kron(&Array2::<f64>::eye(a.nrows()), a)
}

/// Matrix of the requested operator. Only `H` depends on y.
pub fn build_operator(
    label: OperatorLabel,
    model: &ValidatedModel,
    y: f64,
    basis: TruncatedBasis,
) -> Result<OperatorMatrix> {
    let levels = basis.levels();
    let x = position(levels, oscillator_length_sq(model).sqrt());
    let matrix = match label {
        OperatorLabel::H => {
            let g = model.g(y)?;
            let hw = model.hbar() * model.omega();
            let free =
                (on_mode1(&number(levels)) + on_mode2(&number(levels)) + Array2::<f64>::eye(levels * levels)) * hw;
            free + kron(&x, &x) * g
        }
        OperatorLabel::X1X2 => kron(&x, &x),
        OperatorLabel::N1 => on_mode1(&number(levels)),
        OperatorLabel::N2 => on_mode2(&number(levels)),
        OperatorLabel::XPlusSq | OperatorLabel::XMinusSq => {
            // x±² = (x1² + x2² ± 2 x1x2)/2
            let x_sq = x.dot(&x);
            let sign = if label == OperatorLabel::XPlusSq { 1.0 } else { -1.0 };
            (on_mode1(&x_sq) + on_mode2(&x_sq) + kron(&x, &x) * (2.0 * sign)) * 0.5
        }
    };
    Ok(OperatorMatrix { label, basis, matrix })
}

/// H = ħω(N1 + N2 + 1) + g(y) X1 X2 at fixed y.
pub fn build_hamiltonian(model: &ValidatedModel, y: f64, basis: TruncatedBasis) -> Result<OperatorMatrix> {
    build_operator(OperatorLabel::H, model, y, basis)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateResult {
    pub e0: f64,
    /// c_{nn'} indexed through [`TruncatedBasis::index`].
    pub amplitudes: Array1<f64>,
    pub residual_norm: f64,
    pub basis: TruncatedBasis,
}

impl GroundStateResult {
    pub fn amplitude(&self, n: usize, n_prime: usize) -> f64 {
        self.amplitudes[self.basis.index(n, n_prime)]
    }
}

struct Eigenpairs {
    /// ascending
    values: Vec<f64>,
    /// one column per value
    vectors: Vec<Array1<f64>>,
}

/// Lowest `count` eigenpairs of a real symmetric matrix from a full dense
/// self-adjoint eigendecomposition.
fn lowest_eigenpairs(a: &Array2<f64>, count: usize) -> Result<Eigenpairs> {
    let n = a.nrows();
    let count = count.min(n);
    let mat = faer::Mat::<f64>::from_fn(n, n, |i, j| a[[i, j]]);
    let evd = mat
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::NoConvergence(format!("self-adjoint eigensolver on a {n}x{n} matrix: {e:?}")))?;
    let s = evd.S().column_vector();
    let u = evd.U();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[i].total_cmp(&s[j]));
    order.truncate(count);
    let values: Vec<f64> = order.iter().map(|&i| s[i]).collect();
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::NoConvergence(format!("eigensolver returned a non-finite eigenvalue {bad}")));
    }
    let vectors = order.iter().map(|&k| Array1::from_iter((0..n).map(|i| u[(i, k)]))).collect();
    Ok(Eigenpairs { values, vectors })
}

/// Lowest `count` eigenvalues of an operator, ascending.
pub fn lowest_eigenvalues(op: &OperatorMatrix, count: usize) -> Result<Vec<f64>> {
    Ok(lowest_eigenpairs(&op.matrix, count)?.values)
}

/// Lowest eigenpair of `h`, normalized, with the sign fixed by c₀₀ > 0.
pub fn ground_state(h: &OperatorMatrix) -> Result<GroundStateResult> {
    let asym = h.symmetry_violation();
    if asym > 1e-14 * h.max_abs().max(1.0) {
        return Err(Error::Config(format!("operator {} is not symmetric (max |A - Aᵀ| = {asym:e})", h.label)));
    }
    let pairs = lowest_eigenpairs(&h.matrix, 1)?;
    let e0 = pairs.values[0];
    let mut v = pairs.vectors.into_iter().next().expect("one eigenpair");
    let norm = v.dot(&v).sqrt();
    v /= norm;
    if v[h.basis.index(0, 0)] < 0.0 {
        v.mapv_inplace(|c| -c);
    }
    let r = h.matrix.dot(&v) - &v * e0;
    let residual_norm = r.dot(&r).sqrt();
    Ok(GroundStateResult { e0, amplitudes: v, residual_norm, basis: h.basis })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleObservables {
    pub observables: VacuumObservables,
    /// -g'(y)⟨x1x2⟩ in the numerical ground state.
    pub force: f64,
    pub residual_norm: f64,
}

/// Ground state of the truncated Hamiltonian plus every vacuum observable
/// evaluated in it.
pub fn oracle_observables(
    model: &ValidatedModel,
    y: f64,
    basis: TruncatedBasis,
) -> Result<(OracleObservables, GroundStateResult)> {
    let h = build_hamiltonian(model, y, basis)?;
    let gs = ground_state(&h)?;
    let v = &gs.amplitudes;
    let expect = |label| -> Result<f64> { Ok(build_operator(label, model, y, basis)?.expectation(v)) };
    let x1x2 = expect(OperatorLabel::X1X2)?;
    let observables = VacuumObservables {
        e_vac: gs.e0,
        x_plus_sq: expect(OperatorLabel::XPlusSq)?,
        x_minus_sq: expect(OperatorLabel::XMinusSq)?,
        x1x2,
        n1: expect(OperatorLabel::N1)?,
        n2: expect(OperatorLabel::N2)?,
    };
    let force = -model.g_prime(y)? * x1x2;
    Ok((OracleObservables { observables, force, residual_norm: gs.residual_norm }, gs))
}

/// Only the force, -g'(y)⟨x1x2⟩, from a fresh diagonalization.
pub fn oracle_force(model: &ValidatedModel, y: f64, basis: TruncatedBasis) -> Result<f64> {
    let dg = model.g_prime(y)?;
    if dg == 0.0 {
        return Ok(0.0);
    }
    let gs = ground_state(&build_hamiltonian(model, y, basis)?)?;
    let levels = basis.levels();
    let x = position(levels, oscillator_length_sq(model).sqrt());
    Ok(-dg * OperatorMatrix { label: OperatorLabel::X1X2, basis, matrix: kron(&x, &x) }.expectation(&gs.amplitudes))
}

/// ‖a|0̃⟩‖ for the single-branch operator a = α(a1 + a2) + β(a1† + a2†)
/// acting on |0̃⟩ = Σ c_n |n, n⟩, restricted to components with
/// n, n' ≤ n_max - 1 so that states pushed off the basis edge do not count.
pub fn verify_annihilation(expansion: &VacuumExpansion, basis: TruncatedBasis) -> Result<f64> {
    if expansion.n_max > basis.n_max() {
        return Err(Error::TruncationMismatch { expansion: expansion.n_max, basis: basis.n_max() });
    }
    let levels = basis.levels();
    let lower = lowering(levels);
    let upper = raising(levels);
    let op = (on_mode1(&lower) + on_mode2(&lower)) * expansion.alpha
        + (on_mode1(&upper) + on_mode2(&upper)) * expansion.beta;
    let mut state = Array1::zeros(basis.dimension());
    for (n, c) in expansion.coefficients.iter().enumerate() {
        state[basis.index(n, n)] = *c;
    }
    let image = op.dot(&state);
    let mut sum = 0.0;
    for (i, v) in image.iter().enumerate() {
        let (n, np) = basis.occupations(i);
        if n < basis.n_max() && np < basis.n_max() {
            sum += v * v;
        }
    }
    Ok(sum.sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairAmplitude {
    pub n: usize,
    /// c_{nn} / c_{00} from the oracle
    pub oracle: f64,
    /// (-β/α)ⁿ of the single-branch expansion
    pub single_branch: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    /// max |c_{nn'} - c_{n'n}|
    pub symmetry_violation: f64,
    /// Σ over n + n' odd of c_{nn'}²
    pub odd_parity_mass: f64,
    pub pair_amplitudes: Vec<PairAmplitude>,
    /// max |oracle - single_branch| over the reported pairs; descriptive only
    pub single_branch_deviation: f64,
}

/// Exchange symmetry, total-parity selection and the diagonal pair
/// amplitudes of a numerical ground state. `ratio` is β/α of the branch to
/// compare against; `pairs` caps how many c_{nn} are reported.
pub fn ground_state_structure_checks(result: &GroundStateResult, ratio: f64, pairs: usize) -> StructureReport {
    let basis = result.basis;
    let mut symmetry_violation: f64 = 0.0;
    let mut odd_parity_mass = 0.0;
    for n in 0..=basis.n_max() {
        for np in 0..=basis.n_max() {
            let c = result.amplitude(n, np);
            symmetry_violation = symmetry_violation.max((c - result.amplitude(np, n)).abs());
            if (n + np) % 2 == 1 {
                odd_parity_mass += c * c;
            }
        }
    }
    let c00 = result.amplitude(0, 0);
    let pair_amplitudes: Vec<PairAmplitude> = (0..=pairs.min(basis.n_max()))
        .map(|n| PairAmplitude { n, oracle: result.amplitude(n, n) / c00, single_branch: (-ratio).powi(n as i32) })
        .collect();
    let single_branch_deviation =
        pair_amplitudes.iter().fold(0.0_f64, |acc, p| acc.max((p.oracle - p.single_branch).abs()));
    StructureReport { symmetry_violation, odd_parity_mass, pair_amplitudes, single_branch_deviation }
}

/// ⟨ψ|x1x2|ψ⟩ for |ψ⟩ = |0⟩₁ ⊗ |ψ2⟩. `psi2` has one amplitude per level of
/// the basis and is expected to be normalized.
pub fn free_vacuum_correlation(model: &ValidatedModel, basis: TruncatedBasis, psi2: &[Complex64]) -> Result<f64> {
    if psi2.len() != basis.levels() {
        return Err(Error::TruncationMismatch { expansion: psi2.len().saturating_sub(1), basis: basis.n_max() });
    }
    let x = position(basis.levels(), oscillator_length_sq(model).sqrt());
    let x1x2 = kron(&x, &x);
    let mut re = Array1::zeros(basis.dimension());
    let mut im = Array1::zeros(basis.dimension());
    for (n, amp) in psi2.iter().enumerate() {
        let i = basis.index(0, n);
        re[i] = amp.re;
        im[i] = amp.im;
    }
    // real symmetric operator: ⟨ψ|A|ψ⟩ = reᵀA re + imᵀA im
    Ok(re.dot(&x1x2.dot(&re)) + im.dot(&x1x2.dot(&im)))
}
