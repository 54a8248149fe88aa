//! Small dense quantum objects: pure states, density operators, effects and
//! qubit observables, together with the Hilbert-space overlap quantities.
//!
//! Everything here works at `f64` precision on `d × d` matrices with `d` a
//! small constant. Invariants are checked against [`NORMALIZATION_TOL`];
//! inputs that drift by less than [`REPAIR_TOL`] are silently repaired
//! (renormalized or symmetrized), anything worse is rejected.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance used for the state and operator invariants.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Largest deviation a constructor repairs instead of rejecting.
pub const REPAIR_TOL: f64 = 1e-6;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub type Matrix = DMatrix<Complex64>;

/// A normalized pure state `|ψ⟩` in a `d`-dimensional Hilbert space, `d ≥ 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: DVector<Complex64>,
}

impl QuantumState {
    /// Builds a state from amplitudes that are already (nearly) normalized.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::InvalidState(format!(
                "dimension must be at least 2, got {}",
                amplitudes.len()
            )));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        let v = DVector::from_vec(amplitudes);
        let norm_sq = v.norm_squared();
        if (norm_sq - 1.0).abs() > REPAIR_TOL {
            return Err(Error::InvalidState(format!(
                "squared norm {norm_sq} is not 1"
            )));
        }
        Ok(Self {
            amplitudes: v.unscale(norm_sq.sqrt()),
        })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn from_unnormalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidState("zero or non-finite vector".into()));
        }
        Self::new(amplitudes.into_iter().map(|a| a / norm).collect())
    }

    /// Computational basis vector `|k⟩` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidState(format!("basis index {k} >= {dim}")));
        }
        let mut amps = vec![ZERO; dim];
        amps[k] = ONE;
        Self::new(amps)
    }

    pub fn zero() -> Self {
        Self::basis(2, 0).expect("valid basis state")
    }

    pub fn one() -> Self {
        Self::basis(2, 1).expect("valid basis state")
    }

    pub fn plus() -> Self {
        Self::from_bloch([1.0, 0.0, 0.0]).expect("unit vector")
    }

    pub fn minus() -> Self {
        Self::from_bloch([-1.0, 0.0, 0.0]).expect("unit vector")
    }

    pub fn plus_i() -> Self {
        Self::from_bloch([0.0, 1.0, 0.0]).expect("unit vector")
    }

    pub fn minus_i() -> Self {
        Self::from_bloch([0.0, -1.0, 0.0]).expect("unit vector")
    }

    /// The qubit state `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` whose Bloch vector is `n`.
    pub fn from_bloch(n: [f64; 3]) -> Result<Self> {
        let n = unit_vector(n)?;
        let theta = n[2].clamp(-1.0, 1.0).acos();
        let phi = n[1].atan2(n[0]);
        Self::new(vec![
            Complex64::new((theta / 2.0).cos(), 0.0),
            Complex64::from_polar((theta / 2.0).sin(), phi),
        ])
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amplitudes.as_slice()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Bloch vector of a qubit state.
    pub fn bloch(&self) -> Result<[f64; 3]> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.dim(),
            });
        }
        Ok(self.projector().bloch()?)
    }

    /// The qubit state orthogonal to `self` (antipodal Bloch vector).
    pub fn orthogonal(&self) -> Result<Self> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.dim(),
            });
        }
        let a = self.amplitudes();
        Self::new(vec![-a[1].conj(), a[0].conj()])
    }

    /// `|ψ⟩⟨ψ|` as a density operator.
    pub fn projector(&self) -> DensityOperator {
        DensityOperator {
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }

    /// `|ψ⟩⟨ψ|` as an effect.
    pub fn effect(&self) -> Effect {
        Effect {
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }

    /// Multiplies every amplitude by `e^{iθ}`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        Self {
            amplitudes: self.amplitudes.map(|a| a * Complex64::from_polar(1.0, theta)),
        }
    }
}

/// A density operator: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: Matrix,
}

impl DensityOperator {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let matrix = repair_hermitian(matrix).map_err(Error::InvalidOperator)?;
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > REPAIR_TOL {
            return Err(Error::InvalidOperator(format!("trace {trace} is not 1")));
        }
        // Rescaling an already normalized matrix would perturb the last bits.
        let matrix = if (trace - 1.0).abs() > 4.0 * f64::EPSILON {
            matrix.unscale(trace)
        } else {
            matrix
        };
        let (lo, _) = eigen_range(&matrix);
        if lo < -NORMALIZATION_TOL {
            return Err(Error::InvalidOperator(format!(
                "negative eigenvalue {lo}"
            )));
        }
        Ok(Self { matrix })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: Matrix::identity(dim, dim).unscale(dim as f64),
        }
    }

    /// `Σ pᵢ |ψᵢ⟩⟨ψᵢ|`; the weights must sum to one.
    pub fn from_ensemble(parts: &[(f64, &QuantumState)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidOperator("empty ensemble".into()))?;
        let dim = first.1.dim();
        let mut matrix = Matrix::zeros(dim, dim);
        for (p, psi) in parts {
            check_dims(dim, psi.dim())?;
            if *p < 0.0 {
                return Err(Error::InvalidOperator(format!("negative weight {p}")));
            }
            matrix += psi.projector().matrix.scale(*p);
        }
        Self::new(matrix)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn is_pure(&self) -> bool {
        (self.purity() - 1.0).abs() <= 1e-8
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation(&self, psi: &QuantumState) -> Result<f64> {
        check_dims(self.dim(), psi.dim())?;
        let v = DVector::from_column_slice(psi.amplitudes());
        Ok(v.dotc(&(&self.matrix * &v)).re)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        Ok(max_abs(&(&self.matrix - &other.matrix)))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.distance(other).map(|d| d <= tol).unwrap_or(false)
    }

    /// Bloch vector of a qubit density operator.
    pub fn bloch(&self) -> Result<[f64; 3]> {
        bloch_of(&self.matrix)
    }
}

/// A POVM element `0 ≤ E ≤ I`.
#[derive(Debug, Clone, PartialEq)]
pub struct Effect {
    matrix: Matrix,
}

impl Effect {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let matrix = repair_hermitian(matrix).map_err(Error::InvalidOperator)?;
        let (lo, hi) = eigen_range(&matrix);
        if lo < -NORMALIZATION_TOL || hi > 1.0 + NORMALIZATION_TOL {
            return Err(Error::InvalidOperator(format!(
                "effect eigenvalues [{lo}, {hi}] outside [0, 1]"
            )));
        }
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: Matrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `I − E`.
    pub fn complement(&self) -> Self {
        let dim = self.dim();
        Self {
            matrix: Matrix::identity(dim, dim) - &self.matrix,
        }
    }

    /// True when the effect is a rank-one projector.
    pub fn is_rank_one_projector(&self, tol: f64) -> bool {
        let sq = &self.matrix * &self.matrix;
        max_abs(&(sq - &self.matrix)) <= tol && (self.matrix.trace().re - 1.0).abs() <= tol
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim() && max_abs(&(&self.matrix - &other.matrix)) <= tol
    }

    /// Bloch vector of a qubit rank-one projector `(I + n·σ)/2`.
    pub fn bloch(&self) -> Result<[f64; 3]> {
        bloch_of(&self.matrix)
    }
}

/// A qubit observable `n·σ` with eigenvalues `±1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitObservable {
    matrix: Matrix,
    bloch: [f64; 3],
}

impl QubitObservable {
    pub fn from_bloch(n: [f64; 3]) -> Result<Self> {
        let bloch = unit_vector(n)?;
        Ok(Self {
            matrix: pauli_combination(bloch),
            bloch,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn bloch(&self) -> [f64; 3] {
        self.bloch
    }

    /// Eigenstate with eigenvalue `+1`.
    pub fn plus_state(&self) -> QuantumState {
        QuantumState::from_bloch(self.bloch).expect("unit bloch vector")
    }

    /// Eigenstate with eigenvalue `−1`.
    pub fn minus_state(&self) -> QuantumState {
        QuantumState::from_bloch(neg(self.bloch)).expect("unit bloch vector")
    }
}

/// `|⟨a|b⟩|²`.
pub fn overlap_sq(a: &QuantumState, b: &QuantumState) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().min(1.0))
}

/// Pure-state trace distance `√(1 − |⟨a|b⟩|²)`.
pub fn trace_distance(a: &QuantumState, b: &QuantumState) -> Result<f64> {
    Ok((1.0 - overlap_sq(a, b)?).max(0.0).sqrt())
}

/// Quantum overlap `L_Q = 1 − √(1 − |⟨a|b⟩|²)`.
pub fn quantum_overlap(a: &QuantumState, b: &QuantumState) -> Result<f64> {
    Ok(1.0 - trace_distance(a, b)?)
}

/// Born probability `Tr(ρE)`.
///
/// Values within [`NORMALIZATION_TOL`] of `[0, 1]` are clamped onto it; anything
/// further out is an error.
pub fn born_probability(rho: &DensityOperator, e: &Effect) -> Result<f64> {
    check_dims(rho.dim(), e.dim())?;
    let p = (rho.matrix() * e.matrix()).trace().re;
    if !(-NORMALIZATION_TOL..=1.0 + NORMALIZATION_TOL).contains(&p) {
        return Err(Error::ProbabilityOutOfRange { value: p });
    }
    Ok(p.clamp(0.0, 1.0))
}

/// The three trine observables `A_1, A_2, A_3`.
///
/// Bloch vectors lie in the x–z plane at angles `0, 2π/3, 4π/3` from `+z`, so
/// the observables sum to zero.
pub fn trine_observables() -> [QubitObservable; 3] {
    [0, 1, 2].map(|t| {
        let angle = 2.0 * PI * t as f64 / 3.0;
        QubitObservable::from_bloch([angle.sin(), 0.0, angle.cos()]).expect("unit vector")
    })
}

/// The spectral projectors `A^± = (I ± A)/2`.
pub fn projectors_of(a: &QubitObservable) -> (Effect, Effect) {
    let id = Matrix::identity(2, 2);
    let half = Complex64::new(0.5, 0.0);
    (
        Effect {
            matrix: (&id + a.matrix()) * half,
        },
        Effect {
            matrix: (&id - a.matrix()) * half,
        },
    )
}

pub fn pauli_x() -> Matrix {
    Matrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

pub fn pauli_y() -> Matrix {
    let i = Complex64::new(0.0, 1.0);
    Matrix::from_row_slice(2, 2, &[ZERO, -i, i, ZERO])
}

pub fn pauli_z() -> Matrix {
    Matrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

fn pauli_combination(n: [f64; 3]) -> Matrix {
    pauli_x() * Complex64::new(n[0], 0.0)
        + pauli_y() * Complex64::new(n[1], 0.0)
        + pauli_z() * Complex64::new(n[2], 0.0)
}

fn bloch_of(m: &Matrix) -> Result<[f64; 3]> {
    if m.nrows() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: m.nrows(),
        });
    }
    let off = m[(0, 1)];
    Ok([2.0 * off.re, -2.0 * off.im, (m[(0, 0)] - m[(1, 1)]).re])
}

fn unit_vector(n: [f64; 3]) -> Result<[f64; 3]> {
    let norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > REPAIR_TOL {
        return Err(Error::InvalidState(format!(
            "Bloch vector has length {norm}, expected 1"
        )));
    }
    Ok(n.map(|x| x / norm))
}

fn neg(n: [f64; 3]) -> [f64; 3] {
    n.map(|x| -x)
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn max_abs(m: &Matrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn repair_hermitian(matrix: Matrix) -> std::result::Result<Matrix, String> {
    if !matrix.is_square() || matrix.nrows() < 2 {
        return Err(format!(
            "expected a square matrix of size at least 2, got {}x{}",
            matrix.nrows(),
            matrix.ncols()
        ));
    }
    if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err("non-finite matrix entry".into());
    }
    let skew = max_abs(&(&matrix - matrix.adjoint()));
    if skew > REPAIR_TOL {
        return Err(format!("not Hermitian (skew {skew:e})"));
    }
    if skew == 0.0 {
        return Ok(matrix);
    }
    let adj = matrix.adjoint();
    Ok((matrix + adj) * Complex64::new(0.5, 0.0))
}

fn eigen_range(m: &Matrix) -> (f64, f64) {
    let eig = SymmetricEigen::new(m.clone());
    eig.eigenvalues
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn trine_plus_states() -> Vec<QuantumState> {
        trine_observables().iter().map(|a| a.plus_state()).collect()
    }

    #[test]
    fn overlap_examples() {
        let psi = QuantumState::from_bloch([0.3, -0.4, (1.0f64 - 0.25).sqrt()]).unwrap();
        assert_abs_diff_eq!(overlap_sq(&psi, &psi).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            overlap_sq(&QuantumState::zero(), &QuantumState::one()).unwrap(),
            0.0
        );
        let t = trine_plus_states();
        assert_abs_diff_eq!(overlap_sq(&t[0], &t[1]).unwrap(), 0.25, epsilon = 1e-12);
    }

    #[test]
    fn quantum_overlap_examples() {
        let zero = QuantumState::zero();
        assert_abs_diff_eq!(quantum_overlap(&zero, &zero).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            quantum_overlap(&zero, &QuantumState::one()).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        // 1 - 1/sqrt(2), evaluated independently at extended precision.
        assert_abs_diff_eq!(
            quantum_overlap(&zero, &QuantumState::plus()).unwrap(),
            0.292_893_218_813_452_5,
            epsilon = 1e-12
        );
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let q3 = QuantumState::basis(3, 0).unwrap();
        assert!(matches!(
            overlap_sq(&QuantumState::zero(), &q3),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(quantum_overlap(&q3, &QuantumState::zero()).is_err());
        let rho = DensityOperator::maximally_mixed(3);
        assert!(born_probability(&rho, &QuantumState::zero().effect()).is_err());
    }

    #[test]
    fn born_examples() {
        let mixed = DensityOperator::maximally_mixed(2);
        let (a_plus, _) = projectors_of(&trine_observables()[1]);
        assert_abs_diff_eq!(born_probability(&mixed, &a_plus).unwrap(), 0.5, epsilon = 1e-12);
        let phi = QuantumState::from_bloch([0.6, 0.0, 0.8]).unwrap();
        assert_abs_diff_eq!(
            born_probability(&phi.projector(), &phi.effect()).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            born_probability(&QuantumState::zero().projector(), &QuantumState::one().effect())
                .unwrap(),
            0.0
        );
    }

    #[test]
    fn born_rejects_out_of_range() {
        // Bypass the constructor to get an "effect" with eigenvalue 2.
        let e = Effect {
            matrix: Matrix::identity(2, 2) * Complex64::new(2.0, 0.0),
        };
        let rho = DensityOperator::maximally_mixed(2);
        assert!(matches!(
            born_probability(&rho, &e),
            Err(Error::ProbabilityOutOfRange { .. })
        ));
    }

    #[test]
    fn trine_geometry() {
        let trine = trine_observables();
        let sum = trine[0].matrix() + trine[1].matrix() + trine[2].matrix();
        assert!(max_abs(&sum) < 1e-15);
        for i in 0..3 {
            let sq = trine[i].matrix() * trine[i].matrix();
            assert!(max_abs(&(sq - Matrix::identity(2, 2))) < 1e-15);
            for j in (i + 1)..3 {
                let (a, b) = (trine[i].bloch(), trine[j].bloch());
                let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                assert_abs_diff_eq!(dot, -0.5, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn trine_projectors() {
        let half_id = DensityOperator::maximally_mixed(2);
        for a in trine_observables() {
            let (p, m) = projectors_of(&a);
            assert!(max_abs(&(p.matrix() * m.matrix())) < 1e-15);
            assert_abs_diff_eq!(p.matrix().trace().re, 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(m.matrix().trace().re, 1.0, epsilon = 1e-15);
            assert!(p.is_rank_one_projector(1e-12) && m.is_rank_one_projector(1e-12));
            let avg = (p.matrix() + m.matrix()) * Complex64::new(0.5, 0.0);
            assert!(max_abs(&(avg - half_id.matrix())) < 1e-15);
            assert!(max_abs(&(p.matrix() - m.matrix() - a.matrix())) < 1e-15);
            // Eigenstates match the projectors.
            assert!(a.plus_state().effect().approx_eq(&p, 1e-12));
            assert!(a.minus_state().effect().approx_eq(&m, 1e-12));
        }
    }

    #[test]
    fn constructors_repair_small_drift_and_reject_large() {
        let s = QuantumState::new(vec![Complex64::new(1.0 + 1e-8, 0.0), ZERO]).unwrap();
        assert_abs_diff_eq!(s.amplitudes()[0].re, 1.0, epsilon = 1e-15);
        assert!(QuantumState::new(vec![Complex64::new(1.1, 0.0), ZERO]).is_err());
        assert!(QuantumState::new(vec![ONE]).is_err());

        let mut m = Matrix::identity(2, 2) * Complex64::new(0.5 + 1e-9, 0.0);
        m[(0, 1)] = Complex64::new(0.0, 1e-9);
        let rho = DensityOperator::new(m).unwrap();
        assert_abs_diff_eq!(rho.matrix().trace().re, 1.0, epsilon = 1e-15);

        let bad = Matrix::from_row_slice(2, 2, &[ONE, ONE, ZERO, ZERO]);
        assert!(DensityOperator::new(bad).is_err());
        let negative = Matrix::from_row_slice(2, 2, &[ONE * 1.5, ZERO, ZERO, -ONE * 0.5]);
        assert!(DensityOperator::new(negative).is_err());
        assert!(Effect::new(Matrix::identity(2, 2) * Complex64::new(1.5, 0.0)).is_err());
    }

    #[test]
    fn orthogonal_complement_and_bloch_round_trip() {
        let n = [0.48, 0.6, 0.64];
        let psi = QuantumState::from_bloch(n).unwrap();
        let b = psi.bloch().unwrap();
        for k in 0..3 {
            assert_abs_diff_eq!(b[k], n[k], epsilon = 1e-12);
        }
        assert!(overlap_sq(&psi, &psi.orthogonal().unwrap()).unwrap() < 1e-24);
    }

    fn arb_state() -> impl Strategy<Value = QuantumState> {
        proptest::collection::vec(-1.0f64..1.0, 4).prop_filter_map("nonzero", |v| {
            QuantumState::from_unnormalized(vec![
                Complex64::new(v[0], v[1]),
                Complex64::new(v[2], v[3]),
            ])
            .ok()
        })
    }

    proptest! {
        #[test]
        fn quantum_overlap_is_symmetric_and_bounded(a in arb_state(), b in arb_state()) {
            let ab = quantum_overlap(&a, &b).unwrap();
            let ba = quantum_overlap(&b, &a).unwrap();
            prop_assert!((0.0..=1.0).contains(&ab));
            prop_assert!((ab - ba).abs() < 1e-12);
        }

        #[test]
        fn overlap_ignores_global_phase(a in arb_state(), b in arb_state(), t in 0.0f64..6.3) {
            let base = overlap_sq(&a, &b).unwrap();
            prop_assert!((overlap_sq(&a.with_global_phase(t), &b).unwrap() - base).abs() < 1e-12);
            prop_assert!((overlap_sq(&a, &b.with_global_phase(-t)).unwrap() - base).abs() < 1e-12);
        }

        #[test]
        fn born_complement_sums_to_one(a in arb_state(), b in arb_state(), p in 0.0f64..1.0) {
            let rho = DensityOperator::from_ensemble(&[(p, &a), (1.0 - p, &a.orthogonal().unwrap())]).unwrap();
            let e = b.effect();
            let total = born_probability(&rho, &e).unwrap() + born_probability(&rho, &e.complement()).unwrap();
            prop_assert!((total - 1.0).abs() < 1e-10);
        }
    }
}
