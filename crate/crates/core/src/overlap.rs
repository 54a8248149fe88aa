//! Overlap quantities linking Hilbert-space and ontic-space descriptions:
//! classical fidelity `L_C`, quantum overlap `L_Q`, and the degree of
//! epistemicity `f(ψ,φ)`.

use crate::error::{Error, Result};
use crate::ontic::{
    check_shared_states, support, support_integral, EpistemicState, OntologicalModel,
    DEFAULT_SUPPORT_EPS,
};
use crate::quantum::{overlap_sq, quantum_overlap, QuantumState};

/// Below this `|⟨ψ|φ⟩|²` the degree of epistemicity is undefined.
pub const ORTHOGONALITY_THRESHOLD: f64 = 1e-8;

/// `L_C = Σᵢ wᵢ min(μ₁ᵢ, μ₂ᵢ)`.
pub fn classical_fidelity(mu1: &EpistemicState, mu2: &EpistemicState) -> Result<f64> {
    check_shared_states(mu1, mu2)?;
    Ok(mu1
        .space()
        .weights()
        .iter()
        .zip(mu1.density().iter().zip(mu2.density()))
        .map(|(w, (a, b))| w * a.min(*b))
        .sum())
}

/// Total-variation distance `½ Σᵢ wᵢ |μ₁ᵢ − μ₂ᵢ|`.
pub fn total_variation(mu1: &EpistemicState, mu2: &EpistemicState) -> Result<f64> {
    check_shared_states(mu1, mu2)?;
    Ok(0.5
        * mu1
            .space()
            .weights()
            .iter()
            .zip(mu1.density().iter().zip(mu2.density()))
            .map(|(w, (a, b))| w * (a - b).abs())
            .sum::<f64>())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpistemicityDegree {
    pub value: f64,
    pub pair: (QuantumState, QuantumState),
}

/// `f(ψ,φ) = ∫_{Λ_φ} μ_ψ / |⟨ψ|φ⟩|²`, with `Λ_φ` the support of `μ_φ`.
pub fn degree_of_epistemicity(
    model: &OntologicalModel,
    psi: &QuantumState,
    phi: &QuantumState,
) -> Result<EpistemicityDegree> {
    let overlap = overlap_sq(psi, phi)?;
    if overlap < ORTHOGONALITY_THRESHOLD {
        return Err(Error::UndefinedEpistemicity(overlap));
    }
    let mu_psi = model.epistemic_for(psi)?;
    let mu_phi = model.epistemic_for(phi)?;
    let region = support(&mu_phi, DEFAULT_SUPPORT_EPS)?;
    let value = support_integral(&mu_psi, &region)? / overlap;
    Ok(EpistemicityDegree {
        value,
        pair: (psi.clone(), phi.clone()),
    })
}

/// Quantum and classical overlap of one state pair. `deficit = l_q − l_c` is signed.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapRecord {
    pub state_pair: (QuantumState, QuantumState),
    pub overlap_sq: f64,
    pub l_q: f64,
    pub l_c: f64,
    pub deficit: f64,
}

pub fn overlap_record(
    model: &OntologicalModel,
    a: &QuantumState,
    b: &QuantumState,
) -> Result<OverlapRecord> {
    let mu_a = model.epistemic_for(a)?;
    let mu_b = model.epistemic_for(b)?;
    Ok(record_from(a, b, &mu_a, &mu_b)?)
}

/// Overlap record for two explicit epistemic states of the given states.
pub fn record_from(
    a: &QuantumState,
    b: &QuantumState,
    mu_a: &EpistemicState,
    mu_b: &EpistemicState,
) -> Result<OverlapRecord> {
    let l_q = quantum_overlap(a, b)?;
    let l_c = classical_fidelity(mu_a, mu_b)?;
    Ok(OverlapRecord {
        state_pair: (a.clone(), b.clone()),
        overlap_sq: overlap_sq(a, b)?,
        l_q,
        l_c,
        deficit: l_q - l_c,
    })
}
