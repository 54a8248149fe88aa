use crate::error::{Error, Result};
use crate::ontic::PreparationProcedure;
use crate::overlap::{classical_fidelity, total_variation};
use crate::quantum::{quantum_overlap, QuantumState};

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem2Report {
    pub labels: (String, String),
    /// `L_Q(ψ, ψ)`, always 1.
    pub l_q: f64,
    pub l_c: f64,
    pub total_variation: f64,
    /// `|TV − (1 − L_C)|`.
    pub identity_residual: f64,
    /// `L_C ≥ 1 − tol`: the pair looks maximally ψ-epistemic (second definition).
    pub antecedent: bool,
    /// `antecedent ⇒ TV ≤ 2·tol`.
    pub implication_holds: bool,
    pub tolerance: f64,
}

/// Two procedures for the same pure state `ψ`: if their classical fidelity is
/// (within `tol`) maximal then their epistemic states coincide (within `2·tol`).
pub fn theorem2_check(
    psi: &QuantumState,
    p1: &PreparationProcedure,
    p2: &PreparationProcedure,
    tol: f64,
) -> Result<Theorem2Report> {
    let rho = psi.projector();
    for p in [p1, p2] {
        if !p.target.approx_eq(&rho, 1e-8) {
            return Err(Error::MismatchedTargets(format!(
                "procedure `{}` does not prepare the given pure state",
                p.label
            )));
        }
    }
    let l_q = quantum_overlap(psi, psi)?;
    let l_c = classical_fidelity(&p1.epistemic, &p2.epistemic)?;
    let tv = total_variation(&p1.epistemic, &p2.epistemic)?;
    let antecedent = l_c >= 1.0 - tol;
    Ok(Theorem2Report {
        labels: (p1.label.clone(), p2.label.clone()),
        l_q,
        l_c,
        total_variation: tv,
        identity_residual: (tv - (1.0 - l_c)).abs(),
        antecedent,
        implication_holds: !antecedent || tv <= 2.0 * tol,
        tolerance: tol,
    })
}
