use crate::error::{Error, Result};
use crate::ontic::{mixture, support, support_integral, OntologicalModel, DEFAULT_SUPPORT_EPS};
use crate::overlap::{total_variation, EpistemicityDegree, ORTHOGONALITY_THRESHOLD};
use crate::quantum::{overlap_sq, QuantumState};

/// Support integrals of `μ_χ`, `μ_χ⊥` over `Λ_η`, `Λ_η⊥` and the epistemicity
/// degrees they imply.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem1Report {
    /// `((χ, χ⊥), (η, η⊥))`.
    pub bases: ((QuantumState, QuantumState), (QuantumState, QuantumState)),
    /// `integrals[a][b] = ∫_{Λ_b} μ_a` with rows `χ, χ⊥` and columns `η, η⊥`.
    pub integrals: [[f64; 2]; 2],
    /// Sum of the four integrals; equals 2 under mixed-state noncontextuality.
    pub lhs_eq12: f64,
    /// `f(χ,η), f(χ,η⊥), f(χ⊥,η), f(χ⊥,η⊥)`; `None` where the pair is orthogonal.
    pub f_values: [Option<EpistemicityDegree>; 4],
    /// Total-variation distance between `(μ_χ + μ_χ⊥)/2` and `(μ_η + μ_η⊥)/2`.
    pub mixed_distance: f64,
    pub tolerance: f64,
    pub conclusion: bool,
}

impl Theorem1Report {
    pub fn defined_f_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.f_values.iter().flatten().map(|f| f.value)
    }
}

/// Evaluates the two-decomposition identity for `I/2 = (χ + χ⊥)/2 = (η + η⊥)/2`.
///
/// Orthogonal sub-pairs (e.g. `χ = η` makes `(χ, η⊥)` orthogonal) get no `f`
/// value; the conclusion only requires the defined ones to equal 1.
pub fn theorem1_check(
    model: &OntologicalModel,
    chi: &QuantumState,
    eta: &QuantumState,
    tol: f64,
) -> Result<Theorem1Report> {
    if chi.dim() != 2 || eta.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: chi.dim().max(eta.dim()),
        });
    }
    let chi_perp = chi.orthogonal()?;
    let eta_perp = eta.orthogonal()?;
    let preps = [chi, &chi_perp];
    let measured = [eta, &eta_perp];

    let mus = [model.epistemic_for(chi)?, model.epistemic_for(&chi_perp)?];
    let regions = [
        support(&*model.epistemic_for(eta)?, DEFAULT_SUPPORT_EPS)?,
        support(&*model.epistemic_for(&eta_perp)?, DEFAULT_SUPPORT_EPS)?,
    ];

    let mut integrals = [[0.0; 2]; 2];
    let mut f_values: [Option<EpistemicityDegree>; 4] = Default::default();
    for a in 0..2 {
        for b in 0..2 {
            let integral = support_integral(&mus[a], &regions[b])?;
            integrals[a][b] = integral;
            let overlap = overlap_sq(preps[a], measured[b])?;
            if overlap >= ORTHOGONALITY_THRESHOLD {
                f_values[2 * a + b] = Some(EpistemicityDegree {
                    value: integral / overlap,
                    pair: (preps[a].clone(), measured[b].clone()),
                });
            }
        }
    }
    let lhs_eq12 = integrals.iter().flatten().sum::<f64>();

    let p = mixture(&[(0.5, &mus[0]), (0.5, &mus[1])])?;
    let p_prime = mixture(&[
        (0.5, &*model.epistemic_for(eta)?),
        (0.5, &*model.epistemic_for(&eta_perp)?),
    ])?;
    let mixed_distance = total_variation(&p, &p_prime)?;

    let conclusion = (lhs_eq12 - 2.0).abs() <= tol
        && f_values.iter().flatten().all(|f| (f.value - 1.0).abs() <= tol);
    Ok(Theorem1Report {
        bases: ((chi.clone(), chi_perp), (eta.clone(), eta_perp)),
        integrals,
        lhs_eq12,
        f_values,
        mixed_distance,
        tolerance: tol,
        conclusion,
    })
}
