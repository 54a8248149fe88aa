//! Sample-based classification of a model: ψ-ontic vs ψ-epistemic, the two
//! notions of maximal ψ-epistemicity, preparation (non)contextuality at the
//! pure- and mixed-state level, and outcome determinism.
//!
//! Universal statements over all state pairs are not finitely checkable, so
//! every verdict refers to an explicit list of sampled pairs. A verdict is
//! [`TriState::Undetermined`] when no violation was found but fewer pairs than
//! the configured coverage floor could be evaluated.

use itertools::Itertools;
use rand::seq::index::sample;

use crate::error::{Error, Result};
use std::f64::consts::PI;

use crate::ontic::{
    support, OnticPoints, OnticSpace, OntologicalModel, PreparationProcedure, REFERENCE_BORN_TOL, DEFAULT_SUPPORT_EPS,
};
use crate::overlap::{
    classical_fidelity, degree_of_epistemicity, overlap_record, record_from, total_variation,
    ORTHOGONALITY_THRESHOLD,
};
use crate::quantum::{overlap_sq, trine_observables, DensityOperator, QuantumState};
use crate::sampling::{haar_state, seeded_rng};

pub type StatePair = (QuantumState, QuantumState);

/// Tolerance for deciding that two preparation targets are the same operator.
const TARGET_MATCH_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifierConfig {
    pub tolerance: f64,
    /// Minimum number of evaluated pairs for a `Yes` verdict.
    pub coverage_floor: usize,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        Self {
            tolerance: REFERENCE_BORN_TOL,
            coverage_floor: 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OnticVerdict {
    PsiOntic,
    PsiEpistemic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriState {
    Yes,
    No,
    Undetermined,
}

/// The pair that deviates most from the maximal-epistemicity condition.
#[derive(Debug, Clone, PartialEq)]
pub struct PairWitness {
    pub pair: StatePair,
    /// Measured quantity (`f` or `L_C`).
    pub value: f64,
    /// What it should equal (`1` or `L_Q`).
    pub reference: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxEpistemicVerdict {
    pub status: TriState,
    pub max_deviation: f64,
    pub witness: Option<PairWitness>,
    pub evaluated: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelVerdict {
    pub ontic_or_epistemic: OnticVerdict,
    pub max_psi_epistemic_1: MaxEpistemicVerdict,
    pub max_psi_epistemic_2: MaxEpistemicVerdict,
    pub sampled_pairs: usize,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContextualityLevel {
    PureState,
    MixedState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContextualityWitness {
    pub state: DensityOperator,
    pub procedures: (String, String),
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContextualityVerdict {
    pub level: ContextualityLevel,
    pub noncontextual: bool,
    /// Largest total-variation distance found; `None` when no state had two procedures.
    pub witness: Option<ContextualityWitness>,
}

impl ContextualityVerdict {
    pub fn max_distance(&self) -> f64 {
        self.witness.as_ref().map_or(0.0, |w| w.distance)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeterminismReport {
    pub deterministic: bool,
    /// Fraction of response entries (on the union of supports) within tolerance of 0 or 1.
    pub fraction: f64,
    pub evaluated: usize,
}

/// Named pairs from the trine and Pauli constructions.
fn deterministic_pairs() -> Vec<StatePair> {
    let trine: Vec<QuantumState> = trine_observables().iter().map(|a| a.plus_state()).collect();
    let minus: Vec<QuantumState> = trine_observables().iter().map(|a| a.minus_state()).collect();
    vec![
        (QuantumState::zero(), QuantumState::plus()),
        (QuantumState::zero(), QuantumState::plus_i()),
        (QuantumState::plus(), QuantumState::plus_i()),
        (trine[0].clone(), trine[1].clone()),
        (trine[0].clone(), trine[2].clone()),
        (trine[1].clone(), trine[2].clone()),
        (trine[0].clone(), minus[1].clone()),
        (trine[1].clone(), minus[2].clone()),
    ]
}

fn non_orthogonal(pair: &StatePair) -> bool {
    overlap_sq(&pair.0, &pair.1).is_ok_and(|o| o >= ORTHOGONALITY_THRESHOLD)
}

/// Grid cells the lune `Λ_ψ ∩ Λ_φ` must span for `f(ψ,φ)` to be resolved to
/// about 2.5% on a spherical grid, independently of the grid size.
pub const RESOLUTION_CELLS: f64 = 600.0;

/// Smallest `|⟨ψ|φ⟩|²` whose support integral a grid on `space` resolves.
///
/// For hemispherical supports the overlap region of two states at Bloch angle
/// `π − α` is a lune of area `2α`, i.e. `αN/2π` cells. Abstract spaces have no
/// such scale and fall back to the orthogonality threshold.
pub fn min_resolvable_overlap(space: &OnticSpace) -> f64 {
    match space.points() {
        OnticPoints::Bloch(p) => {
            let alpha = (2.0 * PI * RESOLUTION_CELLS / p.len() as f64).min(PI / 2.0);
            (alpha / 2.0).sin().powi(2).max(ORTHOGONALITY_THRESHOLD)
        }
        OnticPoints::Abstract(_) => ORTHOGONALITY_THRESHOLD,
    }
}

/// Up to `budget` non-orthogonal state pairs for `model`, fully determined by `seed`.
///
/// Models with an analytic state rule get the named trine/Pauli pairs followed
/// by Haar-random qubit pairs, redrawn while their overlap is below
/// [`min_resolvable_overlap`]. Otherwise pairs are drawn from the registered
/// pure states (all of them when they fit in the budget).
pub fn sample_pairs(model: &OntologicalModel, seed: u64, budget: usize) -> Vec<StatePair> {
    let mut rng = seeded_rng(seed);
    if model.rule().is_some() {
        let floor = min_resolvable_overlap(model.space());
        let mut pairs: Vec<StatePair> = deterministic_pairs().into_iter().take(budget).collect();
        while pairs.len() < budget {
            let pair = (haar_state(&mut rng, 2), haar_state(&mut rng, 2));
            if overlap_sq(&pair.0, &pair.1).is_ok_and(|o| o >= floor) {
                pairs.push(pair);
            }
        }
        return pairs;
    }
    let states = model.registered_pure_states();
    let all: Vec<StatePair> = states
        .iter()
        .tuple_combinations()
        .map(|(a, b)| (a.clone(), b.clone()))
        .filter(non_orthogonal)
        .collect();
    if all.len() <= budget {
        return all;
    }
    let mut chosen = sample(&mut rng, all.len(), budget).into_vec();
    chosen.sort_unstable();
    chosen.into_iter().map(|i| all[i].clone()).collect()
}

fn valid_pairs(pairs: &[StatePair]) -> impl Iterator<Item = &StatePair> {
    pairs.iter().filter(|p| non_orthogonal(p))
}

/// ψ-ontic iff every sampled non-orthogonal pair has `L_C ≤ tol`.
pub fn classify_ontic(model: &OntologicalModel, pairs: &[StatePair], tol: f64) -> Result<OnticVerdict> {
    let mut any = false;
    for (a, b) in valid_pairs(pairs) {
        any = true;
        let l_c = classical_fidelity(&*model.epistemic_for(a)?, &*model.epistemic_for(b)?)?;
        if l_c > tol {
            return Ok(OnticVerdict::PsiEpistemic);
        }
    }
    if !any {
        return Err(Error::NoPairs);
    }
    Ok(OnticVerdict::PsiOntic)
}

fn conclude(
    worst: Option<PairWitness>,
    evaluated: usize,
    tol: f64,
    floor: usize,
) -> MaxEpistemicVerdict {
    let max_deviation = worst.as_ref().map_or(0.0, |w| w.deviation);
    let status = if max_deviation > tol {
        TriState::No
    } else if evaluated < floor.max(1) {
        TriState::Undetermined
    } else {
        TriState::Yes
    };
    MaxEpistemicVerdict {
        status,
        max_deviation,
        witness: worst,
        evaluated,
    }
}

fn keep_worst(worst: &mut Option<PairWitness>, candidate: PairWitness) {
    if worst.as_ref().is_none_or(|w| candidate.deviation > w.deviation) {
        *worst = Some(candidate);
    }
}

/// First definition: `|f(ψ,φ) − 1| ≤ tol` on every pair.
pub fn is_max_epistemic_1(
    model: &OntologicalModel,
    pairs: &[StatePair],
    config: &ClassifierConfig,
) -> Result<MaxEpistemicVerdict> {
    let mut worst = None;
    let mut evaluated = 0;
    for (a, b) in pairs {
        let f = degree_of_epistemicity(model, a, b)?;
        evaluated += 1;
        keep_worst(
            &mut worst,
            PairWitness {
                pair: (a.clone(), b.clone()),
                value: f.value,
                reference: 1.0,
                deviation: (f.value - 1.0).abs(),
            },
        );
    }
    Ok(conclude(worst, evaluated, config.tolerance, config.coverage_floor))
}

/// Second definition: `|L_Q − L_C| ≤ tol` on every pair.
///
/// Besides the supplied pairs, every pair of distinct registered procedures
/// preparing the same pure state is evaluated as a `(ψ, ψ)` pair.
pub fn is_max_epistemic_2(
    model: &OntologicalModel,
    pairs: &[StatePair],
    config: &ClassifierConfig,
) -> Result<MaxEpistemicVerdict> {
    let mut worst = None;
    let mut evaluated = 0;
    for (a, b) in pairs {
        let rec = overlap_record(model, a, b)?;
        evaluated += 1;
        keep_worst(
            &mut worst,
            PairWitness {
                pair: (a.clone(), b.clone()),
                value: rec.l_c,
                reference: rec.l_q,
                deviation: rec.deficit.abs(),
            },
        );
    }
    for group in target_groups(model, ContextualityLevel::PureState) {
        let Some(psi) = crate::ontic::pure_state_of(&group[0].target) else { continue };
        for (p, q) in group.iter().tuple_combinations() {
            let rec = record_from(&psi, &psi, &p.epistemic, &q.epistemic)?;
            evaluated += 1;
            keep_worst(
                &mut worst,
                PairWitness {
                    pair: (psi.clone(), psi.clone()),
                    value: rec.l_c,
                    reference: rec.l_q,
                    deviation: rec.deficit.abs(),
                },
            );
        }
    }
    Ok(conclude(worst, evaluated, config.tolerance, config.coverage_floor))
}

pub fn classify_model(
    model: &OntologicalModel,
    pairs: &[StatePair],
    config: &ClassifierConfig,
) -> Result<ModelVerdict> {
    let valid: Vec<StatePair> = valid_pairs(pairs).cloned().collect();
    Ok(ModelVerdict {
        ontic_or_epistemic: classify_ontic(model, &valid, config.tolerance)?,
        max_psi_epistemic_1: is_max_epistemic_1(model, &valid, config)?,
        max_psi_epistemic_2: is_max_epistemic_2(model, &valid, config)?,
        sampled_pairs: valid.len(),
        tolerance: config.tolerance,
    })
}

fn level_of(rho: &DensityOperator) -> ContextualityLevel {
    if rho.is_pure() {
        ContextualityLevel::PureState
    } else {
        ContextualityLevel::MixedState
    }
}

/// Preparation noncontextuality for one density operator: every pair of
/// procedures must have total-variation distance `≤ tol`.
pub fn check_preparation_noncontextuality(
    rho: &DensityOperator,
    procs: &[&PreparationProcedure],
    tol: f64,
) -> Result<ContextualityVerdict> {
    if let Some(p) = procs.iter().find(|p| !p.target.approx_eq(rho, TARGET_MATCH_TOL)) {
        return Err(Error::MismatchedTargets(format!(
            "procedure `{}` does not prepare the requested state",
            p.label
        )));
    }
    let mut witness: Option<ContextualityWitness> = None;
    for (p, q) in procs.iter().tuple_combinations() {
        let distance = total_variation(&p.epistemic, &q.epistemic)?;
        if witness.as_ref().is_none_or(|w| distance > w.distance) {
            witness = Some(ContextualityWitness {
                state: rho.clone(),
                procedures: (p.label.clone(), q.label.clone()),
                distance,
            });
        }
    }
    let noncontextual = witness.as_ref().is_none_or(|w| w.distance <= tol);
    Ok(ContextualityVerdict {
        level: level_of(rho),
        noncontextual,
        witness,
    })
}

/// Registered preparations grouped by target, restricted to one level.
fn target_groups(model: &OntologicalModel, level: ContextualityLevel) -> Vec<Vec<&PreparationProcedure>> {
    let mut groups: Vec<Vec<&PreparationProcedure>> = Vec::new();
    for p in model.preparations() {
        if level_of(&p.target) != level {
            continue;
        }
        match groups
            .iter_mut()
            .find(|g| g[0].target.approx_eq(&p.target, TARGET_MATCH_TOL))
        {
            Some(g) => g.push(p),
            None => groups.push(vec![p]),
        }
    }
    groups
}

/// Noncontextuality at one level over every registered state with several procedures.
pub fn contextuality_at_level(
    model: &OntologicalModel,
    level: ContextualityLevel,
    tol: f64,
) -> Result<ContextualityVerdict> {
    let mut result = ContextualityVerdict {
        level,
        noncontextual: true,
        witness: None,
    };
    for group in target_groups(model, level) {
        let v = check_preparation_noncontextuality(&group[0].target, &group, tol)?;
        if v.max_distance() > result.max_distance() || result.witness.is_none() && v.witness.is_some() {
            result.witness = v.witness;
        }
        result.noncontextual &= v.noncontextual;
    }
    Ok(result)
}

/// Every registered response value on the union of preparation supports must be
/// within `tol` of 0 or 1.
pub fn check_outcome_determinism(model: &OntologicalModel, tol: f64) -> DeterminismReport {
    let n = model.space().len();
    let mut in_support = vec![false; n];
    for p in model.preparations() {
        if let Ok(idx) = support(&p.epistemic, DEFAULT_SUPPORT_EPS) {
            for i in idx {
                in_support[i] = true;
            }
        }
    }
    let mut total = 0usize;
    let mut deterministic = 0usize;
    for m in model.measurements() {
        let r = m.response();
        for i in (0..n).filter(|&i| in_support[i]) {
            for v in r.row(i) {
                total += 1;
                if v.abs() <= tol || (1.0 - v).abs() <= tol {
                    deterministic += 1;
                }
            }
        }
    }
    DeterminismReport {
        deterministic: total > 0 && deterministic == total,
        fraction: if total == 0 { 0.0 } else { deterministic as f64 / total as f64 },
        evaluated: total,
    }
}
