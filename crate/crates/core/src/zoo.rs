//! Concrete ontological models.
//!
//! * [`build_ks`]: the Kochen–Specker qubit model. `μ_ψ(λ) ∝ max(0, ψ̂·λ)` is a
//!   cosine cap on the hemisphere around `ψ̂`; the response to `{Π_φ, Π_φ⊥}` is
//!   the Heaviside function of `φ̂·λ`. Maximally ψ-epistemic in `d = 2`.
//! * [`build_bb`]: the Beltrametti–Bugajski model. Point masses at the grid
//!   point of each state, responses equal to the Born weight of that point.
//!   ψ-ontic and indeterministic.
//! * [`build_theorem3_witness`]: a six-point model in which every decomposition
//!   of `I/2` into trine projectors shares one epistemic state while the pure
//!   states change with context.
//! * [`build_truncated_epistemic`]: a deliberately non-maximal variant of a base
//!   model, used as a negative control.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ontic::{
    dot, mixture, support, EpistemicState, Measurement, OnticSpace, OntologicalModel,
    PreparationProcedure, ResponseFunction, StateRule, DEFAULT_SUPPORT_EPS,
};
use crate::quantum::{
    projectors_of, trine_observables, DensityOperator, Effect, QuantumState,
};
use crate::sampling::{haar_state, seeded_rng};

/// Smallest grid accepted for sphere-based models.
pub const MIN_SPHERE_GRID: usize = 100;

/// Tag carried by models whose Born validity was broken on purpose.
pub const TAG_BORN_INVALID: &str = "born-invalid";

/// Outcome labels of two-outcome projective measurements: `+` is the first effect.
pub const PLUS: &str = "+";
pub const MINUS: &str = "-";

fn two_outcomes() -> Vec<String> {
    vec![PLUS.to_string(), MINUS.to_string()]
}

/// Named qubit states registered explicitly by [`build_ks`].
pub fn ks_named_states() -> Vec<(String, QuantumState)> {
    let trine = trine_observables();
    let mut out = vec![
        ("0".to_string(), QuantumState::zero()),
        ("1".to_string(), QuantumState::one()),
        ("+".to_string(), QuantumState::plus()),
        ("-".to_string(), QuantumState::minus()),
        ("+i".to_string(), QuantumState::plus_i()),
        ("-i".to_string(), QuantumState::minus_i()),
    ];
    // A1 is the z axis, already covered by |0>, |1>.
    for (t, a) in trine.iter().enumerate().skip(1) {
        out.push((format!("A{}+", t + 1), a.plus_state()));
        out.push((format!("A{}-", t + 1), a.minus_state()));
    }
    out
}

fn require_sphere(space: &OnticSpace) -> Result<&[[f64; 3]]> {
    space
        .bloch_points()
        .ok_or_else(|| Error::InvalidSpace("model requires a Bloch-sphere ontic space".into()))
}

/// KS epistemic state of `ψ`: `(1/π)·max(0, ψ̂·λ)`, renormalized on the grid.
pub fn ks_epistemic(space: &Arc<OnticSpace>, psi: &QuantumState) -> Result<EpistemicState> {
    let n = psi.bloch()?;
    let points = require_sphere(space)?;
    let values = points.iter().map(|p| dot(n, *p).max(0.0) / PI).collect();
    EpistemicState::from_unnormalized(space.clone(), values)
}

/// KS response to a two-outcome projective measurement `{Π_a, I − Π_a}`:
/// outcome `+` iff `â·λ ≥ 0` (the equator goes to `+`).
pub fn ks_response(space: &Arc<OnticSpace>, effects: &[Effect]) -> Result<ResponseFunction> {
    let a = projective_axis(effects)?;
    let points = require_sphere(space)?;
    let table = points
        .iter()
        .flat_map(|p| if dot(a, *p) >= 0.0 { [1.0, 0.0] } else { [0.0, 1.0] })
        .collect();
    ResponseFunction::new(space.clone(), two_outcomes(), table)
}

fn projective_axis(effects: &[Effect]) -> Result<[f64; 3]> {
    match effects {
        [first, second]
            if first.dim() == 2
                && first.is_rank_one_projector(1e-8)
                && second.approx_eq(&first.complement(), 1e-8) =>
        {
            first.bloch()
        }
        _ => Err(Error::MissingResponse(
            "only two-outcome rank-one qubit measurements have an analytic response".into(),
        )),
    }
}

fn projective_measurement(
    label: String,
    phi: &QuantumState,
    response: ResponseFunction,
) -> Result<Measurement> {
    let e = phi.effect();
    Measurement::new(label, vec![e.clone(), e.complement()], response)
}

/// Kochen–Specker model on an `n`-point Fibonacci grid.
///
/// Registers the six Pauli eigenstates and the trine eigenstates, one
/// two-outcome measurement per basis, and two decompositions of `I/2`
/// (`P(z)` from `{|0⟩,|1⟩}` and `P(x)` from `{|+⟩,|−⟩}`). Any other pure state
/// is handled by the attached [`StateRule::KochenSpecker`].
pub fn build_ks(n: usize) -> Result<OntologicalModel> {
    if n < MIN_SPHERE_GRID {
        return Err(Error::InvalidArgument(format!(
            "grid size {n} below minimum {MIN_SPHERE_GRID}"
        )));
    }
    let space = Arc::new(OnticSpace::fibonacci_sphere(n)?);
    let mut model = OntologicalModel::new(space.clone()).with_rule(StateRule::KochenSpecker);
    model.add_tag("kochen-specker");
    let states = ks_named_states();
    for (name, psi) in &states {
        model.add_preparation(PreparationProcedure::new(
            format!("ks:{name}"),
            psi.projector(),
            ks_epistemic(&space, psi)?,
        ))?;
    }
    for (name, idx) in [("Z", 0), ("X", 2), ("Y", 4), ("A2", 6), ("A3", 8)] {
        let phi = &states[idx].1;
        let e = phi.effect();
        let response = ks_response(&space, &[e.clone(), e.complement()])?;
        model.add_measurement(projective_measurement(name.to_string(), phi, response)?)?;
    }
    for (name, a, b) in [("P(z)", 0, 1), ("P(x)", 2, 3)] {
        let mu = mixture(&[
            (0.5, &model.preparations()[a].epistemic),
            (0.5, &model.preparations()[b].epistemic),
        ])?;
        model.add_preparation(PreparationProcedure::new(
            name,
            DensityOperator::maximally_mixed(2),
            mu,
        ))?;
    }
    Ok(model)
}

/// Beltrametti–Bugajski model on an `n`-point Fibonacci grid for the given states.
///
/// Each state is snapped to its nearest grid point; the preparation prepares
/// the snapped state and carries a point mass there. Two states snapping to
/// the same point are rejected.
pub fn build_bb(n: usize, states: &[QuantumState]) -> Result<OntologicalModel> {
    if n < MIN_SPHERE_GRID {
        return Err(Error::InvalidArgument(format!(
            "grid size {n} below minimum {MIN_SPHERE_GRID}"
        )));
    }
    let space = Arc::new(OnticSpace::fibonacci_sphere(n)?);
    let points = require_sphere(&space)?.to_vec();
    let mut model = OntologicalModel::new(space.clone());
    model.add_tag("beltrametti-bugajski");
    let mut used: Vec<usize> = Vec::new();
    for (k, psi) in states.iter().enumerate() {
        let idx = space
            .nearest_point(psi.bloch()?)
            .ok_or_else(|| Error::InvalidSpace("empty grid".into()))?;
        if used.contains(&idx) {
            return Err(Error::SnapCollision(idx));
        }
        used.push(idx);
        let snapped = QuantumState::from_bloch(points[idx])?;
        model.add_preparation(PreparationProcedure::new(
            format!("bb:{k}"),
            snapped.projector(),
            EpistemicState::point_mass(space.clone(), idx)?,
        ))?;
        let axis = points[idx];
        let table = points
            .iter()
            .flat_map(|p| {
                let plus = ((1.0 + dot(axis, *p)) / 2.0).clamp(0.0, 1.0);
                [plus, 1.0 - plus]
            })
            .collect();
        let response = ResponseFunction::new(space.clone(), two_outcomes(), table)?;
        model.add_measurement(projective_measurement(format!("bb:{k}"), &snapped, response)?)?;
    }
    Ok(model)
}

/// `count` seeded Haar-random states for [`build_bb`].
pub fn bb_seeded_states(count: usize, seed: u64) -> Vec<QuantumState> {
    let mut rng = seeded_rng(seed);
    (0..count).map(|_| haar_state(&mut rng, 2)).collect()
}

/// Per-context supports of `μ_t^+` on the six-point witness space. The
/// complements carry `μ_t^−`; the three partitions are distinct.
pub const WITNESS_PARTITIONS: [[usize; 3]; 3] = [[0, 1, 2], [0, 3, 4], [1, 3, 5]];

/// Label of the witness preparation of trine state `A_t^±` in procedure `P_j` (1-based).
pub fn witness_label(procedure: usize, t: usize, plus: bool) -> String {
    format!("P{procedure}:A{t}{}", if plus { "+" } else { "-" })
}

/// Label of the witness preparation of `I/2` in procedure `P_j`.
pub fn witness_mixed_label(procedure: usize) -> String {
    format!("P{procedure}:I/2")
}

/// Six-point model for the five trine decompositions of `I/2`.
///
/// In context `P_t` the states `A_t^±` are uniform on complementary 3-subsets,
/// so `(μ_t^+ + μ_t^−)/2 = ν = 1/6`. In `P_4` and `P_5` the same pure states
/// carry the uniform density `1/6`, so `(1/3)Σ_t μ = ν` as well. The mixed state
/// is therefore preparation noncontextual across all five procedures while the
/// pure states are not.
pub fn build_theorem3_witness() -> OntologicalModel {
    let space = Arc::new(OnticSpace::abstract_uniform(6).expect("six points"));
    let mut model = OntologicalModel::new(space.clone());
    model.add_tag("theorem3-witness");
    let trine = trine_observables();
    let indicator = |set: &[usize], complement: bool| -> EpistemicState {
        let values = (0..6)
            .map(|i| if set.contains(&i) != complement { 1.0 } else { 0.0 })
            .collect();
        EpistemicState::from_unnormalized(space.clone(), values).expect("nonempty set")
    };
    let target = |e: &Effect| DensityOperator::new(e.matrix().clone()).expect("rank-one projector");
    let add = |model: &mut OntologicalModel, label: String, rho: DensityOperator, mu: EpistemicState| {
        model
            .add_preparation(PreparationProcedure::new(label, rho, mu))
            .expect("shared space");
    };

    for (t, a) in trine.iter().enumerate() {
        let (plus, minus) = projectors_of(a);
        let set = &WITNESS_PARTITIONS[t];
        add(&mut model, witness_label(t + 1, t + 1, true), target(&plus), indicator(set, false));
        add(&mut model, witness_label(t + 1, t + 1, false), target(&minus), indicator(set, true));
    }
    for (t, a) in trine.iter().enumerate() {
        let (plus, minus) = projectors_of(a);
        add(&mut model, witness_label(4, t + 1, true), target(&plus), EpistemicState::uniform(space.clone()));
        add(&mut model, witness_label(5, t + 1, false), target(&minus), EpistemicState::uniform(space.clone()));
    }
    for t in 0..3 {
        let plus = model.preparations()[2 * t].epistemic.clone();
        let minus = model.preparations()[2 * t + 1].epistemic.clone();
        let nu = mixture(&[(0.5, &plus), (0.5, &minus)]).expect("same space");
        add(&mut model, witness_mixed_label(t + 1), DensityOperator::maximally_mixed(2), nu);
    }
    for (procedure, offset) in [(4, 6), (5, 7)] {
        let parts: Vec<EpistemicState> = (0..3)
            .map(|t| model.preparations()[offset + 2 * t].epistemic.clone())
            .collect();
        let nu = mixture(&[(1.0 / 3.0, &parts[0]), (1.0 / 3.0, &parts[1]), (1.0 / 3.0, &parts[2])])
            .expect("same space");
        add(&mut model, witness_mixed_label(procedure), DensityOperator::maximally_mixed(2), nu);
    }
    model
}

/// Removes a `fraction` of `μ_ψ`'s mass inside `Λ_φ` and renormalizes.
///
/// The removed points are spread evenly over `Λ_φ ∩ supp μ_ψ` (every point
/// whose rank `k` satisfies `⌊(k+1)·fraction⌋ > ⌊k·fraction⌋`). The result
/// replaces every registered preparation of `ψ` and the model is tagged
/// [`TAG_BORN_INVALID`]. Registered mixed preparations are left as they were.
pub fn build_truncated_epistemic(
    base: &OntologicalModel,
    psi: &QuantumState,
    phi: &QuantumState,
    fraction: f64,
) -> Result<OntologicalModel> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "fraction must lie in (0, 1), got {fraction}"
        )));
    }
    let mu_psi = base.epistemic_for(psi)?.into_owned();
    let mu_phi = base.epistemic_for(phi)?;
    let region = support(&mu_phi, DEFAULT_SUPPORT_EPS)?;
    let mut values = mu_psi.density().to_vec();
    let overlap: Vec<usize> = region.into_iter().filter(|&i| values[i] > 0.0).collect();
    for (k, &i) in overlap.iter().enumerate() {
        if ((k + 1) as f64 * fraction).floor() > (k as f64 * fraction).floor() {
            values[i] = 0.0;
        }
    }
    let truncated = EpistemicState::from_unnormalized(base.space().clone(), values)?;

    let mut model = OntologicalModel::new(base.space().clone());
    if let Some(rule) = base.rule() {
        model = model.with_rule(rule);
    }
    model.add_preparation(PreparationProcedure::new("truncated", psi.projector(), truncated))?;
    let target = psi.projector();
    for p in base.preparations() {
        let same = p.target.is_pure() && p.target.approx_eq(&target, 1e-8);
        if !same {
            model.add_preparation(p.clone())?;
        }
    }
    for m in base.measurements() {
        model.add_measurement(m.clone())?;
    }
    for t in base.tags() {
        model.add_tag(t.clone());
    }
    model.add_tag("truncated-epistemic");
    model.add_tag(TAG_BORN_INVALID);
    Ok(model)
}

/// KS model with `|0⟩` registered a second time under another label, with an
/// identical density. Exercises the pure-state implication of maximal overlap.
pub fn build_twin_preparation(n: usize) -> Result<OntologicalModel> {
    let mut model = build_ks(n)?;
    let zero = QuantumState::zero();
    let mu = ks_epistemic(model.space(), &zero)?;
    model.add_preparation(PreparationProcedure::new("ks:0/twin", zero.projector(), mu))?;
    model.add_tag("twin-preparation");
    Ok(model)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZooKind {
    KochenSpecker,
    BeltramettiBugajski,
    Theorem3Witness,
    TruncatedEpistemic,
    TwinPreparation,
}

impl ZooKind {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "ks" | "kochen-specker" => ZooKind::KochenSpecker,
            "bb" | "beltrametti-bugajski" => ZooKind::BeltramettiBugajski,
            "witness" | "theorem3-witness" => ZooKind::Theorem3Witness,
            "truncated" | "truncated-epistemic" => ZooKind::TruncatedEpistemic,
            "twin" | "twin-preparation" => ZooKind::TwinPreparation,
            _ => return None,
        })
    }
}

/// Everything needed to rebuild a zoo model deterministically.
#[derive(Debug, Clone, PartialEq)]
pub struct ZooModelSpec {
    pub kind: ZooKind,
    pub grid_size: usize,
    pub seed: u64,
    /// Number of seeded states for the Beltrametti–Bugajski model.
    pub states: usize,
}

impl ZooModelSpec {
    pub fn new(kind: ZooKind, grid_size: usize, seed: u64) -> Self {
        Self {
            kind,
            grid_size,
            seed,
            states: 8,
        }
    }

    pub fn build(&self) -> Result<OntologicalModel> {
        match self.kind {
            ZooKind::KochenSpecker => build_ks(self.grid_size),
            ZooKind::BeltramettiBugajski => {
                build_bb(self.grid_size, &bb_seeded_states(self.states, self.seed))
            }
            ZooKind::Theorem3Witness => Ok(build_theorem3_witness()),
            ZooKind::TruncatedEpistemic => {
                let base = build_ks(self.grid_size)?;
                build_truncated_epistemic(&base, &QuantumState::plus(), &QuantumState::zero(), 0.5)
            }
            ZooKind::TwinPreparation => build_twin_preparation(self.grid_size),
        }
    }
}
