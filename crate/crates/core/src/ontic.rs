//! Finite ontological models.
//!
//! An [`OnticSpace`] is a finite point set with quadrature weights standing in
//! for `Λ`. Epistemic states are densities against that measure, so every
//! integral over `Λ` becomes the literal sum `Σᵢ wᵢ·(·)ᵢ`. Response functions
//! are per-point outcome tables.

use std::borrow::Cow;
use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quantum::{born_probability, DensityOperator, Effect, QuantumState};
use crate::zoo;

/// Tolerance on `Σ wᵢ μᵢ = 1`.
pub const EPISTEMIC_NORM_TOL: f64 = 1e-6;

/// Tolerance on `Σ_k ξ(k|λ) = 1`.
pub const RESPONSE_NORM_TOL: f64 = 1e-9;

/// Default relative threshold separating the support of a density from rounding noise.
pub const DEFAULT_SUPPORT_EPS: f64 = 1e-9;

/// Born tolerance at the reference grid size [`REFERENCE_GRID`].
pub const REFERENCE_BORN_TOL: f64 = 2e-2;
pub const REFERENCE_GRID: usize = 20_000;

/// Fidelity `⟨ψ|ρ|ψ⟩` above which a registered pure preparation is taken to prepare `ψ`.
const SAME_STATE_FIDELITY: f64 = 1.0 - 1e-9;

/// Tolerance for matching effects and density operators against registered ones.
const OPERATOR_MATCH_TOL: f64 = 1e-8;

/// Born tolerance for a grid of `n` points: `2e-2` at `n = 20000`, scaled as `c/√n`.
pub fn scaled_born_tolerance(n: usize) -> f64 {
    REFERENCE_BORN_TOL * (REFERENCE_GRID as f64 / n.max(1) as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub enum OnticPoints {
    /// Unit vectors on the Bloch sphere.
    Bloch(Vec<[f64; 3]>),
    /// Unstructured labels `0..n`.
    Abstract(usize),
}

/// Discretized ontic state space.
#[derive(Debug, Clone, PartialEq)]
pub struct OnticSpace {
    points: OnticPoints,
    weights: Vec<f64>,
}

impl OnticSpace {
    /// Spherical Fibonacci point set with equal weights `4π/n`.
    pub fn fibonacci_sphere(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpace("empty sphere grid".into()));
        }
        Self::new(
            OnticPoints::Bloch(fibonacci_points(n)),
            vec![4.0 * PI / n as f64; n],
        )
    }

    /// Abstract space of `n` points with unit weights.
    pub fn abstract_uniform(n: usize) -> Result<Self> {
        Self::new(OnticPoints::Abstract(n), vec![1.0; n])
    }

    pub fn new(points: OnticPoints, weights: Vec<f64>) -> Result<Self> {
        let n = match &points {
            OnticPoints::Bloch(p) => p.len(),
            OnticPoints::Abstract(n) => *n,
        };
        if n == 0 {
            return Err(Error::InvalidSpace("no points".into()));
        }
        if weights.len() != n {
            return Err(Error::InvalidSpace(format!(
                "{} weights for {n} points",
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidSpace(format!("non-positive weight {w}")));
        }
        if let OnticPoints::Bloch(p) = &points {
            if let Some(v) = p.iter().find(|v| (norm(**v) - 1.0).abs() > 1e-9) {
                return Err(Error::InvalidSpace(format!("point {v:?} is not a unit vector")));
            }
            let total: f64 = weights.iter().sum();
            if ((total - 4.0 * PI) / (4.0 * PI)).abs() > 1e-6 {
                return Err(Error::InvalidSpace(format!(
                    "sphere weights sum to {total}, expected 4π"
                )));
            }
        }
        Ok(Self { points, weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn points(&self) -> &OnticPoints {
        &self.points
    }

    pub fn bloch_points(&self) -> Option<&[[f64; 3]]> {
        match &self.points {
            OnticPoints::Bloch(p) => Some(p),
            OnticPoints::Abstract(_) => None,
        }
    }

    pub fn total_measure(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Index of the grid point closest to the unit vector `v`.
    pub fn nearest_point(&self, v: [f64; 3]) -> Option<usize> {
        let pts = self.bloch_points()?;
        pts.iter()
            .enumerate()
            .max_by(|a, b| dot(*a.1, v).total_cmp(&dot(*b.1, v)))
            .map(|(i, _)| i)
    }
}

/// `n` points of the spherical Fibonacci lattice: `zᵢ = 1 − (2i+1)/n`, azimuth `i·π(3 − √5)`.
pub fn fibonacci_points(n: usize) -> Vec<[f64; 3]> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

fn same_space(a: &Arc<OnticSpace>, b: &Arc<OnticSpace>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A normalized, nonnegative density `μ(λ)` over an [`OnticSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct EpistemicState {
    space: Arc<OnticSpace>,
    density: Vec<f64>,
}

impl EpistemicState {
    pub fn new(space: Arc<OnticSpace>, density: Vec<f64>) -> Result<Self> {
        Self::check_values(&space, &density)?;
        let total = weighted_sum(space.weights(), &density);
        if (total - 1.0).abs() > EPISTEMIC_NORM_TOL {
            return Err(Error::InvalidEpistemicState(format!(
                "density integrates to {total}, expected 1"
            )));
        }
        Ok(Self { space, density })
    }

    /// Divides `values` by their integral.
    pub fn from_unnormalized(space: Arc<OnticSpace>, values: Vec<f64>) -> Result<Self> {
        Self::check_values(&space, &values)?;
        let total = weighted_sum(space.weights(), &values);
        if !(total > 0.0) {
            return Err(Error::EmptySupport);
        }
        let density = values.into_iter().map(|v| v / total).collect();
        Self::new(space, density)
    }

    /// Unit mass at one point: density `1/wᵢ` there, zero elsewhere.
    pub fn point_mass(space: Arc<OnticSpace>, index: usize) -> Result<Self> {
        let n = space.len();
        if index >= n {
            return Err(Error::IndexOutOfRange { index, size: n });
        }
        let mut density = vec![0.0; n];
        density[index] = 1.0 / space.weights()[index];
        Self::new(space, density)
    }

    pub fn uniform(space: Arc<OnticSpace>) -> Self {
        let d = 1.0 / space.total_measure();
        let density = vec![d; space.len()];
        Self { space, density }
    }

    fn check_values(space: &OnticSpace, density: &[f64]) -> Result<()> {
        if density.len() != space.len() {
            return Err(Error::InvalidEpistemicState(format!(
                "{} density values for a space of {} points",
                density.len(),
                space.len()
            )));
        }
        if let Some((i, v)) = density
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(Error::InvalidEpistemicState(format!(
                "density[{i}] = {v} is negative or non-finite"
            )));
        }
        Ok(())
    }

    pub fn space(&self) -> &Arc<OnticSpace> {
        &self.space
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    /// `Σᵢ wᵢ μᵢ`.
    pub fn total_mass(&self) -> f64 {
        weighted_sum(self.space.weights(), &self.density)
    }
}

fn weighted_sum(w: &[f64], v: &[f64]) -> f64 {
    w.iter().zip(v).map(|(w, v)| w * v).sum()
}

/// Per-point outcome probabilities `ξ(k|λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseFunction {
    space: Arc<OnticSpace>,
    outcomes: Vec<String>,
    // Row-major: point-by-point, `outcomes.len()` entries per row.
    table: Vec<f64>,
}

impl ResponseFunction {
    pub fn new(space: Arc<OnticSpace>, outcomes: Vec<String>, table: Vec<f64>) -> Result<Self> {
        let k = outcomes.len();
        if k == 0 {
            return Err(Error::InvalidResponse("no outcomes".into()));
        }
        if table.len() != k * space.len() {
            return Err(Error::InvalidResponse(format!(
                "table has {} entries, expected {} points x {k} outcomes",
                table.len(),
                space.len()
            )));
        }
        for (i, row) in table.chunks(k).enumerate() {
            if let Some(v) = row.iter().find(|v| !(0.0..=1.0).contains(*v)) {
                return Err(Error::InvalidResponse(format!(
                    "entry {v} at point {i} outside [0, 1]"
                )));
            }
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > RESPONSE_NORM_TOL {
                return Err(Error::InvalidResponse(format!(
                    "outcomes at point {i} sum to {s}"
                )));
            }
        }
        Ok(Self {
            space,
            outcomes,
            table,
        })
    }

    pub fn space(&self) -> &Arc<OnticSpace> {
        &self.space
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn outcome_index(&self, label: &str) -> Result<usize> {
        self.outcomes
            .iter()
            .position(|o| o == label)
            .ok_or_else(|| Error::UnknownOutcome(label.to_string()))
    }

    pub fn row(&self, point: usize) -> &[f64] {
        let k = self.outcomes.len();
        &self.table[point * k..(point + 1) * k]
    }

    pub fn value(&self, point: usize, outcome: usize) -> f64 {
        self.table[point * self.outcomes.len() + outcome]
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }
}

/// A measurement: an effect set together with its response function.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub label: String,
    effects: Vec<Effect>,
    response: ResponseFunction,
}

impl Measurement {
    pub fn new(label: impl Into<String>, effects: Vec<Effect>, response: ResponseFunction) -> Result<Self> {
        let label = label.into();
        if effects.len() != response.outcomes().len() {
            return Err(Error::InvalidResponse(format!(
                "measurement `{label}` has {} effects but {} outcomes",
                effects.len(),
                response.outcomes().len()
            )));
        }
        let dim = effects[0].dim();
        let mut total = crate::quantum::Matrix::zeros(dim, dim);
        for e in &effects {
            crate::quantum::check_dims(dim, e.dim())?;
            total += e.matrix();
        }
        if !Effect::identity(dim).approx_eq(&Effect::new(total)?, OPERATOR_MATCH_TOL) {
            return Err(Error::InvalidOperator(format!(
                "effects of `{label}` do not sum to the identity"
            )));
        }
        Ok(Self {
            label,
            effects,
            response,
        })
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    pub fn response(&self) -> &ResponseFunction {
        &self.response
    }

    fn matches(&self, effects: &[Effect]) -> bool {
        self.effects.len() == effects.len()
            && self
                .effects
                .iter()
                .zip(effects)
                .all(|(a, b)| a.approx_eq(b, OPERATOR_MATCH_TOL))
    }
}

/// A preparation procedure `P` for a density operator, with its epistemic state.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparationProcedure {
    pub label: String,
    pub target: DensityOperator,
    pub epistemic: EpistemicState,
}

impl PreparationProcedure {
    pub fn new(label: impl Into<String>, target: DensityOperator, epistemic: EpistemicState) -> Self {
        Self {
            label: label.into(),
            target,
            epistemic,
        }
    }
}

/// Analytic rule that supplies epistemic states and projective responses for
/// any pure qubit state, beyond those registered explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateRule {
    KochenSpecker,
}

impl StateRule {
    pub fn name(self) -> &'static str {
        match self {
            StateRule::KochenSpecker => "kochen-specker",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "kochen-specker" => Some(StateRule::KochenSpecker),
            _ => None,
        }
    }

    fn epistemic(self, space: &Arc<OnticSpace>, psi: &QuantumState) -> Result<EpistemicState> {
        match self {
            StateRule::KochenSpecker => zoo::ks_epistemic(space, psi),
        }
    }

    fn response(self, space: &Arc<OnticSpace>, effects: &[Effect]) -> Result<ResponseFunction> {
        match self {
            StateRule::KochenSpecker => zoo::ks_response(space, effects),
        }
    }
}

/// A finite ontological model. Assembled once, then used read-only.
#[derive(Debug, Clone, PartialEq)]
pub struct OntologicalModel {
    space: Arc<OnticSpace>,
    preparations: Vec<PreparationProcedure>,
    measurements: Vec<Measurement>,
    rule: Option<StateRule>,
    tags: Vec<String>,
}

impl OntologicalModel {
    pub fn new(space: Arc<OnticSpace>) -> Self {
        Self {
            space,
            preparations: Vec::new(),
            measurements: Vec::new(),
            rule: None,
            tags: Vec::new(),
        }
    }

    pub fn with_rule(mut self, rule: StateRule) -> Self {
        self.rule = Some(rule);
        self
    }

    pub fn add_preparation(&mut self, prep: PreparationProcedure) -> Result<()> {
        if !same_space(&self.space, prep.epistemic.space()) {
            return Err(Error::SpaceMismatch);
        }
        self.preparations.push(prep);
        Ok(())
    }

    pub fn add_measurement(&mut self, m: Measurement) -> Result<()> {
        if !same_space(&self.space, m.response.space()) {
            return Err(Error::SpaceMismatch);
        }
        self.measurements.push(m);
        Ok(())
    }

    pub fn add_tag(&mut self, tag: impl Into<String>) {
        self.tags.push(tag.into());
    }

    pub fn space(&self) -> &Arc<OnticSpace> {
        &self.space
    }

    pub fn preparations(&self) -> &[PreparationProcedure] {
        &self.preparations
    }

    pub fn measurements(&self) -> &[Measurement] {
        &self.measurements
    }

    pub fn rule(&self) -> Option<StateRule> {
        self.rule
    }

    pub fn tags(&self) -> &[String] {
        &self.tags
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    pub fn preparation(&self, label: &str) -> Option<&PreparationProcedure> {
        self.preparations.iter().find(|p| p.label == label)
    }

    /// All registered procedures whose target equals `rho` within `tol`.
    pub fn preparations_for(&self, rho: &DensityOperator, tol: f64) -> Vec<&PreparationProcedure> {
        self.preparations
            .iter()
            .filter(|p| p.target.approx_eq(rho, tol))
            .collect()
    }

    fn registered_pure(&self, psi: &QuantumState) -> Option<&PreparationProcedure> {
        self.preparations.iter().find(|p| {
            p.target.dim() == psi.dim()
                && p.target.is_pure()
                && p.target.expectation(psi).is_ok_and(|f| f >= SAME_STATE_FIDELITY)
        })
    }

    /// Epistemic state `μ_ψ`: the first registered preparation of `ψ`, else the model's rule.
    pub fn epistemic_for(&self, psi: &QuantumState) -> Result<Cow<'_, EpistemicState>> {
        if let Some(p) = self.registered_pure(psi) {
            return Ok(Cow::Borrowed(&p.epistemic));
        }
        match self.rule {
            Some(rule) => Ok(Cow::Owned(rule.epistemic(&self.space, psi)?)),
            None => Err(Error::MissingPreparation(format!("state {:?}", psi.amplitudes()))),
        }
    }

    /// A preparation procedure for `ψ` (registered or synthesized by the rule).
    pub fn pure_preparation(&self, psi: &QuantumState) -> Result<PreparationProcedure> {
        if let Some(p) = self.registered_pure(psi) {
            return Ok(p.clone());
        }
        let mu = self.epistemic_for(psi)?.into_owned();
        let label = match self.rule {
            Some(rule) => format!("{}:{:?}", rule.name(), psi.bloch().unwrap_or([f64::NAN; 3])),
            None => "synthesized".to_string(),
        };
        Ok(PreparationProcedure::new(label, psi.projector(), mu))
    }

    /// Response function for an effect set: a registered measurement, else the rule.
    pub fn response_for(&self, effects: &[Effect]) -> Result<Cow<'_, ResponseFunction>> {
        if let Some(m) = self.measurements.iter().find(|m| m.matches(effects)) {
            return Ok(Cow::Borrowed(&m.response));
        }
        match self.rule {
            Some(rule) => Ok(Cow::Owned(rule.response(&self.space, effects)?)),
            None => Err(Error::MissingResponse(format!("{} effects", effects.len()))),
        }
    }

    /// Distinct pure states among the registered preparation targets, in registration order.
    pub fn registered_pure_states(&self) -> Vec<QuantumState> {
        let mut out: Vec<QuantumState> = Vec::new();
        for p in &self.preparations {
            if !p.target.is_pure() {
                continue;
            }
            let Some(psi) = pure_state_of(&p.target) else { continue };
            let seen = out.iter().any(|q| {
                crate::quantum::overlap_sq(q, &psi).is_ok_and(|f| f >= SAME_STATE_FIDELITY)
            });
            if !seen {
                out.push(psi);
            }
        }
        out
    }
}

/// Recovers `|ψ⟩` from a pure density operator (largest column, normalized).
pub fn pure_state_of(rho: &DensityOperator) -> Option<QuantumState> {
    let m = rho.matrix();
    let col = (0..m.ncols()).max_by(|&a, &b| m[(a, a)].re.total_cmp(&m[(b, b)].re))?;
    let amps = (0..m.nrows()).map(|r| m[(r, col)]).collect();
    QuantumState::from_unnormalized(amps).ok()
}

fn check_shared(a: &EpistemicState, b: &ResponseFunction) -> Result<()> {
    if !same_space(a.space(), b.space()) {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

pub(crate) fn check_shared_states(a: &EpistemicState, b: &EpistemicState) -> Result<()> {
    if !same_space(a.space(), b.space()) {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

/// `∫ μ(λ) ξ(k|λ) dλ = Σᵢ wᵢ μᵢ ξᵢ(k)`.
pub fn predicted_probability(
    mu: &EpistemicState,
    response: &ResponseFunction,
    outcome: &str,
) -> Result<f64> {
    check_shared(mu, response)?;
    let k = response.outcome_index(outcome)?;
    Ok(predicted_by_index(mu, response, k))
}

fn predicted_by_index(mu: &EpistemicState, response: &ResponseFunction, k: usize) -> f64 {
    mu.space()
        .weights()
        .iter()
        .zip(mu.density())
        .enumerate()
        .map(|(i, (w, d))| w * d * response.value(i, k))
        .sum()
}

/// One (preparation, effect set) pair to check against the Born rule.
#[derive(Debug, Clone)]
pub struct BornCase {
    pub preparation: PreparationProcedure,
    pub effects: Vec<Effect>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BornReport {
    pub max_deviation: f64,
    pub mean_deviation: f64,
    pub evaluations: usize,
    pub tolerance: f64,
    pub passed: bool,
    /// Preparation label and outcome index of the largest deviation.
    pub worst: Option<(String, usize)>,
}

/// Compares `Σᵢ wᵢ μᵢ ξᵢ(k)` with `Tr(ρ E_k)` over every case and outcome.
pub fn verify_born(model: &OntologicalModel, cases: &[BornCase], tol: f64) -> Result<BornReport> {
    let mut max_dev = 0.0f64;
    let mut sum_dev = 0.0;
    let mut count = 0usize;
    let mut worst = None;
    for case in cases {
        let response = model.response_for(&case.effects)?;
        check_shared(&case.preparation.epistemic, &response)?;
        for (k, effect) in case.effects.iter().enumerate() {
            let predicted = predicted_by_index(&case.preparation.epistemic, &response, k);
            let born = born_probability(&case.preparation.target, effect)?;
            let dev = (predicted - born).abs();
            if dev > max_dev || worst.is_none() {
                max_dev = max_dev.max(dev);
                worst = Some((case.preparation.label.clone(), k));
            }
            sum_dev += dev;
            count += 1;
        }
    }
    Ok(BornReport {
        max_deviation: max_dev,
        mean_deviation: if count == 0 { 0.0 } else { sum_dev / count as f64 },
        evaluations: count,
        tolerance: tol,
        passed: max_dev <= tol,
        worst,
    })
}

/// Indices with `μᵢ > eps_rel · maxⱼ μⱼ`.
pub fn support(mu: &EpistemicState, eps_rel: f64) -> Result<Vec<usize>> {
    if !(eps_rel >= 0.0) {
        return Err(Error::InvalidArgument(format!("eps_rel must be >= 0, got {eps_rel}")));
    }
    let max = mu.density().iter().copied().fold(0.0, f64::max);
    if max <= 0.0 {
        return Err(Error::EmptySupport);
    }
    let threshold = eps_rel * max;
    Ok(mu
        .density()
        .iter()
        .enumerate()
        .filter(|(_, d)| **d > threshold)
        .map(|(i, _)| i)
        .collect())
}

/// `Σ_{i ∈ region} wᵢ μᵢ`.
pub fn support_integral(mu: &EpistemicState, region: &[usize]) -> Result<f64> {
    let n = mu.space().len();
    let w = mu.space().weights();
    region.iter().try_fold(0.0, |acc, &i| {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, size: n });
        }
        Ok(acc + w[i] * mu.density()[i])
    })
}

/// Pointwise convex combination `Σ pⱼ μⱼ`.
pub fn mixture(parts: &[(f64, &EpistemicState)]) -> Result<EpistemicState> {
    let (_, first) = parts.first().ok_or(Error::InvalidMixture(0.0))?;
    let total: f64 = parts.iter().map(|(p, _)| p).sum();
    if parts.iter().any(|(p, _)| !(*p >= 0.0)) || (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidMixture(total));
    }
    let mut density = vec![0.0; first.space().len()];
    for (p, mu) in parts {
        check_shared_states(first, mu)?;
        for (acc, d) in density.iter_mut().zip(mu.density()) {
            *acc += p * d;
        }
    }
    EpistemicState::new(first.space().clone(), density)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sphere(n: usize) -> Arc<OnticSpace> {
        Arc::new(OnticSpace::fibonacci_sphere(n).unwrap())
    }

    #[test]
    fn fibonacci_weights_cover_the_sphere() {
        let s = OnticSpace::fibonacci_sphere(1000).unwrap();
        assert_abs_diff_eq!(s.total_measure(), 4.0 * PI, epsilon = 1e-9);
        for p in s.bloch_points().unwrap() {
            assert_abs_diff_eq!(norm(*p), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn space_rejects_bad_weights() {
        assert!(OnticSpace::new(OnticPoints::Abstract(2), vec![1.0, 0.0]).is_err());
        assert!(OnticSpace::new(OnticPoints::Abstract(2), vec![1.0]).is_err());
        let pts = vec![[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]];
        assert!(OnticSpace::new(OnticPoints::Bloch(pts.clone()), vec![1.0, 1.0]).is_err());
        assert!(OnticSpace::new(OnticPoints::Bloch(pts), vec![2.0 * PI, 2.0 * PI]).is_ok());
    }

    #[test]
    fn epistemic_state_invariants() {
        let s = Arc::new(OnticSpace::abstract_uniform(4).unwrap());
        assert!(EpistemicState::new(s.clone(), vec![0.25; 4]).is_ok());
        assert!(EpistemicState::new(s.clone(), vec![0.3; 4]).is_err());
        assert!(EpistemicState::new(s.clone(), vec![0.5, 0.5, 0.5, -0.5]).is_err());
        assert!(EpistemicState::new(s.clone(), vec![1.0; 3]).is_err());
        assert_eq!(
            EpistemicState::from_unnormalized(s, vec![0.0; 4]),
            Err(Error::EmptySupport)
        );
    }

    #[test]
    fn response_invariants() {
        let s = Arc::new(OnticSpace::abstract_uniform(2).unwrap());
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(ResponseFunction::new(s.clone(), labels.clone(), vec![1.0, 0.0, 0.3, 0.7]).is_ok());
        assert!(ResponseFunction::new(s.clone(), labels.clone(), vec![1.0, 0.1, 0.3, 0.7]).is_err());
        assert!(ResponseFunction::new(s.clone(), labels.clone(), vec![1.2, -0.2, 0.3, 0.7]).is_err());
        assert!(ResponseFunction::new(s, labels, vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn support_examples() {
        let s = sphere(500);
        let point = EpistemicState::point_mass(s.clone(), 17).unwrap();
        assert_eq!(support(&point, DEFAULT_SUPPORT_EPS).unwrap(), vec![17]);
        let uni = EpistemicState::uniform(s.clone());
        assert_eq!(support(&uni, DEFAULT_SUPPORT_EPS).unwrap().len(), 500);
        assert!(support(&uni, -1.0).is_err());
    }

    #[test]
    fn support_integral_examples() {
        let s = sphere(500);
        let uni = EpistemicState::uniform(s.clone());
        let all: Vec<usize> = (0..500).collect();
        assert_abs_diff_eq!(support_integral(&uni, &all).unwrap(), 1.0, epsilon = 1e-12);
        assert_eq!(support_integral(&uni, &[]).unwrap(), 0.0);
        assert_eq!(
            support_integral(&uni, &[500]),
            Err(Error::IndexOutOfRange { index: 500, size: 500 })
        );
    }

    #[test]
    fn mixture_examples() {
        let s = sphere(400);
        let a = EpistemicState::point_mass(s.clone(), 3).unwrap();
        let b = EpistemicState::uniform(s.clone());
        assert_eq!(mixture(&[(1.0, &a)]).unwrap(), a);
        let half = mixture(&[(0.5, &a), (0.5, &b)]).unwrap();
        assert_abs_diff_eq!(half.total_mass(), 1.0, epsilon = 1e-12);
        assert!(matches!(
            mixture(&[(0.5, &a), (0.6, &b)]),
            Err(Error::InvalidMixture(_))
        ));
        let other = EpistemicState::uniform(sphere(401));
        assert_eq!(mixture(&[(0.5, &a), (0.5, &other)]), Err(Error::SpaceMismatch));
    }

    #[test]
    fn predicted_probability_unknown_outcome() {
        let s = Arc::new(OnticSpace::abstract_uniform(2).unwrap());
        let r = ResponseFunction::new(s.clone(), vec!["a".into(), "b".into()], vec![1.0, 0.0, 0.0, 1.0])
            .unwrap();
        let mu = EpistemicState::uniform(s);
        assert_abs_diff_eq!(predicted_probability(&mu, &r, "a").unwrap(), 0.5, epsilon = 1e-15);
        assert_eq!(
            predicted_probability(&mu, &r, "c"),
            Err(Error::UnknownOutcome("c".into()))
        );
    }

    #[test]
    fn missing_response_is_an_error() {
        let s = Arc::new(OnticSpace::abstract_uniform(2).unwrap());
        let model = OntologicalModel::new(s.clone());
        let prep = PreparationProcedure::new(
            "p",
            QuantumState::zero().projector(),
            EpistemicState::uniform(s),
        );
        let zero = QuantumState::zero();
        let case = BornCase {
            preparation: prep,
            effects: vec![zero.effect(), zero.effect().complement()],
        };
        assert!(matches!(
            verify_born(&model, &[case], 0.1),
            Err(Error::MissingResponse(_))
        ));
    }

    #[test]
    fn born_tolerance_scaling() {
        assert_abs_diff_eq!(scaled_born_tolerance(20_000), 2e-2, epsilon = 1e-15);
        assert_abs_diff_eq!(scaled_born_tolerance(5_000), 4e-2, epsilon = 1e-15);
    }
}
