//! Trine decompositions of `I/2`.
//!
//! Five procedures prepare `I/2`: `P_t = ½(A_t^+ + A_t^−)` for `t = 1, 2, 3`,
//! `P_4 = ⅓ Σ_t A_t^+` and `P_5 = ⅓ Σ_t A_t^−`. Mixed-state noncontextuality
//! gives all five one epistemic state `ν`, and per point `λ`:
//!
//! ```text
//! ν = ½(μ_t^+ + μ_t^−)      (each t)
//! ν = ⅓ Σ_t μ_{P4}(A_t^+)
//! ν = ⅓ Σ_t μ_{P5}(A_t^−)
//! ```
//!
//! Since `A_t^±` are orthogonal, `μ_t^+` and `μ_t^−` have disjoint supports, so
//! at a point with `ν > 0` exactly one of them equals `2ν`. With pure-state
//! noncontextuality as well (`μ_{P4}(A_t^+) = μ_t^+`), `Σ_t μ_t^+` takes one of
//! the values `0, 2ν, 4ν, 6ν` and never the required `3ν`.

use std::sync::Arc;

use itertools::Itertools;

use crate::classify::{contextuality_at_level, ContextualityLevel};
use crate::error::{Error, Result};
use crate::ontic::{
    mixture, EpistemicState, OnticSpace, OntologicalModel, PreparationProcedure, REFERENCE_GRID,
};
use crate::overlap::total_variation;
use crate::quantum::{projectors_of, trine_observables, DensityOperator, Effect};
use crate::simplex::{LinearSystem, LpOutcome, LP_TOL};
use crate::zoo::{build_ks, build_theorem3_witness, ks_epistemic, witness_label, witness_mixed_label};

/// Largest ontic space searched by [`theorem3_lp`] by default.
pub const DEFAULT_LP_CAP: usize = 8;

/// `Σ_t μ_t^±` must equal this many units of `ν`.
pub const REQUIRED_UNITS: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem3Mode {
    /// Noncontextual at both the pure- and the mixed-state level.
    BothNoncontextual,
    /// Mixed-state noncontextual; pure states may change with the procedure.
    PureContextualAllowed,
    /// Pure-state noncontextual; the five decompositions of `I/2` may differ.
    MixedContextualAllowed,
}

impl Theorem3Mode {
    pub fn name(self) -> &'static str {
        match self {
            Theorem3Mode::BothNoncontextual => "both-nc",
            Theorem3Mode::PureContextualAllowed => "pure-contextual",
            Theorem3Mode::MixedContextualAllowed => "mixed-contextual",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "both-nc" | "both-noncontextual" => Theorem3Mode::BothNoncontextual,
            "pure-contextual" | "pure-contextual-allowed" => Theorem3Mode::PureContextualAllowed,
            "mixed-contextual" | "mixed-contextual-allowed" => Theorem3Mode::MixedContextualAllowed,
            _ => return None,
        })
    }

    pub const ALL: [Theorem3Mode; 3] = [
        Theorem3Mode::BothNoncontextual,
        Theorem3Mode::PureContextualAllowed,
        Theorem3Mode::MixedContextualAllowed,
    ];
}

/// Which of `μ_t^+`, `μ_t^−` is nonzero at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// All eight sign patterns in lexicographic order `+++, ++-, …, ---`.
pub fn all_patterns() -> Vec<[Sign; 3]> {
    (0..8u8)
        .map(|bits| {
            [2, 1, 0].map(|k| if bits >> k & 1 == 0 { Sign::Plus } else { Sign::Minus })
        })
        .collect()
}

/// One row of the enumeration table, sums in units of `ν(λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternRow {
    pub signs: [Sign; 3],
    /// `μ_t^+(λ)/ν(λ)` for each context.
    pub plus_values: [u32; 3],
    /// `Σ_t μ_t^+(λ)/ν(λ)`.
    pub plus_sum: u32,
    /// `Σ_t μ_t^−(λ)/ν(λ)`.
    pub minus_sum: u32,
    /// Both sums equal [`REQUIRED_UNITS`].
    pub attains_required: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

fn named(name: &str, value: f64) -> NamedValue {
    NamedValue {
        name: name.to_string(),
        value,
    }
}

/// How the LP search picks per-point sign patterns.
#[derive(Debug, Clone, PartialEq)]
pub enum PatternSearch {
    /// The same pattern at every point (8 systems).
    Uniform,
    /// Every multiset of patterns over the points. Points carry equal weight,
    /// so assignments that differ by a permutation of points are equivalent.
    UpToPermutation,
    /// Explicit per-point assignments.
    Explicit(Vec<Vec<[Sign; 3]>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpDetails {
    pub space_size: usize,
    pub patterns_tried: usize,
    /// Per-point patterns of the first feasible system.
    pub feasible_assignment: Option<Vec<[Sign; 3]>>,
    /// `max |Ax − b|` of the feasible solution.
    pub residual: Option<f64>,
    /// Every infeasible system came with a verified Farkas certificate.
    pub farkas_verified: bool,
}

/// Outcome of the feasibility analysis for one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityCertificate {
    pub mode: Theorem3Mode,
    pub feasible: bool,
    /// The eight-row enumeration table (filled in noncontextual mode).
    pub per_pattern_sums: Vec<PatternRow>,
    /// Required value of both sums, in units of `ν`.
    pub required: u32,
    pub witness_model: Option<OntologicalModel>,
    /// Checks on the witness (constraint residuals, distances).
    pub checks: Vec<NamedValue>,
    pub lp: Option<LpDetails>,
}

impl FeasibilityCertificate {
    pub fn check(&self, name: &str) -> Option<f64> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.value)
    }
}

/// Per-point values forced by one sign pattern under both kinds of noncontextuality.
fn pattern_row(signs: [Sign; 3]) -> PatternRow {
    // ½(μ_t^+ + μ_t^−) = ν with one of them zero forces the other to 2ν.
    let plus_values = signs.map(|s| if s == Sign::Plus { 2 } else { 0 });
    let minus_values = signs.map(|s| if s == Sign::Minus { 2 } else { 0 });
    let plus_sum = plus_values.iter().sum();
    let minus_sum = minus_values.iter().sum();
    PatternRow {
        signs,
        plus_values,
        plus_sum,
        minus_sum,
        attains_required: plus_sum == REQUIRED_UNITS && minus_sum == REQUIRED_UNITS,
    }
}

/// Exact symbolic analysis of one point `λ` with `ν(λ) > 0`.
///
/// * `BothNoncontextual`: enumerates the eight sign patterns; none reaches
///   `3ν`, so the certificate is infeasible.
/// * `PureContextualAllowed`: feasible, witnessed by the six-point model.
/// * `MixedContextualAllowed`: feasible, witnessed by the KS model.
pub fn theorem3_enumerate(mode: Theorem3Mode) -> FeasibilityCertificate {
    theorem3_enumerate_with_grid(mode, REFERENCE_GRID)
}

/// As [`theorem3_enumerate`], with the KS witness built on a grid of `grid` points.
pub fn theorem3_enumerate_with_grid(mode: Theorem3Mode, grid: usize) -> FeasibilityCertificate {
    match mode {
        Theorem3Mode::BothNoncontextual => {
            let rows: Vec<PatternRow> = all_patterns().into_iter().map(pattern_row).collect();
            let feasible = rows.iter().any(|r| r.attains_required);
            FeasibilityCertificate {
                mode,
                feasible,
                per_pattern_sums: rows,
                required: REQUIRED_UNITS,
                witness_model: None,
                checks: Vec::new(),
                lp: None,
            }
        }
        Theorem3Mode::PureContextualAllowed => {
            let model = build_theorem3_witness();
            let checks = witness_residuals(&model)
                .map(|r| r.as_checks())
                .unwrap_or_default();
            let ok = checks.iter().all(|c| !c.name.starts_with("residual") || c.value <= LP_TOL);
            FeasibilityCertificate {
                mode,
                feasible: ok,
                per_pattern_sums: Vec::new(),
                required: REQUIRED_UNITS,
                witness_model: ok.then_some(model),
                checks,
                lp: None,
            }
        }
        Theorem3Mode::MixedContextualAllowed => {
            let (model, checks) = ks_witness(grid.max(crate::zoo::MIN_SPHERE_GRID));
            FeasibilityCertificate {
                mode,
                feasible: true,
                per_pattern_sums: Vec::new(),
                required: REQUIRED_UNITS,
                witness_model: Some(model),
                checks,
                lp: None,
            }
        }
    }
}

/// KS epistemic states for the five trine decompositions: pure-level
/// distances are zero, mixed-level distances are not.
fn ks_witness(grid: usize) -> (OntologicalModel, Vec<NamedValue>) {
    let model = build_ks(grid).expect("grid above minimum");
    let space = model.space().clone();
    let trine = trine_observables();
    let mu = |plus: bool, t: usize| {
        let s = if plus { trine[t].plus_state() } else { trine[t].minus_state() };
        ks_epistemic(&space, &s).expect("sphere space")
    };
    // Pure noncontextual by construction: P_t and P_4 both use the KS rule.
    let pure_tv = (0..3)
        .map(|t| total_variation(&mu(true, t), &model.epistemic_for(&trine[t].plus_state()).unwrap()).unwrap())
        .fold(0.0, f64::max);
    let third = 1.0 / 3.0;
    let mut nus: Vec<EpistemicState> = (0..3)
        .map(|t| mixture(&[(0.5, &mu(true, t)), (0.5, &mu(false, t))]).unwrap())
        .collect();
    for plus in [true, false] {
        let parts: Vec<EpistemicState> = (0..3).map(|t| mu(plus, t)).collect();
        nus.push(mixture(&[(third, &parts[0]), (third, &parts[1]), (third, &parts[2])]).unwrap());
    }
    let trine_tv = nus
        .iter()
        .tuple_combinations()
        .map(|(a, b)| total_variation(a, b).unwrap())
        .fold(0.0, f64::max);
    let zx = total_variation(
        &model.preparation("P(z)").unwrap().epistemic,
        &model.preparation("P(x)").unwrap().epistemic,
    )
    .unwrap();
    let pure_level = contextuality_at_level(&model, ContextualityLevel::PureState, 0.0)
        .map(|v| v.max_distance())
        .unwrap_or(f64::NAN);
    (
        model,
        vec![
            named("pure_tv_trine", pure_tv),
            named("pure_tv_registered", pure_level),
            named("mixed_tv_z_x", zx),
            named("mixed_tv_trine_max", trine_tv),
        ],
    )
}

/// Maximum violations of the trine-decomposition constraints in a witness
/// model that uses the `P{j}:A{t}±` / `P{j}:I/2` labels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessResiduals {
    /// `max |ν_t − ½(μ_t^+ + μ_t^−)|`.
    pub eq19: f64,
    /// `max |ν_4 − ⅓ Σ_t μ_{P4}(A_t^+)|`.
    pub eq20: f64,
    /// `max |ν_5 − ⅓ Σ_t μ_{P5}(A_t^−)|`.
    pub eq21: f64,
    /// `max Σ_λ w·min(μ_t^+, μ_t^−)`; zero for disjoint supports.
    pub overlap_within_context: f64,
    /// Largest total-variation distance among the five `ν_j`.
    pub mixed_tv: f64,
    /// Largest total-variation distance between `μ_t^±` and their `P_4`/`P_5` counterparts.
    pub pure_tv: f64,
}

impl WitnessResiduals {
    pub fn max_constraint_residual(&self) -> f64 {
        self.eq19.max(self.eq20).max(self.eq21).max(self.overlap_within_context)
    }

    fn as_checks(&self) -> Vec<NamedValue> {
        vec![
            named("residual_eq19", self.eq19),
            named("residual_eq20", self.eq20),
            named("residual_eq21", self.eq21),
            named("residual_disjointness", self.overlap_within_context),
            named("mixed_tv", self.mixed_tv),
            named("pure_tv", self.pure_tv),
        ]
    }
}

pub fn witness_residuals(model: &OntologicalModel) -> Result<WitnessResiduals> {
    let get = |label: String| -> Result<&EpistemicState> {
        model
            .preparation(&label)
            .map(|p| &p.epistemic)
            .ok_or(Error::MissingPreparation(label))
    };
    let w = model.space().weights();
    let n = model.space().len();
    let mut r = WitnessResiduals {
        eq19: 0.0,
        eq20: 0.0,
        eq21: 0.0,
        overlap_within_context: 0.0,
        mixed_tv: 0.0,
        pure_tv: 0.0,
    };
    let nus: Vec<&EpistemicState> = (1..=5).map(|j| get(witness_mixed_label(j))).collect::<Result<_>>()?;
    for t in 1..=3 {
        let plus = get(witness_label(t, t, true))?;
        let minus = get(witness_label(t, t, false))?;
        let nu = nus[t - 1].density();
        let mut overlap = 0.0;
        for i in 0..n {
            let (a, b) = (plus.density()[i], minus.density()[i]);
            r.eq19 = r.eq19.max((nu[i] - 0.5 * (a + b)).abs());
            overlap += w[i] * a.min(b);
        }
        r.overlap_within_context = r.overlap_within_context.max(overlap);
        r.pure_tv = r.pure_tv.max(total_variation(plus, get(witness_label(4, t, true))?)?);
        r.pure_tv = r.pure_tv.max(total_variation(minus, get(witness_label(5, t, false))?)?);
    }
    for (procedure, plus, eq) in [(4, true, &mut r.eq20), (5, false, &mut r.eq21)] {
        let parts: Vec<&EpistemicState> = (1..=3)
            .map(|t| get(witness_label(procedure, t, plus)))
            .collect::<Result<_>>()?;
        let nu = nus[procedure - 1].density();
        for i in 0..n {
            let avg = parts.iter().map(|p| p.density()[i]).sum::<f64>() / 3.0;
            *eq = eq.max((nu[i] - avg).abs());
        }
    }
    for (a, b) in nus.iter().tuple_combinations() {
        r.mixed_tv = r.mixed_tv.max(total_variation(a, b)?);
    }
    Ok(r)
}

/// Variable layout of one LP instance.
struct TrineSystem {
    system: LinearSystem,
    /// `pure[t][s][i]`: `μ_{P_t}(A_t^s)` at point `i`, `None` when forced to zero.
    pure: Vec<[Vec<Option<usize>>; 2]>,
    /// `μ_{P4}(A_t^+)` and `μ_{P5}(A_t^−)` per `t`.
    p4: Vec<Vec<Option<usize>>>,
    p5: Vec<Vec<Option<usize>>>,
    /// `ν_j` for the five procedures (shared variables when mixed-noncontextual).
    nu: Vec<Vec<usize>>,
}

fn build_system(n: usize, mode: Theorem3Mode, assignment: &[[Sign; 3]]) -> TrineSystem {
    let mut sys = LinearSystem::new();
    let pure: Vec<[Vec<Option<usize>>; 2]> = (0..3)
        .map(|t| {
            [Sign::Plus, Sign::Minus].map(|s| {
                (0..n)
                    .map(|i| (assignment[i][t] == s).then(|| sys.add_var()))
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    let (p4, p5) = match mode {
        Theorem3Mode::PureContextualAllowed => {
            let mut fresh = || (0..3).map(|_| (0..n).map(|_| Some(sys.add_var())).collect()).collect::<Vec<Vec<_>>>();
            (fresh(), fresh())
        }
        _ => (
            (0..3).map(|t| pure[t][0].clone()).collect(),
            (0..3).map(|t| pure[t][1].clone()).collect(),
        ),
    };
    let nu: Vec<Vec<usize>> = match mode {
        Theorem3Mode::MixedContextualAllowed => (0..5).map(|_| (0..n).map(|_| sys.add_var()).collect()).collect(),
        _ => {
            let shared: Vec<usize> = (0..n).map(|_| sys.add_var()).collect();
            vec![shared; 5]
        }
    };

    let terms = |vars: &[Option<usize>], i: usize, c: f64| vars[i].map(|v| (v, c));
    for t in 0..3 {
        for i in 0..n {
            let mut row = vec![(nu[t][i], 1.0)];
            row.extend(terms(&pure[t][0], i, -0.5));
            row.extend(terms(&pure[t][1], i, -0.5));
            sys.add_row(row, 0.0);
        }
    }
    for (j, group) in [(3, &p4), (4, &p5)] {
        for i in 0..n {
            let mut row = vec![(nu[j][i], 1.0)];
            row.extend((0..3).filter_map(|t| terms(&group[t], i, -1.0 / 3.0)));
            sys.add_row(row, 0.0);
        }
    }
    let mut normalize = |vars: &[Option<usize>]| {
        sys.add_row(vars.iter().flatten().map(|&v| (v, 1.0)).collect(), 1.0);
    };
    for t in 0..3 {
        normalize(&pure[t][0]);
        normalize(&pure[t][1]);
    }
    if mode == Theorem3Mode::PureContextualAllowed {
        for t in 0..3 {
            normalize(&p4[t]);
            normalize(&p5[t]);
        }
    }
    let distinct_nu = if mode == Theorem3Mode::MixedContextualAllowed { 5 } else { 1 };
    for nu_j in nu.iter().take(distinct_nu) {
        let vars: Vec<Option<usize>> = nu_j.iter().map(|&v| Some(v)).collect();
        normalize(&vars);
    }
    TrineSystem {
        system: sys,
        pure,
        p4,
        p5,
        nu,
    }
}

/// Turns an LP solution into a witness model with the standard labels.
fn witness_from_solution(layout: &TrineSystem, x: &[f64], n: usize) -> Result<OntologicalModel> {
    let space = Arc::new(OnticSpace::abstract_uniform(n)?);
    let density = |vars: &[Option<usize>]| -> Result<EpistemicState> {
        let values = vars.iter().map(|v| v.map_or(0.0, |j| x[j].max(0.0))).collect();
        EpistemicState::from_unnormalized(space.clone(), values)
    };
    let target = |e: &Effect| DensityOperator::new(e.matrix().clone());
    let mut model = OntologicalModel::new(space.clone());
    model.add_tag("theorem3-lp-witness");
    let trine = trine_observables();
    for t in 0..3 {
        let (plus, minus) = projectors_of(&trine[t]);
        model.add_preparation(PreparationProcedure::new(witness_label(t + 1, t + 1, true), target(&plus)?, density(&layout.pure[t][0])?))?;
        model.add_preparation(PreparationProcedure::new(witness_label(t + 1, t + 1, false), target(&minus)?, density(&layout.pure[t][1])?))?;
    }
    for t in 0..3 {
        let (plus, minus) = projectors_of(&trine[t]);
        model.add_preparation(PreparationProcedure::new(witness_label(4, t + 1, true), target(&plus)?, density(&layout.p4[t])?))?;
        model.add_preparation(PreparationProcedure::new(witness_label(5, t + 1, false), target(&minus)?, density(&layout.p5[t])?))?;
    }
    for j in 0..5 {
        let vars: Vec<Option<usize>> = layout.nu[j].iter().map(|&v| Some(v)).collect();
        model.add_preparation(PreparationProcedure::new(
            witness_mixed_label(j + 1),
            DensityOperator::maximally_mixed(2),
            density(&vars)?,
        ))?;
    }
    Ok(model)
}

fn assignments(n: usize, search: &PatternSearch) -> Result<Vec<Vec<[Sign; 3]>>> {
    Ok(match search {
        PatternSearch::Uniform => all_patterns().into_iter().map(|p| vec![p; n]).collect(),
        PatternSearch::UpToPermutation => all_patterns()
            .into_iter()
            .combinations_with_replacement(n)
            .collect(),
        PatternSearch::Explicit(list) => {
            if let Some(bad) = list.iter().find(|a| a.len() != n) {
                return Err(Error::InvalidArgument(format!(
                    "assignment has {} patterns for {n} points",
                    bad.len()
                )));
            }
            list.clone()
        }
    })
}

/// Linear feasibility search over an `n`-point ontic space with unit weights.
///
/// For each per-point sign assignment the disjointness of `μ_t^+` and `μ_t^−`
/// is imposed by fixing the excluded density to zero; what remains is a linear
/// system solved by phase-1 simplex. Stops at the first feasible assignment.
pub fn theorem3_lp(
    n: usize,
    mode: Theorem3Mode,
    search: &PatternSearch,
    cap: usize,
) -> Result<FeasibilityCertificate> {
    if n == 0 {
        return Err(Error::InvalidArgument("ontic space must have at least one point".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded { size: n, cap });
    }
    let mut tried = 0usize;
    let mut farkas_verified = true;
    for assignment in assignments(n, search)? {
        tried += 1;
        let layout = build_system(n, mode, &assignment);
        match layout.system.solve() {
            LpOutcome::Feasible { x, residual } => {
                let model = witness_from_solution(&layout, &x, n)?;
                let mut checks = vec![named("lp_residual", residual)];
                if let Ok(r) = witness_residuals(&model) {
                    checks.extend(r.as_checks());
                }
                return Ok(FeasibilityCertificate {
                    mode,
                    feasible: true,
                    per_pattern_sums: Vec::new(),
                    required: REQUIRED_UNITS,
                    witness_model: Some(model),
                    checks,
                    lp: Some(LpDetails {
                        space_size: n,
                        patterns_tried: tried,
                        feasible_assignment: Some(assignment),
                        residual: Some(residual),
                        farkas_verified,
                    }),
                });
            }
            LpOutcome::Infeasible { farkas, .. } => {
                farkas_verified &= layout.system.verify_farkas(&farkas, LP_TOL);
            }
        }
    }
    let per_pattern_sums = if mode == Theorem3Mode::BothNoncontextual {
        all_patterns().into_iter().map(pattern_row).collect()
    } else {
        Vec::new()
    };
    Ok(FeasibilityCertificate {
        mode,
        feasible: false,
        per_pattern_sums,
        required: REQUIRED_UNITS,
        witness_model: None,
        checks: Vec::new(),
        lp: Some(LpDetails {
            space_size: n,
            patterns_tried: tried,
            feasible_assignment: None,
            residual: None,
            farkas_verified,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn enumeration_table_matches_brute_force_over_zero_two() {
        let cert = theorem3_enumerate(Theorem3Mode::BothNoncontextual);
        assert!(!cert.feasible);
        assert_eq!(cert.per_pattern_sums.len(), 8);
        let mut sums: Vec<u32> = cert.per_pattern_sums.iter().map(|r| r.plus_sum).collect();
        sums.sort_unstable();
        // Independent: all sums of three values drawn from {0, 2}.
        let mut brute = Vec::new();
        for a in [0u32, 2] {
            for b in [0u32, 2] {
                for c in [0u32, 2] {
                    brute.push(a + b + c);
                }
            }
        }
        brute.sort_unstable();
        assert_eq!(sums, brute);
        for row in &cert.per_pattern_sums {
            assert!([0, 2, 4, 6].contains(&row.plus_sum));
            assert_eq!(row.plus_sum + row.minus_sum, 6);
            assert_ne!(row.plus_sum, REQUIRED_UNITS);
        }
    }

    #[test]
    fn pure_contextual_witness_is_exact() {
        let cert = theorem3_enumerate(Theorem3Mode::PureContextualAllowed);
        assert!(cert.feasible);
        let r = witness_residuals(cert.witness_model.as_ref().unwrap()).unwrap();
        assert!(r.max_constraint_residual() <= 1e-12);
        assert!(r.mixed_tv <= 1e-12);
        assert_abs_diff_eq!(r.pure_tv, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn mixed_contextual_ks_witness() {
        let cert = theorem3_enumerate_with_grid(Theorem3Mode::MixedContextualAllowed, 20_000);
        assert!(cert.feasible);
        assert!(cert.check("pure_tv_trine").unwrap() <= 1e-12);
        assert!(cert.check("mixed_tv_z_x").unwrap() >= 0.1);
        assert!(cert.check("mixed_tv_trine_max").unwrap() > 0.05);
    }

    #[test]
    fn lp_small_cases() {
        let cert = theorem3_lp(1, Theorem3Mode::BothNoncontextual, &PatternSearch::UpToPermutation, 8).unwrap();
        assert!(!cert.feasible);
        assert!(cert.lp.as_ref().unwrap().farkas_verified);

        let cert = theorem3_lp(6, Theorem3Mode::PureContextualAllowed, &PatternSearch::UpToPermutation, 8).unwrap();
        assert!(cert.feasible);
        assert!(cert.check("lp_residual").unwrap() <= 1e-9);
        let r = witness_residuals(cert.witness_model.as_ref().unwrap()).unwrap();
        assert!(r.max_constraint_residual() <= 1e-9);
    }

    #[test]
    fn lp_reproduces_the_handmade_witness_assignment() {
        let assignment: Vec<[Sign; 3]> = (0..6)
            .map(|i| {
                [0, 1, 2].map(|t| {
                    if crate::zoo::WITNESS_PARTITIONS[t].contains(&i) { Sign::Plus } else { Sign::Minus }
                })
            })
            .collect();
        let search = PatternSearch::Explicit(vec![assignment.clone()]);
        let pure = theorem3_lp(6, Theorem3Mode::PureContextualAllowed, &search, 8).unwrap();
        assert!(pure.feasible);
        let both = theorem3_lp(6, Theorem3Mode::BothNoncontextual, &search, 8).unwrap();
        assert!(!both.feasible);
    }

    #[test]
    fn uniform_patterns_are_infeasible_for_both_nc() {
        let cert = theorem3_lp(6, Theorem3Mode::BothNoncontextual, &PatternSearch::Uniform, 8).unwrap();
        assert!(!cert.feasible);
        assert_eq!(cert.lp.unwrap().patterns_tried, 8);
    }

    #[test]
    fn cap_and_argument_errors() {
        assert_eq!(
            theorem3_lp(9, Theorem3Mode::BothNoncontextual, &PatternSearch::Uniform, 8),
            Err(Error::CapExceeded { size: 9, cap: 8 })
        );
        assert!(theorem3_lp(0, Theorem3Mode::BothNoncontextual, &PatternSearch::Uniform, 8).is_err());
        let bad = PatternSearch::Explicit(vec![vec![[Sign::Plus; 3]; 2]]);
        assert!(theorem3_lp(3, Theorem3Mode::BothNoncontextual, &bad, 8).is_err());
    }

    #[test]
    fn mode_names_round_trip() {
        for m in Theorem3Mode::ALL {
            assert_eq!(Theorem3Mode::parse(m.name()), Some(m));
        }
    }
}
