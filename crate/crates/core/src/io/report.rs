use std::io::Write;

use serde::Serialize;

use super::{IoError, RunConfig};
use crate::classify::{
    check_outcome_determinism, classify_model, contextuality_at_level, sample_pairs,
    ContextualityLevel, ContextualityVerdict, MaxEpistemicVerdict, OnticVerdict, PairWitness, TriState,
};
use crate::error::Result;
use crate::harness::{FeasibilityCertificate, Theorem1Report, Theorem2Report};
use crate::ontic::OntologicalModel;
use crate::overlap::{degree_of_epistemicity, overlap_record};
use crate::quantum::QuantumState;

/// Tolerance for calling a response value 0 or 1.
const DETERMINISM_TOL: f64 = 1e-9;

fn bloch_of(psi: &QuantumState) -> Option<[f64; 3]> {
    psi.bloch().ok()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairJson {
    pub a: Option<[f64; 3]>,
    pub b: Option<[f64; 3]>,
    pub value: f64,
    pub reference: f64,
    pub deviation: f64,
}

impl From<&PairWitness> for PairJson {
    fn from(w: &PairWitness) -> Self {
        Self {
            a: bloch_of(&w.pair.0),
            b: bloch_of(&w.pair.1),
            value: w.value,
            reference: w.reference,
            deviation: w.deviation,
        }
    }
}

fn tri(t: TriState) -> &'static str {
    match t {
        TriState::Yes => "yes",
        TriState::No => "no",
        TriState::Undetermined => "undetermined",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxEpistemicJson {
    pub status: &'static str,
    pub max_deviation: f64,
    pub evaluated: usize,
    pub worst_pair: Option<PairJson>,
}

impl From<&MaxEpistemicVerdict> for MaxEpistemicJson {
    fn from(v: &MaxEpistemicVerdict) -> Self {
        Self {
            status: tri(v.status),
            max_deviation: v.max_deviation,
            evaluated: v.evaluated,
            worst_pair: v.witness.as_ref().map(PairJson::from),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContextualityJson {
    pub noncontextual: bool,
    pub max_distance: f64,
    pub procedures: Option<(String, String)>,
}

impl From<&ContextualityVerdict> for ContextualityJson {
    fn from(v: &ContextualityVerdict) -> Self {
        Self {
            noncontextual: v.noncontextual,
            max_distance: v.max_distance(),
            procedures: v.witness.as_ref().map(|w| w.procedures.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeterminismJson {
    pub deterministic: bool,
    pub fraction: f64,
    pub evaluated: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub tags: Vec<String>,
    pub seed: u64,
    pub tolerance: f64,
    pub sampled_pairs: usize,
    pub ontic: &'static str,
    pub max_psi_epistemic_1: MaxEpistemicJson,
    pub max_psi_epistemic_2: MaxEpistemicJson,
    pub pure_state_contextuality: ContextualityJson,
    pub mixed_state_contextuality: ContextualityJson,
    pub outcome_determinism: DeterminismJson,
}

pub fn classification_report(model: &OntologicalModel, config: &RunConfig) -> Result<ClassificationReport> {
    let pairs = sample_pairs(model, config.seed, config.pair_budget);
    let verdict = classify_model(model, &pairs, &config.classifier())?;
    let pure = contextuality_at_level(model, ContextualityLevel::PureState, config.tolerance)?;
    let mixed = contextuality_at_level(model, ContextualityLevel::MixedState, config.tolerance)?;
    let det = check_outcome_determinism(model, DETERMINISM_TOL);
    Ok(ClassificationReport {
        tags: model.tags().to_vec(),
        seed: config.seed,
        tolerance: config.tolerance,
        sampled_pairs: verdict.sampled_pairs,
        ontic: match verdict.ontic_or_epistemic {
            OnticVerdict::PsiOntic => "psi-ontic",
            OnticVerdict::PsiEpistemic => "psi-epistemic",
        },
        max_psi_epistemic_1: (&verdict.max_psi_epistemic_1).into(),
        max_psi_epistemic_2: (&verdict.max_psi_epistemic_2).into(),
        pure_state_contextuality: (&pure).into(),
        mixed_state_contextuality: (&mixed).into(),
        outcome_determinism: DeterminismJson {
            deterministic: det.deterministic,
            fraction: det.fraction,
            evaluated: det.evaluated,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapRow {
    pub pair_id: usize,
    pub overlap_sq: f64,
    pub l_q: f64,
    pub l_c: f64,
    pub f: f64,
    pub deficit: f64,
}

pub const OVERLAP_COLUMNS: [&str; 6] = ["pair_id", "overlap_sq", "l_q", "l_c", "f", "deficit"];

/// One row per sampled pair, in sampling order.
pub fn overlap_rows(model: &OntologicalModel, config: &RunConfig) -> Result<Vec<OverlapRow>> {
    sample_pairs(model, config.seed, config.pair_budget)
        .iter()
        .enumerate()
        .map(|(pair_id, (a, b))| {
            let rec = overlap_record(model, a, b)?;
            let f = degree_of_epistemicity(model, a, b)?.value;
            Ok(OverlapRow {
                pair_id,
                overlap_sq: rec.overlap_sq,
                l_q: rec.l_q,
                l_c: rec.l_c,
                f,
                deficit: rec.deficit,
            })
        })
        .collect()
}

/// Writes the header even when there are no rows.
pub fn write_overlaps_csv<W: Write>(rows: &[OverlapRow], out: W) -> std::result::Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(OVERLAP_COLUMNS)?;
    for r in rows {
        w.write_record([
            r.pair_id.to_string(),
            r.overlap_sq.to_string(),
            r.l_q.to_string(),
            r.l_c.to_string(),
            r.f.to_string(),
            r.deficit.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatternJson {
    pub signs: String,
    pub plus_values: [u32; 3],
    pub plus_sum: u32,
    pub minus_sum: u32,
    pub attains_required: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpJson {
    pub space_size: usize,
    pub patterns_tried: usize,
    pub feasible_assignment: Option<Vec<String>>,
    pub residual: Option<f64>,
    pub farkas_verified: bool,
}

/// Certificate document. Field order is fixed by declaration order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub mode: &'static str,
    pub feasible: bool,
    pub required_units_of_nu: u32,
    pub per_pattern_sums: Vec<PatternJson>,
    pub checks: Vec<(String, f64)>,
    pub witness_tags: Option<Vec<String>>,
    pub witness_space_size: Option<usize>,
    pub lp: Option<LpJson>,
}

fn sign_string(signs: &[crate::harness::Sign; 3]) -> String {
    signs.iter().map(|s| s.symbol()).collect()
}

pub fn certificate_report(cert: &FeasibilityCertificate) -> CertificateReport {
    CertificateReport {
        mode: cert.mode.name(),
        feasible: cert.feasible,
        required_units_of_nu: cert.required,
        per_pattern_sums: cert
            .per_pattern_sums
            .iter()
            .map(|r| PatternJson {
                signs: sign_string(&r.signs),
                plus_values: r.plus_values,
                plus_sum: r.plus_sum,
                minus_sum: r.minus_sum,
                attains_required: r.attains_required,
            })
            .collect(),
        checks: cert.checks.iter().map(|c| (c.name.clone(), c.value)).collect(),
        witness_tags: cert.witness_model.as_ref().map(|m| m.tags().to_vec()),
        witness_space_size: cert.witness_model.as_ref().map(|m| m.space().len()),
        lp: cert.lp.as_ref().map(|lp| LpJson {
            space_size: lp.space_size,
            patterns_tried: lp.patterns_tried,
            feasible_assignment: lp
                .feasible_assignment
                .as_ref()
                .map(|a| a.iter().map(sign_string).collect()),
            residual: lp.residual,
            farkas_verified: lp.farkas_verified,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem1Json {
    pub chi: Option<[f64; 3]>,
    pub eta: Option<[f64; 3]>,
    /// Rows `χ, χ⊥`; columns `Λ_η, Λ_η⊥`.
    pub integrals: [[f64; 2]; 2],
    pub lhs: f64,
    /// `f(χ,η), f(χ,η⊥), f(χ⊥,η), f(χ⊥,η⊥)`; null where undefined.
    pub f_values: [Option<f64>; 4],
    pub mixed_distance: f64,
    pub tolerance: f64,
    pub conclusion: bool,
}

impl From<&Theorem1Report> for Theorem1Json {
    fn from(r: &Theorem1Report) -> Self {
        Self {
            chi: bloch_of(&r.bases.0 .0),
            eta: bloch_of(&r.bases.1 .0),
            integrals: r.integrals,
            lhs: r.lhs_eq12,
            f_values: r.f_values.each_ref().map(|f| f.as_ref().map(|f| f.value)),
            mixed_distance: r.mixed_distance,
            tolerance: r.tolerance,
            conclusion: r.conclusion,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem2Json {
    pub procedures: (String, String),
    pub l_q: f64,
    pub l_c: f64,
    pub total_variation: f64,
    pub identity_residual: f64,
    pub antecedent: bool,
    pub implication_holds: bool,
    pub tolerance: f64,
}

impl From<&Theorem2Report> for Theorem2Json {
    fn from(r: &Theorem2Report) -> Self {
        Self {
            procedures: r.labels.clone(),
            l_q: r.l_q,
            l_c: r.l_c,
            total_variation: r.total_variation,
            identity_residual: r.identity_residual,
            antecedent: r.antecedent,
            implication_holds: r.implication_holds,
            tolerance: r.tolerance,
        }
    }
}
