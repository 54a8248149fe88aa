use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{read_file, write_file, IoError};
use crate::error::Error;
use crate::ontic::{
    EpistemicState, Measurement, OnticPoints, OnticSpace, OntologicalModel, PreparationProcedure,
    ResponseFunction, StateRule,
};
use crate::quantum::{DensityOperator, Effect, Matrix};

pub const SCHEMA_VERSION: &str = "1";

/// Rows of `[re, im]` pairs.
pub type ComplexMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub schema_version: String,
    pub space: SpaceDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
    pub preparations: Vec<PreparationDocument>,
    pub measurements: Vec<MeasurementDocument>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceKind {
    FibonacciSphere,
    Abstract,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub kind: SpaceKind,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[f64; 3]>>,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreparationDocument {
    pub label: String,
    pub target: ComplexMatrix,
    pub density: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurementDocument {
    pub label: String,
    pub outcomes: Vec<String>,
    pub effects: Vec<ComplexMatrix>,
    /// One row per ontic point, one column per outcome.
    pub response: Vec<Vec<f64>>,
}

fn matrix_to_doc(m: &Matrix) -> ComplexMatrix {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn matrix_from_doc(rows: &ComplexMatrix, what: &str) -> Result<Matrix, Error> {
    let n = rows.len();
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::InvalidOperator(format!(
            "{what}: row of length {} in a {n}-row matrix",
            r.len()
        )));
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        let [re, im] = rows[i][j];
        Complex64::new(re, im)
    }))
}

impl ModelDocument {
    pub fn from_model(model: &OntologicalModel) -> Self {
        let space = model.space();
        let (kind, points) = match space.points() {
            OnticPoints::Bloch(p) => (SpaceKind::FibonacciSphere, Some(p.clone())),
            OnticPoints::Abstract(_) => (SpaceKind::Abstract, None),
        };
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            space: SpaceDocument {
                kind,
                size: space.len(),
                points,
                weights: space.weights().to_vec(),
            },
            rule: model.rule().map(|r| r.name().to_string()),
            tags: model.tags().to_vec(),
            preparations: model
                .preparations()
                .iter()
                .map(|p| PreparationDocument {
                    label: p.label.clone(),
                    target: matrix_to_doc(p.target.matrix()),
                    density: p.epistemic.density().to_vec(),
                })
                .collect(),
            measurements: model
                .measurements()
                .iter()
                .map(|m| {
                    let r = m.response();
                    MeasurementDocument {
                        label: m.label.clone(),
                        outcomes: r.outcomes().to_vec(),
                        effects: m.effects().iter().map(|e| matrix_to_doc(e.matrix())).collect(),
                        response: (0..space.len()).map(|i| r.row(i).to_vec()).collect(),
                    }
                })
                .collect(),
        }
    }

    /// Rebuilds the model, re-running every constructor check.
    pub fn to_model(&self) -> Result<OntologicalModel, Error> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidArgument(format!(
                "unsupported schema_version `{}` (expected `{SCHEMA_VERSION}`)",
                self.schema_version
            )));
        }
        let s = &self.space;
        if s.weights.len() != s.size {
            return Err(Error::InvalidSpace(format!(
                "space.size is {} but {} weights are given",
                s.size,
                s.weights.len()
            )));
        }
        let points = match (s.kind, &s.points) {
            (SpaceKind::FibonacciSphere, Some(p)) => {
                if p.len() != s.size {
                    return Err(Error::InvalidSpace(format!(
                        "space.size is {} but {} points are given",
                        s.size,
                        p.len()
                    )));
                }
                OnticPoints::Bloch(p.clone())
            }
            (SpaceKind::FibonacciSphere, None) => {
                return Err(Error::InvalidSpace("fibonacci-sphere space needs `points`".into()))
            }
            (SpaceKind::Abstract, None) => OnticPoints::Abstract(s.size),
            (SpaceKind::Abstract, Some(_)) => {
                return Err(Error::InvalidSpace("abstract space must not list `points`".into()))
            }
        };
        let space = Arc::new(OnticSpace::new(points, s.weights.clone())?);

        let mut model = OntologicalModel::new(space.clone());
        if let Some(name) = &self.rule {
            let rule = StateRule::from_name(name)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown rule `{name}`")))?;
            model = model.with_rule(rule);
        }
        for t in &self.tags {
            model.add_tag(t.clone());
        }
        for p in &self.preparations {
            let target = DensityOperator::new(matrix_from_doc(&p.target, &p.label)?)
                .map_err(|e| Error::InvalidArgument(format!("preparation `{}`: {e}", p.label)))?;
            let epistemic = EpistemicState::new(space.clone(), p.density.clone())
                .map_err(|e| Error::InvalidArgument(format!("preparation `{}`: {e}", p.label)))?;
            model.add_preparation(PreparationProcedure::new(p.label.clone(), target, epistemic))?;
        }
        for m in &self.measurements {
            let context = |e: Error| Error::InvalidArgument(format!("measurement `{}`: {e}", m.label));
            if m.response.len() != s.size {
                return Err(context(Error::InvalidResponse(format!(
                    "{} response rows for {} points",
                    m.response.len(),
                    s.size
                ))));
            }
            let k = m.outcomes.len();
            if let Some(i) = m.response.iter().position(|row| row.len() != k) {
                return Err(context(Error::InvalidResponse(format!(
                    "row {i} has {} values for {k} outcomes",
                    m.response[i].len()
                ))));
            }
            let table = m.response.iter().flatten().copied().collect();
            let response = ResponseFunction::new(space.clone(), m.outcomes.clone(), table).map_err(context)?;
            let effects = m
                .effects
                .iter()
                .map(|e| matrix_from_doc(e, &m.label).and_then(Effect::new))
                .collect::<Result<Vec<_>, _>>()
                .map_err(context)?;
            model.add_measurement(Measurement::new(m.label.clone(), effects, response).map_err(context)?)?;
        }
        Ok(model)
    }
}

/// Parses and validates a model document. Shape errors carry the field path
/// and the line/column where parsing stopped.
pub fn load_model_str(json: &str) -> Result<OntologicalModel, IoError> {
    let de = &mut serde_json::Deserializer::from_str(json);
    let doc: ModelDocument = serde_path_to_error::deserialize(de).map_err(|err| {
        let field = err.path().to_string();
        let inner = err.into_inner();
        IoError::Schema {
            field,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })?;
    Ok(doc.to_model()?)
}

pub fn load_model(path: &Path) -> Result<OntologicalModel, IoError> {
    load_model_str(&read_file(path)?)
}

pub fn save_model_string(model: &OntologicalModel) -> Result<String, IoError> {
    Ok(serde_json::to_string(&ModelDocument::from_model(model))?)
}

pub fn save_model(model: &OntologicalModel, path: &Path) -> Result<(), IoError> {
    write_file(path, &save_model_string(model)?)
}
