//! JSON document schemas: system and subspace inputs, certificate and
//! report outputs. Matrices are row-major nested arrays of finite doubles.

use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::certify::Certificate;
use crate::geometry::LinearSubspace;
use crate::lti::StateSpaceSystem;
use crate::matcore::{Definiteness, Mat};
use crate::tol::{FEAS_TOL, NULL_TOL};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("matrix `{0}` is ragged or empty")]
    RaggedMatrix(&'static str),
    #[error("non-finite entry in `{0}`")]
    NonFinite(&'static str),
    #[error("invalid system: {0}")]
    BadSystem(String),
    #[error("invalid subspace: generators must have length `ambient`")]
    BadSubspace,
}

pub type Result<T> = std::result::Result<T, DocError>;

fn to_matrix(rows: &[Vec<f64>], name: &'static str) -> Result<Mat> {
    if rows.is_empty() {
        return Err(DocError::RaggedMatrix(name));
    }
    let ncols = rows[0].len();
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(DocError::RaggedMatrix(name));
    }
    if rows.iter().flatten().any(|x| !x.is_finite()) {
        return Err(DocError::NonFinite(name));
    }
    let flat: Vec<f64> = rows.iter().flatten().cloned().collect();
    Mat::from_shape_vec((rows.len(), ncols), flat).map_err(|_| DocError::RaggedMatrix(name))
}

pub fn matrix_rows(m: &Mat) -> Vec<Vec<f64>> {
    m.outer_iter().map(|r| r.to_vec()).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// Ground-truth certificate embedded by the generator for round-trip tests.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroundTruthDocument {
    pub kind: String,
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemDocument {
    pub name: String,
    pub a: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
    pub c: Vec<Vec<f64>>,
    pub d: Vec<Vec<f64>>,
    pub sigma: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground_truth: Option<GroundTruthDocument>,
}

impl SystemDocument {
    pub fn from_system(name: &str, sys: &StateSpaceSystem) -> Self {
        SystemDocument {
            name: name.to_string(),
            a: matrix_rows(&sys.a),
            b: matrix_rows(&sys.b),
            c: matrix_rows(&sys.c),
            d: matrix_rows(&sys.d),
            sigma: sys.sigma.to_vec(),
            metadata: None,
            ground_truth: None,
        }
    }

    pub fn to_system(&self) -> Result<StateSpaceSystem> {
        if self.sigma.iter().any(|x| !x.is_finite()) {
            return Err(DocError::NonFinite("sigma"));
        }
        StateSpaceSystem::new(
            to_matrix(&self.a, "A")?,
            to_matrix(&self.b, "B")?,
            to_matrix(&self.c, "C")?,
            to_matrix(&self.d, "D")?,
            Array1::from_vec(self.sigma.clone()),
        )
        .map_err(|e| DocError::BadSystem(e.to_string()))
    }

    pub fn parse(json: &str) -> Result<SystemDocument> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialize")
    }
}

/// Input document for the subspace tests: a list of generating vectors in
/// R^ambient (need not be independent or orthonormal).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubspaceDocument {
    pub name: String,
    pub ambient: usize,
    pub generators: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl SubspaceDocument {
    pub fn to_subspace(&self) -> Result<LinearSubspace> {
        if self.generators.iter().any(|g| g.len() != self.ambient) {
            return Err(DocError::BadSubspace);
        }
        if self.generators.iter().flatten().any(|x| !x.is_finite()) {
            return Err(DocError::NonFinite("generators"));
        }
        let k = self.generators.len();
        let mut cols = Array2::zeros((self.ambient, k));
        for (j, g) in self.generators.iter().enumerate() {
            for (i, &x) in g.iter().enumerate() {
                cols[[i, j]] = x;
            }
        }
        Ok(LinearSubspace::new(self.ambient, &cols))
    }

    pub fn parse(json: &str) -> Result<SubspaceDocument> {
        Ok(serde_json::from_str(json)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictValue {
    True,
    False,
    Unknown,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verdict {
    pub value: VerdictValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebraic_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequency_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Verdict {
    pub fn yes(algebraic: f64, frequency: Option<f64>) -> Self {
        Verdict {
            value: VerdictValue::True,
            algebraic_residual: Some(algebraic),
            frequency_residual: frequency,
            reason: None,
        }
    }

    pub fn no(reason: impl Into<String>, residual: Option<f64>) -> Self {
        Verdict {
            value: VerdictValue::False,
            algebraic_residual: residual,
            frequency_residual: None,
            reason: Some(reason.into()),
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict {
            value: VerdictValue::Unknown,
            algebraic_residual: None,
            frequency_residual: None,
            reason: Some(reason.into()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub kind: String,
    pub matrix: Vec<Vec<f64>>,
    pub algebraic_residual: f64,
    pub frequency_residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub definiteness: Option<Definiteness>,
}

impl CertificateDocument {
    pub fn from_certificate(cert: &Certificate) -> Self {
        CertificateDocument {
            kind: cert.kind.name().to_string(),
            matrix: matrix_rows(&cert.matrix),
            algebraic_residual: cert.algebraic_residual,
            frequency_residual: cert.frequency_residual,
            definiteness: cert.definiteness,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Tolerances {
    pub feasibility: f64,
    pub rank: f64,
    pub transfer: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            feasibility: FEAS_TOL,
            rank: NULL_TOL,
            transfer: crate::forms::TRANSFER_TOL,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub tool: String,
    pub command: String,
    pub input: String,
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub verdicts: BTreeMap<String, Verdict>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub certificates: BTreeMap<String, CertificateDocument>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: &str, input: &str) -> Self {
        ReportDocument {
            version: crate::VERSION.to_string(),
            tool: "symcert".to_string(),
            command: command.to_string(),
            input: input.to_string(),
            tolerances: Tolerances::default(),
            verdicts: BTreeMap::new(),
            certificates: BTreeMap::new(),
            forms: BTreeMap::new(),
            spectral: None,
            notes: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialize")
    }
}
