//! Machine-readable verdicts. Field names are stable; indices are 0-based
//! positions in the input rows.

use serde::{Deserialize, Serialize};

use crate::embed3d::{
    Candidate, CandidateReport, CandidateSource, CandidateVerdict, EmbedFailure, EmbedResult, Embedding,
};
use crate::numerics::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ToleranceBlock {
    pub eps_rank: f64,
    pub eps_nn: f64,
    pub eps_orth: f64,
    pub eps_dedup: f64,
}

impl From<&Tolerances<f64>> for ToleranceBlock {
    fn from(t: &Tolerances<f64>) -> Self {
        Self {
            eps_rank: t.eps_rank,
            eps_nn: t.eps_nn,
            eps_orth: t.eps_orth,
            eps_dedup: t.eps_dedup,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct WitnessDoc {
    /// `hull_pair`, `axis` or `plane_normal`.
    pub source: String,
    pub indices: Vec<usize>,
    pub g: [f64; 3],
}

impl From<&Candidate<f64>> for WitnessDoc {
    fn from(c: &Candidate<f64>) -> Self {
        let (source, indices) = match c.source {
            CandidateSource::HullPair(i, j) => ("hull_pair", vec![i, j]),
            CandidateSource::Axis(i) => ("axis", vec![i]),
            CandidateSource::PlaneNormal => ("plane_normal", vec![]),
        };
        Self {
            source: source.into(),
            indices,
            g: c.g,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CandidateDoc {
    pub source: String,
    pub indices: Vec<usize>,
    pub g: [f64; 3],
    /// `pass`, `half_space_fail`, `projection_obtuse` or `quadrant_2d_fail`.
    pub verdict: String,
    /// The two points violating the condition named by `verdict`.
    pub pair: Option<[usize; 2]>,
    pub projected_inner_products: usize,
}

impl From<&CandidateReport<f64>> for CandidateDoc {
    fn from(r: &CandidateReport<f64>) -> Self {
        let w = WitnessDoc::from(&r.candidate);
        let (verdict, pair) = match r.verdict {
            CandidateVerdict::Pass { .. } => ("pass", None),
            CandidateVerdict::HalfSpaceFail { i, j } => ("half_space_fail", Some([i, j])),
            CandidateVerdict::ProjectionObtuse { i, j } => ("projection_obtuse", Some([i, j])),
            CandidateVerdict::Quadrant2DFail => ("quadrant_2d_fail", None),
        };
        Self {
            source: w.source,
            indices: w.indices,
            g: w.g,
            verdict: verdict.into(),
            pair,
            projected_inner_products: r.projected_inner_products,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct LobattoDoc {
    pub ell: usize,
    pub scan_step: f64,
    /// `‖G − I‖_max` for the H¹₀ Gram matrix of the three basis polynomials.
    pub gram_residual: f64,
    /// `‖QᵀQ − I‖_max` for the rotation behind ψ.
    pub rotation_residual: f64,
    pub psi_gram_residual: f64,
    pub psi_min: f64,
    /// Nodes `(x_i, x_j)` of hull-adjacent pairs of the four-point set whose
    /// plane normal leaves an obtuse angle among the projections.
    pub decisive_pairs: Vec<[f64; 2]>,
    pub sample_size: usize,
    pub sample_verdict: String,
    pub sample_candidates: Vec<CandidateDoc>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CertificateDoc {
    /// `factorize`, `embed`, `check-dnn` or `lobatto`.
    pub command: String,
    pub verdict: String,
    pub tolerances: ToleranceBlock,
    pub candidates: Vec<CandidateDoc>,
    pub witness: Option<WitnessDoc>,
    pub gram_violation: Option<[usize; 2]>,
    pub rank: Option<usize>,
    /// Columns of the orthonormal basis `F`, one per row.
    pub basis: Option<Vec<[f64; 3]>>,
    /// `FᵀU`, three rows by number of points.
    pub coords: Option<Vec<Vec<f64>>>,
    #[serde(rename = "matrixB")]
    pub matrix_b: Option<Vec<Vec<f64>>>,
    pub residual: Option<f64>,
    pub detail: Option<String>,
    pub lobatto: Option<LobattoDoc>,
}

impl CertificateDoc {
    pub fn new(command: &str, verdict: &str, tol: &Tolerances<f64>) -> Self {
        Self {
            command: command.into(),
            verdict: verdict.into(),
            tolerances: tol.into(),
            candidates: Vec::new(),
            witness: None,
            gram_violation: None,
            rank: None,
            basis: None,
            coords: None,
            matrix_b: None,
            residual: None,
            detail: None,
            lobatto: None,
        }
    }

    pub fn with_failure(mut self, f: &EmbedFailure<f64>) -> Self {
        self.candidates = f.reports.iter().map(CandidateDoc::from).collect();
        self.gram_violation = f.gram_violation.map(|(i, j)| [i, j]);
        self
    }

    pub fn with_embedding(mut self, e: &Embedding<f64>) -> Self {
        self.basis = Some(e.basis.columns.to_vec());
        self.coords = Some(e.coords.to_rows_f64());
        self.witness = e.witness.as_ref().map(WitnessDoc::from);
        self.residual = Some(e.basis.orthonormality_residual());
        self
    }

    pub fn from_embed(command: &str, res: &EmbedResult<f64>, tol: &Tolerances<f64>) -> Self {
        let doc = Self::new(command, res.kind(), tol);
        match res {
            EmbedResult::Failure(f) => doc.with_failure(f),
            EmbedResult::Success(e) | EmbedResult::TriviallyEmbeddable { embedding: e, .. } => doc.with_embedding(e),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate fields are all serializable")
    }
}
