//! Report files. Every integer is written as a decimal string.

use serde::{Deserialize, Serialize};

use germlab_core::family::{FamilyProfile, SampleRecord, Verdicts};
use germlab_core::invariants::{IdentityChecks, InvariantReport};
use germlab_core::weighted::{CrossValidation, WHInvariants, WHSignature};

use crate::problem::ProblemFile;

pub const REPORT_SCHEMA: &str = "germlab-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub schema: String,
    pub version: String,
    pub command: String,
    /// `None` only when the problem file itself could not be read.
    pub input: Option<ProblemFile>,
    pub seed: String,
    pub trials: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weighted: Option<WeightedRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyRecord>,
    /// `None` when the identities do not apply or nothing was computed.
    pub identity_checks: Option<IdentityRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
    pub warnings: Vec<String>,
    pub wall_time_seconds: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    InputError,
    Degenerate,
    GenericityFailure,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InputError => 1,
            Status::Degenerate => 2,
            Status::GenericityFailure => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorRecord {
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisRecord {
    #[serde(rename = "mu_X")]
    pub mu_x: String,
    #[serde(rename = "mu_S")]
    pub mu_s: String,
    #[serde(rename = "mu_Delta")]
    pub mu_delta: String,
    pub m: String,
    pub c: String,
    pub d: String,
    pub mu_disc: String,
    pub mu_preimage: String,
    #[serde(rename = "m0_X")]
    pub m0_x: String,
    #[serde(rename = "m0_S")]
    pub m0_s: String,
    pub m0_preimage: String,
    /// Equation of the discriminant in target coordinates `(u, v)`.
    pub discriminant: Option<String>,
    pub a_finite: bool,
    pub notes: Vec<String>,
}

impl From<&InvariantReport> for AnalysisRecord {
    fn from(r: &InvariantReport) -> Self {
        AnalysisRecord {
            mu_x: r.mu_x.to_string(),
            mu_s: r.mu_s.to_string(),
            mu_delta: r.mu_delta.to_string(),
            m: r.m.to_string(),
            c: r.c.to_string(),
            d: r.d.to_string(),
            mu_disc: r.mu_disc.to_string(),
            mu_preimage: r.mu_preimage.to_string(),
            m0_x: r.m0_x.to_string(),
            m0_s: r.m0_s.to_string(),
            m0_preimage: r.m0_preimage.to_string(),
            discriminant: r.discriminant_gen.as_ref().map(ToString::to_string),
            a_finite: r.afinite,
            notes: r.notes.clone(),
        }
    }
}

/// Verdicts of the exact identities; `preimage_lemma` is absent for closed
/// forms, which do not produce the preimage Milnor number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityRecord {
    /// `2(c+d) = mu(Delta) - mu(S)`
    pub cusps_and_double_folds: bool,
    /// `c + mu(X) = mu(S) + m - 2`
    pub cusps_and_degree: bool,
    /// `mu(Delta) - 2c - d = d + mu(S)`
    pub discriminant_milnor: bool,
    /// `(m-1) mu(Delta) = mu(f^-1 Delta) + m - 2`
    pub preimage_lemma: Option<bool>,
    pub all: bool,
}

impl From<IdentityChecks> for IdentityRecord {
    fn from(c: IdentityChecks) -> Self {
        IdentityRecord {
            cusps_and_double_folds: c.thm1,
            cusps_and_degree: c.thm2,
            discriminant_milnor: c.cor_mu_disc,
            preimage_lemma: Some(c.lemma_preimage),
            all: c.all(),
        }
    }
}

impl From<&WHInvariants> for IdentityRecord {
    fn from(w: &WHInvariants) -> Self {
        let [mu_s, c, m, mu_x, mu_delta, d, mu_disc] = w.fields().map(|(_, v)| v as i128);
        let thm1 = 2 * (c + d) == mu_delta - mu_s;
        let thm2 = c + mu_x == mu_s + m - 2;
        let cor = mu_disc == mu_delta - 2 * c - d && mu_disc == d + mu_s;
        IdentityRecord {
            cusps_and_double_folds: thm1,
            cusps_and_degree: thm2,
            discriminant_milnor: cor,
            preimage_lemma: None,
            all: thm1 && thm2 && cor,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureRecord {
    pub weights: Vec<String>,
    pub f_degrees: Vec<String>,
    pub phi_degrees: Vec<String>,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "A2")]
    pub a2: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "C2")]
    pub c2: String,
    #[serde(rename = "D")]
    pub d: String,
}

impl From<&WHSignature> for SignatureRecord {
    fn from(s: &WHSignature) -> Self {
        let strings = |v: &[u64]| v.iter().map(ToString::to_string).collect();
        SignatureRecord {
            weights: strings(&s.weights),
            f_degrees: strings(&s.f_degrees),
            phi_degrees: strings(&s.phi_degrees),
            a: s.a.to_string(),
            a2: s.a2.to_string(),
            b: s.b.to_string(),
            c: s.c.to_string(),
            c2: s.c2.to_string(),
            d: s.d.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparisonRow {
    pub field: String,
    pub closed_form: String,
    pub engine: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossValidationRecord {
    pub rows: Vec<ComparisonRow>,
    pub all_equal: bool,
}

impl From<&CrossValidation> for CrossValidationRecord {
    fn from(cv: &CrossValidation) -> Self {
        CrossValidationRecord {
            rows: cv
                .rows()
                .into_iter()
                .map(|(field, a, b)| ComparisonRow { field: field.into(), closed_form: a.to_string(), engine: b.to_string() })
                .collect(),
            all_equal: cv.all_equal(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosedFormRecord {
    #[serde(rename = "mu_S")]
    pub mu_s: String,
    pub c: String,
    pub m: String,
    #[serde(rename = "mu_X")]
    pub mu_x: String,
    #[serde(rename = "mu_Delta")]
    pub mu_delta: String,
    pub d: String,
    pub mu_disc: String,
}

impl From<&WHInvariants> for ClosedFormRecord {
    fn from(w: &WHInvariants) -> Self {
        ClosedFormRecord {
            mu_s: w.mu_s.to_string(),
            c: w.c.to_string(),
            m: w.m.to_string(),
            mu_x: w.mu_x.to_string(),
            mu_delta: w.mu_delta.to_string(),
            d: w.d.to_string(),
            mu_disc: w.mu_disc.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedRecord {
    pub signature: SignatureRecord,
    pub invariants: ClosedFormRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_validation: Option<CrossValidationRecord>,
}

impl WeightedRecord {
    pub fn new(sig: &WHSignature, inv: &WHInvariants, cv: Option<&CrossValidation>) -> Self {
        WeightedRecord { signature: sig.into(), invariants: inv.into(), cross_validation: cv.map(Into::into) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleRow {
    pub t: String,
    #[serde(rename = "mu_X")]
    pub mu_x: String,
    #[serde(rename = "m0_X")]
    pub m0_x: String,
    #[serde(rename = "m1_X")]
    pub m1_x: String,
    #[serde(rename = "m2_X")]
    pub m2_x: String,
    #[serde(rename = "mu_S")]
    pub mu_s: String,
    #[serde(rename = "mu_Delta")]
    pub mu_delta: String,
    pub c: String,
    pub d: String,
    pub m: String,
    pub m0_preimage: String,
    pub identities: Option<bool>,
}

impl From<&SampleRecord> for SampleRow {
    fn from(r: &SampleRecord) -> Self {
        SampleRow {
            t: r.t.to_string(),
            mu_x: r.mu_x.to_string(),
            m0_x: r.m0_x.to_string(),
            m1_x: r.m1_x.to_string(),
            m2_x: r.m2_x.to_string(),
            mu_s: r.mu_s.to_string(),
            mu_delta: r.mu_delta.to_string(),
            c: r.c.to_string(),
            d: r.d.to_string(),
            m: r.m.to_string(),
            m0_preimage: r.m0_preimage.to_string(),
            identities: r.identities,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FailureRow {
    pub t: String,
    pub message: String,
}

/// `null` verdicts are undetermined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictRecord {
    pub whitney_surfaces: Option<bool>,
    pub whitney_unfolding: Option<bool>,
    pub zariski: Option<bool>,
}

impl From<Verdicts> for VerdictRecord {
    fn from(v: Verdicts) -> Self {
        VerdictRecord { whitney_surfaces: v.whitney_surfaces, whitney_unfolding: v.whitney_unfolding, zariski: v.zariski }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyRecord {
    pub parameter: String,
    pub t_samples: Vec<String>,
    /// The linear map shared by every member when `f` is generic.
    pub projection: Option<Vec<String>>,
    pub samples: Vec<SampleRow>,
    pub failures: Vec<FailureRow>,
    pub verdicts: VerdictRecord,
    pub notes: Vec<String>,
}

impl FamilyRecord {
    pub fn new(parameter: &str, t_samples: &[num_rational::BigRational], projection: Option<Vec<String>>, p: &FamilyProfile) -> Self {
        FamilyRecord {
            parameter: parameter.into(),
            t_samples: t_samples.iter().map(ToString::to_string).collect(),
            projection,
            samples: p.samples.iter().map(Into::into).collect(),
            failures: p.failures.iter().map(|(t, e)| FailureRow { t: t.to_string(), message: e.to_string() }).collect(),
            verdicts: p.verdicts.into(),
            notes: p.notes.clone(),
        }
    }
}
