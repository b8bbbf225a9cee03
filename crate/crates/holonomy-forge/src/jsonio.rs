//! Versioned JSON formats: input algebras, forged metrics, and holonomy
//! certificates. All scalars are strings to keep the arithmetic exact, and
//! every document carries `"schema": "holonomy-forge/1"`.

use serde::{Deserialize, Serialize};

use crate::forge::{recover_family, ForgeError, MetricSpec};
use crate::holonomy::{classify, Classification, HolonomyCertificate, HolonomyError, Verdict};
use crate::lie::{
    triple_project, LieError, LieSubalgebra, LorTriple, SkewMatrix, TargetAlgebra,
};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::Scalar;

pub const SCHEMA: &str = "holonomy-forge/1";

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("unsupported schema {0:?}, expected {SCHEMA:?}")]
    Schema(String),
    #[error("{0}")]
    Shape(&'static str),
    #[error(transparent)]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Forge(#[from] ForgeError),
    #[error(transparent)]
    Holonomy(#[from] HolonomyError),
}

fn check_schema(s: &str) -> Result<(), JsonError> {
    if s == SCHEMA {
        Ok(())
    } else {
        Err(JsonError::Schema(s.to_string()))
    }
}

/// A Lie algebra of skew matrices: `basis` holds one row-major n*n entry
/// list per matrix.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraJson {
    pub schema: String,
    pub n: usize,
    pub basis: Vec<Vec<Scalar>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
}

fn matrix_from_row_major(n: usize, flat: &[Scalar]) -> Result<Matrix, JsonError> {
    if flat.len() != n * n {
        return Err(JsonError::Shape("basis matrix has wrong entry count"));
    }
    Ok(Matrix::from_fn(n, n, |i, j| flat[i * n + j].clone()))
}

pub fn algebra_to_json(h: &LieSubalgebra, name: Option<&str>) -> AlgebraJson {
    AlgebraJson {
        schema: SCHEMA.into(),
        n: h.n(),
        basis: h.basis().iter().map(|b| b.entries().flatten()).collect(),
        name: name.map(str::to_owned),
    }
}

/// Validates skewness and bracket closure on the way in.
pub fn algebra_from_json(doc: &AlgebraJson) -> Result<LieSubalgebra, JsonError> {
    check_schema(&doc.schema)?;
    let basis = doc
        .basis
        .iter()
        .map(|flat| Ok(SkewMatrix::new(matrix_from_row_major(doc.n, flat)?)?))
        .collect::<Result<Vec<_>, JsonError>>()?;
    Ok(LieSubalgebra::new(doc.n, basis)?)
}

pub fn algebra_to_string(h: &LieSubalgebra, name: Option<&str>) -> String {
    serde_json::to_string_pretty(&algebra_to_json(h, name)).expect("algebra serializes")
}

pub fn algebra_from_str(s: &str) -> Result<(LieSubalgebra, Option<String>), JsonError> {
    let doc: AlgebraJson = serde_json::from_str(s)?;
    let h = algebra_from_json(&doc)?;
    Ok((h, doc.name))
}

/// The target subalgebra of so(1, n+1) ships as an algebra document over
/// the (n+2)-dimensional parabolic model, one embedded triple per basis
/// element.
fn target_to_json(t: &TargetAlgebra) -> AlgebraJson {
    let name = match t.type_tag {
        1 => "g^{1,h}".to_string(),
        2 => "g^{2,h}".to_string(),
        3 => "g^{3,h,phi}".to_string(),
        _ => format!("g^{{4,h,{},psi}}", t.m.unwrap_or(0)),
    };
    AlgebraJson {
        schema: SCHEMA.into(),
        n: t.n() + 2,
        basis: t.basis_matrices().iter().map(Matrix::flatten).collect(),
        name: Some(name),
    }
}

fn target_from_json(doc: &AlgebraJson, type_tag: u8) -> Result<TargetAlgebra, JsonError> {
    check_schema(&doc.schema)?;
    if doc.n < 2 {
        return Err(JsonError::Shape("target model dimension must be >= 2"));
    }
    let n = doc.n - 2;
    let basis = doc
        .basis
        .iter()
        .map(|flat| {
            let m = matrix_from_row_major(doc.n, flat)?;
            triple_project(&m).ok_or(JsonError::Shape("target matrix is not a parabolic triple"))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    let class = classify(n, &basis)?;
    Ok(TargetAlgebra {
        type_tag,
        h: class.h,
        phi: class.phi,
        m: class.m,
        psi: class.psi,
        basis,
    })
}

/// A forged metric. `u` and `f` fully determine the family, so the family
/// is reconstructed on parse rather than stored.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetricJson {
    pub schema: String,
    pub n: usize,
    pub n0: usize,
    #[serde(rename = "type")]
    pub type_tag: u8,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    pub u: Vec<Poly>,
    pub f: Poly,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub phi: Option<Vec<Vec<Scalar>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub psi: Option<Vec<Vec<Vec<Scalar>>>>,
    pub permutation: Vec<usize>,
    pub target: AlgebraJson,
}

pub fn metric_to_json(spec: &MetricSpec) -> MetricJson {
    MetricJson {
        schema: SCHEMA.into(),
        n: spec.n,
        n0: spec.n0,
        type_tag: spec.type_tag,
        m: spec.m,
        u: spec.u.clone(),
        f: spec.f.clone(),
        phi: spec.phi_coeffs.clone(),
        psi: spec.psi_coeffs.clone(),
        permutation: spec.permutation.clone(),
        target: target_to_json(&spec.target),
    }
}

pub fn metric_from_json(doc: &MetricJson) -> Result<MetricSpec, JsonError> {
    check_schema(&doc.schema)?;
    let target = target_from_json(&doc.target, doc.type_tag)?;
    if target.n() != doc.n {
        return Err(JsonError::Shape("target dimension does not match n"));
    }
    let family = recover_family(&target.h, &doc.u)?;
    if family.n0 != doc.n0 {
        return Err(JsonError::Shape("n0 does not match the recovered family"));
    }
    Ok(MetricSpec {
        n: doc.n,
        n0: doc.n0,
        type_tag: doc.type_tag,
        m: doc.m,
        u: doc.u.clone(),
        f: doc.f.clone(),
        family,
        phi_coeffs: doc.phi.clone(),
        psi_coeffs: doc.psi.clone(),
        permutation: doc.permutation.clone(),
        target,
    })
}

pub fn metric_to_string(spec: &MetricSpec) -> String {
    serde_json::to_string_pretty(&metric_to_json(spec)).expect("metric serializes")
}

pub fn metric_from_str(s: &str) -> Result<MetricSpec, JsonError> {
    metric_from_json(&serde_json::from_str(s)?)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TripleJson {
    pub a: Scalar,
    /// Row-major n*n entries.
    pub rot: Vec<Scalar>,
    pub x: Vec<Scalar>,
}

fn triple_to_json(t: &LorTriple) -> TripleJson {
    TripleJson {
        a: t.a.clone(),
        rot: t.rot.entries().flatten(),
        x: t.x.clone(),
    }
}

fn triple_from_json(n: usize, doc: &TripleJson) -> Result<LorTriple, JsonError> {
    if doc.x.len() != n {
        return Err(JsonError::Shape("triple x-part has wrong length"));
    }
    let rot = SkewMatrix::new(matrix_from_row_major(n, &doc.rot)?)?;
    Ok(LorTriple::new(doc.a.clone(), rot, doc.x.clone()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationJson {
    #[serde(rename = "type")]
    pub type_tag: u8,
    /// Basis of the orthogonal part, row-major.
    pub h: Vec<Vec<Scalar>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub phi: Option<Vec<Scalar>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub psi: Option<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub schema: String,
    pub n: usize,
    pub dimension_trajectory: Vec<usize>,
    pub max_order_used: usize,
    pub stabilized: bool,
    pub generated: Vec<TripleJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub classified: Option<ClassificationJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<TripleJson>,
}

pub fn certificate_to_json(cert: &HolonomyCertificate) -> CertificateJson {
    CertificateJson {
        schema: SCHEMA.into(),
        n: cert.n,
        dimension_trajectory: cert.dimension_trajectory.clone(),
        max_order_used: cert.max_order_used,
        stabilized: cert.stabilized,
        generated: cert.generated.iter().map(triple_to_json).collect(),
        classified: cert.classified.as_ref().map(|c| ClassificationJson {
            type_tag: c.type_tag,
            h: c.h.basis().iter().map(|b| b.entries().flatten()).collect(),
            phi: c.phi.clone(),
            m: c.m,
            psi: c.psi.clone(),
        }),
        verdict: cert.verdict.map(|v| v.to_string()),
        witness: cert.witness.as_ref().map(triple_to_json),
    }
}

pub fn certificate_from_json(doc: &CertificateJson) -> Result<HolonomyCertificate, JsonError> {
    check_schema(&doc.schema)?;
    let n = doc.n;
    let generated = doc
        .generated
        .iter()
        .map(|t| triple_from_json(n, t))
        .collect::<Result<Vec<_>, _>>()?;
    let classified = doc
        .classified
        .as_ref()
        .map(|c| -> Result<Classification, JsonError> {
            let basis = c
                .h
                .iter()
                .map(|flat| Ok(SkewMatrix::new(matrix_from_row_major(n, flat)?)?))
                .collect::<Result<Vec<_>, JsonError>>()?;
            Ok(Classification {
                type_tag: c.type_tag,
                h: if basis.is_empty() {
                    LieSubalgebra::trivial(n)
                } else {
                    LieSubalgebra::new(n, basis)?
                },
                phi: c.phi.clone(),
                m: c.m,
                psi: c.psi.clone(),
            })
        })
        .transpose()?;
    let verdict = doc
        .verdict
        .as_deref()
        .map(|v| match v {
            "equal" => Ok(Verdict::Equal),
            "proper-subalgebra" => Ok(Verdict::ProperSubalgebra),
            "not-contained" => Ok(Verdict::NotContained),
            _ => Err(JsonError::Shape("unknown verdict")),
        })
        .transpose()?;
    let witness = doc
        .witness
        .as_ref()
        .map(|t| triple_from_json(n, t))
        .transpose()?;
    Ok(HolonomyCertificate {
        n,
        generated,
        dimension_trajectory: doc.dimension_trajectory.clone(),
        max_order_used: doc.max_order_used,
        stabilized: doc.stabilized,
        classified,
        verdict,
        witness,
    })
}

pub fn certificate_to_string(cert: &HolonomyCertificate) -> String {
    serde_json::to_string_pretty(&certificate_to_json(cert)).expect("certificate serializes")
}

pub fn certificate_from_str(s: &str) -> Result<HolonomyCertificate, JsonError> {
    certificate_from_json(&serde_json::from_str(s)?)
}
