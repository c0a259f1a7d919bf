//! JSON report types. Key order follows struct field order, integers
//! within the double-precision-safe range serialize as numbers and larger
//! ones as decimal strings, rationals always as `p/q` strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use tileforge::attractor::Viewport;
use tileforge::connectivity::{
    ConnectivityVerdict, Criterion, EdgeCheck, LevelConnectivity, ShellCertificate, VerdictStatus,
};
use tileforge::digitset::{DigitSet, ResidueCheck, ResidueWitness};
use tileforge::jordan::JordanDecomposition;
use tileforge::lattice::Lattice;
use tileforge::ratmath::{IntMatrix, Rational};

const SAFE_INTEGER: i64 = 1 << 53;

/// Integer that degrades to a decimal string beyond 2^53.
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if let Some(v) = self.0.to_i64() {
            if v.abs() < SAFE_INTEGER {
                return s.serialize_i64(v);
            }
        }
        s.serialize_str(&self.0.to_string())
    }
}

pub fn int(v: &BigInt) -> JsonInt {
    JsonInt(v.clone())
}

pub fn vector(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().map(int).collect()
}

pub fn vectors(vs: &[Vec<BigInt>]) -> Vec<Vec<JsonInt>> {
    vs.iter().map(|v| vector(v)).collect()
}

pub fn matrix(m: &IntMatrix) -> Vec<Vec<JsonInt>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| int(m.at(i, j))).collect())
        .collect()
}

pub fn fraction(r: &Rational) -> String {
    r.to_string()
}

#[derive(Serialize)]
pub struct TimingsJson {
    pub total_ms: f64,
}

#[derive(Serialize)]
pub struct EigenvalueJson {
    pub value: JsonInt,
    pub multiplicity: usize,
}

#[derive(Serialize)]
pub struct BlockJson {
    pub eigenvalue: JsonInt,
    pub size: usize,
}

#[derive(Serialize)]
pub struct JordanJson {
    pub j: Vec<Vec<JsonInt>>,
    pub p: Vec<Vec<JsonInt>>,
    pub blocks: Vec<BlockJson>,
    pub verified: bool,
}

pub fn jordan(dec: &JordanDecomposition, verified: bool) -> JordanJson {
    JordanJson {
        j: matrix(&dec.j),
        p: matrix(&dec.p),
        blocks: dec
            .blocks
            .iter()
            .map(|b| BlockJson {
                eigenvalue: int(&b.eigenvalue),
                size: b.size,
            })
            .collect(),
        verified,
    }
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub matrix: Vec<Vec<JsonInt>>,
    pub dimension: usize,
    pub determinant: JsonInt,
    pub characteristic_polynomial: Vec<JsonInt>,
    pub eigenvalues: Vec<EigenvalueJson>,
    pub dilation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offending_eigenvalue: Option<JsonInt>,
    pub jordan: JordanJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<TimingsJson>,
}

#[derive(Serialize)]
pub struct ResidueJson {
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ResidueWitnessJson>,
}

#[derive(Serialize)]
pub struct ResidueWitnessJson {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<JsonInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first: Option<Vec<JsonInt>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second: Option<Vec<JsonInt>>,
}

pub fn residue(check: &ResidueCheck) -> ResidueJson {
    ResidueJson {
        complete: check.complete,
        witness: check.witness.as_ref().map(|w| match w {
            ResidueWitness::Cardinality { expected, actual } => ResidueWitnessJson {
                kind: "cardinality",
                expected: Some(int(expected)),
                actual: Some(*actual),
                first: None,
                second: None,
            },
            ResidueWitness::SharedResidue { first, second } => ResidueWitnessJson {
                kind: "shared-residue",
                expected: None,
                actual: None,
                first: Some(vector(first)),
                second: Some(vector(second)),
            },
        }),
    }
}

#[derive(Serialize)]
pub struct DigitsReport {
    pub matrix: Vec<Vec<JsonInt>>,
    pub dimension: usize,
    pub determinant: JsonInt,
    pub cardinality: usize,
    pub provenance: &'static str,
    pub digits: Vec<Vec<JsonInt>>,
    pub residue: ResidueJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<TimingsJson>,
}

#[derive(Serialize)]
pub struct JordanReport {
    pub matrix: Vec<Vec<JsonInt>>,
    pub jordan: JordanJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<TimingsJson>,
}

#[derive(Serialize)]
pub struct VerdictJson {
    pub status: &'static str,
    pub criterion: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Serialize)]
pub struct WitnessJson {
    pub first: Vec<JsonInt>,
    pub second: Vec<JsonInt>,
}

pub fn verdict(v: &ConnectivityVerdict) -> VerdictJson {
    let status = match v.status {
        VerdictStatus::Connected => "connected",
        VerdictStatus::Disconnected => "disconnected",
        VerdictStatus::Inconclusive => "inconclusive",
    };
    let (criterion, level) = match v.criterion {
        Criterion::DigitConnectivity => ("digit-connectivity", None),
        Criterion::SufficientCondition => ("sufficient-condition", None),
        Criterion::LevelSets(n) => ("level-sets", Some(n)),
        Criterion::ShellCertificate => ("shell-certificate", None),
        Criterion::Pipeline => ("pipeline", None),
    };
    VerdictJson {
        status,
        criterion,
        level,
        witness: v.witness.as_ref().map(|w| WitnessJson {
            first: vector(&w.first),
            second: vector(&w.second),
        }),
    }
}

#[derive(Serialize)]
pub struct LatticeJson {
    pub basis: Vec<Vec<JsonInt>>,
    pub index: JsonInt,
    pub standard: bool,
}

pub fn lattice(l: &Lattice) -> LatticeJson {
    LatticeJson {
        basis: matrix(l.basis()),
        index: int(l.index()),
        standard: l.is_standard(),
    }
}

#[derive(Serialize)]
pub struct EdgeCheckJson {
    pub shift: Vec<JsonInt>,
    pub point_count: usize,
    pub connected: bool,
}

pub fn edge_check(e: &EdgeCheck) -> EdgeCheckJson {
    EdgeCheckJson {
        shift: vector(&e.shift),
        point_count: e.point_count,
        connected: e.connected,
    }
}

#[derive(Serialize)]
pub struct NeighborsJson {
    pub radius: JsonInt,
    pub count: usize,
    pub vectors: Vec<Vec<JsonInt>>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub matrix: Vec<Vec<JsonInt>>,
    pub verdict: VerdictJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeJson>,
    pub digit_count: usize,
    pub digits: Vec<Vec<JsonInt>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digit_connected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digit_match: Option<bool>,
    pub edge_checks: Vec<EdgeCheckJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neighbors: Option<NeighborsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<TimingsJson>,
}

#[derive(Serialize)]
pub struct LevelJson {
    pub level: usize,
    pub point_count: usize,
    pub connected: bool,
}

pub fn level(l: &LevelConnectivity) -> LevelJson {
    LevelJson {
        level: l.level,
        point_count: l.point_count,
        connected: l.connected,
    }
}

#[derive(Serialize)]
pub struct LevelsReport {
    pub matrix: Vec<Vec<JsonInt>>,
    pub verdict: VerdictJson,
    pub lattice: LatticeJson,
    pub residue: ResidueJson,
    pub levels: Vec<LevelJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<TimingsJson>,
}

#[derive(Serialize)]
pub struct ViewportJson {
    pub min_x: String,
    pub max_x: String,
    pub min_y: String,
    pub max_y: String,
}

pub fn viewport(v: &Viewport) -> ViewportJson {
    ViewportJson {
        min_x: fraction(&v.min_x),
        max_x: fraction(&v.max_x),
        min_y: fraction(&v.min_y),
        max_y: fraction(&v.max_y),
    }
}

#[derive(Serialize)]
pub struct RenderReport {
    pub matrix: Vec<Vec<JsonInt>>,
    pub depth: usize,
    pub point_count: usize,
    pub gap: String,
    pub viewport: ViewportJson,
    pub width: usize,
    pub height: usize,
    pub occupied: usize,
    pub out: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<TimingsJson>,
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub eigenvalue: JsonInt,
    pub size: usize,
    pub cardinality: usize,
    pub interior_count: usize,
    pub shell_count: usize,
    pub inner_covered: bool,
    pub shell_adjacent: bool,
    pub digits_connected: bool,
}

pub fn certificate(c: &ShellCertificate) -> CertificateJson {
    CertificateJson {
        eigenvalue: int(&c.eigenvalue),
        size: c.size,
        cardinality: c.digits.len(),
        interior_count: c.interior_count,
        shell_count: c.shell.len(),
        inner_covered: c.inner_covered,
        shell_adjacent: c.shell_adjacent,
        digits_connected: c.digits_connected,
    }
}

#[derive(Serialize)]
pub struct PipelineReport {
    pub matrix: Vec<Vec<JsonInt>>,
    pub verdict: VerdictJson,
    pub jordan: JordanJson,
    pub certificates: Vec<CertificateJson>,
    pub digit_count: usize,
    pub digits: Vec<Vec<JsonInt>>,
    pub residue: ResidueJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<TimingsJson>,
}

pub fn digit_rows(d: &DigitSet) -> Vec<Vec<JsonInt>> {
    vectors(d.digits())
}

#[derive(Serialize)]
pub struct ErrorJson<'a> {
    pub error: ErrorBody<'a>,
}

#[derive(Serialize)]
pub struct ErrorBody<'a> {
    pub kind: &'a str,
    pub message: String,
}
