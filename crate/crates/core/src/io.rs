//! JSON forms of inputs and reports.
//!
//! Integers within the 53-bit safe range are JSON numbers; larger ones are
//! decimal strings. Polynomial coefficients are always strings. Row indices
//! and mutation directions are 1-based.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cone::ConeDescription;
use crate::error::{Error, Result};
use crate::numeric::{IntMatrix, LaurentPolynomial};
use crate::seed::ExchangeMatrix;

const SAFE: i64 = (1 << 53) - 1;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(x) if (-SAFE..=SAFE).contains(&x) => s.serialize_i64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<JsonInt, E> {
                Err(E::custom(format!("{v} is not an integer")))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("{v:?} is not a decimal integer")))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

pub fn int_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<JsonInt>> {
    rows.iter().map(|r| ints(r)).collect()
}

pub fn matrix(m: &IntMatrix) -> Vec<Vec<JsonInt>> {
    int_rows(&m.to_rows())
}

pub fn bigs(v: &[JsonInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

pub fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

/// `{"B": [[int]], "d": [int]}`
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SeedInput {
    #[serde(rename = "B")]
    pub b: Vec<Vec<JsonInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<JsonInt>>,
}

impl SeedInput {
    pub fn parse(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn exchange_matrix(&self) -> Result<ExchangeMatrix> {
        let rows: Vec<Vec<BigInt>> = self.b.iter().map(|r| bigs(r)).collect();
        let m = IntMatrix::try_from_rows(rows)?;
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        match &self.d {
            Some(d) => ExchangeMatrix::with_symmetrizer(m, bigs(d)),
            None => ExchangeMatrix::validate(m),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<i64>,
    pub coeff: String,
}

pub fn poly(p: &LaurentPolynomial) -> Vec<TermJson> {
    p.terms()
        .map(|(e, c)| TermJson {
            exponents: e.clone(),
            coeff: c.to_string(),
        })
        .collect()
}

pub fn poly_from_json(nvars: usize, terms: &[TermJson]) -> Result<LaurentPolynomial> {
    let parsed = terms
        .iter()
        .map(|t| {
            t.coeff
                .parse::<BigInt>()
                .map(|c| (t.exponents.clone(), c))
                .map_err(|_| Error::NotIntegral)
        })
        .collect::<Result<Vec<_>>>()?;
    LaurentPolynomial::from_terms(nvars, parsed)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ConeJson {
    pub rows: Vec<Vec<JsonInt>>,
    pub implicit: Vec<usize>,
    pub strict: Vec<usize>,
    /// Each facet lists every row defining it.
    pub facets: Vec<Vec<usize>>,
    pub dim: usize,
    pub lineality: Vec<Vec<JsonInt>>,
}

impl From<&ConeDescription> for ConeJson {
    fn from(d: &ConeDescription) -> Self {
        Self {
            rows: matrix(d.system.matrix()),
            implicit: one_based(&d.implicit),
            strict: one_based(&d.strict),
            facets: d.facets.iter().map(|f| one_based(&f.rows)).collect(),
            dim: d.dim,
            lineality: int_rows(&d.lineality),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ArrowJson {
    pub source: usize,
    pub target: usize,
    pub multiplicity: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ValidateReport {
    pub n: usize,
    #[serde(rename = "B")]
    pub b: Vec<Vec<JsonInt>>,
    pub d: Vec<JsonInt>,
    pub skew_symmetric: bool,
    pub arrows: Option<Vec<ArrowJson>>,
    pub acyclic: Option<bool>,
    pub kernel: Vec<Vec<JsonInt>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MutateReport {
    pub seq: Vec<usize>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<JsonInt>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MatrixReport {
    pub seq: Vec<usize>,
    pub matrix: Vec<Vec<JsonInt>>,
    /// Columns of `matrix`.
    pub vectors: Vec<Vec<JsonInt>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FpolyReport {
    pub seq: Vec<usize>,
    #[serde(rename = "F")]
    pub f: Vec<Vec<TermJson>>,
    pub display: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ConeReport {
    pub seq: Vec<usize>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<JsonInt>>,
    pub cone: ConeJson,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GeneratorsJson {
    pub rays: Vec<Vec<JsonInt>>,
    pub lineality: Vec<Vec<JsonInt>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FanCone {
    pub cone: ConeJson,
    pub witnesses: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<GeneratorsJson>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FanReport {
    pub complete: bool,
    pub depth: usize,
    pub seeds: usize,
    pub seeds_up_to_relabelling: usize,
    pub dims: BTreeMap<String, usize>,
    pub cones: Vec<FanCone>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ThetaReport {
    pub beta: Vec<JsonInt>,
    pub alpha: Vec<JsonInt>,
    pub witness: Vec<usize>,
    pub value: Vec<TermJson>,
    pub display: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ArVertexJson {
    pub vertex: usize,
    pub slice: usize,
    pub dim: Vec<JsonInt>,
    pub g: Vec<JsonInt>,
    pub module: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MeshJson {
    pub source: usize,
    pub middles: Vec<usize>,
    pub target: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ArReport {
    pub cartan: Vec<Vec<JsonInt>>,
    pub cartan_inv: Vec<Vec<JsonInt>>,
    pub coxeter_inv: Vec<Vec<JsonInt>>,
    pub dynkin: bool,
    pub exhaustive: bool,
    /// Mesh endpoints index this list (0-based).
    pub vertices: Vec<ArVertexJson>,
    pub meshes: Vec<MeshJson>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NormalJson {
    pub c: Vec<JsonInt>,
    pub normal: Vec<JsonInt>,
    pub primitive: Vec<JsonInt>,
    pub mesh_sum: Option<Vec<JsonInt>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NormalsReport {
    pub complete: bool,
    pub normals: Vec<NormalJson>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct KernelCertificateJson {
    pub subset: Vec<usize>,
    pub lambda: Vec<JsonInt>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ImplicitCertificateJson {
    pub row: usize,
    /// `sum_i lambda_i a_i = -scale * a_row`
    pub lambda: Vec<JsonInt>,
    pub scale: JsonInt,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CertifyReport {
    pub seq: Vec<usize>,
    pub c_vectors: Vec<Vec<JsonInt>>,
    pub certificates: Vec<KernelCertificateJson>,
    pub implicit: Vec<ImplicitCertificateJson>,
    pub kernel: Vec<Vec<JsonInt>>,
}
