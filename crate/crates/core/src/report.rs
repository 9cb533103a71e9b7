//! Versioned report documents and their JSON schema.
//!
//! Every exact value is serialised with the cyclotomic encoding of
//! [`crate::serial`]; floating-point renderings only appear under an
//! explicit `approx` key.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::characters::ResidueIdentity;
use crate::cyclotomic::CycloNum;
use crate::fake_cycles::FakeCycleSpec;
use crate::periods::{PeriodValue, VanishingCycleIndex};
use crate::polyring::{Exponents, Poly};
use crate::qform::NonreducedWitness;
use crate::tangent::GorensteinReport;

/// Bumped on any change to a report field.
pub const SCHEMA_VERSION: &str = "1.0.0";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Envelope shared by every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub tool_version: String,
    /// The configuration that produced the report.
    pub config: Value,
    pub result: ReportBody,
}

impl Report {
    pub fn new(config: Value, result: ReportBody) -> Self {
        Report {
            schema_version: SCHEMA_VERSION.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            config,
            result,
        }
    }

    /// The spec carried by the report, if any.
    pub fn spec(&self) -> Option<&FakeCycleSpec> {
        match &self.result {
            ReportBody::FakeCycle(r) => Some(&r.spec),
            ReportBody::Tangent(r) => Some(&r.spec),
            ReportBody::Qform(r) => Some(&r.spec),
            ReportBody::Periods(r) => r.spec.as_ref(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportBody {
    HodgeNumbers(HodgeNumbersReport),
    Picmax(PicmaxReport),
    LemmaCheck(LemmaCheckReport),
    Periods(PeriodsReport),
    FakeCycle(FakeCycleReport),
    Tangent(TangentReport),
    Qform(QformReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeEntry {
    pub p: u32,
    pub q: u32,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeNumbersReport {
    pub d: u32,
    pub n: u32,
    /// Primitive Hodge numbers `h^{p,q}_prim`, `p + q = n`, by increasing `p`.
    pub primitive: Vec<HodgeEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicmaxEntry {
    pub d: u32,
    pub picmax: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicmaxReport {
    pub n: u32,
    pub entries: Vec<PicmaxEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionEntry {
    pub d: u32,
    pub t: u32,
    pub sample: CycloNum,
    pub failing_pairs: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheckReport {
    /// `d` values in `5..=prime_max` (excluding 6) where the least prime not
    /// dividing `2d` equals `(d+1)/2`.
    pub prime_max: u64,
    pub exceptional: Vec<u64>,
    pub identity_max: u64,
    pub identities: Vec<ResidueIdentity>,
    pub exclusion: Vec<ExclusionEntry>,
    /// Failures, as human-readable messages; empty when everything holds.
    pub failures: Vec<String>,
    pub passed: bool,
}

/// A period: exact cyclotomic number, or a symbolic product with leftover
/// Gamma values and powers of `2πi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PeriodJson {
    Exact(CycloNum),
    Symbolic {
        coeff: CycloNum,
        /// Multiset of `a` with a factor `Γ(a/d)` each.
        gamma: Vec<u32>,
        pi_power: i32,
    },
}

impl PeriodJson {
    pub fn from_value(v: &PeriodValue) -> Self {
        match v.as_cyclo() {
            Some(c) if v.pi_power == 0 || c.is_zero() => PeriodJson::Exact(c.clone()),
            _ => PeriodJson::Symbolic {
                coeff: v.coeff.clone(),
                gamma: v
                    .gamma_word
                    .iter()
                    .flat_map(|(&a, &k)| std::iter::repeat_n(a, k as usize))
                    .collect(),
                pi_power: v.pi_power,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodRecord {
    pub beta_prime: VanishingCycleIndex,
    pub value: PeriodJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodsReport {
    pub d: u32,
    pub n: u32,
    /// Exponent vector of a single residue form `ω_β`, when requested.
    pub beta: Option<Vec<u32>>,
    /// The cycle whose normalised periods are listed, when requested.
    pub spec: Option<FakeCycleSpec>,
    /// `true` for `(2πi)^{-n/2}`-normalised values.
    pub normalized: bool,
    pub records: Vec<PeriodRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleEntry {
    pub t: u32,
    pub phi: CycloNum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPeriod {
    pub beta_prime: VanishingCycleIndex,
    #[serde(with = "crate::serial::rational")]
    pub value: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub certified: bool,
    pub galois_invariant: bool,
    pub period_count: usize,
    pub periods: Vec<RationalPeriod>,
    /// First vanishing cycle with an irrational period, on failure.
    pub failure: Option<PeriodRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FakeCycleReport {
    pub spec: FakeCycleSpec,
    pub true_linear: bool,
    pub cocycle: Option<Vec<CocycleEntry>>,
    pub certificate: Option<CertificateJson>,
    /// Floating-point renderings `[re, im]`; not authoritative.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub approx: Option<BTreeMap<String, [f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealCompareEntry {
    pub degree: u32,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentReport {
    pub spec: FakeCycleSpec,
    pub tangent_codim: u64,
    pub expected_codim: u64,
    pub degree: Option<u32>,
    pub colon_dim: Option<u64>,
    pub idealfake: Option<Vec<IdealCompareEntry>>,
    pub hilbert_function: Option<Vec<u64>>,
    pub gorenstein: Option<GorensteinReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QformEvaluation {
    pub pair: usize,
    pub d_poly: Poly,
    pub raw: Poly,
    pub closed_form: Poly,
    pub closed_form_agrees: bool,
    pub complement_basis: Vec<Exponents>,
    pub class: Vec<CycloNum>,
    pub class_is_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessStatus {
    Found,
    /// Every `c_{2i}^d = −1`; the form vanishes identically.
    NoneTrueLinear,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QformReport {
    pub spec: FakeCycleSpec,
    pub critical_degree: u32,
    pub evaluation: Option<QformEvaluation>,
    pub witness_status: Option<WitnessStatus>,
    pub witness: Option<NonreducedWitness>,
}

fn nullable(v: Value) -> Value {
    json!({ "anyOf": [v, { "type": "null" }] })
}

fn reference(name: &str) -> Value {
    json!({ "$ref": format!("#/$defs/{name}") })
}

fn object(props: Value, required: &[&str]) -> Value {
    json!({ "type": "object", "properties": props, "required": required })
}

fn uint() -> Value {
    json!({ "type": "integer", "minimum": 0 })
}

fn array_of(v: Value) -> Value {
    json!({ "type": "array", "items": v })
}

/// JSON schema (draft 2020-12) covering every report kind.
pub fn report_schema() -> Value {
    let rational = json!({
        "type": "array",
        "items": { "type": "integer" },
        "minItems": 2,
        "maxItems": 2
    });
    let cyclo = object(
        json!({ "m": { "type": "integer", "minimum": 1 }, "coeffs": array_of(reference("rational")) }),
        &["m", "coeffs"],
    );
    let poly = array_of(object(
        json!({ "exps": array_of(uint()), "coeff": reference("cyclo") }),
        &["exps", "coeff"],
    ));
    let spec = object(
        json!({
            "d": { "enum": [3, 4, 6] },
            "n": uint(),
            "c": array_of(reference("cyclo")),
            "c_lambda": nullable(reference("cyclo"))
        }),
        &["d", "n", "c", "c_lambda"],
    );
    let period_record = object(
        json!({
            "beta_prime": array_of(uint()),
            "value": { "anyOf": [
                reference("cyclo"),
                object(json!({
                    "coeff": reference("cyclo"),
                    "gamma": array_of(uint()),
                    "pi_power": { "type": "integer" }
                }), &["coeff", "gamma", "pi_power"])
            ]}
        }),
        &["beta_prime", "value"],
    );
    let kind = |k: &str| json!({ "const": k });

    let hodge = object(
        json!({
            "kind": kind("hodge_numbers"), "d": uint(), "n": uint(),
            "primitive": array_of(object(json!({ "p": uint(), "q": uint(), "value": uint() }), &["p", "q", "value"]))
        }),
        &["kind", "d", "n", "primitive"],
    );
    let picmax = object(
        json!({
            "kind": kind("picmax"), "n": uint(),
            "entries": array_of(object(json!({ "d": uint(), "picmax": { "type": "boolean" } }), &["d", "picmax"]))
        }),
        &["kind", "n", "entries"],
    );
    let lemma = object(
        json!({
            "kind": kind("lemma_check"),
            "prime_max": uint(),
            "exceptional": array_of(uint()),
            "identity_max": uint(),
            "identities": array_of(object(json!({
                "d": uint(), "q": uint(), "k": uint(),
                "case": { "enum": ["small", "exceptional"] },
                "value": { "type": "integer" }
            }), &["d", "q", "k", "case", "value"])),
            "exclusion": array_of(object(json!({
                "d": uint(), "t": uint(), "sample": reference("cyclo"),
                "failing_pairs": array_of(array_of(uint()))
            }), &["d", "t", "sample", "failing_pairs"])),
            "failures": array_of(json!({ "type": "string" })),
            "passed": { "type": "boolean" }
        }),
        &[
            "kind",
            "prime_max",
            "exceptional",
            "identity_max",
            "identities",
            "exclusion",
            "failures",
            "passed",
        ],
    );
    let periods = object(
        json!({
            "kind": kind("periods"), "d": uint(), "n": uint(),
            "beta": nullable(array_of(uint())),
            "spec": nullable(reference("spec")),
            "normalized": { "type": "boolean" },
            "records": array_of(reference("period_record"))
        }),
        &["kind", "d", "n", "beta", "spec", "normalized", "records"],
    );
    let certificate = object(
        json!({
            "certified": { "type": "boolean" },
            "galois_invariant": { "type": "boolean" },
            "period_count": uint(),
            "periods": array_of(object(json!({
                "beta_prime": array_of(uint()), "value": reference("rational")
            }), &["beta_prime", "value"])),
            "failure": nullable(reference("period_record"))
        }),
        &[
            "certified",
            "galois_invariant",
            "period_count",
            "periods",
            "failure",
        ],
    );
    let fake = object(
        json!({
            "kind": kind("fake_cycle"),
            "spec": reference("spec"),
            "true_linear": { "type": "boolean" },
            "cocycle": nullable(array_of(object(json!({ "t": uint(), "phi": reference("cyclo") }), &["t", "phi"]))),
            "certificate": nullable(certificate),
            "approx": {
                "type": "object",
                "description": "floating-point renderings [re, im]; not authoritative",
                "additionalProperties": { "type": "array", "items": { "type": "number" }, "minItems": 2, "maxItems": 2 }
            }
        }),
        &["kind", "spec", "true_linear", "cocycle", "certificate"],
    );
    let gorenstein = object(
        json!({
            "socle_degree": uint(),
            "hilbert_function": array_of(uint()),
            "pairing_ranks": array_of(uint()),
            "is_gorenstein": { "type": "boolean" }
        }),
        &[
            "socle_degree",
            "hilbert_function",
            "pairing_ranks",
            "is_gorenstein",
        ],
    );
    let tangent = object(
        json!({
            "kind": kind("tangent"),
            "spec": reference("spec"),
            "tangent_codim": uint(),
            "expected_codim": uint(),
            "degree": nullable(uint()),
            "colon_dim": nullable(uint()),
            "idealfake": nullable(array_of(object(json!({ "degree": uint(), "equal": { "type": "boolean" } }), &["degree", "equal"]))),
            "hilbert_function": nullable(array_of(uint())),
            "gorenstein": nullable(gorenstein)
        }),
        &[
            "kind",
            "spec",
            "tangent_codim",
            "expected_codim",
            "degree",
            "colon_dim",
            "idealfake",
            "hilbert_function",
            "gorenstein",
        ],
    );
    let qform = object(
        json!({
            "kind": kind("qform"),
            "spec": reference("spec"),
            "critical_degree": uint(),
            "evaluation": nullable(object(json!({
                "pair": uint(),
                "d_poly": reference("poly"),
                "raw": reference("poly"),
                "closed_form": reference("poly"),
                "closed_form_agrees": { "type": "boolean" },
                "complement_basis": array_of(array_of(uint())),
                "class": array_of(reference("cyclo")),
                "class_is_zero": { "type": "boolean" }
            }), &["pair", "d_poly", "raw", "closed_form", "closed_form_agrees", "complement_basis", "class", "class_is_zero"])),
            "witness_status": nullable(json!({ "enum": ["found", "none_true_linear"] })),
            "witness": nullable(object(json!({
                "pair": uint(),
                "d_poly": reference("poly"),
                "complement_basis": array_of(array_of(uint())),
                "class": array_of(reference("cyclo")),
                "candidate_index": uint()
            }), &["pair", "d_poly", "complement_basis", "class", "candidate_index"]))
        }),
        &[
            "kind",
            "spec",
            "critical_degree",
            "evaluation",
            "witness_status",
            "witness",
        ],
    );

    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$id": format!("fermat-cycles/report/{SCHEMA_VERSION}"),
        "title": "fermat-cycles report",
        "type": "object",
        "properties": {
            "schema_version": { "const": SCHEMA_VERSION },
            "tool_version": { "type": "string" },
            "config": { "type": "object" },
            "result": { "oneOf": [hodge, picmax, lemma, periods, fake, tangent, qform] }
        },
        "required": ["schema_version", "tool_version", "config", "result"],
        "$defs": {
            "rational": rational,
            "cyclo": cyclo,
            "poly": poly,
            "spec": spec,
            "period_record": period_record
        }
    })
}
