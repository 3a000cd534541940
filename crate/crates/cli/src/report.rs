//! Canonical machine-readable reports. Serialization is deterministic:
//! keys sorted, every rational a "num/den" string, and a sha-256 run hash
//! computed over the report with its own hash field removed, so identical
//! inputs always produce byte-identical documents.

use serde::Serialize;
use sha2::{Digest, Sha256};

use dynzeta::graeffe::ModulusInterval;
use dynzeta::rational::rational_to_string;
use dynzeta::spectral::{DiscCheck, SpectralReport, ViolationKind, WeightBoundViolation};
use dynzeta::{Polynomial, Rational, ZetaResult};

use crate::config::ModelConfig;

#[derive(Debug, Clone, Serialize)]
pub struct IntervalBlock {
    pub lo: String,
    pub hi: String,
}

impl IntervalBlock {
    fn new(iv: &ModulusInterval) -> Self {
        IntervalBlock {
            lo: rational_to_string(&iv.lo),
            hi: rational_to_string(&iv.hi),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RationalFunctionBlock {
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
}

fn poly_coeffs(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(rational_to_string).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ZetaBlock {
    pub series: Vec<String>,
    pub reconstructed: RationalFunctionBlock,
    pub product: RationalFunctionBlock,
    pub agreement: bool,
}

impl ZetaBlock {
    pub fn new(z: &ZetaResult) -> Self {
        ZetaBlock {
            series: z.series.coeffs().iter().map(rational_to_string).collect(),
            reconstructed: RationalFunctionBlock {
                numerator: poly_coeffs(z.reconstructed.numerator()),
                denominator: poly_coeffs(z.reconstructed.denominator()),
            },
            product: RationalFunctionBlock {
                numerator: poly_coeffs(z.product_form.numerator()),
                denominator: poly_coeffs(z.product_form.denominator()),
            },
            agreement: z.agreement,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralBlock {
    pub lambda_even: IntervalBlock,
    pub lambda_odd: IntervalBlock,
    pub k_even: Option<usize>,
    pub k_odd: Option<usize>,
    pub ineq1: String,
    pub ineq2: String,
}

impl SpectralBlock {
    pub fn new(r: &SpectralReport) -> Self {
        SpectralBlock {
            lambda_even: IntervalBlock::new(&r.lambda_even),
            lambda_odd: IntervalBlock::new(&r.lambda_odd),
            k_even: r.k_even,
            k_odd: r.k_odd,
            ineq1: r.ineq1.to_string(),
            ineq2: r.ineq2.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscBlock {
    pub verdict: String,
    pub contradiction: bool,
}

impl DiscBlock {
    pub fn new(d: &DiscCheck) -> Self {
        DiscBlock {
            verdict: d.verdict.to_string(),
            contradiction: d.contradiction,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationBlock {
    pub degree: usize,
    pub weight: usize,
    pub kind: String,
}

impl ViolationBlock {
    pub fn new(v: &WeightBoundViolation) -> Self {
        ViolationBlock {
            degree: v.degree,
            weight: v.weight,
            kind: match v.kind {
                ViolationKind::InverseRootBound => "inverse_root_bound".into(),
                ViolationKind::ModulusMismatch => "modulus_mismatch".into(),
            },
        }
    }
}

/// Positivity rendered as "pass" or "violation@<index>".
pub fn positivity_string(p: &dynzeta::Positivity) -> String {
    match p {
        dynzeta::Positivity::Pass => "pass".into(),
        dynzeta::Positivity::FirstViolation(n) => format!("violation@{n}"),
    }
}

/// The full per-run document.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: ModelConfig,
    pub traces: Vec<String>,
    pub zeta: ZetaBlock,
    pub positivity: String,
    pub spectral: SpectralBlock,
    pub disc: DiscBlock,
    pub n0: Option<u32>,
    pub weight_violations: Vec<ViolationBlock>,
    pub version: String,
    pub run_hash: String,
}

impl Report {
    /// Canonical JSON: sorted keys, hash field filled from the rest.
    pub fn to_canonical_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        let obj = value.as_object_mut().expect("report is an object");
        obj.remove("run_hash");
        // serde_json maps are BTree-backed, so this rendering is sorted
        let unhashed = serde_json::to_string(&value).expect("value serializes");
        let digest = Sha256::digest(unhashed.as_bytes());
        let hash: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        let obj = value.as_object_mut().expect("report is an object");
        obj.insert("run_hash".into(), serde_json::Value::String(hash));
        serde_json::to_string_pretty(&value).expect("value serializes")
    }
}

pub fn trace_strings(traces: &[Rational]) -> Vec<String> {
    traces.iter().map(rational_to_string).collect()
}
