//! Serializable output records. The JSON field set and the CSV column order
//! are a frozen interface (documented in docs/FORMATS.md); counts travel as
//! decimal strings so arbitrary-precision values survive serialization, and
//! every record parses back to an equal value.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinatorics::Count;
use crate::edge_census::{edge_census, EdgeCensus};
use crate::error::Result;
use crate::indices::{indices_direct, Alpha, IndexReport};
use crate::mpolynomial::{m_polynomial, LiteralReport, MPolynomial};
use crate::occupancy::HanoiParams;
use crate::oracle::VerificationReport;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub i: u64,
    pub j: u64,
    pub count: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialSection {
    pub terms: Vec<TermRecord>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassCount {
    pub mu: u32,
    pub count: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeCensusSection {
    pub total: String,
    pub a1: String,
    pub a2: String,
    pub e1: String,
    pub e2: String,
    pub e3: String,
    pub cross: Vec<ClassCount>,
    pub within: Vec<ClassCount>,
    pub single_move: Vec<ClassCount>,
}

/// An exact rational as "num/den" (or a plain integer) next to its
/// round-half-even rendering to 2 decimals. `exact` is absent for values
/// that only exist in binary64.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactDecimal {
    pub exact: Option<String>,
    pub decimal: String,
}

impl ExactDecimal {
    fn of_scalar(s: &Scalar) -> Self {
        ExactDecimal {
            exact: s.as_exact().map(|q| q.to_string()),
            decimal: s.decimal2(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaValue {
    pub alpha: String,
    pub exact: Option<String>,
    pub decimal: String,
    /// Binary64 view of the value regardless of exactness.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexSection {
    pub m1: String,
    pub m2: String,
    pub f: String,
    pub mm2: ExactDecimal,
    pub ssd: ExactDecimal,
    pub h: ExactDecimal,
    pub isi: ExactDecimal,
    pub a: ExactDecimal,
    pub r_alpha: Vec<AlphaValue>,
    pub rr_alpha: Vec<AlphaValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationSection {
    pub passed: bool,
    pub states: u64,
    pub checks: Vec<CheckRecord>,
}

/// One computed instance. `mode` is "canonical" here; the diagnostics
/// command emits [`DiagnosticsRecord`] with mode "paper-diagnostic".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub p: u32,
    pub n: u32,
    pub mode: String,
    pub polynomial: PolynomialSection,
    pub edge_census: EdgeCensusSection,
    pub indices: IndexSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticEntry {
    pub family: String,
    pub i: u64,
    pub j: u64,
    pub literal: String,
    pub canonical: String,
    pub diverges: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompactTopRecord {
    pub claimed: String,
    pub canonical: String,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub p: u32,
    pub n: u32,
    pub mode: String,
    pub entries: Vec<DiagnosticEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compact_top: Option<CompactTopRecord>,
    pub literal_total: String,
    pub canonical_total: String,
}

fn class_counts(map: &BTreeMap<u32, Count>) -> Vec<ClassCount> {
    map.iter()
        .map(|(&mu, count)| ClassCount {
            mu,
            count: count.to_string(),
        })
        .collect()
}

fn alpha_values(map: &BTreeMap<Alpha, Scalar>) -> Vec<AlphaValue> {
    map.iter()
        .map(|(alpha, value)| AlphaValue {
            alpha: alpha.to_string(),
            exact: value.as_exact().map(|q| q.to_string()),
            decimal: value.decimal2(),
            value: value.to_f64(),
        })
        .collect()
}

pub fn polynomial_section(poly: &MPolynomial) -> PolynomialSection {
    PolynomialSection {
        terms: poly
            .terms()
            .iter()
            .map(|(&(i, j), count)| TermRecord {
                i,
                j,
                count: count.to_string(),
            })
            .collect(),
        text: poly.to_string(),
    }
}

pub fn edge_census_section(census: &EdgeCensus) -> EdgeCensusSection {
    EdgeCensusSection {
        total: census.total.to_string(),
        a1: census.a1.to_string(),
        a2: census.a2.to_string(),
        e1: census.e1.to_string(),
        e2: census.e2.to_string(),
        e3: census.e3.to_string(),
        cross: class_counts(&census.cross),
        within: class_counts(&census.within),
        single_move: class_counts(&census.e1_class),
    }
}

pub fn index_section(report: &IndexReport) -> IndexSection {
    IndexSection {
        m1: report.m1.to_string(),
        m2: report.m2.to_string(),
        f: report.f.to_string(),
        mm2: ExactDecimal::of_scalar(&Scalar::Exact(report.mm2.clone())),
        ssd: ExactDecimal::of_scalar(&Scalar::Exact(report.ssd.clone())),
        h: ExactDecimal::of_scalar(&Scalar::Exact(report.h.clone())),
        isi: ExactDecimal::of_scalar(&Scalar::Exact(report.isi.clone())),
        a: ExactDecimal::of_scalar(&Scalar::Exact(report.a.clone())),
        r_alpha: alpha_values(&report.r_alpha),
        rr_alpha: alpha_values(&report.rr_alpha),
    }
}

pub fn verification_section(report: &VerificationReport) -> VerificationSection {
    VerificationSection {
        passed: report.passed(),
        states: report.states_enumerated,
        checks: report
            .checks
            .iter()
            .map(|c| CheckRecord {
                name: c.name.to_string(),
                expected: c.expected.clone(),
                actual: c.actual.clone(),
                ok: c.ok(),
            })
            .collect(),
    }
}

pub fn build_output_record(
    params: &HanoiParams,
    alphas: &[Alpha],
    verification: Option<&VerificationReport>,
) -> Result<OutputRecord> {
    let poly = m_polynomial(params)?;
    let census = edge_census(params)?;
    let report = indices_direct(&poly, alphas);
    Ok(OutputRecord {
        p: params.p(),
        n: params.n(),
        mode: "canonical".into(),
        polynomial: polynomial_section(&poly),
        edge_census: edge_census_section(&census),
        indices: index_section(&report),
        verification: verification.map(verification_section),
    })
}

pub fn diagnostics_record(report: &LiteralReport) -> DiagnosticsRecord {
    DiagnosticsRecord {
        p: report.p,
        n: report.n,
        mode: "paper-diagnostic".into(),
        entries: report
            .entries
            .iter()
            .map(|e| DiagnosticEntry {
                family: e.family.label(),
                i: e.key.0,
                j: e.key.1,
                literal: e.literal.to_string(),
                canonical: e.canonical.to_string(),
                diverges: e.diverges,
            })
            .collect(),
        compact_top: report.compact_top.as_ref().map(|c| CompactTopRecord {
            claimed: c.claimed.to_string(),
            canonical: c.canonical.to_string(),
            matches: c.matches,
        }),
        literal_total: report.literal_total.to_string(),
        canonical_total: report.canonical_total.to_string(),
    }
}
