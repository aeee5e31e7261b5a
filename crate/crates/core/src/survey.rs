//! Oracle-versus-prediction comparisons over ranges of uniform `(n, m)`.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::criteria::{leading_pair_criterion, uniform_criterion, Certificate};
use crate::error::Result;
use crate::model::{expected_alpha, predicted_resolution, MultiplicityVector};
use crate::oracle::{generic_betti, OracleSettings};

/// Column names of [`SurveyRow`], in serialization order.
pub const SURVEY_COLUMNS: [&str; 12] = [
    "n",
    "m",
    "expected_alpha",
    "h",
    "b",
    "c",
    "rule",
    "assumptions",
    "oracle_alpha",
    "oracle_betti",
    "match",
    "seeds",
];

/// One line of a survey. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub n: usize,
    pub m: u32,
    pub expected_alpha: u32,
    pub h: u64,
    pub b: u64,
    pub c: u64,
    /// Name of the first criterion that fired, or `unknown`.
    pub rule: String,
    /// Hypotheses of that criterion, `;`-separated.
    pub assumptions: String,
    pub oracle_alpha: u32,
    pub oracle_betti: String,
    /// The measured table equals the predicted shape degreewise.
    #[serde(rename = "match")]
    pub matches: bool,
    /// Seeds tried, space-separated.
    pub seeds: String,
}

/// Uniform criterion where it applies, else the leading-pair criterion.
pub fn best_certificate(m: &MultiplicityVector) -> Result<Certificate> {
    if m.len() > 9 && m.is_uniform() {
        let c = uniform_criterion(m.len(), m.first().unwrap_or(0))?;
        if c.is_rank_minimal() {
            return Ok(c);
        }
    }
    Ok(leading_pair_criterion(m))
}

pub fn survey_row(n: usize, m: u32, settings: &OracleSettings) -> Result<SurveyRow> {
    let v = MultiplicityVector::uniform(n, m)?;
    let shape = predicted_resolution(&v);
    let cert = best_certificate(&v)?;
    let measured = generic_betti(&v, settings)?;
    Ok(SurveyRow {
        n,
        m,
        expected_alpha: expected_alpha(&v),
        h: shape.h,
        b: shape.b,
        c: shape.c,
        rule: cert.rule.map_or("unknown".to_string(), |r| r.name().to_string()),
        assumptions: cert.assumptions.iter().map(ToString::to_string).collect::<Vec<_>>().join(";"),
        oracle_alpha: measured.table.alpha().unwrap_or(0),
        oracle_betti: measured.table.to_string(),
        matches: measured.table.matches(&shape),
        seeds: measured.seeds_used.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
    })
}

/// Rows for every `(n, m)`, `n` major. Rows are computed with
/// `settings.exec` but always returned in this order.
pub fn survey(
    ns: RangeInclusive<usize>,
    ms: RangeInclusive<u32>,
    settings: &OracleSettings,
) -> Result<Vec<SurveyRow>> {
    let pairs: Vec<(usize, u32)> = ns.flat_map(|n| ms.clone().map(move |m| (n, m))).collect();
    settings.exec.try_map(pairs, |(n, m)| survey_row(n, m, settings))
}
