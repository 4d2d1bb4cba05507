use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One disagreement between a closed form and the oracle (or, for property
/// sweeps, between the expected and the observed quantity).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub pi: String,
    pub sigma: Option<String>,
    /// `None` when the closed form raised an error.
    pub formula_value: Option<i64>,
    pub oracle_value: i64,
    pub case_label: Option<String>,
}

/// Outcome of a verification campaign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub campaign: String,
    pub parameters: BTreeMap<String, i64>,
    pub total_checked: u64,
    pub passed: u64,
    pub failed: u64,
    pub mismatches: Vec<Mismatch>,
    pub runtime_ms: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidParameter(format!("bad report JSON: {e}")))
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# campaign={} total={} passed={} failed={}\n",
            self.campaign, self.total_checked, self.passed, self.failed
        );
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["pi", "sigma", "formula_value", "oracle_value", "case_label"])
            .expect("in-memory write");
        for m in &self.mismatches {
            w.write_record([
                m.pi.clone(),
                m.sigma.clone().unwrap_or_default(),
                m.formula_value.map(|v| v.to_string()).unwrap_or_default(),
                m.oracle_value.to_string(),
                m.case_label.clone().unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
        let body = w.into_inner().expect("in-memory flush");
        out.push_str(&String::from_utf8(body).expect("utf-8"));
        out
    }

    pub fn to_text(&self) -> String {
        let params = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        let mut out = format!(
            "campaign: {}\nparameters: {}\nchecked: {}  passed: {}  failed: {}\nruntime: {} ms\n",
            self.campaign, params, self.total_checked, self.passed, self.failed, self.runtime_ms
        );
        for flag in &self.flags {
            out.push_str(&format!("note: {flag}\n"));
        }
        for m in &self.mismatches {
            out.push_str(&format!(
                "MISMATCH pi={} sigma={} formula={} oracle={} case={}\n",
                m.pi,
                m.sigma.as_deref().unwrap_or("-"),
                m.formula_value.map_or("error".to_string(), |v| v.to_string()),
                m.oracle_value,
                m.case_label.as_deref().unwrap_or("-"),
            ));
        }
        out.push_str(if self.all_passed() { "result: PASS\n" } else { "result: FAIL\n" });
        out
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => self.to_json() + "\n",
            ReportFormat::Csv => self.to_csv(),
            ReportFormat::Text => self.to_text(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    Json,
    Csv,
    #[default]
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            _ => Err(Error::InvalidParameter(format!("unknown format {s:?}"))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
            ReportFormat::Text => "text",
        })
    }
}
