//! JSON reports shared by the command-line tools.
//!
//! ```text
//! {version, command, group, inputs{name: hex}, certificate{verdict, method, witness?, detail},
//!  result?, timing_ms?, seed?}
//! ```
//!
//! Sets are hex masks as produced by [`GroupSet::to_hex`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::certificate::{DecisionCertificate, Method, Verdict};
use crate::complement::verify_minimal_complement;
use crate::error::{Error, Result};
use crate::literal::{parse_group, parse_set};
use crate::set::GroupSet;
use crate::supplement::is_maximal_supplement_for;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub verdict: Verdict,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub detail: String,
}

impl From<&DecisionCertificate> for CertificateJson {
    fn from(cert: &DecisionCertificate) -> Self {
        CertificateJson {
            verdict: cert.verdict,
            method: cert.method,
            witness: cert.witness.as_ref().map(GroupSet::to_hex),
            detail: cert.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub command: String,
    pub group: String,
    pub inputs: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Report {
    pub fn new(command: &str, group: &crate::group::Group) -> Self {
        Report {
            version: REPORT_VERSION,
            command: command.to_string(),
            group: group.spec(),
            inputs: BTreeMap::new(),
            certificate: None,
            result: None,
            timing_ms: None,
            seed: None,
        }
    }

    pub fn input(mut self, name: &str, set: &GroupSet) -> Self {
        self.inputs.insert(name.to_string(), set.to_hex());
        self
    }

    pub fn certificate(mut self, cert: &DecisionCertificate) -> Self {
        self.certificate = Some(cert.into());
        self
    }

    pub fn result(mut self, value: Value) -> Self {
        self.result = Some(value);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            position: e.column(),
            message: e.to_string(),
        })
    }

    /// Re-checks a `yes` witness against input `c` from the parsed report.
    /// Supplement reports are checked as maximal supplements, the rest as
    /// minimal complements. Reports without a witness pass trivially.
    pub fn reverify(&self) -> Result<()> {
        let Some(witness) = self.certificate.as_ref().and_then(|c| c.witness.as_ref()) else {
            return Ok(());
        };
        let group = parse_group(&self.group)?;
        let c = self
            .inputs
            .get("c")
            .ok_or_else(|| Error::Config("report has no input c".into()))?;
        let c = parse_set(&group, c)?;
        let w = parse_set(&group, witness)?;
        if self.command == "supplement" {
            if is_maximal_supplement_for(&w, &c)? {
                Ok(())
            } else {
                Err(Error::VerificationFailed(format!(
                    "{c} is not a maximal supplement for {w}"
                )))
            }
        } else {
            verify_minimal_complement(&w, &c)
        }
    }
}
