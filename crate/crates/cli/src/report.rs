//! JSON certificate reports.

use serde::{Deserialize, Serialize};

use nuobdd::bounds::certificate::WidthCertificate;
use nuobdd::bounds::hierarchy::{HierarchyReport, HierarchyRow};

pub const FORMAT: &str = "nuobdd-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub function: String,
    pub model: String,
    pub bound: String,
    pub value: usize,
    pub evidence_kind: String,
    pub evidence: String,
    pub verified: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl From<&WidthCertificate> for CertificateRecord {
    fn from(c: &WidthCertificate) -> Self {
        CertificateRecord {
            function: c.function.clone(),
            model: c.model.to_string(),
            bound: c.kind.to_string(),
            value: c.value,
            evidence_kind: c.evidence.kind().into(),
            evidence: c.evidence.summary(),
            verified: c.verified.to_string(),
            note: c.note.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowRecord {
    pub d: usize,
    pub function: String,
    pub upper: CertificateRecord,
    pub lower: Vec<CertificateRecord>,
    pub separates: bool,
}

impl From<&HierarchyRow> for RowRecord {
    fn from(r: &HierarchyRow) -> Self {
        RowRecord {
            d: r.d,
            function: r.function.clone(),
            upper: (&r.upper).into(),
            lower: r.lowers.iter().map(Into::into).collect(),
            separates: r.separates(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub format: String,
    pub command: String,
    pub certificates: Vec<CertificateRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<RowRecord>,
}

impl ReportFile {
    pub fn from_certificates(command: &str, certs: &[WidthCertificate]) -> ReportFile {
        ReportFile {
            format: FORMAT.into(),
            command: command.into(),
            certificates: certs.iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn from_hierarchy(command: &str, h: &HierarchyReport) -> ReportFile {
        ReportFile {
            format: FORMAT.into(),
            command: command.into(),
            certificates: h.incomparability.iter().map(Into::into).collect(),
            rows: h.rows.iter().map(Into::into).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
