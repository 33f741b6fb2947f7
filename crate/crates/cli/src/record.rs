//! Machine-readable result records, shared by the JSON and CSV emitters.

use std::fmt;

use semiq_core::AperyTable;
use serde::{Deserialize, Serialize};

/// Which computation path produced a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// A family formula, including the two-generator one.
    ClosedForm,
    /// The reduction of a structured quotient to min-coins problems.
    MinCoins,
    /// Apéry-table scan; covers any generators and any dividing p.
    Generic,
    /// Bitmap sieve, deliberately naive.
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::MinCoins => "min-coins",
            Method::Generic => "generic",
            Method::Oracle => "oracle",
        })
    }
}

/// An Apéry table flattened for serialization: entry `r` is the least
/// member of residue class `r` modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AperyListing {
    pub modulus: u64,
    pub entries: Vec<u64>,
}

impl From<&AperyTable> for AperyListing {
    fn from(table: &AperyTable) -> Self {
        AperyListing {
            modulus: table.modulus(),
            entries: table.entries().to_vec(),
        }
    }
}

/// One computed result. `genus` is absent exactly when the odd-step closed
/// form answered (it pins down no genus); `apery` appears on request and
/// `verified` only under `--verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// Echo of the canonicalized input: a generator list or a family.
    pub input: String,
    pub p: u64,
    pub method: Method,
    pub frobenius: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apery: Option<AperyListing>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

/// Result of one min-coins query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObRecord {
    pub parts: Vec<u64>,
    pub target: u64,
    /// Least number of parts, absent when the target is unreachable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u64>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_tags_are_kebab_case() {
        for (method, tag) in [
            (Method::ClosedForm, "\"closed-form\""),
            (Method::MinCoins, "\"min-coins\""),
            (Method::Generic, "\"generic\""),
            (Method::Oracle, "\"oracle\""),
        ] {
            assert_eq!(serde_json::to_string(&method).unwrap(), tag);
            assert_eq!(format!("\"{method}\""), tag);
        }
    }

    #[test]
    fn sparse_record_omits_empty_fields() {
        let record = OutputRecord {
            input: "3,5".into(),
            p: 1,
            method: Method::Generic,
            frobenius: 7,
            genus: Some(4),
            apery: None,
            verified: None,
        };
        let json = serde_json::to_string(&record).unwrap();
        assert!(!json.contains("apery"));
        assert!(!json.contains("verified"));
        assert_eq!(serde_json::from_str::<OutputRecord>(&json).unwrap(), record);
    }
}
