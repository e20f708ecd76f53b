//! Versioned JSON report envelope emitted by the command-line tools.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::Element;

/// Schema tag carried by every report.
pub const SCHEMA: &str = "omega3rb/1";

/// Instance counters of a sweep or enumeration.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Counts {
    pub checked: u64,
    pub skipped: u64,
    pub failed: u64,
}

/// One failing triple with its residual, printed canonically.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub triple: [i64; 3],
    pub residual: String,
}

impl WitnessJson {
    pub fn new(triple: [i64; 3], residual: &Element) -> Self {
        Self {
            triple,
            residual: residual.to_string(),
        }
    }
}

/// The report envelope: schema, tool identity, configuration echo,
/// counters, capped witnesses, and approximation notes.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool: &'static str,
    pub version: &'static str,
    pub status: String,
    pub config: BTreeMap<String, String>,
    pub window: [i64; 2],
    pub counts: Counts,
    pub witnesses: Vec<WitnessJson>,
    pub approximation_notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra: Option<serde_json::Value>,
}

impl Report {
    pub fn new(status: impl Into<String>, window: [i64; 2]) -> Self {
        Self {
            schema: SCHEMA,
            tool: "omega3rb",
            version: env!("CARGO_PKG_VERSION"),
            status: status.into(),
            config: BTreeMap::new(),
            window,
            counts: Counts::default(),
            witnesses: Vec::new(),
            approximation_notes: Vec::new(),
            extra: None,
        }
    }

    pub fn with_config(mut self, key: &str, value: impl Into<String>) -> Self {
        self.config.insert(key.to_string(), value.into());
        self
    }

    /// Pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn envelope_shape() {
        let mut r = Report::new("pass", [-4, 4]).with_config("k", "0");
        r.counts.checked = 3;
        r.witnesses
            .push(WitnessJson::new([0, 1, 2], &Element::term(2, int(-24))));
        let json = r.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema"], "omega3rb/1");
        assert_eq!(v["tool"], "omega3rb");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["config"]["k"], "0");
        assert_eq!(v["counts"]["checked"], 3);
        assert_eq!(v["witnesses"][0]["residual"], "-24*L_2");
        assert!(v.get("extra").is_none());
    }
}
