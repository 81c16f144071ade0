use serde::{Deserialize, Serialize};

use crate::group::{Element, Side};
use crate::tuples::Sign;

/// Translate the ascending arrangement of `subset` by `b`; the result is an
/// arrangement of the next step's subset (the first step's subset after the
/// last step) with the stated parity (`0` even, `1` odd).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleStep {
    pub subset: Vec<Element>,
    pub side: Side,
    pub b: Element,
    pub parity: u8,
}

/// A closed walk of translations whose parities sum to odd: some class is
/// carried onto its opposite class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityCycle {
    pub steps: Vec<CycleStep>,
}

impl ParityCycle {
    pub fn total_parity(&self) -> u8 {
        self.steps.iter().fold(0, |acc, s| acc ^ (s.parity & 1))
    }
}

/// One subset of a translation component, with its bit relative to the
/// component's first subset (`0` same, `1` flipped).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentMember {
    pub subset: Vec<Element>,
    pub offset: u8,
}

/// A partial assignment of component signs under which `tuple` is a member
/// and no replacement of one coordinate by `t` is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub prefix: Vec<Sign>,
    pub tuple: Vec<Element>,
    pub t: Element,
}

/// Every parity-consistent assignment fails the replacement condition.
///
/// Component `0` is pinned to `+` (the other half follows by duality). The
/// prefixes of `refutations` form a complete prefix code over the remaining
/// components, so every full assignment extends exactly one of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplacementExhausted {
    pub component_count: usize,
    pub assignments_covered: u64,
    pub components: Vec<Vec<ComponentMember>>,
    pub refutations: Vec<Refutation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    ParityCycle(ParityCycle),
    ReplacementExhausted(ReplacementExhausted),
    /// Brute force: every assignment was verified and none passed.
    Exhaustive { assignments: u64 },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::ParityCycle(_) => "parity_cycle",
            Certificate::ReplacementExhausted(_) => "replacement_exhausted",
            Certificate::Exhaustive { .. } => "exhaustive",
        }
    }
}

/// On-disk form of a non-orderability certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub group: String,
    pub n: usize,
    pub certificate: Certificate,
}

impl CertificateFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_cycle_json_shape() {
        let file = CertificateFile {
            group: "Z4".into(),
            n: 4,
            certificate: Certificate::ParityCycle(ParityCycle {
                steps: vec![CycleStep { subset: vec![0, 1, 2, 3], side: Side::Left, b: 1, parity: 1 }],
            }),
        };
        let v: serde_json::Value = serde_json::from_str(&file.to_json()).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "group": "Z4",
                "n": 4,
                "certificate": {
                    "kind": "parity_cycle",
                    "steps": [{"subset": [0, 1, 2, 3], "side": "left", "b": 1, "parity": 1}]
                }
            })
        );
        let back: CertificateFile = serde_json::from_value(v).unwrap();
        assert_eq!(back, file);
    }
}
