//! Canonical JSON form of a scheme.
//!
//! Keys appear in alphabetical order; `phi` is keyed by the root's
//! coefficient array written without spaces, e.g. `"[1,2]"`. `labels` is
//! present only when the system's nodes carry labels other than `1..=rank`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use super::{ParabolicScheme, PhiError, Prime};
use crate::rootsys::{NodeSet, Root, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<usize>>,
    pub levi: Vec<usize>,
    pub phi: BTreeMap<String, u32>,
    pub prime: u32,
    #[serde(rename = "type")]
    pub kind: String,
}

impl From<&ParabolicScheme> for SchemeRepr {
    fn from(p: &ParabolicScheme) -> Self {
        let rs = p.root_system();
        SchemeRepr {
            labels: (!rs.has_default_labels()).then(|| rs.labels().to_vec()),
            levi: p.levi().iter().map(|i| i + 1).collect(),
            phi: p.finite_values().into_iter().map(|(g, h)| (g.to_string(), h)).collect(),
            prime: p.prime().get(),
            kind: rs.name(),
        }
    }
}

impl TryFrom<SchemeRepr> for ParabolicScheme {
    type Error = PhiError;

    fn try_from(r: SchemeRepr) -> Result<Self, PhiError> {
        let mut rs = RootSystem::parse(&r.kind)?;
        if let Some(labels) = r.labels {
            if labels.len() != rs.rank() {
                return Err(PhiError::Malformed(format!("expected {} labels, got {}", rs.rank(), labels.len())));
            }
            rs = rs.with_labels(labels);
        }
        let p = Prime::new(r.prime)?;
        let mut levi = NodeSet::empty();
        for &i in &r.levi {
            if i == 0 || i > rs.rank() {
                return Err(PhiError::InvalidLevi(i));
            }
            levi = levi.with(i - 1);
        }
        let mut values = BTreeMap::new();
        for (key, h) in r.phi {
            let coeffs: Vec<i32> =
                serde_json::from_str(&key).map_err(|e| PhiError::Malformed(format!("bad root key {key:?}: {e}")))?;
            if coeffs.len() != rs.rank() {
                return Err(PhiError::Malformed(format!("root key {key:?} has the wrong length")));
            }
            values.insert(Root::new(coeffs), h);
        }
        ParabolicScheme::new(Arc::new(rs), p, levi, &values)
    }
}

impl Serialize for ParabolicScheme {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SchemeRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParabolicScheme {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = SchemeRepr::deserialize(d)?;
        ParabolicScheme::try_from(repr).map_err(serde::de::Error::custom)
    }
}

impl ParabolicScheme {
    /// Compact canonical JSON.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("scheme serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, PhiError> {
        let repr: SchemeRepr = serde_json::from_str(s).map_err(|e| PhiError::Malformed(e.to_string()))?;
        ParabolicScheme::try_from(repr)
    }
}

/// First 16 hex digits of the SHA-256 of the canonical JSON.
pub fn phi_hash(p: &ParabolicScheme) -> String {
    let digest = Sha256::digest(p.to_canonical_json().as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}
