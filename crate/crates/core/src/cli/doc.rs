//! Input documents. JSON, with a mandatory `"version": 1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::repring::{Character, GroupSpec, IndexData, RepError};
use crate::topology::{ManifoldSpec, SurfaceClass, TopologyError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("schema error: {0}")]
    Schema(String),
}

impl From<RepError> for DocError {
    fn from(e: RepError) -> Self {
        DocError::Schema(e.to_string())
    }
}

impl From<TopologyError> for DocError {
    fn from(e: TopologyError) -> Self {
        DocError::Schema(e.to_string())
    }
}

/// A surface class in a closed 4-manifold, for `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundDoc {
    pub version: u32,
    pub manifold: ManifoldSpec,
    pub class: Vec<i64>,
    pub p: u32,
    /// Genus at which to report the cover's index constraints.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterMult {
    pub character: Vec<i64>,
    pub mult: i64,
}

/// Multiplicities, either positional (`i = 1..2^p` for a cyclic group) or
/// keyed by character exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Mults {
    Indexed(Vec<i64>),
    ByCharacter(Vec<CharacterMult>),
}

/// Index data `(s, t)` over a group, for `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexDoc {
    pub version: u32,
    pub group: GroupSpec,
    pub s: Mults,
    pub t: Mults,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_cutoff: Option<u32>,
}

/// A ring expression over a group, for `ring --input`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDoc {
    pub version: u32,
    pub group: GroupSpec,
    pub expression: String,
}

fn check_version(v: u32) -> Result<(), DocError> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(DocError::Schema(format!("unsupported version {v}, expected {SCHEMA_VERSION}")))
    }
}

pub fn parse_bound_doc(src: &str) -> Result<BoundDoc, DocError> {
    let doc: BoundDoc = serde_json::from_str(src)?;
    check_version(doc.version)?;
    doc.manifold.validate()?;
    doc.surface_class().square(&doc.manifold.form)?;
    Ok(doc)
}

pub fn parse_index_doc(src: &str) -> Result<IndexDoc, DocError> {
    let doc: IndexDoc = serde_json::from_str(src)?;
    check_version(doc.version)?;
    doc.group.validate()?;
    Ok(doc)
}

pub fn parse_ring_doc(src: &str) -> Result<RingDoc, DocError> {
    let doc: RingDoc = serde_json::from_str(src)?;
    check_version(doc.version)?;
    doc.group.validate()?;
    Ok(doc)
}

impl BoundDoc {
    pub fn surface_class(&self) -> SurfaceClass {
        SurfaceClass::new(self.class.clone())
    }
}

fn keyed(group: &GroupSpec, list: &[CharacterMult]) -> Result<BTreeMap<Character, i64>, DocError> {
    let mut out = BTreeMap::new();
    for cm in list {
        let chi = group.character(&cm.character)?;
        *out.entry(chi).or_insert(0) += cm.mult;
    }
    Ok(out)
}

impl IndexDoc {
    pub fn index_data(&self) -> Result<IndexData, DocError> {
        let idx = match (&self.s, &self.t) {
            (Mults::Indexed(s), Mults::Indexed(t)) => {
                let p = self.group.cyclic_exponent().ok_or_else(|| {
                    DocError::Schema(format!("positional s and t need a cyclic group, got {}", self.group))
                })?;
                match self.group {
                    GroupSpec::Odd { .. } => IndexData::odd(p, s, t)?,
                    GroupSpec::Even { .. } => IndexData::cyclic_even(p, s, t)?,
                }
            }
            (Mults::ByCharacter(s), Mults::ByCharacter(t)) => {
                IndexData::new(self.group.clone(), keyed(&self.group, s)?, keyed(&self.group, t)?)?
            }
            _ => return Err(DocError::Schema("s and t must use the same form".into())),
        };
        Ok(idx)
    }
}
