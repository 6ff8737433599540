//! Space files.
//!
//! ```json
//! {"points": ["a", "b", "c"], "le": [["a", "b"], ["b", "c"]]}
//! {"points": ["a", "b"], "opens": [[], ["b"], ["a", "b"]]}
//! ```
//!
//! `["a", "b"]` in `le` means `a ≤ b` in the specialization order, so every
//! open set containing `a` contains `b` (open sets are up-sets). Any relation
//! whose reflexive-transitive closure is a partial order is accepted,
//! including the cover relation. Exactly one of `le` and `opens` is present.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pointset::{PointSet, MAX_POINTS};
use crate::space::{FiniteSpace, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub le: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("exactly one of \"le\" and \"opens\" must be given")]
    Relation,
    #[error("line {line}: duplicate point name {name:?}")]
    DuplicateName { name: String, line: usize },
    #[error("line {line}: unknown point {name:?}")]
    UnknownPoint { name: String, line: usize },
    #[error("{count} points exceeds the cap of {cap}")]
    TooLarge { count: usize, cap: usize },
    #[error("points {a:?} and {b:?} are each below the other, so the space is not T0")]
    Cycle { a: String, b: String },
    #[error("invalid space: {0}")]
    Space(SpaceError),
}

/// A space together with the names of its points.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedSpace {
    pub names: Vec<String>,
    pub space: FiniteSpace,
}

/// Line of the first quoted occurrence of `name`, searching from `from`.
fn line_of(text: &str, name: &str, from: usize) -> usize {
    let quoted = serde_json::to_string(name).unwrap_or_default();
    let start = from.min(text.len());
    let at = text[start..]
        .find(&quoted)
        .map(|k| start + k)
        .unwrap_or(start);
    text[..at].matches('\n').count() + 1
}

impl NamedSpace {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let doc: SpaceDoc = serde_json::from_str(text).map_err(|e| FormatError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::from_doc_in(&doc, text)
    }

    pub fn from_doc(doc: &SpaceDoc) -> Result<Self, FormatError> {
        Self::from_doc_in(doc, "")
    }

    fn from_doc_in(doc: &SpaceDoc, text: &str) -> Result<Self, FormatError> {
        let n = doc.points.len();
        if n > MAX_POINTS {
            return Err(FormatError::TooLarge {
                count: n,
                cap: MAX_POINTS,
            });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in doc.points.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                let quoted = serde_json::to_string(name).unwrap_or_default();
                let second = text.find(&quoted).map_or(0, |k| k + 1);
                return Err(FormatError::DuplicateName {
                    name: name.clone(),
                    line: line_of(text, name, second),
                });
            }
        }
        let relation_start = text
            .find("\"le\"")
            .or_else(|| text.find("\"opens\""))
            .unwrap_or(0);
        let lookup = |name: &String| {
            index.get(name.as_str()).copied().ok_or_else(|| FormatError::UnknownPoint {
                name: name.clone(),
                line: line_of(text, name, relation_start),
            })
        };
        let space = match (&doc.le, &doc.opens) {
            (Some(le), None) => {
                let pairs = le
                    .iter()
                    .map(|[a, b]| Ok((lookup(a)?, lookup(b)?)))
                    .collect::<Result<Vec<_>, FormatError>>()?;
                FiniteSpace::from_order(n, &pairs).map_err(|e| match e {
                    SpaceError::Cycle { a, b } => FormatError::Cycle {
                        a: doc.points[a].clone(),
                        b: doc.points[b].clone(),
                    },
                    other => FormatError::Space(other),
                })?
            }
            (None, Some(opens)) => {
                let sets = opens
                    .iter()
                    .map(|u| u.iter().map(lookup).collect::<Result<PointSet, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                FiniteSpace::from_opens(n, &sets).map_err(FormatError::Space)?
            }
            _ => return Err(FormatError::Relation),
        };
        Ok(NamedSpace {
            names: doc.points.clone(),
            space,
        })
    }

    /// Points named `0`, `1`, ...
    pub fn numbered(space: FiniteSpace) -> Self {
        NamedSpace {
            names: (0..space.len()).map(|i| i.to_string()).collect(),
            space,
        }
    }

    /// The document listing the cover relation.
    pub fn to_doc(&self) -> SpaceDoc {
        SpaceDoc {
            points: self.names.clone(),
            le: Some(
                self.space
                    .cover_pairs()
                    .into_iter()
                    .map(|(a, b)| [self.names[a].clone(), self.names[b].clone()])
                    .collect(),
            ),
            opens: None,
        }
    }

    pub fn names_of(&self, s: PointSet) -> Vec<String> {
        s.iter().map(|x| self.names[x].clone()).collect()
    }

    /// Parses a comma-separated list of point names, e.g. `a,c`. Blank input
    /// is the empty set.
    pub fn parse_set(&self, list: &str) -> Result<PointSet, FormatError> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| {
                self.names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| FormatError::UnknownPoint {
                        name: name.to_string(),
                        line: 1,
                    })
            })
            .collect()
    }
}

/// Document for `space` with points named by index.
pub fn space_doc(space: &FiniteSpace) -> SpaceDoc {
    NamedSpace::numbered(space.clone()).to_doc()
}
