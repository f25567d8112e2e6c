//! The JSON group-spec document read by the command-line tool and written
//! by the catalog.
//!
//! ```json
//! {
//!   "kind": "permutation",
//!   "degree": 3,
//!   "generators": [{"name": "s", "value": "(0,1)"}, {"name": "t", "value": "(1,2)"}],
//!   "elements": [{"name": "r", "word": "s t"}],
//!   "subgroups": [{"name": "U", "generators": ["(0,1)"]}],
//!   "polygon": {"edge_pairs": 1, "cycles": [{"label": "p", "word": "r^-1"}]}
//! }
//! ```
//!
//! Element values depend on `kind`: cycle notation strings for
//! `permutation`, `[[a, b], [c, d]]` for `matrix2` and `[u, v]` for
//! `semidirect`. Words are whitespace- or `*`-separated names, each with an
//! optional integer exponent such as `^-1`; the empty word is the identity.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, Family, FiniteGroup, Mat2, Perm, SemiPair};
use crate::covering::{CoveringError, PolygonSpec, VertexCycle};
use crate::gassmann::{GassmannError, Subgroup};

#[derive(Debug, Error)]
pub enum SpecFileError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("kind {kind} requires the {parameter:?} field")]
    MissingParameter {
        kind: &'static str,
        parameter: &'static str,
    },
    #[error("name {0:?} is defined more than once")]
    DuplicateName(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("bad value for {context}: {message}")]
    BadValue { context: String, message: String },
    #[error("bad word {word:?}: {message}")]
    BadWord { word: String, message: String },
    #[error("subgroup {name:?} must give exactly one of \"elements\" or \"generators\"")]
    SubgroupShape { name: String },
    #[error("element {element} of subgroup {subgroup:?} is not in the group")]
    NotInGroup { subgroup: String, element: String },
    #[error("subgroup {name:?}: {source}")]
    Subgroup { name: String, source: GassmannError },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Covering(#[from] CoveringError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Permutation,
    Matrix2,
    Semidirect,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedValue {
    pub name: String,
    pub value: Value,
}

/// A named element given either by a literal value or by a word.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedElement {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleEntry {
    pub label: String,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonEntry {
    pub edge_pairs: usize,
    pub cycles: Vec<CycleEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub kind: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u32>,
    pub generators: Vec<NamedValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<NamedElement>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subgroups: Vec<SubgroupEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polygon: Option<PolygonEntry>,
}

/// A spec file turned into a group with resolved names.
#[derive(Debug)]
pub struct LoadedSpec {
    pub group: FiniteGroup,
    /// Generators followed by the derived elements, in file order.
    pub names: Vec<(String, usize)>,
    pub generator_count: usize,
    pub subgroups: Vec<(String, Subgroup)>,
    pub polygon: Option<PolygonSpec>,
}

impl LoadedSpec {
    pub fn element(&self, name: &str) -> Result<usize, SpecFileError> {
        self.names
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, i)| i)
            .ok_or_else(|| SpecFileError::UnknownName(name.to_string()))
    }

    pub fn subgroup(&self, name: &str) -> Result<&Subgroup, SpecFileError> {
        self.subgroups
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
            .ok_or_else(|| SpecFileError::UnknownName(name.to_string()))
    }

    pub fn generator_labels(&self) -> &[(String, usize)] {
        &self.names[..self.generator_count]
    }
}

impl GroupSpecFile {
    pub fn from_json(text: &str) -> Result<GroupSpecFile, SpecFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec file serializes")
    }

    fn family(&self) -> Result<Family, SpecFileError> {
        Ok(match self.kind {
            GroupKind::Permutation => Family::Permutation {
                degree: self.degree.ok_or(SpecFileError::MissingParameter {
                    kind: "permutation",
                    parameter: "degree",
                })?,
            },
            GroupKind::Matrix2 => Family::Matrix2 {
                modulus: self.modulus.ok_or(SpecFileError::MissingParameter {
                    kind: "matrix2",
                    parameter: "modulus",
                })?,
            },
            GroupKind::Semidirect => Family::Semidirect {
                modulus: self.modulus.ok_or(SpecFileError::MissingParameter {
                    kind: "semidirect",
                    parameter: "modulus",
                })?,
            },
        })
    }

    /// Enumerates the group and resolves every name, subgroup and cycle.
    pub fn load(&self) -> Result<LoadedSpec, SpecFileError> {
        let family = self.family()?;
        let mut values: Vec<(String, Element)> = Vec::new();
        let mut seen: HashMap<String, Element> = HashMap::new();
        let mut define = |name: &str, e: Element, values: &mut Vec<(String, Element)>| {
            if seen.insert(name.to_string(), e.clone()).is_some() {
                return Err(SpecFileError::DuplicateName(name.to_string()));
            }
            values.push((name.to_string(), e));
            Ok(())
        };

        for g in &self.generators {
            let e = decode_value(family, &g.value, &g.name)?;
            define(&g.name, e, &mut values)?;
        }
        let generator_count = values.len();
        for named in &self.elements {
            let e = match (&named.word, &named.value) {
                (Some(word), None) => evaluate_word(family, word, &values)?,
                (None, Some(value)) => decode_value(family, value, &named.name)?,
                _ => {
                    return Err(SpecFileError::BadValue {
                        context: named.name.clone(),
                        message: "give exactly one of \"word\" or \"value\"".into(),
                    })
                }
            };
            define(&named.name, e, &mut values)?;
        }

        let gens: Vec<Element> = values[..generator_count]
            .iter()
            .map(|(_, e)| e.clone())
            .collect();
        let group = FiniteGroup::generate(&gens)?;
        let mut names = Vec::with_capacity(values.len());
        for (name, e) in &values {
            let index = group.index_of(e).ok_or_else(|| SpecFileError::BadValue {
                context: name.clone(),
                message: format!("{e} is not in the generated group"),
            })?;
            names.push((name.clone(), index));
        }

        let mut subgroups: Vec<(String, Subgroup)> = Vec::new();
        for entry in &self.subgroups {
            if subgroups.iter().any(|(n, _)| *n == entry.name) {
                return Err(SpecFileError::DuplicateName(entry.name.clone()));
            }
            let resolve = |list: &[Value]| -> Result<Vec<usize>, SpecFileError> {
                list.iter()
                    .map(|v| {
                        let e = decode_value(family, v, &entry.name)?;
                        group.index_of(&e).ok_or_else(|| SpecFileError::NotInGroup {
                            subgroup: entry.name.clone(),
                            element: e.to_string(),
                        })
                    })
                    .collect()
            };
            let sub = match (&entry.elements, &entry.generators) {
                (Some(elements), None) => Subgroup::from_elements(&group, &resolve(elements)?)
                    .map_err(|source| SpecFileError::Subgroup {
                        name: entry.name.clone(),
                        source,
                    })?,
                (None, Some(generators)) => Subgroup::generate(&group, &resolve(generators)?),
                _ => {
                    return Err(SpecFileError::SubgroupShape {
                        name: entry.name.clone(),
                    })
                }
            };
            subgroups.push((entry.name.clone(), sub));
        }

        let polygon = match &self.polygon {
            None => None,
            Some(p) => {
                let cycles = p
                    .cycles
                    .iter()
                    .map(|c| {
                        let e = evaluate_word(family, &c.word, &values)?;
                        Ok(VertexCycle {
                            label: c.label.clone(),
                            element: group.index_of(&e).expect("words stay in the group"),
                        })
                    })
                    .collect::<Result<Vec<_>, SpecFileError>>()?;
                Some(PolygonSpec::new(p.edge_pairs, cycles)?)
            }
        };

        Ok(LoadedSpec {
            group,
            names,
            generator_count,
            subgroups,
            polygon,
        })
    }
}

fn bad(context: &str, message: impl Into<String>) -> SpecFileError {
    SpecFileError::BadValue {
        context: context.to_string(),
        message: message.into(),
    }
}

fn as_int(v: &Value, context: &str) -> Result<i64, SpecFileError> {
    v.as_i64()
        .ok_or_else(|| bad(context, format!("expected an integer, got {v}")))
}

/// Decodes one element literal of the given family.
pub fn decode_value(
    family: Family,
    value: &Value,
    context: &str,
) -> Result<Element, SpecFileError> {
    match family {
        Family::Permutation { degree } => {
            let text = value
                .as_str()
                .ok_or_else(|| bad(context, "expected a cycle-notation string"))?;
            Ok(Perm::parse_cycles(text, degree)?.into())
        }
        Family::Matrix2 { modulus } => {
            let rows = value
                .as_array()
                .filter(|r| r.len() == 2)
                .ok_or_else(|| bad(context, "expected [[a, b], [c, d]]"))?;
            let mut m = [[0i64; 2]; 2];
            for (i, row) in rows.iter().enumerate() {
                let row = row
                    .as_array()
                    .filter(|r| r.len() == 2)
                    .ok_or_else(|| bad(context, "expected [[a, b], [c, d]]"))?;
                for (j, x) in row.iter().enumerate() {
                    m[i][j] = as_int(x, context)?;
                }
            }
            Ok(Mat2::new(modulus, m)?.into())
        }
        Family::Semidirect { modulus } => {
            let pair = value
                .as_array()
                .filter(|r| r.len() == 2)
                .ok_or_else(|| bad(context, "expected [u, v]"))?;
            Ok(SemiPair::new(
                modulus,
                as_int(&pair[0], context)?,
                as_int(&pair[1], context)?,
            )?
            .into())
        }
    }
}

/// Inverse of [`decode_value`].
pub fn encode_value(element: &Element) -> Value {
    match element {
        Element::Perm(p) => Value::String(p.to_string()),
        Element::Mat2(m) => serde_json::json!(m.rows()),
        Element::Semi(s) => serde_json::json!([s.unit(), s.translation()]),
    }
}

/// Evaluates a word such as `a b^-1 c^2` against previously defined names.
pub fn evaluate_word(
    family: Family,
    word: &str,
    names: &[(String, Element)],
) -> Result<Element, SpecFileError> {
    let bad_word = |message: String| SpecFileError::BadWord {
        word: word.to_string(),
        message,
    };
    let mut acc = Element::identity_of(family);
    for token in word
        .split(|c: char| c.is_whitespace() || c == '*')
        .filter(|t| !t.is_empty())
    {
        let (name, exponent) = match token.split_once('^') {
            Some((name, exp)) => {
                let exp: i64 = exp
                    .parse()
                    .map_err(|_| bad_word(format!("bad exponent in {token:?}")))?;
                (name, exp)
            }
            None => (token, 1),
        };
        let base = names
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e)
            .ok_or_else(|| bad_word(format!("unknown name {name:?}")))?;
        let base = if exponent < 0 {
            base.inverse()
        } else {
            base.clone()
        };
        for _ in 0..exponent.unsigned_abs() {
            acc = acc.compose(&base)?;
        }
    }
    Ok(acc)
}
