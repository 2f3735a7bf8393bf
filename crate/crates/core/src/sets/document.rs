use serde::{Deserialize, Serialize};

use crate::numeric::Rational;

use super::{CountableEnumeration, IntervalUnion, SetDescription, SetError};

/// Wire form of a [`SetDescription`]:
///
/// ```json
/// {"type":"cantor"}
/// {"type":"intervals","items":[["0","1/3"],["2/3","1"]]}
/// {"type":"enumeration","name":"farey"}
/// {"type":"finite","points":["1/2","1/3"]}
/// {"type":"union","of":[{"type":"cantor"},{"type":"finite","points":["1/2"]}]}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SetDocument {
    Cantor,
    Intervals {
        items: Vec<(Rational, Rational)>,
    },
    Enumeration {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        points: Option<Vec<Rational>>,
    },
    Finite {
        points: Vec<Rational>,
    },
    Union {
        of: Vec<SetDocument>,
    },
}

impl TryFrom<SetDocument> for SetDescription {
    type Error = SetError;

    fn try_from(doc: SetDocument) -> Result<Self, SetError> {
        Ok(match doc {
            SetDocument::Cantor => SetDescription::Cantor,
            SetDocument::Intervals { items } => SetDescription::Intervals(IntervalUnion::new(items)?),
            SetDocument::Finite { points } => SetDescription::Finite(IntervalUnion::points(points)?),
            SetDocument::Enumeration { name, points } => {
                let enumeration = match (name.as_str(), points) {
                    ("farey", None) => CountableEnumeration::Farey,
                    ("dyadic", None) => CountableEnumeration::Dyadic,
                    ("explicit", Some(points)) => CountableEnumeration::explicit(points)?,
                    (other, _) => {
                        return Err(SetError::Document(format!(
                            "unknown enumeration {other:?} (expected farey, dyadic, or explicit with points)"
                        )))
                    }
                };
                SetDescription::Countable(enumeration)
            }
            SetDocument::Union { of } => {
                SetDescription::Union(of.into_iter().map(SetDescription::try_from).collect::<Result<_, _>>()?)
            }
        })
    }
}

impl From<SetDescription> for SetDocument {
    fn from(set: SetDescription) -> Self {
        match set {
            SetDescription::Cantor => SetDocument::Cantor,
            SetDescription::Intervals(u) => SetDocument::Intervals {
                items: u.components().iter().map(|c| (c.lo.clone(), c.hi.clone())).collect(),
            },
            SetDescription::Finite(u) => SetDocument::Finite {
                points: u.components().iter().map(|c| c.lo.clone()).collect(),
            },
            SetDescription::Countable(e) => {
                let name = e.name().to_string();
                let points = match e {
                    CountableEnumeration::Explicit(points) => Some(points),
                    _ => None,
                };
                SetDocument::Enumeration { name, points }
            }
            SetDescription::Union(parts) => SetDocument::Union {
                of: parts.into_iter().map(SetDocument::from).collect(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_forms_parse() {
        let cases = [
            (r#"{"type":"cantor"}"#, r#"{"type":"cantor"}"#),
            (
                r#"{"type":"intervals","items":[["0","1/3"],["2/3","1"]]}"#,
                r#"{"type":"intervals","items":[["0","1/3"],["2/3","1"]]}"#,
            ),
            (r#"{"type":"enumeration","name":"farey"}"#, r#"{"type":"enumeration","name":"farey"}"#),
            (r#"{"type":"finite","points":["1/2","1/3"]}"#, r#"{"type":"finite","points":["1/3","1/2"]}"#),
            (
                r#"{"type":"union","of":[{"type":"cantor"},{"type":"finite","points":["2/4"]}]}"#,
                r#"{"type":"union","of":[{"type":"cantor"},{"type":"finite","points":["1/2"]}]}"#,
            ),
            (
                r#"{"type":"enumeration","name":"explicit","points":["1/7","1/7"]}"#,
                r#"{"type":"enumeration","name":"explicit","points":["1/7","1/7"]}"#,
            ),
        ];
        for (input, canonical) in cases {
            let set: SetDescription = serde_json::from_str(input).unwrap();
            assert_eq!(set.to_json(), canonical);
        }
    }

    #[test]
    fn bad_documents_are_rejected() {
        for bad in [
            r#"{"type":"intervals","items":[["1/2","1/3"]]}"#,
            r#"{"type":"intervals","items":[["0","2"]]}"#,
            r#"{"type":"enumeration","name":"primes"}"#,
            r#"{"type":"finite","points":["x"]}"#,
            r#"{"type":"enumeration","name":"explicit"}"#,
        ] {
            assert!(serde_json::from_str::<SetDescription>(bad).is_err(), "{bad}");
        }
    }
}
