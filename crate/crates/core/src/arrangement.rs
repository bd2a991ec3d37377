//! Validated hyperplane arrangements in CP^n over the rationals.
//!
//! A hyperplane is the kernel of a nonzero rational covector on C^{n+1};
//! normals are stored canonically scaled (first nonzero entry equal to one)
//! so equality of hyperplanes is decidable by coordinate comparison. Each
//! hyperplane carries a positive multiplicity, the coefficient of the
//! component in the effective divisor; multiplicities only enter the
//! normalization step in [`crate::invariants`], never the incidence
//! geometry.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rational, parse_rational};
use crate::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("hyperplane {index}: malformed rational {text:?}: {reason}")]
    MalformedRational {
        index: usize,
        text: String,
        reason: &'static str,
    },
    #[error("hyperplane {index}: zero normal vector")]
    ZeroNormal { index: usize },
    #[error("hyperplane {index}: normal has {got} entries, expected n+1 = {expected}")]
    WrongNormalLength {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("hyperplanes {first} and {second} coincide after canonical scaling")]
    DuplicateHyperplane { first: usize, second: usize },
    #[error("hyperplane {index}: multiplicity must be positive, got {value}")]
    NonPositiveMultiplicity { index: usize, value: String },
    #[error("ambient dimension must satisfy n >= 1, got {n}")]
    BadDimension { n: i64 },
    #[error("arrangement must contain at least one hyperplane")]
    EmptyHyperplanes,
    #[error("invalid JSON document: {0}")]
    Json(String),
}

/// One hyperplane `ker a` with its effective-divisor coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    /// Canonically scaled normal covector (first nonzero entry is one).
    pub normal: Vec<Rat>,
    /// Positive divisor multiplicity, defaulting to one.
    pub multiplicity: Rat,
}

impl Hyperplane {
    /// Scale so the first nonzero entry is one; errors on the zero covector.
    pub fn new(normal: Vec<Rat>, multiplicity: Rat) -> Result<Self, &'static str> {
        let lead = normal
            .iter()
            .position(|x| !x.is_zero())
            .ok_or("zero normal")?;
        let inv = Rat::one() / normal[lead].clone();
        let normal = normal.into_iter().map(|x| x * inv.clone()).collect();
        Ok(Hyperplane {
            normal,
            multiplicity,
        })
    }
}

/// An ordered list of pairwise distinct hyperplanes in CP^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    /// Ambient projective dimension n (normals live in Q^{n+1}).
    pub n: usize,
    pub hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    /// Validate dimensions, nonzero canonical normals, pairwise distinctness
    /// and positive multiplicities.
    pub fn new(n: usize, raw: Vec<(Vec<Rat>, Rat)>) -> Result<Arrangement, ArrangementError> {
        if n < 1 {
            return Err(ArrangementError::BadDimension { n: n as i64 });
        }
        if raw.is_empty() {
            return Err(ArrangementError::EmptyHyperplanes);
        }
        let mut hyperplanes: Vec<Hyperplane> = Vec::with_capacity(raw.len());
        for (index, (normal, multiplicity)) in raw.into_iter().enumerate() {
            if normal.len() != n + 1 {
                return Err(ArrangementError::WrongNormalLength {
                    index,
                    expected: n + 1,
                    got: normal.len(),
                });
            }
            if !multiplicity.is_positive() {
                return Err(ArrangementError::NonPositiveMultiplicity {
                    index,
                    value: format_rational(&multiplicity),
                });
            }
            let h = Hyperplane::new(normal, multiplicity)
                .map_err(|_| ArrangementError::ZeroNormal { index })?;
            if let Some(first) = hyperplanes.iter().position(|g| g.normal == h.normal) {
                return Err(ArrangementError::DuplicateHyperplane {
                    first,
                    second: index,
                });
            }
            hyperplanes.push(h);
        }
        Ok(Arrangement { n, hyperplanes })
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn multiplicities(&self) -> Vec<Rat> {
        self.hyperplanes
            .iter()
            .map(|h| h.multiplicity.clone())
            .collect()
    }

    /// Replace all multiplicities; the vector length must match.
    pub fn with_multiplicities(mut self, d: Vec<Rat>) -> Result<Self, ArrangementError> {
        assert_eq!(d.len(), self.len(), "multiplicity vector length mismatch");
        for (index, v) in d.iter().enumerate() {
            if !v.is_positive() {
                return Err(ArrangementError::NonPositiveMultiplicity {
                    index,
                    value: format_rational(v),
                });
            }
        }
        for (h, v) in self.hyperplanes.iter_mut().zip(d) {
            h.multiplicity = v;
        }
        Ok(self)
    }

    /// JSON document under the published input schema.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "hyperplanes": self
                .hyperplanes
                .iter()
                .map(|h| {
                    serde_json::json!({
                        "normal": h.normal.iter().map(format_rational).collect::<Vec<_>>(),
                        "multiplicity": format_rational(&h.multiplicity),
                    })
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report is valid JSON")
    }
}

#[derive(Deserialize, Serialize)]
struct RawHyperplane {
    normal: Vec<String>,
    #[serde(default)]
    multiplicity: Option<String>,
}

#[derive(Deserialize, Serialize)]
struct RawArrangement {
    n: i64,
    hyperplanes: Vec<RawHyperplane>,
}

/// Parse and validate an arrangement from its JSON document.
///
/// Input schema:
/// `{ "n": int, "hyperplanes": [ { "normal": ["p/q", ...],
///   "multiplicity": "p/q" (optional, default "1") } ] }`.
pub fn parse_arrangement(text: &str) -> Result<Arrangement, ArrangementError> {
    let raw: RawArrangement =
        serde_json::from_str(text).map_err(|e| ArrangementError::Json(e.to_string()))?;
    if raw.n < 1 {
        return Err(ArrangementError::BadDimension { n: raw.n });
    }
    let n = raw.n as usize;
    let mut rows = Vec::with_capacity(raw.hyperplanes.len());
    for (index, h) in raw.hyperplanes.into_iter().enumerate() {
        let mut normal = Vec::with_capacity(h.normal.len());
        for entry in &h.normal {
            let v = parse_rational(entry).map_err(|e| ArrangementError::MalformedRational {
                index,
                text: e.text,
                reason: e.reason,
            })?;
            normal.push(v);
        }
        let multiplicity = match h.multiplicity {
            None => Rat::one(),
            Some(m) => parse_rational(&m).map_err(|e| ArrangementError::MalformedRational {
                index,
                text: e.text,
                reason: e.reason,
            })?,
        };
        rows.push((normal, multiplicity));
    }
    Arrangement::new(n, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn parses_coordinate_arrangement() {
        let text = r#"{"n":2,"hyperplanes":[
            {"normal":["1","0","0"]},
            {"normal":["0","1","0"]},
            {"normal":["0","0","1"]}]}"#;
        let arr = parse_arrangement(text).unwrap();
        assert_eq!(arr.n, 2);
        assert_eq!(arr.len(), 3);
        assert_eq!(arr.hyperplanes[0].multiplicity, rat(1, 1));
    }

    #[test]
    fn rejects_proportional_normals() {
        let text = r#"{"n":2,"hyperplanes":[
            {"normal":["2","0","0"]},
            {"normal":["1","0","0"]}]}"#;
        assert_eq!(
            parse_arrangement(text).unwrap_err(),
            ArrangementError::DuplicateHyperplane {
                first: 0,
                second: 1
            }
        );
    }

    #[test]
    fn rejects_zero_normal() {
        let text = r#"{"n":1,"hyperplanes":[{"normal":["0","0"]}]}"#;
        assert_eq!(
            parse_arrangement(text).unwrap_err(),
            ArrangementError::ZeroNormal { index: 0 }
        );
    }

    #[test]
    fn rejects_bad_rational_with_index() {
        let text = r#"{"n":1,"hyperplanes":[{"normal":["1","1/0"]}]}"#;
        match parse_arrangement(text).unwrap_err() {
            ArrangementError::MalformedRational { index, text, .. } => {
                assert_eq!(index, 0);
                assert_eq!(text, "1/0");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_empty_and_bad_dimension() {
        assert_eq!(
            parse_arrangement(r#"{"n":0,"hyperplanes":[{"normal":["1"]}]}"#).unwrap_err(),
            ArrangementError::BadDimension { n: 0 }
        );
        assert_eq!(
            parse_arrangement(r#"{"n":2,"hyperplanes":[]}"#).unwrap_err(),
            ArrangementError::EmptyHyperplanes
        );
    }

    #[test]
    fn json_round_trip_is_exact() {
        let text = r#"{"n":2,"hyperplanes":[
            {"normal":["2","4","0"],"multiplicity":"3/2"},
            {"normal":["0","1","1"]}]}"#;
        let arr = parse_arrangement(text).unwrap();
        let again = parse_arrangement(&arr.to_json_string()).unwrap();
        assert_eq!(arr, again);
        // canonical scaling reduced the first normal
        assert_eq!(
            arr.hyperplanes[0].normal,
            vec![rat(1, 1), rat(2, 1), rat(0, 1)]
        );
    }
}
