//! Built-in example arrangements.
//!
//! * `generic(n, l)` — `l` hyperplanes in general position, realized by
//!   Vandermonde normals `(1, t, t^2, ..., t^n)` at the distinct rational
//!   nodes `t = 0, 1, ..., l-1`; any `n+1` of them are independent, so every
//!   codimension-`c` flat lies on exactly `c` hyperplanes. Deterministic on
//!   purpose so result tables are reproducible.
//! * `coordinate(n)` — the `n+1` coordinate hyperplanes `z_i = 0`.
//! * `braid(n)` — the hyperplanes `z_i = z_j` of C^{n+2} restricted to the
//!   subspace `z_0 + ... + z_{n+1} = 0`, written in the explicit rational
//!   basis `b_k = e_k - e_{n+1}`; this realizes the A-type reflection
//!   arrangement essentially in CP^n with `(n+1)(n+2)/2` hyperplanes.
//! * `figure1a`..`figure1d` — four concrete line configurations in CP^2
//!   with incidence data `(l, k)` = (4,3), (5,3), (5,4), (6,4), where `k`
//!   is the maximal number of concurrent lines.

use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::rational::rat;
use crate::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NamedError {
    #[error("unknown example {0:?} (see `examples` for the catalog)")]
    UnknownName(String),
    #[error("example {name}: parameter {param} is required")]
    MissingParam {
        name: &'static str,
        param: &'static str,
    },
    #[error("example {name}: parameter {param} = {value} out of range ({reason})")]
    BadParam {
        name: &'static str,
        param: &'static str,
        value: i64,
        reason: &'static str,
    },
    #[error("example {name} takes no {param} parameter")]
    UnexpectedParam {
        name: &'static str,
        param: &'static str,
    },
}

/// Catalog entry for the `examples` listing.
pub struct BuiltinInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub description: &'static str,
    /// Fixed `(n, l, k)` incidence data for the parameterless examples.
    pub incidence: Option<(usize, usize, usize)>,
}

pub fn catalog() -> Vec<BuiltinInfo> {
    vec![
        BuiltinInfo {
            name: "generic",
            params: "--n N --l L",
            description: "L hyperplanes in general position in CP^N (Vandermonde normals)",
            incidence: None,
        },
        BuiltinInfo {
            name: "coordinate",
            params: "--n N",
            description: "the N+1 coordinate hyperplanes of CP^N",
            incidence: None,
        },
        BuiltinInfo {
            name: "braid",
            params: "--n N",
            description: "A-type reflection arrangement in CP^N, (N+1)(N+2)/2 hyperplanes",
            incidence: None,
        },
        BuiltinInfo {
            name: "figure1a",
            params: "",
            description: "four lines, one triple point",
            incidence: Some((2, 4, 3)),
        },
        BuiltinInfo {
            name: "figure1b",
            params: "",
            description: "five lines, triple points only",
            incidence: Some((2, 5, 3)),
        },
        BuiltinInfo {
            name: "figure1c",
            params: "",
            description: "five lines, one quadruple point",
            incidence: Some((2, 5, 4)),
        },
        BuiltinInfo {
            name: "figure1d",
            params: "",
            description: "six lines, one quadruple point",
            incidence: Some((2, 6, 4)),
        },
    ]
}

fn require(name: &'static str, param: &'static str, v: Option<i64>) -> Result<i64, NamedError> {
    v.ok_or(NamedError::MissingParam { name, param })
}

fn positive(
    name: &'static str,
    param: &'static str,
    value: i64,
    min: i64,
    reason: &'static str,
) -> Result<usize, NamedError> {
    if value < min {
        return Err(NamedError::BadParam {
            name,
            param,
            value,
            reason,
        });
    }
    Ok(value as usize)
}

/// Build a named arrangement. `n` and `l` are consumed per the catalog;
/// supplying them to a parameterless example is an error.
pub fn generate(name: &str, n: Option<i64>, l: Option<i64>) -> Result<Arrangement, NamedError> {
    match name {
        "generic" => {
            let n = positive(
                "generic",
                "n",
                require("generic", "n", n)?,
                1,
                "need n >= 1",
            )?;
            let l = positive(
                "generic",
                "l",
                require("generic", "l", l)?,
                1,
                "need l >= 1",
            )?;
            Ok(generic(n, l))
        }
        "coordinate" => {
            let n = positive(
                "coordinate",
                "n",
                require("coordinate", "n", n)?,
                1,
                "need n >= 1",
            )?;
            reject_param("coordinate", "l", l)?;
            Ok(coordinate(n))
        }
        "braid" => {
            let n = positive("braid", "n", require("braid", "n", n)?, 1, "need n >= 1")?;
            reject_param("braid", "l", l)?;
            Ok(braid(n))
        }
        "figure1a" | "figure1b" | "figure1c" | "figure1d" => {
            let fixed: &'static str = match name {
                "figure1a" => "figure1a",
                "figure1b" => "figure1b",
                "figure1c" => "figure1c",
                _ => "figure1d",
            };
            reject_param(fixed, "n", n)?;
            reject_param(fixed, "l", l)?;
            Ok(match name {
                "figure1a" => figure1a(),
                "figure1b" => figure1b(),
                "figure1c" => figure1c(),
                _ => figure1d(),
            })
        }
        other => Err(NamedError::UnknownName(other.to_string())),
    }
}

fn reject_param(name: &'static str, param: &'static str, v: Option<i64>) -> Result<(), NamedError> {
    match v {
        Some(_) => Err(NamedError::UnexpectedParam { name, param }),
        None => Ok(()),
    }
}

fn build(n: usize, normals: Vec<Vec<Rat>>) -> Arrangement {
    Arrangement::new(n, normals.into_iter().map(|v| (v, rat(1, 1))).collect())
        .expect("built-in arrangements are valid")
}

/// `l` hyperplanes in general position via Vandermonde normals.
pub fn generic(n: usize, l: usize) -> Arrangement {
    let normals = (0..l as i64)
        .map(|t| {
            let mut row = Vec::with_capacity(n + 1);
            let mut p = rat(1, 1);
            for _ in 0..=n {
                row.push(p.clone());
                p *= rat(t, 1);
            }
            row
        })
        .collect();
    build(n, normals)
}

/// The coordinate hyperplanes `z_i = 0`.
pub fn coordinate(n: usize) -> Arrangement {
    let normals = (0..=n)
        .map(|i| {
            let mut row = vec![rat(0, 1); n + 1];
            row[i] = rat(1, 1);
            row
        })
        .collect();
    build(n, normals)
}

/// The A-type reflection arrangement restricted to the zero-sum subspace.
///
/// In the basis `b_k = e_k - e_{n+1}` of `{sum z_i = 0}`, the hyperplane
/// `z_i = z_j` pulls back to the covector `e_i - e_j` for `j <= n` and to
/// `e_i + (1, ..., 1)` for `j = n+1`.
pub fn braid(n: usize) -> Arrangement {
    let mut normals = Vec::new();
    for i in 0..=n {
        for j in (i + 1)..=n {
            let mut row = vec![rat(0, 1); n + 1];
            row[i] = rat(1, 1);
            row[j] = rat(-1, 1);
            normals.push(row);
        }
    }
    for i in 0..=n {
        let mut row = vec![rat(1, 1); n + 1];
        row[i] = rat(2, 1);
        normals.push(row);
    }
    build(n, normals)
}

// The figure-1 lines in the affine chart x = z1/z0, y = z2/z0; the line
// a x + b y + c = 0 lifts to the covector (c, a, b). Concurrent lines are
// listed first so certificate vectors read off in input order.
fn line(c: i64, a: i64, b: i64) -> Vec<Rat> {
    vec![rat(c, 1), rat(a, 1), rat(b, 1)]
}

const LINE_A: (i64, i64, i64) = (0, 3, -2); //  3x - 2y = 0
const LINE_B: (i64, i64, i64) = (-9, 3, 2); //  3x + 2y = 9
const LINE_C: (i64, i64, i64) = (-1, 0, 2); //  y = 1/2
const LINE_D: (i64, i64, i64) = (-3, 2, 0); //  x = 3/2
const LINE_E: (i64, i64, i64) = (1, 3, -4); //  3x - 4y + 1 = 0
const LINE_F: (i64, i64, i64) = (-9, 9, -2); // 9x - 2y = 9
const LINE_G: (i64, i64, i64) = (-18, 9, 2); // 9x + 2y = 18

fn lines(cfg: &[(i64, i64, i64)]) -> Arrangement {
    build(2, cfg.iter().map(|&(c, a, b)| line(c, a, b)).collect())
}

/// Four lines, three of them concurrent: `(l, k) = (4, 3)`.
pub fn figure1a() -> Arrangement {
    lines(&[LINE_A, LINE_B, LINE_D, LINE_C])
}

/// Five lines with triple points only: `(l, k) = (5, 3)`.
pub fn figure1b() -> Arrangement {
    lines(&[LINE_A, LINE_B, LINE_D, LINE_C, LINE_E])
}

/// Five lines, four of them concurrent: `(l, k) = (5, 4)`.
pub fn figure1c() -> Arrangement {
    lines(&[LINE_A, LINE_B, LINE_F, LINE_G, LINE_C])
}

/// Six lines, four of them concurrent: `(l, k) = (6, 4)`.
pub fn figure1d() -> Arrangement {
    lines(&[LINE_A, LINE_B, LINE_F, LINE_G, LINE_C, LINE_E])
}
