//! JSON forms of vectors, subspaces, states, operators, test functions and
//! certificates. Scalars are written as exact strings: `"p/q"` for
//! rationals, separate real and imaginary strings inside vectors.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{
    format_gaussian, format_rational, gauss, parse_gaussian, parse_rational, GaussianRational,
    Rational,
};
use crate::error::{Error, Result};
use crate::hilbert::SparseVector;
use crate::lattice::{Certificate, FiniteSubspace};
use crate::spectral::{BoundedOperator, OperatorKind, PLFunction};
use crate::states::{State, StateShape};

type Vector = SparseVector<GaussianRational>;

/// `serde(with = ...)` adapter writing a rational as its exact string.
pub mod serde_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::arith::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::parse(format!("{what}: {e}")))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorJson {
    entries: Vec<(usize, String, String)>,
}

pub fn vector_to_json(x: &Vector) -> Value {
    to_value(&VectorJson {
        entries: x
            .entries()
            .map(|(i, z)| (i, format_rational(&z.re), format_rational(&z.im)))
            .collect(),
    })
}

pub fn vector_from_json(v: &Value) -> Result<Vector> {
    let raw: VectorJson = from_value(v, "vector")?;
    let mut seen = std::collections::BTreeSet::new();
    let mut items = Vec::with_capacity(raw.entries.len());
    for (i, re, im) in raw.entries {
        if !seen.insert(i) {
            return Err(Error::parse(format!("index {i} repeated")));
        }
        items.push((i, gauss(parse_rational(&re)?, parse_rational(&im)?)));
    }
    Ok(Vector::from_entries(items))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubspaceJson {
    generators: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tail_bound: Option<String>,
}

pub fn subspace_to_json(l: &FiniteSubspace<GaussianRational>) -> Value {
    to_value(&SubspaceJson {
        generators: l.generators().iter().map(vector_to_json).collect(),
        tail_bound: None,
    })
}

/// A listed generator set is finite, so a `tail_bound`, when present, must
/// be 0.
pub fn subspace_from_json(v: &Value) -> Result<FiniteSubspace<GaussianRational>> {
    let raw: SubspaceJson = from_value(v, "subspace")?;
    if let Some(t) = raw.tail_bound {
        let t = parse_rational(&t)?;
        if t != Rational::from_integer(0.into()) {
            return Err(Error::domain("a finite generator list has tail bound 0"));
        }
    }
    let gens = raw
        .generators
        .iter()
        .map(vector_from_json)
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteSubspace::new(gens))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateJson {
    c: Value,
    r: String,
}

pub fn certificate_to_json(cert: &Certificate) -> Value {
    to_value(&CertificateJson {
        c: vector_to_json(&cert.c),
        r: format_rational(&cert.r),
    })
}

pub fn certificate_from_json(v: &Value) -> Result<Certificate> {
    let raw: CertificateJson = from_value(v, "certificate")?;
    Certificate::new(vector_from_json(&raw.c)?, parse_rational(&raw.r)?)
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum TailJson {
    Finite,
    Geometric { ratio: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateJson {
    terms: Vec<(String, Value)>,
    tail: TailJson,
}

/// Writes finite and geometric states; oracle states have no JSON form.
pub fn state_to_json(s: &State) -> Result<Value> {
    let raw = match s.shape() {
        StateShape::Finite(terms) => StateJson {
            terms: terms
                .iter()
                .map(|(w, b)| (format_rational(w), vector_to_json(b)))
                .collect(),
            tail: TailJson::Finite,
        },
        StateShape::Geometric { ratio, prefix } => StateJson {
            terms: prefix
                .iter()
                .enumerate()
                .map(|(k, b)| {
                    let (w, _) = s.term(k).expect("geometric states are infinite");
                    (format_rational(&w), vector_to_json(b))
                })
                .collect(),
            tail: TailJson::Geometric {
                ratio: format_rational(ratio),
            },
        },
        StateShape::Oracle => {
            return Err(Error::domain("state given by an oracle has no JSON form"));
        }
    };
    Ok(to_value(&raw))
}

/// For a geometric tail the listed terms are the first vectors and their
/// weights must be `(1 - ratio) ratio^k`.
pub fn state_from_json(v: &Value) -> Result<State> {
    let raw: StateJson = from_value(v, "state")?;
    let terms = raw
        .terms
        .iter()
        .map(|(w, b)| Ok((parse_rational(w)?, vector_from_json(b)?)))
        .collect::<Result<Vec<_>>>()?;
    match raw.tail {
        TailJson::Finite => State::finite(terms),
        TailJson::Geometric { ratio } => {
            let ratio = parse_rational(&ratio)?;
            let prefix: Vec<Vector> = terms.iter().map(|(_, b)| b.clone()).collect();
            let s = State::geometric(ratio, prefix)?;
            for (k, (w, _)) in terms.iter().enumerate() {
                let (expected, _) = s.term(k).expect("geometric states are infinite");
                if &expected != w {
                    return Err(Error::domain(format!(
                        "term {k} has weight {w}, geometric tail requires {expected}"
                    )));
                }
            }
            Ok(s)
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum OperatorJson {
    Diagonal {
        entries: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rest: Option<String>,
    },
    Finite {
        entries: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rest: Option<String>,
    },
    /// Listed entries `[i, j, z]` of a band-`band` operator, zero elsewhere.
    Banded {
        band: usize,
        entries: Vec<(usize, usize, String)>,
    },
    Shift {
        direction: String,
        power: usize,
    },
}

pub fn operator_to_json(a: &BoundedOperator) -> Result<Value> {
    let opt = |r: &Rational| {
        if r == &Rational::from_integer(0.into()) {
            None
        } else {
            Some(format_rational(r))
        }
    };
    let raw = match a.kind() {
        OperatorKind::Diagonal { eigs, rest } => OperatorJson::Diagonal {
            entries: eigs.iter().map(format_rational).collect(),
            rest: opt(rest),
        },
        OperatorKind::Finite { matrix, rest } => OperatorJson::Finite {
            entries: matrix
                .iter()
                .map(|row| row.iter().map(format_gaussian).collect())
                .collect(),
            rest: opt(rest),
        },
        OperatorKind::Shift { right, power } => OperatorJson::Shift {
            direction: if *right { "right" } else { "left" }.to_string(),
            power: *power,
        },
        OperatorKind::Banded { .. } => {
            return Err(Error::domain("banded oracle operators have no JSON form"));
        }
    };
    Ok(to_value(&raw))
}

pub fn operator_from_json(v: &Value) -> Result<BoundedOperator> {
    let raw: OperatorJson = from_value(v, "operator")?;
    let rest = |r: Option<String>| -> Result<Rational> {
        r.map_or(Ok(Rational::from_integer(0.into())), |t| parse_rational(&t))
    };
    match raw {
        OperatorJson::Diagonal { entries, rest: r } => {
            let eigs = entries
                .iter()
                .map(|t| parse_rational(t))
                .collect::<Result<Vec<_>>>()?;
            BoundedOperator::diagonal_with_rest(eigs, rest(r)?)
        }
        OperatorJson::Finite { entries, rest: r } => {
            let matrix = entries
                .iter()
                .map(|row| row.iter().map(|z| parse_gaussian(z)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            BoundedOperator::finite(matrix, rest(r)?)
        }
        OperatorJson::Banded { band, entries } => {
            let n = entries.iter().map(|(i, j, _)| i.max(j) + 1).max().unwrap_or(0);
            let zero = gauss(Rational::from_integer(0.into()), Rational::from_integer(0.into()));
            let mut matrix: Vec<Vec<GaussianRational>> = vec![vec![zero; n]; n];
            for (i, j, z) in entries {
                if i.abs_diff(j) > band {
                    return Err(Error::domain(format!("entry ({i}, {j}) outside band {band}")));
                }
                matrix[i][j] = parse_gaussian(&z)?;
            }
            BoundedOperator::finite(matrix, Rational::from_integer(0.into()))
        }
        OperatorJson::Shift { direction, power } => match direction.as_str() {
            "right" => Ok(BoundedOperator::right_shift(power)),
            "left" => Ok(BoundedOperator::left_shift(power)),
            other => Err(Error::parse(format!("unknown shift direction {other:?}"))),
        },
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PLJson {
    breakpoints: Vec<(String, String)>,
}

pub fn pl_to_json(f: &PLFunction) -> Value {
    to_value(&PLJson {
        breakpoints: f
            .breakpoints()
            .iter()
            .map(|(t, v)| (format_rational(t), format_rational(v)))
            .collect(),
    })
}

pub fn pl_from_json(v: &Value) -> Result<PLFunction> {
    let raw: PLJson = from_value(v, "function")?;
    let points = raw
        .breakpoints
        .iter()
        .map(|(t, v)| Ok((parse_rational(t)?, parse_rational(v)?)))
        .collect::<Result<Vec<_>>>()?;
    PLFunction::new(points)
}
