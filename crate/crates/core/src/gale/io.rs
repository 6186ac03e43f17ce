//! JSON files for coordinate matrices and witnesses.
//!
//! ```json
//! {"rows": 2, "cols": 5, "cyclotomic_order": 8,
//!  "entries": [[1, 0, 1, 1, 1], [0, 1, 1, {"coeffs": [0, 1, 0, -1]}, {"coeffs": [0, -1, 0, 1]}]]}
//! ```
//!
//! An entry is a bare integer, `null` (zero), `{"exp": e}` for `zeta^e`,
//! `{"int": m}`, `{"rat": "a/b"}`, `{"zero": true}`, or `{"coeffs": [...]}`
//! listing rational coefficients of `1, zeta, zeta^2, ...`. A monomial
//! matrix may instead be given as `"exponents"`, a grid of integers with
//! `null` for zero.

use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{AssociationWitness, CoordMatrix};
use crate::error::{Error, Result};
use crate::residue::{CyclotomicField, CyclotomicNumber};

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
enum Rational {
    Int(i64),
    Text(String),
    Pair([i64; 2]),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Entry {
    Zero(()),
    Int(i64),
    Exp { exp: i64 },
    Integer { int: i64 },
    Rat { rat: Rational },
    Coeffs { coeffs: Vec<Rational> },
    Flag { zero: bool },
}

#[derive(Debug, Deserialize)]
struct MatrixFile {
    rows: Option<usize>,
    cols: Option<usize>,
    cyclotomic_order: usize,
    entries: Option<Vec<Vec<Entry>>>,
    exponents: Option<Vec<Vec<Option<i64>>>>,
}

#[derive(Debug, Deserialize)]
struct LambdaFile {
    cyclotomic_order: usize,
    lambda: Vec<Entry>,
}

fn parse_rational(r: &Rational) -> Result<BigRational> {
    match r {
        Rational::Int(m) => Ok(BigRational::from_integer((*m).into())),
        Rational::Pair([n, d]) if *d != 0 => Ok(BigRational::new((*n).into(), (*d).into())),
        Rational::Pair(_) => Err(Error::Parse("zero denominator".into())),
        Rational::Text(s) => {
            let (n, d) = s.split_once('/').unwrap_or((s, "1"));
            let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

fn entry_value(field: &Arc<CyclotomicField>, e: &Entry) -> Result<CyclotomicNumber> {
    Ok(match e {
        Entry::Zero(()) => field.zero(),
        Entry::Flag { zero: true } => field.zero(),
        Entry::Flag { zero: false } => return Err(Error::Parse("\"zero\" must be true".into())),
        Entry::Int(m) | Entry::Integer { int: m } => field.from_int(*m),
        Entry::Exp { exp } => field.zeta_pow(*exp),
        Entry::Rat { rat } => field.from_rational(parse_rational(rat)?),
        Entry::Coeffs { coeffs } => {
            // reduce through ring arithmetic so any length is accepted
            let mut acc = field.zero();
            for (i, c) in coeffs.iter().enumerate() {
                let c = parse_rational(c)?;
                if !c.is_zero() {
                    acc = &acc + &field.zeta_pow(i as i64).scale(&c);
                }
            }
            acc
        }
    })
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn matrix_from_json(text: &str) -> Result<CoordMatrix> {
    let file: MatrixFile = parse_json(text)?;
    let field = CyclotomicField::new(file.cyclotomic_order)?;
    let rows: Vec<Vec<CyclotomicNumber>> = match (&file.entries, &file.exponents) {
        (Some(grid), None) => grid
            .iter()
            .map(|r| r.iter().map(|e| entry_value(&field, e)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?,
        (None, Some(grid)) => grid
            .iter()
            .map(|r| r.iter().map(|e| e.map_or_else(|| field.zero(), |e| field.zeta_pow(e))).collect())
            .collect(),
        _ => return Err(Error::Parse("give exactly one of \"entries\" or \"exponents\"".into())),
    };
    if file.rows.is_some_and(|r| r != rows.len()) {
        return Err(Error::Parse("\"rows\" does not match the grid".into()));
    }
    if file.cols.is_some_and(|c| rows.iter().any(|r| r.len() != c)) {
        return Err(Error::Parse("\"cols\" does not match the grid".into()));
    }
    CoordMatrix::new(field, rows)
}

pub fn lambda_from_json(text: &str) -> Result<AssociationWitness> {
    let file: LambdaFile = parse_json(text)?;
    let field = CyclotomicField::new(file.cyclotomic_order)?;
    let lambda = file.lambda.iter().map(|e| entry_value(&field, e)).collect::<Result<Vec<_>>>()?;
    AssociationWitness::new(lambda)
}

fn rational_text(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn number_to_json(x: &CyclotomicNumber) -> Value {
    if x.is_zero() {
        return Value::Null;
    }
    if let Some(q) = x.as_rational() {
        if q.denom().is_one() {
            if let Ok(m) = i64::try_from(q.numer().clone()) {
                return json!(m);
            }
        }
        return json!({ "rat": rational_text(q) });
    }
    json!({ "coeffs": x.coeffs().iter().map(rational_text).collect::<Vec<_>>() })
}

/// Exponent grid when every entry is monomial, general entries otherwise.
pub fn matrix_to_json(m: &CoordMatrix) -> Value {
    let mut out = json!({ "rows": m.nrows(), "cols": m.ncols(), "cyclotomic_order": m.order() });
    match m.exponents() {
        Some(grid) if m.order() > 2 => out["exponents"] = json!(grid),
        _ => {
            let grid: Vec<Vec<Value>> = m.rows().iter().map(|r| r.iter().map(number_to_json).collect()).collect();
            out["entries"] = json!(grid);
        }
    }
    out
}

pub fn lambda_to_json(w: &AssociationWitness) -> Value {
    json!({
        "cyclotomic_order": w.lambda()[0].order(),
        "lambda": w.lambda().iter().map(number_to_json).collect::<Vec<_>>(),
    })
}
