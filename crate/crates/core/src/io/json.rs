//! JSON codecs for the exact types.
//!
//! Rationals are strings `"p/q"` (or `"p"`). A cyclotomic number is a
//! rational string when it is rational, else
//! `{"conductor": n, "coeffs": [[k, "p/q"], ...]}` meaning the sum of
//! coefficient times zeta_n^k. Matrices are arrays of rows, permutations
//! arrays of images. Decoding errors carry a JSON pointer.

use serde_json::{json, Value};

use crate::algebra::{parse_rational, rational_to_string, Cyclotomic, Rational};
use crate::chartable::{conjugacy_classes, Character, CharacterTable};
use crate::group::{parse_group_spec, FiniteGroup, GPermutation, GroupSpec};
use crate::oracle::{rep_from_generators, RationalRepresentation};
use crate::RationalMatrix;

pub const SCHEMA: &str = "orbitsym/1";

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
#[error("schema error at {pointer:?}: {message}")]
pub struct SchemaError {
    /// RFC 6901 pointer to the offending value; empty for the root.
    pub pointer: String,
    pub message: String,
}

impl SchemaError {
    pub fn new(pointer: &str, message: impl Into<String>) -> Self {
        SchemaError { pointer: pointer.to_string(), message: message.into() }
    }
}

/// Append a reference token, escaping per RFC 6901.
pub fn child(pointer: &str, key: impl ToString) -> String {
    format!("{pointer}/{}", key.to_string().replace('~', "~0").replace('/', "~1"))
}

pub fn field<'a>(v: &'a Value, pointer: &str, key: &str) -> Result<&'a Value, SchemaError> {
    let obj = v.as_object().ok_or_else(|| SchemaError::new(pointer, "expected an object"))?;
    obj.get(key).ok_or_else(|| SchemaError::new(&child(pointer, key), "missing field"))
}

pub fn as_array<'a>(v: &'a Value, pointer: &str) -> Result<&'a Vec<Value>, SchemaError> {
    v.as_array().ok_or_else(|| SchemaError::new(pointer, "expected an array"))
}

pub fn as_str<'a>(v: &'a Value, pointer: &str) -> Result<&'a str, SchemaError> {
    v.as_str().ok_or_else(|| SchemaError::new(pointer, "expected a string"))
}

pub fn as_usize(v: &Value, pointer: &str) -> Result<usize, SchemaError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| SchemaError::new(pointer, "expected a non-negative integer"))
}

/// Require `"schema": "orbitsym/1"` on a top-level document.
pub fn check_schema(v: &Value) -> Result<(), SchemaError> {
    match as_str(field(v, "", "schema")?, "/schema")? {
        SCHEMA => Ok(()),
        other => Err(SchemaError::new("/schema", format!("unsupported schema {other:?}, expected {SCHEMA:?}"))),
    }
}

pub fn encode_rational(r: &Rational) -> Value {
    Value::String(rational_to_string(r))
}

/// Accepts strings and JSON integers.
pub fn decode_rational(v: &Value, pointer: &str) -> Result<Rational, SchemaError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| SchemaError::new(pointer, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(SchemaError::new(pointer, "expected a rational string \"p/q\" or an integer")),
    }
}

pub fn encode_cyclotomic(c: &Cyclotomic) -> Value {
    if let Some(r) = c.is_rational() {
        return encode_rational(&r);
    }
    let terms: Vec<Value> =
        c.terms().filter(|(_, a)| !num_traits::Zero::is_zero(*a)).map(|(k, a)| json!([k, encode_rational(a)])).collect();
    json!({"conductor": c.conductor(), "coeffs": terms})
}

pub fn decode_cyclotomic(v: &Value, pointer: &str) -> Result<Cyclotomic, SchemaError> {
    if !v.is_object() {
        return decode_rational(v, pointer).map(Cyclotomic::from_rational);
    }
    let n = as_usize(field(v, pointer, "conductor")?, &child(pointer, "conductor"))? as u64;
    if n == 0 {
        return Err(SchemaError::new(&child(pointer, "conductor"), "conductor must be positive"));
    }
    let tp = child(pointer, "coeffs");
    let mut terms = Vec::new();
    for (i, t) in as_array(field(v, pointer, "coeffs")?, &tp)?.iter().enumerate() {
        let p = child(&tp, i);
        let pair = as_array(t, &p)?;
        if pair.len() != 2 {
            return Err(SchemaError::new(&p, "expected [exponent, coefficient]"));
        }
        let k = pair[0].as_i64().ok_or_else(|| SchemaError::new(&child(&p, 0), "expected an integer exponent"))?;
        terms.push((k, decode_rational(&pair[1], &child(&p, 1))?));
    }
    Ok(Cyclotomic::from_terms(n, terms))
}

pub fn encode_matrix(m: &RationalMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(encode_rational).collect())).collect())
}

pub fn decode_matrix(v: &Value, pointer: &str) -> Result<RationalMatrix, SchemaError> {
    let mut rows = Vec::new();
    for (i, r) in as_array(v, pointer)?.iter().enumerate() {
        let p = child(pointer, i);
        let row: Result<Vec<Rational>, _> =
            as_array(r, &p)?.iter().enumerate().map(|(j, x)| decode_rational(x, &child(&p, j))).collect();
        rows.push(row?);
    }
    if rows.is_empty() {
        return Err(SchemaError::new(pointer, "empty matrix"));
    }
    RationalMatrix::from_rows(rows).map_err(|e| SchemaError::new(pointer, e.to_string()))
}

pub fn encode_permutation(p: &GPermutation) -> Value {
    json!(p.images())
}

pub fn decode_permutation(v: &Value, pointer: &str) -> Result<GPermutation, SchemaError> {
    let images: Result<Vec<usize>, _> =
        as_array(v, pointer)?.iter().enumerate().map(|(i, x)| as_usize(x, &child(pointer, i))).collect();
    GPermutation::from_images(images?).map_err(|e| SchemaError::new(pointer, e.to_string()))
}

pub fn decode_group(v: &Value, pointer: &str) -> Result<(GroupSpec, FiniteGroup), SchemaError> {
    let text = as_str(v, pointer)?;
    let spec = parse_group_spec(text).map_err(|e| SchemaError::new(pointer, e.to_string()))?;
    let g = spec.build().map_err(|e| SchemaError::new(pointer, e.to_string()))?;
    Ok((spec, g))
}

/// Values on the conjugacy classes, in the table's class order.
pub fn encode_character(chi: &Character) -> Value {
    Value::Array(chi.values().iter().map(encode_cyclotomic).collect())
}

pub fn decode_character(v: &Value, pointer: &str) -> Result<Character, SchemaError> {
    let vals: Result<Vec<Cyclotomic>, _> =
        as_array(v, pointer)?.iter().enumerate().map(|(i, x)| decode_cyclotomic(x, &child(pointer, i))).collect();
    Ok(Character::new(vals?))
}

pub fn encode_table(t: &CharacterTable) -> Value {
    let c = t.classes();
    let g = t.group();
    let orders: Vec<usize> = c.representatives.iter().map(|&r| g.element_order(r)).collect();
    json!({
        "schema": SCHEMA,
        "group": g.label(),
        "order": g.order(),
        "classes": {"reps": c.representatives, "sizes": c.sizes, "element_orders": orders},
        "irreducibles": t.irreducibles().iter().map(encode_character).collect::<Vec<_>>(),
        "fs": t.fs_indicators(),
    })
}

/// Rebuilds the group from its constructor and revalidates the rows.
pub fn decode_table(v: &Value) -> Result<CharacterTable, SchemaError> {
    check_schema(v)?;
    let (_, g) = decode_group(field(v, "", "group")?, "/group")?;
    let classes = conjugacy_classes(&g);
    let mut rows = Vec::new();
    for (i, r) in as_array(field(v, "", "irreducibles")?, "/irreducibles")?.iter().enumerate() {
        rows.push(decode_character(r, &child("/irreducibles", i))?.values().to_vec());
    }
    CharacterTable::from_values(g, classes, rows).map_err(|e| SchemaError::new("/irreducibles", e.to_string()))
}

/// Matrices of the group's standard generators; the group's element
/// numbering is the one of its constructor.
pub fn encode_representation(rep: &RationalRepresentation) -> Value {
    let g = rep.group();
    let gens: Vec<Value> =
        g.generators().into_iter().map(|s| json!({"element": s, "matrix": encode_matrix(rep.matrix(s))})).collect();
    json!({"schema": SCHEMA, "group": g.label(), "dim": rep.dim(), "generators": gens})
}

pub fn decode_representation(v: &Value) -> Result<RationalRepresentation, SchemaError> {
    check_schema(v)?;
    let (_, g) = decode_group(field(v, "", "group")?, "/group")?;
    let dim = as_usize(field(v, "", "dim")?, "/dim")?;
    let mut gens = Vec::new();
    for (i, e) in as_array(field(v, "", "generators")?, "/generators")?.iter().enumerate() {
        let p = child("/generators", i);
        let x = as_usize(field(e, &p, "element")?, &child(&p, "element"))?;
        if x >= g.order() {
            return Err(SchemaError::new(&child(&p, "element"), format!("element {x} outside a group of order {}", g.order())));
        }
        let m = decode_matrix(field(e, &p, "matrix")?, &child(&p, "matrix"))?;
        if m.rows() != dim || m.cols() != dim {
            return Err(SchemaError::new(&child(&p, "matrix"), format!("expected {dim}x{dim}")));
        }
        gens.push((x, m));
    }
    rep_from_generators(&g, &gens).map_err(|e| SchemaError::new("/generators", e.to_string()))
}
