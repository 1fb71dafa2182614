//! JSON serialization of germs, expansions and cone families, and the plain
//! text input files.
//!
//! Rationals are always "p/q" strings and polynomials are expression strings
//! in eps1..epsk. Text files hold one row of rationals per line separated by
//! spaces or commas; in cone family files each line is one cone whose
//! generators are separated by ';'. `#` starts a comment.

use serde_json::{json, Map, Value};

use super::convert::to_polynomial;
use super::parse::parse_expr;
use crate::cones::SimplicialCone;
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, parse_rational, AmbientSpace, Polynomial, Rational, RationalMatrix, RationalVector};
use crate::germs::form::Poles;
use crate::germs::{GermSum, MeromorphicGerm, PolarGerm};
use crate::laurent::{DecoratedCone, FormalExpansion};
use crate::lattice::TruncatedGerm;

pub fn rational_json(q: &Rational) -> Value {
    Value::String(fmt_rational(q))
}

pub fn vector_json(v: &RationalVector) -> Value {
    Value::Array(v.coords().iter().map(rational_json).collect())
}

pub fn poly_json(p: &Polynomial) -> Value {
    Value::String(p.to_string())
}

fn poles_json(poles: &[(RationalVector, u32)]) -> Value {
    Value::Array(poles.iter().map(|(l, s)| json!({"form": vector_json(l), "exp": s})).collect())
}

pub fn germ_sum_to_json(g: &GermSum) -> Value {
    let polar: Vec<Value> = g
        .polar_terms()
        .iter()
        .map(|t| json!({"numerator": poly_json(t.numerator()), "poles": poles_json(t.poles())}))
        .collect();
    json!({"polar": polar, "poly": poly_json(g.polynomial_part())})
}

pub fn meromorphic_to_json(f: &MeromorphicGerm) -> Value {
    json!({"numerator": poly_json(f.numerator()), "poles": poles_json(&f.poles())})
}

pub fn expansion_to_json(x: &FormalExpansion) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .iter()
        .map(|(c, g)| {
            let cone: Vec<Value> = c.factors().iter().map(|(v, s)| json!({"gen": vector_json(v), "exp": s})).collect();
            json!({"cone": cone, "numerator": poly_json(g)})
        })
        .collect();
    json!({"terms": terms, "poly": poly_json(x.polynomial_part())})
}

pub fn family_to_json(cones: &[SimplicialCone]) -> Value {
    let cs: Vec<Value> =
        cones.iter().map(|c| Value::Array(c.generators().iter().map(vector_json).collect())).collect();
    json!({ "cones": cs })
}

pub fn truncated_to_json(t: &TruncatedGerm) -> Value {
    json!({
        "polar": germ_sum_to_json(t.polar_part())["polar"].clone(),
        "tail": poly_json(t.taylor_tail()),
        "order": t.order(),
    })
}

// Reading back. Every error names the JSON path where it happened.

fn field<'a>(v: &'a Value, key: &str, at: &str) -> Result<&'a Value> {
    v.as_object()
        .ok_or_else(|| Error::format(at, "expected an object"))?
        .get(key)
        .ok_or_else(|| Error::format(at, format!("missing field '{}'", key)))
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::format(at, "expected an array"))
}

fn rational_from(v: &Value, at: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| Error::format(at, format!("bad rational '{}'", s))),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(Error::format(at, "expected a rational string")),
    }
}

fn vector_from(v: &Value, k: usize, at: &str) -> Result<RationalVector> {
    let xs = array(v, at)?;
    if xs.len() != k {
        return Err(Error::format(at, format!("expected {} coordinates, found {}", k, xs.len())));
    }
    Ok(RationalVector::new(
        xs.iter().enumerate().map(|(i, x)| rational_from(x, &format!("{}[{}]", at, i))).collect::<Result<_>>()?,
    ))
}

fn poly_from(v: &Value, k: usize, at: &str) -> Result<Polynomial> {
    let s = v.as_str().ok_or_else(|| Error::format(at, "expected a polynomial string"))?;
    let e = parse_expr(s, k).map_err(|e| Error::format(at, e.to_string()))?;
    to_polynomial(&e, k).map_err(|e| Error::format(at, e.to_string()))
}

fn exponent_from(v: &Value, at: &str) -> Result<u32> {
    v.as_u64()
        .filter(|s| *s >= 1 && *s <= u32::MAX as u64)
        .map(|s| s as u32)
        .ok_or_else(|| Error::format(at, "expected a positive integer exponent"))
}

fn poles_from(v: &Value, key: &str, k: usize, at: &str) -> Result<Poles> {
    array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let here = format!("{}[{}]", at, i);
            Ok((
                vector_from(field(p, key, &here)?, k, &format!("{}.{}", here, key))?,
                exponent_from(field(p, "exp", &here)?, &format!("{}.exp", here))?,
            ))
        })
        .collect()
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::format(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

pub fn germ_sum_from_json(space: &AmbientSpace, v: &Value) -> Result<GermSum> {
    let k = space.dim();
    let mut terms = Vec::new();
    for (i, t) in array(field(v, "polar", "$")?, "$.polar")?.iter().enumerate() {
        let at = format!("$.polar[{}]", i);
        let num = poly_from(field(t, "numerator", &at)?, k, &format!("{}.numerator", at))?;
        let poles = poles_from(field(t, "poles", &at)?, "form", k, &format!("{}.poles", at))?;
        terms.push(PolarGerm::new(space, num, poles).map_err(|e| Error::format(at, e.to_string()))?);
    }
    let poly = poly_from(field(v, "poly", "$")?, k, "$.poly")?;
    Ok(GermSum::new(k, terms, poly))
}

pub fn meromorphic_from_json(space: &AmbientSpace, v: &Value) -> Result<MeromorphicGerm> {
    let k = space.dim();
    let num = poly_from(field(v, "numerator", "$")?, k, "$.numerator")?;
    let poles = poles_from(field(v, "poles", "$")?, "form", k, "$.poles")?;
    if poles.iter().any(|(l, _)| l.is_zero()) {
        return Err(Error::format("$.poles", "zero linear form"));
    }
    Ok(MeromorphicGerm::from_parts(num, &poles))
}

pub fn expansion_from_json(space: &AmbientSpace, v: &Value) -> Result<FormalExpansion> {
    let k = space.dim();
    let mut x = FormalExpansion::from_polynomial(poly_from(field(v, "poly", "$")?, k, "$.poly")?);
    for (i, t) in array(field(v, "terms", "$")?, "$.terms")?.iter().enumerate() {
        let at = format!("$.terms[{}]", i);
        let factors = poles_from(field(t, "cone", &at)?, "gen", k, &format!("{}.cone", at))?;
        let cone = DecoratedCone::new(factors).map_err(|e| Error::format(format!("{}.cone", at), e.to_string()))?;
        let num = poly_from(field(t, "numerator", &at)?, k, &format!("{}.numerator", at))?;
        x.add_term(cone, &num);
    }
    x.validate(space).map_err(|e| Error::format("$.terms", e.to_string()))?;
    Ok(x)
}

pub fn family_from_json(k: usize, v: &Value) -> Result<Vec<SimplicialCone>> {
    array(field(v, "cones", "$")?, "$.cones")?
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let at = format!("$.cones[{}]", i);
            let gens = array(c, &at)?
                .iter()
                .enumerate()
                .map(|(j, g)| vector_from(g, k, &format!("{}[{}]", at, j)))
                .collect::<Result<Vec<_>>>()?;
            SimplicialCone::new(gens).map_err(|e| Error::format(at, e.to_string()))
        })
        .collect()
}

pub fn serialize_germ_sum(g: &GermSum) -> String {
    germ_sum_to_json(g).to_string()
}

pub fn deserialize_germ_sum(space: &AmbientSpace, text: &str) -> Result<GermSum> {
    germ_sum_from_json(space, &parse_json(text)?)
}

pub fn serialize_meromorphic(f: &MeromorphicGerm) -> String {
    meromorphic_to_json(f).to_string()
}

pub fn deserialize_meromorphic(space: &AmbientSpace, text: &str) -> Result<MeromorphicGerm> {
    meromorphic_from_json(space, &parse_json(text)?)
}

pub fn serialize_expansion(x: &FormalExpansion) -> String {
    expansion_to_json(x).to_string()
}

pub fn deserialize_expansion(space: &AmbientSpace, text: &str) -> Result<FormalExpansion> {
    expansion_from_json(space, &parse_json(text)?)
}

pub fn serialize_family(cones: &[SimplicialCone]) -> String {
    family_to_json(cones).to_string()
}

pub fn deserialize_family(k: usize, text: &str) -> Result<Vec<SimplicialCone>> {
    family_from_json(k, &parse_json(text)?)
}

// Plain text inputs.

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn row_from(s: &str, at: &str) -> Result<RationalVector> {
    let entries: Vec<&str> = s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
    if entries.is_empty() {
        return Err(Error::format(at, "empty row"));
    }
    entries
        .iter()
        .map(|t| parse_rational(t).ok_or_else(|| Error::format(at, format!("bad rational '{}'", t))))
        .collect::<Result<Vec<_>>>()
        .map(RationalVector::new)
}

fn check_width(rows: &[(String, RationalVector)], k: Option<usize>) -> Result<()> {
    let want = k.or_else(|| rows.first().map(|(_, r)| r.dim()));
    for (at, r) in rows {
        if Some(r.dim()) != want {
            return Err(Error::format(at.clone(), format!("expected {} entries, found {}", want.unwrap_or(0), r.dim())));
        }
    }
    Ok(())
}

/// One row per line; every row must have `k` entries when `k` is given,
/// otherwise all rows must agree.
pub fn read_rows(text: &str, source: &str, k: Option<usize>) -> Result<Vec<RationalVector>> {
    let rows: Vec<(String, RationalVector)> = content_lines(text)
        .flat_map(|(n, l)| l.split(';').map(move |part| (n, part.to_string())).collect::<Vec<_>>())
        .map(|(n, part)| {
            let at = format!("{}:{}", source, n);
            Ok((at.clone(), row_from(&part, &at)?))
        })
        .collect::<Result<_>>()?;
    check_width(&rows, k)?;
    Ok(rows.into_iter().map(|(_, r)| r).collect())
}

/// One simplicial cone per line, generators separated by ';'.
pub fn read_cone_family(text: &str, source: &str, k: Option<usize>) -> Result<Vec<SimplicialCone>> {
    let mut cones = Vec::new();
    let mut all = Vec::new();
    for (n, l) in content_lines(text) {
        let at = format!("{}:{}", source, n);
        let gens: Vec<RationalVector> = l.split(';').map(|g| row_from(g, &at)).collect::<Result<_>>()?;
        all.extend(gens.iter().map(|g| (at.clone(), g.clone())));
        cones.push((at, gens));
    }
    check_width(&all, k)?;
    cones
        .into_iter()
        .map(|(at, gens)| SimplicialCone::new(gens).map_err(|e| Error::format(at, e.to_string())))
        .collect()
}

pub fn write_cone_family(cones: &[SimplicialCone]) -> String {
    cones
        .iter()
        .map(|c| c.generators().iter().map(|g| g.to_strings().join(" ")).collect::<Vec<_>>().join("; "))
        .map(|l| l + "\n")
        .collect()
}

/// Square matrix, one row per line.
pub fn read_gram(text: &str, source: &str) -> Result<RationalMatrix> {
    let rows = read_rows(text, source, None)?;
    let k = rows.len();
    if k == 0 || rows.iter().any(|r| r.dim() != k) {
        return Err(Error::format(source, format!("gram matrix must be square, found {} rows", k)));
    }
    Ok(RationalMatrix::from_rows(&rows, k))
}

/// Object with string keys in a fixed order, for reports.
pub fn report(entries: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in entries {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}
