//! Text and JSON encodings shared by the command line and the fuzz targets.

use serde::Serializer;

use crate::arith::Q;

/// Rationals serialize as JSON integers when integral and as "n/d" strings otherwise.
pub fn ser_rational<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_integer() {
        if let Ok(n) = i64::try_from(x.numer()) {
            return s.serialize_i64(n);
        }
    }
    s.serialize_str(&x.to_string())
}

/// Monic polynomials serialize as their coefficient list, constant term first.
pub fn ser_monic<S: Serializer>(p: &crate::poly::MonicPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(p.coeffs().len()))?;
    for c in p.coeffs() {
        seq.serialize_element(&RationalJson(c))?;
    }
    seq.end()
}

pub struct RationalJson<'a>(pub &'a Q);

impl serde::Serialize for RationalJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ser_rational(self.0, s)
    }
}

/// Complex numbers serialize as [re, im].
pub fn complex_json(z: num_complex::Complex64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

pub fn ser_complex<S: Serializer>(z: &num_complex::Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    [z.re, z.im].serialize(s)
}

pub fn ser_complex_vec<S: Serializer>(zs: &[num_complex::Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    zs.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
}

/// Exact cyclotomic values serialize as {"exact": "...", "re": x, "im": y}.
pub fn cyc_json(c: &crate::finitetf::Cyc) -> serde_json::Value {
    let z = c.to_c64();
    serde_json::json!({"exact": c.to_string(), "re": z.re, "im": z.im})
}

pub fn ser_cyc<S: Serializer>(c: &crate::finitetf::Cyc, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    cyc_json(c).serialize(s)
}

// ---------------------------------------------------------------------------
// Parsers. Every entry point takes untrusted text and reports malformed input
// as `Error::Schema`; none of them panics.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::adele::{DefaultKind, LocalCharacter, LocalTestFunction, ProductCharacter, Real, RestrictedElement};
use crate::error::{Error, Result};
use crate::finitetf::{Cyc, FiniteModel, Group, TestFunction};
use crate::place::Place;
use crate::poly::MonicPoly;
use crate::quatcsa::{QuatElement, QuatMatrix, QuaternionAlgebra};
use crate::satake::{central_inverse, generator, HeckeElement, PlaceSpec, PlacedFamily, SatakeParams, CQ};

/// Longest accepted numeric literal.
pub const MAX_LITERAL: usize = 4096;
/// Largest accepted exponent in a generator word.
pub const MAX_WORD_EXPONENT: u32 = 64;
/// Bound on numerators and the common denominator of a test function.
pub const FUNCTION_BOUND: i128 = 1 << 62;

fn schema(msg: impl Into<String>) -> Error {
    Error::schema(msg)
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(schema(format!("not an integer: {s:?}")));
    }
    s.parse::<BigInt>().map_err(|_| schema(format!("not an integer: {s:?}")))
}

/// "n", "n/d" or a decimal "d.ddd", exactly.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    if s.len() > MAX_LITERAL {
        return Err(schema("numeric literal too long"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let d = parse_bigint(d.trim())?;
        if d.is_zero() {
            return Err(schema("zero denominator"));
        }
        return Ok(Q::new(parse_bigint(n.trim())?, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(schema(format!("not a decimal: {s:?}")));
        }
        let negative = int.starts_with('-');
        let int = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            i => parse_bigint(i)?,
        };
        let scale = BigInt::from(10u8).pow(frac.len() as u32);
        let mag = Q::new(int * &scale + parse_bigint(frac)?, scale);
        return Ok(if negative { -mag } else { mag });
    }
    Ok(Q::from_integer(parse_bigint(s)?))
}

/// A rational from a JSON integer or string.
pub fn rational_from_json(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Q::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Q::from_integer(u.into()))
            } else {
                Err(schema(format!("non-integral JSON number {n}; pass it as a string")))
            }
        }
        _ => Err(schema(format!("expected a rational, got {v}"))),
    }
}

fn parse_json(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| schema(format!("invalid JSON: {e}")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(format!("{what} must be an array")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| schema(format!("{what} must be a nonnegative integer")))
}

/// A JSON array of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Q>> {
    as_array(&parse_json(s)?, "rational list")?.iter().map(rational_from_json).collect()
}

/// A monic polynomial as a JSON coefficient array, constant term first.
pub fn parse_poly(s: &str) -> Result<MonicPoly> {
    MonicPoly::new(parse_rational_list(s)?)
}

/// A comma-separated list of places, e.g. "2,3,inf".
pub fn parse_places(s: &str) -> Result<Vec<Place>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.parse().map_err(|e: Error| match e {
                Error::Precondition(m) => schema(m),
                e => e,
            })
        })
        .collect()
}

/// A square rational matrix as a JSON array of rows.
pub fn parse_qmatrix(s: &str) -> Result<crate::matrix::QMatrix> {
    let rows = as_array(&parse_json(s)?, "matrix")?
        .iter()
        .map(|r| as_array(r, "matrix row")?.iter().map(rational_from_json).collect())
        .collect::<Result<Vec<Vec<Q>>>>()?;
    crate::matrix::QMatrix::from_rows(rows)
}

fn quat_from_json(alg: &QuaternionAlgebra, v: &Value) -> Result<QuatElement> {
    let xs = as_array(v, "quaternion")?;
    if xs.len() != 4 {
        return Err(schema("a quaternion has four coordinates"));
    }
    let c: Vec<Q> = xs.iter().map(rational_from_json).collect::<Result<_>>()?;
    Ok(alg.element([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]))
}

/// Four rationals (t, x, y, z) for t + x i + y j + z k.
pub fn parse_quaternion(alg: &QuaternionAlgebra, s: &str) -> Result<QuatElement> {
    quat_from_json(alg, &parse_json(s)?)
}

/// Row-major array of rows of quaternion quadruples.
pub fn parse_quat_matrix(alg: &QuaternionAlgebra, s: &str) -> Result<QuatMatrix> {
    let rows = as_array(&parse_json(s)?, "matrix")?
        .iter()
        .map(|r| as_array(r, "matrix row")?.iter().map(|e| quat_from_json(alg, e)).collect())
        .collect::<Result<Vec<Vec<QuatElement>>>>()?;
    QuatMatrix::new(alg.clone(), rows)
}

fn parse_f64(s: &str) -> Result<f64> {
    let s = s.trim();
    if s.len() > MAX_LITERAL {
        return Err(schema("numeric literal too long"));
    }
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(schema(format!("not a finite number: {s:?}"))),
    }
}

/// "re,im" (or a bare real "re").
pub fn parse_complex(s: &str) -> Result<Complex64> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?)),
        None => Ok(Complex64::new(parse_f64(s)?, 0.0)),
    }
}

/// "re,im;re,im;..."
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>> {
    s.split(';').filter(|t| !t.trim().is_empty()).map(parse_complex).collect()
}

fn complex_from_json(v: &Value) -> Result<Complex64> {
    match v {
        Value::String(s) => parse_complex(s),
        Value::Number(n) => Ok(Complex64::new(n.as_f64().ok_or_else(|| schema("bad number"))?, 0.0)),
        Value::Array(a) if a.len() == 2 => {
            let part = |x: &Value| x.as_f64().filter(|f| f.is_finite()).ok_or_else(|| schema("complex parts must be numbers"));
            Ok(Complex64::new(part(&a[0])?, part(&a[1])?))
        }
        _ => Err(schema(format!("expected a complex number, got {v}"))),
    }
}

struct WordParser<'a> {
    s: &'a [u8],
    pos: usize,
    n: usize,
    q: u64,
}

impl WordParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || b"./".contains(&self.s[self.pos])) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(schema(format!("expected a number at offset {start}")));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn factor(&mut self) -> Result<HeckeElement> {
        match self.peek() {
            Some(b'T') => {
                self.pos += 1;
                let k: usize = self.number()?.parse().map_err(|_| schema("generator index must be an integer"))?;
                let mut e: i64 = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let neg = self.peek() == Some(b'-');
                    if neg {
                        self.pos += 1;
                    }
                    let m: u32 = self.number()?.parse().map_err(|_| schema("exponent must be an integer"))?;
                    if m > MAX_WORD_EXPONENT {
                        return Err(schema(format!("exponent above {MAX_WORD_EXPONENT}")));
                    }
                    e = if neg { -(m as i64) } else { m as i64 };
                }
                if e < 0 {
                    if k != self.n {
                        return Err(Error::pre(format!("T{k} is not invertible in the spherical Hecke algebra")));
                    }
                    Ok(central_inverse(self.n, self.q)?.pow(e.unsigned_abs() as u32))
                } else {
                    if k == 0 {
                        return Err(Error::RankRange { n: self.n, k });
                    }
                    Ok(generator(self.n, self.q, k)?.pow(e as u32))
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(schema("unbalanced parenthesis"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let r = parse_rational(&self.number()?)?;
                Ok(HeckeElement::constant_exact(self.n, self.q, CQ::new(r, Q::zero())))
            }
            _ => Err(schema(format!("unexpected input at offset {}", self.pos))),
        }
    }

    fn term(&mut self) -> Result<HeckeElement> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<HeckeElement> {
        let mut acc = HeckeElement::zero(self.n, self.q);
        let mut sign = 1;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -1;
        }
        loop {
            let t = self.term()?;
            acc = if sign > 0 { acc.add(&t)? } else { acc.sub(&t)? };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }
}

/// A Hecke element written in the generators: sums and products of
/// `T<k>`, `T<k>^<e>`, rational constants and parentheses, with negative
/// exponents allowed only on the central generator T<n>.
pub fn parse_word(n: usize, q: u64, s: &str) -> Result<HeckeElement> {
    if s.len() > MAX_LITERAL {
        return Err(schema("word too long"));
    }
    if s.bytes().filter(|&b| b == b'(').count() > 32 {
        return Err(schema("parentheses nested too deeply"));
    }
    let mut p = WordParser { s: s.as_bytes(), pos: 0, n, q };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(schema(format!("trailing input at offset {}", p.pos)));
    }
    Ok(e)
}

/// Satake parameters from a complex list.
pub fn parse_satake(q: u64, s: &str) -> Result<SatakeParams> {
    SatakeParams::new(q, parse_complex_list(s)?)
}

fn params_from_json(q: u64, v: &Value) -> Result<SatakeParams> {
    match v {
        Value::String(s) => parse_satake(q, s),
        Value::Array(a) => SatakeParams::new(q, a.iter().map(complex_from_json).collect::<Result<_>>()?),
        _ => Err(schema("Satake parameters must be a string or an array")),
    }
}

/// {"places": [{"label", "n", "q"}], "reps": [[params per place], ...],
/// "coefficients": [complex, ...]}.
pub fn parse_family(s: &str) -> Result<PlacedFamily> {
    let v = parse_json(s)?;
    let places = as_array(&v["places"], "places")?
        .iter()
        .map(|p| {
            Ok(PlaceSpec {
                label: p["label"].as_str().ok_or_else(|| schema("place label must be a string"))?.to_string(),
                n: as_usize(&p["n"], "n")?,
                q: p["q"].as_u64().ok_or_else(|| schema("q must be a positive integer"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let reps = as_array(&v["reps"], "reps")?
        .iter()
        .map(|r| {
            let comps = as_array(r, "representation")?;
            if comps.len() != places.len() {
                return Err(Error::ShapeMismatch(format!("representation has {} components", comps.len())));
            }
            comps.iter().zip(&places).map(|(c, p)| params_from_json(p.q, c)).collect()
        })
        .collect::<Result<Vec<Vec<_>>>>()?;
    let coefficients = as_array(&v["coefficients"], "coefficients")?
        .iter()
        .map(complex_from_json)
        .collect::<Result<Vec<_>>>()?;
    PlacedFamily::new(places, reps, coefficients)
}

fn real_from_json(v: &Value) -> Result<Real> {
    match v {
        Value::Number(n) if n.as_i64().is_none() && n.as_u64().is_none() => {
            Ok(Real::Approx(n.as_f64().filter(|x| x.is_finite()).ok_or_else(|| schema("bad number"))?))
        }
        _ => Ok(Real::Exact(rational_from_json(v)?)),
    }
}

/// {"inf": r, "finite": {"p": r, ...}, "default": "unit"|"integral",
/// "default_value": r (optional)}.
pub fn parse_idele(s: &str) -> Result<RestrictedElement> {
    let v = parse_json(s)?;
    idele_from_json(&v)
}

pub fn idele_from_json(v: &Value) -> Result<RestrictedElement> {
    let inf = real_from_json(v.get("inf").ok_or_else(|| schema("missing \"inf\""))?)?;
    let mut finite = BTreeMap::new();
    if let Some(f) = v.get("finite") {
        let f = f.as_object().ok_or_else(|| schema("\"finite\" must be an object"))?;
        for (k, x) in f {
            let p: u64 = k.trim().parse().map_err(|_| schema(format!("not a prime key: {k:?}")))?;
            finite.insert(p, rational_from_json(x)?);
        }
    }
    let kind = match v.get("default").and_then(Value::as_str).unwrap_or("unit") {
        "unit" => DefaultKind::Unit,
        "integral" => DefaultKind::Integral,
        other => return Err(schema(format!("unknown default {other:?}"))),
    };
    match v.get("default_value") {
        Some(d) => RestrictedElement::with_default_value(inf, finite, kind, rational_from_json(d)?),
        None => RestrictedElement::new(inf, finite, kind),
    }
}

/// {"s": complex, "local": {"inf": {"sign": bool}, "p": {"s", "tame", "phase"}}}.
pub fn parse_character(s: &str) -> Result<ProductCharacter> {
    let v = parse_json(s)?;
    let global = v.get("s").map(complex_from_json).transpose()?.unwrap_or_default();
    let mut chi = ProductCharacter::norm_power(global);
    if let Some(local) = v.get("local") {
        let local = local.as_object().ok_or_else(|| schema("\"local\" must be an object"))?;
        for (k, c) in local {
            let place: Place = k.parse().map_err(|_| schema(format!("not a place: {k:?}")))?;
            let lc = LocalCharacter {
                s: c.get("s").map(complex_from_json).transpose()?.unwrap_or(global),
                sign: c.get("sign").map(|b| b.as_bool().ok_or_else(|| schema("sign must be a boolean"))).transpose()?.unwrap_or(false),
                tame: c.get("tame").map(|t| t.as_u64().ok_or_else(|| schema("tame must be a nonnegative integer"))).transpose()?.unwrap_or(0),
                phase: c
                    .get("phase")
                    .map(|t| t.as_f64().filter(|x| x.is_finite()).ok_or_else(|| schema("phase must be a number")))
                    .transpose()?
                    .unwrap_or(0.0),
            };
            chi = chi.with_local(place, lc)?;
        }
    }
    Ok(chi)
}

/// {"inf": {"scale", "lo", "hi"}, "finite": {"p": [[c, a, k], ...]},
/// "active": [p, ...]}.
pub fn parse_integrand(s: &str) -> Result<(BTreeMap<Place, LocalTestFunction>, BTreeSet<u64>)> {
    let v = parse_json(s)?;
    let mut fs = BTreeMap::new();
    if let Some(i) = v.get("inf") {
        let field = |k: &str| rational_from_json(i.get(k).ok_or_else(|| schema(format!("missing inf.{k}")))?);
        fs.insert(Place::Infinite, LocalTestFunction::Interval { scale: field("scale")?, lo: field("lo")?, hi: field("hi")? });
    }
    if let Some(f) = v.get("finite") {
        for (k, balls) in f.as_object().ok_or_else(|| schema("\"finite\" must be an object"))? {
            let p: u64 = k.trim().parse().map_err(|_| schema(format!("not a prime key: {k:?}")))?;
            Place::prime(p)?;
            let balls = as_array(balls, "balls")?
                .iter()
                .map(|b| {
                    let b = as_array(b, "ball")?;
                    if b.len() != 3 {
                        return Err(schema("a ball is [coefficient, center, k]"));
                    }
                    let k = b[2].as_i64().filter(|k| k.abs() <= 10_000).ok_or_else(|| schema("ball radius exponent must be a small integer"))?;
                    Ok((rational_from_json(&b[0])?, rational_from_json(&b[1])?, k))
                })
                .collect::<Result<Vec<_>>>()?;
            fs.insert(Place::Finite(p), LocalTestFunction::Balls { p, balls });
        }
    }
    let active = match v.get("active") {
        Some(a) => as_array(a, "active")?
            .iter()
            .map(|p| p.as_u64().ok_or_else(|| schema("active primes must be integers")))
            .collect::<Result<_>>()?,
        None => BTreeSet::new(),
    };
    Ok((fs, active))
}

fn element_ref(g: &Group, v: &Value) -> Result<usize> {
    match v {
        Value::Number(_) => {
            let i = as_usize(v, "element index")?;
            if i >= g.order() {
                return Err(schema(format!("element index {i} out of range")));
            }
            Ok(i)
        }
        Value::Array(a) => {
            let p = a
                .iter()
                .map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| schema("permutation entries must be integers")))
                .collect::<Result<Vec<u32>>>()?;
            g.element_of_perm(&p).ok_or_else(|| schema(format!("{p:?} is not an element of the group")))
        }
        Value::String(s) => g
            .labels()
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| schema(format!("no element labelled {s:?}"))),
        _ => Err(schema("an element is an index, a permutation or a label")),
    }
}

fn element_list(g: &Group, v: Option<&Value>) -> Result<Vec<usize>> {
    match v {
        None => Ok(Vec::new()),
        Some(v) => as_array(v, "element list")?.iter().map(|e| element_ref(g, e)).collect(),
    }
}

/// {"name", "permutations": [[...]] | "table": [[...]], "gamma": [...],
/// "center": [...], "omega": [[element, exponent], ...], "omega_order": N}.
/// Elements are indices, permutations or labels.
pub fn parse_model(s: &str) -> Result<FiniteModel> {
    let v = parse_json(s)?;
    let group = match (v.get("permutations"), v.get("table")) {
        (Some(p), None) => {
            let gens = as_array(p, "permutations")?
                .iter()
                .map(|g| {
                    as_array(g, "permutation")?
                        .iter()
                        .map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| schema("permutation entries must be integers")))
                        .collect::<Result<Vec<u32>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            if gens.iter().any(|g| g.len() > 64) {
                return Err(schema("permutation degree above 64"));
            }
            Group::from_permutations(&gens)?
        }
        (None, Some(t)) => {
            let rows = as_array(t, "table")?
                .iter()
                .map(|r| as_array(r, "table row")?.iter().map(|x| as_usize(x, "table entry")).collect())
                .collect::<Result<Vec<Vec<usize>>>>()?;
            if rows.len() > 256 {
                return Err(schema("multiplication tables are limited to 256 elements"));
            }
            Group::from_table(&rows)?
        }
        _ => return Err(schema("give exactly one of \"permutations\" and \"table\"")),
    };
    let gamma = element_list(&group, v.get("gamma"))?;
    let center = element_list(&group, v.get("center"))?;
    let omega_order = match v.get("omega_order") {
        Some(o) => u32::try_from(as_usize(o, "omega_order")?).ok().filter(|&o| (1..=1 << 16).contains(&o)).ok_or_else(|| schema("omega_order out of range"))?,
        None => 1,
    };
    let omega = match v.get("omega") {
        None => Vec::new(),
        Some(o) => as_array(o, "omega")?
            .iter()
            .map(|pair| {
                let pair = as_array(pair, "omega entry")?;
                if pair.len() != 2 {
                    return Err(schema("omega entries are [element, exponent]"));
                }
                let e = pair[1].as_u64().ok_or_else(|| schema("omega exponent must be a nonnegative integer"))?;
                Ok((element_ref(&group, &pair[0])?, (e % omega_order as u64) as u32))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let name = v.get("name").and_then(Value::as_str).unwrap_or("model").to_string();
    FiniteModel::new(name, group, &gamma, &center, &omega, omega_order)
}

fn small_rational(x: &Q) -> Result<(i128, i128)> {
    use num_traits::ToPrimitive;
    let n = x.numer().to_i128().filter(|n| n.abs() <= FUNCTION_BOUND);
    let d = x.denom().to_i128().filter(|d| *d <= FUNCTION_BOUND);
    match (n, d) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::pre(format!("function value {x} exceeds the 2^62 bound"))),
    }
}

fn cyc_from_json(v: &Value) -> Result<(Q, Q)> {
    match v {
        Value::Array(a) if a.len() == 2 => Ok((rational_from_json(&a[0])?, rational_from_json(&a[1])?)),
        _ => Ok((rational_from_json(v)?, Q::zero())),
    }
}

/// {"values": [v, ...]} in element order, or {"support": [[element, v], ...]};
/// each value a rational or a pair [re, im] of rationals.
pub fn parse_function(g: &Group, s: &str) -> Result<TestFunction> {
    let v = parse_json(s)?;
    let mut parts = vec![(Q::zero(), Q::zero()); g.order()];
    match (v.get("values"), v.get("support")) {
        (Some(vals), None) => {
            let vals = as_array(vals, "values")?;
            if vals.len() != g.order() {
                return Err(Error::ShapeMismatch(format!("{} values for a group of order {}", vals.len(), g.order())));
            }
            for (i, x) in vals.iter().enumerate() {
                parts[i] = cyc_from_json(x)?;
            }
        }
        (None, Some(sup)) => {
            for pair in as_array(sup, "support")? {
                let pair = as_array(pair, "support entry")?;
                if pair.len() != 2 {
                    return Err(schema("support entries are [element, value]"));
                }
                let (re, im) = cyc_from_json(&pair[1])?;
                let i = element_ref(g, &pair[0])?;
                parts[i] = (&parts[i].0 + re, &parts[i].1 + im);
            }
        }
        _ => return Err(schema("give exactly one of \"values\" and \"support\"")),
    }
    let mut common = BigInt::one();
    for (re, im) in &parts {
        common = num_integer::Integer::lcm(&common, re.denom());
        common = num_integer::Integer::lcm(&common, im.denom());
    }
    let den = small_rational(&Q::new(BigInt::one(), common.clone()))?.1;
    let values = parts
        .iter()
        .map(|(re, im)| {
            let c = Q::from_integer(common.clone());
            let (a, _) = small_rational(&(re * &c))?;
            let (b, _) = small_rational(&(im * &c))?;
            Ok(Cyc::gaussian(a, b, den))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TestFunction::new(values))
}

/// [[γ′, γ], ...]: the orbit of γ′ in `right` goes to the orbit of γ in
/// `left`. Elements are references in the respective groups.
pub fn parse_match(left: &FiniteModel, right: &FiniteModel, s: &str) -> Result<BTreeMap<usize, usize>> {
    let v = parse_json(s)?;
    let pairs = match v.get("pairs") {
        Some(p) => p,
        None => &v,
    };
    let mut out = BTreeMap::new();
    for pair in as_array(pairs, "match")? {
        let pair = as_array(pair, "match entry")?;
        if pair.len() != 2 {
            return Err(schema("match entries are [right element, left element]"));
        }
        let r = element_ref(right.group(), &pair[0])?;
        let l = element_ref(left.group(), &pair[1])?;
        let ro = right.orbit_of(r).ok_or_else(|| Error::pre(format!("{} is not in Γ′", right.group().label(r))))?;
        let lo = left.orbit_of(l).ok_or_else(|| Error::pre(format!("{} is not in Γ", left.group().label(l))))?;
        if out.insert(ro, lo).is_some_and(|prev| prev != lo) {
            return Err(Error::pre(format!("orbit {ro} matched twice")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("1.25").unwrap(), q(5, 4));
        assert_eq!(parse_rational("-.5").unwrap(), q(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), qi(7));
        for bad in ["", "1/0", "x", "1.", "1/-", "--1", "1e5"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn words() {
        let t1 = parse_word(2, 3, "T1").unwrap();
        let p = SatakeParams::trivial(2, 3).unwrap();
        let tr = crate::satake::trace_unramified(&p, &t1).unwrap();
        assert!((tr - Complex64::new(4.0, 0.0)).norm() < 1e-9);
        let w = parse_word(2, 3, "T2 * T2^-1 - 1").unwrap();
        assert!(crate::satake::trace_unramified(&p, &w).unwrap().norm() < 1e-9);
        assert!(parse_word(2, 3, "T1^-1").is_err());
        assert!(matches!(parse_word(2, 3, "T3"), Err(Error::RankRange { .. })));
        assert!(parse_word(2, 3, "T1 +").is_err());
        assert!(parse_word(2, 3, "(T1").is_err());
    }

    #[test]
    fn complex_lists() {
        let v = parse_complex_list("1.5,0;0,-2").unwrap();
        assert_eq!(v, vec![Complex64::new(1.5, 0.0), Complex64::new(0.0, -2.0)]);
        assert!(parse_complex_list("1,x").is_err());
        assert!(parse_complex("inf,0").is_err());
    }

    #[test]
    fn models_and_functions() {
        let m = parse_model(r#"{"permutations": [[1,0,2],[1,2,0]], "gamma": [[1,2,0]]}"#).unwrap();
        assert_eq!(m.dimension(), 2);
        let f = parse_function(m.group(), r#"{"support": [[[1,2,0], "1/2"], [[0,1,2], [1, "-1/3"]]]}"#).unwrap();
        let e = m.group().identity();
        assert_eq!(*f.value(e), Cyc::gaussian(6, -2, 6));
        assert!(parse_function(m.group(), r#"{"values": [1]}"#).is_err());
        let mm = parse_match(&m, &m, r#"[[[1,2,0],[2,0,1]]]"#).unwrap();
        assert_eq!(mm.len(), 1);
        assert!(parse_model(r#"{"table": [[0,1],[0,1]]}"#).is_err());
    }

    #[test]
    fn ideles() {
        let g = parse_idele(r#"{"inf": "-6", "finite": {"2": 4, "3": "1"}, "default": "unit"}"#).unwrap();
        assert_eq!(g.at(2), &qi(4));
        assert!(parse_idele(r#"{"inf": 0}"#).is_err());
        let a = parse_idele(r#"{"inf": 2.5}"#).unwrap();
        assert_eq!(a.archimedean(), &Real::Approx(2.5));
    }

    #[test]
    fn polynomials_and_quaternions() {
        let p = parse_poly(r#"[1, 0, 1]"#).unwrap();
        assert_eq!(p.degree(), 2);
        assert!(parse_poly("[1, 0, 2]").is_err());
        let h = QuaternionAlgebra::hamilton();
        let m = parse_quat_matrix(&h, r#"[[[1,2,0,0]]]"#).unwrap();
        assert_eq!(m.size(), 1);
        assert!(parse_quaternion(&h, "[1,2,3]").is_err());
    }
}
