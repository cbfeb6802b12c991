//! Text formats for fields, elements, polynomials and sequences.
//!
//! Field spec: `p`, `p^e` or `p^e/c0,c1,...,ce` (modulus low-to-high).
//! Elements: integers in prime fields, `c0+c1*w+c2*w^2` in extensions.
//! Polynomials: `x^3+2*x^2+2*x+1` or `[1,2,2,1]` (low-to-high).

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{make_field, Elem, Field, FieldCtx};
use crate::lrs::PeriodicSeq;
use crate::poly::Poly;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Canonical spec string; extension fields always carry their modulus.
pub fn field_spec(k: &FieldCtx) -> String {
    match k.modulus() {
        None => k.characteristic().to_string(),
        Some(m) => {
            let coeffs: Vec<String> = m.iter().map(|c| c.to_string()).collect();
            format!("{}^{}/{}", k.characteristic(), k.degree(), coeffs.join(","))
        }
    }
}

pub fn parse_field_spec(s: &str) -> Result<Field> {
    let s = s.trim();
    let (head, modulus) = match s.split_once('/') {
        Some((h, m)) => (h, Some(m)),
        None => (s, None),
    };
    let (p, e) = match head.split_once('^') {
        Some((p, e)) => (parse_u64(p)?, parse_u64(e)?),
        None => (parse_u64(head)?, 1),
    };
    let e = u32::try_from(e).map_err(|_| parse_err(format!("degree {e} too large")))?;
    match modulus {
        None => make_field(p, e, None),
        Some(m) => {
            let coeffs = m.split(',').map(parse_u64).collect::<Result<Vec<u64>>>()?;
            make_field(p, e, Some(&coeffs))
        }
    }
}

fn parse_u64(s: &str) -> Result<u64> {
    s.trim().parse().map_err(|_| parse_err(format!("expected a non-negative integer, got {s:?}")))
}

fn parse_i64(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| parse_err(format!("expected an integer, got {s:?}")))
}

pub fn elem_to_string(k: &FieldCtx, a: Elem) -> String {
    if k.degree() == 1 {
        return a.code().to_string();
    }
    let mut terms = Vec::new();
    for (i, &c) in k.coeffs(a).iter().enumerate() {
        if c == 0 {
            continue;
        }
        terms.push(match (i, c) {
            (0, _) => c.to_string(),
            (1, 1) => "w".to_string(),
            (1, _) => format!("{c}*w"),
            (_, 1) => format!("w^{i}"),
            _ => format!("{c}*w^{i}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Splits at top-level `+`/`-` signs, keeping each sign with its term.
fn signed_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut neg = false;
    let mut cur = String::new();
    let mut prev_caret = false;
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(parse_err(format!("unbalanced parentheses in {s:?}")));
        }
        if depth == 0 && (ch == '+' || ch == '-') && !prev_caret {
            if !cur.is_empty() {
                out.push((neg, std::mem::take(&mut cur)));
            } else if !out.is_empty() || neg {
                return Err(parse_err(format!("dangling sign in {s:?}")));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        prev_caret = ch == '^';
    }
    if depth != 0 {
        return Err(parse_err(format!("unbalanced parentheses in {s:?}")));
    }
    if cur.is_empty() {
        return Err(parse_err(format!("empty term in {s:?}")));
    }
    out.push((neg, cur));
    Ok(out)
}

pub fn parse_elem(k: &FieldCtx, s: &str) -> Result<Elem> {
    let s = s.trim();
    let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    let mut acc = Elem::ZERO;
    for (neg, term) in signed_terms(s)? {
        let (coef, power) = match term.split_once('w') {
            None => (parse_i64(&term)?, 0u64),
            Some((c, rest)) => {
                if k.degree() == 1 {
                    return Err(parse_err(format!("{s:?}: prime fields have no w")));
                }
                let c = c.strip_suffix('*').unwrap_or(c);
                let coef = if c.is_empty() { 1 } else { parse_i64(c)? };
                let power = match rest.strip_prefix('^') {
                    Some(e) => parse_u64(e)?,
                    None if rest.is_empty() => 1,
                    None => return Err(parse_err(format!("bad element term {term:?}"))),
                };
                (coef, power)
            }
        };
        let w = k.generator().unwrap_or(Elem::ONE);
        let mut t = k.mul(k.from_int(coef), k.pow(w, power));
        if neg {
            t = k.neg(t);
        }
        acc = k.add(acc, t);
    }
    Ok(acc)
}

pub fn parse_seq(k: &FieldCtx, s: &str) -> Result<Vec<Elem>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(parse_err("empty sequence"));
    }
    s.split(',').map(|t| parse_elem(k, t)).collect()
}

fn coeff_str(k: &FieldCtx, c: Elem, bare: bool) -> String {
    let s = elem_to_string(k, c);
    if !bare && k.degree() > 1 && s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

pub fn poly_to_string(f: &Poly) -> String {
    let k = f.field();
    if f.is_zero() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (i, &c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        terms.push(match (i, c == Elem::ONE) {
            (0, _) => coeff_str(k, c, true),
            (_, true) => mono,
            _ => format!("{}*{mono}", coeff_str(k, c, false)),
        });
    }
    terms.join("+")
}

pub fn poly_coeff_list(f: &Poly) -> String {
    let k = f.field();
    let items: Vec<String> = f.coeffs().iter().map(|&c| elem_to_string(k, c)).collect();
    format!("[{}]", items.join(","))
}

pub fn parse_poly(k: &Field, s: &str) -> Result<Poly> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or_else(|| parse_err(format!("unterminated coefficient list {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Poly::zero(k));
        }
        return Ok(Poly::from_elems(k, parse_seq(k, inner)?));
    }
    let mut coeffs: Vec<Elem> = Vec::new();
    for (neg, term) in signed_terms(s)? {
        let (c, power) = split_poly_term(k, &term)?;
        let c = if neg { k.neg(c) } else { c };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, Elem::ZERO);
        }
        coeffs[power] = k.add(coeffs[power], c);
    }
    Ok(Poly::from_elems(k, coeffs))
}

fn split_poly_term(k: &FieldCtx, term: &str) -> Result<(Elem, usize)> {
    // the variable is the last 'x' outside parentheses
    let mut depth = 0;
    let mut xpos = None;
    for (i, ch) in term.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => xpos = Some(i),
            _ => {}
        }
    }
    let Some(i) = xpos else {
        return Ok((parse_elem(k, term)?, 0));
    };
    let (c, rest) = (&term[..i], &term[i + 1..]);
    let c = c.strip_suffix('*').unwrap_or(c);
    let coef = if c.is_empty() { Elem::ONE } else { parse_elem(k, c)? };
    let power = match rest.strip_prefix('^') {
        Some(e) => parse_u64(e)? as usize,
        None if rest.is_empty() => 1,
        None => return Err(parse_err(format!("bad polynomial term {term:?}"))),
    };
    Ok((coef, power))
}

/// JSON encoding of one element: an integer in prime fields, a string in
/// extension fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRepr {
    Int(u64),
    Str(String),
}

pub fn elem_repr(k: &FieldCtx, a: Elem) -> ElemRepr {
    if k.degree() == 1 {
        ElemRepr::Int(a.code() as u64)
    } else {
        ElemRepr::Str(elem_to_string(k, a))
    }
}

pub fn elem_from_repr(k: &FieldCtx, r: &ElemRepr) -> Result<Elem> {
    match r {
        ElemRepr::Int(n) => Ok(k.from_int((*n % k.characteristic()) as i64)),
        ElemRepr::Str(s) => parse_elem(k, s),
    }
}

pub fn elem_json(k: &FieldCtx, a: Elem) -> Value {
    serde_json::to_value(elem_repr(k, a)).expect("plain enum serializes")
}

pub fn elems_json(k: &FieldCtx, xs: &[Elem]) -> Value {
    Value::Array(xs.iter().map(|&a| elem_json(k, a)).collect())
}

pub fn elems_from_json(k: &FieldCtx, v: &Value) -> Result<Vec<Elem>> {
    let reprs: Vec<ElemRepr> =
        serde_json::from_value(v.clone()).map_err(|e| parse_err(format!("bad element list: {e}")))?;
    reprs.iter().map(|r| elem_from_repr(k, r)).collect()
}

/// Coefficient list, low-to-high.
pub fn poly_json(f: &Poly) -> Value {
    elems_json(f.field(), f.coeffs())
}

/// The one JSON rendering used for output: sorted keys, two-space indent,
/// trailing newline. Parsing it back and re-rendering gives the same bytes.
pub fn canonical_json(v: &Value) -> String {
    // serde_json's default map is a BTreeMap, so keys come out sorted
    let mut out = serde_json::to_string_pretty(v).expect("Value always serializes");
    out.push('\n');
    out
}

/// `{"field": spec, "window": [...]}`
pub fn seq_json(s: &PeriodicSeq) -> Value {
    serde_json::json!({
        "field": field_spec(s.field()),
        "window": elems_json(s.field(), s.window()),
    })
}

pub fn parse_seq_json(text: &str) -> Result<PeriodicSeq> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("bad JSON: {e}")))?;
    let spec = v.get("field").and_then(Value::as_str).ok_or_else(|| parse_err("missing string key \"field\""))?;
    let k = parse_field_spec(spec)?;
    let window = v.get("window").ok_or_else(|| parse_err("missing key \"window\""))?;
    PeriodicSeq::new(&k, elems_from_json(&k, window)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_specs_round_trip() {
        for s in ["7", "3^2/1,0,1", "2^4/1,1,0,0,1"] {
            let k = parse_field_spec(s).unwrap();
            assert_eq!(field_spec(&k), s);
        }
        assert_eq!(field_spec(&parse_field_spec("3^2").unwrap()), "3^2/1,0,1");
        assert_eq!(parse_field_spec("4").unwrap_err(), Error::NotPrime(4));
        assert!(matches!(parse_field_spec("3^2/1,1,1"), Err(Error::BadModulus(_))));
        assert!(matches!(parse_field_spec("x"), Err(Error::Parse(_))));
    }

    #[test]
    fn element_text() {
        let k = parse_field_spec("3^2").unwrap();
        let w = k.generator().unwrap();
        let a = k.add(Elem(2), w);
        assert_eq!(elem_to_string(&k, a), "2+w");
        assert_eq!(parse_elem(&k, "2+w").unwrap(), a);
        assert_eq!(parse_elem(&k, "-1+w").unwrap(), a);
        assert_eq!(parse_elem(&k, "(2+1*w)").unwrap(), a);
        assert_eq!(parse_elem(&k, "w^2").unwrap(), Elem(2));
        assert_eq!(elem_to_string(&k, k.mul(Elem(2), w)), "2*w");
        for a in k.elements() {
            assert_eq!(parse_elem(&k, &elem_to_string(&k, a)).unwrap(), a);
        }
        let f7 = parse_field_spec("7").unwrap();
        assert_eq!(parse_elem(&f7, "-1").unwrap(), Elem(6));
        assert!(parse_elem(&f7, "w").is_err());
    }

    #[test]
    fn polynomial_text() {
        let f7 = parse_field_spec("7").unwrap();
        let f = Poly::from_ints(&f7, &[1, 2, 2, 1]);
        assert_eq!(poly_to_string(&f), "x^3+2*x^2+2*x+1");
        assert_eq!(poly_coeff_list(&f), "[1,2,2,1]");
        assert_eq!(parse_poly(&f7, "x^3+2*x^2+2*x+1").unwrap(), f);
        assert_eq!(parse_poly(&f7, "[1,2,2,1]").unwrap(), f);
        assert_eq!(parse_poly(&f7, "x^3 - 5x^2 + 2x + 8").unwrap(), f);
        assert_eq!(poly_to_string(&Poly::from_ints(&f7, &[-1, 1])), "x+6");
        assert_eq!(poly_to_string(&Poly::zero(&f7)), "0");

        let f9 = parse_field_spec("3^2").unwrap();
        let g = parse_poly(&f9, "x^2+(2+w)*x+w").unwrap();
        assert_eq!(poly_to_string(&g), "x^2+(2+w)*x+w");
        assert_eq!(parse_poly(&f9, &poly_coeff_list(&g)).unwrap(), g);
    }

    #[test]
    fn json_elements() {
        let f9 = parse_field_spec("3^2").unwrap();
        let xs: Vec<Elem> = f9.elements().collect();
        let v = elems_json(&f9, &xs);
        assert_eq!(elems_from_json(&f9, &v).unwrap(), xs);
        let f7 = parse_field_spec("7").unwrap();
        assert_eq!(elems_json(&f7, &[Elem(3)]).to_string(), "[3]");
    }

    #[test]
    fn seq_json_round_trip() {
        let k = parse_field_spec("3^2").unwrap();
        let s = PeriodicSeq::new(&k, parse_seq(&k, "1,w,2+w,2*w").unwrap()).unwrap();
        let text = canonical_json(&seq_json(&s));
        let back = parse_seq_json(&text).unwrap();
        assert_eq!(back, s);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(canonical_json(&v), text);
        assert!(parse_seq_json("{\"window\": [1]}").is_err());
    }
}
