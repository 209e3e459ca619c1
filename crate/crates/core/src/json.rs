//! JSON forms shared by the command-line tool and the verification reports.
//!
//! Elements of a prime field are integers; elements of an extension are arrays
//! of base-field coefficients, low degree first, nested for towers. On input an
//! integer is also accepted anywhere and read as its image under `Z -> F`. Polynomials
//! are `{"coeffs": [elem, ...]}` and matrices `{"cols": c, "rows": [[elem, ...], ...]}`.

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::constacyclic::{ExponentVector, SelfDualCase, SelfDualCount};
use crate::error::{Error, Result};
use crate::factorizer::FactorizationReport;
use crate::galois::{Elem, Field};
use crate::linalg::{Matrix, Subspace};
use crate::mds::{MdsCertificate, MdsCode};
use crate::poly::Poly;
use crate::quasitwisted::{CrtComponents, EuclideanPair, HermitianPart, QtCode, QtCount, QtRing};

pub const SCHEMA_VERSION: &str = "1";

/// Wraps `body` (an object) with the schema version and the command name.
pub fn document(command: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    if let Value::Object(b) = body {
        m.extend(b);
    } else {
        m.insert("result".into(), body);
    }
    Value::Object(m)
}

pub fn error_document(kind: &str, message: &str) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "error": {"kind": kind, "message": message},
    })
}

pub fn big(n: &BigUint) -> Value {
    json!(n.to_str_radix(10))
}

pub fn field(f: &Field) -> Value {
    let mut m = Map::new();
    m.insert("p".into(), json!(f.characteristic()));
    m.insert("m".into(), json!(f.abs_degree()));
    m.insert("order".into(), json!(f.order()));
    if let Some(q) = f.q() {
        m.insert("q".into(), json!(q));
    }
    let modulus: Vec<Value> = match f.base() {
        Some(b) => f.modulus().iter().map(|&c| elem(b, c)).collect(),
        None => vec![],
    };
    m.insert("modulus".into(), Value::Array(modulus));
    if f.base().is_some() {
        m.insert("generator".into(), elem(f, f.generator()));
    } else {
        m.insert("generator".into(), json!(f.generator()));
    }
    if let Some(b) = f.base() {
        if b.base().is_some() {
            m.insert("base".into(), field(b));
        }
    }
    Value::Object(m)
}

pub fn elem(f: &Field, a: Elem) -> Value {
    match f.base() {
        None => json!(a),
        Some(b) => Value::Array(f.coeffs(a).into_iter().map(|c| elem(b, c)).collect()),
    }
}

pub fn parse_elem(f: &Field, v: &Value) -> Result<Elem> {
    match (f.base(), v) {
        (None, Value::Number(n)) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::invalid(format!("{n} is not an integer")))?;
            Ok(f.from_int(i))
        }
        (Some(_), Value::Number(n)) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::invalid(format!("{n} is not an integer")))?;
            Ok(f.from_int(i))
        }
        (Some(b), Value::Array(cs)) => {
            if cs.len() > f.degree() {
                return Err(Error::invalid(format!(
                    "{} coefficients for an element of degree {} over its base",
                    cs.len(),
                    f.degree()
                )));
            }
            let cs = cs.iter().map(|c| parse_elem(b, c)).collect::<Result<Vec<_>>>()?;
            Ok(f.from_coeffs(&cs))
        }
        _ => Err(Error::invalid(format!("cannot read {v} as an element of {f}"))),
    }
}

pub fn poly(p: &Poly) -> Value {
    let f = p.field();
    json!({"coeffs": p.coeffs().iter().map(|&c| elem(f, c)).collect::<Vec<_>>()})
}

pub fn parse_poly(f: &Field, v: &Value) -> Result<Poly> {
    let cs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::invalid("polynomial needs a \"coeffs\" array"))?;
    let cs = cs.iter().map(|c| parse_elem(f, c)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_coeffs(f, cs))
}

pub fn matrix(m: &Matrix) -> Value {
    let f = m.field();
    json!({
        "cols": m.cols(),
        "rows": m.row_vecs().iter().map(|r| r.iter().map(|&c| elem(f, c)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// Accepts `{"cols": c, "rows": [...]}` or a bare array of rows.
pub fn parse_matrix(f: &Field, v: &Value) -> Result<Matrix> {
    let (rows, cols) = match v {
        Value::Array(rows) => (rows, None),
        Value::Object(o) => (
            o.get("rows")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::invalid("matrix needs a \"rows\" array"))?,
            o.get("cols").and_then(Value::as_u64).map(|c| c as usize),
        ),
        _ => return Err(Error::invalid("matrix must be an object or an array of rows")),
    };
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::invalid("matrix row must be an array"))?
                .iter()
                .map(|c| parse_elem(f, c))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let cols = match cols.or_else(|| rows.first().map(Vec::len)) {
        Some(c) => c,
        None => return Err(Error::invalid("empty matrix needs \"cols\"")),
    };
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::invalid(format!("every row must have {cols} entries")));
    }
    Ok(Matrix::from_rows(f, cols, &rows))
}

pub fn subspace(s: &Subspace) -> Value {
    json!({"dim": s.dim(), "basis": matrix(s.basis())})
}

fn parse_subspace(f: &Field, len: usize, v: &Value) -> Result<Subspace> {
    let m = parse_matrix(f, v.get("basis").unwrap_or(v))?;
    if m.cols() != len {
        return Err(Error::invalid(format!("component code must have length {len}")));
    }
    Ok(Subspace::from_matrix(&m))
}

pub fn factorization(r: &FactorizationReport) -> Value {
    let f = r.field();
    let n = &r.norm;
    let classes: Vec<Value> = r
        .classes
        .iter()
        .map(|c| {
            let key = if c.pi == 0 { "gamma" } else { "beta" };
            let mut m = Map::new();
            m.insert("j".into(), json!(c.j));
            m.insert("s_j".into(), json!(c.s_j));
            m.insert("cosets".into(), json!(c.cosets));
            m.insert("pi".into(), json!(c.pi));
            m.insert("coset_size".into(), json!(c.ord));
            m.insert(key.into(), json!(c.gamma_or_beta));
            Value::Object(m)
        })
        .collect();
    let multiset: Vec<Value> = r
        .distinct_factors()
        .iter()
        .map(|g| json!({"factor": poly(g), "multiplicity": r.multiplicity}))
        .collect();
    json!({
        "field": field(f),
        "normalization": {
            "q": n.q,
            "n": n.n,
            "n_prime": n.n_prime,
            "nu": n.nu,
            "p_nu": n.p_nu,
            "lambda": elem(f, n.lam),
            "Lambda": elem(f, n.big_lam),
            "r": n.r,
            "k": n.k,
            "modulus": n.modulus(),
            "tower_order": n.tower.order().to_string(),
        },
        "classes": classes,
        "omega": r.omega,
        "omega_prime": r.omega_prime,
        "scr_factors": r.scr.iter().map(|g| json!({"poly": poly(&g.poly), "j": g.j, "coset": g.coset})).collect::<Vec<_>>(),
        "cr_pairs": r.pairs.iter().map(|p| json!({
            "f": poly(&p.f),
            "f_dagger": poly(&p.f_dagger),
            "j": p.j,
            "coset": p.coset,
            "partner_coset": p.partner,
        })).collect::<Vec<_>>(),
        "factors": multiset,
        "s": r.s,
        "t": r.t,
        "multiplicity": r.multiplicity,
    })
}

pub fn exponents(e: &ExponentVector) -> Value {
    json!({"u": e.u, "v": e.v, "w": e.w})
}

pub fn self_dual_case(c: SelfDualCase) -> &'static str {
    match c {
        SelfDualCase::NoScrFactors => "omega-empty",
        SelfDualCase::EvenCharacteristic => "omega-nonempty-p-even",
        SelfDualCase::EvenCharacteristicSimpleRoots => "omega-nonempty-p-even-simple-roots",
        SelfDualCase::OddCharacteristic => "omega-nonempty-p-odd",
    }
}

pub fn self_dual_count(c: &SelfDualCount) -> Value {
    json!({
        "count": big(&c.count),
        "case": self_dual_case(c.case),
        "closed_form": big(&c.closed_form),
    })
}

pub fn mds_certificate(c: &MdsCertificate) -> Value {
    json!({
        "self_dual_defining_set": c.self_dual_set,
        "generator_self_dual": c.generator_self_dual,
        "gram_zero": c.gram_zero,
        "bch_bound": c.bch_bound,
        "singleton_bound": c.singleton_bound,
        "min_distance": c.min_distance,
        "codewords_scanned": c.codewords_scanned,
        "mds": c.mds,
    })
}

pub fn mds_code(m: &MdsCode) -> Value {
    json!({
        "field": field(m.code.report().field()),
        "lambda": elem(m.code.report().field(), m.code.report().norm.lam),
        "parameters": [m.n, m.k, m.d],
        "defining_set": m.defining_set.elems,
        "generator": poly(m.code.generator()),
        "exponents": exponents(m.code.exponents()),
        "certificate": mds_certificate(&m.certificate),
    })
}

pub fn qt_code(c: &QtCode) -> Value {
    json!({
        "n": c.n,
        "ell": c.ell,
        "lambda": elem(c.field(), c.lam),
        "dim": c.dim(),
        "generator_matrix": matrix(c.space.basis()),
    })
}

pub fn crt_components(ring: &QtRing, parts: &CrtComponents) -> Value {
    let herm: Vec<Value> = parts
        .hermitian
        .iter()
        .zip(ring.hermitian_fields())
        .map(|(h, g)| {
            json!({
                "factor": poly(&h.factor),
                "field_order": g.order().to_string(),
                "code": subspace(&h.code),
            })
        })
        .collect();
    let eucl: Vec<Value> = parts
        .euclidean
        .iter()
        .zip(ring.euclidean_fields())
        .map(|(e, h)| {
            json!({
                "factor": poly(&e.factor),
                "partner": poly(&e.partner),
                "field_order": h.order().to_string(),
                "c1": subspace(&e.c1),
                "c2": subspace(&e.c2),
            })
        })
        .collect();
    json!({"ell": parts.ell, "hermitian": herm, "euclidean": eucl})
}

/// Reads components in the layout of [`crt_components`]; the factor order
/// must match the ring's.
pub fn parse_crt_components(ring: &QtRing, v: &Value) -> Result<CrtComponents> {
    let ell = v
        .get("ell")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::invalid("components need \"ell\""))? as usize;
    let list = |key: &str| -> Result<Vec<Value>> {
        Ok(v.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::invalid(format!("components need a \"{key}\" array")))?
            .clone())
    };
    let herm = list("hermitian")?;
    let eucl = list("euclidean")?;
    let gs = ring.hermitian_fields();
    let hs = ring.euclidean_fields();
    if herm.len() != gs.len() || eucl.len() != hs.len() {
        return Err(Error::invalid(format!(
            "expected {} hermitian and {} euclidean components",
            gs.len(),
            hs.len()
        )));
    }
    let factors = &ring.report().scr;
    let pairs = &ring.report().pairs;
    let hermitian = herm
        .iter()
        .zip(&gs)
        .zip(factors)
        .map(|((h, g), f)| {
            let code = parse_subspace(g, ell, h.get("code").unwrap_or(h))?;
            Ok(HermitianPart { factor: f.poly.clone(), code })
        })
        .collect::<Result<Vec<_>>>()?;
    let euclidean = eucl
        .iter()
        .zip(&hs)
        .zip(pairs)
        .map(|((e, h), p)| {
            let get = |k: &str| e.get(k).ok_or_else(|| Error::invalid(format!("pair needs \"{k}\"")));
            Ok(EuclideanPair {
                factor: p.f.clone(),
                partner: p.f_dagger.clone(),
                c1: parse_subspace(h, ell, get("c1")?)?,
                c2: parse_subspace(h, ell, get("c2")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CrtComponents { ell, hermitian, euclidean })
}

pub fn qt_count(c: &QtCount) -> Value {
    let pairs = |v: &[(usize, BigUint)], deg: &str| -> Vec<Value> {
        v.iter().map(|(d, n)| json!({deg: d, "count": big(n)})).collect()
    };
    json!({
        "count": big(&c.count),
        "hermitian_factors": pairs(&c.hermitian_factors, "degree"),
        "euclidean_factors": pairs(&c.euclidean_factors, "degree"),
        "formula": "Gaussian binomial (validated)",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{extend, make_field};

    #[test]
    fn element_and_matrix_round_trip() {
        let f9 = make_field(3, 2).unwrap();
        for a in f9.elements() {
            assert_eq!(parse_elem(&f9, &elem(&f9, a)).unwrap(), a);
        }
        let g = extend(&f9, 2).unwrap();
        for a in (0..g.order()).step_by(7) {
            assert_eq!(parse_elem(&g, &elem(&g, a)).unwrap(), a);
        }
        let m = Matrix::from_rows(&f9, 3, &[vec![1, 2, 3], vec![4, 5, 8]]);
        assert_eq!(parse_matrix(&f9, &matrix(&m)).unwrap().row_vecs(), m.row_vecs());
        assert_eq!(parse_elem(&f9, &json!(-1)).unwrap(), f9.from_int(-1));
        assert!(parse_elem(&f9, &json!([1, 2, 0])).is_err());
        let p = Poly::from_coeffs(&f9, vec![3, 0, 1]);
        assert_eq!(parse_poly(&f9, &poly(&p)).unwrap(), p);
    }

    #[test]
    fn documents_carry_the_schema_version() {
        let d = document("factor", json!({"s": 1}));
        assert_eq!(d["schema_version"], SCHEMA_VERSION);
        assert_eq!(d["s"], 1);
        assert_eq!(error_document("usage", "x")["schema_version"], SCHEMA_VERSION);
    }
}
