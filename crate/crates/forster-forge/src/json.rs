//! JSON encodings for every value that crosses the command-line boundary.
//!
//! Conventions, applied uniformly:
//!
//! * integers are decimal strings (arbitrary precision), though plain JSON
//!   integers are accepted on input;
//! * polynomials are coefficient arrays, low degree first;
//! * ring descriptors are tagged objects: `{"type":"zmod","n":"6"}`,
//!   `{"type":"gf","p":"5"}` (with `"f"` for extension fields),
//!   `{"type":"product","factors":[…]}`, `{"type":"local_int","p":"3"}`,
//!   `{"type":"quad_order","d":"-5"}`;
//! * matrices are `{"ring":…,"rows":r,"cols":c,"data":[…]}`, row-major;
//! * module presentations are `{"ring":…,"ambient":t,"relations":matrix}`
//!   where the relation matrix has `t` rows and one **column** per relator
//!   (transposed into the internal row-per-relator layout on the way in);
//! * structure-constant algebras are `{"dim":d,"table":[[[…]…]…],"unit":[…]}`.
//!
//! Emission is canonical — object keys are sorted and all integers are
//! strings — so parsing an emitted value and re-emitting it reproduces the
//! bytes exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::azumaya::{
    AzumayaCertificate, DescentResult, GaloisCertificate, GaloisExtensionData, SingularWitness,
    SplitCertificate, StructureConstantAlgebra,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modules::{ModulePresentation, ProjectiveIdempotent};
use crate::ring::quad::QuadIdeal;
use crate::ring::{Elem, MaxIdealHandle, Ring};
use crate::sl_factor::ElementaryWord;

fn bad(msg: impl Into<String>) -> Error {
    Error::BadInput(msg.into())
}

// ---------------------------------------------------------------------------
// Integers
// ---------------------------------------------------------------------------

pub fn bigint_to_json(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

pub fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| bad(format!("not a decimal integer: {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| bad(format!("not an exact integer: {n}"))),
        other => Err(bad(format!("expected an integer, got {other}"))),
    }
}

fn usize_from_json(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| n.to_usize())
        .ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

fn field<'v>(obj: &'v Map<String, Value>, key: &str, what: &str) -> Result<&'v Value> {
    obj.get(key)
        .ok_or_else(|| bad(format!("{what} is missing the {key:?} field")))
}

fn as_object<'v>(v: &'v Value, what: &str) -> Result<&'v Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| bad(format!("{what} must be a JSON object")))
}

fn as_array<'v>(v: &'v Value, what: &str) -> Result<&'v Vec<Value>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be a JSON array")))
}

// ---------------------------------------------------------------------------
// Ring descriptors
// ---------------------------------------------------------------------------

pub fn ring_to_json(ring: &Ring) -> Value {
    match ring {
        Ring::ZMod { n } => json!({"type": "zmod", "n": bigint_to_json(n)}),
        Ring::PrimeField { p } => json!({"type": "gf", "p": bigint_to_json(p)}),
        Ring::ExtField { p, f } => json!({
            "type": "gf",
            "p": bigint_to_json(p),
            "f": f.iter().map(bigint_to_json).collect::<Vec<_>>(),
        }),
        Ring::Product { factors } => json!({
            "type": "product",
            "factors": factors.iter().map(ring_to_json).collect::<Vec<_>>(),
        }),
        Ring::LocalInt { p } => json!({"type": "local_int", "p": bigint_to_json(p)}),
        Ring::QuadOrder { d } => json!({"type": "quad_order", "d": bigint_to_json(d)}),
    }
}

pub fn ring_from_json(v: &Value) -> Result<Ring> {
    let obj = as_object(v, "a ring descriptor")?;
    let tag = field(obj, "type", "a ring descriptor")?
        .as_str()
        .ok_or_else(|| bad("the ring \"type\" must be a string"))?;
    match tag {
        "zmod" => Ring::zmod(bigint_from_json(field(obj, "n", "a zmod ring")?)?),
        "gf" => {
            let p = bigint_from_json(field(obj, "p", "a gf ring")?)?;
            match obj.get("f") {
                None => Ring::prime_field(p),
                Some(fv) => {
                    let f = as_array(fv, "the defining polynomial")?
                        .iter()
                        .map(bigint_from_json)
                        .collect::<Result<Vec<_>>>()?;
                    Ring::ext_field(p, f)
                }
            }
        }
        "product" => {
            let factors = as_array(field(obj, "factors", "a product ring")?, "factors")?
                .iter()
                .map(ring_from_json)
                .collect::<Result<Vec<_>>>()?;
            Ring::product(factors)
        }
        "local_int" => Ring::local_int(bigint_from_json(field(obj, "p", "a local_int ring")?)?),
        "quad_order" => Ring::quad_order(bigint_from_json(field(obj, "d", "a quad_order ring")?)?),
        other => Err(bad(format!("unknown ring type {other:?}"))),
    }
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

pub fn elem_to_json(e: &Elem) -> Value {
    match e {
        Elem::Int(v) => bigint_to_json(v),
        Elem::Pol(cs) => Value::Array(cs.iter().map(bigint_to_json).collect()),
        Elem::Tup(es) => Value::Array(es.iter().map(elem_to_json).collect()),
        Elem::Frac { num, den } => json!({
            "num": bigint_to_json(num),
            "den": bigint_to_json(den),
        }),
        Elem::Quad { a, b } => json!({
            "a": bigint_to_json(a),
            "b": bigint_to_json(b),
        }),
    }
}

/// Parse an element of `ring`, canonicalizing as it goes (integers are
/// reduced, polynomial coefficient lists may omit high zeros, fractions are
/// brought to lowest terms via exact division).
pub fn elem_from_json(ring: &Ring, v: &Value) -> Result<Elem> {
    let e = match ring {
        Ring::ZMod { .. } | Ring::PrimeField { .. } => ring.from_bigint(&bigint_from_json(v)?),
        Ring::ExtField { p, f } => {
            let coeffs = as_array(v, "an extension-field element")?;
            let deg = f.len() - 1;
            if coeffs.len() > deg {
                return Err(bad(format!(
                    "too many coefficients: the field has degree {deg}"
                )));
            }
            let mut cs = Vec::with_capacity(deg);
            for c in coeffs {
                cs.push(bigint_from_json(c)?.mod_floor(p));
            }
            cs.resize(deg, BigInt::from(0));
            Elem::Pol(cs)
        }
        Ring::Product { factors } => {
            let parts = as_array(v, "a product element")?;
            if parts.len() != factors.len() {
                return Err(bad(format!(
                    "a product element needs {} components, got {}",
                    factors.len(),
                    parts.len()
                )));
            }
            Elem::Tup(
                factors
                    .iter()
                    .zip(parts)
                    .map(|(r, p)| elem_from_json(r, p))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
        Ring::LocalInt { .. } => match v {
            Value::Object(obj) => {
                let num = bigint_from_json(field(obj, "num", "a fraction")?)?;
                let den = bigint_from_json(field(obj, "den", "a fraction")?)?;
                let d = ring.from_bigint(&den);
                let inv = ring
                    .inv(&d)
                    .map_err(|_| bad(format!("denominator {den} is not a unit in {ring}")))?;
                ring.mul(&ring.from_bigint(&num), &inv)
            }
            _ => ring.from_bigint(&bigint_from_json(v)?),
        },
        Ring::QuadOrder { .. } => match v {
            Value::Object(obj) => Elem::Quad {
                a: bigint_from_json(field(obj, "a", "a quadratic element")?)?,
                b: bigint_from_json(field(obj, "b", "a quadratic element")?)?,
            },
            _ => ring.from_bigint(&bigint_from_json(v)?),
        },
    };
    ring.validate(&e)?;
    Ok(e)
}

pub fn elems_to_json(es: &[Elem]) -> Value {
    Value::Array(es.iter().map(elem_to_json).collect())
}

pub fn elems_from_json(ring: &Ring, v: &Value) -> Result<Vec<Elem>> {
    as_array(v, "an element list")?
        .iter()
        .map(|e| elem_from_json(ring, e))
        .collect()
}

/// Parse an array of element vectors (e.g. module generators).
pub fn as_vectors(ring: &Ring, v: &Value) -> Result<Vec<Vec<Elem>>> {
    as_array(v, "a list of vectors")?
        .iter()
        .map(|row| elems_from_json(ring, row))
        .collect()
}

/// Parse a correction table: per lifted generator, one coefficient vector
/// per ideal generator.
pub fn as_correction_tables(ring: &Ring, v: &Value) -> Result<Vec<Vec<Vec<Elem>>>> {
    as_array(v, "a list of correction tables")?
        .iter()
        .map(|per_gen| as_vectors(ring, per_gen))
        .collect()
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

pub fn matrix_to_json(m: &Matrix) -> Value {
    json!({
        "ring": ring_to_json(&m.ring),
        "rows": m.rows,
        "cols": m.cols,
        "data": m.entries().iter().map(elem_to_json).collect::<Vec<_>>(),
    })
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let obj = as_object(v, "a matrix")?;
    let ring = ring_from_json(field(obj, "ring", "a matrix")?)?;
    matrix_from_json_over(&ring, v)
}

/// Parse a matrix whose ring is known from context; an embedded `"ring"`
/// field, if present, must agree.
pub fn matrix_from_json_over(ring: &Ring, v: &Value) -> Result<Matrix> {
    let obj = as_object(v, "a matrix")?;
    if let Some(rv) = obj.get("ring") {
        let embedded = ring_from_json(rv)?;
        if embedded != *ring {
            return Err(Error::MismatchedRing(format!(
                "the matrix declares {embedded} but the context needs {ring}"
            )));
        }
    }
    let rows = usize_from_json(field(obj, "rows", "a matrix")?, "\"rows\"")?;
    let cols = usize_from_json(field(obj, "cols", "a matrix")?, "\"cols\"")?;
    let data = as_array(field(obj, "data", "a matrix")?, "\"data\"")?;
    if data.len() != rows * cols {
        return Err(bad(format!(
            "a {rows}×{cols} matrix needs {} entries, got {}",
            rows * cols,
            data.len()
        )));
    }
    let entries = data
        .iter()
        .map(|e| elem_from_json(ring, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_raw(ring.clone(), rows, cols, entries))
}

// ---------------------------------------------------------------------------
// Modules and idempotents
// ---------------------------------------------------------------------------

pub fn module_to_json(m: &ModulePresentation) -> Value {
    json!({
        "ring": ring_to_json(&m.ring),
        "ambient": m.ambient,
        "relations": matrix_to_json(&m.relations.transpose()),
    })
}

pub fn module_from_json(v: &Value) -> Result<ModulePresentation> {
    let obj = as_object(v, "a module presentation")?;
    let ring = ring_from_json(field(obj, "ring", "a module presentation")?)?;
    let ambient = usize_from_json(
        field(obj, "ambient", "a module presentation")?,
        "\"ambient\"",
    )?;
    let relators = matrix_from_json_over(&ring, field(obj, "relations", "a module")?)?;
    if relators.rows != ambient {
        return Err(bad(format!(
            "the relation matrix has {} rows but the ambient rank is {ambient} \
             (columns are relators)",
            relators.rows
        )));
    }
    ModulePresentation::new(ring, ambient, relators.transpose())
}

pub fn idempotent_to_json(p: &ProjectiveIdempotent) -> Value {
    json!({
        "ring": ring_to_json(&p.e.ring),
        "e": matrix_to_json(&p.e),
    })
}

pub fn idempotent_from_json(v: &Value) -> Result<ProjectiveIdempotent> {
    let obj = as_object(v, "an idempotent")?;
    let ring = ring_from_json(field(obj, "ring", "an idempotent")?)?;
    let e = matrix_from_json_over(&ring, field(obj, "e", "an idempotent")?)?;
    ProjectiveIdempotent::new(e)
}

// ---------------------------------------------------------------------------
// Elementary words
// ---------------------------------------------------------------------------

pub fn word_to_json(w: &ElementaryWord) -> Value {
    let mut obj = Map::new();
    if let Some(cs) = &w.coefficients {
        obj.insert("coeffs".into(), elems_to_json(cs));
    }
    obj.insert("m".into(), json!(w.m));
    obj.insert(
        "positions".into(),
        Value::Array(
            w.positions
                .iter()
                .map(|(i, j)| json!([i, j]))
                .collect(),
        ),
    );
    Value::Object(obj)
}

pub fn word_from_json(ring: &Ring, v: &Value) -> Result<ElementaryWord> {
    let obj = as_object(v, "an elementary word")?;
    let m = usize_from_json(field(obj, "m", "an elementary word")?, "\"m\"")?;
    let mut positions = Vec::new();
    for pos in as_array(field(obj, "positions", "an elementary word")?, "positions")? {
        let pair = as_array(pos, "a position")?;
        if pair.len() != 2 {
            return Err(bad("each position must be a pair [i, j]"));
        }
        positions.push((
            usize_from_json(&pair[0], "a row index")?,
            usize_from_json(&pair[1], "a column index")?,
        ));
    }
    let coefficients = match obj.get("coeffs") {
        None => None,
        Some(cs) => Some(elems_from_json(ring, cs)?),
    };
    if let Some(cs) = &coefficients {
        if cs.len() != positions.len() {
            return Err(bad(format!(
                "{} positions but {} coefficients",
                positions.len(),
                cs.len()
            )));
        }
    }
    Ok(ElementaryWord {
        m,
        positions,
        coefficients,
    })
}

// ---------------------------------------------------------------------------
// Structure-constant algebras and Galois extension data
// ---------------------------------------------------------------------------

/// The bare table format `{"dim":…,"table":…,"unit":…}` (ring supplied by
/// context).
pub fn algebra_to_json(a: &StructureConstantAlgebra) -> Value {
    json!({
        "dim": a.dim,
        "table": a
            .table
            .iter()
            .map(|row| row.iter().map(|cell| elems_to_json(cell)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "unit": elems_to_json(&a.unit),
    })
}

pub fn algebra_from_json(ring: &Ring, v: &Value) -> Result<StructureConstantAlgebra> {
    let obj = as_object(v, "an algebra table")?;
    let dim = usize_from_json(field(obj, "dim", "an algebra table")?, "\"dim\"")?;
    let rows = as_array(field(obj, "table", "an algebra table")?, "\"table\"")?;
    let mut table = Vec::with_capacity(rows.len());
    for row in rows {
        let cells = as_array(row, "a table row")?;
        let mut parsed = Vec::with_capacity(cells.len());
        for cell in cells {
            parsed.push(elems_from_json(ring, cell)?);
        }
        table.push(parsed);
    }
    if table.len() != dim {
        return Err(bad(format!(
            "\"dim\" is {dim} but the table has {} rows",
            table.len()
        )));
    }
    let unit = elems_from_json(ring, field(obj, "unit", "an algebra table")?)?;
    StructureConstantAlgebra::new(ring.clone(), table, unit)
}

/// `{"ring":…,"algebra":…,"automorphisms":[…]}` with each automorphism a
/// row-major `dim × dim` coefficient array.
pub fn extension_to_json(e: &GaloisExtensionData) -> Value {
    json!({
        "algebra": algebra_to_json(&e.algebra),
        "automorphisms": e
            .automorphisms
            .iter()
            .map(|m| Value::Array(m.entries().iter().map(elem_to_json).collect()))
            .collect::<Vec<_>>(),
        "ring": ring_to_json(&e.algebra.ring),
    })
}

pub fn extension_from_json(v: &Value) -> Result<GaloisExtensionData> {
    let obj = as_object(v, "a Galois extension")?;
    let ring = ring_from_json(field(obj, "ring", "a Galois extension")?)?;
    let algebra = algebra_from_json(&ring, field(obj, "algebra", "a Galois extension")?)?;
    let d = algebra.dim;
    let autos_v = as_array(
        field(obj, "automorphisms", "a Galois extension")?,
        "\"automorphisms\"",
    )?;
    let mut autos = Vec::with_capacity(autos_v.len());
    for a in autos_v {
        let data = as_array(a, "an automorphism")?;
        if data.len() != d * d {
            return Err(bad(format!(
                "an automorphism of a rank-{d} algebra needs {} entries, got {}",
                d * d,
                data.len()
            )));
        }
        let entries = data
            .iter()
            .map(|e| elem_from_json(&ring, e))
            .collect::<Result<Vec<_>>>()?;
        autos.push(Matrix::from_raw(ring.clone(), d, d, entries));
    }
    GaloisExtensionData::new(algebra, autos)
}

// ---------------------------------------------------------------------------
// Quadratic ideals and maximal-ideal handles
// ---------------------------------------------------------------------------

/// Row-major 2×2 Hermite-form basis `[[a, 0], [b, c]]`.
pub fn quad_ideal_to_json(i: &QuadIdeal) -> Value {
    Value::Array(
        i.basis
            .iter()
            .map(|row| Value::Array(row.iter().map(bigint_to_json).collect()))
            .collect(),
    )
}

pub fn quad_ideal_from_json(ring: &Ring, v: &Value) -> Result<QuadIdeal> {
    let rows = as_array(v, "an ideal basis")?;
    if rows.len() != 2 {
        return Err(bad("an ideal basis is a 2×2 matrix"));
    }
    let mut basis = [[BigInt::from(0), BigInt::from(0)], [BigInt::from(0), BigInt::from(0)]];
    for (i, row) in rows.iter().enumerate() {
        let cells = as_array(row, "an ideal basis row")?;
        if cells.len() != 2 {
            return Err(bad("an ideal basis is a 2×2 matrix"));
        }
        for (j, c) in cells.iter().enumerate() {
            basis[i][j] = bigint_from_json(c)?;
        }
    }
    QuadIdeal::from_hnf_rows(ring, basis)
}

pub fn max_ideal_to_json(h: &MaxIdealHandle) -> Value {
    json!({
        "index": h.index,
        "label": h.label(),
        "path": h.path,
        "residue_char": bigint_to_json(&h.residue_char),
    })
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

pub fn witness_to_json(w: &SingularWitness) -> Value {
    match w {
        SingularWitness::At(h) => json!({
            "ideal": max_ideal_to_json(h),
            "kind": "singular_at_ideal",
        }),
        SingularWitness::NonUnitDet(d) => json!({
            "det": elem_to_json(d),
            "kind": "non_unit_determinant",
        }),
    }
}

pub fn azumaya_certificate_to_json(c: &AzumayaCertificate) -> Value {
    json!({
        "azumaya": c.azumaya,
        "sandwich_dim": c.sandwich_dim,
        "witness": c.witness.as_ref().map(witness_to_json).unwrap_or(Value::Null),
    })
}

pub fn galois_certificate_to_json(c: &GaloisCertificate) -> Value {
    json!({
        "comparison_dim": c.comparison_dim,
        "galois": c.galois,
        "witness": c.witness.as_ref().map(witness_to_json).unwrap_or(Value::Null),
    })
}

pub fn split_to_json(c: &SplitCertificate) -> Value {
    json!({
        "idempotent": elems_to_json(&c.idempotent),
        "images": c
            .images
            .iter()
            .map(|m| Value::Array(m.entries().iter().map(elem_to_json).collect()))
            .collect::<Vec<_>>(),
        "module_basis": c.module_basis.iter().map(|v| elems_to_json(v)).collect::<Vec<_>>(),
        "n": c.n,
        "seed": c.seed,
        "tried": c.tried,
    })
}

pub fn split_from_json(ring: &Ring, v: &Value) -> Result<SplitCertificate> {
    let obj = as_object(v, "a splitting certificate")?;
    let n = usize_from_json(field(obj, "n", "a splitting certificate")?, "\"n\"")?;
    let idempotent = elems_from_json(ring, field(obj, "idempotent", "a splitting certificate")?)?;
    let module_basis = as_array(
        field(obj, "module_basis", "a splitting certificate")?,
        "\"module_basis\"",
    )?
    .iter()
    .map(|row| elems_from_json(ring, row))
    .collect::<Result<Vec<_>>>()?;
    let images = as_array(field(obj, "images", "a splitting certificate")?, "\"images\"")?
        .iter()
        .map(|m| {
            let entries = elems_from_json(ring, m)?;
            if entries.len() != n * n {
                return Err(bad(format!("image matrices must have {} entries", n * n)));
            }
            Ok(Matrix::from_raw(ring.clone(), n, n, entries))
        })
        .collect::<Result<Vec<_>>>()?;
    let seed = field(obj, "seed", "a splitting certificate")?
        .as_u64()
        .ok_or_else(|| bad("\"seed\" must be an integer"))?;
    let tried = field(obj, "tried", "a splitting certificate")?
        .as_u64()
        .ok_or_else(|| bad("\"tried\" must be an integer"))?;
    Ok(SplitCertificate {
        n,
        idempotent,
        module_basis,
        images,
        tried,
        seed,
    })
}

pub fn descent_to_json(d: &DescentResult) -> Value {
    json!({
        "a": elem_to_json(&d.a),
        "basis_change": matrix_to_json(&d.basis_change),
        "generator": elems_to_json(&d.generator),
        "sigma_index": d.sigma_index,
    })
}

pub fn descent_from_json(ring: &Ring, v: &Value) -> Result<DescentResult> {
    let obj = as_object(v, "a descent result")?;
    Ok(DescentResult {
        a: elem_from_json(ring, field(obj, "a", "a descent result")?)?,
        generator: elems_from_json(ring, field(obj, "generator", "a descent result")?)?,
        sigma_index: usize_from_json(
            field(obj, "sigma_index", "a descent result")?,
            "\"sigma_index\"",
        )?,
        basis_change: matrix_from_json_over(ring, field(obj, "basis_change", "a descent")?)?,
    })
}

// ---------------------------------------------------------------------------
// Canonical emission
// ---------------------------------------------------------------------------

/// Serialize with sorted keys and no insignificant whitespace — the
/// canonical byte form used by every command.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("serde_json never fails on value trees")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    fn menu() -> Vec<Ring> {
        vec![
            Ring::zmod(int(6)).unwrap(),
            Ring::prime_field(int(5)).unwrap(),
            Ring::ext_field(int(2), vec![int(1), int(1), int(1)]).unwrap(),
            Ring::product(vec![
                Ring::zmod(int(4)).unwrap(),
                Ring::prime_field(int(3)).unwrap(),
            ])
            .unwrap(),
            Ring::local_int(int(3)).unwrap(),
            Ring::quad_order(int(-5)).unwrap(),
        ]
    }

    #[test]
    fn rings_round_trip_byte_stably() {
        for ring in menu() {
            let v = ring_to_json(&ring);
            let back = ring_from_json(&v).unwrap();
            assert_eq!(back, ring);
            let s = to_canonical_string(&v);
            let reparsed: Value = serde_json::from_str(&s).unwrap();
            assert_eq!(to_canonical_string(&ring_to_json(&ring_from_json(&reparsed).unwrap())), s);
        }
        assert!(matches!(
            ring_from_json(&json!({"type": "sparkle"})),
            Err(Error::BadInput(_))
        ));
    }

    #[test]
    fn elements_round_trip_and_canonicalize() {
        for ring in menu() {
            // A deterministic element makes the loop concrete: 7·1.
            let e = ring.from_i64(7);
            let v = elem_to_json(&e);
            assert_eq!(elem_from_json(&ring, &v).unwrap(), e);
        }
        // Integers reduce on input.
        let z6 = Ring::zmod(int(6)).unwrap();
        assert_eq!(
            elem_from_json(&z6, &json!("13")).unwrap(),
            z6.from_i64(1)
        );
        // Short polynomial vectors are padded to the field degree.
        let f4 = Ring::ext_field(int(2), vec![int(1), int(1), int(1)]).unwrap();
        assert_eq!(
            elem_from_json(&f4, &json!(["1"])).unwrap(),
            f4.one()
        );
        // Fractions reduce to lowest terms; non-unit denominators are
        // rejected.
        let z3 = Ring::local_int(int(3)).unwrap();
        let half = elem_from_json(&z3, &json!({"num": "2", "den": "4"})).unwrap();
        assert_eq!(elem_to_json(&half), json!({"den": "2", "num": "1"}));
        assert!(elem_from_json(&z3, &json!({"num": "1", "den": "3"})).is_err());
    }

    #[test]
    fn matrices_round_trip() {
        let r = Ring::zmod(int(10)).unwrap();
        let m = Matrix::from_fn(&r, 2, 3, |i, j| r.from_i64((3 * i + j) as i64));
        let v = matrix_to_json(&m);
        assert_eq!(matrix_from_json(&v).unwrap(), m);
        // Wrong entry count is rejected.
        let mut broken = v.clone();
        broken["data"].as_array_mut().unwrap().pop();
        assert!(matrix_from_json(&broken).is_err());
    }

    #[test]
    fn module_relators_are_columns_at_the_boundary() {
        let r = Ring::zmod(int(8)).unwrap();
        // One relator (2, 4) in R²: JSON stores it as a column.
        let m = ModulePresentation::from_relation_rows(&r, 2, &[vec![2, 4]]).unwrap();
        let v = module_to_json(&m);
        assert_eq!(v["relations"]["rows"], json!(2));
        assert_eq!(v["relations"]["cols"], json!(1));
        assert_eq!(v["relations"]["data"], json!(["2", "4"]));
        let back = module_from_json(&v).unwrap();
        assert_eq!(back.ambient, 2);
        assert_eq!(back.relations, m.relations);
    }

    #[test]
    fn words_algebras_and_ideals_round_trip() {
        let r = Ring::zmod(int(6)).unwrap();
        let w = ElementaryWord {
            m: 2,
            positions: vec![(1, 2), (2, 1)],
            coefficients: Some(vec![r.from_i64(3), r.from_i64(5)]),
        };
        let back = word_from_json(&r, &word_to_json(&w)).unwrap();
        assert_eq!(back.positions, w.positions);
        assert_eq!(back.coefficients, w.coefficients);

        let f5 = Ring::prime_field(int(5)).unwrap();
        let dual = StructureConstantAlgebra::dual_numbers(&f5).unwrap();
        let parsed = algebra_from_json(&f5, &algebra_to_json(&dual)).unwrap();
        assert_eq!(parsed, dual);

        let ext = crate::azumaya::trivial_galois_extension(&r, 2).unwrap();
        let parsed = extension_from_json(&extension_to_json(&ext)).unwrap();
        assert_eq!(parsed.algebra, ext.algebra);
        assert_eq!(parsed.automorphisms, ext.automorphisms);

        let order = Ring::quad_order(int(-5)).unwrap();
        let ideal = QuadIdeal::from_generators(
            &order,
            &[order.from_i64(2), Elem::Quad { a: int(1), b: int(1) }],
        )
        .unwrap();
        let parsed = quad_ideal_from_json(&order, &quad_ideal_to_json(&ideal)).unwrap();
        assert_eq!(parsed, ideal);
    }
}
