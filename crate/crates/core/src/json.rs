//! JSON forms of the exchange types. Scalars cross this boundary as exact
//! strings over Q and as residue integers in [0, p) over GF(p); serde_json's
//! sorted object keys make every serialization byte-stable.

use serde_json::{json, Map, Value};

use crate::error::{GdetError, Result};
use crate::lab::LabReport;
use crate::matrix::DenseMatrix;
use crate::operator::{LinearOperator, MonomialSpec};
use crate::perm::PermutationSpec;
use crate::scalar::{FieldTag, Scalar};
use crate::stab::{MembershipEvidence, MembershipVerdict};

pub fn field_to_json(field: FieldTag) -> Value {
    match field {
        FieldTag::Rationals => Value::String("Q".into()),
        FieldTag::Prime(p) => json!({ "p": p }),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldTag> {
    match v {
        Value::String(s) if s == "Q" => Ok(FieldTag::Rationals),
        Value::Object(map) => {
            let p = map
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| GdetError::Parse("field object needs an integer \"p\"".into()))?;
            FieldTag::prime(p)
        }
        other => Err(GdetError::Parse(format!(
            "field must be \"Q\" or {{\"p\": prime}}, got {other}"
        ))),
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rat(_) => Value::String(s.to_string()),
        Scalar::Mod { val, .. } => json!(val),
    }
}

pub fn scalar_from_json(v: &Value, field: FieldTag) -> Result<Scalar> {
    match (field, v) {
        (FieldTag::Rationals, Value::String(s)) => Scalar::parse(s, field),
        (FieldTag::Rationals, Value::Number(n)) if n.is_i64() => {
            Ok(Scalar::from_i64(n.as_i64().unwrap(), field))
        }
        (FieldTag::Prime(p), Value::Number(n)) => {
            let val = n.as_u64().filter(|&val| val < p).ok_or_else(|| {
                GdetError::Parse(format!("prime-field entry {n} not an integer in [0, {p})"))
            })?;
            Ok(Scalar::Mod { val, p })
        }
        (_, other) => Err(GdetError::Parse(format!(
            "entry {other} does not match the field {field}"
        ))),
    }
}

pub fn matrix_to_json(m: &DenseMatrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| scalar_to_json(m.get(i, j))).collect()))
        .collect();
    json!({
        "field": field_to_json(m.field()),
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    })
}

fn get_usize(map: &Map<String, Value>, key: &str) -> Result<usize> {
    map.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| GdetError::Parse(format!("missing or non-integer \"{key}\"")))
}

pub fn matrix_from_json(v: &Value) -> Result<DenseMatrix> {
    let map = v
        .as_object()
        .ok_or_else(|| GdetError::Parse("matrix must be a JSON object".into()))?;
    let field = field_from_json(
        map.get("field")
            .ok_or_else(|| GdetError::Parse("matrix needs a \"field\"".into()))?,
    )?;
    let rows = get_usize(map, "rows")?;
    let cols = get_usize(map, "cols")?;
    let entries_v = map
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| GdetError::Parse("matrix needs an \"entries\" array".into()))?;
    if entries_v.len() != rows {
        return Err(GdetError::Parse(format!(
            "expected {rows} entry rows, got {}",
            entries_v.len()
        )));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in entries_v {
        let row = row
            .as_array()
            .filter(|r| r.len() == cols)
            .ok_or_else(|| GdetError::Parse(format!("each entry row must have {cols} values")))?;
        for e in row {
            entries.push(scalar_from_json(e, field)?);
        }
    }
    DenseMatrix::new(rows, cols, field, entries)
}

pub fn operator_to_json(t: &LinearOperator) -> Value {
    json!({
        "n": t.n(),
        "matrix": matrix_to_json(t.matrix()),
        "vec": "row-major",
    })
}

pub fn operator_from_json(v: &Value) -> Result<LinearOperator> {
    let map = v
        .as_object()
        .ok_or_else(|| GdetError::Parse("operator must be a JSON object".into()))?;
    let n = get_usize(map, "n")?;
    if let Some(vec) = map.get("vec") {
        if vec != "row-major" {
            return Err(GdetError::Parse(format!(
                "unsupported vectorization {vec}; only \"row-major\" exists"
            )));
        }
    }
    let matrix = matrix_from_json(
        map.get("matrix")
            .ok_or_else(|| GdetError::Parse("operator needs a \"matrix\"".into()))?,
    )?;
    LinearOperator::new(n, matrix)
}

pub fn monomial_spec_to_json(spec: &MonomialSpec) -> Value {
    json!({
        "field": field_to_json(spec.field()),
        "transpose": spec.transpose,
        "sigma": spec.sigma.one_based_images(),
        "tau": spec.tau.one_based_images(),
        "l": spec.l.iter().map(scalar_to_json).collect::<Vec<_>>(),
        "r": spec.r.iter().map(scalar_to_json).collect::<Vec<_>>(),
    })
}

pub fn monomial_spec_from_json(v: &Value) -> Result<MonomialSpec> {
    let map = v
        .as_object()
        .ok_or_else(|| GdetError::Parse("monomial spec must be a JSON object".into()))?;
    let field = field_from_json(
        map.get("field")
            .ok_or_else(|| GdetError::Parse("monomial spec needs a \"field\"".into()))?,
    )?;
    let transpose = map
        .get("transpose")
        .and_then(Value::as_bool)
        .ok_or_else(|| GdetError::Parse("missing boolean \"transpose\"".into()))?;
    let perm = |key: &str| -> Result<PermutationSpec> {
        let arr = map
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| GdetError::Parse(format!("missing image array \"{key}\"")))?;
        let images: Vec<usize> = arr
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|v| v as usize)
                    .ok_or_else(|| GdetError::Parse(format!("bad image in \"{key}\"")))
            })
            .collect::<Result<_>>()?;
        PermutationSpec::from_one_based(&images)
    };
    let scalars = |key: &str| -> Result<Vec<Scalar>> {
        map.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| GdetError::Parse(format!("missing scalar array \"{key}\"")))?
            .iter()
            .map(|x| scalar_from_json(x, field))
            .collect()
    };
    Ok(MonomialSpec {
        transpose,
        sigma: perm("sigma")?,
        tau: perm("tau")?,
        l: scalars("l")?,
        r: scalars("r")?,
    })
}

pub fn verdict_to_json(v: &MembershipVerdict) -> Value {
    let evidence = match &v.evidence {
        MembershipEvidence::Symbolic => Value::String("symbolic".into()),
        MembershipEvidence::Randomized {
            trials,
            error_bound,
        } => json!({
            "randomized": {
                "trials": trials,
                "error_bound": error_bound,
            }
        }),
    };
    json!({
        "member": v.member,
        "evidence": evidence,
        "witness": v.witness.as_ref().map(matrix_to_json).unwrap_or(Value::Null),
    })
}

/// Structured record for the extraction pipeline's violations; positions
/// are 1-based like every user-facing index.
pub fn violation_to_json(e: &GdetError) -> Value {
    match e {
        GdetError::NotMonomial { i, j, count } => json!({
            "violation": "not_monomial",
            "position": [i + 1, j + 1],
            "nonzero_count": count,
        }),
        GdetError::ParityViolation => json!({ "violation": "parity" }),
        GdetError::NotRankOne { i1, i2, j1, j2 } => json!({
            "violation": "not_rank_one",
            "rows": [i1 + 1, i2 + 1],
            "cols": [j1 + 1, j2 + 1],
        }),
        GdetError::ProductNotOne { product } => json!({
            "violation": "product_not_one",
            "product": product,
        }),
        GdetError::DegenerateParams => json!({ "violation": "degenerate_params" }),
        other => json!({ "violation": "error", "message": other.to_string() }),
    }
}

pub fn lab_report_to_json(r: &LabReport) -> Value {
    json!({
        "lemma": r.lemma,
        "space": r.space,
        "checked": r.checked,
        "hypothesis_hits": r.hypothesis_hits,
        "violations": r.violations,
        "ms": r.ms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip_q() {
        let q = FieldTag::Rationals;
        let m = DenseMatrix::new(
            2,
            2,
            q,
            vec![
                Scalar::parse("1/2", q).unwrap(),
                Scalar::from_i64(-3, q),
                Scalar::from_i64(0, q),
                Scalar::parse("7/5", q).unwrap(),
            ],
        )
        .unwrap();
        let v = matrix_to_json(&m);
        assert_eq!(matrix_from_json(&v).unwrap(), m);
        // byte-stable re-serialization
        let s1 = serde_json::to_string(&v).unwrap();
        let s2 = serde_json::to_string(&matrix_to_json(&matrix_from_json(&v).unwrap())).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn matrix_round_trip_gf() {
        let f = FieldTag::prime(10007).unwrap();
        let m = DenseMatrix::from_i64(2, 3, f, &[0, 1, 10006, 5, 17, 23]).unwrap();
        let v = matrix_to_json(&m);
        assert_eq!(matrix_from_json(&v).unwrap(), m);
    }

    #[test]
    fn rejects_bad_entries() {
        let bad = json!({
            "field": {"p": 7},
            "rows": 1,
            "cols": 1,
            "entries": [[7]],
        });
        assert!(matrix_from_json(&bad).is_err());
        let bad_field = json!({
            "field": {"p": 9},
            "rows": 1,
            "cols": 1,
            "entries": [[1]],
        });
        assert!(matches!(
            matrix_from_json(&bad_field),
            Err(GdetError::BadPrime(9))
        ));
        let float = json!({
            "field": "Q",
            "rows": 1,
            "cols": 1,
            "entries": [[1.5]],
        });
        assert!(matrix_from_json(&float).is_err());
    }

    #[test]
    fn operator_rejects_wrong_vec_convention() {
        let id = LinearOperator::identity(2, FieldTag::Rationals);
        let mut v = operator_to_json(&id);
        assert_eq!(operator_from_json(&v).unwrap(), id);
        v["vec"] = json!("column-major");
        assert!(operator_from_json(&v).is_err());
    }

    #[test]
    fn monomial_spec_round_trip() {
        use crate::perm::PermutationSpec;
        let f = FieldTag::prime(101).unwrap();
        let spec = MonomialSpec {
            transpose: true,
            sigma: PermutationSpec::from_images(vec![2, 0, 1]).unwrap(),
            tau: PermutationSpec::from_images(vec![1, 2, 0]).unwrap(),
            l: vec![
                Scalar::from_i64(1, f),
                Scalar::from_i64(50, f),
                Scalar::from_i64(3, f),
            ],
            r: vec![
                Scalar::from_i64(7, f),
                Scalar::from_i64(9, f),
                Scalar::from_i64(100, f),
            ],
        };
        let v = monomial_spec_to_json(&spec);
        assert_eq!(monomial_spec_from_json(&v).unwrap(), spec);
        // 1-based images on the wire
        assert_eq!(v["sigma"], json!([3, 1, 2]));
    }
}
