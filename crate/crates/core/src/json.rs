//! Self-describing JSON encodings of groups, elements, equations, solutions
//! and reduction instances.

use serde_json::{json, Map, Value};

use crate::dihedral::{DihedralElement, PartitionInstance};
use crate::equation::{Solution, SphericalEquation};
use crate::error::{Error, Result};
use crate::group::{CayleyTable, Family, GroupElement, GroupSpec};
use crate::highdim::{HeisenbergElement, Ut4Element};
use crate::mat2::{Mat2, MatType};
use crate::perm::{Permutation, ThreePartition};
use crate::semidirect::{SemidirectElement, XCoverInstance};

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn obj(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(format!("expected an object, got {v}")))
}

fn int(v: &Value) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad(format!("expected an integer, got {v}")))
}

fn uint(v: &Value) -> Result<u64> {
    v.as_u64().ok_or_else(|| bad(format!("expected a non-negative integer, got {v}")))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

fn int_list(v: &Value) -> Result<Vec<i64>> {
    v.as_array().ok_or_else(|| bad(format!("expected an array, got {v}")))?.iter().map(int).collect()
}

fn uint_list(v: &Value) -> Result<Vec<u64>> {
    v.as_array().ok_or_else(|| bad(format!("expected an array, got {v}")))?.iter().map(uint).collect()
}

fn reduce(v: i64, m: u64) -> u64 {
    (v as i128).rem_euclid(m as i128) as u64
}

fn sign_of(v: &Value) -> Result<i8> {
    match int(v)? {
        1 => Ok(1),
        -1 => Ok(-1),
        s => Err(Error::MalformedElement(format!("sign must be ±1, got {s}"))),
    }
}

pub fn parse(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

pub fn group_from_json(v: &Value) -> Result<GroupSpec> {
    let o = obj(v)?;
    let family = Family::from_name(field(o, "family")?.as_str().ok_or_else(|| bad("family must be a string"))?)?;
    let get = |k: &str| field(o, k).and_then(uint);
    let spec = match family {
        Family::Cayley => {
            let rows = field(o, "table")?
                .as_array()
                .ok_or_else(|| bad("table must be an array"))?
                .iter()
                .map(|r| uint_list(r).map(|r| r.into_iter().map(|x| x as usize).collect()))
                .collect::<Result<Vec<Vec<usize>>>>()?;
            GroupSpec::Cayley(CayleyTable::new(rows)?)
        }
        Family::Symmetric => GroupSpec::Symmetric { n: get("n")? as usize },
        Family::Alternating => GroupSpec::Alternating { n: get("n")? as usize },
        Family::Dihedral => GroupSpec::Dihedral { n: get("n")? },
        Family::Gl2p => GroupSpec::Gl2 { p: get("p")? },
        Family::Sl2p => GroupSpec::Sl2 { p: get("p")? },
        Family::Tl2p => GroupSpec::Tl2 { p: get("p")? },
        Family::Et2n => GroupSpec::Et2 { n: get("n").or_else(|_| get("p"))? },
        Family::Heisenberg => GroupSpec::Heisenberg { n: get("n")? as usize, p: get("p")? },
        Family::Ut4p => GroupSpec::Ut4 { p: get("p")? },
        Family::Semidirect => GroupSpec::Semidirect { m: get("m")?, k: get("k")? as usize },
    };
    spec.validate()?;
    Ok(spec)
}

pub fn group_to_json(g: &GroupSpec) -> Value {
    let family = g.family().name();
    match g {
        GroupSpec::Cayley(t) => json!({"family": family, "table": t.rows()}),
        GroupSpec::Symmetric { n } | GroupSpec::Alternating { n } => json!({"family": family, "n": n}),
        GroupSpec::Dihedral { n } | GroupSpec::Et2 { n } => json!({"family": family, "n": n}),
        GroupSpec::Gl2 { p } | GroupSpec::Sl2 { p } | GroupSpec::Tl2 { p } | GroupSpec::Ut4 { p } => {
            json!({"family": family, "p": p})
        }
        GroupSpec::Heisenberg { n, p } => json!({"family": family, "n": n, "p": p}),
        GroupSpec::Semidirect { m, k } => json!({"family": family, "m": m, "k": k}),
    }
}

fn matrix_modulus(g: &GroupSpec) -> Option<u64> {
    match *g {
        GroupSpec::Gl2 { p } | GroupSpec::Sl2 { p } | GroupSpec::Tl2 { p } => Some(p),
        GroupSpec::Et2 { n } => Some(n),
        _ => None,
    }
}

pub fn matrix_from_json(v: &Value, modulus: Option<u64>) -> Result<Mat2> {
    let o = obj(v)?;
    let p = match (o.get("p").map(uint).transpose()?, modulus) {
        (Some(p), Some(q)) if p != q => return Err(Error::ModulusMismatch(p, q)),
        (Some(p), _) | (None, Some(p)) => p,
        (None, None) => return Err(bad("matrix needs a modulus \"p\"")),
    };
    if p == 0 {
        return Err(Error::InvalidModulus("modulus must be positive".into()));
    }
    let rows = field(o, "rows")?.as_array().ok_or_else(|| bad("rows must be an array"))?;
    if rows.len() != 2 {
        return Err(Error::MalformedElement("a 2×2 matrix needs two rows".into()));
    }
    let r0 = int_list(&rows[0])?;
    let r1 = int_list(&rows[1])?;
    if r0.len() != 2 || r1.len() != 2 {
        return Err(Error::MalformedElement("a 2×2 matrix needs two entries per row".into()));
    }
    Ok(Mat2::from_signed(p, [[r0[0], r0[1]], [r1[0], r1[1]]]))
}

pub fn matrix_to_json(m: &Mat2) -> Value {
    json!({"p": m.modulus(), "rows": m.rows()})
}

pub fn element_from_json(g: &GroupSpec, v: &Value) -> Result<GroupElement> {
    let el = match g {
        GroupSpec::Cayley(_) => GroupElement::Index(
            u32::try_from(uint(v)?).map_err(|_| Error::MalformedElement("index out of range".into()))?,
        ),
        GroupSpec::Symmetric { n } | GroupSpec::Alternating { n } => {
            let o = obj(v)?;
            let images: Vec<usize> = uint_list(field(o, "images")?)?.into_iter().map(|x| x as usize).collect();
            if let Some(d) = o.get("n") {
                if uint(d)? as usize != images.len() {
                    return Err(Error::MalformedElement("n differs from the number of images".into()));
                }
            }
            if images.len() != *n {
                return Err(Error::DegreeMismatch(images.len(), *n));
            }
            GroupElement::Perm(Permutation::from_images(&images)?)
        }
        GroupSpec::Dihedral { n } => {
            let o = obj(v)?;
            GroupElement::Dihedral(DihedralElement::from_signed(*n, int(field(o, "k")?)?, sign_of(field(o, "delta")?)?))
        }
        GroupSpec::Gl2 { .. } | GroupSpec::Sl2 { .. } | GroupSpec::Tl2 { .. } | GroupSpec::Et2 { .. } => {
            GroupElement::Matrix(matrix_from_json(v, matrix_modulus(g))?)
        }
        GroupSpec::Heisenberg { n, p } => {
            let o = obj(v)?;
            let a1 = int_list(field(o, "alpha1")?)?;
            let a3 = int_list(field(o, "alpha3")?)?;
            if a1.len() != n - 2 || a3.len() != n - 2 {
                return Err(Error::DimensionMismatch(format!("vectors must have length {}", n - 2)));
            }
            let r = |xs: Vec<i64>| xs.into_iter().map(|x| reduce(x, *p)).collect();
            GroupElement::Heisenberg(HeisenbergElement::new(*p, r(a1), reduce(int(field(o, "a2")?)?, *p), r(a3)))
        }
        GroupSpec::Ut4 { p } => {
            let e = int_list(field(obj(v)?, "entries")?)?;
            let e: [i64; 6] = e.try_into().map_err(|_| Error::MalformedElement("UT(4) needs 6 entries".into()))?;
            GroupElement::Ut4(Ut4Element::new(*p, e.map(|x| reduce(x, *p))))
        }
        GroupSpec::Semidirect { m, k } => {
            let o = obj(v)?;
            let vec = int_list(field(o, "vec")?)?;
            if vec.len() != *k {
                return Err(Error::DimensionMismatch(format!("vector must have length {k}")));
            }
            GroupElement::Semidirect(SemidirectElement::from_signed(*m, &vec, sign_of(field(o, "sign")?)?))
        }
    };
    g.check_member(&el)?;
    Ok(el)
}

pub fn element_to_json(el: &GroupElement) -> Value {
    match el {
        GroupElement::Index(i) => json!(i),
        GroupElement::Perm(s) => json!({"n": s.degree(), "images": s.images()}),
        GroupElement::Dihedral(d) => json!({"k": d.k(), "delta": d.delta()}),
        GroupElement::Matrix(m) => matrix_to_json(m),
        GroupElement::Heisenberg(h) => json!({"alpha1": h.alpha1(), "a2": h.a2(), "alpha3": h.alpha3()}),
        GroupElement::Ut4(u) => json!({"entries": u.entries()}),
        GroupElement::Semidirect(s) => json!({"vec": s.vec(), "sign": s.sign()}),
    }
}

pub fn equation_from_json(v: &Value) -> Result<SphericalEquation> {
    let o = obj(v)?;
    let g = group_from_json(field(o, "group")?)?;
    let constants = field(o, "constants")?
        .as_array()
        .ok_or_else(|| bad("constants must be an array"))?
        .iter()
        .map(|c| element_from_json(&g, c))
        .collect::<Result<Vec<_>>>()?;
    let rhs = match o.get("rhs") {
        None | Some(Value::Null) => None,
        Some(r) => Some(element_from_json(&g, r)?),
    };
    SphericalEquation::new(g, constants, rhs)
}

pub fn equation_to_json(eq: &SphericalEquation) -> Value {
    json!({
        "group": group_to_json(eq.group()),
        "constants": eq.constants().iter().map(element_to_json).collect::<Vec<_>>(),
        "rhs": eq.rhs().map(element_to_json),
    })
}

/// Accepts `{"conjugators": [...]}` or a bare array.
pub fn solution_from_json(g: &GroupSpec, v: &Value) -> Result<Solution> {
    let arr = match v {
        Value::Array(a) => a,
        _ => field(obj(v)?, "conjugators")?.as_array().ok_or_else(|| bad("conjugators must be an array"))?,
    };
    Ok(Solution::new(arr.iter().map(|z| element_from_json(g, z)).collect::<Result<Vec<_>>>()?))
}

pub fn solution_to_json(sol: &Solution) -> Value {
    json!({"conjugators": sol.conjugators.iter().map(element_to_json).collect::<Vec<_>>()})
}

pub fn three_partition_from_json(v: &Value) -> Result<ThreePartition> {
    Ok(ThreePartition::new(uint_list(field(obj(v)?, "a")?)?))
}

pub fn partition_from_json(v: &Value) -> Result<PartitionInstance> {
    Ok(PartitionInstance::new(uint_list(field(obj(v)?, "a")?)?))
}

/// `{"k": 4, "subsets": [[1,2,3],[4]]}` with an optional `"m"`.
pub fn xcover_from_json(v: &Value) -> Result<(XCoverInstance, Option<u64>)> {
    let o = obj(v)?;
    let k = uint(field(o, "k")?)? as usize;
    let subsets = field(o, "subsets")?
        .as_array()
        .ok_or_else(|| bad("subsets must be an array"))?
        .iter()
        .map(|s| uint_list(s).map(|s| s.into_iter().map(|x| x as usize).collect()))
        .collect::<Result<Vec<Vec<usize>>>>()?;
    Ok((XCoverInstance::new(k, subsets), o.get("m").map(uint).transpose()?))
}

pub fn classification_to_json(m: &Mat2, t: &MatType) -> Value {
    use crate::mat2::EigenData;
    let eigen = match t.eigen {
        EigenData::Scalar(s) | EigenData::Repeated(s) => json!([s, s]),
        EigenData::Split(a, b) => json!([a, b]),
        EigenData::Extension(a, b) => json!({"xi": a.xi(), "roots": [[a.a, a.b], [b.a, b.b]]}),
    };
    json!({
        "type": t.tag.name(),
        "matrix": matrix_to_json(m),
        "trace": m.trace(),
        "det": m.det(),
        "canonical": matrix_to_json(&t.canonical),
        "basis": matrix_to_json(&t.basis),
        "eigenvalues": eigen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let texts = [
            r#"{"group":{"family":"symmetric","n":3},"constants":[{"images":[2,1,3]},{"images":[2,1,3]}]}"#,
            r#"{"group":{"family":"dihedral","n":5},"constants":[{"k":2,"delta":-1}],"rhs":{"k":-1,"delta":-1}}"#,
            r#"{"group":{"family":"gl2p","p":7},"constants":[{"p":7,"rows":[[1,2],[3,4]]}]}"#,
            r#"{"group":{"family":"heisenberg","n":4,"p":5},"constants":[{"alpha1":[1,2],"a2":3,"alpha3":[0,1]}]}"#,
            r#"{"group":{"family":"ut4p","p":3},"constants":[{"entries":[1,2,0,1,1,2]}]}"#,
            r#"{"group":{"family":"semidirect","m":5,"k":2},"constants":[{"vec":[1,4],"sign":-1}]}"#,
            r#"{"group":{"family":"cayley","table":[[0,1],[1,0]]},"constants":[1,1]}"#,
        ];
        for t in texts {
            let eq = equation_from_json(&parse(t).unwrap()).unwrap();
            let back = equation_from_json(&equation_to_json(&eq)).unwrap();
            assert_eq!(back.constants(), eq.constants());
            assert_eq!(back.rhs(), eq.rhs());
        }
    }

    #[test]
    fn rejects_bad_input() {
        let bad_sign = r#"{"group":{"family":"dihedral","n":5},"constants":[{"k":2,"delta":0}]}"#;
        assert!(equation_from_json(&parse(bad_sign).unwrap()).is_err());
        let wrong_p = r#"{"group":{"family":"gl2p","p":7},"constants":[{"p":5,"rows":[[1,0],[0,1]]}]}"#;
        assert_eq!(equation_from_json(&parse(wrong_p).unwrap()).unwrap_err(), Error::ModulusMismatch(5, 7));
        let singular = r#"{"group":{"family":"gl2p","p":7},"constants":[{"rows":[[1,1],[1,1]]}]}"#;
        assert!(equation_from_json(&parse(singular).unwrap()).is_err());
        assert!(parse("{").is_err());
    }
}
