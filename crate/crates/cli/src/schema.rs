//! On-disk document format: JSON with exact scalars.
//!
//! Every scalar is either a rational written as a string ("3", "-1/2") or
//! a JSON integer, or a 4-element array of rationals giving coordinates
//! over the basis {1, i, sqrt(d), i*sqrt(d)}. Floats are rejected.
//!
//! Matrices are objects {"rows": r, "cols": c, "entries": [[..], ..]}
//! with `entries` listing rows; `entries` may be omitted for the zero
//! matrix. Subspace bases are column spans, matching the library.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Map, Value};

use hodge_core::complexes::{CycleData, LatticeComplex, MhsComplex, SimplicialDatum};
use hodge_core::descent::{GluingCycles, GluingSpec};
use hodge_core::mhs::{Mhs, Pure};
use hodge_core::{Matrix, Rat, Scalar};

use crate::CliError;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug)]
pub struct OneMotiveDoc {
    pub p: i64,
    pub abelian: Pure,
    /// Column j holds the value of the j-th lattice generator, in the
    /// coordinates of the abelian part.
    pub values: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug)]
pub enum Payload {
    Mhs(Mhs),
    Complex(MhsComplex),
    Simplicial(SimplicialDatum),
    Gluing(GluingSpec),
    OneMotive(OneMotiveDoc),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Mhs(_) => "mhs",
            Payload::Complex(_) => "complex",
            Payload::Simplicial(_) => "simplicial-datum",
            Payload::Gluing(_) => "gluing",
            Payload::OneMotive(_) => "one-motive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Document {
    pub d: u64,
    pub payload: Payload,
}

type PResult<T> = Result<T, CliError>;

fn perr(path: &str, msg: impl AsRef<str>) -> CliError {
    CliError::Parse(format!("{}: {}", path, msg.as_ref()))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> PResult<&'a Value> {
    obj.get(key)
        .ok_or_else(|| perr(path, format!("missing field \"{}\"", key)))
}

fn as_obj<'a>(v: &'a Value, path: &str) -> PResult<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| perr(path, "expected an object"))
}

fn as_arr<'a>(v: &'a Value, path: &str) -> PResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(path, "expected an array"))
}

fn as_i64(v: &Value, path: &str) -> PResult<i64> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .ok_or_else(|| perr(path, "expected an integer; exact rationals required")),
        _ => Err(perr(path, "expected an integer")),
    }
}

fn as_usize(v: &Value, path: &str) -> PResult<usize> {
    let n = as_i64(v, path)?;
    usize::try_from(n).map_err(|_| perr(path, "expected a non-negative integer"))
}

fn rat_from_str(s: &str, path: &str) -> PResult<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| perr(path, format!("bad rational \"{}\"", s)))?;
    let d = BigInt::from_str(den).map_err(|_| perr(path, format!("bad rational \"{}\"", s)))?;
    if d == BigInt::from(0) {
        return Err(perr(path, format!("zero denominator in \"{}\"", s)));
    }
    Ok(BigRational::new(n, d))
}

fn rat_from_value(v: &Value, path: &str) -> PResult<Rat> {
    match v {
        Value::Number(n) => {
            if let Some(k) = n.as_i64() {
                Ok(BigRational::from_integer(BigInt::from(k)))
            } else {
                Err(perr(path, "exact rationals required (floats are not accepted)"))
            }
        }
        Value::String(s) => rat_from_str(s, path),
        _ => Err(perr(path, "expected a rational as \"a/b\" or an integer")),
    }
}

pub fn scalar_from_value(v: &Value, d: u64, path: &str) -> PResult<Scalar> {
    match v {
        Value::Array(parts) => {
            if parts.len() != 4 {
                return Err(perr(path, "extended scalar must have 4 components"));
            }
            let a = rat_from_value(&parts[0], path)?;
            let b = rat_from_value(&parts[1], path)?;
            let c = rat_from_value(&parts[2], path)?;
            let e = rat_from_value(&parts[3], path)?;
            if d == 1 && (c != BigRational::from_integer(BigInt::from(0)) || e != BigRational::from_integer(BigInt::from(0))) {
                return Err(perr(path, "radical components require a document field d > 1"));
            }
            Ok(Scalar::new(a, b, c, e, d))
        }
        _ => Ok(Scalar::from_rat(rat_from_value(v, path)?)),
    }
}

pub fn matrix_from_value(v: &Value, d: u64, path: &str) -> PResult<Matrix> {
    let obj = as_obj(v, path)?;
    let rows = as_usize(get(obj, "rows", path)?, &format!("{}.rows", path))?;
    let cols = as_usize(get(obj, "cols", path)?, &format!("{}.cols", path))?;
    let mut m = Matrix::zero(rows, cols);
    if let Some(entries) = obj.get("entries") {
        let rs = as_arr(entries, &format!("{}.entries", path))?;
        if rs.len() != rows {
            return Err(perr(path, format!("expected {} rows, found {}", rows, rs.len())));
        }
        for (i, row) in rs.iter().enumerate() {
            let rpath = format!("{}.entries[{}]", path, i);
            let cells = as_arr(row, &rpath)?;
            if cells.len() != cols {
                return Err(perr(&rpath, format!("expected {} columns, found {}", cols, cells.len())));
            }
            for (j, cell) in cells.iter().enumerate() {
                m[(i, j)] = scalar_from_value(cell, d, &format!("{}[{}]", rpath, j))?;
            }
        }
    }
    Ok(m)
}

fn keyed_list<T>(
    v: &Value,
    path: &str,
    mut f: impl FnMut(&Value, &str) -> PResult<T>,
) -> PResult<Vec<(i64, T)>> {
    let arr = as_arr(v, path)?;
    let mut out = Vec::new();
    for (idx, item) in arr.iter().enumerate() {
        let ipath = format!("{}[{}]", path, idx);
        let pair = as_arr(item, &ipath)?;
        if pair.len() != 2 {
            return Err(perr(&ipath, "expected a [key, value] pair"));
        }
        let k = as_i64(&pair[0], &format!("{}[0]", ipath))?;
        let t = f(&pair[1], &format!("{}[1]", ipath))?;
        out.push((k, t));
    }
    Ok(out)
}

fn mhs_from_value(v: &Value, d: u64, path: &str) -> PResult<Mhs> {
    let obj = as_obj(v, path)?;
    let rank = as_usize(get(obj, "rank", path)?, &format!("{}.rank", path))?;
    let weight = keyed_list(get(obj, "weight", path)?, &format!("{}.weight", path), |m, p| {
        matrix_from_value(m, d, p)
    })?;
    let hodge = keyed_list(get(obj, "hodge", path)?, &format!("{}.hodge", path), |m, p| {
        matrix_from_value(m, d, p)
    })?;
    Ok(Mhs::new(rank, d, weight, hodge))
}

fn pure_from_value(v: &Value, d: u64, path: &str) -> PResult<Pure> {
    let obj = as_obj(v, path)?;
    let weight = as_i64(get(obj, "weight", path)?, &format!("{}.weight", path))?;
    let mhs = mhs_from_value(get(obj, "mhs", path)?, d, &format!("{}.mhs", path))?;
    Pure::new(mhs, weight).map_err(CliError::from)
}

fn lattice_complex_from_value(v: &Value, d: u64, path: &str) -> PResult<LatticeComplex> {
    let obj = as_obj(v, path)?;
    let ranks = keyed_list(get(obj, "ranks", path)?, &format!("{}.ranks", path), as_usize)?;
    let diffs = keyed_list(get(obj, "diffs", path)?, &format!("{}.diffs", path), |m, p| {
        matrix_from_value(m, d, p)
    })?;
    Ok(LatticeComplex {
        ranks: ranks.into_iter().collect(),
        diffs: diffs.into_iter().collect(),
    })
}

fn gluing_cycles_from_value(v: &Value, d: u64, path: &str) -> PResult<GluingCycles> {
    let obj = as_obj(v, path)?;
    Ok(GluingCycles {
        p: as_i64(get(obj, "p", path)?, &format!("{}.p", path))?,
        class_map_y: matrix_from_value(get(obj, "class_map_y", path)?, d, &format!("{}.class_map_y", path))?,
        class_map_z: matrix_from_value(get(obj, "class_map_z", path)?, d, &format!("{}.class_map_z", path))?,
        ns_restriction: matrix_from_value(
            get(obj, "ns_restriction", path)?,
            d,
            &format!("{}.ns_restriction", path),
        )?,
        aj: matrix_from_value(get(obj, "aj", path)?, d, &format!("{}.aj", path))?,
    })
}

fn gluing_from_value(v: &Value, d: u64, path: &str) -> PResult<GluingSpec> {
    let obj = as_obj(v, path)?;
    let y = keyed_list(get(obj, "y", path)?, &format!("{}.y", path), |x, p| {
        pure_from_value(x, d, p)
    })?;
    let z = keyed_list(get(obj, "z", path)?, &format!("{}.z", path), |x, p| {
        pure_from_value(x, d, p)
    })?;
    let restriction = keyed_list(
        get(obj, "restriction", path)?,
        &format!("{}.restriction", path),
        |m, p| matrix_from_value(m, d, p),
    )?;
    let cycles = match obj.get("cycles") {
        None | Some(Value::Null) => None,
        Some(c) => Some(gluing_cycles_from_value(c, d, &format!("{}.cycles", path))?),
    };
    Ok(GluingSpec {
        d,
        y: y.into_iter().collect(),
        z: z.into_iter().collect(),
        restriction: restriction.into_iter().collect(),
        cycles,
    })
}

fn cycle_data_from_value(v: &Value, d: u64, path: &str) -> PResult<CycleData> {
    let obj = as_obj(v, path)?;
    let p = as_i64(get(obj, "p", path)?, &format!("{}.p", path))?;
    let ns = lattice_complex_from_value(get(obj, "ns", path)?, d, &format!("{}.ns", path))?;
    let class_maps = keyed_list(
        get(obj, "class_maps", path)?,
        &format!("{}.class_maps", path),
        |m, pth| matrix_from_value(m, d, pth),
    )?;
    let aj = keyed_list(get(obj, "aj", path)?, &format!("{}.aj", path), |m, pth| {
        matrix_from_value(m, d, pth)
    })?;
    Ok(CycleData {
        p,
        ns,
        class_maps: class_maps.into_iter().collect(),
        aj: aj.into_iter().collect(),
    })
}

fn simplicial_from_value(v: &Value, d: u64, path: &str) -> PResult<SimplicialDatum> {
    let obj = as_obj(v, path)?;
    let mut components: Vec<BTreeMap<i64, Pure>> = Vec::new();
    for (s, level) in as_arr(get(obj, "components", path)?, &format!("{}.components", path))?
        .iter()
        .enumerate()
    {
        let lp = format!("{}.components[{}]", path, s);
        let terms = keyed_list(level, &lp, |x, p| pure_from_value(x, d, p))?;
        components.push(terms.into_iter().collect());
    }
    let mut faces: Vec<BTreeMap<i64, Vec<Matrix>>> = Vec::new();
    for (s, level) in as_arr(get(obj, "faces", path)?, &format!("{}.faces", path))?
        .iter()
        .enumerate()
    {
        let lp = format!("{}.faces[{}]", path, s);
        let maps = keyed_list(level, &lp, |x, p| {
            let arr = as_arr(x, p)?;
            arr.iter()
                .enumerate()
                .map(|(k, m)| matrix_from_value(m, d, &format!("{}[{}]", p, k)))
                .collect::<PResult<Vec<Matrix>>>()
        })?;
        faces.push(maps.into_iter().collect());
    }
    let cycle_data = match obj.get("cycle_data") {
        None | Some(Value::Null) => None,
        Some(c) => Some(cycle_data_from_value(c, d, &format!("{}.cycle_data", path))?),
    };
    Ok(SimplicialDatum { d, components, faces, cycle_data })
}

fn one_motive_from_value(v: &Value, d: u64, path: &str) -> PResult<OneMotiveDoc> {
    let obj = as_obj(v, path)?;
    let p = as_i64(get(obj, "p", path)?, &format!("{}.p", path))?;
    let abelian = pure_from_value(get(obj, "abelian", path)?, d, &format!("{}.abelian", path))?;
    let mut values = Vec::new();
    for (j, col) in as_arr(get(obj, "values", path)?, &format!("{}.values", path))?
        .iter()
        .enumerate()
    {
        let cpath = format!("{}.values[{}]", path, j);
        let cells = as_arr(col, &cpath)?;
        if cells.len() != abelian.rank() {
            return Err(perr(&cpath, format!("value must have {} coordinates", abelian.rank())));
        }
        let mut vcol = Vec::new();
        for (k, cell) in cells.iter().enumerate() {
            vcol.push(scalar_from_value(cell, d, &format!("{}[{}]", cpath, k))?);
        }
        values.push(vcol);
    }
    Ok(OneMotiveDoc { p, abelian, values })
}

/// Parse and fully validate a document from its JSON text.
pub fn parse_document(text: &str) -> PResult<Document> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e)))?;
    let obj = as_obj(&v, "document")?;
    let schema = as_usize(get(obj, "schema", "document")?, "document.schema")? as u64;
    if schema != SCHEMA_VERSION {
        return Err(perr("document.schema", format!("unsupported schema version {}", schema)));
    }
    let d = as_usize(get(obj, "d", "document")?, "document.d")? as u64;
    if d == 0 {
        return Err(perr("document.d", "d must be a positive square-free integer"));
    }
    for q in 2..=((d as f64).sqrt() as u64 + 1) {
        if q * q <= d && d % (q * q) == 0 {
            return Err(perr("document.d", format!("{} is not square-free", d)));
        }
    }
    let kind = get(obj, "kind", "document")?
        .as_str()
        .ok_or_else(|| perr("document.kind", "expected a string"))?;
    let pv = get(obj, "payload", "document")?;
    let payload = match kind {
        "mhs" => Payload::Mhs(mhs_from_value(pv, d, "payload")?),
        "complex" => {
            let obj = as_obj(pv, "payload")?;
            let terms = keyed_list(get(obj, "terms", "payload")?, "payload.terms", |x, p| {
                mhs_from_value(x, d, p)
            })?;
            let diffs = keyed_list(get(obj, "diffs", "payload")?, "payload.diffs", |m, p| {
                matrix_from_value(m, d, p)
            })?;
            Payload::Complex(MhsComplex {
                d,
                terms: terms.into_iter().collect(),
                diffs: diffs.into_iter().collect(),
            })
        }
        "simplicial-datum" => Payload::Simplicial(simplicial_from_value(pv, d, "payload")?),
        "gluing" => Payload::Gluing(gluing_from_value(pv, d, "payload")?),
        "one-motive" => Payload::OneMotive(one_motive_from_value(pv, d, "payload")?),
        other => return Err(perr("document.kind", format!("unknown kind \"{}\"", other))),
    };
    let doc = Document { d, payload };
    validate_document(&doc)?;
    Ok(doc)
}

/// Run the payload's own validator; errors map to exit code 2.
pub fn validate_document(doc: &Document) -> PResult<()> {
    match &doc.payload {
        Payload::Mhs(h) => {
            let rep = h.validate();
            if !rep.is_valid() {
                return Err(CliError::Validation(format!(
                    "not a valid mixed Hodge structure: {}",
                    rep.issues.join("; ")
                )));
            }
        }
        Payload::Complex(c) => c.validate().map_err(CliError::from)?,
        Payload::Simplicial(s) => s.validate().map_err(CliError::from)?,
        Payload::Gluing(g) => {
            hodge_core::descent::cech_two_gluing(g).map_err(CliError::from)?;
        }
        Payload::OneMotive(_) => {
            // the pure part was validated during construction; value shape
            // was checked during parsing
        }
    }
    Ok(())
}

// ---- serialization ----

fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn scalar_to_value(s: &Scalar) -> Value {
    let [a, b, c, e] = s.components();
    if s.is_rational() {
        Value::String(rat_to_string(&a))
    } else {
        json!([rat_to_string(&a), rat_to_string(&b), rat_to_string(&c), rat_to_string(&e)])
    }
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    let mut rows = Vec::new();
    for i in 0..m.rows {
        let mut row = Vec::new();
        for j in 0..m.cols {
            row.push(scalar_to_value(&m[(i, j)]));
        }
        rows.push(Value::Array(row));
    }
    json!({ "rows": m.rows, "cols": m.cols, "entries": rows })
}

fn keyed_to_value<T>(items: impl IntoIterator<Item = (i64, T)>, f: impl Fn(&T) -> Value) -> Value {
    Value::Array(
        items
            .into_iter()
            .map(|(k, t)| json!([k, f(&t)]))
            .collect(),
    )
}

fn mhs_to_value(h: &Mhs) -> Value {
    json!({
        "rank": h.rank,
        "weight": keyed_to_value(h.weight.iter().map(|(k, m)| (*k, m.clone())), |m| matrix_to_value(m)),
        "hodge": keyed_to_value(h.hodge.iter().map(|(k, m)| (*k, m.clone())), |m| matrix_to_value(m)),
    })
}

fn pure_to_value(p: &Pure) -> Value {
    json!({ "weight": p.weight, "mhs": mhs_to_value(&p.mhs) })
}

fn cycle_data_to_value(c: &CycleData) -> Value {
    json!({
        "p": c.p,
        "ns": {
            "ranks": keyed_to_value(c.ns.ranks.iter().map(|(k, r)| (*k, *r)), |r| json!(r)),
            "diffs": keyed_to_value(c.ns.diffs.iter().map(|(k, m)| (*k, m.clone())), |m| matrix_to_value(m)),
        },
        "class_maps": keyed_to_value(c.class_maps.iter().map(|(k, m)| (*k, m.clone())), |m| matrix_to_value(m)),
        "aj": keyed_to_value(c.aj.iter().map(|(k, m)| (*k, m.clone())), |m| matrix_to_value(m)),
    })
}

pub fn payload_to_value(p: &Payload) -> Value {
    match p {
        Payload::Mhs(h) => mhs_to_value(h),
        Payload::Complex(c) => json!({
            "terms": keyed_to_value(c.terms.iter().map(|(k, m)| (*k, m.clone())), |m| mhs_to_value(m)),
            "diffs": keyed_to_value(c.diffs.iter().map(|(k, m)| (*k, m.clone())), |m| matrix_to_value(m)),
        }),
        Payload::Simplicial(s) => json!({
            "components": s.components.iter().map(|level| {
                keyed_to_value(level.iter().map(|(k, p)| (*k, p.clone())), |p| pure_to_value(p))
            }).collect::<Vec<_>>(),
            "faces": s.faces.iter().map(|level| {
                keyed_to_value(level.iter().map(|(k, ms)| (*k, ms.clone())), |ms| {
                    Value::Array(ms.iter().map(matrix_to_value).collect())
                })
            }).collect::<Vec<_>>(),
            "cycle_data": s.cycle_data.as_ref().map(cycle_data_to_value).unwrap_or(Value::Null),
        }),
        Payload::Gluing(g) => json!({
            "y": keyed_to_value(g.y.iter().map(|(k, p)| (*k, p.clone())), |p| pure_to_value(p)),
            "z": keyed_to_value(g.z.iter().map(|(k, p)| (*k, p.clone())), |p| pure_to_value(p)),
            "restriction": keyed_to_value(g.restriction.iter().map(|(k, m)| (*k, m.clone())), |m| matrix_to_value(m)),
            "cycles": g.cycles.as_ref().map(|c| json!({
                "p": c.p,
                "class_map_y": matrix_to_value(&c.class_map_y),
                "class_map_z": matrix_to_value(&c.class_map_z),
                "ns_restriction": matrix_to_value(&c.ns_restriction),
                "aj": matrix_to_value(&c.aj),
            })).unwrap_or(Value::Null),
        }),
        Payload::OneMotive(m) => json!({
            "p": m.p,
            "abelian": pure_to_value(&m.abelian),
            "values": m.values.iter().map(|col| {
                Value::Array(col.iter().map(scalar_to_value).collect())
            }).collect::<Vec<_>>(),
        }),
    }
}

pub fn document_to_value(doc: &Document) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "d": doc.d,
        "kind": doc.payload.kind(),
        "payload": payload_to_value(&doc.payload),
    })
}

pub fn serialize_document(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(&document_to_value(doc)).expect("serialization");
    s.push('\n');
    s
}
