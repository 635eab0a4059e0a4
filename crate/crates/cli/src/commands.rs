//! Command execution: each command turns a document into a report with a
//! machine-readable JSON body; the human-readable text is derived from it.

use std::fmt::Write as _;

use serde_json::{json, Value};

use hodge_core::complexes::{motivic_square_check, weight_graded};
use hodge_core::descent::{cech_two_gluing, mv_cohomology, MvAnalysis};
use hodge_core::mhs::{hodge_numbers, Mhs};
use hodge_core::motive::{hodge_motive, realize_one_motive, HodgeMotive, Order, TorusPoint, TorusPresentation};
use hodge_core::spaces::MembershipMode;

use crate::schema::{self, Document, Payload};
use crate::CliError;

pub struct Report {
    pub human: String,
    pub machine: Value,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Flags {
    pub p: Option<i64>,
    pub n: Option<i64>,
    pub mode: MembershipMode,
}

fn need_p(flags: &Flags) -> Result<i64, CliError> {
    flags
        .p
        .ok_or_else(|| CliError::Validation("this command requires -p <level>".into()))
}

fn finish(command: &str, mut body: Value, human: String) -> Report {
    if let Some(obj) = body.as_object_mut() {
        obj.insert("schema".into(), json!(schema::SCHEMA_VERSION));
        obj.insert("command".into(), json!(command));
    }
    Report { human, machine: body }
}

fn hodge_table(h: &Mhs) -> Result<Value, CliError> {
    let hn = hodge_numbers(h)?;
    Ok(Value::Array(
        hn.iter().map(|(&(p, q), &dim)| json!([p, q, dim])).collect(),
    ))
}

fn hodge_table_text(h: &Mhs) -> Result<String, CliError> {
    let hn = hodge_numbers(h)?;
    if hn.is_empty() {
        return Ok("  (zero)".into());
    }
    let mut out = String::new();
    for ((p, q), dim) in &hn {
        writeln!(out, "  h^({},{}) = {}", p, q, dim).unwrap();
    }
    Ok(out.trim_end().to_string())
}

fn point_json(t: &TorusPresentation, pt: &TorusPoint) -> Result<Value, CliError> {
    let order = match t.point_order(pt)? {
        Order::Finite(n) => json!(n.to_string()),
        Order::Infinite => json!("infinite"),
    };
    Ok(json!({
        "coordinates": pt.rep.iter().map(schema::scalar_to_value).collect::<Vec<_>>(),
        "order": order,
    }))
}

fn motive_json(m: &HodgeMotive) -> Result<Value, CliError> {
    let torus = &m.motive.abelian;
    let tp = &m.motive.torus;
    let mut values = Vec::new();
    for v in &m.motive.values {
        values.push(point_json(tp, v)?);
    }
    let _ = torus;
    Ok(json!({
        "lattice_rank": m.motive.lattice_basis.cols,
        "abelian_rank": m.motive.abelian.rank(),
        "hodge_class_rank": m.hodge_basis.cols,
        "strict_kernel_rank": m.kernel_e.cols,
        "values": values,
        "level": m.motive.p,
    }))
}

fn motive_text(m: &HodgeMotive) -> String {
    let n = m.motive.lattice_basis.cols;
    let a = m.motive.abelian.rank();
    let mut out = format!(
        "motive: lattice rank {}, abelian part {}, full Hodge classes {}\n",
        n,
        a,
        m.hodge_basis.cols
    );
    if a == 0 {
        writeln!(out, "  shape: [Z^{} -> 0]  (lattice rank {} \u{2192} 0)", n, n).unwrap();
    } else {
        writeln!(out, "  shape: [Z^{} -> abelian part of rank {}]", n, a).unwrap();
    }
    writeln!(out, "  strict kernel of e^p: rank {}", m.kernel_e.cols).unwrap();
    out.trim_end().to_string()
}

pub fn run(command: &str, doc: &Document, flags: &Flags) -> Result<Report, CliError> {
    match command {
        "validate" => cmd_validate(doc),
        "hodge-numbers" => cmd_hodge_numbers(doc),
        "motive" => cmd_motive(doc, flags),
        "glue" => cmd_glue(doc),
        "square-check" => cmd_square_check(doc, flags),
        "realize" => cmd_realize(doc, flags),
        other => Err(CliError::Validation(format!("unknown command {}", other))),
    }
}

fn cmd_validate(doc: &Document) -> Result<Report, CliError> {
    // parsing already ran the validators; report the bookkeeping
    schema::validate_document(doc)?;
    let mut body = json!({ "kind": doc.payload.kind(), "ok": true, "d": doc.d });
    let mut human = format!("OK: valid {} document (d = {})\n", doc.payload.kind(), doc.d);
    if let Payload::Mhs(h) = &doc.payload {
        let rep = h.validate();
        body["weights"] = Value::Array(
            rep.weight_bookkeeping
                .iter()
                .map(|(k, r, pieces)| {
                    json!({
                        "weight": k,
                        "rank": r,
                        "types": pieces.iter().map(|(p, q, dim)| json!([p, q, dim])).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        );
        for (k, r, _) in &rep.weight_bookkeeping {
            writeln!(human, "  gr^W_{}: rank {}", k, r).unwrap();
        }
    }
    Ok(finish("validate", body, human.trim_end().to_string()))
}

fn cmd_hodge_numbers(doc: &Document) -> Result<Report, CliError> {
    match &doc.payload {
        Payload::Mhs(h) => {
            let body = json!({ "kind": "mhs", "hodge_numbers": hodge_table(h)? });
            let human = format!("Hodge numbers:\n{}", hodge_table_text(h)?);
            Ok(finish("hodge-numbers", body, human))
        }
        Payload::Complex(c) => {
            let mut rows = Vec::new();
            let mut human = String::from("Hodge numbers per degree:\n");
            for (&i, h) in &c.terms {
                rows.push(json!({ "degree": i, "hodge_numbers": hodge_table(h)? }));
                writeln!(human, " degree {}:", i).unwrap();
                writeln!(human, "{}", hodge_table_text(h)?).unwrap();
            }
            Ok(finish(
                "hodge-numbers",
                json!({ "kind": "complex", "terms": rows }),
                human.trim_end().to_string(),
            ))
        }
        Payload::Gluing(g) => {
            let mut rows = Vec::new();
            let mut human = String::from("Hodge numbers of the pieces:\n");
            for (label, map) in [("Y", &g.y), ("Z", &g.z)] {
                for (&t, pure) in map {
                    rows.push(json!({
                        "piece": label,
                        "degree": t,
                        "hodge_numbers": hodge_table(&pure.mhs)?,
                    }));
                    writeln!(human, " {} degree {}:", label, t).unwrap();
                    writeln!(human, "{}", hodge_table_text(&pure.mhs)?).unwrap();
                }
            }
            Ok(finish(
                "hodge-numbers",
                json!({ "kind": "gluing", "pieces": rows }),
                human.trim_end().to_string(),
            ))
        }
        _ => Err(CliError::Unsupported(format!(
            "hodge-numbers is not defined for kind {}",
            doc.payload.kind()
        ))),
    }
}

fn cmd_motive(doc: &Document, flags: &Flags) -> Result<Report, CliError> {
    let p = need_p(flags)?;
    match &doc.payload {
        Payload::Mhs(h) => {
            let m = hodge_motive(h, p, flags.mode)?;
            let body = json!({ "kind": "mhs", "p": p, "motive": motive_json(&m)? });
            Ok(finish("motive", body, motive_text(&m)))
        }
        Payload::Gluing(g) => {
            let n = flags
                .n
                .ok_or_else(|| CliError::Validation("motive on a gluing requires -n <degree>".into()))?;
            let mv = mv_cohomology(g, n, p, flags.mode)?;
            let body = mv_report_json(&mv, n, p)?;
            let human = mv_report_text(&mv, n, p)?;
            Ok(finish("motive", body, human))
        }
        Payload::OneMotive(m) => {
            if m.p != p {
                return Err(CliError::Validation(format!(
                    "document is a level-{} 1-motive; -p {} does not match",
                    m.p, p
                )));
            }
            let h = realize_one_motive(&m.abelian, &m.values, p)?;
            let hm = hodge_motive(&h, p, flags.mode)?;
            let body = json!({ "kind": "one-motive", "p": p, "motive": motive_json(&hm)? });
            Ok(finish("motive", body, motive_text(&hm)))
        }
        _ => Err(CliError::Unsupported(format!(
            "motive is not defined for kind {}",
            doc.payload.kind()
        ))),
    }
}

fn mv_report_json(mv: &MvAnalysis, n: i64, p: i64) -> Result<Value, CliError> {
    let mut graded = Vec::new();
    for (&t, pure) in &mv.graded {
        graded.push(json!({
            "weight": t,
            "rank": pure.rank(),
            "hodge_numbers": hodge_table(&pure.mhs)?,
        }));
    }
    let lambda = match &mv.lambda {
        None => Value::Null,
        Some(l) => {
            let mut vals = Vec::new();
            for v in &l.values {
                vals.push(point_json(&l.torus, v)?);
            }
            json!({
                "kernel_basis_rank": l.homology.rank,
                "image_rank": l.image_rank,
                "values": vals,
            })
        }
    };
    Ok(json!({
        "kind": "gluing",
        "n": n,
        "p": p,
        "graded": graded,
        "motive": motive_json(&mv.motive)?,
        "lambda": lambda,
    }))
}

fn mv_report_text(mv: &MvAnalysis, n: i64, p: i64) -> Result<String, CliError> {
    let mut out = format!("H^{}(X) at level p = {}:\n", n, p);
    for (&t, pure) in &mv.graded {
        writeln!(out, " gr^W_{}: rank {}", t, pure.rank()).unwrap();
        if pure.rank() > 0 {
            writeln!(out, "{}", hodge_table_text(&pure.mhs)?).unwrap();
        }
    }
    writeln!(out, "{}", motive_text(&mv.motive)).unwrap();
    if let Some(l) = &mv.lambda {
        writeln!(
            out,
            "boundary map: defined on rank {}, image rank {}",
            l.homology.rank, l.image_rank
        )
        .unwrap();
    }
    Ok(out.trim_end().to_string())
}

fn cmd_glue(doc: &Document) -> Result<Report, CliError> {
    let datum = match &doc.payload {
        Payload::Gluing(g) => cech_two_gluing(g)?,
        Payload::Simplicial(s) => {
            s.validate()?;
            s.clone()
        }
        _ => {
            return Err(CliError::Unsupported(format!(
                "glue is not defined for kind {}",
                doc.payload.kind()
            )))
        }
    };
    let rows = datum.components.len() as i64;
    let mut graded = Vec::new();
    let mut human = String::from("weight-graded pieces of H^n(X):\n");
    for t in datum.degrees() {
        for i in 0..rows {
            let (pure, _) = weight_graded(&datum, t, i)?;
            if pure.rank() > 0 {
                graded.push(json!({ "n": t + i, "weight": t, "rank": pure.rank() }));
                writeln!(human, " gr^W_{} H^{}: rank {}", t, t + i, pure.rank()).unwrap();
            }
        }
    }
    let body = json!({ "kind": doc.payload.kind(), "graded": graded });
    Ok(finish("glue", body, human.trim_end().to_string()))
}

fn cmd_square_check(doc: &Document, flags: &Flags) -> Result<Report, CliError> {
    let p = need_p(flags)?;
    let i = flags.n.map(|n| n - 2 * p).unwrap_or(0);
    let datum = match &doc.payload {
        Payload::Gluing(g) => cech_two_gluing(g)?,
        Payload::Simplicial(s) => {
            s.validate()?;
            s.clone()
        }
        _ => {
            return Err(CliError::Unsupported(format!(
                "square-check is not defined for kind {}",
                doc.payload.kind()
            )))
        }
    };
    let rep = motivic_square_check(&datum, p, i)?;
    let body = json!({
        "kind": doc.payload.kind(),
        "p": p,
        "i": i,
        "commutes": rep.commutes,
        "witnesses": rep.witnesses.len(),
        "kernel_rank": rep.kernel_rank,
        "image_rank": rep.lambda.image_rank,
    });
    let verdict = if rep.commutes { "commutes" } else { "FAILS to commute" };
    let human = format!(
        "square-check at p = {}, i = {}: {}\n kernel rank {}, image rank {}",
        p, i, verdict, rep.kernel_rank, rep.lambda.image_rank
    );
    Ok(finish("square-check", body, human))
}

fn cmd_realize(doc: &Document, flags: &Flags) -> Result<Report, CliError> {
    let p = need_p(flags)?;
    match &doc.payload {
        Payload::OneMotive(m) => {
            if m.p != p {
                return Err(CliError::Validation(format!(
                    "document is a level-{} 1-motive; -p {} does not match",
                    m.p, p
                )));
            }
            let h = realize_one_motive(&m.abelian, &m.values, p)?;
            let out_doc = Document { d: doc.d, payload: Payload::Mhs(h.clone()) };
            let body = json!({
                "kind": "one-motive",
                "p": p,
                "rank": h.rank,
                "hodge_numbers": hodge_table(&h)?,
                "document": schema::document_to_value(&out_doc),
            });
            let human = format!(
                "realized mixed Hodge structure of rank {}:\n{}",
                h.rank,
                hodge_table_text(&h)?
            );
            Ok(finish("realize", body, human))
        }
        _ => Err(CliError::Unsupported(format!(
            "realize is not defined for kind {}",
            doc.payload.kind()
        ))),
    }
}
