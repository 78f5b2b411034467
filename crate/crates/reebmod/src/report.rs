//! Rendering of command results.
//!
//! Every command produces a [`Rendering`]: a plain-text form for people
//! and a structured [`serde_json::Value`] for machines. Both carry the
//! same facts, so scripting against either is safe. The choice between
//! them never changes an exit code.

use serde_json::{json, Value};

use crate::ccmod::CcData;
use crate::exactlin::{Coeff, CoefficientRing, Presentation};
use crate::reeb::Diagnostic;
use crate::verify::{HomReport, Thm1Report, Thm2Report};
use crate::{Error, Result};

/// Output styles accepted by `--format`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    JsonLike,
}

impl Format {
    pub fn parse(text: &str) -> Result<Format> {
        match text {
            "text" => Ok(Format::Text),
            "json-like" => Ok(Format::JsonLike),
            other => Err(Error::Parse {
                line: 0,
                msg: format!("unknown format `{other}`; use text or json-like"),
            }),
        }
    }
}

/// One result, rendered both ways.
#[derive(Clone, Debug)]
pub struct Rendering {
    pub text: String,
    pub json: Value,
}

impl Rendering {
    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::JsonLike => serde_json::to_string_pretty(&self.json).unwrap(),
        }
    }
}

fn coeff_str(c: &Coeff) -> String {
    c.to_string()
}

fn coeffs_str(v: &[Coeff]) -> String {
    let parts: Vec<String> = v.iter().map(coeff_str).collect();
    format!("[{}]", parts.join(", "))
}

fn coeffs_json(v: &[Coeff]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(coeff_str(c))).collect())
}

fn flag_line(out: &mut String, name: &str, ok: bool) {
    out.push_str(&format!("{name}: {}\n", if ok { "true" } else { "false" }));
}

/// Validation outcome for one file.
pub fn validation(file: &str, diagnostics: &[Diagnostic]) -> Rendering {
    let ok = diagnostics.is_empty();
    let mut text = format!("file: {file}\n");
    if ok {
        text.push_str("valid: true\n");
    } else {
        text.push_str("valid: false\n");
        for d in diagnostics {
            text.push_str(&format!("  - {d}\n"));
        }
    }
    let json = json!({
        "file": file,
        "valid": ok,
        "diagnostics": diagnostics
            .iter()
            .map(|d| json!({ "locus": d.locus, "message": d.message }))
            .collect::<Vec<_>>(),
    });
    Rendering { text, json }
}

/// The compatible-submodule data: fiber labels, effective generators
/// with their originating vertices, and the outer part. The generators
/// are ring-independent; the ring is recorded so downstream quotients
/// can be tied back to this report.
pub fn cc_data(d: &CcData, ring: CoefficientRing) -> Rendering {
    let mut text = format!("coefficients: {ring}\n");
    let labels: Vec<String> = d.fiber_labels.iter().map(|c| c.to_string()).collect();
    text.push_str(&format!("fiber labels: {}\n", labels.join(", ")));
    text.push_str(&format!("outer part: {}\n", d.outer_description()));
    text.push_str(&format!("effective generators: {}\n", d.effective.len()));
    for (vertex, e) in &d.effective {
        text.push_str(&format!("  {vertex}: {e}\n"));
    }
    flag_line(&mut text, "direct sum", d.direct_sum_ok);
    let json = json!({
        "coefficients": ring.to_string(),
        "fiber_labels": labels,
        "outer_part": {
            "description": d.outer_description(),
            "generators": d.outer_generators.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "universe": d.outer_universe.as_ref().map(|u| {
                u.iter().map(|c| c.to_string()).collect::<Vec<_>>()
            }),
        },
        "oriented": d.oriented,
        "effective": d.effective
            .iter()
            .map(|(v, e)| json!({ "vertex": v, "relation": e.to_string() }))
            .collect::<Vec<_>>(),
        "direct_sum": d.direct_sum_ok,
    });
    Rendering { text, json }
}

/// A quotient presentation: shape, invariant factors, generators.
pub fn presentation(title: &str, p: &Presentation) -> Rendering {
    let mut text = format!("{title}: {}\n", p.describe());
    text.push_str(&format!("coefficients: {}\n", p.ring));
    text.push_str(&format!("free rank: {}\n", p.free_rank));
    let factors: Vec<String> = p.torsion.iter().map(|d| d.to_string()).collect();
    text.push_str(&format!("invariant factors: [{}]\n", factors.join(", ")));
    let mut gens = Vec::new();
    for g in p.generators() {
        match &g.order {
            Some(d) => {
                text.push_str(&format!("torsion generator: {} (order {d})\n", g.element));
            }
            None => text.push_str(&format!("free generator: {}\n", g.element)),
        }
        gens.push(json!({
            "element": g.element.to_string(),
            "order": g.order.as_ref().map(|d| d.to_string()),
        }));
    }
    let json = json!({
        "title": title,
        "module": p.describe(),
        "coefficients": p.ring.to_string(),
        "free_rank": p.free_rank,
        "invariant_factors": factors,
        "generators": gens,
    });
    Rendering { text, json }
}

/// The product-structure checklist with its witnesses.
pub fn thm2(r: &Thm2Report) -> Rendering {
    let mut text = String::new();
    flag_line(&mut text, "labels", r.labels_ok);
    flag_line(&mut text, "span forward", r.span_forward_ok);
    flag_line(&mut text, "span backward", r.span_backward_ok);
    flag_line(&mut text, "direct sum", r.direct_sum_ok);
    flag_line(&mut text, "connected", r.connected_ok);
    flag_line(&mut text, "morse-bott tagging", r.morse_bott_ok);
    flag_line(&mut text, "pass", r.pass());
    for w in &r.witnesses {
        text.push_str(&format!("  - {w}\n"));
    }
    let json = json!({
        "labels": r.labels_ok,
        "span_forward": r.span_forward_ok,
        "span_backward": r.span_backward_ok,
        "direct_sum": r.direct_sum_ok,
        "connected": r.connected_ok,
        "morse_bott_tagging": r.morse_bott_ok,
        "pass": r.pass(),
        "witnesses": r.witnesses,
    });
    Rendering { text, json }
}

/// The induced pairing on quotients, with its full image table.
pub fn hom(r: &HomReport) -> Rendering {
    let mut text = String::new();
    text.push_str(&format!("coefficients: {}\n", r.ring));
    text.push_str(&format!("left quotient: {}\n", r.left.describe()));
    text.push_str(&format!("right quotient: {}\n", r.right.describe()));
    text.push_str(&format!("target quotient: {}\n", r.target.describe()));
    flag_line(&mut text, "well defined", r.well_defined_ok);
    flag_line(&mut text, "surjective", r.surjective_ok);
    flag_line(&mut text, "zero map", r.zero_map);
    flag_line(&mut text, "pass", r.pass());
    for w in &r.witnesses {
        text.push_str(&format!("  - {w}\n"));
    }
    if !r.image_table.is_empty() {
        text.push_str("image table:\n");
        for e in &r.image_table {
            text.push_str(&format!(
                "  ({}, {}) -> {} = {}\n",
                e.left,
                e.right,
                e.product,
                coeffs_str(&e.image)
            ));
        }
    }
    let json = json!({
        "coefficients": r.ring.to_string(),
        "left": r.left.describe(),
        "right": r.right.describe(),
        "target": r.target.describe(),
        "well_defined": r.well_defined_ok,
        "surjective": r.surjective_ok,
        "zero_map": r.zero_map,
        "pass": r.pass(),
        "witnesses": r.witnesses,
        "image_table": r.image_table
            .iter()
            .map(|e| json!({
                "left": e.left.to_string(),
                "right": e.right.to_string(),
                "product": e.product.to_string(),
                "image": coeffs_json(&e.image),
            }))
            .collect::<Vec<_>>(),
    });
    Rendering { text, json }
}

/// The homology lower bound: surviving classes against the rank of the
/// first homology of the graph.
pub fn thm1(r: &Thm1Report) -> Rendering {
    let surviving: Vec<String> = r.surviving.iter().map(|c| c.to_string()).collect();
    let mut text = String::new();
    text.push_str(&format!("coefficients: {}\n", r.ring));
    text.push_str(&format!("h1 rank: {}\n", r.h1_rank));
    if r.vacuous {
        text.push_str("surviving classes: none\n");
        text.push_str("verdict: pass (vacuous)\n");
    } else {
        text.push_str(&format!(
            "surviving classes: {}\n",
            surviving.join(", ")
        ));
        text.push_str(&format!(
            "verdict: {}\n",
            if r.ok { "pass" } else { "fail" }
        ));
    }
    let json = json!({
        "coefficients": r.ring.to_string(),
        "h1_rank": r.h1_rank,
        "surviving": surviving,
        "vacuous": r.vacuous,
        "ok": r.ok,
    });
    Rendering { text, json }
}
