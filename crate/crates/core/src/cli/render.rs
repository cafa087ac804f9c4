//! Text and JSON rendering of an analysis.

use std::fmt::Write;

use serde_json::{json, Value};

use super::Analysis;
use crate::arith::Rational;
use crate::groups::{substitution_group, ArrangementBlock};
use crate::numberfield::{NumberFieldElement, SplittingField};
use crate::poly::UniPoly;

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ArrayRow {
    pub letters: String,
    /// Approximate value of `V` on this arrangement.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct RenderedBlock {
    pub representative: String,
    pub substitution_group: Vec<String>,
    pub rows: Vec<ArrayRow>,
}

fn approx(x: f64) -> f64 {
    if x.abs() < 5e-7 {
        0.0
    } else {
        x
    }
}

pub(crate) fn render_blocks(
    blocks: &[ArrangementBlock],
    field: &SplittingField,
) -> Vec<RenderedBlock> {
    let weights = field.galois.spec.weights();
    let rs = &field.roots;
    let prec = rs.precision_bits() + 64;
    blocks
        .iter()
        .map(|b| RenderedBlock {
            representative: b.representative.cycle_string(),
            substitution_group: substitution_group(&b.arrangements)
                .map(|g| g.cycle_strings())
                .unwrap_or_default(),
            rows: b
                .arrangements
                .rows()
                .iter()
                .map(|row| {
                    let v = weights
                        .iter()
                        .zip(row.order())
                        .fold(crate::arith::ComplexBall::zero(), |acc, (&a, &i)| {
                            acc.add(&rs.enclosure(i).mul_int(a, prec), prec)
                        });
                    let (re, im) = v.to_f64_pair();
                    ArrayRow {
                        letters: row.letters(),
                        value: format!("{:.6}{:+.6}i", approx(re), approx(im)),
                    }
                })
                .collect(),
        })
        .collect()
}

fn rationals(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(|q| Value::String(q.to_string())).collect())
}

fn poly_json(p: &UniPoly) -> Value {
    json!({ "text": p.to_string(), "coeffs": rationals(p.coeffs()) })
}

fn element_json(x: &NumberFieldElement) -> Value {
    json!({ "text": x.to_string(), "coeffs": rationals(x.coeffs()) })
}

pub fn render_json(a: &Analysis) -> Value {
    let r = &a.report;
    let subgroups: Vec<Value> = r
        .subgroups
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let mut v = json!({
                "order": e.subgroup.order(),
                "elements": e.subgroup.cycle_strings(),
                "dim": e.dim(),
                "basis": e.field.basis_elements().iter().map(element_json).collect::<Vec<_>>(),
                "primitive_element": element_json(&e.primitive),
                "primitive_min_poly": poly_json(&e.primitive_min_poly),
                "fixed_field_equal": e.fixed_field_equal,
            });
            if let Some(arrays) = &a.arrays {
                v["arrangements"] = serde_json::to_value(&arrays[k]).expect("serializable");
            }
            v
        })
        .collect();
    json!({
        "polynomial": {
            "input": poly_json(&a.input),
            "analyzed": poly_json(&r.polynomial),
            "root_scale": a.scale.as_ref().map(|c| c.to_string()),
        },
        "resolvent": {
            "weights": r.spec.weights(),
            "polynomial": poly_json(&a.field.galois.resolvent),
            "min_poly": poly_json(&r.min_poly),
        },
        "group": {
            "order": r.group.order(),
            "elements": r.group.cycle_strings(),
        },
        "root_expressions": a.field.root_exprs.iter().map(element_json).collect::<Vec<_>>(),
        "subgroups": subgroups,
        "checks": serde_json::to_value(&r.checks).expect("serializable"),
    })
}

pub fn render_text(a: &Analysis) -> String {
    let r = &a.report;
    let mut s = String::new();
    let _ = writeln!(s, "polynomial: {}", a.input);
    if let Some(c) = &a.scale {
        let _ = writeln!(s, "rescaled (x -> x/{c}): {}", r.polynomial);
    }
    let _ = writeln!(s, "weights: {}", r.spec);
    let _ = writeln!(
        s,
        "resolvent: {}",
        a.field.galois.resolvent.display_with("x")
    );
    let _ = writeln!(
        s,
        "minimal polynomial of V: {}",
        r.min_poly.display_with("V")
    );
    let _ = writeln!(
        s,
        "group order {}: {}",
        r.group.order(),
        r.group.cycle_strings().join(" ")
    );
    for (i, phi) in a.field.root_exprs.iter().enumerate() {
        let _ = writeln!(s, "root {} = {}", char::from(b'a' + i as u8), phi);
    }
    let _ = writeln!(s, "subgroups: {}", r.subgroups.len());
    for (k, e) in r.subgroups.iter().enumerate() {
        let _ = writeln!(
            s,
            "[{}] order {}: {}",
            k + 1,
            e.subgroup.order(),
            e.subgroup.cycle_strings().join(" ")
        );
        let basis: Vec<String> = e
            .field
            .basis_elements()
            .iter()
            .map(ToString::to_string)
            .collect();
        let _ = writeln!(s, "    dim {}; basis: {}", e.dim(), basis.join(" | "));
        let _ = writeln!(
            s,
            "    primitive element: {}; minimal polynomial: {}",
            e.primitive,
            e.primitive_min_poly.display_with("y")
        );
        let _ = writeln!(
            s,
            "    fixed field equal: {}",
            if e.fixed_field_equal { "yes" } else { "no" }
        );
        if let Some(arrays) = &a.arrays {
            for block in &arrays[k] {
                let _ = writeln!(
                    s,
                    "    block {}; substitutions: {}",
                    block.representative,
                    block.substitution_group.join(" ")
                );
                for row in &block.rows {
                    let _ = writeln!(s, "      {:>24} | {}", row.value, row.letters);
                }
            }
        }
    }
    let _ = writeln!(s, "checks:");
    for c in &r.checks {
        let _ = writeln!(s, "  {}: {}", c.name, if c.pass { "pass" } else { "FAIL" });
    }
    s
}
