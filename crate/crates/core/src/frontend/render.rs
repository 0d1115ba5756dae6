//! Canonical text and JSON output.

use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::arith::{Monomial, Poly, Rat, VarTable};
use crate::diffpoly::Ade;

/// Output encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub const SCHEMA: &str = "dalg/1";

/// `x` and parameters first, then derivatives from the highest order down.
fn render_monomial(m: &Monomial, table: &VarTable) -> String {
    m.coeff_part()
        .iter()
        .chain(m.diff_part())
        .map(|&(v, e)| {
            if e == 1 {
                table.display(v).to_string()
            } else {
                format!("{}^{e}", table.display(v))
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Terms from the leading one down, `*` between factors, explicit `+`/`-`
/// separators. The text parses back to the same polynomial.
pub fn render_poly(p: &Poly, table: &VarTable) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = render_monomial(m, table);
        if m.is_one() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    out
}

/// `poly = 0`.
pub fn render_text(ade: &Ade, table: &VarTable) -> String {
    format!("{} = 0", render_poly(&ade.poly, table))
}

fn coeff_string(c: &Rat) -> String {
    c.to_string()
}

/// JSON document carrying the schema tag, the output function, its order and
/// degree and every term with an exact coefficient string.
pub fn render_json(ade: &Ade, table: &VarTable) -> Value {
    let terms: Vec<Value> = ade
        .poly
        .terms()
        .rev()
        .map(|(m, c)| {
            json!({
                "coeff": coeff_string(c),
                "monomial": if m.is_one() { "1".to_string() } else { render_monomial(m, table) },
            })
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "dep": table.dep_name(ade.dep),
        "order": ade.order,
        "degree": ade.degree(),
        "terms": terms,
    })
}

pub fn render(ade: &Ade, table: &VarTable, format: Format) -> String {
    match format {
        Format::Text => render_text(ade, table),
        Format::Json => serde_json::to_string_pretty(&render_json(ade, table)).expect("serializable"),
    }
}
