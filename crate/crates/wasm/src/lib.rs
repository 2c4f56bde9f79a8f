//! Browser bindings: diagram composition, positivity profiles and Bratteli pictures.
//!
//! Every export returns a JSON string; failures come back as `{"error": "..."}`.

use std::fmt::Write as _;

use serde_json::{json, Value};
use tlcat::diagram::{Diagram, Endpoint};
use tlcat::repn::{self, Verdict};
use wasm_bindgen::prelude::*;

const STEP: f64 = 40.0;
const HEIGHT: f64 = 80.0;
const MARGIN: f64 = 20.0;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Encodings of every diagram in `K_{m,n}`.
#[wasm_bindgen]
pub fn enumerate(m: usize, n: usize) -> String {
    respond(
        Diagram::enumerate_with_limit(m, n, 6)
            .map(|ds| json!(ds.iter().map(Diagram::encode).collect::<Vec<_>>()))
            .map_err(|e| e.to_string()),
    )
}

/// Stack `upper` on `lower`; returns both pictures, the result and its loop count.
#[wasm_bindgen]
pub fn compose(upper: &str, lower: &str) -> String {
    respond((|| {
        let a = Diagram::decode(upper).map_err(|e| e.to_string())?;
        let b = Diagram::decode(lower).map_err(|e| e.to_string())?;
        let r = a.compose(&b).map_err(|e| e.to_string())?;
        Ok(json!({
            "diagram": r.diagram.encode(),
            "loops": r.loops,
            "upper_svg": diagram_svg(&a),
            "lower_svg": diagram_svg(&b),
            "result_svg": diagram_svg(&r.diagram),
        }))
    })())
}

/// Minimum eigenvalue of the trace form for `1..=max_strands` strands.
#[wasm_bindgen]
pub fn positivity_profile(d: f64, max_strands: usize) -> String {
    respond((|| {
        let r = repn::positivity_scan(d, max_strands.min(7), repn::positivity::DEFAULT_TOLERANCE)
            .map_err(|e| e.to_string())?;
        let violated = match r.verdict {
            Verdict::Admissible => Value::Null,
            Verdict::Violated(k) => json!(k),
        };
        let levels: Vec<Value> = r
            .levels
            .iter()
            .map(|l| json!({ "strands": l.strands, "dimension": l.dimension, "min": l.min_eigenvalue }))
            .collect();
        Ok(json!({ "d": d, "levels": levels, "violated_at": violated }))
    })())
}

/// SVG of the Bratteli diagram; `truncate = 0` means no truncation.
#[wasm_bindgen]
pub fn bratteli_svg(n: usize, truncate: usize) -> String {
    respond((|| {
        let l = (truncate > 0).then_some(truncate);
        let b = repn::bratteli(n.min(16), l).map_err(|e| e.to_string())?;
        Ok(json!({ "svg": bratteli_picture(&b), "dot": b.to_dot() }))
    })())
}

fn x_of(k: usize, width: usize, total: usize) -> f64 {
    let offset = (total as f64 - width as f64) * STEP / 2.0;
    MARGIN + offset + (k as f64 - 1.0) * STEP
}

/// Caps hang from the top edge, cups rise from the bottom, through strands are S-curves.
pub fn diagram_svg(d: &Diagram) -> String {
    let (m, n) = (d.top(), d.bottom());
    let total = m.max(n).max(1);
    let w = 2.0 * MARGIN + (total as f64 - 1.0) * STEP;
    let h = HEIGHT + 2.0 * MARGIN;
    let (y_top, y_bot) = (MARGIN, MARGIN + HEIGHT);
    let pos = |e: Endpoint| match e {
        Endpoint::Top(k) => (x_of(k, m, total), y_top),
        Endpoint::Bottom(k) => (x_of(k, n, total), y_bot),
    };
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\" width=\"{w}\" height=\"{h}\">\
         <rect x=\"0\" y=\"{y_top}\" width=\"{w}\" height=\"{HEIGHT}\" fill=\"#f7f7f2\"/>"
    );
    for (a, b) in d.pairs() {
        let ((x1, y1), (x2, y2)) = (pos(a), pos(b));
        let path = if y1 == y2 {
            let depth = (x1 - x2).abs() * 0.45;
            let dy = if y1 == y_top { depth } else { -depth };
            format!("M{x1},{y1} C{x1},{} {x2},{} {x2},{y2}", y1 + dy, y2 + dy)
        } else {
            let mid = (y1 + y2) / 2.0;
            format!("M{x1},{y1} C{x1},{mid} {x2},{mid} {x2},{y2}")
        };
        let _ = write!(s, "<path d=\"{path}\" fill=\"none\" stroke=\"#1d3557\" stroke-width=\"2.5\"/>");
    }
    for k in 1..=m {
        let _ = write!(s, "<circle cx=\"{}\" cy=\"{y_top}\" r=\"3\" fill=\"#e63946\"/>", x_of(k, m, total));
    }
    for k in 1..=n {
        let _ = write!(s, "<circle cx=\"{}\" cy=\"{y_bot}\" r=\"3\" fill=\"#e63946\"/>", x_of(k, n, total));
    }
    s.push_str("</svg>");
    s
}

fn bratteli_picture(b: &repn::BratteliDiagram) -> String {
    let levels = b.levels.len();
    let cols = b.levels.iter().flatten().max().map_or(1, |k| k + 1);
    let (dx, dy) = (36.0, 44.0);
    let w = 2.0 * MARGIN + (cols as f64 - 1.0).max(0.0) * dx;
    let h = 2.0 * MARGIN + (levels as f64 - 1.0) * dy;
    let at = |k: usize, t: usize| (MARGIN + k as f64 * dx, MARGIN + t as f64 * dy);
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\" width=\"{w}\" height=\"{h}\">"
    );
    for (t, block) in b.edges.iter().enumerate() {
        for (i, row) in block.iter().enumerate() {
            for (j, &mult) in row.iter().enumerate() {
                if mult > 0 {
                    let (x1, y1) = at(b.levels[t][i], t);
                    let (x2, y2) = at(b.levels[t + 1][j], t + 1);
                    let _ = write!(
                        s,
                        "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#457b9d\" stroke-width=\"1.5\"/>"
                    );
                }
            }
        }
    }
    for t in 0..levels {
        for (k, count) in b.dimensions(t) {
            let (x, y) = at(k, t);
            let _ = write!(
                s,
                "<circle cx=\"{x}\" cy=\"{y}\" r=\"10\" fill=\"#fff\" stroke=\"#1d3557\"/>\
                 <text x=\"{x}\" y=\"{}\" font-size=\"9\" text-anchor=\"middle\">{count}</text>",
                y + 3.0
            );
        }
    }
    s.push_str("</svg>");
    s
}
